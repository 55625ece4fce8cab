mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ohtsuki::algebra::{rat, sign_pow, Rational};
use ohtsuki::diagrams::beta::{beta_tilde_with, Chirality};
use ohtsuki::diagrams::{beta, eta, lambda_weight, sl2_graph_weight, sl2_weight, TrivalentGraph};
use ohtsuki::links::catalog::Catalog;
use ohtsuki::links::{FramedLinkDiagram, LinkCombination};
use ohtsuki::ohtsuki::nu::NuTable;
use ohtsuki::ohtsuki::{Ohtsuki, SurgeryPresentation};

use report::{laurent, rational, rationals, series, ExperimentReport};

#[derive(Parser, Debug)]
#[command(name = "ohtsuki", version, about = "Exact Ohtsuki invariants of surgery presentations")]
struct Cli {
    /// Extra link catalog (JSON); entries override built-ins.
    #[arg(long, global = true, env = "OHTSUKI_CATALOG")]
    catalog: Option<PathBuf>,
    /// User ν-constants (JSON) added to the built-in table.
    #[arg(long, global = true)]
    nu_table: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print a CSV summary instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jones polynomial V, X, the alternating sum Φ, and Φ_n, φ_i.
    Jones {
        #[arg(long)]
        link: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// λ_n of the surgered manifold.
    Lambda {
        #[arg(long)]
        link: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Include every (l, j) term.
        #[arg(long)]
        detail: bool,
    },
    /// Alternating sum of λ_n over all sublinks, computed two ways.
    FiniteType {
        #[arg(long)]
        link: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Alternating λ_n sum against (-1)^n f_L φ_n(L).
    CriticalSum {
        #[arg(long)]
        link: String,
        /// Comma-separated ±1 framings, e.g. `+1,-1,+1`.
        #[arg(long, allow_hyphen_values = true)]
        framings: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// sl₂ weight of a trivalent graph and of its Wilson-loop insertion.
    Weight {
        /// Graph JSON file, or `theta` / `theta-twisted`.
        #[arg(long)]
        graph: String,
    },
    /// The chord diagram η(G).
    Eta {
        #[arg(long)]
        graph: String,
    },
    /// Links of β(G) or β̃(G), written as a catalog.
    Beta {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out: PathBuf,
        /// +1 framings (β̃) instead of 0.
        #[arg(long)]
        tilde: bool,
        #[arg(long, value_enum, default_value_t = ChiralityArg::Standard)]
        chirality: ChiralityArg,
    },
    /// λ₁ summed over β̃(θ) against -γ(η(θ)).
    ThetaCheck {
        #[arg(long, value_enum, default_value_t = ChiralityArg::Standard)]
        chirality: ChiralityArg,
        /// Use the twisted θ embedding.
        #[arg(long)]
        twisted: bool,
    },
    /// Catalog listing and export.
    Catalog {
        /// Write the merged catalog here instead of listing names.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChiralityArg {
    Standard,
    Mirror,
}

impl From<ChiralityArg> for Chirality {
    fn from(c: ChiralityArg) -> Self {
        match c {
            ChiralityArg::Standard => Chirality::Standard,
            ChiralityArg::Mirror => Chirality::Mirror,
        }
    }
}

struct Session {
    catalog: Catalog,
    engine: Ohtsuki,
}

impl Session {
    fn new(cli: &Cli) -> Result<Self> {
        let mut catalog = Catalog::builtin();
        if let Some(p) = &cli.catalog {
            catalog.merge(Catalog::load(p).with_context(|| format!("catalog {}", p.display()))?);
        }
        let table = match &cli.nu_table {
            Some(p) => NuTable::load(p).with_context(|| format!("ν-table {}", p.display()))?,
            None => NuTable::builtin(),
        };
        Ok(Self { catalog, engine: Ohtsuki::new(table) })
    }

    fn link(&self, name: &str) -> Result<FramedLinkDiagram> {
        Ok(self.catalog.get(name)?)
    }

    /// Catalog link for surgery; unset (all-zero) framings become +1.
    fn surgery_link(&self, name: &str) -> Result<FramedLinkDiagram> {
        let l = self.link(name)?;
        if l.framings().iter().all(|&f| f == 0) {
            return Ok(l.with_uniform_framing(1));
        }
        Ok(l)
    }
}

fn load_graph(source: &str) -> Result<TrivalentGraph> {
    match source {
        "theta" => Ok(TrivalentGraph::theta()),
        "theta-twisted" => Ok(TrivalentGraph::theta_twisted()),
        path => {
            let text = std::fs::read_to_string(Path::new(path))
                .with_context(|| format!("graph file {path}"))?;
            Ok(TrivalentGraph::from_json(&text)?)
        }
    }
}

fn parse_framings(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            let v: i64 = x.trim().parse().with_context(|| format!("framing {x:?}"))?;
            if v.abs() != 1 {
                bail!("framing {v} is not ±1");
            }
            Ok(v)
        })
        .collect()
}

fn presentation(l: FramedLinkDiagram) -> Result<SurgeryPresentation> {
    Ok(SurgeryPresentation::new(l)?)
}

fn cmd_jones(ctx: &Session, name: &str, order: usize, r: &mut ExperimentReport) -> Result<()> {
    let l = ctx.link(name)?;
    let j = ctx.engine.jones();
    r.input("link", name).input("order", order);
    r.output("components", l.num_components()).output("crossings", l.num_crossings());
    r.output("V", j.jones_v(&l).map(|v| laurent(&v)).unwrap_or(json!({ "0": "1" })));
    r.output("X_laurent", j.x_laurent(&l).map(|v| laurent(&v)).unwrap_or(serde_json::Value::Null));
    r.output("X", series(&j.x_series(&l, order)));
    r.output("Phi", series(&j.phi_series(&l, order)));
    r.output("Phi_n", rationals(&j.big_phi_all(&l, order)));
    let phis: Vec<Rational> = (0..=order).map(|i| j.phi_i(&l, i)).collect();
    r.output("phi_i", rationals(&phis));
    Ok(())
}

fn cmd_lambda(
    ctx: &Session,
    name: &str,
    n: usize,
    detail: bool,
    r: &mut ExperimentReport,
) -> Result<()> {
    r.input("link", name).input("n", n);
    let s = presentation(ctx.surgery_link(name)?)?;
    r.input("framings", s.framings());
    let b = ctx.engine.lambda_n_detailed(&s, n)?;
    r.output("lambda", rational(&b.value));
    r.output("terms", b.terms.len()).output("pruned", b.pruned);
    if detail {
        let terms: Vec<_> = b
            .terms
            .iter()
            .map(|t| json!({ "l": t.l, "j": t.j.0, "F": rational(&t.f), "phi": rational(&t.phi) }))
            .collect();
        r.output("breakdown", terms);
    }
    Ok(())
}

fn cmd_finite_type(ctx: &Session, name: &str, n: usize, r: &mut ExperimentReport) -> Result<()> {
    r.input("link", name).input("n", n);
    let s = presentation(ctx.surgery_link(name)?)?;
    let mu = s.num_components();
    r.input("framings", s.framings());
    let direct = ctx.engine.finite_type_sum(&s, n)?;
    let via_g = ctx.engine.finite_type_sum_via_g(&s, n)?;
    r.output("sum", rational(&direct)).output("sum_via_G", rational(&via_g));
    r.equal("sublink and G forms agree", &direct, &via_g);
    if mu > 3 * n {
        r.equal("vanishes when #L > 3n", &direct, &rat(0));
    } else if mu == 3 * n {
        r.equal("equals (-1)^n f_L phi_n(L)", &direct, &ctx.engine.critical_sum_prediction(&s, n));
    }
    Ok(())
}

fn cmd_critical_sum(
    ctx: &Session,
    name: &str,
    framings: Option<&str>,
    n: usize,
    r: &mut ExperimentReport,
) -> Result<()> {
    let mut l = ctx.surgery_link(name)?;
    if let Some(f) = framings {
        l = l.with_framings(parse_framings(f)?)?;
    }
    r.input("link", name).input("n", n);
    let s = presentation(l)?;
    r.input("framings", s.framings());
    if s.num_components() != 3 * n {
        bail!("link has {} components; the identity needs {}", s.num_components(), 3 * n);
    }
    let lhs = ctx.engine.finite_type_sum(&s, n)?;
    let rhs = ctx.engine.critical_sum_prediction(&s, n);
    let phi = ctx.engine.jones().phi_i(s.link(), n);
    r.output("phi_n", rational(&phi)).output("f_L", s.framing_product());
    r.output("lhs", rational(&lhs)).output("rhs", rational(&rhs));
    r.equal("alternating sum = (-1)^n f_L phi_n(L)", &lhs, &rhs);
    Ok(())
}

fn cmd_weight(source: &str, r: &mut ExperimentReport) -> Result<()> {
    let g = load_graph(source)?;
    r.input("graph", source);
    let direct = sl2_graph_weight(&g);
    let with_loops = sl2_weight(&eta(&g));
    r.output("vertices", g.num_vertices()).output("edges", g.num_edges());
    r.output("gamma", rational(&direct)).output("gamma_eta", rational(&with_loops));
    if g.num_vertices() % 2 == 0 && g.num_vertices() > 0 {
        let n = g.num_vertices() / 2;
        r.output("Lambda_n", rational(&lambda_weight(&g, n))).output("n", n);
    }
    r.equal("gamma(eta(G)) = gamma(G)", &with_loops, &direct);
    Ok(())
}

fn cmd_eta(source: &str, r: &mut ExperimentReport) -> Result<()> {
    let g = load_graph(source)?;
    r.input("graph", source);
    let d = eta(&g);
    r.output("loops", d.loops.len()).output("legs", d.num_legs()).output("grade", d.grade());
    r.output("diagram", serde_json::to_value(&d)?);
    r.output("gamma_eta", rational(&sl2_weight(&d)));
    Ok(())
}

fn combination_entries(c: &LinkCombination, prefix: &str) -> (Catalog, Vec<serde_json::Value>) {
    let mut cat = Catalog::default();
    let mut rows = Vec::new();
    for (k, (coef, l)) in c.terms().iter().enumerate() {
        let name = format!("{prefix}-{k}");
        rows.push(json!({ "name": name, "coefficient": rational(coef), "crossings": l.num_crossings() }));
        cat.insert(&name, l.clone());
    }
    (cat, rows)
}

fn cmd_beta(
    source: &str,
    out: &Path,
    tilde: bool,
    chirality: ChiralityArg,
    r: &mut ExperimentReport,
) -> Result<()> {
    let g = load_graph(source)?;
    r.input("graph", source).input("tilde", tilde).input("chirality", format!("{chirality:?}"));
    let c = match (tilde, chirality) {
        (false, ChiralityArg::Standard) => beta(&g),
        (false, ChiralityArg::Mirror) => {
            let t = beta_tilde_with(&g, Chirality::Mirror);
            LinkCombination::from_terms(
                t.terms().iter().map(|(k, l)| (k.clone(), l.with_uniform_framing(0))),
            )
        }
        (true, ch) => beta_tilde_with(&g, ch.into()),
    };
    let prefix = if tilde { "beta-tilde" } else { "beta" };
    let (cat, rows) = combination_entries(&c, prefix);
    std::fs::write(out, cat.to_json()).with_context(|| format!("writing {}", out.display()))?;
    r.output("terms", rows).output("out", out.display().to_string());
    let split = c.terms().iter().all(|(_, l)| l.is_algebraically_split());
    r.holds("every term is algebraically split", split);
    Ok(())
}

fn cmd_theta_check(
    ctx: &Session,
    chirality: ChiralityArg,
    twisted: bool,
    r: &mut ExperimentReport,
) -> Result<()> {
    let g = if twisted { TrivalentGraph::theta_twisted() } else { TrivalentGraph::theta() };
    r.input("graph", if twisted { "theta-twisted" } else { "theta" });
    r.input("chirality", format!("{chirality:?}"));
    let c = beta_tilde_with(&g, chirality.into());
    let mut lhs = rat(0);
    let mut rows = Vec::new();
    for (k, l) in c.terms() {
        let v = ctx.engine.lambda_n(&presentation(l.clone())?, 1)?;
        rows.push(json!({ "coefficient": rational(k), "crossings": l.num_crossings(), "lambda_1": rational(&v) }));
        lhs += k * v;
    }
    let rhs = sign_pow(1) * sl2_weight(&eta(&g));
    r.output("terms", rows);
    r.output("lambda_1_sum", rational(&lhs)).output("minus_gamma_eta", rational(&rhs));
    r.equal("lambda_1(beta~(theta)) = -gamma(eta(theta))", &lhs, &rhs);
    r.holds("Lambda_1(theta) is nonzero", lhs != rat(0));
    Ok(())
}

fn run(cli: &Cli) -> Result<ExperimentReport> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global()?;
    }
    let ctx = Session::new(cli)?;
    let mut r;
    match &cli.command {
        Command::Jones { link, order } => {
            r = ExperimentReport::new("jones");
            cmd_jones(&ctx, link, *order, &mut r)?;
        }
        Command::Lambda { link, n, detail } => {
            r = ExperimentReport::new("lambda");
            cmd_lambda(&ctx, link, *n, *detail, &mut r)?;
        }
        Command::FiniteType { link, n } => {
            r = ExperimentReport::new("finite-type");
            cmd_finite_type(&ctx, link, *n, &mut r)?;
        }
        Command::CriticalSum { link, framings, n } => {
            r = ExperimentReport::new("critical-sum");
            cmd_critical_sum(&ctx, link, framings.as_deref(), *n, &mut r)?;
        }
        Command::Weight { graph } => {
            r = ExperimentReport::new("weight");
            cmd_weight(graph, &mut r)?;
        }
        Command::Eta { graph } => {
            r = ExperimentReport::new("eta");
            cmd_eta(graph, &mut r)?;
        }
        Command::Beta { graph, out, tilde, chirality } => {
            r = ExperimentReport::new("beta");
            cmd_beta(graph, out, *tilde, *chirality, &mut r)?;
        }
        Command::ThetaCheck { chirality, twisted } => {
            r = ExperimentReport::new("theta-check");
            cmd_theta_check(&ctx, *chirality, *twisted, &mut r)?;
        }
        Command::Catalog { out } => {
            r = ExperimentReport::new("catalog");
            match out {
                Some(p) => {
                    std::fs::write(p, ctx.catalog.to_json())
                        .with_context(|| format!("writing {}", p.display()))?;
                    r.output("out", p.display().to_string());
                }
                None => {
                    let names: Vec<&str> = ctx.catalog.names().collect();
                    r.output("links", names);
                }
            }
        }
    }
    r.finish();
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.csv {
                print!("{}", r.to_csv());
            } else {
                println!("{}", r.to_json());
            }
            if r.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
