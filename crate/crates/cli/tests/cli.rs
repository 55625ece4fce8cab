use std::process::{Command, Output};

use serde_json::Value;

fn ohtsuki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ohtsuki"))
        .args(args)
        .env_remove("OHTSUKI_CATALOG")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = ohtsuki(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn jones_unknot() {
    let r = report(&["jones", "--link", "unknot"]);
    assert_eq!(r["outputs"]["V"], serde_json::json!({ "0": "1" }));
    assert_eq!(r["experiment"], "jones");
}

#[test]
fn jones_borromean_low_phi_vanish() {
    let r = report(&["jones", "--link", "borromean", "--order", "5"]);
    let phi = r["outputs"]["Phi_n"].as_array().unwrap();
    assert!(phi[..4].iter().all(|x| x == "0"));
    assert_ne!(phi[4], "0");
}

#[test]
fn jones_hopf_needs_no_splitness() {
    report(&["jones", "--link", "hopf"]);
}

#[test]
fn lambda_values() {
    assert_eq!(report(&["lambda", "--link", "trefoil+1", "--n", "1"])["outputs"]["lambda"], "6");
    assert_eq!(report(&["lambda", "--link", "unknot+1"])["outputs"]["lambda"], "0");
    let d = report(&["lambda", "--link", "figure-eight-1", "--detail"]);
    assert_eq!(d["outputs"]["lambda"], "6");
    assert!(d["outputs"]["breakdown"].is_array());
}

#[test]
fn lambda_rejects_linked_components() {
    let out = ohtsuki(&["lambda", "--link", "hopf", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("linking number"));
}

#[test]
fn unknown_link_is_an_error() {
    let out = ohtsuki(&["jones", "--link", "no-such-link"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn finite_type_and_critical_sum() {
    let r = report(&["finite-type", "--link", "borromean-plus-unknot", "--n", "1"]);
    assert_eq!(r["outputs"]["sum"], "0");
    let r = report(&["critical-sum", "--link", "borromean", "--framings", "+1,+1,+1"]);
    assert_eq!(r["outputs"]["lhs"], r["outputs"]["rhs"]);
    assert_eq!(r["outputs"]["lhs"], "-6");
    assert!(r["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true));
}

#[test]
fn weight_and_theta_check() {
    let w = report(&["weight", "--graph", "theta"]);
    assert_eq!(w["outputs"]["gamma"], "12");
    assert_eq!(w["outputs"]["Lambda_n"], "-12");
    let t = report(&["theta-check"]);
    assert_eq!(t["outputs"]["lambda_1_sum"], t["outputs"]["minus_gamma_eta"]);
}

#[test]
fn graph_file_and_beta_catalog_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("theta.json");
    std::fs::write(&graph, r#"{"vertices": 2, "edges": [[0,0,1,0],[0,1,1,2],[0,2,1,1]]}"#).unwrap();
    let g = graph.to_str().unwrap();
    assert_eq!(report(&["eta", "--graph", g])["outputs"]["loops"], 3);
    let cat = dir.path().join("beta.json");
    let c = cat.to_str().unwrap();
    let b = report(&["beta", "--graph", g, "--tilde", "--out", c]);
    assert_eq!(b["outputs"]["terms"].as_array().unwrap().len(), 4);
    let r = report(&["--catalog", c, "lambda", "--link", "beta-tilde-1"]);
    assert_eq!(r["outputs"]["lambda"], "6");
}

#[test]
fn csv_output() {
    let out = ohtsuki(&["--csv", "weight", "--graph", "theta-twisted"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("section,key,value\n"));
    assert!(text.contains("output,gamma,-12"));
    assert!(text.contains("verdict,gamma(eta(G)) = gamma(G),PASS"));
}

#[test]
fn reports_do_not_depend_on_threads() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_secs");
        v
    };
    let a = strip(report(&["--threads", "1", "finite-type", "--link", "borromean", "--n", "1"]));
    let b = strip(report(&["--threads", "3", "finite-type", "--link", "borromean", "--n", "1"]));
    assert_eq!(a, b);
}

#[test]
fn higher_lambda_needs_user_nu_table() {
    let out = ohtsuki(&["lambda", "--link", "trefoil+1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));
    let dir = tempfile::tempdir().unwrap();
    let nu = dir.path().join("nu.json");
    std::fs::write(
        &nu,
        r#"[{"f": 1, "i": 1, "m": 1, "value": "1/3"},
            {"f": 1, "i": 2, "m": 0, "value": "-5/2"},
            {"f": 1, "i": 2, "m": 1, "value": "7"}]"#,
    )
    .unwrap();
    let r = report(&["--nu-table", nu.to_str().unwrap(), "lambda", "--link", "trefoil+1", "--n", "2"]);
    assert!(r["outputs"]["lambda"].is_string());
}
