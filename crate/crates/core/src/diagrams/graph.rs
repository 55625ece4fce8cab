//! Vertex-oriented trivalent graphs.
//!
//! Half-edge `(v, s)` is slot `s ∈ {0,1,2}` of vertex `v`; the slot order is
//! the cyclic (counterclockwise) orientation at the vertex. Multi-edges and
//! self-loops are allowed.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{rat, Rational};

pub type HalfEdge = (usize, usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("half-edge ({0}, {1}) is out of range")]
    OutOfRange(usize, usize),
    #[error("half-edge ({0}, {1}) is used {2} times")]
    HalfEdgeUse(usize, usize, usize),
    #[error("edge {0} is a self-loop at a single half-edge")]
    Degenerate(usize),
    #[error("edge {0} joins a vertex to itself; IHX does not apply")]
    SelfLoopEdge(usize),
    #[error("edge index {0} out of range")]
    EdgeIndex(usize),
    #[error("vertex index {0} out of range")]
    VertexIndex(usize),
    #[error("graph file: {0}")]
    Json(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TrivalentGraph {
    /// `partner[v][s]` is the half-edge joined to `(v, s)`.
    partner: Vec<[HalfEdge; 3]>,
}

impl std::fmt::Debug for TrivalentGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph{:?}", self.edges())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 4]>,
}

impl TrivalentGraph {
    /// Builds a graph from edges `[v, s, v', s']`.
    pub fn new(vertices: usize, edges: &[[usize; 4]]) -> Result<Self, GraphError> {
        let mut partner = vec![[(usize::MAX, 0); 3]; vertices];
        let mut uses = vec![[0usize; 3]; vertices];
        for (k, e) in edges.iter().enumerate() {
            let (a, b) = ((e[0], e[1]), (e[2], e[3]));
            for h in [a, b] {
                if h.0 >= vertices || h.1 >= 3 {
                    return Err(GraphError::OutOfRange(h.0, h.1));
                }
            }
            if a == b {
                return Err(GraphError::Degenerate(k));
            }
            uses[a.0][a.1] += 1;
            uses[b.0][b.1] += 1;
            partner[a.0][a.1] = b;
            partner[b.0][b.1] = a;
        }
        for v in 0..vertices {
            for s in 0..3 {
                if uses[v][s] != 1 {
                    return Err(GraphError::HalfEdgeUse(v, s, uses[v][s]));
                }
            }
        }
        Ok(Self { partner })
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let g: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::new(g.vertices, &g.edges)
    }

    pub fn to_json(&self) -> String {
        let g = GraphJson { vertices: self.num_vertices(), edges: self.edge_list() };
        serde_json::to_string(&g).expect("graph serializes")
    }

    /// The θ graph drawn in the plane: both vertices counterclockwise, so the
    /// slot orders at the two vertices are mirror images.
    pub fn theta() -> Self {
        Self::new(2, &[[0, 0, 1, 0], [0, 1, 1, 2], [0, 2, 1, 1]]).expect("theta")
    }

    /// θ with identical slot orders at both vertices; equals minus
    /// [`TrivalentGraph::theta`] modulo AS.
    pub fn theta_twisted() -> Self {
        Self::new(2, &[[0, 0, 1, 0], [0, 1, 1, 1], [0, 2, 1, 2]]).expect("theta")
    }

    pub fn num_vertices(&self) -> usize {
        self.partner.len()
    }

    pub fn num_edges(&self) -> usize {
        3 * self.num_vertices() / 2
    }

    pub fn partner(&self, h: HalfEdge) -> HalfEdge {
        self.partner[h.0][h.1]
    }

    /// Edges as half-edge pairs with the smaller half-edge first, sorted.
    pub fn edges(&self) -> Vec<(HalfEdge, HalfEdge)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for v in 0..self.num_vertices() {
            for s in 0..3 {
                let p = self.partner[v][s];
                if (v, s) < p {
                    out.push(((v, s), p));
                }
            }
        }
        out
    }

    pub fn edge_list(&self) -> Vec<[usize; 4]> {
        self.edges().into_iter().map(|(a, b)| [a.0, a.1, b.0, b.1]).collect()
    }

    /// Index of the edge through half-edge `h` in [`TrivalentGraph::edges`].
    pub fn edge_of(&self, h: HalfEdge) -> usize {
        let p = self.partner(h);
        let key = if h < p { (h, p) } else { (p, h) };
        self.edges().iter().position(|e| *e == key).expect("edge exists")
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.num_vertices();
        let mut partner = self.partner.clone();
        partner.extend(other.partner.iter().map(|row| row.map(|(v, s)| (v + shift, s))));
        Self { partner }
    }

    /// Reverses the cyclic order at `v` (swaps slots 1 and 2).
    pub fn flip(&self, v: usize) -> Self {
        let swap = |h: HalfEdge| if h.0 == v && h.1 != 0 { (v, 3 - h.1) } else { h };
        let mut partner = self.partner.clone();
        for row in partner.iter_mut() {
            for h in row.iter_mut() {
                *h = swap(*h);
            }
        }
        partner[v].swap(1, 2);
        Self { partner }
    }

    /// Relabels: old vertex `v` becomes `perm[v]`, old slot `s` becomes
    /// `(s + 3 - rot[v]) % 3`.
    pub fn relabel(&self, perm: &[usize], rot: &[usize]) -> Self {
        let map = |(v, s): HalfEdge| (perm[v], (s + 3 - rot[v]) % 3);
        let mut partner = vec![[(0, 0); 3]; self.num_vertices()];
        for v in 0..self.num_vertices() {
            for s in 0..3 {
                let (nv, ns) = map((v, s));
                partner[nv][ns] = map(self.partner[v][s]);
            }
        }
        Self { partner }
    }

    /// Connected components as vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                k += 1;
                for s in 0..3 {
                    let w = self.partner[v][s].0;
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Code of the component of `start` explored from half-edge slot
    /// `first`: vertices are numbered by discovery, and every vertex is
    /// rotated so that the half-edge it was discovered through is slot 0.
    fn code_from(&self, start: usize, first: usize) -> Vec<u8> {
        let n = self.num_vertices();
        let mut label = vec![usize::MAX; n];
        let mut rot = vec![0usize; n];
        let mut order = vec![start];
        label[start] = 0;
        rot[start] = first;
        let mut k = 0;
        let mut code = Vec::new();
        while k < order.len() {
            let v = order[k];
            k += 1;
            for t in 0..3 {
                let s = (t + rot[v]) % 3;
                let (w, ws) = self.partner[v][s];
                if label[w] == usize::MAX {
                    label[w] = order.len();
                    rot[w] = ws;
                    order.push(w);
                }
                code.push(label[w] as u8);
                code.push(((ws + 3 - rot[w]) % 3) as u8);
            }
        }
        code
    }

    /// Canonical form up to vertex relabeling and rotation of slots (vertex
    /// orientations are preserved). Equal forms iff the graphs are isomorphic.
    pub fn canonical_form(&self) -> Vec<Vec<u8>> {
        let mut parts: Vec<Vec<u8>> = self
            .components()
            .iter()
            .map(|comp| {
                comp.iter()
                    .flat_map(|&v| (0..3).map(move |s| (v, s)))
                    .map(|(v, s)| self.code_from(v, s))
                    .min()
                    .expect("nonempty component")
            })
            .collect();
        parts.sort();
        parts
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.num_vertices() == other.num_vertices()
            && self.canonical_form() == other.canonical_form()
    }

    /// The graph rebuilt from its canonical form.
    pub fn canonical(&self) -> Self {
        let mut g = Self { partner: vec![] };
        for code in self.canonical_form() {
            let m = code.len() / 6;
            let part = Self {
                partner: (0..m)
                    .map(|v| {
                        std::array::from_fn(|t| {
                            let i = 6 * v + 2 * t;
                            (code[i] as usize, code[i + 1] as usize)
                        })
                    })
                    .collect(),
            };
            g = g.disjoint_union(&part);
        }
        g
    }
}

/// All trivalent graphs with `vertices` vertices up to oriented isomorphism,
/// in a deterministic order.
pub fn generate_graphs(vertices: usize) -> Vec<TrivalentGraph> {
    assert!(vertices.is_multiple_of(2), "trivalent graphs have an even number of vertices");
    let halves = 3 * vertices;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut pairing = vec![usize::MAX; halves];
    fn rec(
        pairing: &mut Vec<usize>,
        vertices: usize,
        seen: &mut BTreeSet<Vec<Vec<u8>>>,
        out: &mut Vec<TrivalentGraph>,
    ) {
        let Some(a) = pairing.iter().position(|&p| p == usize::MAX) else {
            let edges: Vec<[usize; 4]> = (0..pairing.len())
                .filter(|&a| a < pairing[a])
                .map(|a| [a / 3, a % 3, pairing[a] / 3, pairing[a] % 3])
                .collect();
            let g = TrivalentGraph::new(vertices, &edges).expect("valid matching");
            let form = g.canonical_form();
            if seen.insert(form) {
                out.push(g.canonical());
            }
            return;
        };
        for b in a + 1..pairing.len() {
            if pairing[b] == usize::MAX {
                pairing[a] = b;
                pairing[b] = a;
                rec(pairing, vertices, seen, out);
                pairing[a] = usize::MAX;
                pairing[b] = usize::MAX;
            }
        }
    }
    rec(&mut pairing, vertices, &mut seen, &mut out);
    out
}

/// All graphs with an even number of vertices between 2 and `max_vertices`.
pub fn generate_graphs_up_to(max_vertices: usize) -> Vec<TrivalentGraph> {
    (1..=max_vertices / 2).flat_map(|k| generate_graphs(2 * k)).collect()
}

/// Formal rational combination of graphs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GraphCombination {
    pub terms: Vec<(Rational, TrivalentGraph)>,
}

impl GraphCombination {
    pub fn single(g: TrivalentGraph) -> Self {
        Self { terms: vec![(rat(1), g)] }
    }

    pub fn push(&mut self, c: Rational, g: TrivalentGraph) {
        self.terms.push((c, g));
    }

    pub fn extend(&mut self, other: GraphCombination) {
        self.terms.extend(other.terms);
    }

    /// Merges isomorphic terms and drops zero coefficients.
    pub fn simplify(&self) -> Self {
        let mut acc: Vec<(Rational, TrivalentGraph, Vec<Vec<u8>>)> = Vec::new();
        for (c, g) in &self.terms {
            let form = g.canonical_form();
            match acc.iter_mut().find(|(_, h, f)| h.num_vertices() == g.num_vertices() && *f == form) {
                Some(t) => t.0 += c,
                None => acc.push((c.clone(), g.canonical(), form)),
            }
        }
        Self {
            terms: acc
                .into_iter()
                .filter(|(c, _, _)| *c != rat(0))
                .map(|(c, g, _)| (c, g))
                .collect(),
        }
    }
}

/// `G + G'` where `G'` has the cyclic order at `v` reversed.
pub fn as_relation(g: &TrivalentGraph, v: usize) -> Result<GraphCombination, GraphError> {
    if v >= g.num_vertices() {
        return Err(GraphError::VertexIndex(v));
    }
    let mut c = GraphCombination::single(g.clone());
    c.push(rat(1), g.flip(v));
    Ok(c)
}

/// Jacobi combination at edge `e` (index into [`TrivalentGraph::edges`]).
///
/// If `e` joins `u = (e, a, b)` and `w = (e, c, d)` in cyclic order, the
/// result is `T(a,b;c,d) + T(b,c;a,d) + T(c,a;b,d)` where `T(x,y;z,t)` has
/// `u = (e, x, y)` and `w = (e, z, t)`. The first term is `G` itself.
pub fn ihx_relation(g: &TrivalentGraph, e: usize) -> Result<GraphCombination, GraphError> {
    let edges = g.edges();
    let &((u, su), (w, sw)) = edges.get(e).ok_or(GraphError::EdgeIndex(e))?;
    if u == w {
        return Err(GraphError::SelfLoopEdge(e));
    }
    // ports a, b, c, d
    let ports = [(u, (su + 1) % 3), (u, (su + 2) % 3), (w, (sw + 1) % 3), (w, (sw + 2) % 3)];
    let mut out = GraphCombination::default();
    // new positions of ports [a, b, c, d] for each term
    let layouts: [[HalfEdge; 4]; 3] = [
        [(u, 1), (u, 2), (w, 1), (w, 2)],
        [(w, 1), (u, 1), (u, 2), (w, 2)],
        [(u, 2), (w, 1), (u, 1), (w, 2)],
    ];
    for pos in layouts {
        let mut partner = g.partner.clone();
        // rotate u and w so that the central edge sits in slot 0
        partner[u][0] = (w, 0);
        partner[w][0] = (u, 0);
        for (k, &p) in ports.iter().enumerate() {
            let ext = g.partner(p);
            let target = match ports.iter().position(|&q| q == ext) {
                Some(k2) => pos[k2],
                None => ext,
            };
            partner[pos[k].0][pos[k].1] = target;
            if !ports.contains(&ext) {
                partner[ext.0][ext.1] = pos[k];
            }
        }
        out.push(rat(1), TrivalentGraph { partner });
    }
    Ok(out)
}
