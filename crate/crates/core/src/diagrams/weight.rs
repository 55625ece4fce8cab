//! Lie algebra weight systems by tensor contraction.
//!
//! A [`MetrizedRep`] holds a basis of a Lie algebra as matrices of a
//! representation; the metric `g_ab = Tr(ρ_a ρ_b)` and the structure tensor
//! `f_abc = Tr([ρ_a, ρ_b] ρ_c)` are derived from those matrices.
//!
//! Vertices contribute `f` in their cyclic order, edges the inverse metric,
//! and each Wilson loop the trace of the product of its legs' matrices.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::chord::{graph_as_diagram, ChordDiagram, DiagramCombination};
use super::graph::{GraphCombination, TrivalentGraph};
use crate::algebra::{rat, Rational};

type Matrix = Vec<Vec<Rational>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).fold(Rational::zero(), |x, y| x + y))
                .collect()
        })
        .collect()
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn trace(a: &Matrix) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).fold(Rational::zero(), |x, y| x + y)
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// Inverse by Gauss–Jordan elimination; panics on a singular matrix.
fn invert(m: &Matrix) -> Matrix {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("nondegenerate metric");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

#[derive(Clone, Debug)]
pub struct MetrizedRep {
    pub rho: Vec<Matrix>,
    pub metric: Matrix,
    pub inverse_metric: Matrix,
    /// `f[a][b][c]`
    pub structure: Vec<Vec<Vec<Rational>>>,
}

impl MetrizedRep {
    pub fn from_matrices(rho: Vec<Matrix>) -> Self {
        let d = rho.len();
        let metric: Matrix =
            (0..d).map(|a| (0..d).map(|b| trace(&mat_mul(&rho[a], &rho[b]))).collect()).collect();
        let inverse_metric = invert(&metric);
        let structure = (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| {
                        let br = mat_sub(&mat_mul(&rho[a], &rho[b]), &mat_mul(&rho[b], &rho[a]));
                        (0..d).map(|c| trace(&mat_mul(&br, &rho[c]))).collect()
                    })
                    .collect()
            })
            .collect();
        Self { rho, metric, inverse_metric, structure }
    }

    /// sl₂ in the fundamental representation, basis `H, E, F`.
    pub fn sl2() -> Self {
        let m = |v: [[i64; 2]; 2]| -> Matrix {
            v.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
        };
        Self::from_matrices(vec![m([[1, 0], [0, -1]]), m([[0, 1], [0, 0]]), m([[0, 0], [1, 0]])])
    }

    pub fn dim(&self) -> usize {
        self.rho.len()
    }

    pub fn rep_dim(&self) -> usize {
        self.rho.first().map_or(0, Vec::len)
    }

    /// `Tr(ρ_{a_1} ⋯ ρ_{a_k})`; the empty product gives the representation
    /// dimension.
    pub fn loop_trace(&self, labels: &[usize]) -> Rational {
        let mut m = identity(self.rep_dim());
        for &a in labels {
            m = mat_mul(&m, &self.rho[a]);
        }
        trace(&m)
    }
}

/// Dense tensor over the algebra basis; `data` is indexed row-major in `idx`.
#[derive(Clone, Debug)]
struct Tensor {
    idx: Vec<usize>,
    data: Vec<Rational>,
}

impl Tensor {
    fn build<F: Fn(&[usize]) -> Rational>(idx: Vec<usize>, d: usize, f: F) -> Self {
        let k = idx.len();
        let size = d.pow(k as u32);
        let mut labels = vec![0usize; k];
        let mut data = Vec::with_capacity(size);
        for flat in 0..size {
            let mut x = flat;
            for pos in (0..k).rev() {
                labels[pos] = x % d;
                x /= d;
            }
            data.push(f(&labels));
        }
        Self { idx, data }
    }

    fn contract(&self, other: &Tensor, d: usize) -> Tensor {
        let shared: Vec<usize> = self.idx.iter().copied().filter(|i| other.idx.contains(i)).collect();
        let out_idx: Vec<usize> = self
            .idx
            .iter()
            .chain(&other.idx)
            .copied()
            .filter(|i| !shared.contains(i))
            .collect();
        let pos_a: Vec<usize> = self.idx.clone();
        let pos_b: Vec<usize> = other.idx.clone();
        let stride = |idx: &[usize], i: usize| -> usize {
            let p = idx.iter().position(|&j| j == i).unwrap();
            d.pow((idx.len() - 1 - p) as u32)
        };
        let out_strides_a: Vec<usize> =
            out_idx.iter().map(|&i| if pos_a.contains(&i) { stride(&pos_a, i) } else { 0 }).collect();
        let out_strides_b: Vec<usize> =
            out_idx.iter().map(|&i| if pos_b.contains(&i) { stride(&pos_b, i) } else { 0 }).collect();
        let sh_a: Vec<usize> = shared.iter().map(|&i| stride(&pos_a, i)).collect();
        let sh_b: Vec<usize> = shared.iter().map(|&i| stride(&pos_b, i)).collect();
        let n_out = d.pow(out_idx.len() as u32);
        let n_sh = d.pow(shared.len() as u32);
        let mut data = Vec::with_capacity(n_out);
        for o in 0..n_out {
            let (mut base_a, mut base_b) = (0, 0);
            let mut x = o;
            for k in (0..out_idx.len()).rev() {
                let l = x % d;
                x /= d;
                base_a += l * out_strides_a[k];
                base_b += l * out_strides_b[k];
            }
            let mut acc = Rational::zero();
            for s in 0..n_sh {
                let (mut ia, mut ib) = (base_a, base_b);
                let mut y = s;
                for k in (0..shared.len()).rev() {
                    let l = y % d;
                    y /= d;
                    ia += l * sh_a[k];
                    ib += l * sh_b[k];
                }
                let (a, b) = (&self.data[ia], &other.data[ib]);
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            data.push(acc);
        }
        Tensor { idx: out_idx, data }
    }
}

impl MetrizedRep {
    fn network(&self, d: &ChordDiagram) -> Vec<Tensor> {
        let dim = self.dim();
        // each edge (p, q) is an inverse-metric tensor on fresh indices,
        // connected to the port tensors via index ids = port ids
        let mut tensors = Vec::new();
        for v in &d.vertices {
            let f = &self.structure;
            tensors.push(Tensor::build(v.to_vec(), dim, |l| f[l[0]][l[1]][l[2]].clone()));
        }
        for lp in &d.loops {
            tensors.push(Tensor::build(lp.clone(), dim, |l| self.loop_trace(l)));
        }
        let n = d.num_ports();
        for (k, &(p, q)) in d.edges.iter().enumerate() {
            // rename the q-side of the edge so every index id appears exactly twice
            let fresh = n + k;
            for t in tensors.iter_mut() {
                for i in t.idx.iter_mut() {
                    if *i == q {
                        *i = fresh;
                    }
                }
            }
            let g = &self.inverse_metric;
            tensors.push(Tensor::build(vec![p, fresh], dim, |l| g[l[0]][l[1]].clone()));
        }
        tensors
    }

    /// Weight `γ(D)` by greedy pairwise contraction.
    pub fn weight(&self, d: &ChordDiagram) -> Rational {
        let dim = self.dim();
        let mut tensors = self.network(d);
        let mut scalar = Rational::one();
        loop {
            tensors.retain(|t| {
                if t.idx.is_empty() {
                    scalar *= &t.data[0];
                    false
                } else {
                    true
                }
            });
            if tensors.is_empty() {
                break;
            }
            // choose the pair sharing an index with the smallest result
            let mut best: Option<(usize, usize, usize)> = None;
            for a in 0..tensors.len() {
                for b in a + 1..tensors.len() {
                    let shared =
                        tensors[a].idx.iter().filter(|i| tensors[b].idx.contains(i)).count();
                    if shared == 0 {
                        continue;
                    }
                    let rank = tensors[a].idx.len() + tensors[b].idx.len() - 2 * shared;
                    if best.is_none_or(|(_, _, r)| rank < r) {
                        best = Some((a, b, rank));
                    }
                }
            }
            let (a, b, _) = best.expect("connected index structure");
            let tb = tensors.swap_remove(b);
            let ta = tensors.swap_remove(a);
            tensors.push(ta.contract(&tb, dim));
            if scalar.is_zero() {
                return scalar;
            }
        }
        scalar
    }

    /// Weight by summing over all label assignments, one label pair per edge
    /// drawn from the nonzero inverse-metric entries.
    pub fn weight_brute_force(&self, d: &ChordDiagram) -> Rational {
        let dim = self.dim();
        let pairs: Vec<(usize, usize, Rational)> = (0..dim)
            .flat_map(|a| (0..dim).map(move |b| (a, b)))
            .filter_map(|(a, b)| {
                let v = &self.inverse_metric[a][b];
                (!v.is_zero()).then(|| (a, b, v.clone()))
            })
            .collect();
        let n = d.num_ports();
        let mut label = vec![0usize; n];
        let mut total = Rational::zero();
        let e = d.edges.len();
        let count = pairs.len().pow(e as u32);
        for code in 0..count {
            let mut x = code;
            let mut w = Rational::one();
            for &(p, q) in &d.edges {
                let (a, b, ref g) = pairs[x % pairs.len()];
                x /= pairs.len();
                label[p] = a;
                label[q] = b;
                w *= g;
            }
            for v in &d.vertices {
                w *= &self.structure[label[v[0]]][label[v[1]]][label[v[2]]];
                if w.is_zero() {
                    break;
                }
            }
            if w.is_zero() {
                continue;
            }
            for lp in &d.loops {
                let ls: Vec<usize> = lp.iter().map(|&p| label[p]).collect();
                w *= self.loop_trace(&ls);
            }
            total += w;
        }
        total
    }

    pub fn graph_weight(&self, g: &TrivalentGraph) -> Rational {
        self.weight(&graph_as_diagram(g))
    }

    pub fn graph_combination_weight(&self, c: &GraphCombination) -> Rational {
        c.terms.iter().map(|(k, g)| k * self.graph_weight(g)).sum()
    }

    pub fn combination_weight(&self, c: &DiagramCombination) -> Rational {
        c.terms.iter().map(|(k, d)| k * self.weight(d)).sum()
    }
}

/// sl₂ weight of a chord diagram.
pub fn sl2_weight(d: &ChordDiagram) -> Rational {
    thread_local! {
        static SL2: MetrizedRep = MetrizedRep::sl2();
    }
    SL2.with(|r| r.weight(d))
}

/// sl₂ weight of a trivalent graph.
pub fn sl2_graph_weight(g: &TrivalentGraph) -> Rational {
    sl2_weight(&graph_as_diagram(g))
}

/// `Λ_n(G) = (-1)^n γ(η(G))`.
pub fn lambda_weight(g: &TrivalentGraph, n: usize) -> Rational {
    let w = sl2_weight(&super::chord::eta(g));
    if n.is_multiple_of(2) {
        w
    } else {
        -w
    }
}

/// Memo of graph weights keyed by canonical form.
#[derive(Debug, Default)]
pub struct WeightMemo {
    table: HashMap<Vec<Vec<u8>>, Rational>,
}

impl WeightMemo {
    pub fn get(&mut self, g: &TrivalentGraph) -> Rational {
        let key = g.canonical_form();
        self.table.entry(key).or_insert_with(|| sl2_graph_weight(g)).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::super::chord::{chord_free_diagrams, eta};
    use super::super::graph::generate_graphs_up_to;
    use super::*;
    use crate::algebra::frac;

    #[test]
    fn sl2_tensors_from_matrices() {
        let r = MetrizedRep::sl2();
        assert_eq!(r.metric[0][0], rat(2));
        assert_eq!(r.metric[1][2], rat(1));
        assert_eq!(r.metric[1][1], rat(0));
        assert_eq!(r.inverse_metric[0][0], frac(1, 2));
        // [H, E] = 2E, so f_{HEF} = Tr(2E F) = 2
        assert_eq!(r.structure[0][1][2], rat(2));
        assert_eq!(r.structure[1][0][2], rat(-2));
    }

    #[test]
    fn killing_form_identity() {
        // f_{acd} f_{bc'd'} g^{cc'} g^{dd'} = -4 g_{ab} (Killing form is 4 × trace form)
        let r = MetrizedRep::sl2();
        for a in 0..3 {
            for b in 0..3 {
                let mut s = Rational::zero();
                for c in 0..3 {
                    for d in 0..3 {
                        for c2 in 0..3 {
                            for d2 in 0..3 {
                                s += &r.structure[a][c][d]
                                    * &r.structure[b][c2][d2]
                                    * &r.inverse_metric[c][c2]
                                    * &r.inverse_metric[d][d2];
                            }
                        }
                    }
                }
                assert_eq!(s, rat(-4) * &r.metric[a][b]);
            }
        }
    }

    #[test]
    fn basic_values() {
        assert_eq!(sl2_weight(&ChordDiagram::empty()), rat(1));
        assert_eq!(sl2_weight(&ChordDiagram::bare_loops(1)), rat(2));
        let theta = TrivalentGraph::theta();
        // planar: f_{abc} f^{acb} = -f_{abc} f^{abc} = 12
        assert_eq!(sl2_graph_weight(&theta), rat(12));
        assert_eq!(sl2_graph_weight(&TrivalentGraph::theta_twisted()), rat(-12));
        assert_eq!(lambda_weight(&theta, 1), rat(-12));
    }

    #[test]
    fn contraction_matches_brute_force() {
        let r = MetrizedRep::sl2();
        for g in generate_graphs_up_to(4) {
            let d = graph_as_diagram(&g);
            assert_eq!(r.weight(&d), r.weight_brute_force(&d), "{g:?}");
        }
        let e = eta(&TrivalentGraph::theta());
        assert_eq!(r.weight(&e), r.weight_brute_force(&e));
    }

    #[test]
    fn bare_loop_and_connect_sum() {
        let r = MetrizedRep::sl2();
        let e = eta(&TrivalentGraph::theta());
        let w = r.weight(&e);
        assert_eq!(r.weight(&e.disjoint_union(&ChordDiagram::bare_loops(1))), rat(2) * &w);
        let tw = eta(&TrivalentGraph::theta_twisted());
        for (a, b) in [(0, 0), (1, 2), (2, 1)] {
            let s = e.connect_sum(a, &tw, b);
            s.validate().unwrap();
            assert_eq!(r.weight(&s), frac(1, 2) * &w * r.weight(&tw));
        }
    }

    #[test]
    fn single_leg_loops_have_zero_weight() {
        for legs in [vec![1, 1, 1], vec![1, 2], vec![1, 1, 2]] {
            for vertices in 1..=2 {
                if (3 * vertices) < legs.iter().sum::<usize>() {
                    continue;
                }
                for d in chord_free_diagrams(vertices, &legs) {
                    assert!(sl2_weight(&d).is_zero(), "{d:?}");
                }
            }
        }
    }
}
