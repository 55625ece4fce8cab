//! Chord diagrams: Wilson loops with a uni-trivalent graph attached.
//!
//! Every attachment point ("port") is either a slot of a trivalent vertex or
//! a leg position on a Wilson loop. Edges pair up all ports.

use num_traits::Zero;
use serde::Serialize;

use super::graph::TrivalentGraph;
use crate::algebra::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChordDiagram {
    /// Ports of each trivalent vertex in cyclic order.
    pub vertices: Vec<[usize; 3]>,
    /// Leg ports on each Wilson loop, in cyclic order.
    pub loops: Vec<Vec<usize>>,
    /// Perfect matching of all ports.
    pub edges: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn empty() -> Self {
        Self { vertices: vec![], loops: vec![], edges: vec![] }
    }

    /// `k` Wilson loops with nothing attached.
    pub fn bare_loops(k: usize) -> Self {
        Self { vertices: vec![], loops: vec![vec![]; k], edges: vec![] }
    }

    /// Checks that every port occurs once as an attachment and once in an edge.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.num_ports();
        let mut attach = vec![0usize; n];
        for p in self.vertices.iter().flatten().chain(self.loops.iter().flatten()) {
            if *p >= n {
                return Err(format!("port {p} out of range"));
            }
            attach[*p] += 1;
        }
        let mut used = vec![0usize; n];
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b {
                return Err(format!("bad edge ({a}, {b})"));
            }
            used[a] += 1;
            used[b] += 1;
        }
        if attach.iter().chain(&used).any(|&c| c != 1) {
            return Err("ports must be attached and paired exactly once".into());
        }
        Ok(())
    }

    pub fn num_ports(&self) -> usize {
        3 * self.vertices.len() + self.loops.iter().map(Vec::len).sum::<usize>()
    }

    pub fn num_legs(&self) -> usize {
        self.loops.iter().map(Vec::len).sum()
    }

    /// `(#univalent + #trivalent) / 2`.
    pub fn grade(&self) -> usize {
        debug_assert!((self.num_legs() + self.vertices.len()).is_multiple_of(2));
        (self.num_legs() + self.vertices.len()) / 2
    }

    /// Edges whose both ends are legs.
    pub fn num_chords(&self) -> usize {
        let is_leg = self.leg_mask();
        self.edges.iter().filter(|&&(a, b)| is_leg[a] && is_leg[b]).count()
    }

    fn leg_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.num_ports()];
        for &p in self.loops.iter().flatten() {
            m[p] = true;
        }
        m
    }

    /// Renumbers ports of `other` past ours and places it alongside.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.num_ports();
        let mut d = self.clone();
        d.vertices.extend(other.vertices.iter().map(|v| v.map(|p| p + shift)));
        d.loops.extend(other.loops.iter().map(|l| l.iter().map(|p| p + shift).collect()));
        d.edges.extend(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
        d
    }

    /// Connected sum of loop `a` of `self` with loop `b` of `other`: both
    /// loops are cut and joined into one, legs of `a` first.
    pub fn connect_sum(&self, a: usize, other: &Self, b: usize) -> Self {
        let mut d = self.disjoint_union(other);
        let ob = self.loops.len() + b;
        let tail = d.loops.remove(ob);
        d.loops[a].extend(tail);
        d
    }

    /// Removes loop `k`; only valid for a leg-free loop.
    fn remove_loop(&self, k: usize) -> Self {
        assert!(self.loops[k].is_empty());
        let mut d = self.clone();
        d.loops.remove(k);
        d
    }
}

/// Inserts a two-leg Wilson loop into every edge of `g`.
///
/// Edge `k` of [`TrivalentGraph::edges`] becomes loop `k`; its first leg is
/// joined to the smaller half-edge.
pub fn eta(g: &TrivalentGraph) -> ChordDiagram {
    let v = g.num_vertices();
    let vertices: Vec<[usize; 3]> = (0..v).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect();
    let mut loops = Vec::new();
    let mut edges = Vec::new();
    let mut next = 3 * v;
    for ((a, sa), (b, sb)) in g.edges() {
        loops.push(vec![next, next + 1]);
        edges.push((3 * a + sa, next));
        edges.push((next + 1, 3 * b + sb));
        next += 2;
    }
    ChordDiagram { vertices, loops, edges }
}

/// The trivalent graph as a loopless diagram.
pub fn graph_as_diagram(g: &TrivalentGraph) -> ChordDiagram {
    let v = g.num_vertices();
    ChordDiagram {
        vertices: (0..v).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect(),
        loops: vec![],
        edges: g.edges().into_iter().map(|((a, sa), (b, sb))| (3 * a + sa, 3 * b + sb)).collect(),
    }
}

/// Formal rational combination of chord diagrams.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiagramCombination {
    pub terms: Vec<(Rational, ChordDiagram)>,
}

impl DiagramCombination {
    pub fn single(d: ChordDiagram) -> Self {
        Self { terms: vec![(rat(1), d)] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Rational, d: ChordDiagram) {
        if !c.is_zero() {
            self.terms.push((c, d));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (c, d) in &other.terms {
            s.push(c.clone(), d.clone());
        }
        s
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut s = Self::zero();
        for (k, d) in &self.terms {
            s.push(k * c, d.clone());
        }
        s
    }

    fn map<F: Fn(&ChordDiagram) -> Option<ChordDiagram>>(&self, f: F) -> Self {
        let mut s = Self::zero();
        for (c, d) in &self.terms {
            if let Some(e) = f(d) {
                s.push(c.clone(), e);
            }
        }
        s
    }
}

/// `ε_C`: zero if loop `C` carries legs, otherwise the diagram with `C`
/// removed.
pub fn epsilon(x: &DiagramCombination, loop_index: usize) -> DiagramCombination {
    x.map(|d| d.loops[loop_index].is_empty().then(|| d.remove_loop(loop_index)))
}

/// `ε̃_C`: the diagram itself if loop `C` carries legs, otherwise zero.
pub fn epsilon_tilde(x: &DiagramCombination, loop_index: usize) -> DiagramCombination {
    x.map(|d| (!d.loops[loop_index].is_empty()).then(|| d.clone()))
}

/// Drops every term with a leg-free Wilson loop.
pub fn project_p(x: &DiagramCombination) -> DiagramCombination {
    x.map(|d| d.loops.iter().all(|l| !l.is_empty()).then(|| d.clone()))
}

/// Lowest grade of a chord-free diagram on `mu` loops that survives `P` and
/// can have nonzero sl₂ weight: `μ + μ/3`.
pub fn min_grade_bound(mu: usize) -> Rational {
    rat(mu as i64) + Rational::new((mu as i64).into(), 3.into())
}

/// Shape of a chord-free uni-trivalent diagram: trivalent vertex count and
/// legs per loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramShape {
    pub vertices: usize,
    pub legs: Vec<usize>,
}

impl DiagramShape {
    pub fn grade(&self) -> usize {
        (self.vertices + self.legs.iter().sum::<usize>()) / 2
    }
}

/// Every shape with `mu` loops, grade ≤ `max_grade`, at least `min_legs`
/// legs per loop, realizable without chords: all legs end on trivalent
/// vertices, so `legs ≤ 3V` and `3V - legs` is even.
pub fn chord_free_shapes(mu: usize, max_grade: usize, min_legs: usize) -> Vec<DiagramShape> {
    let mut out = Vec::new();
    for vertices in 0..=2 * max_grade {
        for total in mu * min_legs..=2 * max_grade {
            if (vertices + total) % 2 != 0 || (vertices + total) / 2 > max_grade {
                continue;
            }
            if total > 3 * vertices || (3 * vertices - total) % 2 != 0 {
                continue;
            }
            if vertices == 0 && total == 0 && mu > 0 {
                continue;
            }
            for legs in compositions(total, mu, min_legs) {
                out.push(DiagramShape { vertices, legs });
            }
        }
    }
    out
}

fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in min..=total {
        for mut rest in compositions(total - first, parts - 1, min) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Checks that every chord-free shape with at least two legs per loop has
/// grade at least [`min_grade_bound`]. Returns the offending shapes.
pub fn check_min_grade(mu: usize, max_grade: usize) -> Vec<DiagramShape> {
    let bound = min_grade_bound(mu);
    chord_free_shapes(mu, max_grade, 2)
        .into_iter()
        .filter(|s| rat(s.grade() as i64) < bound)
        .collect()
}

/// All chord-free diagrams with `vertices` trivalent vertices and the given
/// legs per loop (every matching of ports without leg–leg edges). Loop leg
/// order follows port numbering.
pub fn chord_free_diagrams(vertices: usize, legs: &[usize]) -> Vec<ChordDiagram> {
    let vport: Vec<[usize; 3]> = (0..vertices).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect();
    let mut loops = Vec::new();
    let mut next = 3 * vertices;
    for &k in legs {
        loops.push((next..next + k).collect::<Vec<_>>());
        next += k;
    }
    let n = next;
    let is_leg = |p: usize| p >= 3 * vertices;
    let mut out = Vec::new();
    let mut pairing = vec![usize::MAX; n];
    fn rec<F: Fn(usize) -> bool>(
        pairing: &mut Vec<usize>,
        is_leg: &F,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        let Some(a) = pairing.iter().position(|&p| p == usize::MAX) else {
            emit(pairing);
            return;
        };
        for b in a + 1..pairing.len() {
            if pairing[b] == usize::MAX && !(is_leg(a) && is_leg(b)) {
                pairing[a] = b;
                pairing[b] = a;
                rec(pairing, is_leg, emit);
                pairing[a] = usize::MAX;
                pairing[b] = usize::MAX;
            }
        }
    }
    rec(&mut pairing, &is_leg, &mut |p: &[usize]| {
        let edges = (0..p.len()).filter(|&a| a < p[a]).map(|a| (a, p[a])).collect();
        out.push(ChordDiagram { vertices: vport.clone(), loops: loops.clone(), edges });
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;

    #[test]
    fn eta_counts() {
        let t = eta(&TrivalentGraph::theta());
        t.validate().unwrap();
        assert_eq!(t.loops.len(), 3);
        assert_eq!(t.num_legs(), 6);
        assert_eq!(t.vertices.len(), 2);
        assert_eq!(t.grade(), 4);
        let tt = TrivalentGraph::theta().disjoint_union(&TrivalentGraph::theta());
        let d = eta(&tt);
        assert_eq!((d.loops.len(), d.grade()), (6, 8));
        for g in super::super::graph::generate_graphs(4) {
            let d = eta(&g);
            assert_eq!((d.loops.len(), d.grade()), (6, 8));
        }
    }

    #[test]
    fn epsilon_operators() {
        let bare = DiagramCombination::single(ChordDiagram::bare_loops(1));
        assert_eq!(epsilon(&bare, 0), DiagramCombination::single(ChordDiagram::empty()));
        assert!(epsilon_tilde(&bare, 0).is_zero());
        let t = DiagramCombination::single(eta(&TrivalentGraph::theta()));
        for k in 0..3 {
            assert!(epsilon(&t, k).is_zero());
            assert_eq!(epsilon_tilde(&t, k), t);
        }
        let two = DiagramCombination::single(ChordDiagram::bare_loops(2));
        assert_eq!(
            epsilon(&epsilon(&two, 0), 0),
            DiagramCombination::single(ChordDiagram::empty())
        );
    }

    #[test]
    fn projector() {
        let t = DiagramCombination::single(eta(&TrivalentGraph::theta()));
        assert_eq!(project_p(&t), t);
        let with_bare = DiagramCombination::single(
            eta(&TrivalentGraph::theta()).disjoint_union(&ChordDiagram::bare_loops(1)),
        );
        assert!(project_p(&with_bare).is_zero());
        let mixed = t.add(&with_bare.scale(&frac(3, 2)));
        assert_eq!(project_p(&project_p(&mixed)), project_p(&mixed));
        assert_eq!(project_p(&mixed), t);
    }

    #[test]
    fn grade_bound_values() {
        assert_eq!(min_grade_bound(3), rat(4));
        assert_eq!(min_grade_bound(1), frac(4, 3));
        assert_eq!(min_grade_bound(6), rat(8));
    }

    #[test]
    fn grade_bound_holds_on_shapes() {
        for mu in 1..=3 {
            assert!(check_min_grade(mu, 5).is_empty(), "μ={mu}");
        }
        // the bound is attained for μ = 3 by η(θ)
        assert!(chord_free_shapes(3, 4, 2).iter().any(|s| s.grade() == 4));
    }
}
