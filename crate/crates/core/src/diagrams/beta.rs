//! Links from trivalent graphs by Borromean vertex replacement.
//!
//! Every vertex becomes a three-component gadget: either the Borromean rings
//! (coefficient +1) or three trivial circles (coefficient −1). Each gadget is
//! a tangle with three bands (pairs of endpoints `[in, out]`) on its top
//! boundary; components attached to the two ends of an edge are joined by
//! band sums. Gadgets are laid out in a row, bands are permuted by band swaps
//! until the two bands of each edge are adjacent, then capped off.

use super::graph::TrivalentGraph;
use crate::algebra::rat;
use crate::links::{EndDir, FramedLinkDiagram, LinkCombination, LinkError, Tangle};

/// Which Borromean diagram a vertex is replaced by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chirality {
    Standard,
    Mirror,
}

/// Gadget with ports `A, B, C` (counterclockwise) carrying tags
/// `tags[0..3]`. Top endpoints, left to right: `A_in, A_out, C_in, C_out,
/// B_in, B_out`.
pub fn borromean_gadget(tags: [u32; 3], chirality: Chirality) -> Tangle {
    let mut t = Tangle::new();
    let b = &mut t.builder;
    let [ta, tb, tc] = tags;
    let a: Vec<usize> = (0..5).map(|_| b.segment(Some(ta))).collect();
    let bb: Vec<usize> = (0..5).map(|_| b.segment(Some(tb))).collect();
    let c: Vec<usize> = (0..5).map(|_| b.segment(Some(tc))).collect();
    // [p0, p1, p2, p3] counterclockwise, under-strand p0 → p2; over enters at
    // the given position
    let crossings: [([usize; 4], usize); 6] = [
        ([bb[3], a[0], bb[4], a[1]], 1),
        ([bb[1], a[3], bb[2], a[2]], 3),
        ([c[3], bb[0], c[4], bb[1]], 1),
        ([c[1], bb[3], c[2], bb[2]], 3),
        ([a[3], c[0], a[4], c[1]], 1),
        ([a[1], c[3], a[2], c[2]], 3),
    ];
    for (segs, over_in) in crossings {
        let mut hints = [Some(false); 4];
        hints[0] = Some(true);
        hints[over_in] = Some(true);
        let (segs, hints) = match chirality {
            Chirality::Standard => (segs, hints),
            // switching the crossing: the over-strand moves to positions 0–2
            Chirality::Mirror => (
                [segs[1], segs[2], segs[3], segs[0]],
                [hints[1], hints[2], hints[3], hints[0]],
            ),
        };
        let x = b.crossing(segs);
        b.set_hints(x, hints);
    }
    t.ends = vec![
        endpoint(a[0], EndDir::In),
        endpoint(a[4], EndDir::Out),
        endpoint(c[0], EndDir::In),
        endpoint(c[4], EndDir::Out),
        endpoint(bb[0], EndDir::In),
        endpoint(bb[4], EndDir::Out),
    ];
    t
}

fn endpoint(seg: usize, dir: EndDir) -> crate::links::builder::Endpoint {
    crate::links::builder::Endpoint { seg, dir }
}

/// Three unlinked arcs with the same port layout as [`borromean_gadget`].
pub fn trivial_gadget(tags: [u32; 3]) -> Tangle {
    Tangle::arc(Some(tags[0])).juxtapose(Tangle::arc(Some(tags[2]))).juxtapose(Tangle::arc(Some(tags[1])))
}

/// Closes a gadget by capping each band on itself.
pub fn close_gadget(mut t: Tangle) -> Result<FramedLinkDiagram, LinkError> {
    for _ in 0..3 {
        t.cap(0)?;
    }
    t.close(&[0, 0, 0])
}

/// Crosses band `k` (endpoints `2k, 2k+1`) over band `k+1`.
fn band_swap(t: &mut Tangle, k: usize) {
    let p = 2 * k;
    t.cross(p + 1, true);
    t.cross(p, true);
    t.cross(p + 2, true);
    t.cross(p + 1, true);
}

/// Joins adjacent bands `k` and `k+1` and removes them from the boundary.
fn band_cap(t: &mut Tangle, k: usize) -> Result<(), LinkError> {
    let p = 2 * k;
    t.connect_many(&[(p + 1, p + 2), (p, p + 3)])
}

/// Placement of the vertices: rotation `r` puts slots `r, r+1, r+2` on ports
/// `A, B, C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub rotations: Vec<usize>,
    pub swaps: usize,
}

fn band_labels(g: &TrivalentGraph, rotations: &[usize]) -> Vec<usize> {
    let mut labels = Vec::new();
    for (v, &r) in rotations.iter().enumerate() {
        // top order A, C, B
        for k in [0, 2, 1] {
            labels.push(g.edge_of((v, (r + k) % 3)));
        }
    }
    labels
}

/// Capping plan: cap any adjacent equal pair, otherwise move the partner of
/// the leftmost band one step left. Returns the operations and the swap count.
fn plan(labels: &[usize]) -> (Vec<Op>, usize) {
    let mut l = labels.to_vec();
    let mut ops = Vec::new();
    let mut swaps = 0;
    while !l.is_empty() {
        if let Some(k) = (0..l.len() - 1).find(|&k| l[k] == l[k + 1]) {
            ops.push(Op::Cap(k));
            l.drain(k..k + 2);
            continue;
        }
        let k = l[1..].iter().position(|&y| y == l[0]).expect("edge label twice") + 1;
        ops.push(Op::Swap(k - 1));
        l.swap(k - 1, k);
        swaps += 1;
    }
    (ops, swaps)
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Swap(usize),
    Cap(usize),
}

/// Rotation choice with the fewest band swaps (ties: lexicographically least).
pub fn choose_layout(g: &TrivalentGraph) -> Layout {
    let v = g.num_vertices();
    let mut best: Option<Layout> = None;
    for code in 0..3usize.pow(v as u32) {
        let mut x = code;
        let rotations: Vec<usize> = (0..v)
            .map(|_| {
                let r = x % 3;
                x /= 3;
                r
            })
            .collect();
        let (_, swaps) = plan(&band_labels(g, &rotations));
        if best.as_ref().is_none_or(|b| swaps < b.swaps) {
            best = Some(Layout { rotations, swaps });
        }
    }
    best.unwrap_or(Layout { rotations: vec![], swaps: 0 })
}

/// One term of β(G): `borromean[v]` selects the gadget at vertex `v`.
/// Component `k` of the result belongs to edge `k` of [`TrivalentGraph::edges`].
pub fn beta_term(
    g: &TrivalentGraph,
    layout: &Layout,
    borromean: &[bool],
    chirality: Chirality,
    framing: i64,
) -> Result<FramedLinkDiagram, LinkError> {
    let mut t = Tangle::new();
    for (v, &r) in layout.rotations.iter().enumerate() {
        let tags = [0, 1, 2].map(|k| g.edge_of((v, (r + k) % 3)) as u32);
        let gadget =
            if borromean[v] { borromean_gadget(tags, chirality) } else { trivial_gadget(tags) };
        t = t.juxtapose(gadget);
    }
    let (ops, _) = plan(&band_labels(g, &layout.rotations));
    for op in ops {
        match op {
            Op::Swap(k) => band_swap(&mut t, k),
            Op::Cap(k) => band_cap(&mut t, k)?,
        }
    }
    let n = t.count_components();
    t.close(&vec![framing; n])
}

fn beta_with(g: &TrivalentGraph, chirality: Chirality, framing: i64) -> LinkCombination {
    let layout = choose_layout(g);
    let v = g.num_vertices();
    let mut out = LinkCombination::new();
    for mask in 0u64..(1u64 << v) {
        let borromean: Vec<bool> = (0..v).map(|k| mask >> k & 1 == 1).collect();
        let trivial = borromean.iter().filter(|&&b| !b).count();
        let c = if trivial % 2 == 0 { rat(1) } else { rat(-1) };
        let l = beta_term(g, &layout, &borromean, chirality, framing).expect("gadgets close");
        out.push(c, l);
    }
    out
}

/// β(G): the `2^{#V}` zero-framed links with signs `(-1)^{#trivial}`.
pub fn beta(g: &TrivalentGraph) -> LinkCombination {
    beta_with(g, Chirality::Standard, 0)
}

/// β̃(G): β(G) with every framing set to +1.
pub fn beta_tilde(g: &TrivalentGraph) -> LinkCombination {
    beta_with(g, Chirality::Standard, 1)
}

pub fn beta_tilde_with(g: &TrivalentGraph, chirality: Chirality) -> LinkCombination {
    beta_with(g, chirality, 1)
}

/// Closed gadget as a plain diagram, used to check the fixture.
pub fn gadget_closure(chirality: Chirality) -> FramedLinkDiagram {
    close_gadget(borromean_gadget([0, 1, 2], chirality)).expect("gadget closes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jones::jones_v;
    use crate::links::catalog::builtin;

    #[test]
    fn gadget_closes_to_borromean_rings() {
        let b = gadget_closure(Chirality::Standard);
        assert_eq!(b.num_components(), 3);
        assert_eq!(b.num_crossings(), 6);
        assert!(b.is_algebraically_split());
        assert_eq!(jones_v(&b), jones_v(&builtin("borromean")));
        let m = gadget_closure(Chirality::Mirror);
        assert_eq!(jones_v(&m), jones_v(&builtin("borromean").mirror()));
        let triv = close_gadget(trivial_gadget([0, 1, 2])).unwrap();
        assert_eq!(triv.num_components(), 3);
        assert_eq!(triv.num_crossings(), 0);
    }

    #[test]
    fn planar_theta_needs_no_swaps() {
        let l = choose_layout(&TrivalentGraph::theta());
        assert_eq!(l.swaps, 0);
        assert!(choose_layout(&TrivalentGraph::theta_twisted()).swaps > 0);
    }

    #[test]
    fn beta_theta_shape() {
        for g in [TrivalentGraph::theta(), TrivalentGraph::theta_twisted()] {
            let c = beta(&g);
            assert_eq!(c.len(), 4);
            let mut signs = 0i64;
            for (k, l) in c.terms() {
                assert_eq!(l.num_components(), 3);
                assert!(l.is_algebraically_split());
                assert_eq!(l.framings(), &[0, 0, 0]);
                signs += if *k == rat(1) { 1 } else { -1 };
            }
            assert_eq!(signs, 0);
            let all_trivial = c.terms().iter().find(|(_, l)| l.num_crossings() == 0 || {
                jones_v(l) == jones_v(&FramedLinkDiagram::unlink(3))
            });
            assert!(all_trivial.is_some());
            assert!(beta_tilde(&g).terms().iter().all(|(_, l)| l.framings() == [1, 1, 1]));
        }
    }

    #[test]
    fn beta_of_four_vertex_graphs_is_split() {
        for g in super::super::graph::generate_graphs(4).into_iter().take(6) {
            let c = beta(&g);
            assert_eq!(c.len(), 16);
            for (_, l) in c.terms() {
                assert_eq!(l.num_components(), 6);
                assert!(l.is_algebraically_split());
            }
        }
    }
}
