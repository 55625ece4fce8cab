//! Unoriented planar construction kit.
//!
//! A [`PlanarBuilder`] holds crossings whose four positions are listed
//! counterclockwise with the under-strand on positions 0 and 2, and wire
//! segments glued by union-find. [`PlanarBuilder::finish`] walks the resulting
//! 4-valent graph, assigns orientations (respecting any per-position hints),
//! relabels arcs along components, and emits a validated PD diagram.

use std::collections::HashMap;

use super::{ArcId, Crossing, FramedLinkDiagram, LinkError};

/// `(crossing index, position 0..4)`.
pub type Position = (usize, usize);

#[derive(Clone, Debug, Default)]
pub struct PlanarBuilder {
    parent: Vec<usize>,
    tags: Vec<Option<u32>>,
    crossings: Vec<[usize; 4]>,
    /// Optional orientation hint per position: `true` = strand enters here.
    hints: Vec<[Option<bool>; 4]>,
}

impl PlanarBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// New wire segment. The tag orders components in the finished diagram.
    pub fn segment(&mut self, tag: Option<u32>) -> usize {
        self.parent.push(self.parent.len());
        self.tags.push(tag);
        self.parent.len() - 1
    }

    fn find(&mut self, mut s: usize) -> usize {
        while self.parent[s] != s {
            self.parent[s] = self.parent[self.parent[s]];
            s = self.parent[s];
        }
        s
    }

    /// Glues two segments into one wire.
    pub fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
            let t = match (self.tags[lo], self.tags[hi]) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
            self.tags[lo] = t;
        }
    }

    /// Unoriented crossing; positions counterclockwise, under-strand 0–2.
    pub fn crossing(&mut self, segs: [usize; 4]) -> usize {
        self.crossings.push(segs);
        self.hints.push([None; 4]);
        self.crossings.len() - 1
    }

    /// Crossing whose under-strand enters at position 0 and whose over-strand
    /// enters at `over_in` (1 or 3).
    pub fn crossing_oriented(&mut self, segs: [usize; 4], over_in: usize) -> usize {
        let c = self.crossing(segs);
        let mut h = [Some(false); 4];
        h[0] = Some(true);
        h[over_in] = Some(true);
        self.hints[c] = h;
        c
    }

    pub fn set_hints(&mut self, crossing: usize, hints: [Option<bool>; 4]) {
        self.hints[crossing] = hints;
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// Builds the arc structure: root segment → positions on it.
    fn arcs(&mut self) -> (Vec<usize>, HashMap<usize, Vec<Position>>) {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|s| self.find(s)).collect();
        let mut ends: HashMap<usize, Vec<Position>> = HashMap::new();
        for r in &roots {
            ends.entry(*r).or_default();
        }
        for (c, segs) in self.crossings.iter().enumerate() {
            for (k, &s) in segs.iter().enumerate() {
                ends.get_mut(&roots[s]).unwrap().push((c, k));
            }
        }
        (roots, ends)
    }

    /// Number of closed components the finished diagram will have.
    pub fn count_components(&mut self) -> usize {
        let (_, ends) = self.arcs();
        let loops = ends.values().filter(|v| v.is_empty()).count();
        let mut seen = vec![[false; 4]; self.crossings.len()];
        let roots: Vec<usize> = (0..self.parent.len()).map(|s| self.find(s)).collect();
        let mut count = loops;
        for c in 0..self.crossings.len() {
            for k in 0..4 {
                if seen[c][k] {
                    continue;
                }
                count += 1;
                self.walk(&roots, &ends, (c, k), |p, _| seen[p.0][p.1] = true);
            }
        }
        count
    }

    /// Walks the component through `start`, leaving the crossing at `start`
    /// first. Calls `visit(position, entering)` for every position met.
    fn walk<F: FnMut(Position, bool)>(
        &self,
        roots: &[usize],
        ends: &HashMap<usize, Vec<Position>>,
        start: Position,
        mut visit: F,
    ) {
        let mut cur = start;
        loop {
            visit(cur, false);
            let root = roots[self.crossings[cur.0][cur.1]];
            let e = &ends[&root];
            assert_eq!(e.len(), 2, "wire with {} crossing ends", e.len());
            let next = if e[0] == cur { e[1] } else { e[0] };
            visit(next, true);
            cur = (next.0, (next.1 + 2) % 4);
            if cur == start {
                break;
            }
        }
    }

    /// Orients, relabels and validates. `framings[k]` is assigned to the `k`-th
    /// component after sorting by tag (untagged components keep discovery order
    /// after all tagged ones).
    pub fn finish(mut self, framings: &[i64]) -> FramedLinkDiagram {
        let (roots, ends) = self.arcs();
        for (root, e) in &ends {
            assert!(e.is_empty() || e.len() == 2, "segment {root} has {} ends", e.len());
        }
        struct Comp {
            tag: Option<u32>,
            order: usize,
            // arcs as (root, first position) in traversal order; loops have none
            arcs: Vec<(usize, Option<Position>)>,
        }
        let mut comps: Vec<Comp> = Vec::new();
        let mut done = vec![[false; 4]; self.crossings.len()];
        let mut entering = vec![[false; 4]; self.crossings.len()];
        for c in 0..self.crossings.len() {
            for k in 0..4 {
                if done[c][k] {
                    continue;
                }
                // trial walk to check hints
                let mut agree = 0i32;
                let mut disagree = 0i32;
                self.walk(&roots, &ends, (c, k), |p, inn| {
                    if let Some(h) = self.hints[p.0][p.1] {
                        if h == inn {
                            agree += 1;
                        } else {
                            disagree += 1;
                        }
                    }
                });
                debug_assert!(agree == 0 || disagree == 0, "inconsistent orientation hints");
                let start = if disagree > 0 {
                    // reverse: leave through the opposite end of the first wire
                    let root = roots[self.crossings[c][k]];
                    let e = &ends[&root];
                    if e[0] == (c, k) {
                        e[1]
                    } else {
                        e[0]
                    }
                } else {
                    (c, k)
                };
                let mut arcs = Vec::new();
                let mut tag: Option<u32> = None;
                self.walk(&roots, &ends, start, |p, inn| {
                    done[p.0][p.1] = true;
                    entering[p.0][p.1] = inn;
                    if !inn {
                        let root = roots[self.crossings[p.0][p.1]];
                        arcs.push((root, Some(p)));
                        tag = match (tag, self.tags[root]) {
                            (Some(a), Some(b)) => Some(a.min(b)),
                            (a, b) => a.or(b),
                        };
                    }
                });
                comps.push(Comp { tag, order: comps.len(), arcs });
            }
        }
        let mut loop_roots: Vec<usize> =
            ends.iter().filter(|(_, e)| e.is_empty()).map(|(r, _)| *r).collect();
        loop_roots.sort_unstable();
        for r in loop_roots {
            comps.push(Comp { tag: self.tags[r], order: comps.len(), arcs: vec![(r, None)] });
        }
        comps.sort_by_key(|c| (c.tag.is_none(), c.tag, c.order));
        assert_eq!(framings.len(), comps.len(), "framings for finished diagram");

        let mut label: HashMap<usize, ArcId> = HashMap::new();
        let mut components = Vec::with_capacity(comps.len());
        for comp in &comps {
            let mut arcs = Vec::new();
            for (root, _) in &comp.arcs {
                let n = label.len() as ArcId + 1;
                label.insert(*root, n);
                arcs.push(n);
            }
            components.push(arcs);
        }
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for (c, segs) in self.crossings.iter().enumerate() {
            let under_in = if entering[c][0] { 0 } else { 2 };
            let over_in_abs = if entering[c][1] { 1 } else { 3 };
            let slots: [ArcId; 4] =
                std::array::from_fn(|i| label[&roots[segs[(under_in + i) % 4]]]);
            let rel = (over_in_abs + 4 - under_in) % 4;
            let sign = if rel == 3 { 1 } else { -1 };
            crossings.push(Crossing::new(slots, sign));
        }
        FramedLinkDiagram::from_parts_unchecked(crossings, components, framings.to_vec())
    }
}

/// Orientation of a tangle endpoint: `In` when the strand enters the tangle there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndDir {
    In,
    Out,
}

#[derive(Clone, Copy, Debug)]
pub struct Endpoint {
    pub(crate) seg: usize,
    pub dir: EndDir,
}

/// A diagram fragment with an ordered list of open endpoints.
///
/// The endpoint list is read as the top boundary, left to right, when the
/// braid-style operations ([`Tangle::cross`], [`Tangle::cap`]) are used.
#[derive(Clone, Debug, Default)]
pub struct Tangle {
    pub(crate) builder: PlanarBuilder,
    pub(crate) ends: Vec<Endpoint>,
}

impl Tangle {
    pub fn new() -> Self {
        Self::default()
    }

    /// A single unknotted strand with endpoints `[In, Out]`.
    pub fn arc(tag: Option<u32>) -> Self {
        let mut builder = PlanarBuilder::new();
        let s = builder.segment(tag);
        Self {
            builder,
            ends: vec![Endpoint { seg: s, dir: EndDir::In }, Endpoint { seg: s, dir: EndDir::Out }],
        }
    }

    /// `n` parallel cups: endpoints `[In, Out, In, Out, ...]`.
    pub fn cups(tags: &[Option<u32>]) -> Self {
        tags.iter().fold(Self::new(), |acc, &t| acc.juxtapose(Self::arc(t)))
    }

    pub fn endpoints(&self) -> Vec<EndDir> {
        self.ends.iter().map(|e| e.dir).collect()
    }

    pub fn num_endpoints(&self) -> usize {
        self.ends.len()
    }

    /// Places `other` to the right of `self`.
    pub fn juxtapose(mut self, other: Tangle) -> Tangle {
        let shift = self.builder.parent.len();
        let ob = other.builder;
        self.builder.parent.extend(ob.parent.iter().map(|p| p + shift));
        self.builder.tags.extend(ob.tags);
        self.builder
            .crossings
            .extend(ob.crossings.iter().map(|s| s.map(|x| x + shift)));
        self.builder.hints.extend(ob.hints);
        self.ends
            .extend(other.ends.iter().map(|e| Endpoint { seg: e.seg + shift, dir: e.dir }));
        self
    }

    /// Joins endpoints `i` and `j`, which must have opposite orientations.
    pub fn connect(&mut self, i: usize, j: usize) -> Result<(), LinkError> {
        self.connect_many(&[(i, j)])
    }

    /// Joins several endpoint pairs at once; indices refer to the current list.
    pub fn connect_many(&mut self, pairs: &[(usize, usize)]) -> Result<(), LinkError> {
        let mut used = vec![false; self.ends.len()];
        for &(i, j) in pairs {
            for k in [i, j] {
                if k >= self.ends.len() || used[k] {
                    return Err(LinkError::EndpointIndex(k));
                }
                used[k] = true;
            }
            if i == j {
                return Err(LinkError::EndpointIndex(i));
            }
            if self.ends[i].dir == self.ends[j].dir {
                return Err(LinkError::EndpointOrientation(i, j));
            }
        }
        for &(i, j) in pairs {
            let (a, b) = (self.ends[i].seg, self.ends[j].seg);
            self.builder.join(a, b);
        }
        let mut k = 0;
        self.ends.retain(|_| {
            let keep = !used[k];
            k += 1;
            keep
        });
        Ok(())
    }

    /// Caps adjacent endpoints `i` and `i + 1`.
    pub fn cap(&mut self, i: usize) -> Result<(), LinkError> {
        self.connect(i, i + 1)
    }

    /// Crosses the strands at endpoints `i` and `i + 1`, viewed as strands
    /// rising to the top boundary. With `left_over` the strand coming from the
    /// left passes over.
    pub fn cross(&mut self, i: usize, left_over: bool) {
        let (l, r) = (self.ends[i], self.ends[i + 1]);
        let ne = self.builder.segment(None);
        let nw = self.builder.segment(None);
        if left_over {
            // SE, NE, NW, SW
            self.builder.crossing([r.seg, ne, nw, l.seg]);
        } else {
            // SW, SE, NE, NW
            self.builder.crossing([l.seg, r.seg, ne, nw]);
        }
        self.ends[i] = Endpoint { seg: nw, dir: r.dir };
        self.ends[i + 1] = Endpoint { seg: ne, dir: l.dir };
    }

    /// Closes a tangle with no open endpoints into a diagram.
    pub fn close(mut self, framings: &[i64]) -> Result<FramedLinkDiagram, LinkError> {
        if !self.ends.is_empty() {
            return Err(LinkError::OpenEndpoints(self.ends.len()));
        }
        let n = self.builder.count_components();
        if framings.len() != n {
            return Err(LinkError::FramingCount { framings: framings.len(), components: n });
        }
        Ok(self.builder.finish(framings))
    }

    /// Number of closed components if all endpoints were already joined.
    pub fn count_components(&mut self) -> usize {
        self.builder.count_components()
    }
}

/// Joins two tangles along `pairing` (indices into `t1`'s and `t2`'s endpoint
/// lists). Remaining endpoints keep their order, `t1`'s first.
pub fn connect_sum_strands(
    t1: Tangle,
    t2: Tangle,
    pairing: &[(usize, usize)],
) -> Result<Tangle, LinkError> {
    let offset = t1.ends.len();
    let mut t = t1.juxtapose(t2);
    let pairs: Vec<(usize, usize)> = pairing.iter().map(|&(i, j)| (i, j + offset)).collect();
    t.connect_many(&pairs)?;
    Ok(t)
}

/// Braid crossing on strands rising through positions `i`, `i + 1`.
///
/// `positive` is the generator `σ_i` (left strand over). `ends` holds the
/// current top segment of each strand position and is updated in place.
pub(crate) fn braid_crossing(b: &mut PlanarBuilder, ends: &mut [usize], i: usize, positive: bool) {
    let (l, r) = (ends[i], ends[i + 1]);
    let ne = b.segment(None);
    let nw = b.segment(None);
    if positive {
        let c = b.crossing([r, ne, nw, l]);
        b.set_hints(c, [Some(true), Some(false), Some(false), Some(true)]);
    } else {
        let c = b.crossing([l, r, ne, nw]);
        b.set_hints(c, [Some(true), Some(true), Some(false), Some(false)]);
    }
    ends[i] = nw;
    ends[i + 1] = ne;
}

/// Closure of a braid word on `strands` strands. Generator `k` (1-based) is
/// `σ_k`, `-k` its inverse. Component framings are all 0.
pub fn braid_closure(strands: usize, word: &[i32]) -> FramedLinkDiagram {
    let mut b = PlanarBuilder::new();
    let bottom: Vec<usize> = (0..strands).map(|k| b.segment(Some(k as u32))).collect();
    let mut ends = bottom.clone();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        assert!(i + 1 < strands, "generator {g} out of range");
        braid_crossing(&mut b, &mut ends, i, g > 0);
    }
    for k in 0..strands {
        b.join(ends[k], bottom[k]);
    }
    let n = b.count_components();
    b.finish(&vec![0; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_arcs_make_an_unknot() {
        // pair In with Out both ways
        let t = connect_sum_strands(Tangle::arc(None), Tangle::arc(None), &[(0, 1), (1, 0)])
            .unwrap();
        let l = t.close(&[0]).unwrap();
        assert_eq!(l.num_components(), 1);
        assert_eq!(l.num_crossings(), 0);
    }

    #[test]
    fn mismatched_pairing_is_rejected() {
        let err = connect_sum_strands(Tangle::arc(None), Tangle::arc(None), &[(0, 0)])
            .unwrap_err();
        assert!(matches!(err, LinkError::EndpointOrientation(..)));
        let mut t = Tangle::arc(None);
        assert!(matches!(t.connect(0, 0), Err(LinkError::EndpointIndex(0))));
    }

    #[test]
    fn braid_closures() {
        let t = braid_closure(2, &[1, 1, 1]);
        assert_eq!(t.num_components(), 1);
        assert_eq!(t.writhe(), 3);
        let h = braid_closure(2, &[1, 1]);
        assert_eq!(h.num_components(), 2);
        assert_eq!(h.linking_matrix()[0][1], 1);
        let b = braid_closure(3, &[1, -2, 1, -2, 1, -2]);
        assert_eq!(b.num_components(), 3);
        assert!(b.is_algebraically_split());
    }

    #[test]
    fn orientation_hints_are_respected() {
        let t = braid_closure(3, &[1, 1, 1, 2]);
        let (b, _) = t.to_builder();
        let again = b.finish(t.framings());
        assert_eq!(again.writhe(), t.writhe());
        assert_eq!(again.canonical_key(), t.canonical_key());
    }
}
