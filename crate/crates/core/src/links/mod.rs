//! Framed oriented link diagrams in planar-diagram (PD) form.
//!
//! A crossing lists its four arcs counterclockwise, starting from the incoming
//! under-strand, so slots 0 → 2 are the under-strand. The over-strand runs
//! 3 → 1 on a positive crossing and 1 → 3 on a negative one.
//!
//! Diagrams are immutable once validated. Everything that builds new diagrams
//! (sublinks, cables, tangle gluing, crossing changes) goes through
//! [`builder::PlanarBuilder`], which re-derives arc labels, orientation and
//! crossing signs from the planar combinatorics.

pub mod builder;
pub mod cable;
pub mod catalog;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Rational;
use builder::PlanarBuilder;

pub use builder::{EndDir, Tangle};
pub use cable::cable;

pub type ArcId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub slots: [ArcId; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn new(slots: [ArcId; 4], sign: i8) -> Self {
        Self { slots, sign }
    }

    /// Slot where the over-strand enters.
    pub fn over_in(&self) -> usize {
        if self.sign > 0 {
            3
        } else {
            1
        }
    }

    pub fn over_out(&self) -> usize {
        if self.sign > 0 {
            1
        } else {
            3
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in()
    }

    /// Slot on the other side of the strand through `slot`.
    pub fn across(slot: usize) -> usize {
        (slot + 2) % 4
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("arc {arc} is used {count} times across crossing slots (expected 2)")]
    ArcMultiplicity { arc: ArcId, count: usize },
    #[error("arc {arc} enters {incoming} and leaves {outgoing} crossings")]
    ArcDirection { arc: ArcId, incoming: usize, outgoing: usize },
    #[error("arc {arc} appears in crossings but in no component")]
    UnassignedArc { arc: ArcId },
    #[error("arc {arc} is listed in more than one component position")]
    RepeatedComponentArc { arc: ArcId },
    #[error("component {component} lists an arc that no crossing uses, but has other arcs")]
    DanglingArc { component: usize },
    #[error("component {component} has no arcs")]
    EmptyComponent { component: usize },
    #[error("orientation of component {component} disagrees with crossing {crossing}")]
    Orientation { component: usize, crossing: usize },
    #[error("crossing {crossing} has sign {sign}, expected +1 or -1")]
    BadSign { crossing: usize, sign: i8 },
    #[error("{framings} framings given for {components} components")]
    FramingCount { framings: usize, components: usize },
    #[error("cannot determine the sign of crossing {crossing} from the component order")]
    AmbiguousSign { crossing: usize },
    #[error("tangle endpoints {0} and {1} have the same orientation")]
    EndpointOrientation(usize, usize),
    #[error("tangle endpoint {0} is out of range or used twice")]
    EndpointIndex(usize),
    #[error("tangle still has {0} open endpoints")]
    OpenEndpoints(usize),
    #[error("multi-index has length {got}, link has {expected} components")]
    IndexLength { got: usize, expected: usize },
}

/// Checks arc incidence and orientation consistency of raw PD data.
pub fn validate(
    crossings: &[Crossing],
    components: &[Vec<ArcId>],
    framings: &[i64],
) -> Result<(), LinkError> {
    if framings.len() != components.len() {
        return Err(LinkError::FramingCount {
            framings: framings.len(),
            components: components.len(),
        });
    }
    let mut uses: BTreeMap<ArcId, (usize, usize)> = BTreeMap::new();
    for (ci, x) in crossings.iter().enumerate() {
        if x.sign != 1 && x.sign != -1 {
            return Err(LinkError::BadSign { crossing: ci, sign: x.sign });
        }
        for (slot, &a) in x.slots.iter().enumerate() {
            let e = uses.entry(a).or_default();
            if x.is_incoming(slot) {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
    }
    for (&arc, &(i, o)) in &uses {
        if i + o != 2 {
            return Err(LinkError::ArcMultiplicity { arc, count: i + o });
        }
        if i != 1 {
            return Err(LinkError::ArcDirection { arc, incoming: i, outgoing: o });
        }
    }
    let mut owner: HashMap<ArcId, usize> = HashMap::new();
    for (k, comp) in components.iter().enumerate() {
        if comp.is_empty() {
            return Err(LinkError::EmptyComponent { component: k });
        }
        for &a in comp {
            if owner.insert(a, k).is_some() {
                return Err(LinkError::RepeatedComponentArc { arc: a });
            }
            if !uses.contains_key(&a) && comp.len() > 1 {
                return Err(LinkError::DanglingArc { component: k });
            }
        }
    }
    for &arc in uses.keys() {
        if !owner.contains_key(&arc) {
            return Err(LinkError::UnassignedArc { arc });
        }
    }
    // successor of each arc along its component
    let mut succ: HashMap<ArcId, ArcId> = HashMap::new();
    for comp in components {
        for (i, &a) in comp.iter().enumerate() {
            succ.insert(a, comp[(i + 1) % comp.len()]);
        }
    }
    for (ci, x) in crossings.iter().enumerate() {
        let s = &x.slots;
        let comp_of = |a: ArcId| owner[&a];
        if succ[&s[0]] != s[2] {
            return Err(LinkError::Orientation { component: comp_of(s[0]), crossing: ci });
        }
        let (i, o) = (x.over_in(), x.over_out());
        if succ[&s[i]] != s[o] {
            return Err(LinkError::Orientation { component: comp_of(s[i]), crossing: ci });
        }
    }
    Ok(())
}

/// Derives the sign of a 4-slot crossing from the component arc order.
fn infer_sign(slots: [ArcId; 4], succ: &HashMap<ArcId, ArcId>, index: usize) -> Result<i8, LinkError> {
    let forward = succ.get(&slots[3]) == Some(&slots[1]);
    let backward = succ.get(&slots[1]) == Some(&slots[3]);
    match (forward, backward) {
        (true, false) => Ok(1),
        (false, true) => Ok(-1),
        _ => Err(LinkError::AmbiguousSign { crossing: index }),
    }
}

/// A framed, oriented link diagram. `μ = 0` (the empty link) is allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FramedLinkDiagram {
    crossings: Vec<Crossing>,
    components: Vec<Vec<ArcId>>,
    framings: Vec<i64>,
}

impl fmt::Debug for FramedLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Link(μ={}, c={}, ", self.num_components(), self.crossings.len())?;
        write!(f, "{})", self.canonical_key())
    }
}

impl FramedLinkDiagram {
    pub fn new(
        crossings: Vec<Crossing>,
        components: Vec<Vec<ArcId>>,
        framings: Vec<i64>,
    ) -> Result<Self, LinkError> {
        validate(&crossings, &components, &framings)?;
        Ok(Self { crossings, components, framings })
    }

    /// Accepts crossings given as bare 4-tuples and infers signs from the
    /// component order.
    pub fn from_unsigned(
        pd: &[[ArcId; 4]],
        components: Vec<Vec<ArcId>>,
        framings: Vec<i64>,
    ) -> Result<Self, LinkError> {
        let mut succ = HashMap::new();
        for comp in &components {
            for (i, &a) in comp.iter().enumerate() {
                succ.insert(a, comp[(i + 1) % comp.len()]);
            }
        }
        let crossings = pd
            .iter()
            .enumerate()
            .map(|(i, s)| infer_sign(*s, &succ, i).map(|sign| Crossing::new(*s, sign)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(crossings, components, framings)
    }

    pub(crate) fn from_parts_unchecked(
        crossings: Vec<Crossing>,
        components: Vec<Vec<ArcId>>,
        framings: Vec<i64>,
    ) -> Self {
        debug_assert_eq!(validate(&crossings, &components, &framings), Ok(()));
        Self { crossings, components, framings }
    }

    pub fn empty() -> Self {
        Self { crossings: vec![], components: vec![], framings: vec![] }
    }

    /// Crossingless unknot with the given framing.
    pub fn unknot(framing: i64) -> Self {
        Self { crossings: vec![], components: vec![vec![1]], framings: vec![framing] }
    }

    /// `n` crossingless unknotted circles, all framed 0.
    pub fn unlink(n: usize) -> Self {
        Self {
            crossings: vec![],
            components: (1..=n as ArcId).map(|a| vec![a]).collect(),
            framings: vec![0; n],
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<ArcId>] {
        &self.components
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn with_framings(&self, framings: Vec<i64>) -> Result<Self, LinkError> {
        if framings.len() != self.components.len() {
            return Err(LinkError::FramingCount {
                framings: framings.len(),
                components: self.components.len(),
            });
        }
        Ok(Self { framings, ..self.clone() })
    }

    /// Same diagram with every framing set to `f`.
    pub fn with_uniform_framing(&self, f: i64) -> Self {
        Self { framings: vec![f; self.components.len()], ..self.clone() }
    }

    /// Map arc → component index.
    pub fn arc_owner(&self) -> HashMap<ArcId, usize> {
        let mut owner = HashMap::new();
        for (k, comp) in self.components.iter().enumerate() {
            for &a in comp {
                owner.insert(a, k);
            }
        }
        owner
    }

    /// Component of the under- and over-strand of each crossing.
    pub fn strand_components(&self) -> Vec<(usize, usize)> {
        let owner = self.arc_owner();
        self.crossings
            .iter()
            .map(|x| (owner[&x.slots[0]], owner[&x.slots[1]]))
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign as i64).sum()
    }

    /// Writhe restricted to crossings of component `p` with itself.
    pub fn self_writhe(&self, p: usize) -> i64 {
        self.crossings
            .iter()
            .zip(self.strand_components())
            .filter(|(_, (u, o))| *u == p && *o == p)
            .map(|(x, _)| x.sign as i64)
            .sum()
    }

    /// Symmetric matrix with framings on the diagonal and linking numbers off it.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let mu = self.num_components();
        let mut twice = vec![vec![0i64; mu]; mu];
        for (x, (u, o)) in self.crossings.iter().zip(self.strand_components()) {
            if u != o {
                twice[u][o] += x.sign as i64;
                twice[o][u] += x.sign as i64;
            }
        }
        let mut m = vec![vec![0i64; mu]; mu];
        for p in 0..mu {
            for r in 0..mu {
                m[p][r] = if p == r { self.framings[p] } else { twice[p][r] / 2 };
            }
        }
        m
    }

    pub fn is_algebraically_split(&self) -> bool {
        let m = self.linking_matrix();
        (0..m.len()).all(|p| (0..m.len()).all(|r| p == r || m[p][r] == 0))
    }

    /// Keeps the components whose flag is set, in order.
    pub fn sublink(&self, keep: &[bool]) -> Self {
        assert_eq!(keep.len(), self.num_components(), "sublink mask length");
        let owner = self.arc_owner();
        let mut b = PlanarBuilder::new();
        let mut seg: HashMap<ArcId, usize> = HashMap::new();
        let mut framings = Vec::new();
        let mut tag = 0u32;
        for (k, comp) in self.components.iter().enumerate() {
            if !keep[k] {
                continue;
            }
            framings.push(self.framings[k]);
            for &a in comp {
                seg.insert(a, b.segment(Some(tag)));
            }
            tag += 1;
        }
        for x in &self.crossings {
            let under = keep[owner[&x.slots[0]]];
            let over = keep[owner[&x.slots[1]]];
            let s = |slot: usize| seg[&x.slots[slot]];
            match (under, over) {
                (true, true) => {
                    b.crossing_oriented([s(0), s(1), s(2), s(3)], x.over_in());
                }
                (true, false) => b.join(s(0), s(2)),
                (false, true) => b.join(s(1), s(3)),
                (false, false) => {}
            }
        }
        b.finish(&framings)
    }

    /// Sublink with the given component indices.
    pub fn sublink_indices(&self, keep: &[usize]) -> Self {
        let mut mask = vec![false; self.num_components()];
        for &k in keep {
            mask[k] = true;
        }
        self.sublink(&mask)
    }

    /// Relabeled juxtaposition; components of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.max_arc();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| {
            Crossing::new(x.slots.map(|a| a + shift), x.sign)
        }));
        let mut components = self.components.clone();
        components.extend(
            other.components.iter().map(|c| c.iter().map(|a| a + shift).collect()),
        );
        let mut framings = self.framings.clone();
        framings.extend_from_slice(&other.framings);
        Self::from_parts_unchecked(crossings, components, framings)
    }

    fn max_arc(&self) -> ArcId {
        self.components.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        let crossings = self.crossings.iter().map(switch_crossing).collect();
        Self::from_parts_unchecked(crossings, self.components.clone(), self.framings.clone())
    }

    /// Diagram with crossing `i` switched.
    pub fn switch_crossing(&self, i: usize) -> Self {
        let mut crossings = self.crossings.clone();
        crossings[i] = switch_crossing(&crossings[i]);
        Self::from_parts_unchecked(crossings, self.components.clone(), self.framings.clone())
    }

    /// Oriented smoothing of crossing `i`. Framings of merged components are
    /// dropped to 0 since they carry no meaning after a smoothing.
    pub fn smooth_crossing(&self, i: usize) -> Self {
        let mut b = PlanarBuilder::new();
        let seg: HashMap<ArcId, usize> = self
            .components
            .iter()
            .enumerate()
            .flat_map(|(k, c)| c.iter().map(move |&a| (a, k)))
            .collect::<Vec<_>>()
            .into_iter()
            .map(|(a, k)| (a, b.segment(Some(k as u32))))
            .collect();
        for (ci, x) in self.crossings.iter().enumerate() {
            let s = |slot: usize| seg[&x.slots[slot]];
            if ci == i {
                if x.sign > 0 {
                    b.join(s(0), s(1));
                    b.join(s(3), s(2));
                } else {
                    b.join(s(0), s(3));
                    b.join(s(1), s(2));
                }
            } else {
                b.crossing_oriented([s(0), s(1), s(2), s(3)], x.over_in());
            }
        }
        let n = b.count_components();
        b.finish(&vec![0; n])
    }

    /// The positive/negative versions of crossing `i` and its oriented smoothing.
    pub fn skein_triple(&self, i: usize) -> (Self, Self, Self) {
        let here = self.clone();
        let other = self.switch_crossing(i);
        let zero = self.smooth_crossing(i);
        if self.crossings[i].sign > 0 {
            (here, other, zero)
        } else {
            (other, here, zero)
        }
    }

    /// Deterministic key for a diagram up to arc relabeling and crossing order.
    ///
    /// Not an isotopy invariant; equal keys imply identical diagrams. Framings
    /// are excluded.
    pub fn canonical_key(&self) -> String {
        let mut relabel: HashMap<ArcId, ArcId> = HashMap::new();
        for comp in &self.components {
            for &a in comp {
                let n = relabel.len() as ArcId + 1;
                relabel.insert(a, n);
            }
        }
        let mut xs: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|x| Crossing::new(x.slots.map(|a| relabel[&a]), x.sign))
            .collect();
        xs.sort();
        let comps: Vec<usize> = self.components.iter().map(Vec::len).collect();
        let mut out = format!("{:?}|", comps);
        for x in xs {
            out.push_str(&format!(
                "{},{},{},{}{};",
                x.slots[0],
                x.slots[1],
                x.slots[2],
                x.slots[3],
                if x.sign > 0 { '+' } else { '-' }
            ));
        }
        out
    }

    /// Reorders components: new component `k` is old component `order[k]`.
    pub fn permute_components(&self, order: &[usize]) -> Self {
        let components = order.iter().map(|&k| self.components[k].clone()).collect();
        let framings = order.iter().map(|&k| self.framings[k]).collect();
        Self::from_parts_unchecked(self.crossings.clone(), components, framings)
    }

    #[cfg(test)]
    pub(crate) fn to_builder(&self) -> (PlanarBuilder, HashMap<ArcId, usize>) {
        let mut b = PlanarBuilder::new();
        let mut seg = HashMap::new();
        for (k, comp) in self.components.iter().enumerate() {
            for &a in comp {
                seg.insert(a, b.segment(Some(k as u32)));
            }
        }
        for x in &self.crossings {
            let s = x.slots.map(|a| seg[&a]);
            b.crossing_oriented(s, x.over_in());
        }
        (b, seg)
    }
}

fn switch_crossing(x: &Crossing) -> Crossing {
    let [a, b, c, d] = x.slots;
    if x.sign > 0 {
        Crossing::new([d, a, b, c], -1)
    } else {
        Crossing::new([b, c, d, a], 1)
    }
}

/// Formal rational combination of diagrams.
#[derive(Clone, Debug, Default)]
pub struct LinkCombination {
    terms: Vec<(Rational, FramedLinkDiagram)>,
}

impl LinkCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Rational, FramedLinkDiagram)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (c, l) in iter {
            out.push(c, l);
        }
        out
    }

    /// Adds `c · l`, merging with an identical diagram already present.
    pub fn push(&mut self, c: Rational, l: FramedLinkDiagram) {
        if c.is_zero() {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|(_, m)| m == &l) {
            self.terms[pos].0 += c;
            if self.terms[pos].0.is_zero() {
                self.terms.remove(pos);
            }
        } else {
            self.terms.push((c, l));
        }
    }

    pub fn terms(&self) -> &[(Rational, FramedLinkDiagram)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_coefficient(&self) -> Rational {
        self.terms.iter().map(|(c, _)| c.clone()).sum()
    }

    /// Applies a linear invariant termwise.
    /// Linear extension of δ: each term is replaced by its signed sublinks
    /// `Σ (-1)^{#L'} L'`.
    pub fn delta(&self) -> LinkCombination {
        let mut out = LinkCombination::new();
        for (c, l) in &self.terms {
            for (s, sub) in sublink_sum(l, SignRule::Delta).terms {
                out.push(c * s, sub);
            }
        }
        out
    }

    pub fn evaluate<T, F>(&self, mut f: F) -> Vec<(Rational, T)>
    where
        F: FnMut(&FramedLinkDiagram) -> T,
    {
        self.terms.iter().map(|(c, l)| (c.clone(), f(l))).collect()
    }

    fn sorted_keys(&self) -> Vec<(String, Vec<i64>, Rational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(c, l)| (l.canonical_key(), l.framings.clone(), c.clone()))
            .collect();
        v.sort();
        v
    }
}

impl PartialEq for LinkCombination {
    fn eq(&self, other: &Self) -> bool {
        self.sorted_keys() == other.sorted_keys()
    }
}

/// Sign convention for [`sublink_sum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    /// `(-1)^{#L'}`, the filtration operator δ.
    Delta,
    /// `(-1)^{#L - #L'}`, the alternating sum defining Φ.
    Complement,
}

/// All `2^μ` sublinks with alternating coefficients.
pub fn sublink_sum(l: &FramedLinkDiagram, rule: SignRule) -> LinkCombination {
    let mu = l.num_components();
    let mut terms = Vec::with_capacity(1 << mu);
    for mask in 0u64..(1u64 << mu) {
        let keep: Vec<bool> = (0..mu).map(|k| mask >> k & 1 == 1).collect();
        let size = keep.iter().filter(|&&b| b).count();
        let exp = match rule {
            SignRule::Delta => size,
            SignRule::Complement => mu - size,
        };
        let c = if exp % 2 == 0 { Rational::one() } else { -Rational::one() };
        terms.push((c, l.sublink(&keep)));
    }
    LinkCombination { terms }
}

/// Subsets of `0..mu` as boolean masks, in binary counting order.
pub fn subsets(mu: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..(1u64 << mu)).map(move |m| (0..mu).map(|k| m >> k & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::catalog::builtin;
    use super::*;

    #[test]
    fn validate_accepts_trivial_links() {
        assert!(validate(&[], &[vec![1]], &[0]).is_ok());
        assert!(validate(&[], &[], &[]).is_ok());
    }

    #[test]
    fn validate_rejects_triple_arc() {
        let pd = vec![
            Crossing::new([1, 1, 2, 2], 1),
            Crossing::new([1, 3, 3, 2], 1),
        ];
        let err = validate(&pd, &[vec![1, 2, 3]], &[0]).unwrap_err();
        assert!(matches!(err, LinkError::ArcMultiplicity { arc: 1, count: 3 }), "{err:?}");
    }

    #[test]
    fn validate_rejects_wrong_order() {
        let l = builtin("trefoil");
        let mut comps = l.components().to_vec();
        comps[0].reverse();
        assert!(matches!(
            validate(l.crossings(), &comps, l.framings()),
            Err(LinkError::Orientation { .. })
        ));
    }

    #[test]
    fn validate_rejects_framing_mismatch() {
        assert!(matches!(
            validate(&[], &[vec![1]], &[]),
            Err(LinkError::FramingCount { .. })
        ));
    }

    #[test]
    fn knot_atlas_trefoil_imports() {
        // Knot Atlas 3_1: X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]
        let l = FramedLinkDiagram::from_unsigned(
            &[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]],
            vec![vec![1, 2, 3, 4, 5, 6]],
            vec![0],
        )
        .unwrap();
        assert_eq!(l.writhe(), -3);
    }

    #[test]
    fn linking_matrices() {
        let u = FramedLinkDiagram::unlink(2).with_framings(vec![1, -1]).unwrap();
        assert_eq!(u.linking_matrix(), vec![vec![1, 0], vec![0, -1]]);

        let hopf = builtin("hopf");
        let m = hopf.linking_matrix();
        assert_eq!(m[0][1], 1);
        assert_eq!(m[1][0], 1);
        assert!(!hopf.is_algebraically_split());

        let b = builtin("borromean");
        let m = b.linking_matrix();
        for p in 0..3 {
            for r in 0..3 {
                if p != r {
                    assert_eq!(m[p][r], 0);
                }
            }
        }
        assert!(b.is_algebraically_split());
        assert!(builtin("trefoil").is_algebraically_split());
    }

    #[test]
    fn sublink_edge_cases() {
        let b = builtin("borromean");
        let all = b.sublink(&[true, true, true]);
        assert_eq!(all.canonical_key(), b.canonical_key());
        assert!(b.sublink(&[false, false, false]).is_empty());
        let two = b.sublink(&[true, false, true]);
        assert_eq!(two.num_components(), 2);
        assert_eq!(two.linking_matrix()[0][1], 0);
    }

    #[test]
    fn disjoint_union_cases() {
        let k = builtin("trefoil");
        let e = FramedLinkDiagram::empty();
        assert_eq!(k.disjoint_union(&e), k);
        let u2 = FramedLinkDiagram::unknot(0).disjoint_union(&FramedLinkDiagram::unknot(0));
        assert_eq!(u2, FramedLinkDiagram::unlink(2));
        let bu = builtin("borromean").disjoint_union(&FramedLinkDiagram::unknot(0));
        assert_eq!(bu.num_components(), 4);
        assert!(bu.is_algebraically_split());
    }

    #[test]
    fn sublink_sum_counts() {
        let s = sublink_sum(&FramedLinkDiagram::unknot(1), SignRule::Delta);
        assert_eq!(s.len(), 2);
        let expected = LinkCombination::from_terms([
            (-Rational::one(), FramedLinkDiagram::unknot(1)),
            (Rational::one(), FramedLinkDiagram::empty()),
        ]);
        assert_eq!(s, expected);

        let e = sublink_sum(&FramedLinkDiagram::empty(), SignRule::Delta);
        assert_eq!(e.len(), 1);
        assert_eq!(e.terms()[0].0, Rational::one());

        let b = builtin("borromean");
        let s = sublink_sum(&b, SignRule::Delta);
        assert_eq!(s.len(), 8);
        for (c, l) in s.terms() {
            let expect = if l.num_components() % 2 == 0 { 1 } else { -1 };
            assert_eq!(*c, Rational::from_integer(expect.into()));
        }
        assert!(s.total_coefficient().is_zero());
    }

    #[test]
    fn linking_matrix_symmetric_under_relabel() {
        for name in catalog::builtin_names() {
            let l = builtin(name);
            let m = l.linking_matrix();
            let mu = m.len();
            for p in 0..mu {
                for r in 0..mu {
                    assert_eq!(m[p][r], m[r][p], "{name}");
                }
            }
            // reversing component order conjugates the matrix
            let rev: Vec<usize> = (0..mu).rev().collect();
            let perm = l.permute_components(&rev);
            let pm = perm.linking_matrix();
            for p in 0..mu {
                for r in 0..mu {
                    assert_eq!(pm[p][r], m[rev[p]][rev[r]], "{name}");
                }
            }
        }
    }

    #[test]
    fn switch_and_smooth() {
        let t = builtin("trefoil");
        assert_eq!(t.switch_crossing(0).writhe(), 1);
        assert_eq!(t.mirror().writhe(), -3);
        let s = t.smooth_crossing(0);
        assert_eq!(s.num_components(), 2);
        assert_eq!(s.num_crossings(), 2);
    }
}

