//! Kauffman bracket state sums.
//!
//! The fast path sweeps crossings in a frontier order and keeps, for every
//! partial smoothing, only the pairing it induces on the arcs that are cut by
//! the frontier. The naive path enumerates all `2^c` smoothings and serves as
//! an oracle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};

use crate::links::{ArcId, FramedLinkDiagram};

/// Integer coefficient type for bracket polynomials.
pub trait Coef:
    Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul + PartialEq + std::fmt::Debug
{
    fn to_bigint(&self) -> BigInt;
}

impl Coef for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Laurent polynomial in `A`: `c[k]` is the coefficient of `A^{lo + k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct APoly<T> {
    pub lo: i64,
    pub c: Vec<T>,
}

impl<T: Coef> APoly<T> {
    pub fn zero() -> Self {
        Self { lo: 0, c: vec![] }
    }

    pub fn monomial(e: i64) -> Self {
        Self { lo: e, c: vec![T::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> Vec<(i64, BigInt)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (self.lo + k as i64, v.to_bigint()))
            .collect()
    }

    fn trim(mut self) -> Self {
        while self.c.last().is_some_and(Zero::is_zero) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|v| v.is_zero()).count();
        if lead == self.c.len() {
            return Self::zero();
        }
        self.c.drain(..lead);
        self.lo += lead as i64;
        self
    }

    pub fn shift(mut self, k: i64) -> Self {
        self.lo += k;
        self
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.c.is_empty() {
            return Some(other.clone());
        }
        if other.c.is_empty() {
            return Some(self.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.c.len() as i64).max(other.lo + other.c.len() as i64);
        let mut c = vec![T::zero(); (hi - lo) as usize];
        for (k, v) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + k] = v.clone();
        }
        for (k, v) in other.c.iter().enumerate() {
            let i = (other.lo - lo) as usize + k;
            c[i] = c[i].checked_add(v)?;
        }
        Some(Self { lo, c }.trim())
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        if self.c.is_empty() || other.c.is_empty() {
            return Some(Self::zero());
        }
        let mut c = vec![T::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = c[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Some(Self { lo: self.lo + other.lo, c }.trim())
    }

    /// Multiplication by the loop value `d = -A^2 - A^{-2}`.
    pub fn checked_mul_d(&self) -> Option<Self> {
        if self.c.is_empty() {
            return Some(Self::zero());
        }
        let mut c = vec![T::zero(); self.c.len() + 4];
        for (k, v) in self.c.iter().enumerate() {
            c[k] = c[k].checked_sub(v)?;
            c[k + 4] = c[k + 4].checked_sub(v)?;
        }
        Some(Self { lo: self.lo - 2, c }.trim())
    }

    /// Exact division by `d`; `None` if not divisible or on overflow.
    pub fn checked_div_d(&self) -> Option<Self> {
        if self.c.is_empty() {
            return Some(Self::zero());
        }
        // d = -A^{-2} (1 + A^4)
        let n = self.c.len();
        if n < 5 {
            return None;
        }
        let mut b = vec![T::zero(); n - 4];
        for k in 0..n - 4 {
            let mut v = self.c[k].clone();
            if k >= 4 {
                v = v.checked_sub(&b[k - 4])?;
            }
            b[k] = v;
        }
        for k in n - 4..n {
            let carry = if k >= 4 { b[k - 4].clone() } else { T::zero() };
            if self.c[k] != carry {
                return None;
            }
        }
        let neg: Vec<T> = b.into_iter().map(|v| T::zero().checked_sub(&v)).collect::<Option<_>>()?;
        Some(Self { lo: self.lo + 2, c: neg }.trim())
    }
}

type State = Vec<(ArcId, ArcId)>;

fn partner(state: &State, x: ArcId) -> Option<ArcId> {
    state.iter().find_map(|&(a, b)| {
        if a == x {
            Some(b)
        } else if b == x {
            Some(a)
        } else {
            None
        }
    })
}

fn remove(state: &mut State, x: ArcId) {
    state.retain(|&(a, b)| a != x && b != x);
}

fn push(state: &mut State, x: ArcId, y: ArcId) {
    state.push(if x < y { (x, y) } else { (y, x) });
}

/// Joins arc ends `x` and `y` at the current crossing. Returns true when a
/// closed loop is completed.
fn join(state: &mut State, x: ArcId, y: ArcId) -> bool {
    if x == y {
        return true;
    }
    let p = partner(state, x);
    if p == Some(y) {
        remove(state, x);
        return true;
    }
    let r = partner(state, y);
    remove(state, x);
    remove(state, y);
    match (p, r) {
        (None, None) => push(state, x, y),
        (Some(p), None) => push(state, p, y),
        (None, Some(r)) => push(state, x, r),
        (Some(p), Some(r)) => push(state, p, r),
    }
    false
}

/// Crossing order that keeps the frontier small: start anywhere, then always
/// take the crossing sharing the most arcs with those already processed.
pub fn frontier_order(l: &FramedLinkDiagram) -> Vec<usize> {
    let xs = l.crossings();
    let mut done = vec![false; xs.len()];
    let mut touched: HashMap<ArcId, usize> = HashMap::new();
    let mut order = Vec::with_capacity(xs.len());
    for _ in 0..xs.len() {
        let best = (0..xs.len())
            .filter(|&i| !done[i])
            .max_by_key(|&i| {
                let shared = xs[i].slots.iter().filter(|a| touched.contains_key(a)).count();
                (shared, std::cmp::Reverse(i))
            })
            .unwrap();
        done[best] = true;
        order.push(best);
        for a in xs[best].slots {
            *touched.entry(a).or_default() += 1;
        }
    }
    order
}

fn free_loops(l: &FramedLinkDiagram) -> usize {
    let used: std::collections::HashSet<ArcId> =
        l.crossings().iter().flat_map(|x| x.slots).collect();
    l.components().iter().filter(|c| c.iter().all(|a| !used.contains(a))).count()
}

/// Unnormalized bracket `Σ_s A^{a(s)-b(s)} d^{loops(s)}` (no division by `d`).
fn loop_sum_frontier<T: Coef>(l: &FramedLinkDiagram) -> Option<APoly<T>> {
    let mut states: HashMap<State, APoly<T>> = HashMap::new();
    states.insert(vec![], APoly::monomial(0));
    let xs = l.crossings();
    for i in frontier_order(l) {
        let [s0, s1, s2, s3] = xs[i].slots;
        let mut next: HashMap<State, APoly<T>> = HashMap::with_capacity(states.len() * 2);
        for (state, poly) in &states {
            for (pairs, e) in [([(s0, s1), (s2, s3)], 1i64), ([(s0, s3), (s1, s2)], -1)] {
                let mut st = state.clone();
                let mut p = poly.clone().shift(e);
                for (x, y) in pairs {
                    if join(&mut st, x, y) {
                        p = p.checked_mul_d()?;
                    }
                }
                st.sort_unstable();
                let slot = next.entry(st).or_insert_with(APoly::zero);
                *slot = slot.checked_add(&p)?;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let mut total = states.remove(&vec![]).unwrap_or_else(APoly::zero);
    debug_assert!(states.is_empty(), "frontier not closed");
    for _ in 0..free_loops(l) {
        total = total.checked_mul_d()?;
    }
    Some(total)
}

fn loop_sum_naive<T: Coef>(l: &FramedLinkDiagram) -> Option<APoly<T>> {
    let xs = l.crossings();
    let arcs: Vec<ArcId> = l.components().iter().flatten().copied().collect();
    let index: HashMap<ArcId, usize> = arcs.iter().enumerate().map(|(k, &a)| (a, k)).collect();
    let mut total = APoly::zero();
    for mask in 0u64..(1u64 << xs.len()) {
        let mut parent: Vec<usize> = (0..arcs.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut e = 0i64;
        for (i, x) in xs.iter().enumerate() {
            let [s0, s1, s2, s3] = x.slots;
            let pairs = if mask >> i & 1 == 0 {
                e += 1;
                [(s0, s1), (s2, s3)]
            } else {
                e -= 1;
                [(s0, s3), (s1, s2)]
            };
            for (a, b) in pairs {
                let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
                parent[ra] = rb;
            }
        }
        let loops = (0..arcs.len()).filter(|&k| find(&mut parent, k) == k).count();
        let mut p = APoly::<T>::monomial(e);
        for _ in 0..loops {
            p = p.checked_mul_d()?;
        }
        total = total.checked_add(&p)?;
    }
    Some(total)
}

/// Kauffman bracket `<L>` with `<O> = 1`, computed by the frontier sweep.
/// Falls back to arbitrary precision if `i128` overflows. Panics on the
/// empty diagram.
pub fn kauffman_bracket(l: &FramedLinkDiagram) -> APoly<BigInt> {
    assert!(!l.is_empty(), "bracket of the empty diagram");
    if let Some(p) = loop_sum_frontier::<i128>(l).and_then(|p| p.checked_div_d()) {
        return APoly { lo: p.lo, c: p.c.iter().map(Coef::to_bigint).collect() };
    }
    loop_sum_frontier::<BigInt>(l)
        .and_then(|p| p.checked_div_d())
        .expect("bracket divisible by the loop value")
}

/// Same as [`kauffman_bracket`] by enumerating all smoothings.
pub fn kauffman_bracket_naive(l: &FramedLinkDiagram) -> APoly<BigInt> {
    assert!(!l.is_empty(), "bracket of the empty diagram");
    assert!(l.num_crossings() <= 24, "naive bracket limited to 24 crossings");
    loop_sum_naive::<BigInt>(l)
        .and_then(|p| p.checked_div_d())
        .expect("bracket divisible by the loop value")
}

/// Writhe-normalized bracket `(-A^3)^{-w} <L>`.
pub fn normalized_bracket(b: &APoly<BigInt>, writhe: i64) -> APoly<BigInt> {
    let sign = if writhe.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
    APoly { lo: b.lo - 3 * writhe, c: b.c.iter().map(|v| v * &sign).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::catalog::{builtin, builtin_names};
    use crate::links::cable;

    fn poly(terms: &[(i64, i64)]) -> APoly<BigInt> {
        let mut p = APoly::zero();
        for &(e, c) in terms {
            let mut m = APoly::<BigInt>::monomial(e);
            m.c[0] = BigInt::from(c);
            p = p.checked_add(&m).unwrap();
        }
        p
    }

    #[test]
    fn loop_value_division_round_trips() {
        let p = poly(&[(-3, 2), (1, -5), (4, 7)]);
        let pd = p.checked_mul_d().unwrap();
        assert_eq!(pd.checked_div_d().unwrap(), p);
        assert!(p.checked_div_d().is_none());
    }

    #[test]
    fn unknot_and_unlink() {
        let u = FramedLinkDiagram::unknot(0);
        assert_eq!(kauffman_bracket(&u), poly(&[(0, 1)]));
        let u2 = FramedLinkDiagram::unlink(2);
        assert_eq!(kauffman_bracket(&u2), poly(&[(-2, -1), (2, -1)]));
    }

    #[test]
    fn kinks_contribute_writhe_factor() {
        // positive kink: <L> = -A^3
        let k = builtin("unknot-kink");
        assert_eq!(kauffman_bracket(&k), poly(&[(3, -1)]));
        let n = builtin("unknot-kink-neg");
        assert_eq!(kauffman_bracket(&n), poly(&[(-3, -1)]));
    }

    #[test]
    fn frontier_matches_naive() {
        for name in builtin_names().filter(|&n| n != "empty") {
            let l = builtin(name);
            assert_eq!(kauffman_bracket(&l), kauffman_bracket_naive(&l), "{name}");
        }
        let b = builtin("borromean");
        for j in [[2, 1, 1], [1, 2, 0], [2, 2, 1]] {
            let c = cable(&b, &j).unwrap();
            assert_eq!(kauffman_bracket(&c), kauffman_bracket_naive(&c), "{j:?}");
        }
        let t = cable(&builtin("trefoil"), &[2]).unwrap();
        assert_eq!(kauffman_bracket(&t), kauffman_bracket_naive(&t));
    }

    #[test]
    fn bigint_fallback_agrees() {
        let l = cable(&builtin("figure-eight"), &[2]).unwrap();
        let small = loop_sum_frontier::<i128>(&l).unwrap();
        let big = loop_sum_frontier::<BigInt>(&l).unwrap();
        assert_eq!(small.terms(), big.terms());
    }
}
