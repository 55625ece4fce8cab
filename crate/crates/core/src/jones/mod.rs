//! Jones polynomial in `q = e^{h/2}` and the quantities derived from it.
//!
//! Normalization: `V(O) = 1` and
//!
//! ```text
//! q^2 V(L+) - q^{-2} V(L-) = (q - q^{-1}) V(L0)
//! ```
//!
//! `V` is obtained from the writhe-normalized Kauffman bracket by the
//! substitution `A^2 = -q` ([`SUBSTITUTION`]); the test suite checks that this
//! is the only one of `A^2 = ±q^{±1}` satisfying the relation above.
//!
//! `X(L) = [2]^{1-#L} V(L)` is in general not a Laurent polynomial, so `X`
//! and `Φ` are handled as truncated power series in `x = e^h - 1`.

pub mod bracket;

use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{
    expand_in_x, factorial, inverse_quantum_two_pow, quantum_int, rat, rational_pow, sign_pow,
    HalfLaurent, Rational, TruncatedSeries,
};
use crate::links::{subsets, FramedLinkDiagram};
pub use bracket::{kauffman_bracket, kauffman_bracket_naive, APoly};

/// `A^2 ↦ sign · q^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub sign: i8,
    pub power: i8,
}

pub const SUBSTITUTION: Substitution = Substitution { sign: -1, power: 1 };

impl Substitution {
    pub fn all() -> [Substitution; 4] {
        [(1, 1), (1, -1), (-1, 1), (-1, -1)].map(|(sign, power)| Substitution { sign, power })
    }

    /// Image of a polynomial in `A` with only even exponents.
    pub fn apply(&self, p: &APoly<BigInt>) -> HalfLaurent {
        HalfLaurent::from_terms(p.terms().into_iter().map(|(e, c)| {
            assert!(e % 2 == 0, "odd power of A in normalized bracket");
            let k = e / 2;
            let c = if self.sign < 0 && k.rem_euclid(2) == 1 { -c } else { c };
            (2 * k * self.power as i64, Rational::from_integer(c))
        }))
    }
}

/// Jones polynomial under an explicit substitution. `None` for the empty link.
pub fn jones_v_with(l: &FramedLinkDiagram, s: Substitution) -> Option<HalfLaurent> {
    if l.is_empty() {
        return None;
    }
    let b = bracket::normalized_bracket(&kauffman_bracket(l), l.writhe());
    Some(s.apply(&b))
}

/// Jones polynomial; `None` for the empty link, whose value `[2]^{-1}` is not
/// a Laurent polynomial.
pub fn jones_v(l: &FramedLinkDiagram) -> Option<HalfLaurent> {
    jones_v_with(l, SUBSTITUTION)
}

/// Residual of the skein relation on a triple; zero iff it holds.
pub fn skein_residual(
    v_plus: &HalfLaurent,
    v_minus: &HalfLaurent,
    v_zero: &HalfLaurent,
) -> HalfLaurent {
    let lhs = &(&HalfLaurent::q_pow(2) * v_plus) - &(&HalfLaurent::q_pow(-2) * v_minus);
    let rhs = &(&HalfLaurent::q_pow(1) - &HalfLaurent::q_pow(-1)) * v_zero;
    &lhs - &rhs
}

/// Memo table of Jones polynomials keyed by framing-free diagram keys.
#[derive(Debug, Default)]
pub struct SkeinCache {
    table: DashMap<String, HalfLaurent>,
}

impl SkeinCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn get_or_compute(&self, l: &FramedLinkDiagram) -> HalfLaurent {
        let key = l.canonical_key();
        if let Some(v) = self.table.get(&key) {
            return v.clone();
        }
        let v = jones_v(l).expect("nonempty link");
        self.table.entry(key).or_insert(v).clone()
    }
}

/// Evaluates `V`, `X`, `Φ`, `Φ_n` and `φ_i`, optionally through a shared cache.
#[derive(Clone, Debug, Default)]
pub struct JonesEvaluator {
    cache: Option<Arc<SkeinCache>>,
}

impl JonesEvaluator {
    pub fn uncached() -> Self {
        Self { cache: None }
    }

    pub fn cached() -> Self {
        Self { cache: Some(Arc::new(SkeinCache::new())) }
    }

    pub fn with_cache(cache: Arc<SkeinCache>) -> Self {
        Self { cache: Some(cache) }
    }

    pub fn cache(&self) -> Option<&Arc<SkeinCache>> {
        self.cache.as_ref()
    }

    pub fn jones_v(&self, l: &FramedLinkDiagram) -> Option<HalfLaurent> {
        if l.is_empty() {
            return None;
        }
        match &self.cache {
            Some(c) => Some(c.get_or_compute(l)),
            None => jones_v(l),
        }
    }

    /// `X(L)` as a Laurent polynomial, when `[2]^{#L-1}` divides `V(L)`.
    pub fn x_laurent(&self, l: &FramedLinkDiagram) -> Option<HalfLaurent> {
        match self.jones_v(l) {
            None => Some(HalfLaurent::one()),
            Some(v) => {
                let mu = l.num_components() as u32;
                v.div_exact(&quantum_int(2).pow(mu - 1))
            }
        }
    }

    /// `X(L)` expanded in `x` through `x^order`.
    pub fn x_series(&self, l: &FramedLinkDiagram, order: usize) -> TruncatedSeries {
        match self.jones_v(l) {
            None => TruncatedSeries::one(order),
            Some(v) => {
                let mu = l.num_components() as u32;
                &expand_in_x(&v, order) * &inverse_quantum_two_pow(mu - 1, order)
            }
        }
    }

    /// `Φ(L) = Σ_{L' ⊆ L} (-1)^{#L - #L'} X(L')` through `x^order`.
    pub fn phi_series(&self, l: &FramedLinkDiagram, order: usize) -> TruncatedSeries {
        let mu = l.num_components();
        let masks: Vec<Vec<bool>> = subsets(mu).collect();
        masks
            .par_iter()
            .map(|m| {
                let size = m.iter().filter(|&&b| b).count();
                self.x_series(&l.sublink(m), order).scale(&sign_pow(mu - size))
            })
            .reduce(|| TruncatedSeries::zero(order), |a, b| &a + &b)
    }

    /// `Φ_n(L) = n! · [x^n] Φ(L)`.
    pub fn big_phi_n(&self, l: &FramedLinkDiagram, n: usize) -> Rational {
        let s = self.phi_series(l, n);
        s.coeff(n) * factorial(n as u32)
    }

    /// `φ_i(L) = (-2)^{#L} / (#L + i)! · Φ_{#L+i}(L)`.
    pub fn phi_i(&self, l: &FramedLinkDiagram, i: usize) -> Rational {
        let mu = l.num_components();
        let n = mu + i;
        let s = self.phi_series(l, n);
        // Φ_n / n! is the coefficient itself
        s.coeff(n) * rational_pow(&rat(-2), mu as i64)
    }

    /// All `Φ_k`, `k ≤ order`, from one expansion.
    pub fn big_phi_all(&self, l: &FramedLinkDiagram, order: usize) -> Vec<Rational> {
        let s = self.phi_series(l, order);
        (0..=order).map(|k| s.coeff(k) * factorial(k as u32)).collect()
    }
}

/// True when every coefficient of `s` below `x^k` vanishes.
pub fn vanishes_below(s: &TruncatedSeries, k: usize) -> bool {
    s.coeffs().iter().take(k).all(Zero::is_zero)
}
