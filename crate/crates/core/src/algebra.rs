//! Exact arithmetic substrate.
//!
//! Three value types live here:
//!
//! * [`Rational`], arbitrary precision, always reduced with a positive denominator
//!   (this is what `num_rational::BigRational` guarantees).
//! * [`HalfLaurent`], Laurent polynomials in `q = e^{h/2}` whose exponents may be
//!   half-integers. Exponents are stored doubled so the key grid is `ℤ`.
//! * [`TruncatedSeries`], power series in `x = e^h - 1` known up to a fixed order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Builds an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `n/d`. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"p/q"` rendering used in every machine-readable output. Integers print as `"p"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Integer power of a rational; negative exponents invert. Panics on `0^(-k)`.
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Laurent polynomial in `q` with exponents on the half-integer grid.
///
/// The key `d` of the coefficient table stands for `q^{d/2}`. Zero coefficients
/// are never stored, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// `c · q^{doubled/2}`.
    pub fn monomial(doubled: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(doubled, c);
        }
        Self { terms }
    }

    /// `q^k` for integral `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(2 * k, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (d, c) in iter {
            out.add_term(d, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, doubled: i64) -> Rational {
        self.terms.get(&doubled).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates `(doubled exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, doubled: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(doubled).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&doubled);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `q ↦ q^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(d, c)| (-d, c.clone())).collect(),
        }
    }

    /// Exact quotient `self / divisor` when it exists as a Laurent polynomial.
    ///
    /// Returns `None` when the division leaves a remainder or when the supports
    /// live on incompatible half-integer cosets.
    pub fn div_exact(&self, divisor: &HalfLaurent) -> Option<HalfLaurent> {
        let (&dlo, dlead) = divisor.terms.iter().next()?;
        let (&dhi, _) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = HalfLaurent::zero();
        while let Some((&rlo, rc)) = rem.terms.iter().next() {
            let (&rhi, _) = rem.terms.iter().next_back().unwrap();
            if rhi - rlo < dhi - dlo {
                return None;
            }
            let shift = rlo - dlo;
            let c = rc / dlead;
            let step = HalfLaurent::monomial(shift, c);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Evaluates `q^{1/2} ↦ s` for a rational `s`; used only for sanity checks.
    pub fn eval_half(&self, s: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(d, c)| c * rational_pow(s, *d))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = if d.is_even() {
                (d / 2).to_string()
            } else {
                format!("{}/2", d)
            };
            write!(f, "({})q^{}", format_rational(c), e)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &'a HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &'a HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a HalfLaurent> for &'a HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &'a HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(&-Rational::one())
    }
}

impl Add for HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: HalfLaurent) -> HalfLaurent {
        &self + &rhs
    }
}

impl Sub for HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: HalfLaurent) -> HalfLaurent {
        &self - &rhs
    }
}

impl Mul for HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: HalfLaurent) -> HalfLaurent {
        &self * &rhs
    }
}

pub fn laurent_add(a: &HalfLaurent, b: &HalfLaurent) -> HalfLaurent {
    a + b
}

pub fn laurent_mul(a: &HalfLaurent, b: &HalfLaurent) -> HalfLaurent {
    a * b
}

/// The quantised integer `[n] = Σ_{k=0}^{n-1} q^{n-1-2k}`; `[0] = 0`.
pub fn quantum_int(n: u32) -> HalfLaurent {
    let n = n as i64;
    HalfLaurent::from_terms((0..n).map(|k| (2 * (n - 1 - 2 * k), Rational::one())))
}

/// Power series in `x` truncated after `x^order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}] + O(x^{})", parts.join(", "), self.coeffs.len())
    }
}

impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &'a TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }
}

/// Coefficients of `(1 + x)^r` up to `x^order`.
pub fn binom_series(r: &Rational, order: usize) -> TruncatedSeries {
    scaled_binom_series(r, &Rational::one(), order)
}

/// Coefficients of `(1 + a·x)^r` up to `x^order`.
pub fn scaled_binom_series(r: &Rational, a: &Rational, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    coeffs.push(c.clone());
    for k in 1..=order {
        let k_r = rat(k as i64);
        c = c * (r - (&k_r - Rational::one())) / &k_r * a;
        coeffs.push(c.clone());
    }
    TruncatedSeries { coeffs }
}

/// Image of `p` under `q^m ↦ (1 + x)^{m/2}`, truncated at `x^order`.
pub fn expand_in_x(p: &HalfLaurent, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(order);
    for (d, c) in p.terms() {
        let r = frac(d, 4);
        acc = &acc + &binom_series(&r, order).scale(c);
    }
    acc
}

/// Series of `[2]^{-k} = (q + q^{-1})^{-k}` in `x`.
///
/// Uses `1/[2] = (1+x)^{1/2} · ½ · (1 + x/2)^{-1}`, so no general inversion is
/// needed.
pub fn inverse_quantum_two_pow(k: u32, order: usize) -> TruncatedSeries {
    let k_r = rat(k as i64);
    let a = binom_series(&(&k_r / rat(2)), order);
    let b = scaled_binom_series(&-k_r, &frac(1, 2), order);
    (&a * &b).scale(&rational_pow(&frac(1, 2), k as i64))
}

/// Sign helper: `(-1)^k`.
pub fn sign_pow(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// True when `r` is a nonnegative integer.
pub fn is_nonneg_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}
