//! Ohtsuki's invariants `λ_n` for surgery on algebraically split, ±1-framed
//! links, and the alternating sublink sums used to test their finite-type
//! order.
//!
//! With `F^{nl}` as in [`f_nl`],
//!
//! ```text
//! λ_n(S³_L) = Σ_{l=1..n} Σ_{j ∈ {0..l}^μ} φ_l(L^j) F^{nl}(L, 1, j)
//! ```
//!
//! where `L^j` is the zero-framed cable with `j_p` copies of component `p`.

pub mod nu;

use std::sync::Arc;

use dashmap::DashMap;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{rat, rational_pow, sign_pow, Rational};
use crate::jones::{JonesEvaluator, SkeinCache};
use crate::links::{cable, subsets, FramedLinkDiagram, LinkError};
pub use nu::{NuTable, Provenance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OhtsukiError {
    #[error("missing ν constant for f={f}, i={i}, m={m}; supply it in a ν-table file")]
    MissingNuEntry { f: i8, i: u32, m: u32 },
    #[error("components {a} and {b} have linking number {linking}")]
    NotAlgebraicallySplit { a: usize, b: usize, linking: i64 },
    #[error("component {component} has framing {framing}, expected ±1")]
    BadFraming { component: usize, framing: i64 },
    #[error("multi-index has length {got}, expected {expected}")]
    IndexLength { got: usize, expected: usize },
    #[error("need 1 ≤ l ≤ n, got n={n}, l={l}")]
    BadOrder { n: usize, l: usize },
    #[error("ν-table: {0}")]
    NuTable(String),
    #[error(transparent)]
    Link(#[from] LinkError),
}

/// Tuple of non-negative integers indexed by link components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    /// `x = (x, ..., x)` of length `mu`.
    pub fn constant(x: u32, mu: usize) -> Self {
        Self(vec![x; mu])
    }

    pub fn zeros(mu: usize) -> Self {
        Self::constant(0, mu)
    }

    pub fn ones(mu: usize) -> Self {
        Self::constant(1, mu)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `|k|`
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `#k`
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, other: &Self) -> Result<(), OhtsukiError> {
        if self.len() != other.len() {
            return Err(OhtsukiError::IndexLength { got: other.len(), expected: self.len() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, OhtsukiError> {
        self.check(other)?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// Componentwise product `kj`.
    pub fn mul(&self, other: &Self) -> Result<Self, OhtsukiError> {
        self.check(other)?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect()))
    }

    pub fn scale(&self, x: u32) -> Self {
        Self(self.0.iter().map(|a| a * x).collect())
    }

    /// Positions with nonzero entries.
    pub fn support(&self) -> Vec<bool> {
        self.0.iter().map(|&a| a != 0).collect()
    }

    /// All `j` with `0 ≤ j ≤ upper` componentwise, in lexicographic order.
    pub fn boxed(upper: &Self) -> Vec<Self> {
        let mut out = vec![Self(vec![])];
        for &u in &upper.0 {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..=u).map(move |x| {
                        let mut v = m.0.clone();
                        v.push(x);
                        Self(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Link data certified for surgery: algebraically split, framings ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    link: FramedLinkDiagram,
}

impl SurgeryPresentation {
    pub fn new(link: FramedLinkDiagram) -> Result<Self, OhtsukiError> {
        let m = link.linking_matrix();
        for a in 0..m.len() {
            for b in a + 1..m.len() {
                if m[a][b] != 0 {
                    return Err(OhtsukiError::NotAlgebraicallySplit { a, b, linking: m[a][b] });
                }
            }
        }
        for (component, &framing) in link.framings().iter().enumerate() {
            if framing != 1 && framing != -1 {
                return Err(OhtsukiError::BadFraming { component, framing });
            }
        }
        Ok(Self { link })
    }

    pub fn link(&self) -> &FramedLinkDiagram {
        &self.link
    }

    pub fn framings(&self) -> Vec<i8> {
        self.link.framings().iter().map(|&f| f as i8).collect()
    }

    pub fn num_components(&self) -> usize {
        self.link.num_components()
    }

    pub fn sublink(&self, keep: &[bool]) -> Self {
        Self { link: self.link.sublink(keep) }
    }

    /// `f_L`, the product of all framings.
    pub fn framing_product(&self) -> i64 {
        self.link.framings().iter().product()
    }
}

/// Calls `visit(m)` for every `m ≥ 0` with `Σ i_p m_p = total` and `m_p = 0`
/// wherever `i_p = 0`.
fn weighted_compositions<F: FnMut(&[u32]) -> Result<(), OhtsukiError>>(
    i: &[u32],
    total: u32,
    visit: &mut F,
) -> Result<(), OhtsukiError> {
    fn rec<F: FnMut(&[u32]) -> Result<(), OhtsukiError>>(
        i: &[u32],
        p: usize,
        left: u32,
        m: &mut Vec<u32>,
        visit: &mut F,
    ) -> Result<(), OhtsukiError> {
        if p == i.len() {
            return if left == 0 { visit(m) } else { Ok(()) };
        }
        if i[p] == 0 {
            m.push(0);
            rec(i, p + 1, left, m, visit)?;
            m.pop();
            return Ok(());
        }
        for x in 0..=left / i[p] {
            m.push(x);
            rec(i, p + 1, left - x * i[p], m, visit)?;
            m.pop();
        }
        Ok(())
    }
    rec(i, 0, total, &mut Vec::with_capacity(i.len()), visit)
}

/// ```text
/// F^{nl}(L, i, j) = (-2)^{-|j|} Π_q (-f_q)^{i_q} Σ_{|im| = n-l} Π_p ν_{f_p, j_p, m_p}^{i_p}
/// ```
///
/// with `m_k = 0` whenever `i_k = 0`. Factors with `i_p = 0` are 1 and never
/// looked up.
pub fn f_nl(
    framings: &[i8],
    i: &MultiIndex,
    j: &MultiIndex,
    n: usize,
    l: usize,
    table: &NuTable,
) -> Result<Rational, OhtsukiError> {
    let mu = framings.len();
    if i.len() != mu {
        return Err(OhtsukiError::IndexLength { got: i.len(), expected: mu });
    }
    if j.len() != mu {
        return Err(OhtsukiError::IndexLength { got: j.len(), expected: mu });
    }
    if l == 0 || l > n {
        return Err(OhtsukiError::BadOrder { n, l });
    }
    let mut prefactor = rational_pow(&rat(-2), -(j.norm() as i64));
    for (q, &iq) in i.0.iter().enumerate() {
        prefactor *= rational_pow(&rat(-(framings[q] as i64)), iq as i64);
    }
    let mut sum = Rational::zero();
    weighted_compositions(&i.0, (n - l) as u32, &mut |m| {
        // built-in factors first so that a vanishing one spares the table
        let mut order: Vec<usize> = (0..mu).filter(|&p| i.0[p] > 0).collect();
        order.sort_by_key(|&p| j.0[p] > 1 || (j.0[p] == 1 && m[p] > 0));
        let mut term = Rational::one();
        for p in order {
            let v = table.lookup(framings[p], j.0[p], m[p])?;
            if v.is_zero() {
                return Ok(());
            }
            term *= nu::pow(&v, i.0[p]);
        }
        sum += term;
        Ok(())
    })?;
    Ok(prefactor * sum)
}

/// Coefficient of `φ_l(L^j)` in the alternating sublink sum:
/// `G^{nl}(L, j) = Σ_{i ∈ {0,1}^μ, i ⊇ supp j} (-1)^{|i|} F^{nl}(L, i, j)`.
pub fn g_nl(
    framings: &[i8],
    j: &MultiIndex,
    n: usize,
    l: usize,
    table: &NuTable,
) -> Result<Rational, OhtsukiError> {
    let mu = framings.len();
    if j.len() != mu {
        return Err(OhtsukiError::IndexLength { got: j.len(), expected: mu });
    }
    let supp = j.support();
    let mut total = Rational::zero();
    for mask in subsets(mu) {
        if supp.iter().zip(&mask).any(|(&s, &m)| s && !m) {
            continue;
        }
        let i = MultiIndex(mask.iter().map(|&b| b as u32).collect());
        total += sign_pow(i.norm() as usize) * f_nl(framings, &i, j, n, l, table)?;
    }
    Ok(total)
}

/// One `(l, j)` term of `λ_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaTerm {
    pub l: usize,
    pub j: MultiIndex,
    pub f: Rational,
    pub phi: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaBreakdown {
    pub value: Rational,
    pub terms: Vec<LambdaTerm>,
    /// Box entries skipped because `|j| > 3l` forces `φ_l(L^j) = 0`.
    pub pruned: usize,
}

/// Framing-free diagram key, framings, order.
type MemoKey = (String, Vec<i64>, usize);

/// `λ_n` engine with shared Jones cache and per-sublink memo.
#[derive(Clone, Debug)]
pub struct Ohtsuki {
    jones: JonesEvaluator,
    table: NuTable,
    prune: bool,
    memo: Arc<DashMap<MemoKey, Rational>>,
}

impl Default for Ohtsuki {
    fn default() -> Self {
        Self::new(NuTable::builtin())
    }
}

impl Ohtsuki {
    pub fn new(table: NuTable) -> Self {
        Self {
            jones: JonesEvaluator::cached(),
            table,
            prune: true,
            memo: Arc::new(DashMap::new()),
        }
    }

    pub fn with_cache(table: NuTable, cache: Arc<SkeinCache>) -> Self {
        Self { jones: JonesEvaluator::with_cache(cache), ..Self::new(table) }
    }

    /// Disables the `|j| > 3l` shortcut (every box term is evaluated).
    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }

    pub fn jones(&self) -> &JonesEvaluator {
        &self.jones
    }

    pub fn table(&self) -> &NuTable {
        &self.table
    }

    /// `φ_l` of the cable `L^j`.
    pub fn phi_of_cable(
        &self,
        l: &FramedLinkDiagram,
        j: &MultiIndex,
        order: usize,
    ) -> Result<Rational, OhtsukiError> {
        let c = cable(l, &j.0)?;
        Ok(self.jones.phi_i(&c, order))
    }

    pub fn lambda_n(&self, s: &SurgeryPresentation, n: usize) -> Result<Rational, OhtsukiError> {
        let key = (s.link().canonical_key(), s.link().framings().to_vec(), n);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = self.lambda_n_detailed(s, n)?.value;
        self.memo.entry(key).or_insert(v.clone());
        Ok(v)
    }

    pub fn lambda_n_detailed(
        &self,
        s: &SurgeryPresentation,
        n: usize,
    ) -> Result<LambdaBreakdown, OhtsukiError> {
        if n == 0 {
            return Err(OhtsukiError::BadOrder { n, l: 0 });
        }
        let mu = s.num_components();
        let framings = s.framings();
        let ones = MultiIndex::ones(mu);
        let mut jobs = Vec::new();
        let mut pruned = 0;
        for l in 1..=n {
            for j in MultiIndex::boxed(&MultiIndex::constant(l as u32, mu)) {
                if self.prune && j.norm() as usize > 3 * l {
                    pruned += 1;
                    continue;
                }
                jobs.push((l, j));
            }
        }
        let terms: Vec<LambdaTerm> = jobs
            .into_par_iter()
            .map(|(l, j)| {
                let f = f_nl(&framings, &ones, &j, n, l, &self.table)?;
                let phi = if f.is_zero() || j.norm() == 0 {
                    Rational::zero()
                } else {
                    self.phi_of_cable(s.link(), &j, l)?
                };
                Ok(LambdaTerm { l, j, f, phi })
            })
            .collect::<Result<_, OhtsukiError>>()?;
        let value = terms.iter().map(|t| &t.f * &t.phi).sum();
        Ok(LambdaBreakdown { value, terms, pruned })
    }

    /// `Σ_{L' ⊆ L} (-1)^{#L'} λ_n(S³_{L'})` by evaluating `λ_n` on every sublink.
    pub fn finite_type_sum(
        &self,
        s: &SurgeryPresentation,
        n: usize,
    ) -> Result<Rational, OhtsukiError> {
        let mu = s.num_components();
        let masks: Vec<Vec<bool>> = subsets(mu).collect();
        let parts: Vec<Rational> = masks
            .par_iter()
            .map(|m| {
                let size = m.iter().filter(|&&b| b).count();
                Ok(sign_pow(size) * self.lambda_n(&s.sublink(m), n)?)
            })
            .collect::<Result<_, OhtsukiError>>()?;
        Ok(parts.into_iter().sum())
    }

    /// The same sum as `Σ_l Σ_j φ_l(L^j) G^{nl}(L, j)`; only terms with
    /// `G = 0` are skipped.
    pub fn finite_type_sum_via_g(
        &self,
        s: &SurgeryPresentation,
        n: usize,
    ) -> Result<Rational, OhtsukiError> {
        let mu = s.num_components();
        let framings = s.framings();
        let mut jobs = Vec::new();
        for l in 1..=n {
            for j in MultiIndex::boxed(&MultiIndex::constant(l as u32, mu)) {
                let g = g_nl(&framings, &j, n, l, &self.table)?;
                if !g.is_zero() {
                    jobs.push((l, j, g));
                }
            }
        }
        let parts: Vec<Rational> = jobs
            .into_par_iter()
            .map(|(l, j, g)| Ok(g * self.phi_of_cable(s.link(), &j, l)?))
            .collect::<Result<_, OhtsukiError>>()?;
        Ok(parts.into_iter().sum())
    }

    /// `(-1)^n f_L φ_n(L)`, the predicted value of the alternating sum when
    /// `#L = 3n`.
    pub fn critical_sum_prediction(&self, s: &SurgeryPresentation, n: usize) -> Rational {
        sign_pow(n) * rat(s.framing_product()) * self.jones.phi_i(s.link(), n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::catalog::builtin;

    fn fr(v: &[i8]) -> Vec<i8> {
        v.to_vec()
    }

    #[test]
    fn multiindex_ops() {
        let k = MultiIndex(vec![1, 2, 3]);
        assert_eq!(k.norm(), 6);
        assert_eq!(k.len(), 3);
        assert_eq!(MultiIndex(vec![1, 0]).mul(&MultiIndex(vec![5, 7])).unwrap().0, vec![5, 0]);
        assert_eq!(MultiIndex::constant(1, 3).0, vec![1, 1, 1]);
        assert_eq!(k.add(&k).unwrap().0, vec![2, 4, 6]);
        assert_eq!(k.scale(2).0, vec![2, 4, 6]);
        assert!(k.add(&MultiIndex(vec![1])).is_err());
        assert_eq!(MultiIndex::boxed(&MultiIndex(vec![1, 2])).len(), 6);
    }

    #[test]
    fn f_nl_examples() {
        let t = NuTable::builtin();
        let ones = MultiIndex::ones(3);
        assert_eq!(f_nl(&fr(&[1, 1, 1]), &ones, &ones, 1, 1, &t).unwrap(), rat(1));
        let z = MultiIndex::zeros(3);
        assert_eq!(f_nl(&fr(&[1, -1, 1]), &z, &z, 1, 1, &t).unwrap(), rat(1));
        // F^{11}(L, 1, j) = Π_{p ∈ j} f_p
        let f = fr(&[1, -1, -1]);
        for j in MultiIndex::boxed(&ones) {
            let expect: i64 = j.0.iter().zip(&f).filter(|(&a, _)| a == 1).map(|(_, &x)| x as i64).product();
            assert_eq!(f_nl(&f, &ones, &j, 1, 1, &t).unwrap(), rat(expect), "{j}");
        }
        assert!(matches!(
            f_nl(&f, &ones, &ones, 2, 1, &t),
            Err(OhtsukiError::MissingNuEntry { .. })
        ));
        assert!(matches!(f_nl(&f, &ones, &ones, 1, 2, &t), Err(OhtsukiError::BadOrder { .. })));
    }

    #[test]
    fn g_nl_examples() {
        let t = NuTable::builtin();
        let f = fr(&[1]);
        let j = MultiIndex(vec![1]);
        assert_eq!(
            g_nl(&f, &j, 1, 1, &t).unwrap(),
            -f_nl(&f, &MultiIndex::ones(1), &j, 1, 1, &t).unwrap()
        );
        let f3 = fr(&[1, -1, 1]);
        for j in MultiIndex::boxed(&MultiIndex::ones(3)) {
            let g = g_nl(&f3, &j, 1, 1, &t).unwrap();
            if j.0.contains(&0) {
                assert!(g.is_zero(), "{j}");
            } else {
                let ones = MultiIndex::ones(3);
                assert_eq!(g, -f_nl(&f3, &ones, &ones, 1, 1, &t).unwrap());
            }
        }
    }

    #[test]
    fn surgery_validation() {
        assert!(matches!(
            SurgeryPresentation::new(builtin("hopf").with_uniform_framing(1)),
            Err(OhtsukiError::NotAlgebraicallySplit { .. })
        ));
        assert!(matches!(
            SurgeryPresentation::new(builtin("trefoil")),
            Err(OhtsukiError::BadFraming { component: 0, framing: 0 })
        ));
        assert!(SurgeryPresentation::new(FramedLinkDiagram::empty()).is_ok());
    }

    #[test]
    fn lambda_one_small_cases() {
        let o = Ohtsuki::default();
        let s = |name: &str, f: i64| {
            SurgeryPresentation::new(builtin(name).with_uniform_framing(f)).unwrap()
        };
        assert_eq!(o.lambda_n(&s("unknot", 1), 1).unwrap(), rat(0));
        assert_eq!(o.lambda_n(&s("unknot-kink", -1), 1).unwrap(), rat(0));
        assert_eq!(
            o.lambda_n(&SurgeryPresentation::new(FramedLinkDiagram::empty()).unwrap(), 1).unwrap(),
            rat(0)
        );
        assert_eq!(o.lambda_n(&s("trefoil", 1), 1).unwrap(), rat(6));
        assert_eq!(o.lambda_n(&s("trefoil", -1), 1).unwrap(), rat(-6));
        assert_eq!(o.lambda_n(&s("figure-eight", 1), 1).unwrap(), rat(-6));
        assert!(matches!(
            o.lambda_n(&s("trefoil", 1), 2),
            Err(OhtsukiError::MissingNuEntry { .. })
        ));
    }

    #[test]
    fn pruning_is_sound() {
        let s = SurgeryPresentation::new(builtin("borromean").with_uniform_framing(1)).unwrap();
        let a = Ohtsuki::default().lambda_n_detailed(&s, 1).unwrap();
        let b = Ohtsuki::default().without_pruning().lambda_n_detailed(&s, 1).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(b.pruned, 0);
    }

    #[test]
    fn finite_type_two_ways_on_borromean() {
        let o = Ohtsuki::default();
        let s = SurgeryPresentation::new(
            builtin("borromean").with_framings(vec![1, -1, 1]).unwrap(),
        )
        .unwrap();
        let direct = o.finite_type_sum(&s, 1).unwrap();
        assert_eq!(direct, o.finite_type_sum_via_g(&s, 1).unwrap());
        assert_eq!(direct, o.critical_sum_prediction(&s, 1));
        assert!(!direct.is_zero());
    }
}
