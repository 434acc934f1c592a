//! Truncated power series in the deformation parameters `t_α` and the Taylor
//! expansion of periods of linear cycles over `Σ x_i^d − Σ t_α x^α = 0`.
//!
//! The stored series of `x^β Ω / f_t^k` over `P_{a,b}` is
//!
//! `Σ_a  D_{β̌} ζ_{2d}^{d·E_{β̌}} / (a! · C) · t^a`,   `β̌ = β + Σ a_α α`,
//!
//! where only `a` with `{(β̌_p+1)/d} + {(β̌_q+1)/d} = 1` on every pair `(p, q)` of the
//! cycle contribute, `D_{β̌} = Π ({(β̌_i+1)/d})_{[(β̌_i+1)/d]}`,
//! `d·E = Σ_e ((β̌_{p_e}+1) mod d)(1+2a_e)` and `C = sign(b)(−1)^{n/2} d^{n/2+1} (k−1)!`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloCtx, CycloNum};
use crate::error::{Error, Result};
use crate::indices::{index_set, pochhammer, ExpVec};
use crate::linear_cycles::{CycleCombination, LinearCycle};

/// Which parameter set a family uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// All of `I_d`.
    Full,
    /// `A(x_0, x_2, …) + B(x_1, x_3, …)`: monomials in the even or in the odd variables only.
    Split,
    Custom,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Full => "full",
            FamilyKind::Split => "split",
            FamilyKind::Custom => "custom",
        })
    }
}

/// The deformation `Σ x_i^d − Σ_{α ∈ I} t_α x^α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformFamily {
    n: u32,
    d: u32,
    kind: FamilyKind,
    params: Vec<ExpVec>,
}

impl DeformFamily {
    pub fn full(n: u32, d: u32) -> DeformFamily {
        DeformFamily {
            n,
            d,
            kind: FamilyKind::Full,
            params: index_set(n, d, d as i64).members().to_vec(),
        }
    }

    pub fn split(n: u32, d: u32) -> DeformFamily {
        let params = index_set(n, d, d as i64)
            .iter()
            .filter(|a| {
                let even = a.0.iter().skip(1).step_by(2).all(|&x| x == 0);
                let odd = a.0.iter().step_by(2).all(|&x| x == 0);
                even || odd
            })
            .cloned()
            .collect();
        DeformFamily {
            n,
            d,
            kind: FamilyKind::Split,
            params,
        }
    }

    /// Any duplicate-free set of degree-`d` monomials; sorted on construction.
    pub fn custom(n: u32, d: u32, mut params: Vec<ExpVec>) -> Result<DeformFamily> {
        for a in &params {
            if a.len() != n as usize + 2 || a.total() != d as i64 {
                return Err(Error::WrongDegree {
                    entries: a.0.clone(),
                    expected: d as i64,
                    found: a.total(),
                });
            }
        }
        params.sort();
        let before = params.len();
        params.dedup();
        if params.len() != before {
            return Err(Error::InvalidParameters("duplicate deformation monomial".into()));
        }
        Ok(DeformFamily {
            n,
            d,
            kind: FamilyKind::Custom,
            params,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn params(&self) -> &[ExpVec] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    /// Number of monomials of degree `<= order` in the parameters.
    pub fn monomial_count(&self, order: u32) -> u128 {
        let p = self.params.len() as u128;
        // binom(p + order, order)
        (1..=order as u128).fold(1u128, |acc, j| acc * (p + j) / j)
    }
}

/// A form `x^β Ω / f^k` with `k = Σ(β_i+1)/d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormIndex {
    beta: ExpVec,
    k: u32,
}

impl FormIndex {
    pub fn new(beta: ExpVec, d: u32) -> Result<FormIndex> {
        let s = beta.total() + beta.len() as i64;
        if s <= 0 || s % d as i64 != 0 {
            return Err(Error::NonIntegralPoleOrder(beta.0));
        }
        let k = (s / d as i64) as u32;
        Ok(FormIndex { beta, k })
    }

    pub fn beta(&self) -> &ExpVec {
        &self.beta
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// A monomial `t^a`, stored as the nondecreasing list of parameter indices (with repetition).
pub type Monomial = Vec<u32>;

fn merge_monos(a: &[u32], b: &[u32]) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `t0^2*t5`, or `1` for the empty monomial.
pub fn monomial_string(m: &[u32]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        parts.push(if j - i == 1 {
            format!("t{}", m[i])
        } else {
            format!("t{}^{}", m[i], j - i)
        });
        i = j;
    }
    parts.join("*")
}

/// A polynomial in the `t_α` of total degree at most `order`, over `Q(ζ_{2d})`.
#[derive(Clone, Debug)]
pub struct TruncSeries {
    ctx: Arc<CycloCtx>,
    family: Arc<DeformFamily>,
    order: u32,
    terms: BTreeMap<Monomial, CycloNum>,
}

#[derive(Clone, Debug)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    /// Multiply the first series by the second, which must be a constant.
    Scalar,
}

impl TruncSeries {
    pub fn zero(ctx: &Arc<CycloCtx>, family: &Arc<DeformFamily>, order: u32) -> TruncSeries {
        TruncSeries {
            ctx: Arc::clone(ctx),
            family: Arc::clone(family),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<CycloCtx>, family: &Arc<DeformFamily>, order: u32, c: CycloNum) -> TruncSeries {
        let mut s = TruncSeries::zero(ctx, family, order);
        s.add_term(Vec::new(), c);
        s
    }

    /// The single parameter `t_j`.
    pub fn variable(ctx: &Arc<CycloCtx>, family: &Arc<DeformFamily>, order: u32, j: u32) -> TruncSeries {
        let mut s = TruncSeries::zero(ctx, family, order);
        s.add_term(vec![j], CycloNum::one(ctx));
        s
    }

    pub fn ctx(&self) -> &Arc<CycloCtx> {
        &self.ctx
    }

    pub fn family(&self) -> &Arc<DeformFamily> {
        &self.family
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CycloNum> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, m: &[u32]) -> Option<&CycloNum> {
        self.terms.get(m)
    }

    /// Lowest total degree of a nonzero term.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.len() as u32).min()
    }

    /// Adds `c·t^m`, dropping it beyond the order and removing cancelled terms.
    pub fn add_term(&mut self, m: Monomial, c: CycloNum) {
        if m.len() as u32 > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Terms of degree exactly `j`.
    pub fn homogeneous(&self, j: u32) -> impl Iterator<Item = (&Monomial, &CycloNum)> {
        self.terms.iter().filter(move |(m, _)| m.len() as u32 == j)
    }

    /// Drops terms of degree above `order` and lowers the order.
    pub fn truncate(&self, order: u32) -> TruncSeries {
        TruncSeries {
            ctx: Arc::clone(&self.ctx),
            family: Arc::clone(&self.family),
            order: order.min(self.order),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() as u32 <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_compatible(&self, other: &TruncSeries) -> Result<()> {
        if self.ctx.order() != other.ctx.order() {
            return Err(Error::ContextMismatch {
                left: self.ctx.order(),
                right: other.ctx.order(),
            });
        }
        if !Arc::ptr_eq(&self.family, &other.family) && self.family != other.family {
            return Err(Error::SeriesMismatch("different deformation families".into()));
        }
        if self.order != other.order {
            return Err(Error::SeriesMismatch(format!(
                "truncation orders {} and {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &CycloNum) -> TruncSeries {
        let mut out = TruncSeries::zero(&self.ctx, &self.family, self.order);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        out
    }

    pub fn scale_int(&self, k: i64) -> TruncSeries {
        let mut out = TruncSeries::zero(&self.ctx, &self.family, self.order);
        if k != 0 {
            out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v.scale_int(k))).collect();
        }
        out
    }

    /// `self + c·other`, unchecked.
    fn axpy(&mut self, c: &CycloNum, other: &TruncSeries) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    /// Product truncated at `order`, unchecked.
    pub(crate) fn mul_trunc(&self, other: &TruncSeries, order: u32) -> TruncSeries {
        let mut out = TruncSeries::zero(&self.ctx, &self.family, order);
        let mut by_deg: Vec<Vec<(&Monomial, &CycloNum)>> = vec![Vec::new(); order as usize + 1];
        for (m, v) in &other.terms {
            if m.len() as u32 <= order {
                by_deg[m.len()].push((m, v));
            }
        }
        let mut acc: HashMap<Monomial, CycloNum> = HashMap::new();
        for (m1, v1) in &self.terms {
            let room = order as i64 - m1.len() as i64;
            if room < 0 {
                continue;
            }
            for bucket in &by_deg[..=room as usize] {
                for (m2, v2) in bucket {
                    let prod = v1 * v2;
                    let key = merge_monos(m1, m2);
                    match acc.get_mut(&key) {
                        Some(x) => *x = &*x + &prod,
                        None => {
                            acc.insert(key, prod);
                        }
                    }
                }
            }
        }
        out.terms = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out
    }

    /// Canonical text: one `monomial<TAB>c0,c1,…` line per term, in monomial order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (m, v) in &self.terms {
            s.push_str(&monomial_string(m));
            s.push('\t');
            s.push_str(&v.coeff_strings().join(","));
            s.push('\n');
        }
        s
    }
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        self.check_compatible(other).is_ok() && self.terms == other.terms
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(t^{})", self.order + 1);
        }
        for (k, (m, v)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})*{}", monomial_string(m))?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

/// Exact truncated ring arithmetic on series of the same family and order.
pub fn series_arith(s1: &TruncSeries, s2: &TruncSeries, op: SeriesOp) -> Result<TruncSeries> {
    s1.check_compatible(s2)?;
    Ok(match op {
        SeriesOp::Add => {
            let mut out = s1.clone();
            out.axpy(&CycloNum::one(&s1.ctx), s2);
            out
        }
        SeriesOp::Sub => {
            let mut out = s1.clone();
            out.axpy(&CycloNum::from_int(&s1.ctx, -1), s2);
            out
        }
        SeriesOp::Mul => s1.mul_trunc(s2, s1.order),
        SeriesOp::Scalar => {
            if s2.terms.keys().any(|m| !m.is_empty()) {
                return Err(Error::SeriesMismatch("scalar operand is not a constant".into()));
            }
            match s2.coeff(&[]) {
                Some(c) => s1.scale(c),
                None => TruncSeries::zero(&s1.ctx, &s1.family, s1.order),
            }
        }
    })
}

/// `(D_{β̌}, d·E_{β̌})` when `β̌` passes the pairing condition for `c`.
pub fn admissible_term(c: &LinearCycle, beta_check: &[u32]) -> Option<(BigRational, i64)> {
    let d = c.d();
    let mut de = 0i64;
    for e in 0..c.num_pairs() {
        let (p, q) = c.pair(e);
        let x = (beta_check[p] + 1) % d;
        let y = (beta_check[q] + 1) % d;
        if x == 0 || y == 0 || x + y != d {
            return None;
        }
        de += x as i64 * c.pair_exponent(e);
    }
    let mut dd = BigRational::one();
    for &b in beta_check {
        let s = b + 1;
        if s >= d {
            dd *= pochhammer(&BigRational::new(BigInt::from(s % d), BigInt::from(d)), s / d);
        }
    }
    Some((dd, de))
}

/// `sign(b)·(−1)^{n/2}·d^{n/2+1}·(k−1)!`.
pub fn normalizing_constant(c: &LinearCycle, k: u32) -> BigInt {
    let half = c.n() / 2;
    let fact: BigInt = (1..k as u64).map(BigInt::from).product();
    let sign = c.sign() * if half.is_multiple_of(2) { 1 } else { -1 };
    BigInt::from(sign) * BigInt::from(c.d()).pow(half + 1) * fact
}

fn check_form(c: &LinearCycle, beta: &FormIndex, fam: &DeformFamily) -> Result<()> {
    if fam.n() != c.n() || fam.d() != c.d() || beta.beta.len() != c.n() as usize + 2 {
        return Err(Error::InvalidParameters(format!(
            "cycle on X^{}_{}, family on X^{}_{}, form {}",
            c.d(),
            c.n(),
            fam.d(),
            fam.n(),
            beta.beta
        )));
    }
    let s = beta.beta.total() + beta.beta.len() as i64;
    if s != beta.k as i64 * c.d() as i64 {
        return Err(Error::NonIntegralPoleOrder(beta.beta.0.clone()));
    }
    Ok(())
}

struct Walker<'a> {
    c: &'a LinearCycle,
    params: &'a [ExpVec],
    order: u32,
    k: u32,
    // β̌ -> admissibility verdict; several multisets share a β̌
    cache: HashMap<Vec<u32>, Option<(BigRational, i64)>>,
    out: Vec<(Monomial, BigRational, i64)>,
}

impl Walker<'_> {
    fn visit(&mut self, start: usize, mono: &mut Monomial, bc: &mut Vec<u32>, afact: &BigInt) {
        // pole order of β̌ is k + |a|; the pairing condition forces Σ [(β̌_i+1)/d] = k + |a| − n/2 − 1
        let deficit = self.k as i64 + mono.len() as i64 - (self.c.n() as i64 / 2 + 1);
        if deficit >= 0 {
            let verdict = match self.cache.get(bc.as_slice()) {
                Some(v) => v.clone(),
                None => {
                    let v = admissible_term(self.c, bc);
                    self.cache.insert(bc.clone(), v.clone());
                    v
                }
            };
            if let Some((dd, de)) = verdict {
                self.out.push((mono.clone(), dd / BigRational::from_integer(afact.clone()), de));
            }
        }
        if mono.len() as u32 == self.order {
            return;
        }
        for j in start..self.params.len() {
            let mult = mono.iter().rev().take_while(|&&x| x as usize == j).count() as u64 + 1;
            for (x, y) in bc.iter_mut().zip(&self.params[j].0) {
                *x += y;
            }
            mono.push(j as u32);
            self.visit(j, mono, bc, &(afact * BigInt::from(mult)));
            mono.pop();
            for (x, y) in bc.iter_mut().zip(&self.params[j].0) {
                *x -= y;
            }
        }
    }
}

/// Truncated Taylor series at `t = 0` of the period of `x^β Ω / f_t^k` over `c`, divided by `C`.
pub fn taylor_period(
    ctx: &Arc<CycloCtx>,
    c: &LinearCycle,
    beta: &FormIndex,
    fam: &Arc<DeformFamily>,
    order: u32,
) -> Result<TruncSeries> {
    check_form(c, beta, fam)?;
    let mut w = Walker {
        c,
        params: fam.params(),
        order,
        k: beta.k,
        cache: HashMap::new(),
        out: Vec::new(),
    };
    let mut bc = beta.beta.0.clone();
    w.visit(0, &mut Vec::new(), &mut bc, &BigInt::one());
    let cinv = BigRational::new(BigInt::one(), normalizing_constant(c, beta.k));
    let mut s = TruncSeries::zero(ctx, fam, order);
    for (m, coef, de) in w.out {
        s.terms.insert(m, CycloNum::root(ctx, de).scale(&(coef * &cinv)));
    }
    Ok(s)
}

/// Integer-weighted sum of [`taylor_period`] over the cycles of `z`; `[Z∞]` contributes nothing.
pub fn taylor_combination(
    ctx: &Arc<CycloCtx>,
    z: &CycleCombination,
    beta: &FormIndex,
    fam: &Arc<DeformFamily>,
    order: u32,
) -> Result<TruncSeries> {
    let mut acc = TruncSeries::zero(ctx, fam, order);
    for (coef, c) in z.terms() {
        let s = taylor_period(ctx, c, beta, fam, order)?;
        acc.axpy(&CycloNum::from_int(ctx, *coef), &s);
    }
    Ok(acc)
}

/// [`taylor_combination`] for many forms at once, in input order.
pub fn taylor_batch(
    ctx: &Arc<CycloCtx>,
    z: &CycleCombination,
    forms: &[FormIndex],
    fam: &Arc<DeformFamily>,
    order: u32,
) -> Result<Vec<TruncSeries>> {
    forms
        .par_iter()
        .map(|b| taylor_combination(ctx, z, b, fam, order))
        .collect()
}

/// All forms `x^β Ω / f^k` with `1 <= k <= kmax` and `β ∈ I_{kd−n−2}`, by `k` then lexicographically.
pub fn forms_up_to(n: u32, d: u32, kmax: u32) -> Vec<FormIndex> {
    let mut out = Vec::new();
    for k in 1..=kmax {
        let total = k as i64 * d as i64 - n as i64 - 2;
        for b in index_set(n, d, total).iter() {
            out.push(FormIndex { beta: b.clone(), k });
        }
    }
    out
}

/// Linear coefficients `[∂/∂t_α]` of a series, as a dense row over the parameters.
pub fn linear_part(s: &TruncSeries) -> Vec<CycloNum> {
    let mut row = vec![CycloNum::zero(&s.ctx); s.family.len()];
    for (m, v) in s.homogeneous(1) {
        row[m[0] as usize] = v.clone();
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear_cycles::{enumerate_cycles, standard_pair};
    use crate::periods::{period_linear, top_degree, PeriodScale};

    fn top_forms(n: u32, d: u32) -> Vec<FormIndex> {
        index_set(n, d, top_degree(n, d))
            .iter()
            .map(|b| FormIndex::new(b.clone(), d).unwrap())
            .collect()
    }

    #[test]
    fn family_sizes() {
        assert_eq!(DeformFamily::full(2, 5).len(), 40);
        assert_eq!(DeformFamily::full(4, 4).len(), 90);
        assert_eq!(DeformFamily::split(4, 4).len(), 12);
        assert_eq!(DeformFamily::split(6, 3).len(), 8);
        assert_eq!(DeformFamily::full(2, 5).monomial_count(3), 12341);
    }

    #[test]
    fn form_index_pole_order() {
        assert_eq!(FormIndex::new(ExpVec(vec![1, 0, 1, 0]), 3).unwrap().k(), 2);
        assert!(matches!(
            FormIndex::new(ExpVec(vec![1, 0, 0, 0]), 3),
            Err(Error::NonIntegralPoleOrder(_))
        ));
    }

    #[test]
    fn arithmetic_basics() {
        let ctx = CycloCtx::new(4).unwrap();
        let fam = Arc::new(DeformFamily::full(2, 4));
        let one = TruncSeries::constant(&ctx, &fam, 1, CycloNum::one(&ctx));
        let t = TruncSeries::variable(&ctx, &fam, 1, 3);
        assert_eq!(series_arith(&t, &one, SeriesOp::Mul).unwrap(), t);
        assert!(series_arith(&t, &t, SeriesOp::Mul).unwrap().is_zero());
        let t2 = TruncSeries::variable(&ctx, &fam, 2, 3);
        let sq = series_arith(&t2, &t2, SeriesOp::Mul).unwrap();
        assert_eq!(monomial_string(sq.terms().keys().next().unwrap()), "t3^2");
        assert!(series_arith(&t, &t2, SeriesOp::Add).is_err());
        assert!(series_arith(&t, &t, SeriesOp::Scalar).is_err());
        assert!(series_arith(&t, &t, SeriesOp::Sub).unwrap().is_zero());
    }

    #[test]
    fn empty_family_gives_constant() {
        let ctx = CycloCtx::new(3).unwrap();
        let fam = Arc::new(DeformFamily::custom(2, 3, vec![]).unwrap());
        let c = LinearCycle::new(2, 3, vec![0, 0], vec![0, 1, 2, 3]).unwrap();
        let b = FormIndex::new(ExpVec(vec![1, 0, 1, 0]), 3).unwrap();
        let s = taylor_period(&ctx, &c, &b, &fam, 3).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.valuation(), Some(0));
    }

    #[test]
    fn constant_term_is_the_period() {
        for (n, d) in [(2, 3), (2, 4), (2, 5), (4, 3)] {
            let ctx = CycloCtx::new(d).unwrap();
            let fam = Arc::new(DeformFamily::full(n, d));
            for c in enumerate_cycles(n, d).unwrap().iter().step_by(7) {
                for b in top_forms(n, d) {
                    let s = taylor_period(&ctx, c, &b, &fam, 0).unwrap();
                    let p = period_linear(&ctx, c, b.beta(), PeriodScale::Exact).unwrap();
                    let c0 = s.coeff(&[]).cloned().unwrap_or_else(|| CycloNum::zero(&ctx));
                    assert_eq!(c0, p, "({n},{d}) {c} {}", b.beta());
                }
            }
        }
    }

    #[test]
    fn linear_term_matches_period_matrix_row() {
        // for k = n/2 the t_α coefficient is (n/2)·p_{β+α}
        for (n, d) in [(2, 3), (2, 4), (2, 5), (4, 3)] {
            let ctx = CycloCtx::new(d).unwrap();
            let fam = Arc::new(DeformFamily::full(n, d));
            let half = BigRational::from_integer(BigInt::from(n / 2));
            let (p, _) = standard_pair(n, d, 0.min(n as i64 / 2 - 1)).unwrap();
            let top = index_set(n, d, top_degree(n, d));
            for b in forms_up_to(n, d, n / 2).into_iter().filter(|f| f.k() == n / 2) {
                let s = taylor_period(&ctx, &p, &b, &fam, 1).unwrap();
                let row = linear_part(&s);
                for (j, alpha) in fam.params().iter().enumerate() {
                    let sum = b.beta().add(alpha);
                    let expect = if top.contains(&sum) {
                        period_linear(&ctx, &p, &sum, PeriodScale::Exact).unwrap().scale(&half)
                    } else {
                        CycloNum::zero(&ctx)
                    };
                    assert_eq!(row[j], expect);
                }
            }
        }
    }

    #[test]
    fn low_pole_order_forms_vanish_to_second_order() {
        let ctx = CycloCtx::new(3).unwrap();
        let fam = Arc::new(DeformFamily::full(6, 3));
        let (p, _) = standard_pair(6, 3, 1).unwrap();
        for b in forms_up_to(6, 3, 2) {
            let s = taylor_period(&ctx, &p, &b, &fam, 1).unwrap();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn admitted_terms_satisfy_pairing_and_degree() {
        let ctx = CycloCtx::new(5).unwrap();
        let fam = Arc::new(DeformFamily::full(2, 5));
        let (p, _) = standard_pair(2, 5, 0).unwrap();
        let b = FormIndex::new(ExpVec(vec![1, 0, 0, 0]), 5).unwrap();
        let s = taylor_period(&ctx, &p, &b, &fam, 2).unwrap();
        assert!(!s.is_zero());
        for m in s.terms().keys() {
            let mut bc = b.beta().clone();
            for &j in m {
                bc = bc.add(&fam.params()[j as usize]);
            }
            assert_eq!(bc.total(), b.beta().total() + 5 * m.len() as i64);
            assert!(admissible_term(&p, &bc.0).is_some());
        }
    }

    #[test]
    fn combination_linearity() {
        let ctx = CycloCtx::new(5).unwrap();
        let fam = Arc::new(DeformFamily::full(2, 5));
        let (p, q) = standard_pair(2, 5, 0).unwrap();
        let b = FormIndex::new(ExpVec(vec![1, 0, 0, 0]), 5).unwrap();
        let sp = taylor_period(&ctx, &p, &b, &fam, 2).unwrap();
        let sq = taylor_period(&ctx, &q, &b, &fam, 2).unwrap();
        let z = CycleCombination::pair(&p, 3, &q, -2).unwrap();
        let sz = taylor_combination(&ctx, &z, &b, &fam, 2).unwrap();
        let expect = series_arith(&sp.scale_int(3), &sq.scale_int(-2), SeriesOp::Add).unwrap();
        assert_eq!(sz, expect);
        assert_eq!(taylor_combination(&ctx, &CycleCombination::single(&p), &b, &fam, 2).unwrap(), sp);
        let zero = CycleCombination::pair(&p, 1, &p, -1).unwrap();
        assert!(taylor_combination(&ctx, &zero, &b, &fam, 2).unwrap().is_zero());
    }

    #[test]
    fn text_form_is_sorted() {
        let ctx = CycloCtx::new(5).unwrap();
        let fam = Arc::new(DeformFamily::split(2, 5));
        let (p, _) = standard_pair(2, 5, 0).unwrap();
        let b = FormIndex::new(ExpVec(vec![1, 0, 0, 0]), 5).unwrap();
        let s = taylor_period(&ctx, &p, &b, &fam, 3).unwrap();
        let txt = s.to_text();
        assert_eq!(txt.lines().count(), s.len());
        assert_eq!(txt, taylor_period(&ctx, &p, &b, &fam, 3).unwrap().to_text());
    }
}
