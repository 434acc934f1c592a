//! Periods of linear cycles against the residue forms `ω_i`, `i ∈ I_{(n/2+1)d-n-2}`.
//!
//! For `P_{a,b}`:
//!
//! `p_i = sign(b)·(-1)^{n/2} / (d^{n/2+1}·(n/2)!) · ζ^ε`, `ε = Σ_e (i_{b_{2e}}+1)(1+2a_e)`
//!
//! when `i_{b_{2e}} + i_{b_{2e+1}} = d-2` for every e, and `p_i = 0` otherwise.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloCtx, CycloNum};
use crate::error::{Error, Result};
use crate::indices::{index_set, ExpVec, IndexSet};
use crate::linear_cycles::{CycleCombination, LinearCycle};

/// Whether to keep the positive rational prefactor `1/(d^{n/2+1}(n/2)!)`.
///
/// Ranks and kernels do not see a common nonzero scalar, so the integral scale is the
/// default for matrices; the exact scale is used when values are compared to Taylor series.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PeriodScale {
    Exact,
    #[default]
    Integral,
}

/// Total degree of the forms paired with middle homology: `(n/2+1)d - n - 2`.
pub fn top_degree(n: u32, d: u32) -> i64 {
    (n as i64 / 2 + 1) * d as i64 - n as i64 - 2
}

/// `d^{n/2+1}·(n/2)!`.
pub fn period_denominator(n: u32, d: u32) -> BigInt {
    let half = n / 2;
    let fact: BigInt = (1..=half as u64).map(BigInt::from).product();
    BigInt::from(d).pow(half + 1) * fact
}

/// Sign and ζ-exponent of the period, or `None` when it vanishes.
pub fn period_monomial(c: &LinearCycle, i: &ExpVec) -> Option<(i32, i64)> {
    let d = c.d() as i64;
    let mut eps = 0i64;
    for e in 0..c.num_pairs() {
        let (p, q) = c.pair(e);
        let (ip, iq) = (i.0[p] as i64, i.0[q] as i64);
        if ip + iq != d - 2 {
            return None;
        }
        eps += (ip + 1) * c.pair_exponent(e);
    }
    let half_sign = if c.n().is_multiple_of(4) { 1 } else { -1 };
    Some((c.sign() * half_sign, eps.rem_euclid(2 * d)))
}

fn check_top(c: &LinearCycle, i: &ExpVec) -> Result<()> {
    let (n, d) = (c.n(), c.d());
    let expected = top_degree(n, d);
    if i.len() != n as usize + 2 || i.total() != expected {
        return Err(Error::WrongDegree {
            entries: i.0.clone(),
            expected,
            found: i.total(),
        });
    }
    if i.max_entry() > d - 2 {
        return Err(Error::InvalidParameters(format!(
            "exponent vector {i} has an entry above d-2 = {}",
            d - 2
        )));
    }
    Ok(())
}

/// The period of `ω_i` over `c`.
pub fn period_linear(ctx: &Arc<CycloCtx>, c: &LinearCycle, i: &ExpVec, scale: PeriodScale) -> Result<CycloNum> {
    check_top(c, i)?;
    Ok(match period_monomial(c, i) {
        None => CycloNum::zero(ctx),
        Some((sign, eps)) => {
            let z = CycloNum::root(ctx, eps);
            let f = match scale {
                PeriodScale::Integral => BigRational::from_integer(sign.into()),
                PeriodScale::Exact => BigRational::new(sign.into(), period_denominator(c.n(), c.d())),
            };
            z.scale(&f)
        }
    })
}

/// Periods of a cycle combination indexed by `I_{(n/2+1)d-n-2}`.
#[derive(Clone, Debug)]
pub struct PeriodVector {
    n: u32,
    d: u32,
    scale: PeriodScale,
    index: Arc<IndexSet>,
    values: Vec<CycloNum>,
}

impl PeriodVector {
    pub fn zero(ctx: &Arc<CycloCtx>, n: u32, d: u32, scale: PeriodScale) -> PeriodVector {
        let index = Arc::new(index_set(n, d, top_degree(n, d)));
        let values = vec![CycloNum::zero(ctx); index.len()];
        PeriodVector {
            n,
            d,
            scale,
            index,
            values,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn scale(&self) -> PeriodScale {
        self.scale
    }

    pub fn index(&self) -> &Arc<IndexSet> {
        &self.index
    }

    pub fn values(&self) -> &[CycloNum] {
        &self.values
    }

    /// `p_i`, defined as 0 outside the index set.
    pub fn get(&self, i: &ExpVec) -> Option<&CycloNum> {
        self.index.position(i).map(|k| &self.values[k])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExpVec, &CycloNum)> {
        self.index.iter().zip(&self.values)
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: i64, other: &PeriodVector, beta: i64) -> PeriodVector {
        assert_eq!((self.n, self.d, self.scale), (other.n, other.d, other.scale));
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| &x.scale_int(alpha) + &y.scale_int(beta))
            .collect();
        PeriodVector {
            values,
            ..self.clone()
        }
    }
}

impl PartialEq for PeriodVector {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.scale == other.scale && self.values == other.values
    }
}

/// Integer combination of [`period_linear`]; the `[Z∞]` part contributes nothing.
pub fn period_vector(ctx: &Arc<CycloCtx>, z: &CycleCombination, scale: PeriodScale) -> PeriodVector {
    let (n, d) = (z.n(), z.d());
    let mut pv = PeriodVector::zero(ctx, n, d, scale);
    let order = 2 * d as usize;
    let denom = match scale {
        PeriodScale::Integral => BigRational::from_integer(1.into()),
        PeriodScale::Exact => BigRational::new(1.into(), period_denominator(n, d)),
    };
    let index = Arc::clone(&pv.index);
    for (k, i) in index.iter().enumerate() {
        // accumulate coefficients of ζ^e before reducing to the power basis
        let mut acc = vec![0i64; order];
        let mut any = false;
        for (coef, c) in z.terms() {
            if let Some((sign, eps)) = period_monomial(c, i) {
                acc[eps as usize] += coef * sign as i64;
                any = true;
            }
        }
        if !any {
            continue;
        }
        let poly: Vec<BigRational> = acc.iter().map(|&x| &denom * BigRational::from_integer(x.into())).collect();
        let v = CycloNum::from_poly(ctx, &poly);
        if !v.is_zero() {
            pv.values[k] = v;
        }
    }
    pv
}

/// Whether `v` has no nonzero entry, i.e. `z` is a rational multiple of `[Z∞]` in cohomology.
pub fn is_zero_vector(values: &[CycloNum]) -> bool {
    values.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear_cycles::{enumerate_cycles, standard_pair};

    #[test]
    fn cubic_surface_example() {
        let ctx = CycloCtx::new(3).unwrap();
        let c = LinearCycle::new(2, 3, vec![0, 0], vec![0, 1, 2, 3]).unwrap();
        let i = ExpVec(vec![1, 0, 1, 0]);
        let p = period_linear(&ctx, &c, &i, PeriodScale::Exact).unwrap();
        let expect = CycloNum::root(&ctx, 4).scale(&BigRational::new((-1).into(), 9.into()));
        assert_eq!(p, expect);
        assert!(matches!(
            period_linear(&ctx, &c, &ExpVec(vec![0, 2, 1, 1]), PeriodScale::Exact),
            Err(Error::WrongDegree { .. }) | Err(Error::InvalidParameters(_))
        ));
        assert!(period_linear(&ctx, &c, &ExpVec(vec![1, 1, 1]), PeriodScale::Exact).is_err());
        // all pairs would sum to 2 != d-2, and the total degree is 4 instead of 2
        assert!(matches!(
            period_linear(&ctx, &c, &ExpVec(vec![1, 1, 1, 1]), PeriodScale::Exact),
            Err(Error::WrongDegree { expected: 2, found: 4, .. })
        ));
    }

    #[test]
    fn support_size() {
        for (n, d) in [(2, 3), (2, 5), (4, 4), (6, 3)] {
            let ctx = CycloCtx::new(d).unwrap();
            for c in enumerate_cycles(n, d).unwrap().iter().step_by(11) {
                let pv = period_vector(&ctx, &CycleCombination::single(c), PeriodScale::Integral);
                assert_eq!(pv.support_size(), (d as usize - 1).pow(n / 2 + 1));
            }
        }
    }

    #[test]
    fn linearity_and_cancellation() {
        let ctx = CycloCtx::new(5).unwrap();
        let (p, q) = standard_pair(2, 5, 0).unwrap();
        let vp = period_vector(&ctx, &CycleCombination::single(&p), PeriodScale::Exact);
        let vq = period_vector(&ctx, &CycleCombination::single(&q), PeriodScale::Exact);
        let z = CycleCombination::pair(&p, 3, &q, -2).unwrap();
        assert_eq!(period_vector(&ctx, &z, PeriodScale::Exact), vp.combine(3, &vq, -2));
        let zero = CycleCombination::pair(&p, 1, &p, -1).unwrap();
        assert!(period_vector(&ctx, &zero, PeriodScale::Exact).is_zero());
        for (i, v) in vp.iter() {
            assert_eq!(&period_linear(&ctx, &p, i, PeriodScale::Exact).unwrap(), v);
        }
    }
}
