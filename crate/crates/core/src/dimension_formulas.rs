//! Closed-form codimensions `C_ā`, `K^d_n(m)` and the computed ranks `H^d_n(m)`.

use std::sync::Arc;

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloCtx;
use crate::error::{Error, Result};
use crate::indices::index_set_size;
use crate::linear_cycles::{standard_pair, CycleCombination, LinearCycle};
use crate::period_matrix::{matrix_of, row_degree};
use crate::periods::PeriodVector;

/// A multiset of positive degrees `(a_1, …, a_s)` on `X^d_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CIType {
    pub n: u32,
    pub d: u32,
    pub parts: Vec<u32>,
}

impl CIType {
    pub fn new(n: u32, d: u32, parts: Vec<u32>) -> Result<CIType> {
        if parts.contains(&0) {
            return Err(Error::InvalidParameters("degrees must be positive".into()));
        }
        Ok(CIType { n, d, parts })
    }

    /// `(d_1, …, d_k, d-d_1, …, d-d_k)` for a complete intersection of type `(d_1, …, d_k)`.
    pub fn complete_intersection(n: u32, d: u32, degrees: &[u32]) -> Result<CIType> {
        if degrees.is_empty() {
            return Err(Error::InvalidParameters("empty complete intersection type".into()));
        }
        if degrees.iter().any(|&a| a == 0 || a >= d) {
            return Err(Error::InvalidParameters(format!(
                "each degree must lie in [1, {}], got {degrees:?}",
                d - 1
            )));
        }
        let mut parts = degrees.to_vec();
        parts.extend(degrees.iter().map(|&a| d - a));
        CIType::new(n, d, parts)
    }

    /// `1^{ones}, (d-1)^{others}`.
    pub fn ones_and_complements(n: u32, d: u32, ones: u32, others: u32) -> CIType {
        let mut parts = vec![1; ones as usize];
        parts.extend(std::iter::repeat_n(d - 1, others as usize));
        CIType { n, d, parts }
    }
}

/// `C_ā = Σ_S (-1)^{|S|} binom(n+1+d-ΣS, n+1)` over sub-multisets S with `ΣS <= d`.
pub fn cformula(t: &CIType) -> i64 {
    let d = t.d as usize;
    // signed[s] = Σ over index subsets with sum s of (-1)^{|S|}
    let mut signed = vec![0i128; d + 1];
    signed[0] = 1;
    for &a in &t.parts {
        let a = a as usize;
        for s in (a..=d).rev() {
            signed[s] -= signed[s - a];
        }
    }
    let n1 = t.n as i128 + 1;
    let total: i128 = signed
        .iter()
        .enumerate()
        .map(|(s, &c)| c * binomial(n1 + (d - s) as i128, n1))
        .sum();
    total as i64
}

fn check_m(n: u32, m: i64) -> Result<()> {
    let half = n as i64 / 2;
    if !(-1..=half).contains(&m) {
        return Err(Error::MOutOfRange { m, max: half });
    }
    Ok(())
}

/// `K^d_n(m) = 2C_{1^{n/2+1},(d-1)^{n/2+1}} - C_{1^{n-m+1},(d-1)^{m+1}}`.
pub fn kdim(n: u32, d: u32, m: i64) -> Result<i64> {
    check_m(n, m)?;
    let h = n / 2 + 1;
    let single = cformula(&CIType::ones_and_complements(n, d, h, h));
    let joint = cformula(&CIType::ones_and_complements(n, d, (n as i64 - m + 1) as u32, (m + 1) as u32));
    Ok(2 * single - joint)
}

/// `binom(n/2+d, d) - (n/2+1)^2`, the rank for a single linear cycle.
pub fn single_cycle_rank(n: u32, d: u32) -> i64 {
    let h = n as i64 / 2;
    binomial(h + d as i64, d as i64) - (h + 1) * (h + 1)
}

/// Rank of `[p_{i+j}(r·P + ř·P̌)]` for an arbitrary pair.
pub fn hdim_pair(ctx: &Arc<CycloCtx>, p: &LinearCycle, q: &LinearCycle, r: i64, rcheck: i64) -> Result<usize> {
    let z = CycleCombination::pair(p, r, q, rcheck)?;
    Ok(matrix_of(ctx, &z).rank_exact())
}

/// `H^d_n(m)` for `r·P + ř·P̌` with the standard pair.
pub fn hdim_scaled(n: u32, d: u32, m: i64, r: i64, rcheck: i64) -> Result<usize> {
    let (p, q) = standard_pair(n, d, m)?;
    let ctx = CycloCtx::new(d)?;
    hdim_pair(&ctx, &p, &q, r, rcheck)
}

/// `H^d_n(m) = rank [p_{i+j}(P + P̌)]` for the standard pair.
pub fn hdim(n: u32, d: u32, m: i64) -> Result<usize> {
    hdim_scaled(n, d, m, 1, 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UpperBranch {
    /// `d > 2(n+1)/(n-2)`: the column count `|I_d|` is the smaller dimension.
    Columns,
    Rows,
}

/// Where a rank sits in the admissible range.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RangeCheck {
    pub rank: usize,
    pub lower: i64,
    pub upper: u64,
    pub branch: UpperBranch,
    pub within: bool,
    pub lower_attained: bool,
    /// The rank is the maximal possible one.
    pub general: bool,
}

/// Checks `binom(n/2+d,d) - (n/2+1)^2 <= rank <= min(|I_d|, |I_{(n/2)d-n-2}|)`.
pub fn range_check(ctx: &Arc<CycloCtx>, p: &PeriodVector) -> Result<RangeCheck> {
    if p.is_zero() {
        return Err(Error::InvalidParameters("the period vector is zero".into()));
    }
    let (n, d) = (p.n(), p.d());
    let rank = crate::period_matrix::build_matrix(ctx, p).rank_exact();
    let lower = single_cycle_rank(n, d);
    let cols = index_set_size(n, d, d as i64);
    let rows = index_set_size(n, d, row_degree(n, d));
    let branch = if n > 2 && (d as u64) * (n as u64 - 2) > 2 * (n as u64 + 1) {
        UpperBranch::Columns
    } else {
        UpperBranch::Rows
    };
    let upper = rows.min(cols);
    Ok(RangeCheck {
        rank,
        lower,
        upper,
        branch,
        within: rank as i64 >= lower && rank as u64 <= upper,
        lower_attained: rank as i64 == lower,
        general: rank as u64 == upper,
    })
}

/// Cubic range `binom(n/2+1, 3) <= rank <= binom(n+2, min(3, n/2-2))`, `n >= 4`.
pub fn cubic_bounds(n: u32) -> (i64, i64) {
    let h = n as i64 / 2;
    (binomial(h + 1, 3), binomial(n as i64 + 2, 3.min(h - 2)))
}
