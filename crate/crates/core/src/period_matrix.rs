//! The matrix `[p_{i+j}]` with rows `I_{(n/2)d-n-2}` and columns `I_d`, its exact rank
//! and kernel, and the one-parameter family `A(x) = [p_{i+j}(P + x·P̌)]`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloCtx, CycloInt, CycloNum, ModpEmbedding};
use crate::error::{Error, Result};
use crate::indices::{index_set, IndexSet};
use crate::linalg::{self, Echelon};
use crate::linear_cycles::{CycleCombination, LinearCycle};
use crate::periods::{period_vector, PeriodScale, PeriodVector};
use crate::poly::{self, QPoly};

/// `[p_{i+j}]`; each cell refers into the period vector, so the Hankel structure is built in.
#[derive(Clone, Debug)]
pub struct PeriodMatrix {
    ctx: Arc<CycloCtx>,
    rows: Arc<IndexSet>,
    cols: Arc<IndexSet>,
    /// Position of `i + j` in the period index set, `None` when it lies outside.
    cells: Vec<Option<u32>>,
    periods: PeriodVector,
    source: Option<CycleCombination>,
}

/// Row degree `(n/2)d - n - 2`.
pub fn row_degree(n: u32, d: u32) -> i64 {
    (n as i64 / 2) * d as i64 - n as i64 - 2
}

/// Builds `[p_{i+j}]` from a period vector.
pub fn build_matrix(ctx: &Arc<CycloCtx>, p: &PeriodVector) -> PeriodMatrix {
    let (n, d) = (p.n(), p.d());
    let rows = Arc::new(index_set(n, d, row_degree(n, d)));
    let cols = Arc::new(index_set(n, d, d as i64));
    let mut cells = Vec::with_capacity(rows.len() * cols.len());
    for i in rows.iter() {
        for j in cols.iter() {
            cells.push(p.index().position(&i.add(j)).map(|k| k as u32));
        }
    }
    PeriodMatrix {
        ctx: Arc::clone(ctx),
        rows,
        cols,
        cells,
        periods: p.clone(),
        source: None,
    }
}

/// Period matrix of a cycle combination, with integral scaling.
pub fn matrix_of(ctx: &Arc<CycloCtx>, z: &CycleCombination) -> PeriodMatrix {
    let mut m = build_matrix(ctx, &period_vector(ctx, z, PeriodScale::Integral));
    m.source = Some(z.clone());
    m
}

impl PeriodMatrix {
    pub fn ctx(&self) -> &Arc<CycloCtx> {
        &self.ctx
    }

    pub fn row_index(&self) -> &IndexSet {
        &self.rows
    }

    pub fn col_index(&self) -> &IndexSet {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn periods(&self) -> &PeriodVector {
        &self.periods
    }

    pub fn source(&self) -> Option<&CycleCombination> {
        self.source.as_ref()
    }

    pub fn entry(&self, r: usize, c: usize) -> CycloNum {
        match self.cells[r * self.ncols() + c] {
            Some(k) => self.periods.values()[k as usize].clone(),
            None => CycloNum::zero(&self.ctx),
        }
    }

    pub fn rows_num(&self) -> Vec<Vec<CycloNum>> {
        (0..self.nrows())
            .map(|r| (0..self.ncols()).map(|c| self.entry(r, c)).collect())
            .collect()
    }

    /// Period values cleared to Z[ζ] by one common denominator.
    fn integral_periods(&self) -> Vec<CycloInt> {
        let den = self
            .periods
            .values()
            .iter()
            .fold(BigInt::one(), |acc, v| num_integer::Integer::lcm(&acc, &v.to_integral().1));
        let q = BigRational::from_integer(den);
        self.periods.values().iter().map(|v| v.scale(&q).to_integral().0).collect()
    }

    fn fill<T: Clone>(&self, vals: &[T], zero: &T) -> Vec<Vec<T>> {
        let nc = self.ncols();
        (0..self.nrows())
            .map(|r| {
                self.cells[r * nc..(r + 1) * nc]
                    .iter()
                    .map(|cell| cell.map_or_else(|| zero.clone(), |k| vals[k as usize].clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rows_int(&self) -> Vec<Vec<CycloInt>> {
        self.fill(&self.integral_periods(), &self.ctx.int_zero())
    }

    pub fn echelon(&self) -> Echelon {
        linalg::bareiss(&self.ctx, self.rows_int())
    }

    /// Rank over Q(ζ).
    pub fn rank_exact(&self) -> usize {
        self.echelon().rank
    }

    /// Basis of `{v : M v = 0}` in column coordinates.
    pub fn kernel_basis(&self) -> Vec<Vec<CycloNum>> {
        let ech = self.echelon();
        let all = self.rows_num();
        let rows: Vec<Vec<CycloNum>> = ech.pivot_rows.iter().map(|&r| all[r].clone()).collect();
        let (rr, piv) = linalg::rref(rows);
        linalg::kernel_from_rref(&self.ctx, &rr, &piv, self.ncols())
    }

    /// Rank of the image under ζ ↦ r in F_p.
    pub fn rank_modp(&self, emb: &ModpEmbedding) -> Result<usize> {
        let vals: Vec<u64> = self
            .periods
            .values()
            .iter()
            .map(|v| emb.image(v))
            .collect::<Result<_>>()?;
        let m = self.fill(&vals, &0);
        Ok(crate::modular::rank_mod_p(m, emb.prime()))
    }
}

/// Modular ranks over several embeddings.
pub fn rank_modp_multi(m: &PeriodMatrix, embeddings: &[ModpEmbedding]) -> Vec<Result<usize>> {
    embeddings.iter().map(|e| m.rank_modp(e)).collect()
}

/// `(rank M1, rank M2, rank of M1 stacked on M2)`.
pub fn concat_rank(m1: &PeriodMatrix, m2: &PeriodMatrix) -> (usize, usize, usize) {
    let ctx = m1.ctx();
    // separate denominators per block; each block scales by a nonzero rational
    let mut rows = m1.rows_int();
    rows.extend(m2.rows_int());
    (m1.rank_exact(), m2.rank_exact(), linalg::rank_int(ctx, rows))
}

/// `A(x) = base + x·slope`.
#[derive(Clone, Debug)]
pub struct ParamMatrix {
    pub base: PeriodMatrix,
    pub slope: PeriodMatrix,
}

impl ParamMatrix {
    /// `A(x)` for `P + x·P̌`.
    pub fn for_pair(ctx: &Arc<CycloCtx>, p: &LinearCycle, q: &LinearCycle) -> ParamMatrix {
        ParamMatrix {
            base: matrix_of(ctx, &CycleCombination::single(p)),
            slope: matrix_of(ctx, &CycleCombination::single(q)),
        }
    }

    /// Integral rows of `den·A(num/den)`, which has the same rank as `A(num/den)`.
    pub fn at(&self, x: &BigRational) -> Vec<Vec<CycloInt>> {
        let ctx = self.base.ctx();
        let b = self.base.integral_periods();
        let s = self.slope.integral_periods();
        assert_eq!(self.base.periods().scale(), PeriodScale::Integral);
        let (u, v) = (x.numer(), x.denom());
        let vals: Vec<CycloInt> = b
            .iter()
            .zip(&s)
            .map(|(bi, si)| bi.scale(v).add(&si.scale(u)))
            .collect();
        self.base.fill(&vals, &ctx.int_zero())
    }

    pub fn rank_at(&self, x: &BigRational) -> usize {
        linalg::rank_int(self.base.ctx(), self.at(x))
    }

    fn submatrix(&self, x: &BigRational, rows: &[usize], cols: &[usize]) -> Vec<Vec<CycloInt>> {
        let full = self.at(x);
        rows.iter()
            .map(|&r| cols.iter().map(|&c| full[r][c].clone()).collect())
            .collect()
    }
}

/// An `a×a` minor of `A(x)` whose determinant is not identically zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoodMinor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `det` of the minor as a polynomial in x, one polynomial per power-basis coordinate.
    #[serde(skip)]
    pub det_coords: Vec<QPoly>,
}

fn int_point(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

/// Determinant of the minor `rows × cols` of `A(x)` as polynomials in x, one per
/// power-basis coordinate, interpolated from the values at `x = 1..=a+1`.
pub fn minor_det_polys(a_mat: &ParamMatrix, rows: &[usize], cols: &[usize]) -> Vec<QPoly> {
    let ctx = a_mat.base.ctx();
    let a = rows.len();
    let xs: Vec<BigRational> = (1..=a as i64 + 1).map(int_point).collect();
    let dets: Vec<CycloInt> = xs
        .iter()
        .map(|x| linalg::det_int(ctx, a_mat.submatrix(x, rows, cols)))
        .collect();
    (0..ctx.degree())
        .map(|j| {
            let ys: Vec<BigRational> = dets
                .iter()
                .map(|dv| BigRational::from_integer(dv.coeffs[j].clone()))
                .collect();
            poly::interpolate(&xs, &ys)
        })
        .collect()
}

/// Selects a nonvanishing `a×a` minor from the pivots of `A(x0)` at probes `x0 = 1, 2, …`
/// and interpolates its determinant from the values at `x = 1..=a+1`.
pub fn good_minor(a_mat: &ParamMatrix, a: usize, budget: usize) -> Result<GoodMinor> {
    let ctx = a_mat.base.ctx();
    if a == 0 {
        let mut one = vec![vec![BigRational::one()]];
        one.extend((1..ctx.degree()).map(|_| Vec::new()));
        return Ok(GoodMinor {
            rows: Vec::new(),
            cols: Vec::new(),
            det_coords: one,
        });
    }
    for probe in 1..=budget as i64 {
        let ech = linalg::bareiss(ctx, a_mat.at(&int_point(probe)));
        if ech.rank < a {
            continue;
        }
        let mut rows = ech.pivot_rows[..a].to_vec();
        rows.sort_unstable();
        let cols = ech.pivot_cols[..a].to_vec();
        let det_coords = minor_det_polys(a_mat, &rows, &cols);
        return Ok(GoodMinor { rows, cols, det_coords });
    }
    Err(Error::GoodMinorNotFound { target: a, budget })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootRank {
    pub x: String,
    pub rank: usize,
    pub exceptional: bool,
}

/// Outcome of [`constant_rank_scan`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanResult {
    pub generic_rank: usize,
    /// Integer probes used to certify the generic rank.
    pub probes: usize,
    /// `gcd` of the coordinate polynomials of the minor's determinant.
    pub gcd: String,
    pub roots: Vec<RootRank>,
}

impl ScanResult {
    pub fn exceptional_points(&self) -> Vec<&str> {
        self.roots
            .iter()
            .filter(|r| r.exceptional)
            .map(|r| r.x.as_str())
            .collect()
    }
}

/// Generic rank of `A(x)` and the rank at every rational root of a good minor.
///
/// Only rational drop points are searched. The generic rank is certified by probing
/// `U + 1` integer points, where `U = min(rank base + rank slope, rows, cols)` bounds it.
pub fn constant_rank_scan(a_mat: &ParamMatrix) -> Result<ScanResult> {
    let ctx = a_mat.base.ctx();
    let upper = (a_mat.base.rank_exact() + a_mat.slope.rank_exact())
        .min(a_mat.base.nrows())
        .min(a_mat.base.ncols());
    let mut generic = 0;
    let mut probes = 0;
    for x in 1..=upper as i64 + 1 {
        probes += 1;
        let r = a_mat.rank_at(&int_point(x));
        generic = generic.max(r);
        if generic == upper {
            break;
        }
    }
    let minor = good_minor(a_mat, generic, upper + 2)?;
    let g = minor
        .det_coords
        .iter()
        .fold(QPoly::new(), |acc, p| poly::gcd(&acc, p));
    let roots = poly::rational_roots(&g)
        .into_iter()
        .map(|x| {
            let rank = linalg::rank_int(ctx, a_mat.at(&x));
            RootRank {
                x: x.to_string(),
                rank,
                exceptional: rank != generic,
            }
        })
        .collect();
    Ok(ScanResult {
        generic_rank: generic,
        probes,
        gcd: poly::to_string(&g),
        roots,
    })
}

/// True when `v` solves `M v = 0` exactly.
pub fn is_kernel_vector(m: &PeriodMatrix, v: &[CycloNum]) -> bool {
    let ctx = m.ctx();
    (0..m.nrows()).all(|r| {
        (0..m.ncols())
            .fold(CycloNum::zero(ctx), |acc, c| {
                let e = m.entry(r, c);
                if e.is_zero() || v[c].is_zero() {
                    acc
                } else {
                    &acc + &(&e * &v[c])
                }
            })
            .is_zero()
    })
}
