//! Exact linear algebra over Q(ζ) and Z[ζ].
//!
//! Large ranks go through fraction-free (Bareiss) elimination on integral entries: after
//! `k` pivots every live entry is a `(k+1)`-minor of the input, so dividing by the previous
//! pivot is exact in Z[ζ]. Small systems use plain row reduction over the field.

use std::sync::Arc;

use rayon::prelude::*;

use crate::cyclotomic::{CycloCtx, CycloInt, CycloNum, ModpEmbedding};
use crate::modular;

/// Result of fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rank: usize,
    /// Original indices of the pivot rows, in pivot order.
    pub pivot_rows: Vec<usize>,
    /// Pivot columns, strictly increasing.
    pub pivot_cols: Vec<usize>,
    /// Last pivot: the determinant of the pivot minor with rows taken in pivot order.
    pub last_pivot: Option<CycloInt>,
}

impl Echelon {
    /// Determinant of the square minor on `pivot_rows × pivot_cols` with rows sorted increasingly.
    pub fn minor_det(&self, ctx: &CycloCtx) -> CycloInt {
        match &self.last_pivot {
            None => ctx.int_root(0),
            Some(p) if permutation_sign(&self.pivot_rows) < 0 => p.scale(&(-1).into()),
            Some(p) => p.clone(),
        }
    }
}

/// Sign of the permutation that sorts `v` (entries distinct).
pub fn permutation_sign(v: &[usize]) -> i32 {
    let mut inv = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

const PAR_THRESHOLD: usize = 16;

/// Fraction-free echelon form over Z[ζ]; pivots are the first nonzero entry in column order.
pub fn bareiss(ctx: &CycloCtx, rows: Vec<Vec<CycloInt>>) -> Echelon {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut active: Vec<(usize, Vec<CycloInt>)> = rows
        .into_iter()
        .enumerate()
        .filter(|(_, r)| r.iter().any(|c| !c.is_zero()))
        .collect();
    let mut ech = Echelon {
        rank: 0,
        pivot_rows: Vec::new(),
        pivot_cols: Vec::new(),
        last_pivot: None,
    };
    let mut prev = None;
    for col in 0..ncols {
        if active.is_empty() {
            break;
        }
        let Some(k) = active.iter().position(|(_, r)| !r[col].is_zero()) else {
            continue;
        };
        let (orig, prow) = active.remove(k);
        let piv = prow[col].clone();
        let update = |row: &mut Vec<CycloInt>| {
            let lead = std::mem::replace(&mut row[col], ctx.int_zero());
            for j in col + 1..ncols {
                let v = if lead.is_zero() {
                    if row[j].is_zero() {
                        continue;
                    }
                    ctx.int_mul(&piv, &row[j])
                } else {
                    ctx.int_mul_sub(&piv, &row[j], &lead, &prow[j])
                };
                row[j] = match &prev {
                    Some(div) => ctx.int_exact_div(&v, div),
                    None => v,
                };
            }
        };
        if active.len() >= PAR_THRESHOLD {
            active.par_iter_mut().for_each(|(_, r)| update(r));
        } else {
            active.iter_mut().for_each(|(_, r)| update(r));
        }
        active.retain(|(_, r)| r[col + 1..].iter().any(|c| !c.is_zero()));
        prev = Some(ctx.exact_divisor(&piv).expect("nonzero pivot"));
        ech.rank += 1;
        ech.pivot_rows.push(orig);
        ech.pivot_cols.push(col);
        ech.last_pivot = Some(piv);
    }
    ech
}

/// Rank over Q(ζ) of a matrix with integral entries.
pub fn rank_int(ctx: &CycloCtx, rows: Vec<Vec<CycloInt>>) -> usize {
    bareiss(ctx, rows).rank
}

/// Determinant of a square integral matrix.
pub fn det_int(ctx: &CycloCtx, rows: Vec<Vec<CycloInt>>) -> CycloInt {
    let n = rows.len();
    let ech = bareiss(ctx, rows);
    if ech.rank < n {
        return ctx.int_zero();
    }
    ech.minor_det(ctx)
}

/// Clears denominators row by row; rank and kernel are unchanged.
pub fn integral_rows(rows: &[Vec<CycloNum>]) -> Vec<Vec<CycloInt>> {
    rows.iter()
        .map(|row| {
            let den = row.iter().fold(num_bigint::BigInt::from(1), |acc, x| {
                num_integer::Integer::lcm(&acc, &x.to_integral().1)
            });
            let q = num_rational::BigRational::from_integer(den);
            row.iter().map(|x| x.scale(&q).to_integral().0).collect()
        })
        .collect()
}

/// Reduced row echelon form over the field; returns the nonzero rows and pivot columns.
pub fn rref(mut rows: Vec<Vec<CycloNum>>) -> (Vec<Vec<CycloNum>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for x in rows[r][col..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let prow = rows[r].clone();
        let elim = |row: &mut Vec<CycloNum>| {
            let f = row[col].clone();
            if f.is_zero() {
                return;
            }
            for j in col..ncols {
                if !prow[j].is_zero() {
                    row[j] = &row[j] - &(&f * &prow[j]);
                }
            }
        };
        let (head, tail) = rows.split_at_mut(r);
        let (_, tail) = tail.split_at_mut(1);
        if head.len() + tail.len() >= PAR_THRESHOLD {
            head.par_iter_mut().chain(tail.par_iter_mut()).for_each(elim);
        } else {
            head.iter_mut().chain(tail.iter_mut()).for_each(elim);
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Rank over the field by row reduction; intended for small matrices.
pub fn rank_field(rows: Vec<Vec<CycloNum>>) -> usize {
    rref(rows).1.len()
}

/// Basis of the right kernel from an RREF, one vector per free column.
pub fn kernel_from_rref(
    ctx: &Arc<CycloCtx>,
    rref_rows: &[Vec<CycloNum>],
    pivots: &[usize],
    ncols: usize,
) -> Vec<Vec<CycloNum>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![CycloNum::zero(ctx); ncols];
            v[free] = CycloNum::one(ctx);
            for (row, &p) in rref_rows.iter().zip(pivots) {
                v[p] = -&row[free];
            }
            v
        })
        .collect()
}

/// Rank of the image modulo `emb.prime()`.
pub fn rank_modp_int(rows: &[Vec<CycloInt>], emb: &ModpEmbedding) -> usize {
    let p = emb.prime();
    let m: Vec<Vec<u64>> = rows
        .par_iter()
        .map(|r| r.iter().map(|x| x.image_mod(emb)).collect())
        .collect();
    modular::rank_mod_p(m, p)
}
