//! Linear cycles `P_{a,b}` on the Fermat variety `x_0^d + … + x_{n+1}^d = 0`.
//!
//! `P_{a,b}` is cut out by `x_{b_{2e}} - ζ^{1+2a_e} x_{b_{2e+1}} = 0` for `e = 0..=n/2`,
//! with ζ = ζ_{2d}. Permutations are stored in canonical form: `b_0 = 0` and each even
//! position holds the smallest index not used so far.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloCtx, CycloNum};
use crate::error::{Error, Result};
use crate::linalg::{self, permutation_sign};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearCycle {
    n: u32,
    d: u32,
    a: Vec<u32>,
    b: Vec<usize>,
}

impl LinearCycle {
    /// Builds a cycle, reducing `a` modulo d and bringing `b` into canonical form.
    pub fn new(n: u32, d: u32, a: Vec<u32>, b: Vec<usize>) -> Result<LinearCycle> {
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidParameters(format!("n = {n} must be even")));
        }
        if d < 2 {
            return Err(Error::InvalidParameters(format!("d = {d} must be at least 2")));
        }
        let half = n as usize / 2;
        if a.len() != half + 1 {
            return Err(Error::InvalidParameters(format!(
                "a must have {} entries, got {}",
                half + 1,
                a.len()
            )));
        }
        let mut seen = vec![false; n as usize + 2];
        if b.len() != seen.len() || !b.iter().all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true)) {
            return Err(Error::InvalidParameters(format!(
                "b = {b:?} is not a permutation of 0..{}",
                n + 1
            )));
        }
        // Each pair (p, q) with exponent c describes x_p = ζ^c x_q, equivalently
        // x_q = ζ^{-c} x_p; swapping a pair turns 1+2a into -(1+2a) = 1+2(d-1-a) mod 2d.
        let mut pairs: Vec<(usize, usize, u32)> = (0..=half)
            .map(|e| {
                let (p, q) = (b[2 * e], b[2 * e + 1]);
                let ae = a[e] % d;
                if p < q {
                    (p, q, ae)
                } else {
                    (q, p, d - 1 - ae)
                }
            })
            .collect();
        pairs.sort();
        let a = pairs.iter().map(|t| t.2).collect();
        let b = pairs.iter().flat_map(|t| [t.0, t.1]).collect();
        Ok(LinearCycle { n, d, a, b })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// Number of defining equations, `n/2 + 1`.
    pub fn num_pairs(&self) -> usize {
        self.a.len()
    }

    /// `(b_{2e}, b_{2e+1})`.
    pub fn pair(&self, e: usize) -> (usize, usize) {
        (self.b[2 * e], self.b[2 * e + 1])
    }

    /// The exponent `1 + 2a_e` of ζ in the e-th equation.
    pub fn pair_exponent(&self, e: usize) -> i64 {
        1 + 2 * self.a[e] as i64
    }

    pub fn sign(&self) -> i32 {
        permutation_sign(&self.b)
    }

    /// Coefficient rows of the defining linear forms.
    pub fn defining_forms(&self, ctx: &Arc<CycloCtx>) -> Vec<Vec<CycloNum>> {
        (0..self.num_pairs())
            .map(|e| {
                let (p, q) = self.pair(e);
                let mut row = vec![CycloNum::zero(ctx); self.n as usize + 2];
                row[p] = CycloNum::one(ctx);
                row[q] = -&CycloNum::root(ctx, self.pair_exponent(e));
                row
            })
            .collect()
    }

    /// Substitutes the defining equations into `Σ x_i^d` and checks that every
    /// paired contribution `(ζ^{d(1+2a)} + 1) x_q^d` vanishes.
    pub fn lies_on_fermat(&self, ctx: &Arc<CycloCtx>) -> bool {
        (0..self.num_pairs()).all(|e| {
            let c = CycloNum::root(ctx, self.d as i64 * self.pair_exponent(e));
            (&c + &CycloNum::one(ctx)).is_zero()
        })
    }
}

impl fmt::Display for LinearCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={:?} b={:?}", self.a, self.b)
    }
}

/// Canonical permutations for `n + 2` variables: `(n+1)!!` of them, in lex order.
pub fn canonical_permutations(len: usize) -> Vec<Vec<usize>> {
    fn rec(used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(first) = used.iter().position(|u| !u) else {
            out.push(cur.clone());
            return;
        };
        used[first] = true;
        cur.push(first);
        for second in first + 1..used.len() {
            if used[second] {
                continue;
            }
            used[second] = true;
            cur.push(second);
            rec(used, cur, out);
            cur.pop();
            used[second] = false;
        }
        cur.pop();
        used[first] = false;
    }
    let mut out = Vec::new();
    rec(&mut vec![false; len], &mut Vec::with_capacity(len), &mut out);
    out
}

/// All linear cycles of the Fermat variety, ordered by `b` then `a`.
pub fn enumerate_cycles(n: u32, d: u32) -> Result<Vec<LinearCycle>> {
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("n = {n} must be even")));
    }
    if d < 2 {
        return Err(Error::InvalidParameters(format!("d = {d} must be at least 2")));
    }
    let k = n as usize / 2 + 1;
    let perms = canonical_permutations(n as usize + 2);
    let mut out = Vec::with_capacity(perms.len() * (d as usize).pow(k as u32));
    for b in perms {
        let mut a = vec![0u32; k];
        loop {
            out.push(LinearCycle {
                n,
                d,
                a: a.clone(),
                b: b.clone(),
            });
            // odometer with the last entry fastest
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                a[i] += 1;
                if a[i] < d {
                    break;
                }
                a[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    Ok(out)
}

/// `(n+1)!! · d^{n/2+1}`.
pub fn cycle_count_formula(n: u32, d: u32) -> u64 {
    let dfact: u64 = (1..=n as u64 + 1).step_by(2).product();
    dfact * (d as u64).pow(n / 2 + 1)
}

/// `P = {x_{2e} = ζ x_{2e+1}}` and `P̌` with `ǎ = (0^{m+1}, 1^{n/2-m})`, meeting in `P^m`.
pub fn standard_pair(n: u32, d: u32, m: i64) -> Result<(LinearCycle, LinearCycle)> {
    let half = n as i64 / 2;
    if !(-1..=half).contains(&m) {
        return Err(Error::MOutOfRange { m, max: half });
    }
    let id: Vec<usize> = (0..n as usize + 2).collect();
    let k = half as usize + 1;
    let a_check = (0..k).map(|e| u32::from(e as i64 > m)).collect();
    Ok((
        LinearCycle::new(n, d, vec![0; k], id.clone())?,
        LinearCycle::new(n, d, a_check, id)?,
    ))
}

/// An integer combination of linear cycles plus a multiple of `[Z∞]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCombination {
    n: u32,
    d: u32,
    terms: Vec<(i64, LinearCycle)>,
    z_infinity: i64,
}

impl CycleCombination {
    /// Merges repeated cycles and drops zero coefficients.
    pub fn new(n: u32, d: u32, terms: Vec<(i64, LinearCycle)>, z_infinity: i64) -> Result<CycleCombination> {
        let mut merged: BTreeMap<LinearCycle, i64> = BTreeMap::new();
        for (c, cyc) in terms {
            if cyc.n != n || cyc.d != d {
                return Err(Error::InvalidParameters(format!(
                    "cycle on X^{}_{} in a combination on X^{d}_{n}",
                    cyc.d, cyc.n
                )));
            }
            *merged.entry(cyc).or_default() += c;
        }
        let terms = merged.into_iter().filter(|(_, c)| *c != 0).map(|(cyc, c)| (c, cyc)).collect();
        Ok(CycleCombination {
            n,
            d,
            terms,
            z_infinity,
        })
    }

    pub fn single(c: &LinearCycle) -> CycleCombination {
        CycleCombination {
            n: c.n,
            d: c.d,
            terms: vec![(1, c.clone())],
            z_infinity: 0,
        }
    }

    /// `r·P + ř·P̌`.
    pub fn pair(p: &LinearCycle, r: i64, q: &LinearCycle, rcheck: i64) -> Result<CycleCombination> {
        CycleCombination::new(p.n, p.d, vec![(r, p.clone()), (rcheck, q.clone())], 0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &[(i64, LinearCycle)] {
        &self.terms
    }

    pub fn z_infinity(&self) -> i64 {
        self.z_infinity
    }

    pub fn scaled(&self, k: i64) -> CycleCombination {
        let terms = if k == 0 {
            Vec::new()
        } else {
            self.terms.iter().map(|(c, cyc)| (c * k, cyc.clone())).collect()
        };
        CycleCombination {
            n: self.n,
            d: self.d,
            terms,
            z_infinity: self.z_infinity * k,
        }
    }
}

/// Dimension `m` of `P ∩ P̌ = P^m` (`-1` for empty), by exact rank of the stacked forms.
pub fn intersection_dim(ctx: &Arc<CycloCtx>, c1: &LinearCycle, c2: &LinearCycle) -> i64 {
    let mut rows = c1.defining_forms(ctx);
    rows.extend(c2.defining_forms(ctx));
    c1.n as i64 + 1 - linalg::rank_field(rows) as i64
}

/// `P·P̌ = (1 - (1-d)^{m+1}) / d` for linear cycles meeting in `P^m`.
pub fn intersection_number(d: u32, m: i64) -> i64 {
    let base = 1 - d as i128;
    let pow = base.pow((m + 1) as u32);
    ((1 - pow) / d as i128) as i64
}

/// `Z∞·Z∞ = d`.
pub fn z_infinity_self_intersection(d: u32) -> i64 {
    d as i64
}

/// `Z∞·P = 1` for every linear cycle P.
pub const Z_INFINITY_DOT_CYCLE: i64 = 1;

/// Intersection pairing extended bilinearly to combinations.
pub fn intersection_pairing(ctx: &Arc<CycloCtx>, z1: &CycleCombination, z2: &CycleCombination) -> i64 {
    let d = z1.d;
    let mut total = z1.z_infinity * z2.z_infinity * z_infinity_self_intersection(d);
    let s1: i64 = z1.terms.iter().map(|t| t.0).sum();
    let s2: i64 = z2.terms.iter().map(|t| t.0).sum();
    total += (z1.z_infinity * s2 + z2.z_infinity * s1) * Z_INFINITY_DOT_CYCLE;
    for (r1, c1) in &z1.terms {
        for (r2, c2) in &z2.terms {
            total += r1 * r2 * intersection_number(d, intersection_dim(ctx, c1, c2));
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bicycle {
    /// Vertices in traversal order: `(v_0, v_1)` is a pair of the first cycle,
    /// `(v_1, v_2)` a pair of the second, and so on.
    pub vertices: Vec<usize>,
    pub conductor: i64,
    pub is_new: bool,
}

/// For each variable: its partner and the signed exponent when stepping to the partner.
fn step_table(c: &LinearCycle) -> Vec<(usize, i64)> {
    let mut t = vec![(0, 0); c.n as usize + 2];
    for e in 0..c.num_pairs() {
        let (p, q) = c.pair(e);
        let x = c.pair_exponent(e);
        t[p] = (q, x);
        t[q] = (p, -x);
    }
    t
}

fn bicycle_weight(seq: &[usize], first: &[(usize, i64)], second: &[(usize, i64)]) -> i64 {
    let len = seq.len();
    (0..len)
        .map(|k| {
            let table = if k % 2 == 0 { first } else { second };
            let (to, w) = table[seq[k]];
            debug_assert_eq!(to, seq[(k + 1) % len]);
            w
        })
        .sum()
}

/// The bicycles of a pair of linear cycles, canonicalized up to even rotation and reversal.
pub fn bicycles(c1: &LinearCycle, c2: &LinearCycle) -> Vec<Bicycle> {
    let t1 = step_table(c1);
    let t2 = step_table(c2);
    let nv = t1.len();
    let mut seen = vec![false; nv];
    let mut out = Vec::new();
    for start in 0..nv {
        if seen[start] {
            continue;
        }
        let mut seq = Vec::new();
        let mut v = start;
        loop {
            seen[v] = true;
            seq.push(v);
            let w = t1[v].0;
            seen[w] = true;
            seq.push(w);
            v = t2[w].0;
            if v == start {
                break;
            }
        }
        let len = seq.len();
        let mut best: Option<Vec<usize>> = None;
        let mut reversed: Vec<usize> = Vec::with_capacity(len);
        reversed.push(seq[1]);
        reversed.push(seq[0]);
        reversed.extend(seq[2..].iter().rev());
        for cand in [&seq, &reversed] {
            for s in (0..len).step_by(2) {
                let rot: Vec<usize> = cand[s..].iter().chain(&cand[..s]).copied().collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        let vertices = best.expect("nonempty bicycle");
        let conductor = bicycle_weight(&vertices, &t1, &t2);
        let is_new = conductor.rem_euclid(2 * c1.d as i64) == 0;
        out.push(Bicycle {
            vertices,
            conductor,
            is_new,
        });
    }
    out.sort_by(|x, y| x.vertices.cmp(&y.vertices));
    out
}

/// Number of new bicycles minus one.
pub fn m_count(c1: &LinearCycle, c2: &LinearCycle) -> i64 {
    bicycles(c1, c2).iter().filter(|b| b.is_new).count() as i64 - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_cycles(2, 3).unwrap().len(), 27);
        assert_eq!(enumerate_cycles(2, 4).unwrap().len(), 48);
        assert_eq!(enumerate_cycles(4, 6).unwrap().len(), 3240);
        assert_eq!(cycle_count_formula(4, 6), 3240);
        assert!(enumerate_cycles(3, 3).is_err());
    }

    #[test]
    fn canonical_form_roundtrip() {
        let ctx = CycloCtx::new(5).unwrap();
        for c in enumerate_cycles(2, 5).unwrap() {
            assert_eq!(LinearCycle::new(2, 5, c.a.clone(), c.b.clone()).unwrap(), c);
            assert!(c.lies_on_fermat(&ctx));
        }
        // swapping the two variables of a pair describes the same subspace
        let c = LinearCycle::new(2, 5, vec![1, 3], vec![1, 0, 3, 2]).unwrap();
        assert_eq!(c.b(), &[0, 1, 2, 3]);
        assert_eq!(c.a(), &[3, 1]);
        let ctx = CycloCtx::new(5).unwrap();
        let orig = LinearCycle { n: 2, d: 5, a: vec![1, 3], b: vec![1, 0, 3, 2] };
        assert_eq!(intersection_dim(&ctx, &c, &orig), 1);
    }

    #[test]
    fn standard_pairs_meet_in_pm() {
        for (n, d) in [(2, 3), (2, 5), (4, 3), (6, 3), (4, 4)] {
            let ctx = CycloCtx::new(d).unwrap();
            for m in -1..=(n as i64 / 2) {
                let (p, q) = standard_pair(n, d, m).unwrap();
                assert_eq!(intersection_dim(&ctx, &p, &q), m);
                assert_eq!(m_count(&p, &q), m);
            }
        }
        assert!(standard_pair(2, 5, 2).is_err());
        let (_, q) = standard_pair(2, 5, 0).unwrap();
        assert_eq!(q.a(), &[0, 1]);
        let (_, q) = standard_pair(2, 5, -1).unwrap();
        assert_eq!(q.a(), &[1, 1]);
    }

    #[test]
    fn intersection_numbers() {
        assert_eq!(intersection_number(3, -1), 0);
        assert_eq!(intersection_number(7, 0), 1);
        assert_eq!(intersection_number(3, 1), -1);
    }

    #[test]
    fn worked_bicycle_example() {
        let d = 7;
        let (a, ac) = ([2u32, 3, 5], [4u32, 1, 6]);
        let c1 = LinearCycle { n: 4, d, a: a.to_vec(), b: vec![0, 1, 2, 3, 4, 5] };
        let c2 = LinearCycle { n: 4, d, a: ac.to_vec(), b: vec![1, 0, 5, 3, 4, 2] };
        let bs = bicycles(&c1, &c2);
        assert_eq!(bs.len(), 2);
        assert_eq!(bs[0].vertices, vec![0, 1]);
        assert_eq!(bs[1].vertices, vec![2, 3, 5, 4]);
        let (a, ac) = (a.map(|x| x as i64), ac.map(|x| x as i64));
        assert_eq!(bs[0].conductor, 2 + 2 * a[0] + 2 * ac[0]);
        assert_eq!(bs[1].conductor, 2 * a[1] - 2 * ac[1] - 2 * a[2] + 2 * ac[2]);
    }

    #[test]
    fn identical_cycles_give_trivial_bicycles() {
        for c in enumerate_cycles(4, 3).unwrap().iter().step_by(37) {
            let bs = bicycles(c, c);
            assert_eq!(bs.len(), 3);
            assert!(bs.iter().all(|b| b.vertices.len() == 2 && b.conductor == 0 && b.is_new));
            assert_eq!(m_count(c, c), 2);
        }
    }
}
