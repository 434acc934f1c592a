//! Exponent vectors and the index sets I_N.
//!
//! `I_N` is the set of `i ∈ N^{n+2}` with `0 <= i_e <= d-2` and `Σ i_e = N`. Members are
//! kept in lexicographic order with `i_0` most significant; every matrix in the crate
//! inherits this ordering.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// An exponent vector `(i_0, …, i_{n+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(pub Vec<u32>);

impl ExpVec {
    pub fn zeros(len: usize) -> ExpVec {
        ExpVec(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when every coordinate stays non-negative.
    pub fn checked_sub(&self, other: &ExpVec) -> Option<ExpVec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExpVec)
    }

    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for ExpVec {
    fn from(v: Vec<u32>) -> Self {
        ExpVec(v)
    }
}

#[derive(Serialize, Deserialize)]
struct IndexSetRepr {
    n: u32,
    d: u32,
    total: i64,
    members: Vec<ExpVec>,
}

/// The sorted set `I_N` for a fixed `(n, d)`, with O(1) position lookup.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "IndexSetRepr", from = "IndexSetRepr")]
pub struct IndexSet {
    n: u32,
    d: u32,
    total: i64,
    members: Vec<ExpVec>,
    position: HashMap<ExpVec, usize>,
}

impl From<IndexSetRepr> for IndexSet {
    fn from(r: IndexSetRepr) -> Self {
        IndexSet::from_members(r.n, r.d, r.total, r.members)
    }
}

impl From<IndexSet> for IndexSetRepr {
    fn from(s: IndexSet) -> Self {
        IndexSetRepr {
            n: s.n,
            d: s.d,
            total: s.total,
            members: s.members,
        }
    }
}

impl PartialEq for IndexSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.total == other.total && self.members == other.members
    }
}

impl IndexSet {
    fn from_members(n: u32, d: u32, total: i64, members: Vec<ExpVec>) -> IndexSet {
        let position = members.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        IndexSet {
            n,
            d,
            total,
            members,
            position,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    pub fn members(&self) -> &[ExpVec] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, k: usize) -> &ExpVec {
        &self.members[k]
    }

    pub fn position(&self, v: &ExpVec) -> Option<usize> {
        self.position.get(v).copied()
    }

    pub fn contains(&self, v: &ExpVec) -> bool {
        self.position.contains_key(v)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExpVec> {
        self.members.iter()
    }
}

impl<'a> IntoIterator for &'a IndexSet {
    type Item = &'a ExpVec;
    type IntoIter = std::slice::Iter<'a, ExpVec>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Vectors of length `len` with entries in `[0, cap]` summing to `total`, in lex order.
pub fn bounded_compositions(len: usize, cap: u32, total: i64) -> Vec<ExpVec> {
    fn rec(pos: usize, len: usize, cap: u32, left: i64, cur: &mut Vec<u32>, out: &mut Vec<ExpVec>) {
        if pos + 1 == len {
            if left >= 0 && left <= cap as i64 {
                cur.push(left as u32);
                out.push(ExpVec(cur.clone()));
                cur.pop();
            }
            return;
        }
        let rest = (len - pos - 1) as i64 * cap as i64;
        let lo = (left - rest).max(0);
        let hi = left.min(cap as i64);
        for v in lo..=hi {
            cur.push(v as u32);
            rec(pos + 1, len, cap, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(ExpVec(Vec::new()));
        }
        return out;
    }
    if total < 0 || total > len as i64 * cap as i64 {
        return out;
    }
    rec(0, len, cap, total, &mut Vec::with_capacity(len), &mut out);
    out
}

/// `I_N` for the Fermat variety of dimension `n` and degree `d`.
pub fn index_set(n: u32, d: u32, total: i64) -> IndexSet {
    let members = if d < 2 {
        Vec::new()
    } else {
        bounded_compositions(n as usize + 2, d - 2, total)
    };
    IndexSet::from_members(n, d, total, members)
}

/// `|I_N|` without materializing the set.
pub fn index_set_size(n: u32, d: u32, total: i64) -> u64 {
    if d < 2 || total < 0 {
        return 0;
    }
    let cap = (d - 2) as usize;
    let total = total as usize;
    let mut ways = vec![0u64; total + 1];
    ways[0] = 1;
    for _ in 0..n + 2 {
        let mut next = vec![0u64; total + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for v in 0..=cap.min(total - s) {
                next[s + v] += w;
            }
        }
        ways = next;
    }
    ways[total]
}

/// Dimension of the moduli of degree-d hypersurfaces of dimension n, i.e. `|I_d|`.
pub fn moduli_dim(n: u32, d: u32) -> u64 {
    index_set_size(n, d, d as i64)
}

/// `binom(d+n+1, n+1) - (n+2)^2`, valid for `d >= 3`.
pub fn moduli_dim_formula(n: u32, d: u32) -> i64 {
    let b: BigInt = binomial(BigInt::from(d + n + 1), BigInt::from(n + 1));
    i64::try_from(b).expect("fits") - (n as i64 + 2).pow(2)
}

/// Primitive Hodge numbers `h^{n-q,q}_0 = |I_{(q+1)d-n-2}|` for `q = 0..=n`.
pub fn hodge_numbers_primitive(n: u32, d: u32) -> Vec<u64> {
    (0..=n)
        .map(|q| index_set_size(n, d, (q as i64 + 1) * d as i64 - n as i64 - 2))
        .collect()
}

/// Full Hodge numbers of the middle cohomology: the primitive ones plus 1 in the middle.
pub fn hodge_numbers(n: u32, d: u32) -> Vec<u64> {
    let mut h = hodge_numbers_primitive(n, d);
    if n.is_multiple_of(2) {
        h[n as usize / 2] += 1;
    }
    h
}

/// Integer and fractional parts of `(v + 1) / d`.
pub fn frac_decomp_entry(v: u32, d: u32) -> (u32, BigRational) {
    let s = v + 1;
    (
        s / d,
        BigRational::new(BigInt::from(s % d), BigInt::from(d)),
    )
}

/// Coordinate-wise [`frac_decomp_entry`].
pub fn frac_decomp(v: &ExpVec, d: u32) -> (Vec<u32>, Vec<BigRational>) {
    v.0.iter().map(|&e| frac_decomp_entry(e, d)).unzip()
}

/// Rising factorial `x (x+1) … (x+y-1)`.
pub fn pochhammer(x: &BigRational, y: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut cur = x.clone();
    for _ in 0..y {
        acc *= &cur;
        cur += BigRational::one();
    }
    acc
}

/// Reduces every coordinate into `[0, d-1]`.
pub fn bar_reduce(beta: &[i64], d: u32) -> ExpVec {
    ExpVec(beta.iter().map(|&b| b.rem_euclid(d as i64) as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_set_sizes() {
        assert_eq!(index_set(4, 6, 6).len(), 426);
        assert_eq!(index_set(6, 3, 3).len(), 56);
        assert_eq!(index_set(6, 3, 1).len(), 8);
        assert_eq!(index_set(10, 3, 0).len(), 1);
        assert!(index_set(2, 3, -1).is_empty());
        assert!(index_set(2, 3, 5).is_empty());
    }

    #[test]
    fn moduli_dims() {
        assert_eq!(moduli_dim(4, 6), 426);
        assert_eq!(moduli_dim(10, 3), 220);
        assert_eq!(moduli_dim(6, 3), 56);
        for n in (2..=10).step_by(2) {
            for d in 3..=8 {
                assert_eq!(moduli_dim(n, d) as i64, moduli_dim_formula(n, d), "(n,d)=({n},{d})");
            }
        }
    }

    #[test]
    fn hodge_tables() {
        assert_eq!(hodge_numbers(6, 3), vec![0, 0, 8, 71, 8, 0, 0]);
        assert_eq!(hodge_numbers(10, 3), vec![0, 0, 0, 1, 220, 925, 220, 1, 0, 0, 0]);
        assert_eq!(hodge_numbers(4, 6), vec![1, 426, 1752, 426, 1]);
    }

    #[test]
    fn lex_order_is_sorted() {
        let s = index_set(4, 4, 5);
        assert!(s.members().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s.len() as u64, index_set_size(4, 4, 5));
        for (k, v) in s.iter().enumerate() {
            assert_eq!(s.position(v), Some(k));
        }
    }

    #[test]
    fn frac_and_pochhammer() {
        let (i, f) = frac_decomp_entry(2, 3);
        assert_eq!((i, f), (1, BigRational::from_integer(0.into())));
        assert_eq!(frac_decomp_entry(0, 3).1, BigRational::new(1.into(), 3.into()));
        assert_eq!(frac_decomp_entry(7, 5), (1, BigRational::new(3.into(), 5.into())));
        let third = BigRational::new(1.into(), 3.into());
        assert!(pochhammer(&third, 0).is_one());
        assert_eq!(pochhammer(&third, 2), BigRational::new(4.into(), 9.into()));
        assert_eq!(pochhammer(&BigRational::one(), 5), BigRational::from_integer(120.into()));
    }

    #[test]
    fn bar_reduction() {
        assert_eq!(bar_reduce(&[4, 5, 0, 0], 3), ExpVec(vec![1, 2, 0, 0]));
        assert_eq!(bar_reduce(&[9, -1], 5), ExpVec(vec![4, 4]));
        assert_eq!(bar_reduce(&[0, 1, 2], 3), ExpVec(vec![0, 1, 2]));
    }

    #[test]
    fn serde_round_trip() {
        let s = index_set(2, 4, 3);
        let text = serde_json::to_string(&s).unwrap();
        let back: IndexSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.position(s.get(3)), Some(3));
    }
}
