//! Exact arithmetic in the cyclotomic field Q(ζ) with ζ = ζ_{2d} = e^{πi/d}.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(2d)-1}` modulo the
//! cyclotomic polynomial Φ_{2d}. Two representations are provided:
//!
//! * [`CycloNum`] carries rational coordinates and a handle to its context; it is
//!   the general-purpose field element.
//! * [`CycloInt`] carries integer coordinates only (an element of Z[ζ]) and no
//!   context handle. The fraction-free eliminator works on these.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{self, bigint_mod, mul_mod};

/// Field context for Q(ζ_{2d}).
#[derive(Debug)]
pub struct CycloCtx {
    d: u32,
    order: u32,
    phi: Vec<i64>,
    deg: usize,
    /// ζ^e in the power basis for `0 <= e < order`.
    root_powers: Vec<Vec<i64>>,
    /// Units of Z/order, i.e. the exponents k of the Galois automorphisms ζ ↦ ζ^k.
    units: Vec<u32>,
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().expect("nonempty divisor");
    debug_assert_eq!(lead.abs(), 1);
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1] / lead;
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Coefficients (low degree first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for k in 1..m {
        if m.is_multiple_of(k) {
            num = poly_exact_div(&num, &cyclotomic_polynomial(k));
        }
    }
    num
}

impl CycloCtx {
    /// Context for the Fermat degree `d`, i.e. the field Q(ζ_{2d}).
    pub fn new(d: u32) -> Result<Arc<CycloCtx>> {
        if d < 2 {
            return Err(Error::InvalidParameters(format!(
                "Fermat degree must be at least 2, got {d}"
            )));
        }
        let order = 2 * d;
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        let mut root_powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..order {
            root_powers.push(cur.clone());
            // multiply by ζ and reduce with the monic Φ
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..deg {
                    cur[i] -= top * phi[i];
                }
            }
        }
        let units = (1..order).filter(|k| k.gcd(&order) == 1).collect();
        Ok(Arc::new(CycloCtx {
            d,
            order,
            phi,
            deg,
            root_powers,
            units,
        }))
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The order 2d of the distinguished root of unity.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(2d), the dimension of the field over Q.
    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn galois_exponents(&self) -> &[u32] {
        &self.units
    }

    pub(crate) fn root_vector(&self, k: i64) -> &[i64] {
        let e = k.rem_euclid(self.order as i64) as usize;
        &self.root_powers[e]
    }

    // ---- Z[ζ] arithmetic -------------------------------------------------

    pub fn int_zero(&self) -> CycloInt {
        CycloInt {
            coeffs: vec![BigInt::zero(); self.deg],
        }
    }

    pub fn int_root(&self, k: i64) -> CycloInt {
        CycloInt {
            coeffs: self.root_vector(k).iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn int_mul(&self, a: &CycloInt, b: &CycloInt) -> CycloInt {
        let deg = self.deg;
        let mut acc = vec![BigInt::zero(); 2 * deg - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    acc[i + j] += ai * bj;
                }
            }
        }
        self.reduce_int(acc)
    }

    fn reduce_int(&self, mut acc: Vec<BigInt>) -> CycloInt {
        let deg = self.deg;
        for e in deg..acc.len() {
            let c = std::mem::take(&mut acc[e]);
            if c.is_zero() {
                continue;
            }
            for (i, &r) in self.root_powers[e].iter().enumerate() {
                if r != 0 {
                    acc[i] += &c * r;
                }
            }
        }
        acc.truncate(deg);
        CycloInt { coeffs: acc }
    }

    /// `a*b - c*e` with a single reduction.
    pub fn int_mul_sub(&self, a: &CycloInt, b: &CycloInt, c: &CycloInt, e: &CycloInt) -> CycloInt {
        let deg = self.deg;
        let mut acc = vec![BigInt::zero(); 2 * deg - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    acc[i + j] += ai * bj;
                }
            }
        }
        for (i, ci) in c.coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, ej) in e.coeffs.iter().enumerate() {
                if !ej.is_zero() {
                    acc[i + j] -= ci * ej;
                }
            }
        }
        self.reduce_int(acc)
    }

    /// Image of `a` under the automorphism ζ ↦ ζ^k.
    pub fn int_conjugate(&self, a: &CycloInt, k: u32) -> CycloInt {
        let mut out = vec![BigInt::zero(); self.deg];
        for (j, aj) in a.coeffs.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            let v = &self.root_powers[(j as u64 * k as u64 % self.order as u64) as usize];
            for (i, &r) in v.iter().enumerate() {
                if r != 0 {
                    out[i] += aj * r;
                }
            }
        }
        CycloInt { coeffs: out }
    }

    /// Product of the non-trivial conjugates of `a` together with the norm of `a`.
    pub fn exact_divisor(&self, a: &CycloInt) -> Result<ExactDivisor> {
        if a.is_zero() {
            return Err(Error::DivisionByZero { order: self.order });
        }
        let mut cof = self.int_root(0);
        for &k in self.units.iter().filter(|&&k| k != 1) {
            cof = self.int_mul(&cof, &self.int_conjugate(a, k));
        }
        let prod = self.int_mul(a, &cof);
        debug_assert!(prod.coeffs[1..].iter().all(|c| c.is_zero()));
        let norm = prod.coeffs[0].clone();
        Ok(ExactDivisor { cofactor: cof, norm })
    }

    /// `w / v` where the quotient is known to lie in Z[ζ].
    pub fn int_exact_div(&self, w: &CycloInt, v: &ExactDivisor) -> CycloInt {
        if w.is_zero() {
            return w.clone();
        }
        let mut t = self.int_mul(w, &v.cofactor);
        for c in t.coeffs.iter_mut() {
            debug_assert!((&*c % &v.norm).is_zero(), "inexact division in Z[zeta]");
            *c = &*c / &v.norm;
        }
        t
    }

    pub fn int_to_num(self: &Arc<Self>, a: &CycloInt) -> CycloNum {
        CycloNum {
            ctx: Arc::clone(self),
            coeffs: a.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        }
    }
}

/// Precomputed data for exact division by a fixed element of Z[ζ].
#[derive(Clone, Debug)]
pub struct ExactDivisor {
    cofactor: CycloInt,
    norm: BigInt,
}

/// An element of Z[ζ_{2d}] in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloInt {
    pub coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: &BigInt) -> CycloInt {
        CycloInt {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &CycloInt) -> CycloInt {
        CycloInt {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    /// Residue of this element under ζ ↦ r in F_p.
    pub fn image_mod(&self, emb: &ModpEmbedding) -> u64 {
        self.coeffs
            .iter()
            .zip(&emb.powers)
            .fold(0u64, |acc, (c, &rp)| {
                modular::add_mod(acc, mul_mod(bigint_mod(c, emb.p), rp, emb.p), emb.p)
            })
    }
}

/// An element of Q(ζ_{2d}).
#[derive(Clone)]
pub struct CycloNum {
    ctx: Arc<CycloCtx>,
    coeffs: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// `ζ_{2d}^{k mod 2d}` in the power basis.
pub fn cyclo_root(ctx: &Arc<CycloCtx>, k: i64) -> CycloNum {
    CycloNum::root(ctx, k)
}

/// Field arithmetic with explicit errors for mixed contexts and division by zero.
pub fn cyclo_arith(x: &CycloNum, y: &CycloNum, op: ArithOp) -> Result<CycloNum> {
    x.check_ctx(y)?;
    match op {
        ArithOp::Add => Ok(x + y),
        ArithOp::Sub => Ok(x - y),
        ArithOp::Mul => Ok(x * y),
        ArithOp::Div => Ok(x * &y.inv()?),
    }
}

/// Ring-homomorphic image of `x` under ζ ↦ r in F_p.
pub fn cyclo_to_modp(x: &CycloNum, p: u64, r: u64) -> Result<u64> {
    let emb = ModpEmbedding::new(&x.ctx, p, r)?;
    emb.image(x)
}

impl CycloNum {
    pub fn zero(ctx: &Arc<CycloCtx>) -> CycloNum {
        CycloNum {
            ctx: Arc::clone(ctx),
            coeffs: vec![BigRational::zero(); ctx.deg],
        }
    }

    pub fn one(ctx: &Arc<CycloCtx>) -> CycloNum {
        CycloNum::from_rational(ctx, BigRational::one())
    }

    pub fn from_rational(ctx: &Arc<CycloCtx>, q: BigRational) -> CycloNum {
        let mut z = CycloNum::zero(ctx);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(ctx: &Arc<CycloCtx>, k: i64) -> CycloNum {
        CycloNum::from_rational(ctx, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn root(ctx: &Arc<CycloCtx>, k: i64) -> CycloNum {
        CycloNum {
            ctx: Arc::clone(ctx),
            coeffs: ctx
                .root_vector(k)
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// Builds an element from power-basis coordinates; the length must equal φ(2d).
    pub fn from_coeffs(ctx: &Arc<CycloCtx>, coeffs: Vec<BigRational>) -> Result<CycloNum> {
        if coeffs.len() != ctx.deg {
            return Err(Error::InvalidParameters(format!(
                "expected {} coordinates, got {}",
                ctx.deg,
                coeffs.len()
            )));
        }
        Ok(CycloNum {
            ctx: Arc::clone(ctx),
            coeffs,
        })
    }

    /// Reduces an arbitrary rational polynomial in ζ (low degree first) into the power basis.
    pub fn from_poly(ctx: &Arc<CycloCtx>, poly: &[BigRational]) -> CycloNum {
        let mut out = CycloNum::zero(ctx);
        for (e, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &r) in ctx.root_vector(e as i64).iter().enumerate() {
                if r != 0 {
                    out.coeffs[i] += c * BigRational::from_integer(BigInt::from(r));
                }
            }
        }
        out
    }

    pub fn ctx(&self) -> &Arc<CycloCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| &self.coeffs[0])
    }

    pub fn check_ctx(&self, other: &CycloNum) -> Result<()> {
        if self.ctx.order != other.ctx.order {
            return Err(Error::ContextMismatch {
                left: self.ctx.order,
                right: other.ctx.order,
            });
        }
        Ok(())
    }

    pub fn scale(&self, q: &BigRational) -> CycloNum {
        CycloNum {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> CycloNum {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Common denominator and integral numerator: `self = num / den`.
    pub fn to_integral(&self) -> (CycloInt, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (CycloInt { coeffs }, den)
    }

    /// Image under the automorphism ζ ↦ ζ^k (k coprime to 2d).
    pub fn conjugate(&self, k: u32) -> CycloNum {
        let mut out = CycloNum::zero(&self.ctx);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &r) in self.ctx.root_vector(j as i64 * k as i64).iter().enumerate() {
                if r != 0 {
                    out.coeffs[i] += c * BigRational::from_integer(BigInt::from(r));
                }
            }
        }
        out
    }

    pub fn inv(&self) -> Result<CycloNum> {
        let (num, den) = self.to_integral();
        let div = self.ctx.exact_divisor(&num)?;
        let scale = BigRational::new(den, div.norm.clone());
        Ok(self.ctx.int_to_num(&div.cofactor).scale(&scale))
    }

    pub fn try_div(&self, other: &CycloNum) -> Result<CycloNum> {
        cyclo_arith(self, other, ArithOp::Div)
    }

    pub fn pow(&self, mut e: u32) -> CycloNum {
        let mut base = self.clone();
        let mut acc = CycloNum::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point value at ζ = e^{πi/d}; a sanity check only.
    pub fn eval_complex(&self) -> (f64, f64) {
        let theta = std::f64::consts::PI / self.ctx.d as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let a = theta * j as f64;
            (re + v * a.cos(), im + v * a.sin())
        })
    }

    /// Power-basis coordinates as decimal strings, e.g. `["-1/9", "0"]`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [Q(zeta_{})]", self.ctx.order)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "z")?,
                1 => write!(f, "{mag}*z")?,
                _ if mag.is_one() => write!(f, "z^{j}")?,
                _ => write!(f, "{mag}*z^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn assert_same(a: &CycloNum, b: &CycloNum) {
    assert_eq!(
        a.ctx.order, b.ctx.order,
        "mixed cyclotomic contexts; use cyclo_arith for a checked operation"
    );
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'a CycloNum) -> CycloNum {
        assert_same(self, rhs);
        CycloNum {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'a CycloNum) -> CycloNum {
        assert_same(self, rhs);
        CycloNum {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        assert_same(self, rhs);
        let deg = self.ctx.deg;
        let mut acc = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
        for e in deg..acc.len() {
            let c = std::mem::take(&mut acc[e]);
            if c.is_zero() {
                continue;
            }
            for (i, &r) in self.ctx.root_powers[e].iter().enumerate() {
                if r != 0 {
                    acc[i] += &c * BigRational::from_integer(BigInt::from(r));
                }
            }
        }
        acc.truncate(deg);
        CycloNum {
            ctx: Arc::clone(&self.ctx),
            coeffs: acc,
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        &self + &rhs
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        &self - &rhs
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        &self * &rhs
    }
}

/// The ring homomorphism Z_(p)[ζ] → F_p sending ζ to a fixed root of order 2d.
#[derive(Clone, Debug)]
pub struct ModpEmbedding {
    p: u64,
    root: u64,
    powers: Vec<u64>,
}

impl ModpEmbedding {
    pub fn new(ctx: &CycloCtx, p: u64, r: u64) -> Result<ModpEmbedding> {
        let order = ctx.order as u64;
        if !modular::is_prime(p) || p % order != 1 {
            return Err(Error::InvalidParameters(format!(
                "p = {p} must be a prime congruent to 1 mod {order}"
            )));
        }
        if !modular::has_exact_order(r, order, p) {
            return Err(Error::InvalidParameters(format!(
                "r = {r} does not have multiplicative order {order} mod {p}"
            )));
        }
        let mut powers = Vec::with_capacity(ctx.deg);
        let mut cur = 1u64;
        for _ in 0..ctx.deg {
            powers.push(cur);
            cur = mul_mod(cur, r, p);
        }
        Ok(ModpEmbedding { p, root: r, powers })
    }

    /// `count` embeddings with primes just below 2^62.
    pub fn standard(ctx: &CycloCtx, count: usize) -> Vec<ModpEmbedding> {
        modular::primes_congruent_one(ctx.order as u64, count, 1 << 62)
            .into_iter()
            .map(|p| {
                let r = modular::root_of_order(ctx.order as u64, p).expect("p = 1 mod order");
                ModpEmbedding::new(ctx, p, r).expect("valid embedding")
            })
            .collect()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn image(&self, x: &CycloNum) -> Result<u64> {
        let p = self.p;
        let mut acc = 0u64;
        for (c, &rp) in x.coeffs.iter().zip(&self.powers) {
            if c.is_zero() {
                continue;
            }
            let den = modular::inv_mod(bigint_mod(c.denom(), p), p).ok_or(Error::BadPrime { p })?;
            let v = mul_mod(bigint_mod(c.numer(), p), den, p);
            acc = modular::add_mod(acc, mul_mod(v, rp, p), p);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(10), vec![1, -1, 1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn root_examples() {
        let c2 = CycloCtx::new(2).unwrap();
        assert!(cyclo_root(&c2, 0).is_one());
        assert_eq!(cyclo_root(&c2, 2), CycloNum::from_int(&c2, -1));
        let c3 = CycloCtx::new(3).unwrap();
        assert_eq!(cyclo_root(&c3, 7), cyclo_root(&c3, 1));
        assert_eq!(cyclo_root(&c3, -5), cyclo_root(&c3, 1));
    }

    #[test]
    fn root_periodicity_and_minus_one() {
        for d in 2..=14 {
            let ctx = CycloCtx::new(d).unwrap();
            assert_eq!(cyclo_root(&ctx, d as i64), CycloNum::from_int(&ctx, -1));
            for k in -30..30 {
                assert_eq!(cyclo_root(&ctx, k), cyclo_root(&ctx, k + 2 * d as i64));
            }
        }
    }

    #[test]
    fn zeta6_plus_conjugate_is_one() {
        let c3 = CycloCtx::new(3).unwrap();
        let s = &cyclo_root(&c3, 1) + &cyclo_root(&c3, 5);
        // float oracle first
        let (re, im) = s.eval_complex();
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        assert!(s.is_one());
    }

    #[test]
    fn phi6_relation() {
        let c3 = CycloCtx::new(3).unwrap();
        let z = cyclo_root(&c3, 1);
        let v = &(&(&z * &z) - &z) + &CycloNum::one(&c3);
        assert!(v.is_zero());
    }

    #[test]
    fn division_errors() {
        let c3 = CycloCtx::new(3).unwrap();
        let c4 = CycloCtx::new(4).unwrap();
        let z = cyclo_root(&c3, 1);
        assert_eq!(
            cyclo_arith(&z, &CycloNum::zero(&c3), ArithOp::Div),
            Err(Error::DivisionByZero { order: 6 })
        );
        assert_eq!(
            cyclo_arith(&z, &cyclo_root(&c4, 1), ArithOp::Add),
            Err(Error::ContextMismatch { left: 6, right: 8 })
        );
    }

    #[test]
    fn inverse_of_general_element() {
        let ctx = CycloCtx::new(5).unwrap();
        let x = CycloNum::from_coeffs(&ctx, vec![q(3, 2), q(-1, 1), q(0, 1), q(7, 3)]).unwrap();
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn modp_image_examples() {
        let c3 = CycloCtx::new(3).unwrap();
        assert_eq!(cyclo_to_modp(&CycloNum::one(&c3), 7, 3).unwrap(), 1);
        assert_eq!(cyclo_to_modp(&cyclo_root(&c3, 1), 7, 3).unwrap(), 3);
        let bad = CycloNum::from_rational(&c3, q(1, 7));
        let emb = ModpEmbedding::new(&c3, 13, 4).unwrap();
        assert_eq!(emb.image(&bad).unwrap(), 2); // 7^{-1} mod 13
        let emb7 = ModpEmbedding::new(&c3, 7, 3).unwrap();
        assert_eq!(emb7.image(&bad), Err(Error::BadPrime { p: 7 }));
        assert!(ModpEmbedding::new(&c3, 7, 2).is_err());
    }

    #[test]
    fn exact_division_in_ring() {
        let ctx = CycloCtx::new(6).unwrap();
        let a = ctx.int_root(1).add(&ctx.int_root(0).scale(&BigInt::from(3)));
        let b = ctx.int_root(5).add(&ctx.int_root(2).scale(&BigInt::from(-2)));
        let ab = ctx.int_mul(&a, &b);
        let div = ctx.exact_divisor(&b).unwrap();
        assert_eq!(ctx.int_exact_div(&ab, &div), a);
    }

    #[test]
    fn display() {
        let c3 = CycloCtx::new(3).unwrap();
        let x = cyclo_root(&c3, 4).scale(&q(-1, 9));
        assert_eq!(x.to_string(), "1/9*z");
        assert_eq!(CycloNum::zero(&c3).to_string(), "0");
    }
}
