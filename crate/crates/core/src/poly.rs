//! Univariate polynomials over Q and their rational roots.
//!
//! Coefficients are stored low degree first with no trailing zeros; the zero polynomial
//! is the empty vector.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::modular::{self, bigint_mod};

pub type QPoly = Vec<BigRational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &QPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn eval(p: &QPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Newton interpolation through `(xs[k], ys[k])`.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> QPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // expand the Newton form
    let mut p: QPoly = vec![BigRational::zero(); n.max(1)];
    for i in (0..n).rev() {
        // p = p * (x - xs[i]) + coef[i]
        let mut next = vec![BigRational::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xs[i];
        }
        next[0] += &coef[i];
        p = next;
    }
    trim(&mut p);
    p
}

fn monic(p: &QPoly) -> QPoly {
    match p.last() {
        None => Vec::new(),
        Some(lead) => p.iter().map(|c| c / lead).collect(),
    }
}

fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor");
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / lead;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &f * c;
        }
        trim(&mut r);
    }
    r
}

/// `(a / b, a mod b)`.
pub fn div_rem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor");
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / lead;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &f * c;
        }
        q[shift] = f;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Monic gcd; the gcd of zero polynomials is zero.
pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

pub fn derivative(p: &QPoly) -> QPoly {
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(k.into()))
        .collect();
    trim(&mut d);
    d
}

/// Scales to a primitive integer polynomial with positive leading coefficient.
pub fn primitive_part(p: &QPoly) -> Vec<BigInt> {
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut v: Vec<BigInt> = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

fn to_q(v: &[BigInt]) -> QPoly {
    v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn eval_mod(p: &[u64], x: u64, m: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| modular::add_mod(modular::mul_mod(acc, x, m), c, m))
}

fn eval_big(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Degree of gcd(f, f') over F_p, used to test that the reduction stays squarefree.
fn squarefree_mod(f: &[u64], p: u64) -> bool {
    fn trim_mod(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = modular::inv_mod(*b.last().unwrap(), p).unwrap();
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let f = modular::mul_mod(*r.last().unwrap(), inv, p);
            for (k, &c) in b.iter().enumerate() {
                r[shift + k] = modular::sub_mod(r[shift + k], modular::mul_mod(f, c, p), p);
            }
            trim_mod(&mut r);
        }
        r
    }
    let mut a = f.to_vec();
    trim_mod(&mut a);
    let mut b: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| modular::mul_mod(c, k as u64 % p, p))
        .collect();
    trim_mod(&mut b);
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Rational `u/v` with `|u|, v <= bound` congruent to `a` mod `m`, if one exists.
fn rational_reconstruction(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// All distinct rational roots, sorted increasingly.
pub fn rational_roots(p: &QPoly) -> Vec<BigRational> {
    let mut p = p.clone();
    trim(&mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(BigRational::zero());
        p.drain(..zeros);
    }
    if p.len() > 1 {
        let g = gcd(&p, &derivative(&p));
        let sqf = if g.len() > 1 { div_rem(&p, &g).0 } else { p.clone() };
        roots.extend(nonzero_roots_squarefree(&primitive_part(&sqf)));
    }
    roots.sort();
    roots
}

fn nonzero_roots_squarefree(f: &[BigInt]) -> Vec<BigRational> {
    let deg = f.len() - 1;
    if deg == 1 {
        return vec![BigRational::new(-&f[0], f[1].clone())];
    }
    let lead = &f[deg];
    let prime = (1000u64..)
        .filter(|&q| modular::is_prime(q))
        .find(|&q| {
            bigint_mod(lead, q) != 0 && {
                let fm: Vec<u64> = f.iter().map(|c| bigint_mod(c, q)).collect();
                squarefree_mod(&fm, q)
            }
        })
        .expect("some prime keeps the polynomial squarefree");
    let fm: Vec<u64> = f.iter().map(|c| bigint_mod(c, prime)).collect();
    let dfm: Vec<u64> = fm
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| modular::mul_mod(c, k as u64, prime))
        .collect();
    // |u| <= |f_0|, |v| <= |f_deg|; the modulus must exceed 2·B^2
    let bound = f[0].abs().max(lead.abs());
    let target: BigInt = &bound * &bound * 2u32;
    let fq = to_q(f);
    let p_big = BigInt::from(prime);
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(k, c)| c * k).collect();
    let mut out = Vec::new();
    for r0 in 0..prime {
        if eval_mod(&fm, r0, prime) != 0 {
            continue;
        }
        let dinv = modular::inv_mod(eval_mod(&dfm, r0, prime), prime).expect("simple root");
        // Newton lifting with quadratic convergence
        let mut m = p_big.clone();
        let mut r = BigInt::from(r0);
        let mut dinv = BigInt::from(dinv);
        while m <= target {
            let m2 = &m * &m;
            let fr = eval_big(f, &r, &m2);
            r = (&r - &fr * &dinv).mod_floor(&m2);
            // refresh the inverse of f'(r) modulo m2
            let dr = eval_big(&df, &r, &m2);
            let e = (BigInt::from(2) - &dr * &dinv).mod_floor(&m2);
            dinv = (&dinv * e).mod_floor(&m2);
            m = m2;
        }
        if let Some(q) = rational_reconstruction(&r, &m, &bound) {
            if eval(&fq, &q).is_zero() && !q.is_zero() {
                out.push(q);
            }
        }
    }
    out
}

/// Compact text form, e.g. `3*x^2 - 1/2*x + 4`.
pub fn to_string(p: &QPoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.numer().sign() == Sign::Minus;
        let mag = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        if mono.is_empty() {
            s.push_str(&mag.to_string());
        } else if mag.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{mag}*{mono}"));
        }
    }
    s
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn from_roots(roots: &[BigRational], lead: i64) -> QPoly {
        let mut p: QPoly = vec![q(lead, 1)];
        for r in roots {
            let mut next = vec![BigRational::zero(); p.len() + 1];
            for (k, c) in p.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            p = next;
        }
        p
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p: QPoly = vec![q(3, 1), q(-1, 2), q(0, 1), q(5, 7)];
        let xs: Vec<_> = (1..=4).map(|k| q(k, 1)).collect();
        let ys: Vec<_> = xs.iter().map(|x| eval(&p, x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }

    #[test]
    fn roots_with_multiplicity_and_zero() {
        let roots = [q(-1, 1), q(-1, 1), q(2, 3), q(0, 1), q(0, 1), q(7, 5)];
        let mut p = from_roots(&roots, 6);
        // an irreducible quadratic factor contributes no rational roots
        let quad: QPoly = vec![q(2, 1), q(0, 1), q(1, 1)];
        let mut prod = vec![BigRational::zero(); p.len() + 2];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in quad.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        p = prod;
        assert_eq!(rational_roots(&p), vec![q(-1, 1), q(0, 1), q(2, 3), q(7, 5)]);
    }

    #[test]
    fn roots_with_large_coefficients() {
        let r1 = q(123_456_789, 987_654_321);
        let r2 = q(-1_000_003, 17);
        let p = from_roots(&[r1.clone(), r2.clone(), q(5, 1)], 1_000_000_007);
        assert_eq!(rational_roots(&p), vec![r2, r1, q(5, 1)]);
        assert!(rational_roots(&vec![q(1, 1), q(0, 1), q(1, 1)]).is_empty());
        assert!(rational_roots(&vec![q(4, 1)]).is_empty());
    }

    #[test]
    fn gcd_of_products() {
        let a = from_roots(&[q(1, 1), q(2, 1), q(3, 1)], 2);
        let b = from_roots(&[q(2, 1), q(3, 1), q(-4, 1)], -5);
        assert_eq!(gcd(&a, &b), from_roots(&[q(2, 1), q(3, 1)], 1));
        assert_eq!(to_string(&vec![q(4, 1), q(-1, 2), q(3, 1)]), "3*x^2 - 1/2*x + 4");
    }
}
