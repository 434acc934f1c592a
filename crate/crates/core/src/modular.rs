//! Word-sized prime field helpers used by the modular rank path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Reduce a big integer into `[0, p)`.
pub fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns `true` when `r` has multiplicative order exactly `order` modulo `p`.
pub fn has_exact_order(r: u64, order: u64, p: u64) -> bool {
    if r.is_multiple_of(p) || pow_mod(r, order, p) != 1 {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|q| pow_mod(r, order / q, p) != 1)
}

/// Smallest element of exact multiplicative order `order` obtained as `g^((p-1)/order)`.
pub fn root_of_order(order: u64, p: u64) -> Option<u64> {
    if !(p - 1).is_multiple_of(order) {
        return None;
    }
    (2..p.min(10_000)).find_map(|g| {
        let h = pow_mod(g, (p - 1) / order, p);
        has_exact_order(h, order, p).then_some(h)
    })
}

/// Primes `p ≡ 1 (mod order)` strictly below `below`, scanning downwards.
pub fn primes_congruent_one(order: u64, count: usize, below: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    if below <= order + 1 {
        return out;
    }
    let mut p = below - 1;
    p -= (p - 1) % order;
    while out.len() < count && p > order {
        if is_prime(p) {
            out.push(p);
        }
        p -= order;
    }
    out
}

/// Rank of a dense matrix over F_p by Gaussian elimination; the input is consumed.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p).expect("nonzero pivot");
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let f = mul_mod(f, inv, p);
            for j in col..ncols {
                if pivot_row[j] != 0 {
                    row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j], p), p);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Signed residue in `(-p/2, p/2]`, handy for printing.
pub fn symmetric(x: u64, p: u64) -> i128 {
    if x > p / 2 {
        x as i128 - p as i128
    } else {
        x as i128
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0u64..5000 {
            let trial = n >= 2 && (2..n).take_while(|q| q * q <= n).all(|q| n % q != 0);
            assert_eq!(is_prime(n), trial, "n = {n}");
        }
        assert!(is_prime(2_305_843_009_213_693_951));
    }

    #[test]
    fn three_has_order_six_mod_seven() {
        assert!(has_exact_order(3, 6, 7));
        assert!(!has_exact_order(2, 6, 7));
        for k in 1..6 {
            assert_ne!(pow_mod(3, k, 7), 1);
        }
        assert_eq!(pow_mod(3, 6, 7), 1);
    }

    #[test]
    fn primes_are_congruent_one() {
        for p in primes_congruent_one(12, 5, 1 << 61) {
            assert!(is_prime(p));
            assert_eq!(p % 12, 1);
            let r = root_of_order(12, p).unwrap();
            assert!(has_exact_order(r, 12, p));
        }
    }

    #[test]
    fn rank_mod_p_small() {
        let p = 101;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank_mod_p(m, p), 2);
        assert_eq!(rank_mod_p(vec![vec![0, 0], vec![0, 0]], p), 0);
    }
}
