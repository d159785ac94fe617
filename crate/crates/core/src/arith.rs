//! Integer helpers: primality, factorization, roots.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primes up to `limit` (inclusive) by a plain sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

fn pollard_brent_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut ys = 2u64;
        let mut r = 1u64;
        let m = 64u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorization of a positive 64-bit integer.
pub fn factor_u64(n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    if n <= 1 {
        return out;
    }
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_brent_u64(m);
        stack.push(d);
        stack.push(m / d);
    }
    out
}

fn big_pow_mod(base: &BigUint, exp: &BigUint, m: &BigUint) -> BigUint {
    base.modpow(exp, m)
}

/// Miller-Rabin with the first 20 prime bases. Deterministic for inputs
/// below 3.3e24 and overwhelmingly reliable above that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = &one + &one;
    if n.is_even() {
        return false;
    }
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in primes_up_to(71) {
        let a = BigUint::from(a);
        let mut x = big_pow_mod(&a, &d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = big_pow_mod(&x, &two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x;
        let mut g = one.clone();
        let mut q = one.clone();
        let mut ys = y.clone();
        let mut r = 1u64;
        let m = 128u64;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            if g != one {
                break;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// Prime factorization of |n| for n != 0. Sign and units are dropped.
pub fn factor_big(n: &BigInt) -> BTreeMap<BigInt, u32> {
    let mut out: BTreeMap<BigInt, u32> = BTreeMap::new();
    let mut m = n.magnitude().clone();
    if m.is_zero() {
        return out;
    }
    if let Some(small) = m.to_u64() {
        for (p, e) in factor_u64(small) {
            out.insert(BigInt::from(p), e);
        }
        return out;
    }
    for p in primes_up_to(10_000) {
        let pb = BigUint::from(p);
        if (&m % &pb).is_zero() {
            let mut e = 0;
            while (&m % &pb).is_zero() {
                m /= &pb;
                e += 1;
            }
            out.insert(BigInt::from(p), e);
        }
        if m.is_one() {
            return out;
        }
    }
    let mut stack = vec![m];
    while let Some(x) = stack.pop() {
        if x.is_one() {
            continue;
        }
        if let Some(small) = x.to_u64() {
            for (p, e) in factor_u64(small) {
                *out.entry(BigInt::from(p)).or_insert(0) += e;
            }
            continue;
        }
        if is_probable_prime(&x) {
            *out.entry(BigInt::from_biguint(Sign::Plus, x)).or_insert(0) += 1;
            continue;
        }
        if let Some(r) = perfect_power_root(&x) {
            // x = r^k: split into k copies of r
            let mut y = x.clone();
            while (&y % &r).is_zero() {
                y /= &r;
                stack.push(r.clone());
            }
            stack.push(y);
            continue;
        }
        let d = pollard_brent_big(&x);
        let rest = &x / &d;
        stack.push(d);
        stack.push(rest);
    }
    out
}

fn perfect_power_root(x: &BigUint) -> Option<BigUint> {
    let bits = x.bits() as u32;
    for k in 2..=bits.max(2) {
        let r = x.nth_root(k);
        if r <= BigUint::one() {
            break;
        }
        if r.pow(k) == *x {
            return Some(r);
        }
    }
    None
}

/// Floor square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative");
    n.sqrt()
}

/// Exact integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_square_i64(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).any(|s| s >= 0 && s * s == n)
}

/// Multiplicative order helpers for Euler phi and friends.
pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// Valuation of `p` in `n` (n != 0).
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut m = n.abs();
    let mut v = 0;
    if m.is_zero() {
        return u32::MAX;
    }
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

/// Squarefree part of a positive integer (product of primes with odd exponent).
pub fn squarefree_kernel_u64(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product()
}

pub fn is_squarefree_u64(n: u64) -> bool {
    factor_u64(n).values().all(|&e| e == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
    }

    #[test]
    fn factors_u64() {
        let f = factor_u64(2u64.pow(11) * 3u64.pow(7));
        assert_eq!(f.get(&2), Some(&11));
        assert_eq!(f.get(&3), Some(&7));
        let f = factor_u64(1_000_000_007 * 998_244_353);
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn factors_big() {
        let n: BigInt = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64)
            * BigInt::from(1_000_000_009u64)
            * BigInt::from(49);
        let f = factor_big(&n);
        assert_eq!(f.len(), 4);
        assert_eq!(f[&BigInt::from(7)], 2);
        let n = BigInt::from(1_000_000_007u64).pow(3);
        let f = factor_big(&n);
        assert_eq!(f[&BigInt::from(1_000_000_007u64)], 3);
    }

    #[test]
    fn roots() {
        assert_eq!(exact_sqrt(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(exact_sqrt(&BigInt::from(50)), None);
        assert_eq!(euler_phi(120), 32);
        assert_eq!(squarefree_kernel_u64(72), 2);
    }
}
