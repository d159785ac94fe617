//! Polynomials over F_p and their factorization (Cantor–Zassenhaus).

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{inv_mod, mulm};
use super::poly::ZPoly;

#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_zpoly(f: &ZPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            f.coeffs()
                .iter()
                .map(|a| {
                    let r = a % &pb;
                    let r = if r < BigInt::zero() { r + &pb } else { r };
                    r.to_u64().unwrap()
                })
                .collect(),
        )
    }

    /// Lift with coefficients in [0, p).
    pub fn to_zpoly(&self) -> ZPoly {
        ZPoly::new(self.c.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = inv_mod(l, self.p);
                Self::new(self.p, self.c.iter().map(|&a| mulm(a, inv, self.p)).collect())
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let g = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(self.p, (0..n).map(|i| (g(&self.c, i) + g(&o.c, i)) % self.p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let g = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        Self::new(self.p, (0..n).map(|i| (g(&self.c, i) + self.p - g(&o.c, i)) % self.p).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p as u128;
            }
        }
        Self::new(p, out.into_iter().map(|x| x as u64).collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        let p = self.p;
        let dn = d.degree();
        if self.c.len() <= dn {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(*d.c.last().unwrap(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.c.len() - dn];
        for i in (0..q.len()).rev() {
            let coef = mulm(r[i + dn], inv, p);
            if coef != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mulm(coef, b, p)) % p;
                }
            }
            q[i] = coef;
        }
        r.truncate(dn);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn div(&self, d: &Self) -> Self {
        self.divrem(d).0
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·o = g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let l = *r0.c.last().unwrap_or(&1);
        let inv = Self::new(p, vec![inv_mod(l, p)]);
        (r0.mul(&inv), s0.mul(&inv), t0.mul(&inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(p, self.c.iter().enumerate().skip(1).map(|(i, &a)| mulm(a, i as u64 % p, p)).collect())
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }
}

/// Square-free decomposition of a monic polynomial: pairs (g, multiplicity).
pub fn squarefree_factorization(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div(&c);
    let mut i = 1;
    while !w.is_one() && !w.is_zero() {
        let y = w.gcd(&c);
        let fac = w.div(&y);
        if fac.degree() > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div(&w);
        i += 1;
    }
    if c.degree() > 0 {
        // c is a p-th power: take the p-th root coefficientwise
        let root = FpPoly::new(p, c.c.iter().step_by(p as usize).copied().collect());
        for (g, m) in squarefree_factorization(&root.monic()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a square-free monic polynomial.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 1;
    while rest.degree() >= 2 * d {
        h = h.pow_mod(&pe, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.degree() > 0 {
            rest = rest.div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let dd = rest.degree();
        out.push((rest, dd));
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree d.
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a² + … + a^{2^{d−1}}
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&e, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        if g.degree() > 0 && g.degree() < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div(&g), d, rng));
            return out;
        }
    }
}

/// Complete factorization of a nonzero polynomial into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients).
pub fn factor_mod_p(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ f.p);
    let mut out = Vec::new();
    for (g, m) in squarefree_factorization(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.c.cmp(&b.0.c)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn factor_shapes() {
        // x³ − x − 1 ≡ (x − 3)(x − 10)² mod 23
        let f = FpPoly::from_zpoly(&ZPoly::from_i64(&[-1, -1, 0, 1]), 23);
        let fac = factor_mod_p(&f);
        let shape: Vec<(usize, u32)> = fac.iter().map(|(g, m)| (g.degree(), *m)).collect();
        assert_eq!(shape, vec![(1, 2), (1, 1)]);
        assert_eq!(fac[0].0, fp(23, &[13, 1]));
        assert_eq!(fac[1].0, fp(23, &[20, 1]));
        let f2 = FpPoly::from_zpoly(&ZPoly::from_i64(&[-1, -1, 0, 1]), 2);
        assert_eq!(factor_mod_p(&f2).len(), 1);
        // (x² + x + 1)²·x³ over F_2 exercises the p-th root branch
        let g = fp(2, &[1, 1, 1]);
        let h = g.mul(&g).mul(&fp(2, &[0, 0, 0, 1]));
        let fac = factor_mod_p(&h);
        assert_eq!(fac, vec![(fp(2, &[0, 1]), 3), (g, 2)]);
    }

    #[test]
    fn factors_multiply_back() {
        for p in [2u64, 3, 5, 7, 101, 65537] {
            let f = FpPoly::new(p, vec![3, 0, 5, 1, 2, 7, 0, 1, 1]).monic();
            let fac = factor_mod_p(&f);
            let prod = fac.iter().fold(FpPoly::one(p), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)));
            assert_eq!(prod, f, "p = {p}");
            let (g, s, t) = f.xgcd(&f.derivative());
            assert_eq!(s.mul(&f).add(&t.mul(&f.derivative())), g);
        }
    }
}
