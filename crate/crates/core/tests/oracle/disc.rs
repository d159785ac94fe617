//! Maximal-order discriminant by exhaustive search: starting from Z[θ],
//! repeatedly look for an integral element in (1/p)·O \ O and adjoin it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

struct Power {
    /// monic, low to high
    f: Vec<BigInt>,
    n: usize,
}

impl Power {
    fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.n;
        let mut prod = vec![Q::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (n..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[k], Q::zero());
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                prod[k - n + i] -= &c * Q::from_integer(self.f[i].clone());
            }
        }
        prod.truncate(n);
        prod
    }

    /// Tr(θ^k) for k < 2n − 1 by Newton's identities.
    fn power_traces(&self) -> Vec<BigInt> {
        let n = self.n;
        let a = |i: usize| &self.f[i];
        let mut s = vec![BigInt::from(n as i64)];
        for k in 1..(2 * n - 1) {
            let mut v = BigInt::zero();
            for i in 1..=k.min(n) {
                if i < k {
                    v -= a(n - i) * &s[k - i];
                }
            }
            if k <= n {
                v -= BigInt::from(k as i64) * a(n - k);
            }
            s.push(v);
        }
        s
    }

    fn charpoly(&self, x: &[Q]) -> Vec<Q> {
        let n = self.n;
        // columns x·θ^j
        let mut a = vec![vec![Q::zero(); n]; n];
        let mut col: Vec<Q> = x.to_vec();
        let mut theta = vec![Q::zero(); n];
        if n > 1 {
            theta[1] = Q::one();
        }
        for j in 0..n {
            for i in 0..n {
                a[i][j] = col[i].clone();
            }
            if n > 1 {
                col = self.mul(&col, &theta);
            }
        }
        // Faddeev–LeVerrier
        let mut c = vec![Q::zero(); n + 1];
        c[n] = Q::one();
        let mut m = vec![vec![Q::zero(); n]; n];
        for k in 1..=n {
            let mut next = vec![vec![Q::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = Q::zero();
                    for l in 0..n {
                        if !m[l][j].is_zero() && !a[i][l].is_zero() {
                            s += &a[i][l] * &m[l][j];
                        }
                    }
                    next[i][j] = s;
                }
                next[i][i] += &c[n - k + 1];
            }
            let mut tr = Q::zero();
            for i in 0..n {
                for l in 0..n {
                    tr += &a[i][l] * &next[l][i];
                }
            }
            c[n - k] = -tr / q(k as i64);
            m = next;
        }
        c
    }
}

fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    d
}

/// Integer row HNF; returns the nonzero rows.
fn hnf(mut rows: Vec<Vec<BigInt>>, n: usize) -> Vec<Vec<BigInt>> {
    let mut r0 = 0;
    for c in 0..n {
        loop {
            let nz: Vec<usize> = (r0..rows.len()).filter(|&r| !rows[r][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&r| rows[r][c].abs()).unwrap();
            rows.swap(r0, p);
            let mut done = true;
            for r in r0 + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let t = rows[r][c].div_floor(&rows[r0][c]);
                for k in 0..n {
                    let v = &t * &rows[r0][k];
                    rows[r][k] -= v;
                }
                if !rows[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                r0 += 1;
                break;
            }
        }
    }
    rows.truncate(r0);
    rows
}

fn small_square_primes(d: &BigInt) -> Vec<u64> {
    let mut r = d.abs();
    let mut out = Vec::new();
    let cube = r.cbrt().to_u64().unwrap_or(u64::MAX).max(2);
    let mut p = 2u64;
    while p <= cube + 1 {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&r % &bp).is_zero() {
            r /= &bp;
            e += 1;
        }
        if e >= 2 {
            out.push(p);
        }
        p += 1;
    }
    let s = r.sqrt();
    if &s * &s == r && s > BigInt::one() {
        out.push(s.to_u64().expect("square factor fits"));
    }
    out
}

/// (d_K, index) for a monic irreducible integer polynomial, low-to-high coefficients.
pub fn maximal_disc(coeffs: &[i64]) -> (BigInt, BigInt) {
    let n = coeffs.len() - 1;
    assert_eq!(coeffs[n], 1);
    let pw = Power { f: coeffs.iter().map(|&c| BigInt::from(c)).collect(), n };
    let tr = pw.power_traces();
    let trace = |v: &[Q]| -> Q { v.iter().enumerate().map(|(k, c)| c * Q::from_integer(tr[k].clone())).sum() };

    let mut basis: Vec<Vec<Q>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    let gram = |b: &[Vec<Q>]| -> Vec<Vec<Q>> {
        (0..n).map(|i| (0..n).map(|j| trace(&pw.mul(&b[i], &b[j]))).collect()).collect()
    };
    let poly_disc = det(gram(&basis)).to_integer();
    for p in small_square_primes(&poly_disc) {
        let pq = Q::from_integer(BigInt::from(p));
        assert!((p as u128).pow(n as u32) <= 200_000, "oracle search too large at p = {p}");
        'grow: loop {
            let g = gram(&basis);
            let disc = det(g.clone()).to_integer();
            if !(&disc % BigInt::from(p * p)).is_zero() {
                break;
            }
            let p2 = (p * p) as i128;
            let t1: Vec<i128> =
                basis.iter().map(|b| (trace(b).to_integer() % BigInt::from(p)).to_i128().unwrap()).collect();
            let t2: Vec<Vec<i128>> =
                g.iter().map(|r| r.iter().map(|v| (v.to_integer() % BigInt::from(p2)).to_i128().unwrap()).collect()).collect();
            let mut c = vec![0u64; n];
            loop {
                let mut k = 0;
                while k < n {
                    c[k] += 1;
                    if c[k] < p {
                        break;
                    }
                    c[k] = 0;
                    k += 1;
                }
                if k == n {
                    break 'grow;
                }
                let s1: i128 = (0..n).map(|i| c[i] as i128 * t1[i]).sum();
                if s1 % p as i128 != 0 {
                    continue;
                }
                let mut s2: i128 = 0;
                for i in 0..n {
                    for j in 0..n {
                        s2 = (s2 + c[i] as i128 * c[j] as i128 % p2 * t2[i][j]) % p2;
                    }
                }
                if s2 % p2 != 0 {
                    continue;
                }
                let mut x = vec![Q::zero(); n];
                for i in 0..n {
                    for k in 0..n {
                        x[k] += &basis[i][k] * q(c[i] as i64);
                    }
                }
                let x: Vec<Q> = x.into_iter().map(|v| v / &pq).collect();
                if pw.charpoly(&x).iter().all(|v| v.is_integer()) {
                    let mut rows = basis.clone();
                    rows.push(x);
                    let den = rows.iter().flatten().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
                    let ints: Vec<Vec<BigInt>> = rows
                        .iter()
                        .map(|r| r.iter().map(|v| (v * Q::from_integer(den.clone())).to_integer()).collect())
                        .collect();
                    let h = hnf(ints, n);
                    assert_eq!(h.len(), n);
                    basis = h
                        .into_iter()
                        .map(|r| r.into_iter().map(|v| Q::new(v, den.clone())).collect())
                        .collect();
                    continue 'grow;
                }
            }
        }
    }
    let d_k = det(gram(&basis)).to_integer();
    let index = (&poly_disc / &d_k).sqrt();
    assert_eq!(&index * &index * &d_k, poly_disc);
    (d_k, index)
}
