//! Small dense linear algebra over Z, Q and F_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::QPoly;
use crate::exactnum::Rational;

pub type QMat = Vec<Vec<Rational>>;

/// Fraction-free (Bareiss) determinant.
pub fn det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn identity(n: usize) -> QMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

/// Row vector times matrix.
pub fn vec_mul(v: &[Rational], m: &QMat) -> Vec<Rational> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![Rational::zero(); cols];
    for (a, row) in v.iter().zip(m) {
        if a.is_zero() {
            continue;
        }
        for (o, b) in out.iter_mut().zip(row) {
            *o += a * b;
        }
    }
    out
}

pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m.iter().zip(identity(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Rational::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det_rat(m: &QMat) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for j in col..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    det
}

/// Characteristic polynomial det(xI − A) by Faddeev–LeVerrier.
pub fn charpoly(a: &QMat) -> QPoly {
    let n = a.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k−1} + c_{n−k+1} I
        let mut next = mat_mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mat_mul(a, &mk);
        let tr: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    QPoly::new(c)
}

/// Rank of a rational matrix.
pub fn rank(m: &QMat) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..rows {
            if !a[i][col].is_zero() {
                let f = &a[i][col] / &a[r][col];
                for j in col..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Vectors y (length = rows) with y·M = 0 over F_p; a basis of the left kernel.
pub fn left_kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    // row-reduce [M | I]; zero rows of the M part carry kernel vectors
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v: Vec<u64> = r.iter().map(|x| x % p).collect();
            v.extend((0..rows).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][col], p);
        for x in a[r].iter_mut() {
            *x = mulm(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..cols + rows {
                    let t = mulm(f, a[r][j], p);
                    a[i][j] = (a[i][j] + p - t) % p;
                }
            }
        }
        r += 1;
    }
    a[r..].iter().map(|row| row[cols..].to_vec()).collect()
}

pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(p as i128) as u64
}

/// Row Hermite normal form of a full-column-rank integer lattice: an upper
/// triangular basis with positive pivots and reduced entries above them.
pub fn hnf_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..cols {
        // gcd-combine all remaining rows into a single pivot row
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::new();
        for r in rows.into_iter() {
            if r[col].is_zero() {
                if r.iter().any(|x| !x.is_zero()) {
                    rest.push(r);
                }
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(pv) => {
                    let e = pv[col].extended_gcd(&r[col]);
                    let (a, b) = (&pv[col] / &e.gcd, &r[col] / &e.gcd);
                    let new_p: Vec<BigInt> = pv.iter().zip(&r).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let other: Vec<BigInt> = pv.iter().zip(&r).map(|(x, y)| &b * x - &a * y).collect();
                    if other.iter().any(|x| !x.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        rows = rest;
        if let Some(mut pv) = pivot {
            if pv[col].is_negative() {
                pv.iter_mut().for_each(|x| *x = -&*x);
            }
            out.push(pv);
        }
    }
    // reduce above pivots
    for i in 0..out.len() {
        let pc = (0..cols).find(|&c| !out[i][c].is_zero()).unwrap();
        for k in 0..i {
            let q = out[k][pc].div_floor(&out[i][pc]);
            if !q.is_zero() {
                let sub: Vec<BigInt> = out[i].iter().map(|x| x * &q).collect();
                for (a, s) in out[k].iter_mut().zip(sub) {
                    *a -= s;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn zi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinants_and_inverse() {
        assert_eq!(det_int(zi(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(det_int(zi(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])), BigInt::from(-2));
        let q: QMat = vec![vec![rat(1, 2), rat(1, 1)], vec![rat(0, 1), rat(3, 1)]];
        let inv = inverse(&q).unwrap();
        assert_eq!(mat_mul(&q, &inv), identity(2));
        assert_eq!(det_rat(&q), rat(3, 2));
    }

    #[test]
    fn charpoly_companion() {
        // companion matrix of x³ − x − 1 (multiplication by θ)
        let m: QMat = vec![
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1), rat(0, 1)],
        ];
        assert_eq!(charpoly(&m).coeffs(), &[rat(-1, 1), rat(-1, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn hnf_and_kernel() {
        let h = hnf_rows(zi(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(h, zi(&[&[1, 1], &[0, 2]]));
        let k = left_kernel_mod_p(&[vec![1, 1], vec![1, 1], vec![0, 1]], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![1, 1, 0]);
    }
}
