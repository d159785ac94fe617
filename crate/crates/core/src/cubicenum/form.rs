//! Integral binary cubic forms a x³ + b x²y + c xy² + d y³ and their reduction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::nfield::ZPoly;

/// GL2(Z) matrices with entries in {−1, 0, 1}: every transition between two
/// reduced positive definite quadratic forms lies in this set.
fn small_gl2() -> &'static [[i64; 4]] {
    use std::sync::OnceLock;
    static SET: OnceLock<Vec<[i64; 4]>> = OnceLock::new();
    SET.get_or_init(|| {
        let mut v = Vec::new();
        for p in -1i64..=1 {
            for q in -1..=1 {
                for r in -1..=1 {
                    for s in -1..=1 {
                        if (p * s - q * r).abs() == 1 {
                            v.push([p, q, r, s]);
                        }
                    }
                }
            }
        }
        v
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryCubicForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl fmt::Display for BinaryCubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

impl BinaryCubicForm {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        BinaryCubicForm { a, b, c, d }
    }

    pub fn coeffs(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd.
    pub fn disc(&self) -> i128 {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d
    }

    /// Hessian covariant (P, Q, R) = (b² − 3ac, bc − 9ad, c² − 3bd),
    /// with Q² − 4PR = −3·disc.
    pub fn hessian(&self) -> (i128, i128, i128) {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        (b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)
    }

    pub fn eval(&self, x: i128, y: i128) -> i128 {
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        ((a * x + b * y) * x + c * y * y) * x + d * y * y * y
    }

    /// F(p x + q y, r x + s y) for m = [p, q, r, s].
    pub fn transform(&self, m: [i64; 4]) -> Self {
        let [p, q, r, s] = m.map(|v| v as i128);
        // coefficients of L1 = p x + q y and L2 = r x + s y as [x, y]
        let l1 = [p, q];
        let l2 = [r, s];
        let mul = |u: &[i128], v: &[i128]| {
            let mut o = vec![0i128; u.len() + v.len() - 1];
            for (i, x) in u.iter().enumerate() {
                for (j, y) in v.iter().enumerate() {
                    o[i + j] += x * y;
                }
            }
            o
        };
        let l1l1 = mul(&l1, &l1);
        let l2l2 = mul(&l2, &l2);
        let terms = [
            (self.a as i128, mul(&l1l1, &l1)),
            (self.b as i128, mul(&l1l1, &l2)),
            (self.c as i128, mul(&l1, &l2l2)),
            (self.d as i128, mul(&l2l2, &l2)),
        ];
        let mut out = [0i128; 4];
        for (k, t) in terms {
            for i in 0..4 {
                out[i] += k * t[i];
            }
        }
        let cv = |x: i128| i64::try_from(x).expect("transformed form fits in i64");
        BinaryCubicForm::new(cv(out[0]), cv(out[1]), cv(out[2]), cv(out[3]))
    }

    pub fn neg(&self) -> Self {
        BinaryCubicForm::new(-self.a, -self.b, -self.c, -self.d)
    }

    fn with_positive_lead(self) -> Self {
        if self.a < 0 {
            self.neg()
        } else {
            self
        }
    }

    /// Reducedness for an irreducible form with nonzero discriminant.
    ///
    /// disc > 0: the Hessian is positive definite and must satisfy |Q| ≤ P ≤ R.
    /// disc < 0: write F = (x − θy)·q(x, y) with θ the real root; the definite
    /// quadratic q = a x² + (b + aθ) xy + (c + bθ + aθ²) y² must be reduced.
    /// Eliminating θ gives the integer inequalities below; equality cases
    /// would force a rational root, so they never occur.
    pub fn is_reduced(&self) -> bool {
        if self.a <= 0 {
            return false;
        }
        let dsc = self.disc();
        match dsc.cmp(&0) {
            Ordering::Greater => {
                let (p, q, r) = self.hessian();
                q.abs() <= p && p <= r
            }
            Ordering::Less => {
                let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
                let m = a * d - b * c;
                -(a - b) * (a - b) - a * c < m && m < (a + b) * (a + b) + a * c && d * d - a * a + a * c - b * d > 0
            }
            Ordering::Equal => false,
        }
    }

    /// Reduced forms GL2(Z)-equivalent to a reduced `self`, up to sign,
    /// normalized to a > 0.
    fn reduced_companions(&self) -> Vec<BinaryCubicForm> {
        let mirror = BinaryCubicForm::new(self.a, -self.b, self.c, -self.d);
        if self.disc() < 0 {
            return vec![*self, mirror];
        }
        let (p, q, r) = self.hessian();
        if q.abs() < p && p < r {
            return vec![*self, mirror];
        }
        small_gl2()
            .iter()
            .map(|&m| self.transform(m).with_positive_lead())
            .filter(|g| g.is_reduced())
            .collect()
    }

    /// Whether a reduced form is the lexicographically least reduced form of its class.
    pub fn is_canonical(&self) -> bool {
        if !self.is_reduced() {
            return false;
        }
        if self.disc() < 0 {
            return self.b < 0 || (self.b == 0 && self.d < 0);
        }
        self.reduced_companions().iter().all(|g| g >= self)
    }

    /// The canonical reduced form of the GL2(Z)-class of an irreducible form.
    pub fn reduce(&self) -> Option<BinaryCubicForm> {
        if self.disc() == 0 || !self.is_irreducible() {
            return None;
        }
        let mut f = self.with_positive_lead();
        if f.disc() > 0 {
            loop {
                let (p, q, r) = f.hessian();
                if q.abs() > p {
                    // x → x + k y moves Q by 2kP
                    let k = round_div(-q, 2 * p);
                    f = f.transform([1, k as i64, 0, 1]).with_positive_lead();
                } else if p > r {
                    f = f.transform([0, -1, 1, 0]).with_positive_lead();
                } else {
                    break;
                }
            }
        } else {
            for _ in 0..200 {
                let theta = real_root(&f);
                let (a, b, c) = (f.a as f64, f.b as f64, f.c as f64);
                let s = b + a * theta;
                let t = c + b * theta + a * theta * theta;
                if s.abs() > a {
                    let k = (-s / (2.0 * a)).round() as i64;
                    f = f.transform([1, k, 0, 1]).with_positive_lead();
                } else if a > t {
                    f = f.transform([0, -1, 1, 0]).with_positive_lead();
                } else {
                    break;
                }
            }
            if !f.is_reduced() {
                // floating point landed next to the reduced form
                f = small_gl2()
                    .iter()
                    .flat_map(|&m| (-2..=2).map(move |k| (m, k)))
                    .map(|(m, k)| f.transform(m).transform([1, k, 0, 1]).with_positive_lead())
                    .find(|g| g.is_reduced())?;
            }
        }
        f.reduced_companions().into_iter().min()
    }

    /// No root in P¹(Q).
    pub fn is_irreducible(&self) -> bool {
        if self.a == 0 || self.d == 0 {
            return false;
        }
        for p in [2i64, 3, 5, 7, 11, 13] {
            if !self.has_root_mod(p) {
                return true;
            }
        }
        // rational roots u/v with v | a and u | d
        let du = divisors(self.d.unsigned_abs());
        let dv = divisors(self.a.unsigned_abs());
        for &u in &du {
            for &v in &dv {
                for su in [-1i128, 1] {
                    if self.eval(su * u as i128, v as i128) == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn has_root_mod(&self, p: i64) -> bool {
        let pm = p as i128;
        if self.a.rem_euclid(p) == 0 {
            return true;
        }
        (0..p).any(|u| self.eval(u as i128, 1).rem_euclid(pm) == 0)
    }

    /// Whether the cubic ring attached to the form is maximal at p.
    ///
    /// It fails exactly when F ≡ 0 mod p, or F has a multiple root (u : v)
    /// modulo p with F(u, v) ≡ 0 mod p² (any lift works, since both partial
    /// derivatives vanish mod p there).
    pub fn is_maximal_at(&self, p: u64) -> bool {
        let pi = p as i128;
        let p2 = pi * pi;
        let cs = self.coeffs();
        if cs.iter().all(|&x| (x as i128).rem_euclid(pi) == 0) {
            return false;
        }
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let fx = |x: i128, y: i128| 3 * a * x * x + 2 * b * x * y + c * y * y;
        let fy = |x: i128, y: i128| b * x * x + 2 * c * x * y + 3 * d * y * y;
        let singular = |x: i128, y: i128| {
            self.eval(x, y).rem_euclid(pi) == 0 && fx(x, y).rem_euclid(pi) == 0 && fy(x, y).rem_euclid(pi) == 0
        };
        if singular(1, 0) && a.rem_euclid(p2) == 0 {
            return false;
        }
        for u in 0..pi {
            if singular(u, 1) && self.eval(u, 1).rem_euclid(p2) == 0 {
                return false;
            }
        }
        true
    }

    /// F(x, 1).
    pub fn poly(&self) -> ZPoly {
        ZPoly::from_i64(&[self.d, self.c, self.b, self.a])
    }

    /// x³ + b x² + ac x + a²d, the minimal polynomial of aθ; its discriminant is a²·disc.
    pub fn monic_poly(&self) -> ZPoly {
        let a = BigInt::from(self.a);
        ZPoly::new(vec![
            &a * &a * BigInt::from(self.d),
            &a * BigInt::from(self.c),
            BigInt::from(self.b),
            BigInt::from(1),
        ])
    }
}

fn round_div(n: i128, d: i128) -> i128 {
    // nearest integer to n/d, d > 0
    (2 * n + d).div_euclid(2 * d)
}

/// The real root of F(x, 1) for a form with negative discriminant.
fn real_root(f: &BinaryCubicForm) -> f64 {
    let (a, b, c, d) = (f.a as f64, f.b as f64, f.c as f64, f.d as f64);
    let g = |x: f64| ((a * x + b) * x + c) * x + d;
    let bound = 1.0 + (b.abs().max(c.abs()).max(d.abs())) / a.abs();
    let (mut lo, mut hi) = (-bound, bound);
    let up = g(hi) > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) == up {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in crate::arith::factor_u64(n) {
        let cur = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(cur.iter().map(|x| x * pk));
        }
    }
    out
}
