use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Rational;

/// Closed interval [lo / 2^exp, hi / 2^exp].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub exp: u32,
}

impl DyadicInterval {
    pub fn exact_zero(exp: u32) -> Self {
        DyadicInterval { lo: BigInt::zero(), hi: BigInt::zero(), exp }
    }

    pub fn enclose_rational(r: &Rational, exp: u32) -> Self {
        let scaled = r * Rational::from_integer(BigInt::from(1) << exp);
        DyadicInterval { lo: scaled.floor().to_integer(), hi: scaled.ceil().to_integer(), exp }
    }

    pub fn lo_rational(&self) -> Rational {
        Rational::new(self.lo.clone(), BigInt::from(1) << self.exp)
    }

    pub fn hi_rational(&self) -> Rational {
        Rational::new(self.hi.clone(), BigInt::from(1) << self.exp)
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo_rational())
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi_rational())
    }

    /// ⌈log2(width)⌉, or i64::MIN for a degenerate interval.
    pub fn width_log2(&self) -> i64 {
        let w = &self.hi - &self.lo;
        if w.is_zero() {
            return i64::MIN;
        }
        let bits = w.bits() as i64;
        // w ≤ 2^bits; tight when w is a power of two
        let is_pow2 = (&w & (&w - 1u32)).is_zero();
        (if is_pow2 { bits - 1 } else { bits }) - self.exp as i64
    }

    pub fn contains_f64(&self, v: f64, tol: f64) -> bool {
        self.lo_f64() - tol <= v && v <= self.hi_f64() + tol
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        &self.lo_rational() <= r && r <= &self.hi_rational()
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        assert_eq!(self.exp, other.exp);
        DyadicInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, exp: self.exp }
    }

    pub(crate) fn mul_rational(&self, c: &Rational, _work: u32) -> Self {
        let (n, d) = (c.numer(), c.denom());
        let a = (&self.lo * n).div_floor(d);
        let b = (&self.hi * n).div_floor(d);
        let a_up = (&self.lo * n).div_ceil(d);
        let b_up = (&self.hi * n).div_ceil(d);
        if c.is_negative() {
            DyadicInterval { lo: b, hi: a_up, exp: self.exp }
        } else {
            DyadicInterval { lo: a, hi: b_up, exp: self.exp }
        }
    }

    /// Round outward to a coarser exponent close to `precision`.
    pub(crate) fn tighten(self, precision: u32) -> Self {
        let target = precision + 4;
        if self.exp <= target {
            return self;
        }
        let shift = BigInt::from(1) << (self.exp - target);
        DyadicInterval {
            lo: self.lo.div_floor(&shift),
            hi: self.hi.div_ceil(&shift),
            exp: target,
        }
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Fixed-point value v / 2^F with absolute error at most err / 2^F.
struct Approx {
    v: BigInt,
    err: BigInt,
}

fn mul_approx(a: &Approx, b: &Approx, f: u32) -> Approx {
    let v = (&a.v * &b.v) >> f;
    let e = (a.v.abs() * &b.err + b.v.abs() * &a.err + &a.err * &b.err) >> f;
    Approx { v, err: e + 2 }
}

fn div_small(a: &Approx, k: u64) -> Approx {
    Approx { v: a.v.div_floor(&BigInt::from(k)), err: a.err.div_ceil(&BigInt::from(k)) + 1 }
}

fn arctan_inv(m: u64, f: u32) -> Approx {
    // Σ (-1)^k / ((2k+1) m^(2k+1)), truncated once terms vanish
    let one = BigInt::from(1) << f;
    let m2 = BigInt::from(m * m);
    let mut pow = one.div_floor(&BigInt::from(m));
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    let mut terms = 0u64;
    while !pow.is_zero() {
        let term = pow.div_floor(&BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow = pow.div_floor(&m2);
        k += 1;
        terms += 1;
    }
    Approx { v: sum, err: BigInt::from(3 * terms + 2) }
}

fn pi_approx(f: u32) -> Approx {
    let a = arctan_inv(5, f);
    let b = arctan_inv(239, f);
    Approx { v: a.v * 16 - b.v * 4, err: a.err * 16 + b.err * 4 }
}

/// Enclosure of cos(2π j / n) at exponent `work`.
pub(crate) fn cos_two_pi_fraction(j: u64, n: u64, work: u32) -> DyadicInterval {
    let j = j % n;
    let j = j.min(n - j);
    let f = work + 32;
    let pi = pi_approx(f);
    // t = 2πj/n ∈ [0, π]
    let t = Approx {
        v: (&pi.v * BigInt::from(2 * j)).div_floor(&BigInt::from(n)),
        err: (&pi.err * BigInt::from(2 * j)).div_ceil(&BigInt::from(n)) + 1,
    };
    let t2 = mul_approx(&t, &t, f);
    let mut term = Approx { v: BigInt::from(1) << f, err: BigInt::zero() };
    let mut sum_v = term.v.clone();
    let mut sum_err = BigInt::zero();
    let mut k = 1u64;
    loop {
        let next = mul_approx(&term, &t2, f);
        term = div_small(&next, (2 * k - 1) * (2 * k));
        if k % 2 == 1 {
            sum_v -= &term.v;
        } else {
            sum_v += &term.v;
        }
        sum_err += &term.err;
        k += 1;
        // beyond k = 2 the terms shrink geometrically, so the tail is bounded by the last term
        if k > 3 && term.v.abs() + &term.err <= BigInt::from(4) {
            sum_err += BigInt::from(4);
            break;
        }
    }
    let lo = (&sum_v - &sum_err) >> 32u32;
    let hi = -((-(&sum_v + &sum_err)) >> 32u32);
    DyadicInterval { lo, hi, exp: work }
}

/// Enclosure of ln n for n ≥ 1, with width about 2^−precision.
pub fn ln_enclosure(n: u64, precision: u32) -> DyadicInterval {
    assert!(n >= 1, "logarithm of zero");
    // ln n = m·ln 2 + ln r, r = n / 2^m ∈ [1, 2); ln y = 2·atanh((y − 1)/(y + 1))
    let m = 63 - n.leading_zeros() as u64;
    let r = Rational::new(BigInt::from(n), BigInt::from(1u64) << m);
    let one = Rational::from_integer(BigInt::from(1));
    let z = (&r - &one) / (&r + &one);
    let (lo_r, hi_r) = atanh_bounds(&z, precision);
    let (lo_2, hi_2) = atanh_bounds(&Rational::new(BigInt::from(1), BigInt::from(3)), precision);
    let two = Rational::from_integer(BigInt::from(2));
    let mm = Rational::from_integer(BigInt::from(m));
    let lo = &two * (&mm * lo_2 + lo_r);
    let hi = &two * (&mm * hi_2 + hi_r);
    let exp = precision + 8;
    DyadicInterval {
        lo: DyadicInterval::enclose_rational(&lo, exp).lo,
        hi: DyadicInterval::enclose_rational(&hi, exp).hi,
        exp,
    }
}

/// Partial sum of Σ z^{2k+1}/(2k+1) and that sum plus the geometric tail bound, 0 ≤ z ≤ 1/3.
fn atanh_bounds(z: &Rational, precision: u32) -> (Rational, Rational) {
    let z2 = z * z;
    let mut term = z.clone();
    let mut sum = Rational::zero();
    let mut k = 0u64;
    // z^{2k} ≤ 9^{−k}, so 2k·log2(3) > precision + 8 suffices
    let terms = (precision as u64 + 8) / 3 + 2;
    while k < terms {
        sum += &term / Rational::from_integer(BigInt::from(2 * k + 1));
        term = &term * &z2;
        k += 1;
    }
    let one = Rational::from_integer(BigInt::from(1));
    let tail = &term / (Rational::from_integer(BigInt::from(2 * k + 1)) * (&one - &z2));
    let hi = &sum + tail;
    (sum, hi)
}

/// Enclosure of √n.
pub fn sqrt_enclosure(n: u64, precision: u32) -> DyadicInterval {
    let scaled = BigInt::from(n) << (2 * precision);
    let r = scaled.sqrt();
    let hi = if &r * &r == scaled { r.clone() } else { &r + 1 };
    DyadicInterval { lo: r, hi, exp: precision }
}

impl DyadicInterval {
    /// Product of two intervals contained in [0, ∞).
    pub fn mul_nonneg(&self, other: &Self) -> Self {
        assert!(!self.lo.is_negative() && !other.lo.is_negative(), "nonnegative intervals only");
        DyadicInterval { lo: &self.lo * &other.lo, hi: &self.hi * &other.hi, exp: self.exp + other.exp }
    }

    /// Scale by a nonnegative rational.
    pub fn scale_nonneg(&self, c: &Rational) -> Self {
        assert!(!c.is_negative(), "nonnegative scale only");
        self.mul_rational(c, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosines_enclose_float_values() {
        for n in [1u64, 3, 5, 7, 12, 60] {
            for j in 0..n {
                let iv = cos_two_pi_fraction(j, n, 80);
                let v = (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos();
                assert!(iv.contains_f64(v, 1e-14), "cos 2π{j}/{n}");
                assert!(iv.width_log2() <= -70);
            }
        }
    }

    #[test]
    fn exact_cosines() {
        let half = Rational::new(BigInt::from(-1), BigInt::from(2));
        assert!(cos_two_pi_fraction(1, 3, 100).contains_rational(&half));
        assert!(cos_two_pi_fraction(1, 4, 100).contains_rational(&Rational::zero()));
    }

    #[test]
    fn log_and_sqrt_enclosures() {
        for (n, v) in [(1u64, 0.0f64), (2, std::f64::consts::LN_2), (10, 2.302585092994046), (5000, 8.517193191416238)] {
            let e = ln_enclosure(n, 60);
            assert!(e.contains_f64(v, 1e-12), "ln {n}");
            assert!(e.width_log2() < -50);
        }
        let s = sqrt_enclosure(23, 40);
        assert!(s.contains_f64(23f64.sqrt(), 1e-10));
        let s4 = sqrt_enclosure(49, 10);
        assert_eq!((s4.lo_rational(), s4.hi_rational()), (Rational::from_integer(7.into()), Rational::from_integer(7.into())));
    }
}
