use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{cos_two_pi_fraction, DyadicInterval};
use super::{ExactError, Rational};

/// Largest conductor a [`CycNum`] may live in.
pub const MAX_CONDUCTOR: u32 = 120;

struct FieldData {
    degree: usize,
    /// ζ^k reduced to the power basis, k = 0..n.
    powers: Vec<Vec<i64>>,
    /// Monic cyclotomic polynomial, ascending coefficients.
    cyclo: Vec<i64>,
}

fn phi(n: u32) -> usize {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out = out / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        out = out / m * (m - 1);
    }
    out as usize
}

/// Integer coefficients (ascending) of the n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_poly(d);
            num = exact_div_monic(&num, &div);
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = rem.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn field_data(n: u32) -> &'static FieldData {
    static CACHE: OnceLock<Vec<OnceLock<FieldData>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=MAX_CONDUCTOR).map(|_| OnceLock::new()).collect());
    cache[n as usize].get_or_init(|| {
        let cyclo = cyclotomic_poly(n);
        let degree = cyclo.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by ζ
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..degree {
                next[i] -= top * cyclo[i];
            }
            if degree == 1 {
                next[0] = -top * cyclo[0];
            }
            cur = next;
        }
        FieldData { degree, powers, cyclo }
    })
}

fn canonical_conductor(n: u32) -> u32 {
    // Q(ζ_2m) = Q(ζ_m) for odd m
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

/// Element of the cyclotomic field Q(ζ_n), stored in the power basis
/// 1, ζ, …, ζ^{φ(n)-1} with ζ = exp(2πi/n).
#[derive(Clone)]
pub struct CycNum {
    n: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNum { n: 1, coeffs: vec![r] }
    }

    /// ζ_k^j with ζ_k = exp(2πi/k).
    pub fn root_of_unity(k: u32, j: i64) -> Result<Self, ExactError> {
        if k == 0 || k > MAX_CONDUCTOR {
            return Err(ExactError::ConductorTooLarge(k as u64));
        }
        let j = j.rem_euclid(k as i64) as u32;
        if k % 4 == 2 {
            // ζ_k = -ζ_{k/2}^{(k/2+1)/2}
            let m = k / 2;
            let e = (m + 1) / 2;
            let base = CycNum::root_of_unity(m, (e as i64) * (j as i64))?;
            return Ok(if j % 2 == 1 { -base } else { base });
        }
        let data = field_data(k);
        let coeffs = data.powers[j as usize]
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        Ok(CycNum { n: k, coeffs }.normalized())
    }

    /// Build from explicit power-basis coefficients in conductor `n`.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<Self, ExactError> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(ExactError::ConductorTooLarge(n as u64));
        }
        let data = field_data(n);
        assert_eq!(coeffs.len(), data.degree, "coefficient vector length must be phi(n)");
        if n % 4 == 2 {
            // rewrite through the power table of n/2
            let mut acc = CycNum::zero();
            for (j, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    acc = acc + CycNum::root_of_unity(n, j as i64)?.scale(&c);
                }
            }
            return Ok(acc);
        }
        Ok(CycNum { n, coeffs }.normalized())
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Integer value if this is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.denom().is_one())
            .map(|r| r.numer().clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|v| v.to_i64())
    }

    /// Re-express in Q(ζ_target); `self.conductor()` must divide `target`.
    pub fn embed(&self, target: u32) -> Result<Self, ExactError> {
        if target > MAX_CONDUCTOR {
            return Err(ExactError::ConductorTooLarge(target as u64));
        }
        let target = canonical_conductor(target);
        assert!(target % self.n == 0, "cannot embed Q(ζ_{}) into Q(ζ_{})", self.n, target);
        if target == self.n {
            return Ok(self.clone());
        }
        let data = field_data(target);
        let step = target / self.n;
        let mut out = vec![Rational::zero(); data.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &data.powers[(j as u32 * step % target) as usize];
            for (k, &v) in row.iter().enumerate() {
                if v != 0 {
                    out[k] += c * Rational::from_integer(BigInt::from(v));
                }
            }
        }
        Ok(CycNum { n: target, coeffs: out })
    }

    fn common(a: &Self, b: &Self) -> Result<(Self, Self), ExactError> {
        if a.n == b.n {
            return Ok((a.clone(), b.clone()));
        }
        let l = canonical_conductor(a.n.lcm(&b.n));
        if l > MAX_CONDUCTOR {
            return Err(ExactError::ConductorTooLarge(l as u64));
        }
        Ok((a.embed(l)?, b.embed(l)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        let (a, b) = Self::common(self, other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(CycNum { n: a.n, coeffs }.normalized())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        let (a, b) = Self::common(self, other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Ok(CycNum { n: a.n, coeffs }.normalized())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.n == 1 {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.n == 1 {
            return Ok(self.scale(&other.coeffs[0]));
        }
        let (a, b) = Self::common(self, other)?;
        let data = field_data(a.n);
        let d = data.degree;
        let mut conv = vec![Rational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        // reduce modulo the monic cyclotomic polynomial
        for k in (d..conv.len()).rev() {
            let c = std::mem::take(&mut conv[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in data.cyclo[..d].iter().enumerate() {
                if pj != 0 {
                    conv[k - d + j] -= &c * Rational::from_integer(BigInt::from(pj));
                }
            }
        }
        conv.truncate(d);
        Ok(CycNum { n: a.n, coeffs: conv }.normalized())
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        CycNum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
        .normalized()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under the Galois automorphism ζ ↦ ζ^k (k coprime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        let data = field_data(self.n);
        let n = self.n as i64;
        let mut out = vec![Rational::zero(); data.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((j as i64) * k).rem_euclid(n) as usize;
            for (t, &v) in data.powers[e].iter().enumerate() {
                if v != 0 {
                    out[t] += c * Rational::from_integer(BigInt::from(v));
                }
            }
        }
        CycNum { n: self.n, coeffs: out }.normalized()
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conjugate(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// Enclosing dyadic interval for a real element, of width ≤ 2^-precision.
    pub fn approx_real(&self, precision: u32) -> Result<DyadicInterval, ExactError> {
        if !self.is_real() {
            return Err(ExactError::NotReal);
        }
        if let Some(r) = self.to_rational() {
            return Ok(DyadicInterval::enclose_rational(&r, precision));
        }
        // value = Σ c_j cos(2π j / n); bound coefficients to size the working precision
        let max_coeff = self
            .coeffs
            .iter()
            .map(|c| c.abs().ceil().to_integer())
            .max()
            .unwrap_or_else(BigInt::zero);
        let slack = max_coeff.bits() as u32 + (self.coeffs.len() as u32).next_power_of_two().trailing_zeros() + 4;
        let work = precision + slack + 8;
        let mut acc = DyadicInterval::exact_zero(work);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cosv = cos_two_pi_fraction(j as u64, self.n as u64, work);
            acc = acc.add(&cosv.mul_rational(c, work));
        }
        Ok(acc.tighten(precision))
    }

    /// Quick floating-point value of the real part (diagnostics only).
    pub fn approx_f64(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * j as f64 / self.n as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Lowest conductor in which the element can be written.
    pub fn minimal(&self) -> Self {
        let mut cur = self.clone().normalized();
        loop {
            let mut moved = false;
            for q in prime_divisors(cur.n) {
                let m = canonical_conductor(cur.n / q);
                if m == cur.n {
                    continue;
                }
                if let Some(lower) = cur.descend(m) {
                    cur = lower;
                    moved = true;
                    break;
                }
            }
            if !moved {
                return cur;
            }
        }
    }

    /// Try to rewrite in the subfield Q(ζ_m), m | n.
    fn descend(&self, m: u32) -> Option<Self> {
        let n = self.n;
        // fixed by every σ_a with a ≡ 1 (mod m)?
        let fixers: Vec<i64> = (1..n as i64)
            .filter(|a| a.gcd(&(n as i64)) == 1 && a % m as i64 == 1 % m as i64)
            .collect();
        for &a in &fixers {
            if self.galois(a) != *self {
                return None;
            }
        }
        // Solve E y = x where column j of E is ζ_m^j embedded in Q(ζ_n).
        let dm = field_data(m).degree;
        let dn = field_data(n).degree;
        let mut cols = Vec::with_capacity(dm);
        for j in 0..dm {
            let e = CycNum::root_of_unity(m, j as i64).ok()?.embed(n).ok()?;
            cols.push(e.coeffs);
        }
        // Gaussian elimination on the augmented system (dn rows, dm unknowns)
        let mut rows: Vec<Vec<Rational>> = (0..dn)
            .map(|r| {
                let mut row: Vec<Rational> = (0..dm).map(|c| cols[c][r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..dm {
            let Some(p) = (pivot_row..dn).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(pivot_row, p);
            let inv = rows[pivot_row][col].recip();
            for v in rows[pivot_row].iter_mut() {
                *v *= &inv;
            }
            for r in 0..dn {
                if r != pivot_row && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in 0..=dm {
                        let t = &rows[pivot_row][c] * &f;
                        rows[r][c] -= t;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let mut y = vec![Rational::zero(); dm];
        for (i, &col) in pivots.iter().enumerate() {
            y[col] = rows[i][dm].clone();
        }
        let cand = CycNum { n: m, coeffs: y };
        if cand.embed(n).ok()?.coeffs == self.coeffs {
            Some(cand)
        } else {
            None
        }
    }

    fn normalized(mut self) -> Self {
        if self.n != 1 && self.is_rational() {
            self.coeffs.truncate(1);
            self.n = 1;
            return self;
        }
        // cheap descent: Q(ζ_m) ⊂ Q(ζ_{qm}) with q | m lines up with every q-th basis vector
        loop {
            let n = self.n;
            let mut moved = false;
            for q in prime_divisors(n) {
                let m = n / q;
                if m % q != 0 {
                    continue;
                }
                if self.coeffs.iter().enumerate().all(|(k, c)| k as u32 % q == 0 || c.is_zero()) {
                    let coeffs: Vec<Rational> = self.coeffs.iter().step_by(q as usize).cloned().collect();
                    debug_assert_eq!(coeffs.len(), field_data(canonical_conductor(m)).degree);
                    if canonical_conductor(m) != m {
                        // m ≡ 2 mod 4 cannot happen when q | m and 4 ∤ n... handled generically
                        let lowered = CycNum { n: m, coeffs };
                        return CycNum::from_coeffs(m, lowered.coeffs).unwrap_or(self);
                    }
                    self = CycNum { n: m, coeffs };
                    moved = true;
                    break;
                }
            }
            if !moved {
                return self;
            }
        }
    }

    /// Stable key for hashing and ordering: conductor plus coefficients of
    /// the minimal representation.
    fn key(&self) -> (u32, Vec<Rational>) {
        let m = self.minimal();
        (m.n, m.coeffs)
    }
}

fn prime_divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        match Self::common(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => self.key() == other.key(),
        }
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on representations (not a field ordering); used only for
/// deterministic sorting.
impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.key().cmp(&other.key())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                self.$checked(rhs).expect("cyclotomic conductor overflow")
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$checked(&rhs).expect("cyclotomic conductor overflow")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -(self.clone())
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::from_int(v)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(r)
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*z{}", c, self.n)?,
                _ => write!(f, "({})*z{}^{}", c, self.n, j)?,
            }
        }
        Ok(())
    }
}

/// JSON form: conductor plus power-basis coefficients as "p/q" strings.
#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let m = self.minimal();
        CycNumRepr {
            conductor: m.n,
            coeffs: m.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<Rational>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        if repr.conductor == 0 || repr.conductor > MAX_CONDUCTOR {
            return Err(serde::de::Error::custom("conductor out of range"));
        }
        if coeffs.len() != phi(repr.conductor) {
            return Err(serde::de::Error::custom("coefficient count must equal phi(conductor)"));
        }
        CycNum::from_coeffs(repr.conductor, coeffs).map_err(serde::de::Error::custom)
    }
}
