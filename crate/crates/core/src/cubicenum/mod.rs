//! Cubic fields of bounded discriminant.
//!
//! The production path walks reduced binary cubic forms (a cubic ring is the
//! same thing as a GL2(Z)-class of such forms, with equal discriminants), keeps
//! the irreducible forms whose ring passes a local maximality sieve, and then
//! recomputes every discriminant with [`field_disc`]. The oracle path searches
//! monic polynomials in a box that provably contains a generator of every
//! cubic field in range.

mod form;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use form::BinaryCubicForm;

use crate::arith::is_square_i64;
use crate::exactnum::Rational;
use crate::nfield::linalg::{hnf_rows, inverse, QMat};
use crate::nfield::{field_disc, FieldElement, NumberField, ZPoly};

/// Largest bound accepted by [`oracle_enumerate`].
pub const ORACLE_MAX: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubicError {
    #[error("oracle bound {0} exceeds the cap {ORACLE_MAX}")]
    BoundTooLarge(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CubicGalois {
    /// Galois closure of degree 3
    C3,
    /// Galois closure of degree 6
    S3,
}

impl CubicGalois {
    pub fn of_disc(d: i64) -> Self {
        if is_square_i64(d) {
            CubicGalois::C3
        } else {
            CubicGalois::S3
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CubicGalois::C3 => "C3",
            CubicGalois::S3 => "S3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicFieldRecord {
    /// canonical reduced form of the ring of integers
    pub form: BinaryCubicForm,
    /// x³ + b x² + ac x + a²d, a generator's minimal polynomial
    pub poly: ZPoly,
    pub disc: i64,
    pub galois: CubicGalois,
}

impl CubicFieldRecord {
    fn from_form(form: BinaryCubicForm) -> Self {
        let disc = i64::try_from(form.disc()).expect("discriminant fits in i64");
        CubicFieldRecord { form, poly: form.monic_poly(), disc, galois: CubicGalois::of_disc(disc) }
    }

    fn sort_key(&self) -> (u64, i64, BinaryCubicForm) {
        (self.disc.unsigned_abs(), self.disc.signum(), self.form)
    }
}

fn sort_records(v: &mut [CubicFieldRecord]) {
    v.sort_by_key(|r| r.sort_key());
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub workers: usize,
    /// recompute each discriminant with the maximal-order algorithm
    pub certify: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { workers: std::thread::available_parallelism().map_or(1, |n| n.get()), certify: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumStats {
    /// canonical reduced forms with 0 < |disc| ≤ X
    pub reduced_forms: u64,
    pub reducible: u64,
    pub non_maximal: u64,
    /// sieve survivors whose recomputed discriminant disagreed (always 0 unless the sieve is wrong)
    pub certification_failures: u64,
}

/// Every cubic field with |d| ≤ x, once each, ordered by (|d|, sign, form).
pub fn enumerate_cubic_fields(x: u64) -> Vec<CubicFieldRecord> {
    enumerate_cubic_fields_with(x, &EnumOptions::default()).0
}

pub fn enumerate_cubic_fields_with(x: u64, opts: &EnumOptions) -> (Vec<CubicFieldRecord>, EnumStats) {
    if x < 23 {
        return (Vec::new(), EnumStats::default());
    }
    let spf = smallest_prime_factors(x);
    let items = work_items(x);
    let next = AtomicUsize::new(0);
    let out: Mutex<(Vec<CubicFieldRecord>, EnumStats)> = Mutex::new((Vec::new(), EnumStats::default()));
    std::thread::scope(|s| {
        for _ in 0..opts.workers.max(1) {
            s.spawn(|| {
                let mut local = Vec::new();
                let mut stats = EnumStats::default();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&(positive, a, b)) = items.get(i) else { break };
                    let mut visit = |f: BinaryCubicForm| {
                        if !f.is_canonical() {
                            return;
                        }
                        stats.reduced_forms += 1;
                        if !f.is_irreducible() {
                            stats.reducible += 1;
                            return;
                        }
                        let d = f.disc().unsigned_abs() as u64;
                        if !square_prime_divisors(d, &spf).into_iter().all(|p| f.is_maximal_at(p)) {
                            stats.non_maximal += 1;
                            return;
                        }
                        let rec = CubicFieldRecord::from_form(f);
                        if opts.certify && !certify(&rec) {
                            stats.certification_failures += 1;
                            return;
                        }
                        local.push(rec);
                    };
                    if positive {
                        totally_real_stratum(x, a, b, &mut visit);
                    } else {
                        complex_stratum(x, a, b, &mut visit);
                    }
                }
                let mut g = out.lock().unwrap();
                g.0.extend(local);
                g.1.reducible += stats.reducible;
                g.1.reduced_forms += stats.reduced_forms;
                g.1.non_maximal += stats.non_maximal;
                g.1.certification_failures += stats.certification_failures;
            });
        }
    });
    let (mut recs, stats) = out.into_inner().unwrap();
    sort_records(&mut recs);
    (recs, stats)
}

fn certify(rec: &CubicFieldRecord) -> bool {
    match field_disc(&rec.poly) {
        Ok((d, _)) => d == BigInt::from(rec.disc),
        Err(_) => false,
    }
}

/// Leading coefficient bounds: a⁴ ≤ 16X/729 when disc > 0 (from the syzygy
/// 4H³ = G² + 27·disc·F² at (1, 0) and P ≤ √disc), a⁴ ≤ 16X/27 when disc < 0.
/// Canonical forms have b ≤ 0.
fn work_items(x: u64) -> Vec<(bool, i64, i64)> {
    let xf = x as f64;
    let mut items = Vec::new();
    let mut a = 1i64;
    while 729 * (a as u128).pow(4) <= 16 * x as u128 {
        for b in -(real_b_bound(xf, a))..=0 {
            items.push((true, a, b));
        }
        a += 1;
    }
    let mut a = 1i64;
    while 27 * (a as u128).pow(4) <= 16 * x as u128 {
        for b in -(complex_b_bound(xf, a))..=0 {
            items.push((false, a, b));
        }
        a += 1;
    }
    items
}

/// disc > 0: the roots lie within 2X^{1/4}/a of the Hessian centre −Q/2P,
/// which reduction keeps in [−1/2, 1/2]; b = −a·(sum of roots).
fn real_b_bound(x: f64, a: i64) -> i64 {
    (1.5 * a as f64 + 6.0 * x.powf(0.25)).floor() as i64 + 1
}

/// disc < 0: |θ| < 1/2 + (X/3)^{1/4}/a for the real root θ, and |b + aθ| < a.
fn complex_b_bound(x: f64, a: i64) -> i64 {
    (1.5 * a as f64 + (x / 3.0).powf(0.25)).floor() as i64 + 1
}

/// Reduced forms with 0 < disc ≤ X and given (a, b): P = b² − 3ac runs over
/// [1, √X], and |Q| ≤ P confines d to an interval of length 2P/9a.
fn totally_real_stratum(x: u64, a: i64, b: i64, visit: &mut impl FnMut(BinaryCubicForm)) {
    let pmax = isqrt_u64(x) as i64;
    let c_lo = (b * b - pmax).div_euclid(3 * a) - 1;
    let c_hi = (b * b - 1).div_euclid(3 * a);
    for c in c_lo..=c_hi {
        let p = b * b - 3 * a * c;
        if p < 1 || p > pmax {
            continue;
        }
        let d_lo = (b * c - p).div_euclid(9 * a);
        let d_hi = (b * c + p).div_euclid(9 * a) + 1;
        for d in d_lo..=d_hi {
            let f = BinaryCubicForm::new(a, b, c, d);
            let (p, q, r) = f.hessian();
            if q.abs() > p || r < p {
                continue;
            }
            let disc = (4 * p * r - q * q) / 3;
            if disc > x as i128 {
                continue;
            }
            visit(f);
        }
    }
}

/// Reduced forms with −X ≤ disc < 0 and given (a, b). With F = (x − θy)·q and
/// q = (a, s, t) reduced, c = t − s(s − b)/a and t ≤ ((16a²X)^{1/3} + a²)/4a,
/// since |disc| ≥ (4at − s²)³/16a².
fn complex_stratum(x: u64, a: i64, b: i64, visit: &mut impl FnMut(BinaryCubicForm)) {
    let xf = x as f64;
    let (af, bf) = (a as f64, b as f64);
    let t_max = ((16.0 * af * af * xf).cbrt() + af * af) / (4.0 * af);
    let c_lo = -b.abs();
    let c_hi = (t_max + bf * bf / (4.0 * af)).ceil() as i64 + 1;
    for c in c_lo..=c_hi {
        let cf = c as f64;
        // reduced: −(a − b)² − ac < ad − bc < (a + b)² + ac
        let lo = b * c - (a - b) * (a - b) - a * c;
        let hi = b * c + (a + b) * (a + b) + a * c;
        if hi - lo <= 0 {
            continue;
        }
        let mut d_lo = lo.div_euclid(a);
        let mut d_hi = hi.div_euclid(a) + 1;
        // disc(d) = −27a²d² + (18abc − 4b³)d + b²c² − 4ac³ ≥ −X
        let qa = -27.0 * af * af;
        let qb = 18.0 * af * bf * cf - 4.0 * bf * bf * bf;
        let qc = bf * bf * cf * cf - 4.0 * af * cf * cf * cf + xf;
        let del = qb * qb - 4.0 * qa * qc;
        if del < 0.0 {
            continue;
        }
        let r1 = (-qb + del.sqrt()) / (2.0 * qa);
        let r2 = (-qb - del.sqrt()) / (2.0 * qa);
        d_lo = d_lo.max(r1.min(r2).floor() as i64 - 1);
        d_hi = d_hi.min(r1.max(r2).ceil() as i64 + 1);
        for d in d_lo..=d_hi {
            let f = BinaryCubicForm::new(a, b, c, d);
            let disc = f.disc();
            if disc >= 0 || disc < -(x as i128) {
                continue;
            }
            visit(f);
        }
    }
}

fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn smallest_prime_factors(x: u64) -> Vec<u32> {
    let n = x as usize + 1;
    let mut spf = vec![0u32; n];
    for i in 2..n {
        if spf[i] == 0 {
            let mut j = i;
            while j < n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Primes p with p² | n.
fn square_prime_divisors(mut n: u64, spf: &[u32]) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = spf[n as usize] as u64;
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e >= 2 {
            out.push(p);
        }
    }
    out
}

/// (cyclic, generic) counts.
pub fn galois_split(records: &[CubicFieldRecord]) -> (usize, usize) {
    let c3 = records.iter().filter(|r| r.galois == CubicGalois::C3).count();
    (c3, records.len() - c3)
}

/// The index form of O_K for a cubic field: with a basis 1, ω, ξ of O_K,
/// F(x, y) = [O_K : Z[xω + yξ]] up to sign, a form of discriminant d_K.
pub fn index_form(k: &std::sync::Arc<NumberField>) -> BinaryCubicForm {
    assert_eq!(k.degree(), 3, "index forms are defined for cubic fields");
    let basis = basis_with_one(k.integral_basis());
    let (om, xi) = (FieldElement::new(k, basis[1].clone()), FieldElement::new(k, basis[2].clone()));
    let inv = inverse(&basis).expect("integral basis is nonsingular");
    let coords = |e: FieldElement| -> (i64, i64) {
        let v = crate::nfield::linalg::vec_mul(e.coords(), &inv);
        let int = |r: &Rational| {
            assert!(r.is_integer(), "O_K is closed under multiplication");
            r.to_integer().to_i64().expect("structure constant fits in i64")
        };
        (int(&v[1]), int(&v[2]))
    };
    let (a11, b11) = coords(om.mul(&om).unwrap());
    let (a12, b12) = coords(om.mul(&xi).unwrap());
    let (a22, b22) = coords(xi.mul(&xi).unwrap());
    BinaryCubicForm::new(b11, 2 * b12 - a11, b22 - 2 * a12, -a22)
}

/// Reorders an integral basis as (1, ω, ξ) with ω ∈ Z + Zθ.
fn basis_with_one(b: &QMat) -> QMat {
    let n = b.len();
    let den = b.iter().flatten().fold(BigInt::one(), |l, r| num_integer::Integer::lcm(&l, r.denom()));
    let rows: Vec<Vec<BigInt>> = b
        .iter()
        .map(|r| r.iter().rev().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    // upper triangular in reversed columns = lower triangular in the power basis
    let h = hnf_rows(rows);
    let mut out: QMat = h
        .into_iter()
        .map(|r| r.into_iter().rev().map(|x| Rational::new(x, den.clone())).collect())
        .collect();
    out.reverse();
    debug_assert!(out[0][0].is_one() && out[0][1..].iter().all(|x| x.is_zero()));
    debug_assert_eq!(out.len(), n);
    out
}

/// Brute force over monic cubics in a covering box.
///
/// Hunter: every cubic field K has θ ∈ O_K \ Z with Tr θ ∈ {0, 1} and
/// T₂(θ) = Σ|θᵢ|² ≤ (Tr θ)²/3 + γ₂·(|d_K|/3)^{1/2}, γ₂ = (4/3)^{1/2}.
/// Its minimal polynomial x³ − t x² + e₂ x − e₃ then has
/// |e₂| = |t² − T₂'|/2 ≤ (t² + T₂)/2 and |e₃| ≤ (T₂/3)^{3/2} by AM–GM.
pub fn oracle_enumerate(x: u64) -> Result<Vec<CubicFieldRecord>, CubicError> {
    if x > ORACLE_MAX {
        return Err(CubicError::BoundTooLarge(x));
    }
    let mut found: BTreeMap<BinaryCubicForm, i64> = BTreeMap::new();
    for t in 0..=1i64 {
        let t2 = (t * t) as f64 / 3.0 + 2.0 * (x as f64).sqrt() / 3.0;
        let e2max = ((t * t) as f64 + t2) / 2.0;
        let e3max = (t2 / 3.0).powf(1.5);
        let (e2b, e3b) = (e2max.floor() as i64 + 1, e3max.floor() as i64 + 1);
        for e2 in -e2b..=e2b {
            for e3 in -e3b..=e3b {
                let f = BinaryCubicForm::new(1, -t, e2, -e3);
                let pd = f.disc();
                if pd == 0 || (pd.unsigned_abs() as u64 / largest_square_divisor(pd.unsigned_abs() as u64)) > x {
                    continue;
                }
                if !f.is_irreducible() {
                    continue;
                }
                let k = NumberField::new(f.poly()).expect("irreducible monic cubic");
                let d = k.disc().to_i64().expect("small discriminant");
                if d.unsigned_abs() > x {
                    continue;
                }
                let g = index_form(&k).reduce().expect("index form of a field is irreducible");
                assert_eq!(g.disc(), d as i128, "index form discriminant equals d_K");
                found.insert(g, d);
            }
        }
    }
    let mut recs: Vec<CubicFieldRecord> = found.into_keys().map(CubicFieldRecord::from_form).collect();
    sort_records(&mut recs);
    Ok(recs)
}

fn largest_square_divisor(n: u64) -> u64 {
    crate::arith::factor_u64(n).into_iter().map(|(p, e)| p.pow(e / 2 * 2)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn discs(v: &[CubicFieldRecord]) -> Vec<i64> {
        v.iter().map(|r| r.disc).collect()
    }

    #[test]
    fn smallest_fields() {
        assert!(enumerate_cubic_fields(1).is_empty());
        assert_eq!(discs(&enumerate_cubic_fields(23)), vec![-23]);
        let v = enumerate_cubic_fields(49);
        assert_eq!(discs(&v), vec![-23, -31, -44, 49]);
        assert_eq!(v[3].galois, CubicGalois::C3);
        let k = NumberField::from_i64(&[-1, -2, 1, 1]).unwrap();
        assert_eq!(index_form(&k).reduce().unwrap(), v[3].form);
        assert_eq!(galois_split(&v), (1, 3));
    }

    #[test]
    fn oracle_small() {
        assert_eq!(discs(&oracle_enumerate(23).unwrap()), vec![-23]);
        assert_eq!(oracle_enumerate(1000).unwrap(), enumerate_cubic_fields(1000));
        assert_eq!(oracle_enumerate(200_000), Err(CubicError::BoundTooLarge(200_000)));
    }

    #[test]
    fn index_form_of_monogenic_field() {
        let k = NumberField::from_i64(&[-1, -1, 0, 1]).unwrap();
        assert_eq!(index_form(&k), BinaryCubicForm::new(1, 0, -1, -1));
        // Q(∛2·3) has a non-monogenic-looking generator but the same ring
        let k2 = NumberField::from_i64(&[-54, 0, 0, 1]).unwrap();
        assert_eq!(index_form(&k2).disc(), -108);
    }
}
