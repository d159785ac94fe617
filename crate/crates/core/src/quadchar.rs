//! Quadratic characters of a cubic field M, found as Kummer extensions M(√α)
//! with α in a coordinate box on an integral basis of M.
//!
//! Soundness is exact: every record's conductor q(χ) = |d_K| / d_M² comes
//! from the discriminant of the sextic K = M(√α). Completeness is heuristic,
//! since a generator of every quadratic extension of small conductor need not
//! lie in the box.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::conductor::{induced_conductor, Conductor};
use crate::exactnum::{ln_enclosure, sqrt_enclosure, DyadicInterval, Rational};
use crate::nfield::{sextic_from_sqrt, sqrt_class_equal, FieldElement, NfError, NumberField, ZPoly};

/// Largest accepted box radius.
pub const MAX_RADIUS: u32 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadCharError {
    #[error("box radius {radius} is below the minimum {min} for this search")]
    BoxTooSmall { radius: u32, min: u32 },
    #[error("box radius {0} exceeds {MAX_RADIUS}")]
    BoxTooLarge(u32),
    #[error("the parent field must be cubic, got degree {0}")]
    NotCubic(usize),
    #[error(transparent)]
    Field(#[from] NfError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Completeness {
    Claimed,
    Heuristic,
}

#[derive(Clone, Debug)]
pub struct QuadCharRecord {
    /// class representative, in integral-basis coordinates
    pub alpha_coords: [i64; 3],
    pub alpha: FieldElement,
    /// q(χ) = N(d_{K/M})
    pub conductor: u64,
    pub sextic: Arc<NumberField>,
}

impl QuadCharRecord {
    pub fn sextic_disc(&self) -> &BigInt {
        self.sextic.disc()
    }

    pub fn sextic_poly(&self) -> &ZPoly {
        self.sextic.poly()
    }
}

#[derive(Clone, Debug)]
pub struct QuadCharSearch {
    pub records: Vec<QuadCharRecord>,
    pub radius: u32,
    pub bound: u64,
    pub completeness: Completeness,
    /// box points whose sextic was built
    pub sextics_built: usize,
}

/// Default box radius: grows with log(x·√d_M), capped at 3.
pub fn default_radius(x: u64, d_m: u64) -> u32 {
    let size = (x.max(1) as f64) * (d_m.max(1) as f64).sqrt();
    (1 + (size.log10() / 3.0).floor() as u32).clamp(1, 3)
}

/// Lower bound for q(χ) from the norm: an odd p with v_p(N α) odd lies
/// under a prime of M where α has odd valuation, which ramifies in M(√α).
fn norm_conductor_floor(n: &BigInt) -> BigInt {
    let mut out = BigInt::from(1);
    for (p, e) in crate::arith::factor_big(n) {
        if e % 2 == 1 && p != BigInt::from(2) {
            out *= p;
        }
    }
    out
}

fn box_points(radius: u32) -> Vec<[i64; 3]> {
    let r = radius as i64;
    let mut pts = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                if a == 0 && b == 0 && c == 0 {
                    continue;
                }
                let g = a.gcd(&b).gcd(&c);
                // α = g²β with β also in the box
                if (2..=g).any(|k| g % (k * k) == 0) {
                    continue;
                }
                pts.push([a, b, c]);
            }
        }
    }
    // representatives: smallest sup-norm first, then lexicographic
    pts.sort_by_key(|p| (p.iter().map(|x| x.abs()).max().unwrap(), *p));
    pts
}

/// Quadratic characters χ of M with q(χ) ≤ x whose Kummer generator lies in
/// the box, one record per square class.
pub fn enumerate_quad_chars(m: &Arc<NumberField>, x: u64, radius: u32) -> Result<Vec<QuadCharRecord>, QuadCharError> {
    Ok(enumerate_quad_chars_with(m, x, radius, 1)?.records)
}

pub fn enumerate_quad_chars_with(
    m: &Arc<NumberField>,
    x: u64,
    radius: u32,
    workers: usize,
) -> Result<QuadCharSearch, QuadCharError> {
    if m.degree() != 3 {
        return Err(QuadCharError::NotCubic(m.degree()));
    }
    if radius < 1 {
        return Err(QuadCharError::BoxTooSmall { radius, min: 1 });
    }
    if radius > MAX_RADIUS {
        return Err(QuadCharError::BoxTooLarge(radius));
    }
    let dm = m.disc().abs();
    let dm2 = &dm * &dm;
    let xb = BigInt::from(x);
    let pts = box_points(radius);
    let next = AtomicUsize::new(0);
    let found: Mutex<Vec<(usize, u64, FieldElement, Arc<NumberField>)>> = Mutex::new(Vec::new());
    let built = AtomicUsize::new(0);
    let failure: Mutex<Option<NfError>> = Mutex::new(None);
    std::thread::scope(|s| {
        for _ in 0..workers.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(pt) = pts.get(i) else { break };
                let alpha = FieldElement::from_integral_coords(m, pt);
                let n = alpha.norm().to_integer();
                if norm_conductor_floor(&n) > xb {
                    continue;
                }
                let sx = match sextic_from_sqrt(m, &alpha) {
                    Ok(sx) => sx,
                    Err(NfError::IsSquare) => continue,
                    Err(e) => {
                        *failure.lock().unwrap() = Some(e);
                        break;
                    }
                };
                built.fetch_add(1, Ordering::Relaxed);
                let dk = sx.field.disc().abs();
                assert!((&dk % &dm2).is_zero(), "d_M² divides d_K for M ⊂ K");
                let q = &dk / &dm2;
                if q > xb {
                    continue;
                }
                let q = q.to_u64().expect("conductor at most x");
                found.lock().unwrap().push((i, q, alpha, sx.field));
            });
        }
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e.into());
    }
    let mut found = found.into_inner().unwrap();
    found.sort_by_key(|f| f.0);
    // deterministic dedupe: the first box point of each class is its representative
    let mut classes: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    let mut records: Vec<QuadCharRecord> = Vec::new();
    for (i, q, alpha, sextic) in found {
        let bucket = classes.entry(q).or_default();
        let mut dup = false;
        for &r in bucket.iter() {
            if sqrt_class_equal(&records[r].alpha, &alpha)? {
                dup = true;
                break;
            }
        }
        if dup {
            continue;
        }
        bucket.push(records.len());
        records.push(QuadCharRecord { alpha_coords: pts[i], alpha, conductor: q, sextic });
    }
    // self-check: representatives are box points
    let r = radius as i64;
    if records.iter().any(|rec| rec.alpha_coords.iter().any(|c| c.abs() > r)) {
        return Err(QuadCharError::BoxTooSmall { radius, min: radius + 1 });
    }
    records.sort_by(|a, b| a.conductor.cmp(&b.conductor).then_with(|| key(&a.alpha_coords).cmp(&key(&b.alpha_coords))));
    Ok(QuadCharSearch {
        records,
        radius,
        bound: x,
        completeness: Completeness::Heuristic,
        sextics_built: built.into_inner(),
    })
}

fn key(p: &[i64; 3]) -> (i64, [i64; 3]) {
    (p.iter().map(|x| x.abs()).max().unwrap(), *p)
}

/// θ_{M,2}(x): the trivial character plus the characters found in the box.
pub fn theta_m2(m: &Arc<NumberField>, x: u64, radius: u32) -> Result<u64, QuadCharError> {
    Ok(1 + enumerate_quad_chars(m, x, radius)?.len() as u64)
}

/// θ_{M,2} at each grid point from one search at the largest bound.
pub fn theta_grid(records: &[QuadCharRecord], grid: &[u64]) -> Vec<u64> {
    grid.iter().map(|&x| 1 + records.iter().filter(|r| r.conductor <= x).count() as u64).collect()
}

#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub lhs: u64,
    /// enclosure of C·√d_M·(log d_M)²·x·(log x)²
    pub rhs: DyadicInterval,
    pub pass: bool,
}

/// Enclosure of √d·(log d)²·x·(log x)².
pub fn bound_shape(d_m: u64, x: u64, precision: u32) -> DyadicInterval {
    let ld = ln_enclosure(d_m, precision);
    let lx = ln_enclosure(x, precision);
    let xi = DyadicInterval { lo: BigInt::from(x), hi: BigInt::from(x), exp: 0 };
    sqrt_enclosure(d_m, precision).mul_nonneg(&ld).mul_nonneg(&ld).mul_nonneg(&xi).mul_nonneg(&lx).mul_nonneg(&lx)
}

/// Decides lhs ≤ C·√d·(log d)²·x·(log x)², refining the enclosure until it
/// separates from lhs.
pub fn bound_check(lhs: u64, d_m: u64, x: u64, c: &Rational) -> BoundCheck {
    assert!(d_m > 1 && x > 1, "the bound needs d_M > 1 and x > 1");
    let l = Rational::from_integer(BigInt::from(lhs));
    let mut precision = 32;
    loop {
        let rhs = bound_shape(d_m, x, precision).scale_nonneg(c);
        if l <= rhs.lo_rational() {
            return BoundCheck { lhs, rhs, pass: true };
        }
        if l > rhs.hi_rational() || precision > 4096 {
            return BoundCheck { lhs, rhs, pass: false };
        }
        precision *= 2;
    }
}

/// θ_{M,2}(x) against C·√d_M·(log d_M)²·x·(log x)².
pub fn appendix_bound_check(
    m: &Arc<NumberField>,
    x: u64,
    radius: u32,
    c: &Rational,
) -> Result<BoundCheck, QuadCharError> {
    let lhs = theta_m2(m, x, radius)?;
    let dm = m.disc().abs().to_u64().expect("cubic discriminant fits in u64");
    Ok(bound_check(lhs, dm, x, c))
}

/// Smallest C making every (d_M, x, θ) triple pass: max of θ / shape, rounded up
/// to a rational with denominator 10⁶.
pub fn calibrate_constant(samples: &[(u64, u64, u64)]) -> Rational {
    let mut best = Rational::zero();
    for &(d, x, theta) in samples {
        let shape = bound_shape(d, x, 64).lo_rational();
        let ratio = Rational::from_integer(BigInt::from(theta)) / shape;
        if ratio > best {
            best = ratio;
        }
    }
    let scale = BigInt::from(1_000_000);
    let up = (best * Rational::from_integer(scale.clone())).ceil();
    up / Rational::from_integer(scale)
}

/// Conductor exponents of Ind_M^Q χ at tame primes p ≥ 5, two ways: from
/// q(Ind χ) = d_M·q(χ), and as (6 − Σ f over K) − (3 − Σ f over M), the tame
/// exponent of the permutation character of K minus that of M.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TameCrossCheck {
    pub primes_checked: usize,
    /// primes skipped because they divide a defining polynomial's index
    pub primes_skipped: usize,
    pub mismatches: Vec<u64>,
}

pub fn tame_cross_check(m: &Arc<NumberField>, rec: &QuadCharRecord) -> TameCrossCheck {
    let mut out = TameCrossCheck::default();
    let q_rho = induced_conductor(m.disc(), &Conductor::from_u64(rec.conductor));
    for p in rec.sextic.ramified_primes() {
        if p < 5 {
            continue;
        }
        let (Ok(sk), Ok(sm)) = (rec.sextic.prime_splitting(p), m.prime_splitting(p)) else {
            out.primes_skipped += 1;
            continue;
        };
        let fk: u32 = sk.iter().map(|(f, _)| f).sum();
        let fm: u32 = sm.iter().map(|(f, _)| f).sum();
        let tame = (6 - fk as i64) - (3 - fm as i64);
        out.primes_checked += 1;
        if tame != q_rho.exponent(p) as i64 {
            out.mismatches.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m23() -> Arc<NumberField> {
        NumberField::from_i64(&[-1, -1, 0, 1]).unwrap()
    }

    #[test]
    fn minus_one_character() {
        let m = m23();
        let sx = sextic_from_sqrt(&m, &FieldElement::from_int(&m, -1)).unwrap();
        let q = sx.field.disc().abs() / BigInt::from(23 * 23);
        let recs = enumerate_quad_chars(&m, q.to_u64().unwrap(), 1).unwrap();
        let minus_one = recs.iter().find(|r| sqrt_class_equal(&r.alpha, &FieldElement::from_int(&m, -1)).unwrap());
        assert_eq!(minus_one.map(|r| BigInt::from(r.conductor)), Some(q));
    }

    #[test]
    fn theta_basics() {
        let m = m23();
        assert_eq!(theta_m2(&m, 1, 1).unwrap(), 1);
        let recs = enumerate_quad_chars(&m, 1000, 2).unwrap();
        let grid = theta_grid(&recs, &[1, 10, 100, 1000]);
        assert!(grid.windows(2).all(|w| w[0] <= w[1]));
        for (i, a) in recs.iter().enumerate() {
            assert!(a.conductor <= 1000);
            for b in &recs[i + 1..] {
                assert!(!sqrt_class_equal(&a.alpha, &b.alpha).unwrap());
            }
        }
        assert!(matches!(enumerate_quad_chars(&m, 10, 0), Err(QuadCharError::BoxTooSmall { .. })));
    }

    #[test]
    fn box_growth_keeps_classes() {
        let m = m23();
        let small = enumerate_quad_chars(&m, 500, 1).unwrap();
        let big = enumerate_quad_chars(&m, 500, 2).unwrap();
        for r in &small {
            assert!(big.iter().any(|b| sqrt_class_equal(&b.alpha, &r.alpha).unwrap()));
        }
    }

    #[test]
    fn bound_decisions() {
        let c = Rational::new(1.into(), 100.into());
        let shape = bound_shape(23, 100, 64);
        assert!(shape.lo_f64() > 0.0);
        let v = 23f64.sqrt() * 23f64.ln().powi(2) * 100.0 * 100f64.ln().powi(2) / 100.0;
        assert!(bound_check(v.floor() as u64, 23, 100, &c).pass);
        assert!(!bound_check(v.ceil() as u64, 23, 100, &c).pass);
        // monotone in C
        let c2 = Rational::new(1.into(), 10.into());
        assert!(bound_check(v.ceil() as u64, 23, 100, &c2).pass);
        let cal = calibrate_constant(&[(23, 100, v.ceil() as u64)]);
        assert!(bound_check(v.ceil() as u64, 23, 100, &cal).pass);
    }
}
