//! Counting functions for orthogonal three-dimensional Artin representations,
//! evaluated on a grid of conductor bounds: the abelian counts, the primitive
//! SO(3) count through quartic and quintic field tables, the monomial pair
//! census over cubic fields and the twisted A5 census.

mod kernel;
mod report;
mod table;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::conductor::{
    ceil_sqrt, tame_disc_bound_a5, twist_conductor, twist_tame_exponents, wild_cap, A5Class, Conductor, ConductorError,
    TwistSupport,
};
use crate::dirichlet::{count_quadratic_coprime, real_primitive_count};
use crate::nfield::{NfError, NumberField};
use crate::quadchar::QuadCharError;

pub use kernel::{phi_h, theta_s4_monomial, KernelEntry, MonomialGroup, PairKernel, PairKernelOptions};
pub use report::{density_report, Cell, DensityReport, ReportInputs, ReportRow, REPORT_COLUMNS};
pub use table::{certify_label, FieldRow, FieldTable, GaloisLabel, IngestMode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("schema error at line {line}: {msg}")]
    Schema { line: usize, msg: String },
    #[error("line {line}: stated discriminant {stated}, computed {computed}")]
    DiscMismatch { line: usize, stated: BigInt, computed: BigInt },
    #[error("{function}: data covers |d| ≤ {covered} for {label}, need {needed} (partial count {})", .partial.count)]
    CoverageGap { function: String, label: String, needed: BigInt, covered: BigInt, partial: Box<CensusRecord> },
    #[error("p = {p} divides the index of the field of discriminant {disc}")]
    IndexDivisor { p: u64, disc: BigInt },
    #[error("grid must be nonempty and strictly increasing")]
    BadGrid,
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    QuadChar(#[from] QuadCharError),
    #[error(transparent)]
    Field(#[from] NfError),
    #[error(transparent)]
    Conductor(#[from] ConductorError),
}

impl CensusError {
    /// Process exit code: 2 for coverage gaps, 3 for table schema problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CensusError::CoverageGap { .. } => 2,
            CensusError::Schema { .. } | CensusError::DiscMismatch { .. } => 3,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CensusFunction {
    #[serde(rename = "ab")]
    Ab,
    #[serde(rename = "absd")]
    AbSd,
    #[serde(rename = "theta1")]
    Theta1,
    ThetaS4,
    PsiA5,
    PhiA4,
    PhiS4,
}

impl CensusFunction {
    pub fn name(&self) -> &'static str {
        match self {
            CensusFunction::Ab => "ab",
            CensusFunction::AbSd => "absd",
            CensusFunction::Theta1 => "theta1",
            CensusFunction::ThetaS4 => "ThetaS4",
            CensusFunction::PsiA5 => "PsiA5",
            CensusFunction::PhiA4 => "PhiA4",
            CensusFunction::PhiS4 => "PhiS4",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    UpperBound,
    HeuristicComplete,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::UpperBound => "upper-bound",
            Method::HeuristicComplete => "heuristic-complete",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub function: CensusFunction,
    pub x: u64,
    pub count: u64,
    pub method: Method,
    pub notes: Vec<String>,
    /// pairs whose conductor was recomputed on a second path
    pub double_entry_checked: u64,
    pub double_entry_mismatches: u64,
}

impl CensusRecord {
    fn new(function: CensusFunction, x: u64, method: Method) -> Self {
        CensusRecord { function, x, count: 0, method, notes: Vec::new(), double_entry_checked: 0, double_entry_mismatches: 0 }
    }
}

pub fn ab_record(x: u64) -> CensusRecord {
    let mut r = CensusRecord::new(CensusFunction::Ab, x, Method::Exact);
    r.count = crate::dirichlet::count_ab3(x) as u64;
    r
}

pub fn absd_record(x: u64) -> CensusRecord {
    let mut r = CensusRecord::new(CensusFunction::AbSd, x, Method::Exact);
    r.count = crate::dirichlet::count_ab_sd3(x) as u64;
    r
}

/// Constants c in the discriminant bounds d_M ≤ c·q^{3/2} (quartic) and
/// d_M ≤ c·q² (quintic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildCaps {
    pub quartic: BigInt,
    pub quintic: BigInt,
}

impl Default for WildCaps {
    fn default() -> Self {
        WildCaps { quartic: wild_cap(4).expect("degree 4").value(), quintic: wild_cap(5).expect("degree 5").value() }
    }
}

impl WildCaps {
    /// (⌈c₄·x^{3/2}⌉, c₅·x²).
    pub fn thresholds(&self, x: u64) -> (BigInt, BigInt) {
        let xb = BigInt::from(x);
        let t4 = ceil_sqrt(&(&self.quartic * &self.quartic * xb.pow(3)));
        (t4, &self.quintic * &xb * &xb)
    }
}

fn coverage_gap(function: &str, label: GaloisLabel, needed: BigInt, covered: BigInt, partial: CensusRecord) -> CensusError {
    CensusError::CoverageGap {
        function: function.to_string(),
        label: label.as_str().to_string(),
        needed,
        covered,
        partial: Box::new(partial),
    }
}

/// Upper bound for the SO(3) primitive count: A4 and S4 quartics with
/// d ≤ c·x^{3/2} plus A5 quintics with d ≤ c·x².
pub fn theta1_bound(x: u64, tables: &FieldTable, caps: &WildCaps) -> Result<CensusRecord, CensusError> {
    let (t4, t5) = caps.thresholds(x);
    let mut rec = CensusRecord::new(CensusFunction::Theta1, x, Method::UpperBound);
    let mut gap = None;
    for (label, t) in [(GaloisLabel::A4, &t4), (GaloisLabel::S4, &t4), (GaloisLabel::A5, &t5)] {
        let n = tables.with_label(label).filter(|r| &r.abs_disc() <= t).count() as u64;
        rec.count += n;
        rec.notes.push(format!("{}: {n} fields with |d| <= {t}", label.as_str()));
        // below the smallest possible discriminant nothing can qualify
        if *t < BigInt::from(label.disc_floor()) {
            continue;
        }
        let covered = tables.coverage(label);
        if &covered < t && gap.is_none() {
            gap = Some((label, t.clone(), covered));
        }
    }
    match gap {
        Some((label, needed, covered)) => Err(coverage_gap("theta1", label, needed, covered, rec)),
        None => Ok(rec),
    }
}

/// What to do with a prime that divides the index of a table polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexPolicy {
    Strict,
    Skip,
}

/// Tame ramification data of one A5 quintic: primes p > 5 dividing d_M by
/// inertia class, read off the splitting shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A5Field {
    pub disc: BigInt,
    pub a: BTreeSet<u64>,
    pub b: BTreeSet<u64>,
    pub c: BTreeSet<u64>,
    /// ramified primes among 2, 3, 5
    pub wild: BTreeSet<u64>,
}

impl A5Field {
    pub fn from_field(k: &Arc<NumberField>) -> Result<Self, CensusError> {
        let mut out =
            A5Field { disc: k.disc().clone(), a: BTreeSet::new(), b: BTreeSet::new(), c: BTreeSet::new(), wild: BTreeSet::new() };
        for p in k.ramified_primes() {
            if p <= 5 {
                out.wild.insert(p);
                continue;
            }
            let shape = k.prime_splitting(p).map_err(|e| match e {
                NfError::IndexDivisor(p) => CensusError::IndexDivisor { p, disc: k.disc().clone() },
                other => other.into(),
            })?;
            let e = shape.iter().map(|&(_, e)| e).max().unwrap_or(1);
            match A5Class::from_inertia_order(e) {
                Some(A5Class::A) => out.a.insert(p),
                Some(A5Class::B) => out.b.insert(p),
                Some(A5Class::C) => out.c.insert(p),
                None => return Err(ConductorError::UnresolvableInertia(e).into()),
            };
        }
        Ok(out)
    }

    pub fn tame_primes(&self) -> Vec<u64> {
        self.a.iter().chain(&self.b).chain(&self.c).copied().collect()
    }

    /// ∏_{p > 5} p^{v_p(d_M)}.
    pub fn tame_disc(&self) -> BigInt {
        let mut d = self.disc.clone();
        for p in [2u64, 3, 5] {
            let pb = BigInt::from(p);
            while (&d % &pb) == BigInt::from(0) {
                d /= &pb;
            }
        }
        num_traits::Signed::abs(&d)
    }
}

/// Odd squarefree c ≤ y prime to every excluded prime: the conductors of the
/// admissible χ′, each carrying exactly one quadratic character.
fn chi_prime_conductors(y: u64, excluded: &[u64]) -> Vec<u64> {
    (1..=y).filter(|&c| c % 2 == 1 && excluded.iter().all(|p| c % p != 0) && real_primitive_count(c) > 0).collect()
}

/// Largest c with k·c³ ≤ x.
fn cube_root_bound(x: u64, k: &BigInt) -> u64 {
    let mut c = 0u64;
    while k * BigInt::from(c + 1).pow(3) <= BigInt::from(x) {
        c += 1;
    }
    c
}

/// Pairs (σ⊗χ, χ′) over the A5 table with q(σ⊗χ)·q(χ′)³ ≤ x.
///
/// q(χ) = 2^α 3^β 5^γ ∏_Y p with Y ⊆ X (the tame primes) and α ∈ {0, 2, 3},
/// β, γ ∈ {0, 1}. At tame primes q(σ⊗χ) comes from the twist exponents; at 2,
/// 3, 5 unramified in M the local factor is q_p(χ)³; at ramified 2, 3, 5 it is
/// bounded below by 1. Lower bounds on the key make the count an upper bound.
pub fn psi_a5(x: u64, table: &FieldTable, caps: &WildCaps, policy: IndexPolicy) -> Result<CensusRecord, CensusError> {
    let mut rec = CensusRecord::new(CensusFunction::PsiA5, x, Method::UpperBound);
    let (_, t5) = caps.thresholds(x);
    let mut skipped = 0;
    for row in table.with_label(GaloisLabel::A5) {
        if row.abs_disc() > t5 {
            continue;
        }
        let k = NumberField::new(row.poly.clone())?;
        let f = match A5Field::from_field(&k) {
            Ok(f) => f,
            Err(CensusError::IndexDivisor { p, disc }) if policy == IndexPolicy::Skip => {
                log::warn!("skipping field of discriminant {disc}: {p} divides the index");
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        psi_field(x, &f, &mut rec)?;
    }
    if skipped > 0 {
        rec.notes.push(format!("{skipped} fields skipped for index divisors"));
    }
    let covered = table.coverage(GaloisLabel::A5);
    if t5 >= BigInt::from(GaloisLabel::A5.disc_floor()) && covered < t5 {
        return Err(coverage_gap("PsiA5", GaloisLabel::A5, t5, covered, rec));
    }
    Ok(rec)
}

/// Adds one field's pairs to `rec`, with the double-entry checks.
pub fn psi_field(x: u64, f: &A5Field, rec: &mut CensusRecord) -> Result<(), CensusError> {
    let tame = f.tame_primes();
    let ramified: BTreeSet<u64> = tame.iter().copied().chain(f.wild.iter().copied()).collect();
    let mut excluded: Vec<u64> = vec![2, 3, 5];
    excluded.extend(&tame);
    let c_max = cube_root_bound(x, &BigInt::from(1));
    let chi_primes = chi_prime_conductors(c_max, &excluded);
    // d^tame ≤ ∏_A p² ∏_B p² ∏_C p⁴ holds for every A5 field
    let disc_bound = tame_disc_bound_a5(&f.a, &f.b, &f.c)?;
    rec.double_entry_checked += 1;
    if f.tame_disc() > disc_bound {
        rec.double_entry_mismatches += 1;
    }
    for mask in 0u64..(1 << tame.len()) {
        let y: BTreeSet<u64> = tame.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let split = |s: &BTreeSet<u64>| -> (BTreeSet<u64>, BTreeSet<u64>) {
            (s.intersection(&y).copied().collect(), s.difference(&y).copied().collect())
        };
        let (a1, a2) = split(&f.a);
        let (b1, b2) = split(&f.b);
        let (c1, c2) = split(&f.c);
        let support = TwistSupport { a1, a2, b1, b2, c1, c2 };
        let q_tame = twist_tame_exponents(&support)?;
        // the tame conductor bounds the tame discriminant: d^tame ≤ q_tame²
        rec.double_entry_checked += 1;
        if f.tame_disc() > q_tame.value().pow(2) {
            rec.double_entry_mismatches += 1;
        }
        for (alpha, mult) in [(0u32, 1u64), (2, 1), (3, 2)] {
            for beta in 0..=1u32 {
                for gamma in 0..=1u32 {
                    let mut wild = Vec::new();
                    for (p, e) in [(2u64, alpha), (3, beta), (5, gamma)] {
                        if e > 0 && !f.wild.contains(&p) {
                            wild.push((p, 3 * e));
                        }
                    }
                    let q_sc = q_tame.mul(&Conductor::from_factors(wild));
                    let key = q_sc.value();
                    if key > BigInt::from(x) {
                        continue;
                    }
                    let y_bound = cube_root_bound(x, &key);
                    let listed: Vec<u64> = chi_primes.iter().copied().take_while(|&c| c <= y_bound).collect();
                    let counted = count_quadratic_coprime(y_bound, &excluded);
                    rec.double_entry_checked += 1;
                    if counted != listed.len() as u64 {
                        rec.double_entry_mismatches += 1;
                    }
                    for &c in &listed {
                        let pair_key = &key * BigInt::from(c).pow(3);
                        let recomputed = twist_conductor(&q_sc, &Conductor::from_u64(c), &ramified)?;
                        rec.double_entry_checked += 1;
                        if recomputed.value() != pair_key || pair_key > BigInt::from(x) {
                            rec.double_entry_mismatches += 1;
                        }
                    }
                    rec.count += mult * listed.len() as u64;
                }
            }
        }
    }
    Ok(())
}
