//! Acceptance run: one PASS/FAIL line per criterion. Tolerances and frozen
//! reference values are pinned below.

mod oracle;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use artin3::conductor::{tame_disc_bound_a5, tame_exponent, twist_tame_exponents, Conductor, TwistSupport};
use artin3::cubicenum::{enumerate_cubic_fields, oracle_enumerate, CubicFieldRecord};
use artin3::dirichlet::{count_ab3, count_ab_sd3};
use artin3::exactnum::{CycNum, Rational};
use artin3::nfield::{field_disc, poly_disc, NumberField, ZPoly};
use artin3::orthoclass::{classify, isoclinic_lift, standard, AbstractType, MatrixGroup3};
use artin3::quadchar::{bound_check, calibrate_constant, enumerate_quad_chars_with, tame_cross_check, theta_grid};
use artin3::reptheory::{builtin_labels, builtin_table, cyclic_subgroups, so3_type_characters, ClassFunction, SubgroupEmbedding};

/// Time limits.
const TABLES_LIMIT: Duration = Duration::from_secs(1);
const CLASSIFY_LIMIT: Duration = Duration::from_secs(1);
const CUBIC_LIMIT: Duration = Duration::from_secs(300);

/// count(10⁶)/10⁶ bracket for cubic fields.
const CUBIC_RATIO: (f64, f64) = (0.20, 0.32);

/// count_ab_sd3(x) ≤ C·x·(ln x)², C = max over x ∈ {10², 10³} rounded up to 10⁻³.
const AB_SD_C: f64 = 0.069;

/// θ_{M,2}(x) ≤ C·√d·(ln d)²·x·(ln x)² with C from calibrate_constant on
/// d_M ≤ 500, x ∈ THETA_GRID, radius 1.
const THETA_C: (i64, i64) = (401, 1_000_000);
const THETA_GRID: [u64; 4] = [10, 100, 1000, 10_000];
const CALIBRATION_DISC: u64 = 500;
const SWEEP_DISC: u64 = 5000;

/// Golden suite: (coefficients low to high, d_K, index), values frozen from
/// the exhaustive-search oracle in `oracle::disc`.
const GOLDEN: [(&[i64], i64, i64); 50] = [
    (&[-5, 0, 1], 5, 2),
    (&[3, 0, 1], -3, 2),
    (&[1, 0, 1], -4, 1),
    (&[-2, 0, 1], 8, 1),
    (&[-12, 0, 1], 12, 2),
    (&[-45, 0, 1], 5, 6),
    (&[27, 0, 1], -3, 6),
    (&[-7, 0, 1], 28, 1),
    (&[5, 0, 1], -20, 1),
    (&[-1, -1, 1], 5, 1),
    (&[-20, 0, 1], 5, 4),
    (&[-2, 0, 0, 1], -108, 1),
    (&[1, 1, 0, 1], -31, 1),
    (&[-1, -1, 0, 1], -23, 1),
    (&[-1, -3, 0, 1], 81, 1),
    (&[-54, 0, 0, 1], -108, 27),
    (&[1, -2, -1, 1], 49, 1),
    (&[-10, 0, 0, 1], -300, 3),
    (&[-12, 0, 0, 1], -972, 2),
    (&[8, -10, -1, 1], 961, 2),
    (&[-19, 0, 0, 1], -1083, 3),
    (&[-28, 0, 0, 1], -588, 6),
    (&[-28, -21, 0, 1], 3969, 2),
    (&[10, 5, 0, 1], -200, 4),
    (&[1, 0, 0, 0, 1], 256, 1),
    (&[-2, 0, 0, 0, 1], -2048, 1),
    (&[-5, 0, 0, 0, 1], -2000, 4),
    (&[2, 0, 4, 0, 1], 2048, 1),
    (&[-1, -1, 0, 0, 1], -283, 1),
    (&[1, 0, -10, 0, 1], 2304, 8),
    (&[1, 0, -4, 0, 1], 2304, 1),
    (&[1, 1, 1, 1, 1], 125, 1),
    (&[3, 0, 0, 0, 1], 432, 4),
    (&[-12, 0, 0, 0, 1], -1728, 16),
    (&[-18, 0, 0, 0, 1], -18432, 9),
    (&[9, 0, 0, 0, 1], 2304, 9),
    (&[-2, 0, 0, 0, 0, 1], 50000, 1),
    (&[-1, -1, 0, 0, 0, 1], 2869, 1),
    (&[16, 20, 0, 0, 0, 1], 1000000, 32),
    (&[12, -5, 0, 0, 0, 1], 1000000, 8),
    (&[-3, 0, 0, 0, 0, 1], 253125, 1),
    (&[1, 3, -3, -4, 1, 1], 14641, 1),
    (&[-10, 0, 0, 0, 0, 1], 31250000, 1),
    (&[-6, 0, 0, 0, 0, 1], 4050000, 1),
    (&[-2, 0, 0, 0, 0, 0, 1], 1492992, 1),
    (&[3, 0, 0, 0, 0, 0, 1], -177147, 8),
    (&[1, 1, 0, 0, 0, 0, 1], -43531, 1),
    (&[1, 0, 0, 1, 0, 0, 1], -19683, 1),
    (&[1, 1, 1, 1, 1, 1, 1], -16807, 1),
    (&[108, 0, 0, 0, 0, 0, 1], -34992, 139968),
];

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let out = f();
    let el = t.elapsed();
    match (out, limit) {
        (Ok(_), Some(l)) if el > l => (Err(format!("took {el:.2?}, limit {l:?}")), el),
        (o, _) => (o, el),
    }
}

fn c1_tables() -> Outcome {
    let labels = builtin_labels();
    for label in &labels {
        let t = builtin_table(label).map_err(|e| format!("{label}: {e}"))?;
        t.check_orthogonality().map_err(|e| format!("{label}: {e}"))?;
        let squares: i64 = t.characters.iter().map(|c| c.degree().unwrap().pow(2)).sum();
        check(squares == t.group.order() as i64, format!("{label}: Σ deg² = {squares}"))?;
    }
    Ok(format!("{} tables orthogonal, Σ deg² = |G|", labels.len()))
}

fn c2_tame_sweep() -> Outcome {
    let mut pairs = 0;
    for (label, expected) in [("A4", 1), ("S4", 1), ("A5", 2)] {
        let t = builtin_table(label).unwrap();
        let chars = so3_type_characters(&t);
        check(chars.len() == expected, format!("{label}: {} SO(3)-type characters", chars.len()))?;
        for (name, chi) in &chars {
            for i in cyclic_subgroups(&t.group).iter().filter(|i| i.order() > 1) {
                let fixed = chi.trivial_multiplicity(i).map_err(|e| e.to_string())?;
                let e = tame_exponent(chi, i).map_err(|e| e.to_string())?;
                check(fixed == 1 && e == 2, format!("{label}/{name}: order {} gives fixed {fixed}, exponent {e}", i.order()))?;
                pairs += 1;
            }
        }
    }
    let s4 = builtin_table("S4").unwrap();
    let transposition = (0..s4.group.order())
        .find(|&g| s4.group.element_order(g) == 2 && artin3::reptheory::perm::sign(s4.group.element(g)) == -1)
        .unwrap();
    let inertia = SubgroupEmbedding::generated_by(&s4.group, &[transposition]);
    let e = tame_exponent(s4.get("std").unwrap(), &inertia).map_err(|e| e.to_string())?;
    check(e == 1, format!("S4 std at a transposition: exponent {e}"))?;
    Ok(format!("{pairs} (character, cyclic inertia) pairs give exponent 2; std with a transposition gives 1"))
}

fn c3_classify() -> Outcome {
    let g = MatrixGroup3::close(&standard::s4_standard()).map_err(|e| e.to_string())?;
    let c = classify(&g).map_err(|e| e.to_string())?;
    check(g.order() == 24, "order")?;
    check(!c.in_so3 && !c.contains_minus_one, "S4 image should avoid SO(3) and −I")?;
    check(c.abstract_type == AbstractType::S4Isoclinic, format!("type {}", c.abstract_type))?;
    let lift = isoclinic_lift(&g).map_err(|e| e.to_string())?;
    let el = g.elements();
    let img = lift.group.elements();
    check(lift.group.order() == 24, "lift order")?;
    let distinct: BTreeSet<usize> = lift.map.iter().copied().collect();
    check(distinct.len() == 24, "lift is not injective")?;
    for (i, a) in el.iter().enumerate() {
        let l = &img[lift.map[i]];
        check(l.det() == CycNum::one(), "lift leaves SO(3)")?;
        check(*l == *a || *l == a.neg(), "lift is not ±g")?;
        for (j, b) in el.iter().enumerate() {
            let k = g.index_of(&a.mul(b)).unwrap();
            check(lift.map[k] == lift.group.index_of(&l.mul(&img[lift.map[j]])).unwrap(), "lift is not a homomorphism")?;
        }
    }
    check(classify(&lift.group).map_err(|e| e.to_string())?.abstract_type == AbstractType::S4, "lifted group is not the octahedral group")?;

    let h = MatrixGroup3::close(&standard::with_minus_one(standard::icosahedral_rotations())).map_err(|e| e.to_string())?;
    let c = classify(&h).map_err(|e| e.to_string())?;
    let s = c.split.ok_or("no H × {±1} split for {±I}·A5")?;
    check(h.order() == 120 && s.rotation_order == 60 && s.rotation_type == AbstractType::A5, "split data")?;
    Ok("S4 image is isoclinic to the octahedral group (24 elements checked); {±I}·A5 = A5 × {±1}".into())
}

/// −1-eigenspace dimension of χ at g: (1/n)·Σ_k χ(g^k)(−1)^k, zero for odd n.
fn minus_one_multiplicity(chi: &ClassFunction, g: usize) -> u64 {
    let grp = chi.group();
    let n = grp.element_order(g) as i64;
    if n % 2 == 1 {
        return 0;
    }
    let mut s = CycNum::zero();
    for k in 0..n {
        let v = chi.value_at(grp.pow(g, k)).clone();
        s = if k % 2 == 0 { s.checked_add(&v).unwrap() } else { s.checked_sub(&v).unwrap() };
    }
    let r = s.to_rational().unwrap() / Rational::from_integer(BigInt::from(n));
    r.to_integer().try_into().unwrap()
}

fn c4_twist() -> Outcome {
    // Exponents per class from A5's three-dimensional character: unprimed
    // classes see σ at g, primed classes see σ ⊗ χ' at (g, −1).
    let a5 = builtin_table("A5").unwrap();
    let chi = a5.get("chi3a").unwrap();
    let mut expected = [0u32; 6];
    for (slot, order) in [(0usize, 2u32), (2, 3), (4, 5)] {
        let g = (0..a5.group.order()).find(|&g| a5.group.element_order(g) == order).unwrap();
        let i = SubgroupEmbedding::generated_by(&a5.group, &[g]);
        expected[slot + 1] = tame_exponent(chi, &i).unwrap() as u32;
        expected[slot] = 3 - minus_one_multiplicity(chi, g) as u32;
    }
    check(expected == [1, 2, 3, 2, 3, 2], format!("character-theory exponents {expected:?}"))?;

    let primes: Vec<u64> = (7..400u64).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a5);
    for trial in 0..100 {
        let mut pool = primes.clone();
        let mut sets: [BTreeSet<u64>; 6] = Default::default();
        for s in sets.iter_mut() {
            for _ in 0..rng.gen_range(0..=3) {
                s.insert(pool.swap_remove(rng.gen_range(0..pool.len())));
            }
        }
        let [a1, a2, b1, b2, c1, c2] = sets.clone();
        let support = TwistSupport { a1, a2, b1, b2, c1, c2 };
        let want = Conductor::from_factors(
            sets.iter().zip(expected).flat_map(|(s, e)| s.iter().map(move |&p| (p, e))),
        );
        let got = twist_tame_exponents(&support).map_err(|e| e.to_string())?;
        check(got == want, format!("trial {trial}: exponents differ"))?;
        let bound = tame_disc_bound_a5(&support.a(), &support.b(), &support.c()).map_err(|e| e.to_string())?;
        let q = got.value();
        check(bound <= &q * &q, format!("trial {trial}: tame disc bound exceeds q²"))?;
    }
    Ok("100 seeded supports match exponents (1,2,3,2,3,2); tame disc ≤ q² throughout".into())
}

fn c5_cubic() -> Outcome {
    let key = |v: &[CubicFieldRecord]| -> BTreeSet<(i64, [i64; 4])> { v.iter().map(|r| (r.disc, r.form.coeffs())).collect() };
    let fast = enumerate_cubic_fields(10_000);
    let slow = oracle_enumerate(10_000).map_err(|e| e.to_string())?;
    check(key(&fast) == key(&slow) && fast.len() == slow.len(), format!("{} fields vs oracle {}", fast.len(), slow.len()))?;
    let first = fast.iter().map(|r| r.disc.unsigned_abs()).min().unwrap_or(0);
    check(first == 23, format!("first |d| = {first}"))?;
    let t = Instant::now();
    let n = enumerate_cubic_fields(1_000_000).len();
    let el = t.elapsed();
    let ratio = n as f64 / 1e6;
    check(CUBIC_RATIO.0 <= ratio && ratio <= CUBIC_RATIO.1, format!("count(10⁶)/10⁶ = {ratio:.4}"))?;
    check(el <= CUBIC_LIMIT, format!("10⁶ took {el:.1?}"))?;
    Ok(format!("{} fields to 10⁴ equal the oracle; first |d| = 23; count(10⁶) = {n}, ratio {ratio:.4} in {el:.1?}", fast.len()))
}

fn c6_discs() -> Outcome {
    for &(c, d, idx) in &GOLDEN {
        let f = ZPoly::from_i64(c);
        let (o_d, o_i) = oracle::disc::maximal_disc(c);
        check(o_d == BigInt::from(d) && o_i == BigInt::from(idx), format!("{c:?}: oracle ({o_d}, {o_i}) drifted from frozen"))?;
        let (e_d, e_i) = field_disc(&f).map_err(|e| format!("{c:?}: {e}"))?;
        check(e_d == o_d && e_i == o_i, format!("{c:?}: engine ({e_d}, {e_i}), oracle ({o_d}, {o_i})"))?;
        check(poly_disc(&f) == &e_i * &e_i * &e_d, format!("{c:?}: disc(f) ≠ index²·d_K"))?;
    }
    let degrees: BTreeSet<usize> = GOLDEN.iter().map(|g| g.0.len() - 1).collect();
    Ok(format!("{} polynomials, degrees {degrees:?}, agree with the oracle; disc(f) = index²·d_K", GOLDEN.len()))
}

/// Per-field Kummer sweep shared by criteria 7 and 9.
struct SweepField {
    d: u64,
    thetas: Vec<u64>,
    sextics: usize,
    tower_fail: Vec<String>,
    primes_checked: usize,
}

fn sweep() -> Result<Vec<SweepField>, String> {
    let x = *THETA_GRID.last().unwrap();
    let mut out = Vec::new();
    for rec in enumerate_cubic_fields(SWEEP_DISC) {
        let m = NumberField::new(rec.poly.clone()).map_err(|e| e.to_string())?;
        let search = enumerate_quad_chars_with(&m, x, 1, 1).map_err(|e| e.to_string())?;
        let d2 = m.disc() * m.disc();
        let mut f = SweepField {
            d: rec.disc.unsigned_abs(),
            thetas: theta_grid(&search.records, &THETA_GRID),
            sextics: search.records.len(),
            tower_fail: Vec::new(),
            primes_checked: 0,
        };
        for r in &search.records {
            if !(r.sextic_disc() % &d2).is_zero() {
                f.tower_fail.push(format!("d_M = {}: d_M² ∤ d_K = {}", rec.disc, r.sextic_disc()));
            }
            let t = tame_cross_check(&m, r);
            f.primes_checked += t.primes_checked;
            if !t.mismatches.is_empty() {
                f.tower_fail.push(format!("d_M = {}: tame mismatch at {:?}", rec.disc, t.mismatches));
            }
        }
        out.push(f);
    }
    Ok(out)
}

fn c7_tower(s: &[SweepField]) -> Outcome {
    let fields = s.iter().filter(|f| f.sextics > 0).count();
    let sextics: usize = s.iter().map(|f| f.sextics).sum();
    let primes: usize = s.iter().map(|f| f.primes_checked).sum();
    check(fields >= 10 && sextics >= 100, format!("only {sextics} sextics over {fields} fields"))?;
    if let Some(e) = s.iter().flat_map(|f| &f.tower_fail).next() {
        return Err(e.clone());
    }
    Ok(format!("{sextics} sextics over {fields} cubic fields: d_M² | d_K, {primes} tame primes consistent"))
}

fn c8_abelian() -> Outcome {
    let (all10, sd10) = oracle::chars::count_triples(10);
    check(sd10 == 8 && count_ab_sd3(10) == 8, format!("count_ab_sd3(10) = {}, oracle {sd10}", count_ab_sd3(10)))?;
    check(count_ab3(10) == all10 as u128, format!("count_ab3(10) = {}, oracle {all10}", count_ab3(10)))?;
    let grid = [100u64, 1000, 10_000];
    let vals: Vec<(u128, u128)> = grid.iter().map(|&x| (count_ab3(x), count_ab_sd3(x))).collect();
    for w in vals.windows(2) {
        // sd1/ab1 ≥ sd2/ab2
        check(w[0].1 * w[1].0 >= w[1].1 * w[0].0, "sd/ab ratio increases")?;
    }
    let shape = |x: u64| x as f64 * (x as f64).ln().powi(2);
    let calibrated = [100u64, 1000].iter().map(|&x| count_ab_sd3(x) as f64 / shape(x)).fold(0.0, f64::max);
    check((calibrated * 1000.0).ceil() / 1000.0 == AB_SD_C, format!("calibration drifted: {calibrated:.6}"))?;
    for x in [100u64, 1000, 10_000, 100_000] {
        let n = count_ab_sd3(x);
        check((n as f64) <= AB_SD_C * shape(x), format!("count_ab_sd3({x}) = {n} exceeds C·x(log x)²"))?;
    }
    Ok(format!("count_ab_sd3(10) = 8 = oracle; ratios {:?} non-increasing; C = {AB_SD_C} holds to 10⁵",
        vals.iter().map(|(a, s)| format!("{:.4}", *s as f64 / *a as f64)).collect::<Vec<_>>()))
}

fn c9_theta_bound(s: &[SweepField]) -> Outcome {
    let samples: Vec<(u64, u64, u64)> = s
        .iter()
        .filter(|f| f.d <= CALIBRATION_DISC)
        .flat_map(|f| THETA_GRID.iter().zip(&f.thetas).map(move |(&x, &t)| (f.d, x, t)))
        .collect();
    let c = calibrate_constant(&samples);
    let frozen = Rational::new(BigInt::from(THETA_C.0), BigInt::from(THETA_C.1));
    check(c == frozen, format!("calibrated C = {c}, frozen {frozen}"))?;
    let mut checks = 0;
    for f in s {
        for (&x, &t) in THETA_GRID.iter().zip(&f.thetas) {
            let b = bound_check(t, f.d, x, &frozen);
            check(b.pass, format!("d_M = {}, x = {x}: θ = {t} exceeds the bound", f.d))?;
            checks += 1;
        }
    }
    Ok(format!("C = {frozen} (calibrated on d_M ≤ {CALIBRATION_DISC}) holds on {checks} (M, x) pairs with d_M ≤ {SWEEP_DISC}"))
}

fn read(p: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(p).map_err(|e| format!("{}: {e}", p.display()))
}

fn c10_determinism() -> Outcome {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let tables = format!("{},{}", data.join("quartic_sample.csv").display(), data.join("quintic_sample.jsonl").display());
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let args = ["artin3", "--out-dir", dir.path().to_str().unwrap(), "census", "--grid", "10,100,1000", "--tables", &tables];
        let code = artin3::cli::run(args);
        // cells above the bundled tables' coverage are reported as gaps
        check(code == 0 || code == 2, format!("census exited {code}"))?;
        let csv = read(&dir.path().join("density_report.csv"))?;
        let json = read(&dir.path().join("density_report.json"))?;
        let meta: serde_json::Value =
            serde_json::from_slice(&read(&dir.path().join("census.meta.json"))?).map_err(|e| e.to_string())?;
        outputs.push((code, csv, json, meta));
    }
    let (a, b) = (&outputs[0], &outputs[1]);
    check(a.0 == b.0 && a.1 == b.1 && a.2 == b.2, "reports differ between runs")?;
    let checked = a.3["summary"]["double_entry_checked"].as_u64().unwrap_or(0);
    let mismatches = a.3["summary"]["double_entry_mismatches"].as_u64().unwrap_or(u64::MAX);
    check(checked > 0 && mismatches == 0, format!("double entry: {checked} checked, {mismatches} mismatches"))?;
    Ok(format!("two runs byte-identical (exit {}); {checked} double-entry checks, 0 mismatches", a.0))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, (out, el): (Outcome, Duration)| {
        let (tag, detail) = match out {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {n:>2} {tag} {name}: {detail} [{el:.2?}]");
    };
    report(1, "character tables", timed(Some(TABLES_LIMIT), c1_tables));
    report(2, "tame exponent sweep", timed(None, c2_tame_sweep));
    report(3, "orthogonal classification", timed(Some(CLASSIFY_LIMIT), c3_classify));
    report(4, "twist calculus", timed(None, c4_twist));
    report(5, "cubic enumeration", timed(None, c5_cubic));
    report(6, "discriminant engine", timed(None, c6_discs));
    let t = Instant::now();
    let s = sweep();
    let sweep_time = t.elapsed();
    let (c7, c9) = match &s {
        Ok(s) => (timed(None, || c7_tower(s)), timed(None, || c9_theta_bound(s))),
        Err(e) => ((Err(e.clone()), Duration::ZERO), (Err(e.clone()), Duration::ZERO)),
    };
    report(7, "tower identity", (c7.0, c7.1 + sweep_time));
    report(8, "abelian census", timed(None, c8_abelian));
    report(9, "θ_{M,2} bound", c9);
    report(10, "census determinism", timed(None, c10_determinism));
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
