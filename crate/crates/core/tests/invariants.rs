use std::path::PathBuf;

use num_bigint::BigInt;
use proptest::prelude::*;

use artin3::census::{
    density_report, theta1_bound, FieldTable, GaloisLabel, IndexPolicy, IngestMode, PairKernel, PairKernelOptions,
    ReportInputs, WildCaps,
};
use artin3::cubicenum::{enumerate_cubic_fields, CubicGalois};
use artin3::dirichlet::enumerate_primitive;
use artin3::nfield::{field_disc, poly_disc, ZPoly};

/// Coefficients of f(x + k), low to high.
fn shift(f: &[i64], k: i64) -> Vec<i64> {
    let n = f.len();
    let mut out = vec![0i64; n];
    // Horner: g = g·(x + k) + c
    for &c in f.iter().rev() {
        let mut next = vec![0i64; n];
        for i in 0..n {
            if i + 1 < n {
                next[i + 1] += out[i];
            }
            next[i] += k * out[i];
        }
        next[0] += c;
        out = next;
    }
    out
}

fn monic(lower: Vec<i64>) -> Vec<i64> {
    let mut f = lower;
    f.push(1);
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_disc_is_shift_invariant(lower in prop::collection::vec(-12i64..=12, 2..=4), k in -4i64..=4) {
        let f = monic(lower);
        let Ok((d, index)) = field_disc(&ZPoly::from_i64(&f)) else {
            return Ok(());
        };
        let g = ZPoly::from_i64(&shift(&f, k));
        let (dg, ig) = field_disc(&g).unwrap();
        prop_assert_eq!(&dg, &d);
        prop_assert_eq!(ig, index);
    }

    #[test]
    fn poly_disc_is_index_squared_times_field_disc(lower in prop::collection::vec(-30i64..=30, 2..=4)) {
        let f = ZPoly::from_i64(&monic(lower));
        if let Ok((d, index)) = field_disc(&f) {
            prop_assert_eq!(poly_disc(&f), &index * &index * d);
        }
    }

    #[test]
    fn theta1_is_monotone_in_caps_and_x(
        q in 1u64..5000, dq in 0u64..5000, r in 1u64..5000, dr in 0u64..5000, x in 1u64..50, dx in 0u64..50,
    ) {
        let table = sample_tables(true);
        let small = WildCaps { quartic: BigInt::from(q), quintic: BigInt::from(r) };
        let large = WildCaps { quartic: BigInt::from(q + dq), quintic: BigInt::from(r + dr) };
        let a = theta1_bound(x, &table, &small).unwrap().count;
        let b = theta1_bound(x, &table, &large).unwrap().count;
        let c = theta1_bound(x + dx, &table, &large).unwrap().count;
        prop_assert!(a <= b && b <= c);
    }
}

#[test]
fn shift_helper() {
    // (x + 1)² − 2 = x² + 2x − 1
    assert_eq!(shift(&[-2, 0, 1], 1), vec![-1, 2, 1]);
}

fn sample_tables(declare: bool) -> FieldTable {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut t = FieldTable::load(&data.join("quartic_sample.csv"), IngestMode::Strict).unwrap();
    t.merge(FieldTable::load(&data.join("quintic_sample.jsonl"), IngestMode::Strict).unwrap());
    if declare {
        let huge = BigInt::from(10u32).pow(60);
        for l in [GaloisLabel::A4, GaloisLabel::S4, GaloisLabel::A5] {
            t.declare_coverage(l, huge.clone());
        }
    }
    t
}

#[test]
fn cyclic_cubics_match_cubic_characters() {
    let x = 40_000u64;
    let mut fields: Vec<u64> = enumerate_cubic_fields(x)
        .iter()
        .filter(|r| r.galois == CubicGalois::C3)
        .map(|r| (r.disc as f64).sqrt().round() as u64)
        .collect();
    fields.sort_unstable();
    // each cyclic cubic field of conductor f carries a pair {χ, χ̄} of order 3
    let mut conductors: Vec<u64> =
        enumerate_primitive(200).iter().filter(|c| c.order() == 3).map(|c| c.conductor()).collect();
    conductors.sort_unstable();
    let mut pairs = Vec::new();
    for w in conductors.chunks(2) {
        assert_eq!(w[0], w[1]);
        pairs.push(w[0]);
    }
    assert_eq!(fields, pairs);
    assert_eq!(fields.first(), Some(&7));
}

#[test]
fn census_columns_are_monotone() {
    let grid = [10u64, 50, 100, 200, 400];
    let cubics = enumerate_cubic_fields(400);
    let kernel = PairKernel::build(&cubics, 400, 400, &PairKernelOptions::default()).unwrap();
    let tables = sample_tables(false);
    let inputs = ReportInputs { tables: &tables, kernel: &kernel, caps: WildCaps::default(), policy: IndexPolicy::Skip };
    let report = density_report(&grid, &inputs).unwrap();
    assert!(report.non_monotone().is_empty(), "{:?}", report.non_monotone());
    assert_eq!(report.double_entry().1, 0);
}
