//! The full density report: abelian counts, the primitive bound from field
//! tables, the monomial pair census over cubic fields and the twisted A5
//! count, on a grid of conductor bounds.
//!
//!     cargo run --release --example density_report -- 10,100,1000

use std::path::PathBuf;

use artin3::census::{density_report, FieldTable, IndexPolicy, IngestMode, PairKernel, PairKernelOptions, ReportInputs, WildCaps};
use artin3::cubicenum::enumerate_cubic_fields;

fn main() {
    let grid: Vec<u64> = std::env::args()
        .nth(1)
        .map(|s| s.split(',').map(|v| v.trim().parse().expect("grid value")).collect())
        .unwrap_or_else(|| vec![10, 100, 1000]);
    let x_max = *grid.last().expect("non-empty grid");
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut tables = FieldTable::load(&data.join("quartic_sample.csv"), IngestMode::Strict).unwrap();
    tables.merge(FieldTable::load(&data.join("quintic_sample.jsonl"), IngestMode::Strict).unwrap());

    let cubics = enumerate_cubic_fields(x_max);
    let kernel = PairKernel::build(&cubics, x_max, x_max, &PairKernelOptions::default()).unwrap();
    let inputs = ReportInputs { tables: &tables, kernel: &kernel, caps: WildCaps::default(), policy: IndexPolicy::Skip };
    let report = density_report(&grid, &inputs).unwrap();
    print!("{}", report.to_csv());
    let (checked, mismatches) = report.double_entry();
    println!("double-entry conductor checks: {checked}, mismatches: {mismatches}");
    println!("exit status {}", report.exit_code());
}
