//! Quartic and quintic field tables: strict and lenient ingestion, Galois
//! label certificates, coverage and the θ₁ bound they support.
//!
//!     cargo run --example field_tables -- data/quartic_sample.csv

use std::path::PathBuf;

use artin3::census::{certify_label, theta1_bound, FieldTable, GaloisLabel, IngestMode, WildCaps};
use artin3::nfield::NumberField;

fn main() {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let paths: Vec<PathBuf> = match std::env::args().nth(1) {
        Some(p) => vec![p.into()],
        None => vec![data.join("quartic_sample.csv"), data.join("quintic_sample.jsonl")],
    };
    let mut table = FieldTable::new();
    for p in &paths {
        match FieldTable::load(p, IngestMode::Strict) {
            Ok(t) => {
                println!("{}: {} rows", p.display(), t.rows.len());
                table.merge(t);
            }
            Err(e) => {
                eprintln!("{}: {e}", p.display());
                std::process::exit(e.exit_code());
            }
        }
    }
    for row in &table.rows {
        let k = NumberField::new(row.poly.clone()).unwrap();
        let cert = certify_label(&k).map(|l| l.as_str()).unwrap_or("-");
        println!("  {} {:>8} {}  certified {cert}", row.galois_label.as_str(), row.disc, row.poly);
    }
    for l in [GaloisLabel::A4, GaloisLabel::S4, GaloisLabel::A5] {
        println!("coverage {}: |d| <= {}", l.as_str(), table.coverage(l));
    }

    // A stated discriminant that disagrees with the computed one.
    let bad = "degree,coeffs,disc,galois_label,source\n4,\"[9,-8,2,0,1]\",3137,A4,typo\n";
    println!("strict: {:?}", FieldTable::read_csv(bad.as_bytes(), IngestMode::Strict).err());
    let lenient = FieldTable::read_csv(bad.as_bytes(), IngestMode::Lenient).unwrap();
    println!("lenient: {} rows, flagged {:?}", lenient.rows.len(), lenient.flagged);

    let caps = WildCaps::default();
    for x in [1u64, 2, 5] {
        match theta1_bound(x, &table, &caps) {
            Ok(r) => println!("θ₁({x}) <= {}", r.count),
            Err(e) => println!("θ₁({x}): {e}"),
        }
    }
}
