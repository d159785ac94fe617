//! Cubic fields of bounded discriminant, with the brute-force oracle as a cross-check.
//!
//!     cargo run --release --example cubic_fields -- 100000

use std::time::Instant;

use artin3::cubicenum::{enumerate_cubic_fields_with, galois_split, oracle_enumerate, EnumOptions, ORACLE_MAX};

fn main() {
    let x: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let t = Instant::now();
    let (fields, stats) = enumerate_cubic_fields_with(x, &EnumOptions::default());
    let elapsed = t.elapsed();
    let (c3, s3) = galois_split(&fields);
    println!("|d| <= {x}: {} cubic fields ({c3} cyclic, {s3} non-Galois) in {elapsed:.2?}", fields.len());
    println!("ratio to X: {:.4}", fields.len() as f64 / x as f64);
    println!("{stats:?}");
    for r in fields.iter().take(8) {
        println!("  d = {:>6}  {}  {}  {}", r.disc, r.galois.label(), r.form, r.poly);
    }
    if x <= ORACLE_MAX {
        let t = Instant::now();
        let oracle = oracle_enumerate(x).expect("within the oracle cap");
        println!("oracle: {} fields in {:.2?}, agreement: {}", oracle.len(), t.elapsed(), oracle == fields);
    }
}
