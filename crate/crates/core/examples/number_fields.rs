//! Maximal orders: field discriminant, polynomial index and prime splitting.
//!
//!     cargo run --example number_fields -- "x^3 - 54"

use artin3::nfield::{NumberField, ZPoly};

fn main() {
    let polys: Vec<String> = match std::env::args().nth(1) {
        Some(p) => vec![p],
        None => ["x^2 - 5", "x^3 - 54", "x^3 - x^2 - 10*x + 8", "x^4 - 10*x^2 + 1", "x^6 + 108"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    };
    for text in polys {
        let f: ZPoly = match text.parse() {
            Ok(f) => f,
            Err(e) => {
                eprintln!("{text}: {e}");
                std::process::exit(64);
            }
        };
        let k = match NumberField::new(f) {
            Ok(k) => k,
            Err(e) => {
                eprintln!("{text}: {e}");
                continue;
            }
        };
        println!("{}: disc(f) = {}, d_K = {}, index {}", k.poly(), k.poly_disc(), k.disc(), k.index());
        for p in k.ramified_primes().into_iter().chain([2, 3, 5, 7]).collect::<std::collections::BTreeSet<_>>() {
            match k.prime_splitting(p) {
                Ok(s) => println!("  {p}: (f, e) = {s:?}"),
                Err(e) => println!("  {p}: {e}"),
            }
        }
    }
}
