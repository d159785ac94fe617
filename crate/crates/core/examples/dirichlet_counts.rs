//! Primitive Dirichlet characters and the abelian counts: multisets of
//! three characters with conductor product ≤ x, all and conjugation-closed.
//!
//!     cargo run --release --example dirichlet_counts -- 100000

use artin3::dirichlet::{count_ab3, count_ab_sd3, enumerate_primitive, primitive_count, quadratic_characters};

fn main() {
    let x_max: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000);
    for chi in enumerate_primitive(8) {
        println!("  conductor {:>2}, order {}: {chi}", chi.conductor(), chi.order());
    }
    println!("primitive characters of conductor 7: {}", primitive_count(7));
    let quad = quadratic_characters(30);
    let discs: Vec<i64> = quad.iter().filter_map(|c| c.fundamental_discriminant()).collect();
    println!("quadratic characters up to 30 by fundamental discriminant: {discs:?}");
    println!("{:>8} {:>14} {:>10} {:>10}", "x", "ab", "absd", "absd/ab");
    let mut x = 10;
    while x <= x_max {
        let (ab, sd) = (count_ab3(x), count_ab_sd3(x));
        println!("{x:>8} {ab:>14} {sd:>10} {:>10.6}", sd as f64 / ab as f64);
        x *= 10;
    }
}
