//! Quadratic characters of a cubic field found as Kummer extensions M(√α),
//! their sextic fields, the tame consistency check and θ_{M,2}(x) against the
//! √d_M (log d_M)² x (log x)² shape.
//!
//!     cargo run --release --example kummer_characters -- "x^3 - x - 1" 2000

use num_traits::{Signed, ToPrimitive};

use artin3::exactnum::rat;
use artin3::nfield::{NumberField, ZPoly};
use artin3::quadchar::{bound_check, default_radius, enumerate_quad_chars_with, tame_cross_check, theta_grid};

fn main() {
    let mut args = std::env::args().skip(1);
    let poly: ZPoly = args.next().unwrap_or_else(|| "x^3 - x - 1".into()).parse().expect("polynomial");
    let x: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let m = NumberField::new(poly).expect("irreducible cubic");
    let d = m.disc().abs().to_u64().expect("cubic discriminant fits in u64");
    let radius = default_radius(x, d);
    let search = enumerate_quad_chars_with(&m, x, radius, 1).expect("cubic field");
    println!(
        "M = {}, d_M = {}: {} characters with q(χ) <= {x} (radius {radius}, {:?})",
        m.poly(),
        m.disc(),
        search.records.len(),
        search.completeness
    );
    for r in search.records.iter().take(12) {
        let t = tame_cross_check(&m, r);
        println!(
            "  α = {:?}  q(χ) = {:>5}  d_K = {:>14}  tame primes checked {} mismatches {:?}",
            r.alpha_coords,
            r.conductor,
            r.sextic_disc(),
            t.primes_checked,
            t.mismatches
        );
    }
    let grid: Vec<u64> = [10, 100, 1000, 10_000].into_iter().filter(|&g| g <= x).collect();
    let c = rat(401, 1_000_000);
    for (g, theta) in grid.iter().zip(theta_grid(&search.records, &grid)) {
        let b = bound_check(theta, d, *g, &c);
        println!("  θ(M, {g}) = {theta}, C·shape in [{:.3}, {:.3}], holds: {}", b.rhs.lo_f64(), b.rhs.hi_f64(), b.pass);
    }
}
