//! Character tables of A4, S4 and A5: orthogonality, the rotation-type
//! characters, and dim V − dim V^I over every cyclic inertia group.
//!
//!     cargo run --example character_tables -- A5

use std::collections::BTreeMap;

use artin3::conductor::tame_exponent;
use artin3::reptheory::{builtin_table, cyclic_subgroups, monomial_witness, so3_type_characters};

fn main() {
    let labels: Vec<String> = match std::env::args().nth(1) {
        Some(l) => vec![l],
        None => vec!["A4".into(), "S4".into(), "A5".into()],
    };
    for label in labels {
        let t = match builtin_table(&label) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{label}: {e}");
                std::process::exit(64);
            }
        };
        println!("{label}: order {}, {} classes, orthogonality {:?}", t.group.order(), t.names.len(), t.check_orthogonality());
        for (name, chi) in t.names.iter().zip(&t.characters) {
            let vals: Vec<String> = chi.values().iter().map(|v| v.to_string()).collect();
            println!("  {name:>8}: [{}]", vals.join(", "));
        }
        for (name, chi) in so3_type_characters(&t) {
            let kind = match monomial_witness(&chi) {
                Ok(Some((h, _))) => format!("induced from a subgroup of order {}", h.order()),
                Ok(None) => "primitive".into(),
                Err(e) => e.to_string(),
            };
            println!("  {name} is SO(3)-type, {kind}");
            let mut seen: BTreeMap<(usize, u64), usize> = BTreeMap::new();
            for i in cyclic_subgroups(&t.group).iter().filter(|i| i.order() > 1) {
                *seen.entry((i.order(), tame_exponent(&chi, i).unwrap())).or_default() += 1;
            }
            for ((order, e), n) in seen {
                println!("    |I| = {order} ({n} subgroups): exponent {e}");
            }
        }
    }
}
