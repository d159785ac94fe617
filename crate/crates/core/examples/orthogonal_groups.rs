//! Finite subgroups of O(3) from exact matrices: the rotation groups, the
//! S4 standard image outside SO(3), and {±I}·A5.
//!
//!     cargo run --example orthogonal_groups

use artin3::orthoclass::{classify, isoclinic_lift, standard, MatrixGroup3};

fn main() {
    let cases = [
        ("tetrahedral rotations", standard::tetrahedral_rotations()),
        ("octahedral rotations", standard::octahedral_rotations()),
        ("icosahedral rotations", standard::icosahedral_rotations()),
        ("S4 standard representation", standard::s4_standard()),
        ("{±I}·A5", standard::with_minus_one(standard::icosahedral_rotations())),
    ];
    for (name, gens) in cases {
        let g = MatrixGroup3::close(&gens).expect("finite group");
        let c = classify(&g).expect("recognized");
        println!(
            "{name}: order {}, type {}, in SO(3) {}, contains -I {}, irreducible {}",
            c.order, c.abstract_type, c.in_so3, c.contains_minus_one, c.irreducible
        );
        if let Some(s) = &c.split {
            println!("  splits as {} x {{±1}} via {}", s.rotation_type, s.epsilon);
        }
        if let Ok(lift) = isoclinic_lift(&g) {
            let lifted = classify(&lift.group).unwrap();
            println!("  g -> det(g)·g lands in SO(3) as {}, kappa = element {}", lifted.abstract_type, lift.kappa);
        }
    }
}
