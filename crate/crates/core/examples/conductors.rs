//! Tame conductors of A5-type representations, the twisted conductor
//! q(σ⊗χ)·q(χ')³ and the discriminant bounds that feed the census.
//!
//!     cargo run --example conductors

use std::collections::BTreeSet;

use artin3::conductor::{
    disc_from_conductor_bound, first_cyclic_of_order, tame_conductor, tame_disc_bound_a5, twist_conductor,
    twist_tame_exponents, wild_cap, Conductor, GroupKind, RamificationProfile, TwistSupport,
};
use artin3::reptheory::builtin_table;

fn main() {
    let a5 = builtin_table("A5").unwrap();
    let chi = a5.get("chi3a").unwrap();
    let profile = RamificationProfile::new()
        .tame(7, 2, true)
        .and_then(|p| p.tame(11, 3, true))
        .and_then(|p| p.tame(31, 5, true))
        .and_then(|p| p.wild(2))
        .unwrap();
    let q = tame_conductor(chi, &profile, &first_cyclic_of_order(chi)).unwrap();
    println!("tame conductor of chi3a at 7 (|I|=2), 11 (|I|=3), 31 (|I|=5): {q} = {}", q.value());
    println!("wild caps: quartic {}, quintic {}", wild_cap(4).unwrap(), wild_cap(5).unwrap());
    println!("quintic fields needed for q <= {}: |d| <= {}", q.value(), disc_from_conductor_bound(GroupKind::A5, &q));

    // twisting by a quadratic χ ramified at 7 and 11 but not at 31
    let support = TwistSupport { a1: [7].into(), b1: [11].into(), c2: [31].into(), ..Default::default() };
    let twisted = twist_tame_exponents(&support).unwrap();
    println!("q(σ⊗χ) tame part: {twisted}");
    let bound = tame_disc_bound_a5(&support.a(), &support.b(), &support.c()).unwrap();
    println!("tame disc bound {bound} <= q² = {}", twisted.value().pow(2));

    let ramified: BTreeSet<u64> = [2, 7, 11, 31].into();
    let total = twist_conductor(&twisted, &Conductor::from_u64(13), &ramified).unwrap();
    println!("with χ' of conductor 13: {total} = {}", total.value());
    println!("χ' at 7 instead: {:?}", twist_conductor(&twisted, &Conductor::from_u64(7), &ramified).err());
}
