//! Artin conductor calculus: tame exponents from inertia invariants, the
//! uniform wild caps, the conductor-discriminant product for induced
//! representations, and the twist formulas for A5-type representations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith;
use crate::reptheory::{ClassFunction, RepError, SubgroupEmbedding};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConductorError {
    #[error("inertia subgroup is not cyclic")]
    NonCyclicInertia,
    #[error("no cyclic subgroup of order {0} to serve as inertia")]
    UnresolvableInertia(u32),
    #[error("wild cap is only defined for permutation degrees 4 and 5, got {0}")]
    UnsupportedDegree(u32),
    #[error("supports of the two conductors overlap at {0}")]
    SupportOverlap(u64),
    #[error("invalid twist support: {0}")]
    InvalidSupport(String),
    #[error("{0} is not the conductor of a quadratic character")]
    NotQuadraticConductor(String),
    #[error("invalid ramification profile: {0}")]
    InvalidProfile(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Positive integer kept in factored form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conductor {
    factored: BTreeMap<u64, u32>,
}

impl Conductor {
    pub fn one() -> Self {
        Conductor::default()
    }

    pub fn from_factors<I: IntoIterator<Item = (u64, u32)>>(factors: I) -> Self {
        let mut c = Conductor::one();
        for (p, e) in factors {
            if e > 0 {
                *c.factored.entry(p).or_insert(0) += e;
            }
        }
        c
    }

    pub fn prime_power(p: u64, e: u32) -> Self {
        Self::from_factors([(p, e)])
    }

    pub fn from_u64(n: u64) -> Self {
        assert!(n >= 1, "conductors are positive");
        Conductor { factored: arith::factor_u64(n) }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let f = arith::factor_big(n);
        Self::from_factors(f.into_iter().map(|(p, e)| (p.to_u64().expect("prime fits in u64"), e)))
    }

    pub fn factored(&self) -> &BTreeMap<u64, u32> {
        &self.factored
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factored.get(&p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> BTreeSet<u64> {
        self.factored.keys().copied().collect()
    }

    pub fn value(&self) -> BigInt {
        self.factored.iter().fold(BigInt::one(), |acc, (&p, &e)| acc * BigInt::from(p).pow(e))
    }

    pub fn value_u64(&self) -> Option<u64> {
        self.value().to_u64()
    }

    pub fn mul(&self, other: &Conductor) -> Conductor {
        Self::from_factors(self.factored.iter().chain(other.factored.iter()).map(|(&p, &e)| (p, e)))
    }

    pub fn pow(&self, k: u32) -> Conductor {
        Self::from_factors(self.factored.iter().map(|(&p, &e)| (p, e * k)))
    }

    /// Part supported away from the given primes.
    pub fn without(&self, primes: &[u64]) -> Conductor {
        Self::from_factors(self.factored.iter().filter(|(p, _)| !primes.contains(p)).map(|(&p, &e)| (p, e)))
    }
}

impl fmt::Display for Conductor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factored.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factored
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for Conductor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, u32> = self.factored.iter().map(|(p, e)| (p.to_string(), *e)).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Conductor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, u32>::deserialize(d)?;
        let mut out = Conductor::one();
        for (p, e) in m {
            let p: u64 = p.parse().map_err(serde::de::Error::custom)?;
            if !arith::is_prime_u64(p) {
                return Err(serde::de::Error::custom(format!("{p} is not prime")));
            }
            out = out.mul(&Conductor::prime_power(p, e));
        }
        Ok(out)
    }
}

/// Inertia class of a tame prime for an A5-type representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum A5Class {
    A,
    B,
    C,
}

impl A5Class {
    pub fn from_inertia_order(e: u32) -> Option<A5Class> {
        match e {
            2 => Some(A5Class::A),
            3 => Some(A5Class::B),
            5 => Some(A5Class::C),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InertiaDatum {
    Tame { order: u32, a5_class: Option<A5Class> },
    Wild,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub entries: BTreeMap<u64, InertiaDatum>,
}

impl RamificationProfile {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a tame prime; `a5` attaches the A/B/C class derived from the order.
    pub fn tame(mut self, p: u64, order: u32, a5: bool) -> Result<Self, ConductorError> {
        if !(2..=5).contains(&order) {
            return Err(ConductorError::InvalidProfile(format!("tame inertia order {order} at {p}")));
        }
        if order as u64 % p == 0 {
            return Err(ConductorError::InvalidProfile(format!("inertia of order {order} at {p} is wild")));
        }
        let a5_class = if a5 {
            Some(A5Class::from_inertia_order(order).ok_or_else(|| {
                ConductorError::InvalidProfile(format!("A5 has no tame inertia of order {order}"))
            })?)
        } else {
            None
        };
        self.entries.insert(p, InertiaDatum::Tame { order, a5_class });
        Ok(self)
    }

    pub fn wild(mut self, p: u64) -> Result<Self, ConductorError> {
        if ![2, 3, 5].contains(&p) {
            return Err(ConductorError::InvalidProfile(format!("wild ramification at {p}")));
        }
        self.entries.insert(p, InertiaDatum::Wild);
        Ok(self)
    }
}

/// dim V − dim V^I for tame (cyclic) inertia I.
pub fn tame_exponent(chi: &ClassFunction, inertia: &SubgroupEmbedding) -> Result<u64, ConductorError> {
    if !inertia.is_cyclic() {
        return Err(ConductorError::NonCyclicInertia);
    }
    let d = chi.degree().filter(|&d| d >= 0).ok_or(RepError::NotACharacter)? as u64;
    let fixed = chi.trivial_multiplicity(inertia)?;
    Ok(d - fixed)
}

/// ∏ p^{tame exponent} over the tame entries of the profile; wild primes are left to the caps.
pub fn tame_conductor(
    chi: &ClassFunction,
    profile: &RamificationProfile,
    resolver: &dyn Fn(u32) -> Option<SubgroupEmbedding>,
) -> Result<Conductor, ConductorError> {
    let mut out = Conductor::one();
    for (&p, datum) in &profile.entries {
        if let InertiaDatum::Tame { order, .. } = datum {
            let i = resolver(*order).ok_or(ConductorError::UnresolvableInertia(*order))?;
            let e = tame_exponent(chi, &i)?;
            out = out.mul(&Conductor::prime_power(p, e as u32));
        }
    }
    Ok(out)
}

/// Resolver picking the first cyclic subgroup of the requested order.
pub fn first_cyclic_of_order(chi: &ClassFunction) -> impl Fn(u32) -> Option<SubgroupEmbedding> + '_ {
    move |e| {
        let g = chi.group();
        (0..g.order())
            .find(|&x| g.element_order(x) == e)
            .map(|x| SubgroupEmbedding::generated_by(g, &[x]))
    }
}

/// Uniform bound on the wild part: 2^11·3^7 for quartic, 2^14·3^9·5^9 for quintic fields.
pub fn wild_cap(m: u32) -> Result<Conductor, ConductorError> {
    match m {
        4 => Ok(Conductor::from_factors([(2, 11), (3, 7)])),
        5 => Ok(Conductor::from_factors([(2, 14), (3, 9), (5, 9)])),
        _ => Err(ConductorError::UnsupportedDegree(m)),
    }
}

/// q(Ind χ) = d_M · q(χ).
pub fn induced_conductor(d_m: &BigInt, q_chi: &Conductor) -> Conductor {
    Conductor::from_bigint(d_m).mul(q_chi)
}

/// q(σ⊗χ) · q(χ')³, with the support of χ' disjoint from `q_sigma_chi` and from `ramified`.
pub fn twist_conductor(
    q_sigma_chi: &Conductor,
    q_chi_prime: &Conductor,
    ramified: &BTreeSet<u64>,
) -> Result<Conductor, ConductorError> {
    for p in q_chi_prime.support() {
        if q_sigma_chi.exponent(p) > 0 || ramified.contains(&p) {
            return Err(ConductorError::SupportOverlap(p));
        }
    }
    Ok(q_sigma_chi.mul(&q_chi_prime.pow(3)))
}

/// Tame primes of an A5-type field split by inertia class and by whether the
/// twisting character ramifies there (primed sets).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSupport {
    pub a1: BTreeSet<u64>,
    pub a2: BTreeSet<u64>,
    pub b1: BTreeSet<u64>,
    pub b2: BTreeSet<u64>,
    pub c1: BTreeSet<u64>,
    pub c2: BTreeSet<u64>,
}

impl TwistSupport {
    fn sets(&self) -> [(&BTreeSet<u64>, u32); 6] {
        [(&self.a1, 1), (&self.a2, 2), (&self.b1, 3), (&self.b2, 2), (&self.c1, 3), (&self.c2, 2)]
    }

    pub fn validate(&self) -> Result<(), ConductorError> {
        let mut seen = BTreeSet::new();
        for (s, _) in self.sets() {
            for &p in s {
                if p <= 5 || !arith::is_prime_u64(p) {
                    return Err(ConductorError::InvalidSupport(format!("{p} is not a prime above 5")));
                }
                if !seen.insert(p) {
                    return Err(ConductorError::InvalidSupport(format!("{p} appears twice")));
                }
            }
        }
        Ok(())
    }

    pub fn a(&self) -> BTreeSet<u64> {
        self.a1.union(&self.a2).copied().collect()
    }

    pub fn b(&self) -> BTreeSet<u64> {
        self.b1.union(&self.b2).copied().collect()
    }

    pub fn c(&self) -> BTreeSet<u64> {
        self.c1.union(&self.c2).copied().collect()
    }
}

/// Exponents 1, 2 on A', A''; 3, 2 on B', B''; 3, 2 on C', C''.
pub fn twist_tame_exponents(support: &TwistSupport) -> Result<Conductor, ConductorError> {
    support.validate()?;
    Ok(Conductor::from_factors(
        support.sets().into_iter().flat_map(|(s, e)| s.iter().map(move |&p| (p, e))),
    ))
}

/// ∏_A p² ∏_B p² ∏_C p⁴.
pub fn tame_disc_bound_a5(a: &BTreeSet<u64>, b: &BTreeSet<u64>, c: &BTreeSet<u64>) -> Result<BigInt, ConductorError> {
    let support = TwistSupport { a2: a.clone(), b2: b.clone(), c2: c.clone(), ..Default::default() };
    support.validate()?;
    let f = Conductor::from_factors(
        a.iter().map(|&p| (p, 2)).chain(b.iter().map(|&p| (p, 2))).chain(c.iter().map(|&p| (p, 4))),
    );
    Ok(f.value())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    A4,
    S4,
    A5,
}

impl GroupKind {
    pub fn degree(self) -> u32 {
        match self {
            GroupKind::A4 | GroupKind::S4 => 4,
            GroupKind::A5 => 5,
        }
    }
}

/// Ceiling of √n for n ≥ 0.
pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = arith::isqrt(n);
    if &s * &s == *n {
        s
    } else {
        s + 1
    }
}

/// ⌈c·q^{3/2}⌉ for A4/S4 and c·q² for A5, c the wild cap.
pub fn disc_from_conductor_bound(group: GroupKind, q: &Conductor) -> BigInt {
    let c = wild_cap(group.degree()).expect("degree 4 or 5").value();
    let qv = q.value();
    match group {
        GroupKind::A5 => c * &qv * &qv,
        _ => ceil_sqrt(&(&c * &c * qv.pow(3))),
    }
}

/// Validate q = 2^α ∏ q_j with α ∈ {0, 2, 3} and distinct odd primes q_j.
pub fn epsilon_conductor_shape(q: &Conductor) -> Result<(u32, Vec<u64>), ConductorError> {
    let alpha = q.exponent(2);
    if ![0, 2, 3].contains(&alpha) {
        return Err(ConductorError::NotQuadraticConductor(q.to_string()));
    }
    let mut odd = Vec::new();
    for (&p, &e) in q.factored() {
        if p == 2 {
            continue;
        }
        if e != 1 {
            return Err(ConductorError::NotQuadraticConductor(q.to_string()));
        }
        odd.push(p);
    }
    Ok((alpha, odd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reptheory::{builtin_table, perm::from_cycles};

    fn sub(label: &str, deg: usize, cycles: &[&str]) -> (ClassFunction, SubgroupEmbedding) {
        let t = builtin_table(label).unwrap();
        let g = t.group.clone();
        let gens: Vec<usize> = cycles.iter().map(|c| g.index_of(&from_cycles(deg, c).unwrap()).unwrap()).collect();
        let name = match label {
            "A4" => "chi3",
            "S4" => "std*sgn",
            _ => "chi3a",
        };
        (t.get(name).unwrap().clone(), SubgroupEmbedding::generated_by(&g, &gens))
    }

    #[test]
    fn tame_exponents() {
        let (chi, i) = sub("A4", 4, &["(1 2)(3 4)"]);
        assert_eq!(tame_exponent(&chi, &i).unwrap(), 2);
        let (chi, i) = sub("S4", 4, &["(1 2 3 4)"]);
        assert_eq!(tame_exponent(&chi, &i).unwrap(), 2);
        let s4 = builtin_table("S4").unwrap();
        let t = SubgroupEmbedding::generated_by(&s4.group, &[s4.group.index_of(&from_cycles(4, "(1 2)").unwrap()).unwrap()]);
        assert_eq!(tame_exponent(s4.get("std").unwrap(), &t).unwrap(), 1);
        let (chi, v4) = sub("A4", 4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(tame_exponent(&chi, &v4), Err(ConductorError::NonCyclicInertia));
    }

    #[test]
    fn tame_conductors() {
        let a5 = builtin_table("A5").unwrap();
        let chi = a5.get("chi3a").unwrap();
        let prof = RamificationProfile::new().tame(7, 2, true).unwrap().tame(11, 3, true).unwrap().tame(31, 5, true).unwrap();
        let q = tame_conductor(chi, &prof, &first_cyclic_of_order(chi)).unwrap();
        assert_eq!(q, Conductor::from_factors([(7, 2), (11, 2), (31, 2)]));
        assert_eq!(tame_conductor(chi, &RamificationProfile::new(), &first_cyclic_of_order(chi)).unwrap(), Conductor::one());
        let a4 = builtin_table("A4").unwrap();
        let chi = a4.get("chi3").unwrap();
        let prof = RamificationProfile::new().tame(7, 3, false).unwrap();
        assert_eq!(tame_conductor(chi, &prof, &first_cyclic_of_order(chi)).unwrap().value(), BigInt::from(49));
        let prof = RamificationProfile::new().tame(7, 5, false).unwrap();
        assert_eq!(
            tame_conductor(chi, &prof, &first_cyclic_of_order(chi)),
            Err(ConductorError::UnresolvableInertia(5))
        );
        assert!(RamificationProfile::new().wild(7).is_err());
    }

    #[test]
    fn caps_and_bounds() {
        assert_eq!(wild_cap(4).unwrap().value(), BigInt::from(4_478_976u64));
        assert_eq!(wild_cap(5).unwrap(), Conductor::from_factors([(2, 14), (3, 9), (5, 9)]));
        assert_eq!(wild_cap(5).unwrap().value(), BigInt::from(629_856_000_000_000u64));
        assert_eq!(wild_cap(6), Err(ConductorError::UnsupportedDegree(6)));
        let q49 = Conductor::from_u64(49);
        assert_eq!(disc_from_conductor_bound(GroupKind::A4, &q49), BigInt::from(4_478_976u64 * 343));
        assert_eq!(
            disc_from_conductor_bound(GroupKind::A5, &q49),
            BigInt::from(629_856_000_000_000u64) * BigInt::from(2401)
        );
        assert_eq!(disc_from_conductor_bound(GroupKind::S4, &Conductor::one()), BigInt::from(4_478_976u64));
        // non-square q: ceiling of c·q^{3/2}
        let b = disc_from_conductor_bound(GroupKind::S4, &Conductor::from_u64(2));
        let c = BigInt::from(4_478_976u64);
        assert!(&b * &b >= &c * &c * 8 && (&b - 1) * (&b - 1) < &c * &c * 8);
    }

    #[test]
    fn induced_and_twist() {
        assert_eq!(induced_conductor(&BigInt::from(49), &Conductor::from_u64(8)).value(), BigInt::from(392));
        assert_eq!(induced_conductor(&BigInt::from(23), &Conductor::one()).value(), BigInt::from(23));
        let q = twist_conductor(&Conductor::from_u64(4), &Conductor::from_u64(3), &BTreeSet::new()).unwrap();
        assert_eq!(q.value(), BigInt::from(108));
        assert_eq!(
            twist_conductor(&Conductor::from_u64(12), &Conductor::from_u64(3), &BTreeSet::new()),
            Err(ConductorError::SupportOverlap(3))
        );
    }

    #[test]
    fn twist_exponents() {
        let s = TwistSupport { a1: [7].into(), ..Default::default() };
        assert_eq!(twist_tame_exponents(&s).unwrap().value(), BigInt::from(7));
        let s = TwistSupport { b1: [11].into(), c2: [31].into(), ..Default::default() };
        assert_eq!(twist_tame_exponents(&s).unwrap().value(), BigInt::from(1331 * 961));
        assert_eq!(twist_tame_exponents(&TwistSupport::default()).unwrap(), Conductor::one());
        assert_eq!(tame_disc_bound_a5(&[7].into(), &BTreeSet::new(), &BTreeSet::new()).unwrap(), BigInt::from(49));
        assert_eq!(tame_disc_bound_a5(&BTreeSet::new(), &BTreeSet::new(), &[11].into()).unwrap(), BigInt::from(14641));
        let bad = TwistSupport { a1: [7].into(), b2: [7].into(), ..Default::default() };
        assert!(twist_tame_exponents(&bad).is_err());
    }

    #[test]
    fn epsilon_shapes() {
        assert_eq!(epsilon_conductor_shape(&Conductor::from_u64(24)).unwrap(), (3, vec![3]));
        assert_eq!(epsilon_conductor_shape(&Conductor::from_u64(12)).unwrap(), (2, vec![3]));
        assert!(epsilon_conductor_shape(&Conductor::from_u64(2)).is_err());
        assert!(epsilon_conductor_shape(&Conductor::from_u64(9)).is_err());
    }

    #[test]
    fn json_shape() {
        let c = Conductor::from_factors([(2, 3), (7, 1)]);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"2":3,"7":1}"#);
        let back: Conductor = serde_json::from_str(r#"{"2":3,"7":1}"#).unwrap();
        assert_eq!(back, c);
    }
}
