//! Dirichlet characters of Q stored primitively, and the abelian counts of
//! three-dimensional sums of characters.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arith;
use crate::conductor::Conductor;
use crate::exactnum::CycNum;

/// Smallest primitive root mod p that is also primitive mod p², hence mod every p^k.
pub fn canonical_primitive_root(p: u64) -> u64 {
    assert!(p > 2 && arith::is_prime_u64(p));
    let phi = p - 1;
    let factors: Vec<u64> = arith::factor_u64(phi).into_keys().collect();
    let p2 = p * p;
    (2..p)
        .find(|&g| {
            factors.iter().all(|&q| arith::pow_mod(g, phi / q, p) != 1) && arith::pow_mod(g, phi, p2) != 1
        })
        .expect("primitive roots exist")
}

/// Component of a character at one prime power, as exponents on the
/// canonical generators of (Z/p^k)^*.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LocalComponent {
    pub p: u64,
    pub k: u32,
    /// Odd p: one exponent on the primitive root (order φ(p^k)).
    /// p = 2: exponents on -1 (order 2) and, for k ≥ 3, on 5 (order 2^{k-2}).
    pub exps: Vec<u64>,
}

impl LocalComponent {
    pub fn generator_orders(&self) -> Vec<u64> {
        local_orders(self.p, self.k)
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.k)
    }

    fn is_primitive(&self) -> bool {
        match (self.p, self.k) {
            (2, 1) => false,
            (2, 2) => self.exps[0] == 1,
            (2, _) => self.exps[1] % 2 == 1,
            (_, 1) => self.exps[0] != 0,
            (p, _) => self.exps[0] % p != 0,
        }
    }

    fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    /// Primitive component inducing this one, or None if trivial.
    fn normalize(mut self) -> Option<LocalComponent> {
        if self.is_trivial() {
            return None;
        }
        if self.p == 2 {
            if self.k == 1 {
                return None;
            }
            if self.k >= 3 {
                while self.k >= 3 && self.exps[1] != 0 && self.exps[1] % 2 == 0 {
                    self.exps[1] /= 2;
                    self.k -= 1;
                }
                if self.k == 2 || self.exps[1] == 0 {
                    return (self.exps[0] == 1).then_some(LocalComponent { p: 2, k: 2, exps: vec![1] });
                }
            }
            return Some(self);
        }
        while self.k >= 2 && self.exps[0] % self.p == 0 {
            self.exps[0] /= self.p;
            self.k -= 1;
        }
        Some(self)
    }

    fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(self.generator_orders())
            .map(|(&a, o)| o / gcd(a % o, o))
            .fold(1, lcm)
    }

    /// Exponent vector of n mod p^k on the canonical generators (n coprime to p).
    fn dlog(&self, n: u64) -> Vec<u64> {
        let m = self.modulus();
        let n = n % m;
        if self.p == 2 {
            if self.k == 2 {
                return vec![if n % 4 == 1 { 0 } else { 1 }];
            }
            let (s, r) = if n % 4 == 1 { (0, n) } else { (1, m - n) };
            let mut x = 1u64;
            let mut j = 0;
            while x != r {
                x = x * 5 % m;
                j += 1;
            }
            return vec![s, j];
        }
        let g = canonical_primitive_root(self.p);
        let mut x = 1u64;
        let mut j = 0;
        while x != n {
            x = (x as u128 * g as u128 % m as u128) as u64;
            j += 1;
        }
        vec![j]
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn local_orders(p: u64, k: u32) -> Vec<u64> {
    match (p, k) {
        (2, 1) => vec![],
        (2, 2) => vec![2],
        (2, _) => vec![2, 1 << (k - 2)],
        _ => vec![(p - 1) * p.pow(k - 1)],
    }
}

/// Generators of (Z/n)^* lifted by CRT, with their orders.
pub fn unit_group(n: u64) -> Vec<(u64, u64)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let factors = arith::factor_u64(n);
    for (&p, &k) in &factors {
        let pk = p.pow(k);
        let rest = n / pk;
        let local_gens: Vec<u64> = match (p, k) {
            (2, 1) => vec![],
            (2, 2) => vec![pk - 1],
            (2, _) => vec![pk - 1, 5],
            _ => vec![canonical_primitive_root(p)],
        };
        for (g, o) in local_gens.into_iter().zip(local_orders(p, k)) {
            out.push((crt_pair(g, pk, 1, rest), o));
        }
    }
    out
}

fn crt_pair(a: u64, m: u64, b: u64, n: u64) -> u64 {
    // x ≡ a (mod m), x ≡ b (mod n), gcd(m, n) = 1
    if n == 1 {
        return a % m;
    }
    let (mi, ni) = (m as i128, n as i128);
    let inv = mod_inverse(mi % ni, ni);
    let t = ((b as i128 - a as i128) % ni + ni) % ni * inv % ni;
    (a as i128 + mi * t).rem_euclid(mi * ni) as u64
}

fn mod_inverse(a: i128, m: i128) -> i128 {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m)
}

/// A primitive Dirichlet character, identified by its local components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DirichletCharacter {
    conductor: u64,
    components: Vec<LocalComponent>,
}

impl DirichletCharacter {
    pub fn trivial() -> Self {
        DirichletCharacter { conductor: 1, components: Vec::new() }
    }

    /// Character mod n with the given exponents on `unit_group(n)`, normalized
    /// to the primitive character inducing it.
    pub fn from_modulus(n: u64, exps: &[u64]) -> Self {
        let factors = arith::factor_u64(n);
        let mut comps = Vec::new();
        let mut at = 0;
        for (&p, &k) in &factors {
            let orders = local_orders(p, k);
            let e: Vec<u64> = exps[at..at + orders.len()].iter().zip(&orders).map(|(a, o)| a % o).collect();
            at += orders.len();
            if orders.is_empty() {
                continue;
            }
            if let Some(c) = (LocalComponent { p, k, exps: e }).normalize() {
                comps.push(c);
            }
        }
        assert_eq!(at, exps.len(), "one exponent per unit-group generator");
        Self::from_components(comps)
    }

    fn from_components(components: Vec<LocalComponent>) -> Self {
        let conductor = components.iter().map(|c| c.modulus()).product();
        DirichletCharacter { conductor, components }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn conductor_factored(&self) -> Conductor {
        Conductor::from_factors(self.components.iter().map(|c| (c.p, c.k)))
    }

    pub fn components(&self) -> &[LocalComponent] {
        &self.components
    }

    pub fn order(&self) -> u64 {
        self.components.iter().map(|c| c.order()).fold(1, lcm)
    }

    pub fn is_real(&self) -> bool {
        self.order() <= 2
    }

    pub fn inverse(&self) -> Self {
        let comps = self
            .components
            .iter()
            .map(|c| LocalComponent {
                p: c.p,
                k: c.k,
                exps: c.exps.iter().zip(c.generator_orders()).map(|(&a, o)| (o - a % o) % o).collect(),
            })
            .collect();
        Self::from_components(comps)
    }

    /// χ(n) as an exact root of unity, or 0 when gcd(n, q) > 1.
    pub fn value(&self, n: i64) -> CycNum {
        let q = self.conductor as i64;
        let n = n.rem_euclid(q.max(1)) as u64;
        if gcd(n, self.conductor) != 1 && self.conductor > 1 {
            return CycNum::zero();
        }
        let big = self.components.iter().flat_map(|c| c.generator_orders()).fold(1, lcm);
        let mut e = 0u64;
        for c in &self.components {
            for ((a, o), l) in c.exps.iter().zip(c.generator_orders()).zip(c.dlog(n)) {
                e = (e + (a * l % o) * (big / o)) % big;
            }
        }
        let g = gcd(e, big);
        CycNum::root_of_unity((big / g) as u32, (e / g) as i64).expect("character order within conductor limit")
    }

    /// Discriminant of the quadratic field cut out by a real character.
    pub fn fundamental_discriminant(&self) -> Option<i64> {
        if !self.is_real() {
            return None;
        }
        let mut d: i64 = 1;
        for c in &self.components {
            d *= match (c.p, c.k) {
                (2, 2) => -4,
                (2, 3) => {
                    if c.exps[0] == 0 {
                        8
                    } else {
                        -8
                    }
                }
                (p, 1) if p % 4 == 1 => p as i64,
                (p, 1) => -(p as i64),
                _ => return None,
            };
        }
        Some(d)
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_{}[", self.conductor)?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}^{}:{:?}", c.p, c.k, c.exps)?;
        }
        write!(f, "]")
    }
}

/// Primitive local components at p^k.
fn primitive_components(p: u64, k: u32) -> Vec<LocalComponent> {
    let orders = local_orders(p, k);
    let mut out = Vec::new();
    match orders.len() {
        0 => {}
        1 => {
            for a in 0..orders[0] {
                let c = LocalComponent { p, k, exps: vec![a] };
                if c.is_primitive() {
                    out.push(c);
                }
            }
        }
        _ => {
            for a0 in 0..orders[0] {
                for a1 in 0..orders[1] {
                    let c = LocalComponent { p, k, exps: vec![a0, a1] };
                    if c.is_primitive() {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

/// All primitive characters of conductor exactly q.
pub fn primitive_of_conductor(q: u64) -> Vec<DirichletCharacter> {
    let mut acc: Vec<Vec<LocalComponent>> = vec![Vec::new()];
    for (p, k) in arith::factor_u64(q) {
        let local = primitive_components(p, k);
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for prefix in &acc {
            for c in &local {
                let mut v = prefix.clone();
                v.push(c.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc.into_iter().map(DirichletCharacter::from_components).collect()
}

/// Primitive characters of conductor ≤ x, by conductor then exponents.
pub fn enumerate_primitive(x: u64) -> Vec<DirichletCharacter> {
    (1..=x).flat_map(primitive_of_conductor).collect()
}

/// Number of primitive characters of conductor q (multiplicative:
/// p^k − 2p^{k−1} + p^{k−2} at p^k, p − 2 at p).
pub fn primitive_count(q: u64) -> u64 {
    arith::factor_u64(q)
        .into_iter()
        .map(|(p, k)| match k {
            1 => p - 2,
            _ => p.pow(k) - 2 * p.pow(k - 1) + p.pow(k - 2),
        })
        .product()
}

/// Number of real (order ≤ 2) primitive characters of conductor q.
pub fn real_primitive_count(q: u64) -> u64 {
    if q == 1 {
        return 1;
    }
    let v2 = q.trailing_zeros();
    let odd = q >> v2;
    if !arith::is_squarefree_u64(odd) {
        return 0;
    }
    match v2 {
        0 | 2 => 1,
        3 => 2,
        _ => 0,
    }
}

/// Primitive quadratic characters of conductor ≤ x, the trivial character first.
pub fn quadratic_characters(x: u64) -> Vec<DirichletCharacter> {
    (1..=x)
        .filter(|&q| real_primitive_count(q) > 0)
        .flat_map(|q| primitive_of_conductor(q).into_iter().filter(|c| c.is_real()))
        .collect()
}

fn prefix_counts(x: u64, f: impl Fn(u64) -> u64) -> Vec<u128> {
    let mut out = vec![0u128; x as usize + 1];
    for q in 1..=x as usize {
        out[q] = out[q - 1] + f(q as u64) as u128;
    }
    out
}

/// Unordered triples from a weight function w(q) (number of objects of size q)
/// with q1·q2·q3 ≤ x, by Burnside over S3.
fn multiset_triples(x: u64, w: &[u128], prefix: &[u128]) -> u128 {
    let mut ordered = 0u128;
    for q1 in 1..=x {
        if w[q1 as usize] == 0 {
            continue;
        }
        let r = x / q1;
        let mut inner = 0u128;
        for q2 in 1..=r {
            if w[q2 as usize] != 0 {
                inner += w[q2 as usize] * prefix[(r / q2) as usize];
            }
        }
        ordered += w[q1 as usize] * inner;
    }
    let mut doubled = 0u128;
    let mut q = 1u64;
    while q * q <= x {
        doubled += w[q as usize] * prefix[(x / (q * q)) as usize];
        q += 1;
    }
    let mut tripled = 0u128;
    let mut q = 1u64;
    while q * q * q <= x {
        tripled += w[q as usize];
        q += 1;
    }
    let total = ordered + 3 * doubled + 2 * tripled;
    debug_assert_eq!(total % 6, 0);
    total / 6
}

/// Multisets {χ1, χ2, χ3} of primitive characters with q1·q2·q3 ≤ x.
pub fn count_ab3(x: u64) -> u128 {
    let w: Vec<u128> = (0..=x).map(|q| if q == 0 { 0 } else { primitive_count(q) as u128 }).collect();
    let prefix = prefix_counts(x, primitive_count);
    multiset_triples(x, &w, &prefix)
}

/// Multisets closed under χ ↦ χ̄: three real characters, or a conjugate pair
/// {χ, χ̄} of order > 2 with a real third member.
pub fn count_ab_sd3(x: u64) -> u128 {
    let w: Vec<u128> = (0..=x).map(|q| if q == 0 { 0 } else { real_primitive_count(q) as u128 }).collect();
    let prefix = prefix_counts(x, real_primitive_count);
    let real = multiset_triples(x, &w, &prefix);
    let mut pairs = 0u128;
    let mut q = 1u64;
    while q * q <= x {
        let nonreal = primitive_count(q) - real_primitive_count(q);
        pairs += (nonreal / 2) as u128 * prefix[(x / (q * q)) as usize];
        q += 1;
    }
    real + pairs
}

/// Quadratic characters (trivial included) with conductor ≤ y coprime to every listed prime.
pub fn count_quadratic_coprime(y: u64, excluded: &[u64]) -> u64 {
    (1..=y)
        .filter(|q| excluded.iter().all(|p| q % p != 0))
        .map(real_primitive_count)
        .sum()
}

/// Conductor histogram of a character list (diagnostics and tests).
pub fn conductor_histogram(chars: &[DirichletCharacter]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for c in chars {
        *h.entry(c.conductor()).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_groups() {
        let u8g = unit_group(8);
        assert_eq!(u8g.iter().map(|g| g.1).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(unit_group(5), vec![(2, 4)]);
        assert!(unit_group(1).is_empty());
        // generator orders multiply to φ(n) and each generator has the stated order
        for n in 1..200u64 {
            let gens = unit_group(n);
            assert_eq!(gens.iter().map(|g| g.1).product::<u64>(), arith::euler_phi(n).max(1), "n = {n}");
            for (g, o) in gens {
                assert_eq!(arith::pow_mod(g, o, n), 1 % n);
            }
        }
    }

    #[test]
    fn small_enumeration() {
        assert_eq!(enumerate_primitive(1), vec![DirichletCharacter::trivial()]);
        let h = conductor_histogram(&enumerate_primitive(8));
        assert_eq!(h.get(&1), Some(&1));
        assert_eq!(h.get(&3), Some(&1));
        assert_eq!(h.get(&4), Some(&1));
        assert_eq!(h.get(&5), Some(&3));
        assert_eq!(h.get(&8), Some(&2));
        assert_eq!(h.get(&2), None);
    }

    #[test]
    fn primitive_counts_sum_over_divisors() {
        for n in 1..300u64 {
            let s: u64 = (1..=n).filter(|d| n % d == 0).map(primitive_count).sum();
            assert_eq!(s, arith::euler_phi(n).max(1), "n = {n}");
            assert_eq!(primitive_of_conductor(n).len() as u64, primitive_count(n));
            // every character mod n normalizes to one of the primitive ones below
            let gens = unit_group(n);
            let total: u64 = gens.iter().map(|g| g.1).product();
            let mut seen = std::collections::BTreeSet::new();
            for code in 0..total {
                let mut c = code;
                let exps: Vec<u64> = gens.iter().map(|g| { let a = c % g.1; c /= g.1; a }).collect();
                let chi = DirichletCharacter::from_modulus(n, &exps);
                assert_eq!(n % chi.conductor(), 0);
                seen.insert(chi);
            }
            assert_eq!(seen.len() as u64, total);
        }
    }

    #[test]
    fn quadratic_list() {
        let q: Vec<u64> = quadratic_characters(10).iter().map(|c| c.conductor()).collect();
        assert_eq!(q, vec![1, 3, 4, 5, 7, 8, 8]);
        assert_eq!(quadratic_characters(2).len(), 1);
        let mut discs: Vec<i64> = quadratic_characters(10).iter().filter_map(|c| c.fundamental_discriminant()).collect();
        discs.sort_unstable();
        assert_eq!(discs, vec![-8, -7, -4, -3, 1, 5, 8]);
        for c in quadratic_characters(500) {
            assert!(crate::conductor::epsilon_conductor_shape(&c.conductor_factored()).is_ok());
        }
    }

    #[test]
    fn quadratic_values_match_kronecker() {
        // χ_D(p) for odd primes p ∤ D equals the Legendre symbol (D/p)
        for c in quadratic_characters(60).into_iter().skip(1) {
            let d = c.fundamental_discriminant().unwrap();
            for p in arith::primes_up_to(60).into_iter().filter(|&p| p > 2 && (d.unsigned_abs() % p) != 0) {
                let leg = arith::pow_mod(d.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let want = if leg == 1 { 1 } else { -1 };
                assert_eq!(c.value(p as i64), CycNum::from_int(want), "D = {d}, p = {p}");
            }
        }
    }

    fn brute_force_counts(x: u64) -> (u128, u128) {
        let chars = enumerate_primitive(x);
        let n = chars.len();
        let (mut all, mut sd) = (0u128, 0u128);
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let q = chars[i].conductor() * chars[j].conductor() * chars[k].conductor();
                    if q > x {
                        continue;
                    }
                    all += 1;
                    let mut m = vec![chars[i].clone(), chars[j].clone(), chars[k].clone()];
                    let mut inv: Vec<_> = m.iter().map(|c| c.inverse()).collect();
                    m.sort();
                    inv.sort();
                    if m == inv {
                        sd += 1;
                    }
                }
            }
        }
        (all, sd)
    }

    #[test]
    fn abelian_counts_against_brute_force() {
        assert_eq!(count_ab3(1), 1);
        assert_eq!(count_ab3(3), 2);
        assert_eq!(count_ab_sd3(1), 1);
        assert_eq!(count_ab_sd3(10), 8);
        for x in [1u64, 3, 10, 25, 60, 120] {
            let (all, sd) = brute_force_counts(x);
            assert_eq!(count_ab3(x), all, "x = {x}");
            assert_eq!(count_ab_sd3(x), sd, "x = {x}");
        }
    }

    proptest! {
        #[test]
        fn inversion_is_an_involution(q in 1u64..400) {
            for c in primitive_of_conductor(q) {
                let inv = c.inverse();
                prop_assert_eq!(inv.conductor(), c.conductor());
                prop_assert_eq!(inv.inverse(), c.clone());
            }
        }
    }
}
