//! Built-in character tables for the finite subgroups of O(3) and their
//! products with C2.
//!
//! Each table is written down on a concrete permutation group. Values come
//! from closed formulas (roots of unity on normal forms, fixed-point counts,
//! signs), so every entry is evaluated per element rather than typed in by
//! class position.

use std::sync::Arc;

use serde::Serialize;

use super::classfn::{ClassFunction, ClassFunctionJson};
use super::group::PermGroup;
use super::perm::{self, Perm};
use super::RepError;
use crate::exactnum::CycNum;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub label: String,
    pub group: Arc<PermGroup>,
    pub names: Vec<String>,
    pub characters: Vec<ClassFunction>,
}

fn cycle_perm(k: usize) -> Perm {
    (0..k).map(|i| ((i + 1) % k) as u16).collect()
}

fn from_cycles(m: usize, s: &str) -> Perm {
    perm::from_cycles(m, s).expect("static cycle notation")
}

fn zeta(k: u32, j: i64) -> CycNum {
    CycNum::root_of_unity(k, j).expect("conductor within range")
}

fn labelled(degree: usize, gens: &[Perm], label: &str) -> Arc<PermGroup> {
    let mut g = PermGroup::close_with_cap(degree, gens, super::group::MAX_GROUP_ORDER)
        .expect("built-in group is small")
        .with_label(label);
    let gi: Vec<usize> = gens.iter().filter_map(|p| g.index_of(p)).filter(|&i| i != 0).collect();
    g.set_generators(gi);
    Arc::new(g)
}

/// Parse a group label: C<k>, D<k>, A4, S4, A5, and A4xC2 / S4xC2 / A5xC2.
pub fn builtin_table(label: &str) -> Result<CharacterTable, RepError> {
    let norm = label.trim().replace('×', "x").replace('_', "");
    let upper = norm.to_ascii_uppercase();
    if let Some(base) = upper.strip_suffix("XC2") {
        if matches!(base, "A4" | "S4" | "A5") {
            let inner = builtin_table(base)?;
            return Ok(times_c2(&inner));
        }
        return Err(RepError::UnsupportedGroup(label.to_string()));
    }
    match upper.as_str() {
        "A4" => return Ok(a4_table()),
        "S4" => return Ok(s4_table()),
        "A5" => return Ok(a5_table()),
        _ => {}
    }
    let parse_k = |s: &str| s.parse::<usize>().ok().filter(|&k| (1..=12).contains(&k));
    if let Some(k) = upper.strip_prefix('C').and_then(parse_k) {
        return Ok(cyclic_table(k));
    }
    if let Some(k) = upper.strip_prefix('D').and_then(parse_k) {
        return Ok(dihedral_table(k));
    }
    Err(RepError::UnsupportedGroup(label.to_string()))
}

/// Every label `builtin_table` accepts.
pub fn builtin_labels() -> Vec<String> {
    let mut out: Vec<String> = (1..=12).map(|k| format!("C{k}")).collect();
    out.extend((1..=12).map(|k| format!("D{k}")));
    for x in ["A4", "S4", "A5"] {
        out.push(x.to_string());
    }
    for x in ["A4", "S4", "A5"] {
        out.push(format!("{x}xC2"));
    }
    out
}

fn cyclic_table(k: usize) -> CharacterTable {
    let label = format!("C{k}");
    let g = labelled(k, &[cycle_perm(k)], &label);
    let gen = g.index_of(&cycle_perm(k)).unwrap();
    let mut exp = vec![0i64; g.order()];
    let mut x = 0;
    for m in 0..k {
        exp[x] = m as i64;
        x = g.mul(x, gen);
    }
    let characters = (0..k as i64)
        .map(|j| ClassFunction::from_element_fn(&g, |e| zeta(k as u32, j * exp[e])))
        .collect();
    CharacterTable { label, group: g, names: (0..k).map(|j| format!("chi{j}")).collect(), characters }
}

fn dihedral_table(k: usize) -> CharacterTable {
    let label = format!("D{k}");
    let (degree, r, s) = match k {
        1 => (2, perm::identity(2), from_cycles(2, "(1 2)")),
        2 => (4, from_cycles(4, "(1 2)(3 4)"), from_cycles(4, "(1 3)(2 4)")),
        _ => (k, cycle_perm(k), (0..k).map(|i| ((k - i) % k) as u16).collect()),
    };
    let g = labelled(degree, &[r.clone(), s.clone()], &label);
    // normal form r^m s^e for each element
    let mut nf = vec![(0i64, 0i64); g.order()];
    let mut rm = perm::identity(degree);
    for m in 0..k {
        nf[g.index_of(&rm).unwrap()] = (m as i64, 0);
        nf[g.index_of(&perm::compose(&rm, &s)).unwrap()] = (m as i64, 1);
        rm = perm::compose(&rm, &r);
    }
    let mut names = Vec::new();
    let mut characters = Vec::new();
    let sign = |b: i64, e: i64| CycNum::from_int(if e % 2 == 1 { b } else { 1 });
    if k % 2 == 1 {
        names.push("1".to_string());
        characters.push(ClassFunction::trivial(&g));
        names.push("eps".to_string());
        characters.push(ClassFunction::from_element_fn(&g, |e| sign(-1, nf[e].1)));
    } else {
        for (a, b) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            names.push(format!("psi({},{})", if a > 0 { '+' } else { '-' }, if b > 0 { '+' } else { '-' }));
            characters.push(ClassFunction::from_element_fn(&g, |e| {
                let (m, eps) = nf[e];
                &sign(a, m) * &sign(b, eps)
            }));
        }
    }
    for h in 1..((k + 1) / 2) {
        if 2 * h == k {
            continue;
        }
        names.push(format!("rho{h}"));
        characters.push(ClassFunction::from_element_fn(&g, |e| {
            let (m, eps) = nf[e];
            if eps == 1 {
                CycNum::zero()
            } else {
                &zeta(k as u32, h as i64 * m) + &zeta(k as u32, -(h as i64) * m)
            }
        }));
    }
    CharacterTable { label, group: g, names, characters }
}

fn fix_minus_one(g: &Arc<PermGroup>) -> ClassFunction {
    ClassFunction::from_element_fn(g, |e| CycNum::from_int(perm::fixed_points(g.element(e)) as i64 - 1))
}

fn a4_table() -> CharacterTable {
    let g = labelled(4, &[from_cycles(4, "(1 2)(3 4)"), from_cycles(4, "(1 2 3)")], "A4");
    let t = g.index_of(&from_cycles(4, "(1 2 3)")).unwrap();
    // coset of the Klein four-group: g = v t^a with v fixed-point-free or identity
    let coset = |e: usize| -> i64 {
        (0..3)
            .find(|&a| {
                let v = g.mul(e, g.pow(t, -a));
                v == 0 || perm::fixed_points(g.element(v)) == 0
            })
            .unwrap()
    };
    let mut characters = vec![ClassFunction::trivial(&g)];
    characters.push(ClassFunction::from_element_fn(&g, |e| zeta(3, coset(e))));
    characters.push(ClassFunction::from_element_fn(&g, |e| zeta(3, 2 * coset(e))));
    characters.push(fix_minus_one(&g));
    CharacterTable {
        label: "A4".into(),
        group: g,
        names: vec!["1".into(), "omega".into(), "omega2".into(), "chi3".into()],
        characters,
    }
}

fn s4_table() -> CharacterTable {
    let g = labelled(4, &[from_cycles(4, "(1 2)"), from_cycles(4, "(1 2 3 4)")], "S4");
    let sgn = ClassFunction::from_element_fn(&g, |e| CycNum::from_int(perm::sign(g.element(e))));
    // action on the three pairings {01|23, 02|13, 03|12}
    let pairing = |p: &Perm, k: usize| -> usize {
        let partner = [1usize, 2, 3][k];
        let (a, b) = (p[0] as usize, p[partner] as usize);
        let other = if a == 0 { b } else if b == 0 { a } else { 6 - a - b };
        other - 1
    };
    let chi2 = ClassFunction::from_element_fn(&g, |e| {
        let p = g.element(e);
        let fixed = (0..3).filter(|&k| pairing(p, k) == k).count() as i64;
        CycNum::from_int(fixed - 1)
    });
    let std = fix_minus_one(&g);
    let so3 = std.tensor(&sgn).unwrap();
    CharacterTable {
        label: "S4".into(),
        group: g.clone(),
        names: vec!["1".into(), "sgn".into(), "chi2".into(), "std".into(), "std*sgn".into()],
        characters: vec![ClassFunction::trivial(&g), sgn, chi2, std, so3],
    }
}

fn a5_table() -> CharacterTable {
    let g = labelled(5, &[from_cycles(5, "(1 2 3 4 5)"), from_cycles(5, "(1 2)(3 4)")], "A5");
    let c = g.index_of(&from_cycles(5, "(1 2 3 4 5)")).unwrap();
    let c_class = g.class_of(c);
    let phi = &CycNum::one() + &(&zeta(5, 1) + &zeta(5, 4));
    let phi_bar = &CycNum::one() + &(&zeta(5, 2) + &zeta(5, 3));
    let five = ClassFunction::from_element_fn(&g, |e| {
        CycNum::from_int(match g.element_order(e) {
            1 => 5,
            2 => 1,
            3 => -1,
            _ => 0,
        })
    });
    let three = |golden: &CycNum, other: &CycNum| {
        ClassFunction::from_element_fn(&g, |e| match g.element_order(e) {
            1 => CycNum::from_int(3),
            2 => CycNum::from_int(-1),
            3 => CycNum::zero(),
            _ if g.class_of(e) == c_class => golden.clone(),
            _ => other.clone(),
        })
    };
    let chi3a = three(&phi, &phi_bar);
    let chi3b = three(&phi_bar, &phi);
    CharacterTable {
        label: "A5".into(),
        group: g.clone(),
        names: vec!["1".into(), "chi4".into(), "chi5".into(), "chi3a".into(), "chi3b".into()],
        characters: vec![ClassFunction::trivial(&g), fix_minus_one(&g), five, chi3a, chi3b],
    }
}

fn times_c2(inner: &CharacterTable) -> CharacterTable {
    let x = &inner.group;
    let m = x.degree();
    let swap: Perm = (0..m + 2)
        .map(|i| match i {
            i if i == m => (m + 1) as u16,
            i if i == m + 1 => m as u16,
            i => i as u16,
        })
        .collect();
    let mut gens: Vec<Perm> = x
        .generators()
        .iter()
        .map(|&gi| {
            let mut p = x.element(gi).clone();
            p.push(m as u16);
            p.push((m + 1) as u16);
            p
        })
        .collect();
    gens.push(swap);
    let label = format!("{}xC2", inner.label);
    let g = labelled(m + 2, &gens, &label);
    let split = |e: usize| -> (usize, bool) {
        let p = g.element(e);
        (x.index_of(&p[..m]).expect("projection lies in X"), p[m] as usize != m)
    };
    let mut names = Vec::new();
    let mut characters = Vec::new();
    for (eps, tag) in [(false, "+"), (true, "-")] {
        for (name, chi) in inner.names.iter().zip(&inner.characters) {
            names.push(format!("{name}{tag}"));
            characters.push(ClassFunction::from_element_fn(&g, |e| {
                let (xe, s) = split(e);
                let v = chi.value_at(xe).clone();
                if eps && s {
                    -v
                } else {
                    v
                }
            }));
        }
    }
    CharacterTable { label, group: g, names, characters }
}

impl CharacterTable {
    pub fn get(&self, name: &str) -> Option<&ClassFunction> {
        self.names.iter().position(|n| n == name).map(|i| &self.characters[i])
    }

    /// Exact row and column orthogonality plus the degree-square identity.
    pub fn check_orthogonality(&self) -> Result<(), String> {
        let g = &self.group;
        let k = g.num_classes();
        if self.characters.len() != k {
            return Err(format!("{} characters for {} classes", self.characters.len(), k));
        }
        for (i, a) in self.characters.iter().enumerate() {
            for (j, b) in self.characters.iter().enumerate() {
                let ip = a.inner_product(b).map_err(|e| e.to_string())?;
                let want = CycNum::from_int((i == j) as i64);
                if ip != want {
                    return Err(format!("<{}, {}> = {}", self.names[i], self.names[j], ip));
                }
            }
        }
        let sizes = &g.classes().sizes;
        for c in 0..k {
            for d in 0..k {
                let mut acc = CycNum::zero();
                for chi in &self.characters {
                    acc = &acc + &(&chi.values()[c] * &chi.values()[d].conjugate());
                }
                let want = if c == d { (g.order() / sizes[c]) as i64 } else { 0 };
                if acc != CycNum::from_int(want) {
                    return Err(format!("column relation fails at classes {c}, {d}"));
                }
            }
        }
        let sq: i64 = self.characters.iter().map(|c| c.degree().unwrap_or(0).pow(2)).sum();
        if sq != g.order() as i64 {
            return Err(format!("sum of squared degrees {sq} != |G| = {}", g.order()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct ClassJson {
            representative: String,
            size: usize,
            order: u32,
        }
        let g = &self.group;
        let cl = g.classes();
        let classes: Vec<ClassJson> = cl
            .representatives
            .iter()
            .zip(&cl.sizes)
            .map(|(&r, &size)| ClassJson { representative: perm::to_cycles(g.element(r)), size, order: g.element_order(r) })
            .collect();
        let chars: Vec<ClassFunctionJson> = self
            .names
            .iter()
            .zip(&self.characters)
            .map(|(n, c)| ClassFunctionJson { name: n, values: c.values() })
            .collect();
        serde_json::json!({
            "group": self.label,
            "order": g.order(),
            "degree": g.degree(),
            "classes": classes,
            "characters": chars,
        })
    }
}

/// Degree-3 characters of the table that are faithful, irreducible and
/// have trivial determinant.
pub fn so3_type_characters(table: &CharacterTable) -> Vec<(String, ClassFunction)> {
    table
        .names
        .iter()
        .zip(&table.characters)
        .filter(|(_, c)| c.degree() == Some(3) && c.is_faithful())
        .filter(|(_, c)| c.determinant().map(|d| d.is_trivial()).unwrap_or(false))
        .map(|(n, c)| (n.clone(), c.clone()))
        .collect()
}
