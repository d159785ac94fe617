//! Dirichlet characters built by brute force: every assignment of values in
//! μ_12 to a generating set of (Z/q)^×, kept when it extends to a homomorphism.

use num_integer::Integer;

const N: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Char {
    pub modulus: u64,
    /// χ(a) = ζ_12^{e[a]} for units a; None off the units.
    pub e: Vec<Option<u32>>,
}

impl Char {
    pub fn conj(&self) -> Vec<Option<u32>> {
        self.e.iter().map(|v| v.map(|k| (N - k) % N)).collect()
    }
}

fn units(q: u64) -> Vec<u64> {
    (0..q).filter(|&a| a.gcd(&q) == 1 || q == 1).collect()
}

/// All characters modulo q.
pub fn characters_mod(q: u64) -> Vec<Char> {
    let us = units(q);
    let mut gens: Vec<u64> = Vec::new();
    let span = |gens: &[u64]| -> Vec<u64> {
        let mut s = vec![1 % q.max(1)];
        let mut i = 0;
        while i < s.len() {
            for &g in gens {
                let v = s[i] * g % q.max(1);
                if !s.contains(&v) {
                    s.push(v);
                }
            }
            i += 1;
        }
        s
    };
    for &u in &us {
        if span(&gens).len() == us.len() {
            break;
        }
        if !span(&gens).contains(&u) {
            gens.push(u);
        }
    }
    let mut out = Vec::new();
    let total = (N as usize).pow(gens.len() as u32);
    'assign: for code in 0..total {
        let mut vals = Vec::new();
        let mut c = code;
        for _ in &gens {
            vals.push((c % N as usize) as u32);
            c /= N as usize;
        }
        let mut e: Vec<Option<u32>> = vec![None; q.max(1) as usize];
        e[(1 % q.max(1)) as usize] = Some(0);
        let mut frontier = vec![1 % q.max(1)];
        while let Some(a) = frontier.pop() {
            let ea = e[a as usize].unwrap();
            for (g, &v) in gens.iter().zip(&vals) {
                let b = a * g % q;
                let eb = (ea + v) % N;
                match e[b as usize] {
                    None => {
                        e[b as usize] = Some(eb);
                        frontier.push(b);
                    }
                    Some(x) if x != eb => continue 'assign,
                    _ => {}
                }
            }
        }
        out.push(Char { modulus: q, e });
    }
    out
}

/// Primitive characters of conductor exactly q.
pub fn primitive(q: u64) -> Vec<Char> {
    characters_mod(q)
        .into_iter()
        .filter(|c| {
            (1..q).filter(|d| q % d == 0).all(|d| {
                (0..q).any(|a| c.e[a as usize].is_some_and(|v| v != 0) && a % d == 1 % d)
            })
        })
        .collect()
}

/// (all multisets, conjugation-closed multisets) of three primitive
/// characters with conductor product ≤ x.
pub fn count_triples(x: u64) -> (u64, u64) {
    assert!(x <= 10, "value group μ_12 only covers moduli up to 10");
    let chars: Vec<Char> = (1..=x).flat_map(primitive).collect();
    let key = |c: &Char| (c.modulus, c.e.clone());
    let mut all = 0;
    let mut sd = 0;
    for i in 0..chars.len() {
        for j in i..chars.len() {
            for k in j..chars.len() {
                let (a, b, c) = (&chars[i], &chars[j], &chars[k]);
                if a.modulus * b.modulus * c.modulus > x {
                    continue;
                }
                all += 1;
                let mut m = vec![key(a), key(b), key(c)];
                let mut mc = vec![(a.modulus, a.conj()), (b.modulus, b.conj()), (c.modulus, c.conj())];
                m.sort();
                mc.sort();
                if m == mc {
                    sd += 1;
                }
            }
        }
    }
    (all, sd)
}
