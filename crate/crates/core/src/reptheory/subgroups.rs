use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;

use super::classfn::{small_generating_set, ClassFunction, SubgroupEmbedding};
use super::group::PermGroup;
use super::RepError;
use crate::exactnum::CycNum;

/// Largest group for which the full subgroup list is computed.
pub const MAX_LATTICE_ORDER: usize = 240;

type Bits = Vec<u64>;

fn to_bits(n: usize, members: &[usize]) -> Bits {
    let mut b = vec![0u64; n.div_ceil(64)];
    for &m in members {
        b[m / 64] |= 1 << (m % 64);
    }
    b
}

fn from_bits(b: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in b.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let t = x.trailing_zeros() as usize;
            out.push(w * 64 + t);
            x &= x - 1;
        }
    }
    out
}

fn contains(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

/// Indices of the cyclic subgroup generated by `g`.
pub fn cyclic_subgroup(group: &PermGroup, g: usize) -> Vec<usize> {
    group.closure_of(&[g])
}

/// All subgroups, up to equality, sorted by (order, member list).
pub fn subgroups(group: &Arc<PermGroup>) -> Result<Vec<SubgroupEmbedding>, RepError> {
    if group.order() > MAX_LATTICE_ORDER {
        return Err(RepError::GroupTooLarge(MAX_LATTICE_ORDER));
    }
    let n = group.order();
    let mut cyclic: BTreeSet<Bits> = BTreeSet::new();
    let mut cyc_gen: Vec<(Bits, usize)> = Vec::new();
    for g in 0..n {
        let b = to_bits(n, &cyclic_subgroup(group, g));
        if cyclic.insert(b.clone()) {
            cyc_gen.push((b, g));
        }
    }
    // every subgroup is a join of cyclic subgroups; grow joins to a fixpoint
    let mut all: BTreeSet<Bits> = cyclic.clone();
    let mut frontier: Vec<(Bits, Vec<usize>)> = cyc_gen.iter().map(|(b, g)| (b.clone(), vec![*g])).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (b, gens) in &frontier {
            for (cb, cg) in &cyc_gen {
                if contains(b, *cg) {
                    continue;
                }
                let _ = cb;
                let mut ng = gens.clone();
                ng.push(*cg);
                let joined = to_bits(n, &group.closure_of(&ng));
                if all.insert(joined.clone()) {
                    next.push((joined, ng));
                }
            }
        }
        frontier = next;
    }
    let mut list: Vec<Vec<usize>> = all.iter().map(from_bits).collect();
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(list.iter().map(|m| SubgroupEmbedding::from_indices(group, m)).collect())
}

/// Cyclic subgroups (including the trivial one), sorted by (order, members).
pub fn cyclic_subgroups(group: &Arc<PermGroup>) -> Vec<SubgroupEmbedding> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for g in 0..group.order() {
        seen.insert(cyclic_subgroup(group, g));
    }
    let mut list: Vec<Vec<usize>> = seen.into_iter().collect();
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    list.iter().map(|m| SubgroupEmbedding::from_indices(group, m)).collect()
}

/// All homomorphisms to the roots of unity, found by assigning values on a
/// generating set and propagating along the Cayley graph.
pub fn linear_characters(group: &Arc<PermGroup>) -> Vec<ClassFunction> {
    let n = group.order();
    let gens = small_generating_set(group);
    let exponent = (0..n).fold(1u32, |acc, g| acc.lcm(&group.element_order(g)));
    let mut out = Vec::new();
    let choices: Vec<u32> = gens.iter().map(|&g| group.element_order(g)).collect();
    let total: u64 = choices.iter().map(|&c| c as u64).product();
    for code in 0..total {
        // value on gens[i] is ζ_exponent^{a_i}, with a_i a multiple of exponent/ord
        let mut rem = code;
        let mut assign = Vec::with_capacity(gens.len());
        for &c in &choices {
            let k = (rem % c as u64) as u32;
            rem /= c as u64;
            assign.push(k * (exponent / c));
        }
        if let Some(exps) = propagate(group, &gens, &assign, exponent) {
            out.push(ClassFunction::from_element_fn(group, |e| {
                CycNum::root_of_unity(exponent, exps[e] as i64).expect("small exponent")
            }));
        }
    }
    out
}

fn propagate(group: &PermGroup, gens: &[usize], assign: &[u32], modulus: u32) -> Option<Vec<u32>> {
    let n = group.order();
    let mut val = vec![u32::MAX; n];
    val[0] = 0;
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (gi, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            let v = (val[x] + assign[gi]) % modulus;
            if val[y] == u32::MAX {
                val[y] = v;
                queue.push(y);
            } else if val[y] != v {
                return None;
            }
        }
    }
    Some(val)
}

/// A proper subgroup H and linear λ with Ind λ = χ; `None` if χ is primitive.
/// A linear χ yields the degenerate witness (G, χ).
pub fn monomial_witness(chi: &ClassFunction) -> Result<Option<(SubgroupEmbedding, ClassFunction)>, RepError> {
    let g = chi.group();
    let deg = chi.degree().ok_or(RepError::NotACharacter)?;
    if deg == 1 {
        return Ok(Some((SubgroupEmbedding::whole(g), chi.clone())));
    }
    if deg < 1 || g.order() % deg as usize != 0 {
        return Ok(None);
    }
    let target = g.order() / deg as usize;
    for h in subgroups(g)? {
        if h.order() != target {
            continue;
        }
        for lambda in linear_characters(&h.subgroup) {
            if lambda.induce(&h)? == *chi {
                return Ok(Some((h, lambda)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reptheory::builtin_table;

    fn subset_closure_oracle(group: &PermGroup) -> usize {
        // every subset closed under multiplication (feasible for |G| = 12)
        let n = group.order();
        (0u32..(1 << n))
            .filter(|mask| mask & 1 == 1)
            .filter(|mask| {
                (0..n).all(|a| {
                    mask >> a & 1 == 0 || (0..n).all(|b| mask >> b & 1 == 0 || mask >> group.mul(a, b) & 1 == 1)
                })
            })
            .count()
    }

    #[test]
    fn subgroup_counts() {
        let a4 = builtin_table("A4").unwrap().group;
        let subs = subgroups(&a4).unwrap();
        assert_eq!(subs.len(), subset_closure_oracle(&a4));
        assert_eq!(subs.len(), 10);
        let a5 = builtin_table("A5").unwrap().group;
        let subs = subgroups(&a5).unwrap();
        assert_eq!(subs.len(), 59);
        assert!(subs.iter().all(|h| h.index() != 3));
        let s4 = builtin_table("S4").unwrap().group;
        assert_eq!(subgroups(&s4).unwrap().iter().filter(|h| h.order() == 8).count(), 3);
    }

    #[test]
    fn linear_character_counts() {
        for (label, count) in [("A4", 3), ("S4", 2), ("A5", 1), ("C6", 6), ("D4", 4), ("S4xC2", 4)] {
            let g = builtin_table(label).unwrap().group;
            assert_eq!(linear_characters(&g).len(), count, "{label}");
        }
    }
}
