use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use super::perm::{self, Perm};
use super::RepError;

/// Closure cap for permutation groups.
pub const MAX_GROUP_ORDER: usize = 960;

/// Finite permutation group with its multiplication table.
///
/// Elements are sorted lexicographically by image vector, so the identity
/// is always element 0.
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<usize>,
    label: Option<String>,
    index: HashMap<Perm, usize>,
    table: Vec<u16>,
    inv: Vec<u16>,
    orders: Vec<u32>,
    classes: OnceLock<ConjClasses>,
}

/// Conjugacy classes in canonical order: identity first, then by element
/// order, then by lexicographically least representative.
#[derive(Clone, Debug)]
pub struct ConjClasses {
    pub classes: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<usize>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("label", &self.label)
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .finish()
    }
}

impl PermGroup {
    /// Smallest group containing the generators.
    pub fn close_generators(degree: usize, gens: &[Perm]) -> Result<Arc<PermGroup>, RepError> {
        Self::close_with_cap(degree, gens, MAX_GROUP_ORDER).map(Arc::new)
    }

    pub(crate) fn close_with_cap(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup, RepError> {
        for g in gens {
            if g.len() != degree || !perm::is_permutation(g) {
                return Err(RepError::InvalidPermutation);
            }
        }
        let id = perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = perm::compose(&x, g);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(RepError::GroupTooLarge(cap));
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_keys().collect();
        elements.sort();
        let mut g = PermGroup::from_sorted_elements(degree, elements);
        g.generators = gens.iter().map(|p| g.index[p]).collect();
        g.generators.sort_unstable();
        g.generators.dedup();
        g.generators.retain(|&i| i != 0);
        Ok(g)
    }

    /// Build from an already closed, sorted element list.
    pub(crate) fn from_sorted_elements(degree: usize, elements: Vec<Perm>) -> PermGroup {
        let n = elements.len();
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = perm::compose(&elements[i], &elements[j]);
                table[i * n + j] = index[&p] as u16;
            }
        }
        let mut inv = vec![0u16; n];
        for i in 0..n {
            for j in 0..n {
                if table[i * n + j] == 0 {
                    inv[i] = j as u16;
                    break;
                }
            }
        }
        let mut orders = vec![1u32; n];
        for (i, o) in orders.iter_mut().enumerate() {
            let mut x = i;
            while x != 0 {
                x = table[x * n + i] as usize;
                *o += 1;
            }
        }
        PermGroup {
            degree,
            elements,
            generators: Vec::new(),
            label: None,
            index,
            table,
            inv,
            orders,
            classes: OnceLock::new(),
        }
    }

    pub(crate) fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub(crate) fn set_generators(&mut self, gens: Vec<usize>) {
        self.generators = gens;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, p: &[u16]) -> Option<usize> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a] as i64;
        let k = k.rem_euclid(o);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        // x g x^{-1}
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Indices of the subgroup generated by the given elements.
    pub fn closure_of(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut list = vec![0usize];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
            k += 1;
        }
        list.sort_unstable();
        list
    }

    /// Indices of the commutator subgroup.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms = Vec::new();
        let mut seen = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.closure_of(&comms)
    }

    /// Center as element indices.
    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a))).collect()
    }

    pub fn classes(&self) -> &ConjClasses {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ConjClasses {
        let n = self.order();
        let mut class_id = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            if class_id[g] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|x| self.conjugate(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_id[m] = raw.len();
            }
            raw.push(members);
        }
        // members are sorted, so members[0] is the lex-least representative
        raw.sort_by_key(|c| (self.orders[c[0]], c[0]));
        let mut class_of = vec![0usize; n];
        for (k, c) in raw.iter().enumerate() {
            for &m in c {
                class_of[m] = k;
            }
        }
        ConjClasses {
            representatives: raw.iter().map(|c| c[0]).collect(),
            sizes: raw.iter().map(|c| c.len()).collect(),
            classes: raw,
            class_of,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.classes().classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.classes().class_of[g]
    }

    /// Element index of g^k as a class index lookup: the power map on classes.
    pub fn power_map(&self, k: i64) -> Vec<usize> {
        let cl = self.classes();
        cl.representatives.iter().map(|&r| cl.class_of[self.pow(r, k)]).collect()
    }

    /// Same underlying group (pointer identity or equal element lists).
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || (self.degree == other.degree && self.elements == other.elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reptheory::perm::from_cycles;

    fn orbit_closure_oracle(degree: usize, gens: &[Perm]) -> usize {
        // naive fixpoint: multiply everything by everything until stable
        let mut set: std::collections::BTreeSet<Perm> = gens.iter().cloned().collect();
        set.insert(perm::identity(degree));
        loop {
            let cur: Vec<Perm> = set.iter().cloned().collect();
            let before = set.len();
            for a in &cur {
                for b in &cur {
                    set.insert(perm::compose(a, b));
                }
            }
            if set.len() == before {
                return set.len();
            }
        }
    }

    #[test]
    fn closures() {
        let a4 = vec![from_cycles(4, "(1 2)(3 4)").unwrap(), from_cycles(4, "(1 2 3)").unwrap()];
        let g = PermGroup::close_generators(4, &a4).unwrap();
        assert_eq!(g.order(), orbit_closure_oracle(4, &a4));
        assert_eq!(g.order(), 12);
        let a5 = vec![from_cycles(5, "(1 2 3 4 5)").unwrap(), from_cycles(5, "(1 2)(3 4)").unwrap()];
        let g = PermGroup::close_generators(5, &a5).unwrap();
        assert_eq!(g.order(), orbit_closure_oracle(5, &a5));
        assert_eq!(g.order(), 60);
        let g = PermGroup::close_generators(3, &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.classes().sizes, vec![1]);
    }

    #[test]
    fn too_large() {
        let s7 = vec![from_cycles(7, "(1 2)").unwrap(), from_cycles(7, "(1 2 3 4 5 6 7)").unwrap()];
        assert!(matches!(PermGroup::close_generators(7, &s7), Err(RepError::GroupTooLarge(960))));
    }

    #[test]
    fn class_sizes() {
        let s4 = PermGroup::close_generators(4, &[from_cycles(4, "(1 2)").unwrap(), from_cycles(4, "(1 2 3 4)").unwrap()]).unwrap();
        let sizes = &s4.classes().sizes;
        assert_eq!(sizes.iter().sum::<usize>(), 24);
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 3, 6, 6, 8]);
        let a4 = PermGroup::close_generators(4, &[from_cycles(4, "(1 2)(3 4)").unwrap(), from_cycles(4, "(1 2 3)").unwrap()]).unwrap();
        assert_eq!(a4.classes().sizes, vec![1, 3, 4, 4]);
        assert_eq!(a4.derived_subgroup().len(), 4);
    }
}
