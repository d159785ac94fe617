use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::group::PermGroup;
use super::RepError;
use crate::exactnum::{CycNum, Rational};

/// A class function: one value per conjugacy class, in the group's
/// canonical class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<PermGroup>,
    values: Vec<CycNum>,
}

/// Injective homomorphism of a subgroup into a parent group.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    pub subgroup: Arc<PermGroup>,
    pub parent: Arc<PermGroup>,
    /// `inclusion[i]` is the parent index of subgroup element `i`.
    pub inclusion: Vec<usize>,
}

impl SubgroupEmbedding {
    /// Subgroup of `parent` on the given (closed) set of element indices.
    pub fn from_indices(parent: &Arc<PermGroup>, indices: &[usize]) -> SubgroupEmbedding {
        let mut perms: Vec<_> = indices.iter().map(|&i| parent.element(i).clone()).collect();
        perms.sort();
        perms.dedup();
        let mut sub = PermGroup::from_sorted_elements(parent.degree(), perms);
        let gens = small_generating_set(&sub);
        sub.set_generators(gens);
        let inclusion = sub.elements().iter().map(|p| parent.index_of(p).expect("subset of parent")).collect();
        SubgroupEmbedding { subgroup: Arc::new(sub), parent: parent.clone(), inclusion }
    }

    /// Subgroup generated by some parent elements.
    pub fn generated_by(parent: &Arc<PermGroup>, gens: &[usize]) -> SubgroupEmbedding {
        Self::from_indices(parent, &parent.closure_of(gens))
    }

    pub fn whole(parent: &Arc<PermGroup>) -> SubgroupEmbedding {
        SubgroupEmbedding {
            subgroup: parent.clone(),
            parent: parent.clone(),
            inclusion: (0..parent.order()).collect(),
        }
    }

    pub fn trivial(parent: &Arc<PermGroup>) -> SubgroupEmbedding {
        Self::from_indices(parent, &[0])
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.subgroup.order()
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.subgroup.order();
        (0..n).any(|g| self.subgroup.element_order(g) as usize == n)
    }

    /// Membership bitmap over parent elements.
    pub fn members(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent.order()];
        for &i in &self.inclusion {
            m[i] = true;
        }
        m
    }
}

/// Greedy generating set: scan elements in order, keep those not yet generated.
pub(crate) fn small_generating_set(g: &PermGroup) -> Vec<usize> {
    let n = g.order();
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    // prefer high-order elements first so cyclic groups get one generator
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(g.element_order(i)), i));
    for i in order {
        if inside[i] {
            continue;
        }
        gens.push(i);
        for k in g.closure_of(&gens) {
            inside[k] = true;
        }
    }
    gens
}

impl ClassFunction {
    pub fn new(group: Arc<PermGroup>, values: Vec<CycNum>) -> Result<Self, RepError> {
        if values.len() != group.num_classes() {
            return Err(RepError::WrongLength { expected: group.num_classes(), got: values.len() });
        }
        Ok(ClassFunction { group, values })
    }

    /// Evaluate `f` on each class representative.
    pub fn from_element_fn(group: &Arc<PermGroup>, f: impl Fn(usize) -> CycNum) -> Self {
        let values = group.classes().representatives.iter().map(|&r| f(r)).collect();
        ClassFunction { group: group.clone(), values }
    }

    pub fn trivial(group: &Arc<PermGroup>) -> Self {
        Self::from_element_fn(group, |_| CycNum::one())
    }

    pub fn regular(group: &Arc<PermGroup>) -> Self {
        let n = group.order() as i64;
        Self::from_element_fn(group, |g| if g == 0 { CycNum::from_int(n) } else { CycNum::zero() })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn value_at(&self, element: usize) -> &CycNum {
        &self.values[self.group.class_of(element)]
    }

    /// Value at the identity as an integer, if it is one.
    pub fn degree(&self) -> Option<i64> {
        self.values[0].to_i64()
    }

    fn check_same(&self, other: &ClassFunction) -> Result<(), RepError> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(RepError::GroupMismatch)
        }
    }

    /// (1/|G|) Σ φ(g) conj(ψ(g)).
    pub fn inner_product(&self, other: &ClassFunction) -> Result<CycNum, RepError> {
        self.check_same(other)?;
        let cl = self.group.classes();
        let mut acc = CycNum::zero();
        for (k, size) in cl.sizes.iter().enumerate() {
            let term = &self.values[k] * &other.values[k].conjugate();
            acc = &acc + &term.scale(&Rational::from_integer(BigInt::from(*size)));
        }
        Ok(acc.scale(&Rational::new(BigInt::from(1), BigInt::from(self.group.order()))))
    }

    /// Inner product certified to be a nonnegative integer.
    pub fn multiplicity(&self, other: &ClassFunction) -> Result<u64, RepError> {
        let ip = self.inner_product(other)?;
        ip.to_integer()
            .filter(|v| !v.is_negative())
            .and_then(|v| v.to_u64())
            .ok_or(RepError::NonIntegerResult)
    }

    pub fn tensor(&self, other: &ClassFunction) -> Result<ClassFunction, RepError> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, RepError> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction, RepError> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn conjugate(&self) -> ClassFunction {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.conjugate()).collect() }
    }

    pub fn restrict(&self, h: &SubgroupEmbedding) -> Result<ClassFunction, RepError> {
        if !self.group.same_as(&h.parent) {
            return Err(RepError::GroupMismatch);
        }
        let sub = &h.subgroup;
        let values = sub
            .classes()
            .representatives
            .iter()
            .map(|&r| self.value_at(h.inclusion[r]).clone())
            .collect();
        Ok(ClassFunction { group: sub.clone(), values })
    }

    /// Frobenius induction of a class function on `h.subgroup` to `h.parent`.
    pub fn induce(&self, h: &SubgroupEmbedding) -> Result<ClassFunction, RepError> {
        if !self.group.same_as(&h.subgroup) {
            return Err(RepError::GroupMismatch);
        }
        let g = &h.parent;
        let n = g.order();
        let mut back = vec![usize::MAX; n];
        for (i, &p) in h.inclusion.iter().enumerate() {
            back[p] = i;
        }
        let values = g
            .classes()
            .representatives
            .iter()
            .map(|&r| {
                // count conjugates landing in each class of H, then weight
                let mut counts = vec![0i64; self.group.num_classes()];
                for x in 0..n {
                    let c = g.conjugate(r, x);
                    if back[c] != usize::MAX {
                        counts[self.group.class_of(back[c])] += 1;
                    }
                }
                let mut acc = CycNum::zero();
                for (k, &cnt) in counts.iter().enumerate() {
                    if cnt != 0 {
                        acc = &acc + &self.values[k].scale(&Rational::from_integer(BigInt::from(cnt)));
                    }
                }
                acc.scale(&Rational::new(BigInt::from(1), BigInt::from(h.order())))
            })
            .collect();
        Ok(ClassFunction { group: g.clone(), values })
    }

    /// dim V^I for the representation with this character.
    pub fn trivial_multiplicity(&self, inertia: &SubgroupEmbedding) -> Result<u64, RepError> {
        let res = self.restrict(inertia)?;
        res.multiplicity(&ClassFunction::trivial(&inertia.subgroup))
    }

    /// Determinant character, from power sums p_k(g) = χ(g^k) via Newton's identities.
    pub fn determinant(&self) -> Result<ClassFunction, RepError> {
        let d = self.degree().filter(|&d| d >= 1).ok_or(RepError::NotACharacter)? as usize;
        let g = self.group.clone();
        let maps: Vec<Vec<usize>> = (1..=d as i64).map(|k| g.power_map(k)).collect();
        let values = (0..g.num_classes())
            .map(|c| {
                let p: Vec<CycNum> = maps.iter().map(|m| self.values[m[c]].clone()).collect();
                let mut e = vec![CycNum::one()];
                for k in 1..=d {
                    let mut acc = CycNum::zero();
                    for i in 1..=k {
                        let t = &e[k - i] * &p[i - 1];
                        acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
                    }
                    e.push(acc.scale(&Rational::new(BigInt::from(1), BigInt::from(k))));
                }
                e[d].clone()
            })
            .collect();
        Ok(ClassFunction { group: g, values })
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| *v == CycNum::one())
    }

    /// Elements g with χ(g) = χ(1); the kernel when χ is a character.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| *self.value_at(g) == self.values[0]).collect()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_irreducible(&self) -> bool {
        self.inner_product(self).map(|v| v == CycNum::one()).unwrap_or(false)
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.values == other.values
    }
}

#[derive(Serialize)]
pub(crate) struct ClassFunctionJson<'a> {
    pub name: &'a str,
    pub values: &'a [CycNum],
}
