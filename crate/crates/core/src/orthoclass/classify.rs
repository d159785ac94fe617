use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::matrix::{Matrix3, MatrixGroup3};
use super::OrthoError;
use crate::exactnum::CycNum;
use crate::reptheory::{PermGroup, SubgroupEmbedding};

/// Isomorphism type of a finite subgroup of O(3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbstractType {
    Cyclic(usize),
    Dihedral(usize),
    A4,
    S4,
    A5,
    /// H × {±1} with H inside SO(3).
    TimesC2(Box<AbstractType>),
    /// Irreducible, not in SO(3), without −1: abstractly S4, isoclinic to the rotation S4.
    S4Isoclinic,
    /// Reducible group without −1 outside SO(3), labelled by its rotation lift.
    Isoclinic(Box<AbstractType>),
}

impl fmt::Display for AbstractType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbstractType::Cyclic(k) => write!(f, "C{k}"),
            AbstractType::Dihedral(k) => write!(f, "D{k}"),
            AbstractType::A4 => write!(f, "A4"),
            AbstractType::S4 => write!(f, "S4"),
            AbstractType::A5 => write!(f, "A5"),
            AbstractType::TimesC2(h) => write!(f, "{h}xC2"),
            AbstractType::S4Isoclinic => write!(f, "S4-isoclinic"),
            AbstractType::Isoclinic(h) => write!(f, "{h}-isoclinic"),
        }
    }
}

impl Serialize for AbstractType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl AbstractType {
    pub fn order(&self) -> usize {
        match self {
            AbstractType::Cyclic(k) => *k,
            AbstractType::Dihedral(k) => 2 * k,
            AbstractType::A4 => 12,
            AbstractType::S4 | AbstractType::S4Isoclinic => 24,
            AbstractType::A5 => 60,
            AbstractType::TimesC2(h) => 2 * h.order(),
            AbstractType::Isoclinic(h) => h.order(),
        }
    }
}

/// Recognize a finite rotation group from order, commutativity, derived
/// subgroup and the presence of an index-2 cyclic subgroup.
pub fn recognize_rotation_type(g: &PermGroup) -> Option<AbstractType> {
    let n = g.order();
    if (0..n).any(|e| g.element_order(e) as usize == n) {
        return Some(AbstractType::Cyclic(n));
    }
    if g.is_abelian() {
        return (n == 4).then_some(AbstractType::Dihedral(2));
    }
    let derived = g.derived_subgroup().len();
    match (n, derived) {
        (12, 4) => return Some(AbstractType::A4),
        (24, 12) => return Some(AbstractType::S4),
        (60, 60) => return Some(AbstractType::A5),
        _ => {}
    }
    if n % 2 == 0 {
        let k = n / 2;
        if let Some(r) = (0..n).find(|&e| g.element_order(e) as usize == k) {
            let rot = g.closure_of(&[r]);
            let mut inside = vec![false; n];
            for &x in &rot {
                inside[x] = true;
            }
            if (0..n).filter(|&e| !inside[e]).all(|e| g.element_order(e) == 2) {
                return Some(AbstractType::Dihedral(k));
            }
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitInfo {
    /// |G ∩ SO(3)|
    pub rotation_order: usize,
    pub rotation_type: AbstractType,
    /// ε(g) = det g, the projection onto {±1}.
    pub epsilon: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthoClassification {
    pub order: usize,
    pub in_so3: bool,
    pub contains_minus_one: bool,
    pub irreducible: bool,
    pub abstract_type: AbstractType,
    pub split: Option<SplitInfo>,
    /// Set when the isoclinic lift was built and checked as an isomorphism.
    pub isoclinic_verified: Option<bool>,
}

fn det_sign(m: &Matrix3) -> Result<i64, OrthoError> {
    let d = m.det();
    if d == CycNum::one() {
        Ok(1)
    } else if d == CycNum::from_int(-1) {
        Ok(-1)
    } else {
        Err(OrthoError::NotOrthogonal)
    }
}

/// Subgroup of rotations G ∩ SO(3).
pub fn rotation_subgroup(g: &MatrixGroup3) -> Result<MatrixGroup3, OrthoError> {
    let (pg, map) = g.regular_permutation_group();
    let mut rots = Vec::new();
    for (i, m) in g.elements().iter().enumerate() {
        if det_sign(m)? == 1 {
            rots.push(map[i]);
        }
    }
    // generate from a small generating set found in the permutation model
    let sub = SubgroupEmbedding::from_indices(&pg, &rots);
    let gens: Vec<Matrix3> = sub
        .subgroup
        .generators()
        .iter()
        .map(|&k| g.elements()[sub.subgroup.element(k)[0] as usize].clone())
        .collect();
    MatrixGroup3::close(&gens)
}

pub fn classify(g: &MatrixGroup3) -> Result<OrthoClassification, OrthoError> {
    let signs: Vec<i64> = g.elements().iter().map(det_sign).collect::<Result<_, _>>()?;
    let in_so3 = signs.iter().all(|&s| s == 1);
    let contains_minus_one = g.contains(&Matrix3::minus_identity());
    let (_, _, tr, _) = g.trace_and_det_characters();
    let irreducible = tr.is_irreducible();

    if in_so3 {
        let (pg, _) = g.regular_permutation_group();
        let t = recognize_rotation_type(&pg).ok_or(OrthoError::Unrecognized(g.order()))?;
        return Ok(OrthoClassification {
            order: g.order(),
            in_so3,
            contains_minus_one,
            irreducible,
            abstract_type: t,
            split: None,
            isoclinic_verified: None,
        });
    }
    if contains_minus_one {
        let split = split_by_minus_one(g)?;
        return Ok(OrthoClassification {
            order: g.order(),
            in_so3,
            contains_minus_one,
            irreducible,
            abstract_type: AbstractType::TimesC2(Box::new(split.rotation_type.clone())),
            split: Some(split),
            isoclinic_verified: None,
        });
    }
    let lift = isoclinic_lift(g)?;
    let (pg, _) = lift.group.regular_permutation_group();
    let t = recognize_rotation_type(&pg).ok_or(OrthoError::Unrecognized(g.order()))?;
    let abstract_type = if irreducible && t == AbstractType::S4 {
        AbstractType::S4Isoclinic
    } else {
        AbstractType::Isoclinic(Box::new(t))
    };
    Ok(OrthoClassification {
        order: g.order(),
        in_so3,
        contains_minus_one,
        irreducible,
        abstract_type,
        split: None,
        isoclinic_verified: Some(true),
    })
}

/// Check G = H × {±1} with H = G ∩ SO(3) by exhausting the map (h, s) ↦ s·h.
pub fn split_by_minus_one(g: &MatrixGroup3) -> Result<SplitInfo, OrthoError> {
    if !g.contains(&Matrix3::minus_identity()) {
        return Err(OrthoError::PreconditionFailed("−1 is not in the group"));
    }
    let h = rotation_subgroup(g)?;
    if 2 * h.order() != g.order() {
        return Err(OrthoError::SplitFailed);
    }
    let mut hit = vec![false; g.order()];
    for m in h.elements() {
        for img in [m.clone(), m.neg()] {
            let i = g.index_of(&img).ok_or(OrthoError::SplitFailed)?;
            if hit[i] {
                return Err(OrthoError::SplitFailed);
            }
            hit[i] = true;
        }
    }
    if !hit.iter().all(|&x| x) {
        return Err(OrthoError::SplitFailed);
    }
    let (pg, _) = h.regular_permutation_group();
    let rotation_type = recognize_rotation_type(&pg).ok_or(OrthoError::Unrecognized(h.order()))?;
    Ok(SplitInfo { rotation_order: h.order(), rotation_type, epsilon: "det" })
}

/// The lifted group H* together with the bijection G → H*.
#[derive(Clone, Debug)]
pub struct IsoclinicLift {
    pub group: MatrixGroup3,
    /// `map[i]` is the index in `group` of the image of element `i` of G.
    pub map: Vec<usize>,
    /// Index in G of the element κ used for the lift.
    pub kappa: usize,
}

/// Lift with κ the first element of determinant −1 in the element order.
pub fn isoclinic_lift(g: &MatrixGroup3) -> Result<IsoclinicLift, OrthoError> {
    let mut kappa = None;
    for (i, m) in g.elements().iter().enumerate() {
        if det_sign(m)? == -1 {
            kappa = Some(i);
            break;
        }
    }
    let kappa = kappa.ok_or(OrthoError::PreconditionFailed("group lies in SO(3)"))?;
    isoclinic_lift_with_kappa(g, kappa)
}

/// h ↦ h, κh ↦ (−κ)h, checked to be a homomorphism on every (element, generator)
/// pair and a bijection onto a subgroup of SO(3).
pub fn isoclinic_lift_with_kappa(g: &MatrixGroup3, kappa: usize) -> Result<IsoclinicLift, OrthoError> {
    if g.contains(&Matrix3::minus_identity()) {
        return Err(OrthoError::PreconditionFailed("−1 is in the group"));
    }
    let k = &g.elements()[kappa];
    if det_sign(k)? != -1 {
        return Err(OrthoError::PreconditionFailed("κ must have determinant −1"));
    }
    // κ^{-1} = κ^{ord-1}
    let k_inv = {
        let mut p = k.clone();
        let mut prev = Matrix3::identity();
        while p != Matrix3::identity() {
            prev = p.clone();
            p = p.mul(k);
        }
        prev
    };
    let minus_k = k.neg();
    let mut images = Vec::with_capacity(g.order());
    for m in g.elements() {
        let img = if det_sign(m)? == 1 {
            m.clone()
        } else {
            minus_k.mul(&k_inv.mul(m))
        };
        if det_sign(&img)? != 1 {
            return Err(OrthoError::LiftFailed);
        }
        images.push(img);
    }
    let lifted = MatrixGroup3::close(&images)?;
    if lifted.order() != g.order() {
        return Err(OrthoError::LiftFailed);
    }
    let map: Vec<usize> = images.iter().map(|m| lifted.index_of(m).ok_or(OrthoError::LiftFailed)).collect::<Result<_, _>>()?;
    let mut seen = vec![false; map.len()];
    for &i in &map {
        if std::mem::replace(&mut seen[i], true) {
            return Err(OrthoError::LiftFailed);
        }
    }
    for (a, ma) in g.elements().iter().enumerate() {
        for gen in g.generators() {
            let b = g.index_of(gen).ok_or(OrthoError::LiftFailed)?;
            let ab = g.index_of(&ma.mul(gen)).ok_or(OrthoError::LiftFailed)?;
            let lhs = lifted.elements()[map[a]].mul(&lifted.elements()[map[b]]);
            if lifted.index_of(&lhs) != Some(map[ab]) {
                return Err(OrthoError::LiftFailed);
            }
        }
    }
    Ok(IsoclinicLift { group: lifted, map, kappa })
}

/// Permutation model of a matrix group, shared with the character layer.
pub fn permutation_model(g: &MatrixGroup3) -> Arc<PermGroup> {
    g.regular_permutation_group().0
}
