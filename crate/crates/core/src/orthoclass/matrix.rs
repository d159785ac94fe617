use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use super::OrthoError;
use crate::exactnum::{CycNum, Rational};
use crate::reptheory::{ClassFunction, PermGroup};

/// Closure cap for matrix groups.
pub const MAX_MATRIX_GROUP_ORDER: usize = 240;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix3 {
    pub entries: [[CycNum; 3]; 3],
}

impl fmt::Debug for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}, {}, {}", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

impl Matrix3 {
    pub fn new(entries: [[CycNum; 3]; 3]) -> Self {
        Matrix3 { entries }
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Matrix3 { entries: rows.map(|r| r.map(CycNum::from_int)) }
    }

    pub fn identity() -> Self {
        Self::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn minus_identity() -> Self {
        Self::from_ints([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
    }

    pub fn mul(&self, other: &Matrix3) -> Matrix3 {
        let e = |i: usize, j: usize| {
            let mut acc = CycNum::zero();
            for k in 0..3 {
                acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
            }
            acc
        };
        Matrix3 { entries: [[e(0, 0), e(0, 1), e(0, 2)], [e(1, 0), e(1, 1), e(1, 2)], [e(2, 0), e(2, 1), e(2, 2)]] }
    }

    pub fn scale(&self, s: &CycNum) -> Matrix3 {
        Matrix3 { entries: self.entries.clone().map(|r| r.map(|x| &x * s)) }
    }

    pub fn neg(&self) -> Matrix3 {
        Matrix3 { entries: self.entries.clone().map(|r| r.map(|x| -x)) }
    }

    pub fn transpose(&self) -> Matrix3 {
        let m = &self.entries;
        Matrix3 {
            entries: [
                [m[0][0].clone(), m[1][0].clone(), m[2][0].clone()],
                [m[0][1].clone(), m[1][1].clone(), m[2][1].clone()],
                [m[0][2].clone(), m[1][2].clone(), m[2][2].clone()],
            ],
        }
    }

    pub fn trace(&self) -> CycNum {
        &(&self.entries[0][0] + &self.entries[1][1]) + &self.entries[2][2]
    }

    pub fn det(&self) -> CycNum {
        let m = &self.entries;
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
        let t0 = &m[0][0] * &minor(1, 2, 2, 1);
        let t1 = &m[0][1] * &minor(0, 2, 2, 0);
        let t2 = &m[0][2] * &minor(0, 1, 1, 0);
        &(&t0 - &t1) + &t2
    }

    /// Least common multiple of the entry conductors.
    pub fn conductor(&self) -> u32 {
        self.entries.iter().flatten().fold(1u32, |acc, x| acc.lcm(&x.conductor()))
    }

    /// Coefficient vector of all nine entries written in Q(ζ_n).
    pub(crate) fn key(&self, n: u32) -> Vec<Rational> {
        let mut out = Vec::new();
        for x in self.entries.iter().flatten() {
            out.extend(x.embed(n).expect("entries embed in the group conductor").coeffs().iter().cloned());
        }
        out
    }
}

/// Finite group of exact 3×3 matrices; identity first, the rest sorted by
/// their coefficient vectors.
#[derive(Clone, Debug)]
pub struct MatrixGroup3 {
    elements: Vec<Matrix3>,
    generators: Vec<Matrix3>,
    conductor: u32,
    index: HashMap<Vec<Rational>, usize>,
    regular: OnceLock<(Arc<PermGroup>, Vec<usize>)>,
}

impl MatrixGroup3 {
    pub fn close(gens: &[Matrix3]) -> Result<MatrixGroup3, OrthoError> {
        let n = gens.iter().fold(1u32, |acc, g| acc.lcm(&g.conductor()));
        let n = if n % 4 == 2 { n / 2 } else { n };
        let id = Matrix3::identity();
        let mut seen: HashMap<Vec<Rational>, Matrix3> = HashMap::new();
        seen.insert(id.key(n), id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.mul(g);
                let k = y.key(n);
                if !seen.contains_key(&k) {
                    if seen.len() >= MAX_MATRIX_GROUP_ORDER {
                        return Err(OrthoError::GroupTooLarge(MAX_MATRIX_GROUP_ORDER));
                    }
                    seen.insert(k, y.clone());
                    queue.push_back(y);
                }
            }
        }
        let id_key = Matrix3::identity().key(n);
        let mut keyed: Vec<(Vec<Rational>, Matrix3)> = seen.into_iter().collect();
        keyed.sort_by(|a, b| (a.0 != id_key).cmp(&(b.0 != id_key)).then_with(|| a.0.cmp(&b.0)));
        let index = keyed.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect();
        Ok(MatrixGroup3 {
            elements: keyed.into_iter().map(|(_, m)| m).collect(),
            generators: gens.to_vec(),
            conductor: n,
            index,
            regular: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix3] {
        &self.elements
    }

    pub fn generators(&self) -> &[Matrix3] {
        &self.generators
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn index_of(&self, m: &Matrix3) -> Option<usize> {
        if m.conductor() > 0 && self.conductor % canonical(m.conductor()) != 0 {
            return None;
        }
        self.index.get(&m.key(self.conductor)).copied()
    }

    pub fn contains(&self, m: &Matrix3) -> bool {
        self.index_of(m).is_some()
    }

    /// Left regular permutation representation, with `map[i]` the
    /// permutation-group index of matrix element `i`.
    ///
    /// Only the generators are multiplied out as matrices; the permutation
    /// image λ(M) satisfies λ(M)(0) = index(M), which recovers the map.
    pub fn regular_permutation_group(&self) -> (Arc<PermGroup>, Vec<usize>) {
        self.regular
            .get_or_init(|| {
                let n = self.order();
                let gens: Vec<Vec<u16>> = self
                    .generators
                    .iter()
                    .map(|g| {
                        self.elements
                            .iter()
                            .map(|b| self.index_of(&g.mul(b)).expect("closed") as u16)
                            .collect()
                    })
                    .collect();
                let g = PermGroup::close_generators(n.max(1), &gens).expect("regular image has order |G|");
                let mut map = vec![0usize; n];
                for (pi, p) in g.elements().iter().enumerate() {
                    map[p[0] as usize] = pi;
                }
                (g, map)
            })
            .clone()
    }

    /// Trace and determinant characters on the regular permutation model.
    pub fn trace_and_det_characters(&self) -> (Arc<PermGroup>, Vec<usize>, ClassFunction, ClassFunction) {
        let (g, map) = self.regular_permutation_group();
        let mut back = vec![0usize; map.len()];
        for (i, &p) in map.iter().enumerate() {
            back[p] = i;
        }
        let tr = ClassFunction::from_element_fn(&g, |e| self.elements[back[e]].trace());
        let det = ClassFunction::from_element_fn(&g, |e| self.elements[back[e]].det());
        (g, map, tr, det)
    }
}

fn canonical(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

/// Standard generating sets used throughout tests and examples.
pub mod standard {
    use super::Matrix3;
    use crate::exactnum::{rat, CycNum};

    /// Cyclic coordinate shift (x, y, z) ↦ (z, x, y).
    pub fn three_cycle() -> Matrix3 {
        Matrix3::from_ints([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    }

    pub fn half_turn_x() -> Matrix3 {
        Matrix3::from_ints([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    }

    pub fn quarter_turn_z() -> Matrix3 {
        Matrix3::from_ints([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
    }

    /// Reflection swapping the x and y coordinates.
    pub fn swap_xy() -> Matrix3 {
        Matrix3::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    }

    /// Rotation group of the tetrahedron (A4).
    pub fn tetrahedral_rotations() -> Vec<Matrix3> {
        vec![three_cycle(), half_turn_x()]
    }

    /// Rotation group of the cube (S4 inside SO(3)).
    pub fn octahedral_rotations() -> Vec<Matrix3> {
        vec![three_cycle(), quarter_turn_z()]
    }

    /// Full symmetry group of the tetrahedron: the standard representation of S4.
    pub fn s4_standard() -> Vec<Matrix3> {
        vec![three_cycle(), swap_xy(), half_turn_x()]
    }

    /// Golden ratio (1 + √5)/2 = 1 + ζ5 + ζ5⁴.
    pub fn golden() -> CycNum {
        &CycNum::one() + &(&CycNum::root_of_unity(5, 1).unwrap() + &CycNum::root_of_unity(5, 4).unwrap())
    }

    /// Rotation of order 5 completing the tetrahedral rotations to the icosahedral group.
    pub fn icosahedral_five_fold() -> Matrix3 {
        let p = golden();
        let q = &p - &CycNum::one();
        let one = CycNum::one();
        let h = rat(1, 2);
        let m = Matrix3::new([
            [one.clone(), -p.clone(), q.clone()],
            [p.clone(), q.clone(), -one.clone()],
            [q, one, p],
        ]);
        m.scale(&CycNum::from_rational(h))
    }

    /// Rotation group of the icosahedron (A5).
    pub fn icosahedral_rotations() -> Vec<Matrix3> {
        vec![three_cycle(), half_turn_x(), icosahedral_five_fold()]
    }

    /// Append −I to a generating set.
    pub fn with_minus_one(mut gens: Vec<Matrix3>) -> Vec<Matrix3> {
        gens.push(Matrix3::minus_identity());
        gens
    }
}
