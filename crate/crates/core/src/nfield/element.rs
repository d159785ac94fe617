use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::factor::is_irreducible;
use super::field::NumberField;
use super::linalg::{charpoly, det_rat, inverse, vec_mul, QMat};
use super::poly::{QPoly, ZPoly};
use super::NfError;
use crate::exactnum::Rational;

/// Element of a number field in power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    c: Vec<Rational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.c == other.c
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, mut c: Vec<Rational>) -> Self {
        c.resize(field.degree(), Rational::zero());
        FieldElement { field: field.clone(), c }
    }

    pub fn from_ints(field: &Arc<NumberField>, c: &[i64]) -> Self {
        Self::new(field, c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    pub fn from_rational(field: &Arc<NumberField>, r: Rational) -> Self {
        Self::new(field, vec![r])
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(n)))
    }

    /// The generator θ (zero in the rational field).
    pub fn theta(field: &Arc<NumberField>) -> Self {
        if field.degree() == 1 {
            return Self::from_rational(field, -Rational::from_integer(field.poly().coeff(0)));
        }
        Self::from_ints(field, &[0, 1])
    }

    /// Element with the given coordinates on the field's integral basis.
    pub fn from_integral_coords(field: &Arc<NumberField>, coords: &[i64]) -> Self {
        let v: Vec<Rational> = coords.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
        Self::new(field, vec_mul(&v, field.integral_basis()))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    fn check(&self, o: &FieldElement) -> Result<(), NfError> {
        if self.field.same_as(&o.field) {
            Ok(())
        } else {
            Err(NfError::ParentMismatch)
        }
    }

    pub fn add(&self, o: &FieldElement) -> Result<FieldElement, NfError> {
        self.check(o)?;
        Ok(Self::new(&self.field, self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, o: &FieldElement) -> Result<FieldElement, NfError> {
        self.check(o)?;
        Ok(Self::new(&self.field, self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect()))
    }

    pub fn mul(&self, o: &FieldElement) -> Result<FieldElement, NfError> {
        self.check(o)?;
        Ok(Self::new(&self.field, self.field.pb.mul(&self.c, &o.c)))
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        Self::new(&self.field, self.c.iter().map(|a| a * r).collect())
    }

    pub fn inverse(&self) -> Result<FieldElement, NfError> {
        if self.is_zero() {
            return Err(NfError::ZeroElement);
        }
        let m = self.mul_matrix();
        let inv = inverse(&m).expect("nonzero element of a field is invertible");
        let mut e0 = vec![Rational::zero(); self.c.len()];
        e0[0] = Rational::one();
        Ok(Self::new(&self.field, vec_mul(&e0, &inv)))
    }

    /// Row i is self·θ^i.
    pub fn mul_matrix(&self) -> QMat {
        self.field.pb.mul_matrix(&self.c)
    }

    pub fn norm(&self) -> Rational {
        det_rat(&self.mul_matrix())
    }

    pub fn trace(&self) -> Rational {
        let m = self.mul_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).sum()
    }

    pub fn charpoly(&self) -> QPoly {
        charpoly(&self.mul_matrix())
    }

    /// The characteristic polynomial is a power of the minimal polynomial,
    /// so the minimal polynomial is its radical.
    pub fn minpoly(&self) -> QPoly {
        let c = self.charpoly();
        let g = c.gcd(&c.derivative());
        c.divrem(&g).0.monic()
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(|x| x.is_zero())
    }

    /// Least positive integer d with d·self integral in Z[θ] coordinates.
    fn coordinate_denominator(&self) -> BigInt {
        self.field.integral_denominator(&self.c)
    }

    /// Characteristic polynomial over Q of y + s·θ acting on K[y]/(y² − self).
    pub(crate) fn quadratic_algebra_charpoly(&self, s: i64) -> QPoly {
        let n = self.c.len();
        let pb = &self.field.pb;
        let sq = Rational::from_integer(BigInt::from(s));
        let theta = Self::theta(&self.field).c;
        let mut m: QMat = vec![vec![Rational::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            let mut basis = vec![Rational::zero(); n];
            basis[i] = Rational::one();
            let st: Vec<Rational> = pb.mul(&basis, &theta).into_iter().map(|x| x * &sq).collect();
            // θ^i·(y + sθ) = sθ^{i+1} + θ^i·y
            m[i][..n].clone_from_slice(&st);
            m[i][n + i] = Rational::one();
            // θ^i y·(y + sθ) = αθ^i + sθ^{i+1}·y
            let a: Vec<Rational> = pb.mul(&basis, &self.c);
            m[n + i][..n].clone_from_slice(&a);
            m[n + i][n..].clone_from_slice(&st);
        }
        charpoly(&m)
    }

    /// Exact squareness test in the parent field.
    ///
    /// With K-polynomial g = x² − β, if N(g(x − sθ)) is squarefree then g
    /// is irreducible over K iff that norm is irreducible over Q.
    pub fn is_square(&self) -> Result<bool, NfError> {
        if self.is_zero() {
            return Err(NfError::ZeroElement);
        }
        let d = self.coordinate_denominator();
        let beta = self.scale(&Rational::from_integer(&d * &d));
        for s in 0..64 {
            let p = beta.quadratic_algebra_charpoly(s);
            if p.is_squarefree() {
                let z = p.to_zpoly().expect("charpoly of an integral element");
                return Ok(!is_irreducible(&z));
            }
        }
        unreachable!("only finitely many shifts give a non-squarefree norm")
    }
}

/// True iff a·b is a square in the common field.
pub fn sqrt_class_equal(a: &FieldElement, b: &FieldElement) -> Result<bool, NfError> {
    if a.is_zero() || b.is_zero() {
        return Err(NfError::ZeroElement);
    }
    a.mul(b)?.is_square()
}

/// The field M(√α) of degree 2·[M:Q], with its Q-defining polynomial.
#[derive(Clone, Debug)]
pub struct SexticField {
    pub field: Arc<NumberField>,
    /// α·c², integral, whose square root the generator is built from
    pub alpha: FieldElement,
    /// generator is √(α·c²) + shift·θ
    pub shift: i64,
}

/// Builds M(√α) from the norm of (x − sθ)² − α·c², shifting until squarefree.
pub fn sextic_from_sqrt(m: &Arc<NumberField>, alpha: &FieldElement) -> Result<SexticField, NfError> {
    if !alpha.field.same_as(m) {
        return Err(NfError::ParentMismatch);
    }
    if alpha.is_square()? {
        return Err(NfError::IsSquare);
    }
    let d = alpha.coordinate_denominator();
    let a = alpha.scale(&Rational::from_integer(&d * &d));
    for s in 0..64 {
        let p = a.quadratic_algebra_charpoly(s);
        if !p.is_squarefree() {
            continue;
        }
        let z: ZPoly = p.to_zpoly().expect("integral generator");
        let field = NumberField::new(z).map_err(|e| match e {
            NfError::IrreducibilityFailure(_) => NfError::ReducibleResultant,
            other => other,
        })?;
        return Ok(SexticField { field, alpha: a, shift: s });
    }
    Err(NfError::ReducibleResultant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn cubic23() -> Arc<NumberField> {
        NumberField::from_i64(&[-1, -1, 0, 1]).unwrap()
    }

    #[test]
    fn element_arithmetic() {
        let k = cubic23();
        let t = FieldElement::theta(&k);
        assert_eq!(t.norm(), rat(1, 1));
        assert_eq!(FieldElement::from_int(&k, 3).minpoly().coeffs(), &[rat(-3, 1), rat(1, 1)]);
        let a = FieldElement::from_ints(&k, &[2, -1, 3]);
        let prod = a.mul(&a.inverse().unwrap()).unwrap();
        assert_eq!(prod, FieldElement::from_int(&k, 1));
        assert_eq!(t.minpoly().coeffs(), &[rat(-1, 1), rat(-1, 1), rat(0, 1), rat(1, 1)]);
        let q = NumberField::rationals();
        assert_eq!(a.mul(&FieldElement::from_int(&q, 1)), Err(NfError::ParentMismatch));
        assert_eq!(FieldElement::from_int(&k, 0).inverse(), Err(NfError::ZeroElement));
    }

    #[test]
    fn square_classes() {
        let k = cubic23();
        let t = FieldElement::theta(&k);
        let t3 = t.mul(&t).unwrap().mul(&t).unwrap();
        assert!(sqrt_class_equal(&FieldElement::from_int(&k, 4), &FieldElement::from_int(&k, 9)).unwrap());
        assert!(sqrt_class_equal(&t, &t3).unwrap());
        assert!(!sqrt_class_equal(&t, &FieldElement::from_int(&k, 1)).unwrap());
        let q = NumberField::rationals();
        assert!(!sqrt_class_equal(&FieldElement::from_int(&q, 2), &FieldElement::from_int(&q, 3)).unwrap());
        assert!(sqrt_class_equal(&FieldElement::from_int(&q, 2), &FieldElement::from_int(&q, 8)).unwrap());
        // θ is a unit of norm 1 but not a square; θ·(θ+1)² is in its class
        let t1 = t.add(&FieldElement::from_int(&k, 1)).unwrap();
        let b = t.mul(&t1).unwrap().mul(&t1).unwrap();
        assert!(sqrt_class_equal(&t, &b).unwrap());
    }

    #[test]
    fn sextics() {
        let k = cubic23();
        let s = sextic_from_sqrt(&k, &FieldElement::theta(&k)).unwrap();
        assert_eq!(s.field.poly(), &ZPoly::from_i64(&[-1, 0, -1, 0, 0, 0, 1]));
        assert_eq!(s.shift, 0);
        let m1 = sextic_from_sqrt(&k, &FieldElement::from_int(&k, -1)).unwrap();
        assert!(m1.shift > 0);
        let dk = m1.field.disc().clone();
        let dm2 = BigInt::from(23 * 23);
        assert!((&dk % &dm2).is_zero());
        assert!(matches!(sextic_from_sqrt(&k, &FieldElement::from_int(&k, 4)), Err(NfError::IsSquare)));
    }
}
