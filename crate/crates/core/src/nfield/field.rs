use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::factor::is_irreducible;
use super::fp::{factor_mod_p, FpPoly};
use super::linalg::{identity, QMat};
use super::order::{dedekind_test, order_index, p_maximal, Certificate, DedekindResult, Order, PowerBasis};
use super::poly::ZPoly;
use super::NfError;
use crate::arith::factor_big;
use crate::exactnum::Rational;

pub const MAX_FIELD_DEGREE: usize = 6;

/// A number field Q(θ) with θ a root of a monic irreducible integer polynomial,
/// together with its certified discriminant and an integral basis.
#[derive(Clone, Debug)]
pub struct NumberField {
    poly: ZPoly,
    poly_disc: BigInt,
    disc: BigInt,
    index: BigInt,
    integral_basis: QMat,
    certificates: BTreeMap<u64, Certificate>,
    pub(crate) pb: PowerBasis,
}

/// Serialized form: the defining polynomial with its discriminant data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub coeffs: Vec<String>,
    pub disc: String,
    pub index: String,
}

impl NumberField {
    pub fn new(poly: ZPoly) -> Result<Arc<NumberField>, NfError> {
        let n = poly.degree();
        if poly.is_zero() || !(1..=MAX_FIELD_DEGREE).contains(&n) {
            return Err(NfError::DegreeOutOfRange(n));
        }
        if !poly.is_monic() {
            return Err(NfError::NotMonic);
        }
        if !is_irreducible(&poly) {
            return Err(NfError::IrreducibilityFailure(poly.to_string()));
        }
        let pb = PowerBasis::new(&poly);
        if n == 1 {
            return Ok(Arc::new(NumberField {
                poly,
                poly_disc: BigInt::one(),
                disc: BigInt::one(),
                index: BigInt::one(),
                integral_basis: identity(1),
                certificates: BTreeMap::new(),
                pb,
            }));
        }
        let poly_disc = poly.discriminant();
        let mut order = Order::equation_order(n);
        let mut certificates = BTreeMap::new();
        for (p, e) in factor_big(&poly_disc.abs()) {
            let p = p.to_u64().ok_or(NfError::PrimeTooLarge)?;
            if e < 2 {
                certificates.insert(p, Certificate::SquarefreeDisc);
                continue;
            }
            if dedekind_test(&poly, p) == DedekindResult::Maximal {
                certificates.insert(p, Certificate::Dedekind);
                continue;
            }
            let (o, steps) = p_maximal(order, &pb, p);
            order = o;
            certificates.insert(p, Certificate::Round2 { steps });
        }
        let index = order_index(&order);
        let disc = &poly_disc / (&index * &index);
        debug_assert_eq!(&disc * &index * &index, poly_disc);
        Ok(Arc::new(NumberField { poly, poly_disc, disc, index, integral_basis: order.basis, certificates, pb }))
    }

    pub fn from_i64(c: &[i64]) -> Result<Arc<NumberField>, NfError> {
        Self::new(ZPoly::from_i64(c))
    }

    /// The rational field, as Q(θ) with θ = 0.
    pub fn rationals() -> Arc<NumberField> {
        Self::new(ZPoly::x()).expect("x is irreducible")
    }

    pub fn poly(&self) -> &ZPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn poly_disc(&self) -> &BigInt {
        &self.poly_disc
    }

    /// Field discriminant d_K (signed).
    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// [O_K : Z[θ]].
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    /// Rows are a Z-basis of O_K in power-basis coordinates.
    pub fn integral_basis(&self) -> &QMat {
        &self.integral_basis
    }

    pub fn certificates(&self) -> &BTreeMap<u64, Certificate> {
        &self.certificates
    }

    pub fn summary(&self) -> FieldSummary {
        FieldSummary {
            coeffs: self.poly.coeffs().iter().map(|c| c.to_string()).collect(),
            disc: self.disc.to_string(),
            index: self.index.to_string(),
        }
    }

    /// Shape of pO_K as sorted (residue degree, ramification index) pairs,
    /// read off the factorization of f mod p.
    pub fn prime_splitting(&self, p: u64) -> Result<Vec<(u32, u32)>, NfError> {
        if (&self.index % BigInt::from(p)).is_zero() {
            return Err(NfError::IndexDivisor(p));
        }
        let mut out: Vec<(u32, u32)> = factor_mod_p(&FpPoly::from_zpoly(&self.poly, p))
            .into_iter()
            .map(|(g, e)| (g.degree() as u32, e))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Primes dividing d_K.
    pub fn ramified_primes(&self) -> Vec<u64> {
        factor_big(&self.disc.abs()).into_keys().map(|p| p.to_u64().expect("ramified prime fits in u64")).collect()
    }

    /// Same field when the defining polynomials agree.
    pub fn same_as(&self, other: &NumberField) -> bool {
        self.poly == other.poly
    }

    pub(crate) fn integral_denominator(&self, coords: &[Rational]) -> BigInt {
        coords.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()))
    }
}

/// field_disc: (d_K, index) for a monic irreducible polynomial.
pub fn field_disc(f: &ZPoly) -> Result<(BigInt, BigInt), NfError> {
    let k = NumberField::new(f.clone())?;
    Ok((k.disc().clone(), k.index().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        assert_eq!(field_disc(&ZPoly::from_i64(&[-1, -1, 0, 1])).unwrap(), (BigInt::from(-23), BigInt::one()));
        assert_eq!(field_disc(&ZPoly::from_i64(&[-5, 0, 1])).unwrap(), (BigInt::from(5), BigInt::from(2)));
        assert_eq!(field_disc(&ZPoly::from_i64(&[-1, -2, 1, 1])).unwrap(), (BigInt::from(49), BigInt::one()));
        // x³ − 2·27 = (3·∛2)³: index 9 over Q(∛2) of disc −108
        assert_eq!(field_disc(&ZPoly::from_i64(&[-54, 0, 0, 1])).unwrap().0, BigInt::from(-108));
        // Q(ζ9)+ : x³ − 3x + 1, disc 81
        assert_eq!(field_disc(&ZPoly::from_i64(&[1, -3, 0, 1])).unwrap().0, BigInt::from(81));
        // Q(i, √2) = Q(ζ8): x⁴ + 1, disc 256
        assert_eq!(field_disc(&ZPoly::from_i64(&[1, 0, 0, 0, 1])).unwrap().0, BigInt::from(256));
        assert!(matches!(field_disc(&ZPoly::from_i64(&[-4, 0, 1])), Err(NfError::IrreducibilityFailure(_))));
    }

    #[test]
    fn splitting() {
        let k = NumberField::from_i64(&[-1, -1, 0, 1]).unwrap();
        assert_eq!(k.prime_splitting(23).unwrap(), vec![(1, 1), (1, 2)]);
        assert_eq!(k.prime_splitting(2).unwrap(), vec![(3, 1)]);
        let q5 = NumberField::from_i64(&[-5, 0, 1]).unwrap();
        assert_eq!(q5.prime_splitting(2), Err(NfError::IndexDivisor(2)));
        for p in [3u64, 5, 7, 11, 13] {
            let s = k.prime_splitting(p).unwrap();
            assert_eq!(s.iter().map(|(f, e)| f * e).sum::<u32>(), 3);
        }
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_test(&ZPoly::from_i64(&[-1, -1, 0, 1]), 23), DedekindResult::Maximal);
        match dedekind_test(&ZPoly::from_i64(&[-5, 0, 1]), 2) {
            DedekindResult::NotMaximal { witness } => {
                // (1 + θ)/2
                assert_eq!(witness, vec![Rational::new(1.into(), 2.into()), Rational::new(1.into(), 2.into())]);
            }
            DedekindResult::Maximal => panic!("Z[√5] is not 2-maximal"),
        }
    }
}
