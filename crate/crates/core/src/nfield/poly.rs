use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::det_int;
use super::NfError;
use crate::exactnum::Rational;

/// Integer polynomial, coefficients in ascending order with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn derivative(&self) -> ZPoly {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect())
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &BigInt) -> ZPoly {
        Self::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
    }

    /// f(x + s).
    pub fn shift(&self, s: &BigInt) -> ZPoly {
        let lin = ZPoly::new(vec![s.clone(), BigInt::one()]);
        let mut acc = ZPoly::new(vec![]);
        for a in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&ZPoly::new(vec![a.clone()]));
        }
        acc
    }

    /// f(−x), negated when the degree is odd so monic input stays monic.
    pub fn reflect(&self) -> ZPoly {
        let sgn = if self.degree() % 2 == 1 { -1 } else { 1 };
        Self::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a * sgn } else { a * sgn })
                .collect(),
        )
    }

    /// f(x²).
    pub fn compose_square(&self) -> ZPoly {
        let mut out = vec![BigInt::zero(); 2 * self.c.len()];
        for (i, a) in self.c.iter().enumerate() {
            out[2 * i] = a.clone();
        }
        Self::new(out)
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.c.iter().map(|a| Rational::from_integer(a.clone())).collect())
    }

    /// Exact division by a monic divisor, or None when it does not divide.
    pub fn div_exact_monic(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(d.is_monic());
        let mut r = self.c.clone();
        let dn = d.degree();
        if self.degree() < dn {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        let mut q = vec![BigInt::zero(); self.degree() - dn + 1];
        for i in (0..q.len()).rev() {
            let coef = r[i + dn].clone();
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] -= &coef * b;
                }
            }
            q[i] = coef;
        }
        r.iter().all(|x| x.is_zero()).then(|| ZPoly::new(q))
    }

    /// Resultant via the Sylvester determinant.
    pub fn resultant(&self, o: &ZPoly) -> BigInt {
        let (m, n) = (self.degree(), o.degree());
        if self.is_zero() || o.is_zero() {
            return BigInt::zero();
        }
        if m + n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (j, a) in self.c.iter().rev().enumerate() {
                rows[i][i + j] = a.clone();
            }
        }
        for i in 0..m {
            for (j, b) in o.c.iter().rev().enumerate() {
                rows[n + i][i + j] = b.clone();
            }
        }
        det_int(rows)
    }

    /// disc(f) = (−1)^{n(n−1)/2} Res(f, f′) / lead(f).
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        let r = self.resultant(&self.derivative());
        let r = r / self.lead();
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// L2 norm bound: the smallest integer ≥ sqrt(Σ a_i²).
    pub(crate) fn l2_ceil(&self) -> BigInt {
        let s: BigInt = self.c.iter().map(|a| a * a).sum();
        let r = crate::arith::isqrt(&s);
        if &r * &r == s {
            r
        } else {
            r + 1
        }
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.c.iter().map(|a| a.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, a) in coeffs.iter().enumerate().rev() {
        if a == "0" {
            continue;
        }
        let (neg, mag) = match a.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, a.clone()),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let show_coeff = i == 0 || mag != "1";
        if show_coeff {
            write!(f, "{mag}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "x")?,
            _ => write!(f, "x^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl From<ZPoly> for Vec<String> {
    fn from(p: ZPoly) -> Self {
        p.c.iter().map(|a| a.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for ZPoly {
    type Error = NfError;
    fn try_from(v: Vec<String>) -> Result<Self, NfError> {
        let c: Result<Vec<BigInt>, _> = v.iter().map(|s| s.trim().parse::<BigInt>()).collect();
        c.map(ZPoly::new).map_err(|e| NfError::Parse(e.to_string()))
    }
}

/// Parses either an ascending comma list "-1,-1,0,1" or an expression "x^3 - x - 1".
impl FromStr for ZPoly {
    type Err = NfError;
    fn from_str(s: &str) -> Result<Self, NfError> {
        let s = s.trim();
        if !s.contains('x') {
            let inner = s.trim_start_matches('[').trim_end_matches(']');
            return ZPoly::try_from(inner.split(',').map(|t| t.to_string()).collect::<Vec<_>>());
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            terms.push(cur);
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        for t in terms {
            let bad = || NfError::Parse(format!("bad term {t:?}"));
            let (coef, exp) = match t.find('x') {
                None => (t.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let head = t[..pos].trim_end_matches('*');
                    let coef = match head {
                        "" | "+" => BigInt::one(),
                        "-" => -BigInt::one(),
                        h => h.parse::<BigInt>().map_err(|_| bad())?,
                    };
                    let tail = &t[pos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += coef;
        }
        Ok(ZPoly::new(coeffs))
    }
}

/// Rational polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    c: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn zero() -> Self {
        QPoly { c: vec![] }
    }

    pub fn one() -> Self {
        QPoly { c: vec![Rational::one()] }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.c.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        QPoly::new(self.c.iter().map(|a| a / &l).collect())
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dn = d.degree();
        if self.c.len() <= dn {
            return (QPoly::zero(), self.clone());
        }
        let l = d.lead();
        let mut q = vec![Rational::zero(); self.c.len() - dn];
        for i in (0..q.len()).rev() {
            let coef = &r[i + dn] / &l;
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] -= &coef * b;
                }
            }
            q[i] = coef;
        }
        r.truncate(dn);
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * Rational::from_integer(BigInt::from(i))).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a)
    }

    /// Integer polynomial when all coefficients are integers.
    pub fn to_zpoly(&self) -> Option<ZPoly> {
        self.c
            .iter()
            .map(|a| a.is_integer().then(|| a.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(ZPoly::new)
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn primitive_part(&self) -> ZPoly {
        let den = self.c.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
        let z = ZPoly::new(self.c.iter().map(|a| (a * Rational::from_integer(den.clone())).to_integer()).collect());
        let g = z.content();
        if g.is_zero() {
            return z;
        }
        let g = if z.lead().is_negative() { -g } else { g };
        ZPoly::new(z.c.iter().map(|a| a / &g).collect())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.c.iter().map(|a| a.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Discriminant of a polynomial with integer coefficients.
pub fn poly_disc(f: &ZPoly) -> BigInt {
    f.discriminant()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminants() {
        assert_eq!(poly_disc(&ZPoly::from_i64(&[-1, -1, 0, 1])), BigInt::from(-23));
        assert_eq!(poly_disc(&ZPoly::from_i64(&[-1, -2, 1, 1])), BigInt::from(49));
        assert_eq!(poly_disc(&ZPoly::from_i64(&[-5, 0, 1])), BigInt::from(20));
        // cubic formula oracle b²c² − 4c³ − 4b³d − 27d² + 18bcd for x³ + bx² + cx + d
        for (b, c, d) in [(2i64, -3, 5), (0, 7, -1), (-4, 1, 9), (3, 3, 3)] {
            let want = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
            assert_eq!(poly_disc(&ZPoly::from_i64(&[d, c, b, 1])), BigInt::from(want));
        }
    }

    #[test]
    fn parse_and_print() {
        let f: ZPoly = "x^3 - x - 1".parse().unwrap();
        assert_eq!(f, ZPoly::from_i64(&[-1, -1, 0, 1]));
        assert_eq!(f.to_string(), "x^3 - x - 1");
        let g: ZPoly = "-1,-2,1,1".parse().unwrap();
        assert_eq!(g.to_string(), "x^3 + x^2 - 2x - 1");
        assert_eq!("3*x^2+x-7".parse::<ZPoly>().unwrap(), ZPoly::from_i64(&[-7, 1, 3]));
        assert!("x^".parse::<ZPoly>().is_err());
    }

    #[test]
    fn shift_and_division() {
        let f = ZPoly::from_i64(&[-1, -1, 0, 1]);
        let g = f.shift(&BigInt::from(1));
        assert_eq!(g, ZPoly::from_i64(&[-1, 2, 3, 1]));
        assert_eq!(poly_disc(&g), poly_disc(&f));
        let h = f.mul(&ZPoly::from_i64(&[2, 1]));
        assert_eq!(h.div_exact_monic(&f).unwrap(), ZPoly::from_i64(&[2, 1]));
        assert!(h.div_exact_monic(&ZPoly::from_i64(&[1, 1])).is_none());
        assert_eq!(f.compose_square(), ZPoly::from_i64(&[-1, 0, -1, 0, 0, 0, 1]));
    }
}
