//! Orders in Q[x]/(f): Dedekind's criterion and p-maximal enlargement by the
//! radical/multiplier-ring iteration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::fp::{factor_mod_p, FpPoly};
use super::linalg::{hnf_rows, identity, inverse, left_kernel_mod_p, vec_mul, QMat};
use super::poly::ZPoly;
use crate::exactnum::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DedekindResult {
    Maximal,
    /// Z[θ] is not p-maximal; `witness` (power-basis coordinates) is U(θ)/p,
    /// an algebraic integer outside Z[θ].
    NotMaximal { witness: Vec<Rational> },
}

/// Dedekind's criterion for p-maximality of Z[θ], f monic.
pub fn dedekind_test(f: &ZPoly, p: u64) -> DedekindResult {
    let n = f.degree();
    let fbar = FpPoly::from_zpoly(f, p);
    let fac = factor_mod_p(&fbar);
    let g = fac.iter().fold(FpPoly::one(p), |a, (h, _)| a.mul(h));
    let h = fac.iter().fold(FpPoly::one(p), |a, (q, m)| (1..*m).fold(a, |b, _| b.mul(q)));
    let gz = g.to_zpoly();
    let hz = h.to_zpoly();
    let diff = f.sub(&gz.mul(&hz));
    let pb = BigInt::from(p);
    let big_f = ZPoly::new(diff.coeffs().iter().map(|c| c / &pb).collect());
    let fb = FpPoly::from_zpoly(&big_f, p);
    let d = fb.gcd(&g).gcd(&h);
    if d.degree() == 0 {
        return DedekindResult::Maximal;
    }
    let u = fbar.div(&d).to_zpoly();
    let mut witness: Vec<Rational> = (0..n).map(|i| Rational::new(u.coeff(i), pb.clone())).collect();
    witness.truncate(n);
    DedekindResult::NotMaximal { witness }
}

/// Power-basis arithmetic modulo a monic f.
#[derive(Clone, Debug)]
pub(crate) struct PowerBasis {
    n: usize,
    /// θ^k reduced, for k < 2n − 1
    powers: Vec<Vec<Rational>>,
}

impl PowerBasis {
    pub(crate) fn new(f: &ZPoly) -> Self {
        let n = f.degree();
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(2 * n);
        for k in 0..(2 * n).max(1) {
            let v = if k < n {
                (0..n).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect()
            } else {
                // θ·θ^{k−1}
                let prev: &Vec<Rational> = &powers[k - 1];
                let top = prev[n - 1].clone();
                let mut v = vec![Rational::zero(); n];
                for i in (1..n).rev() {
                    v[i] = prev[i - 1].clone();
                }
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi -= &top * Rational::from_integer(f.coeff(i));
                }
                v
            };
            powers.push(v);
        }
        PowerBasis { n, powers }
    }

    pub(crate) fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.n;
        let mut raw = vec![Rational::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut out = raw[..n].to_vec();
        for (k, c) in raw.iter().enumerate().skip(n) {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&self.powers[k]) {
                *o += c * t;
            }
        }
        out
    }

    /// Matrix of multiplication by a: row i holds a·θ^i.
    pub(crate) fn mul_matrix(&self, a: &[Rational]) -> QMat {
        (0..self.n).map(|i| self.mul(a, &self.powers[i])).collect()
    }
}

/// A full-rank order given by a Z-basis in power-basis coordinates.
#[derive(Clone, Debug)]
pub(crate) struct Order {
    pub basis: QMat,
    inv: QMat,
}

impl Order {
    pub(crate) fn equation_order(n: usize) -> Self {
        Order { basis: identity(n), inv: identity(n) }
    }

    fn from_basis(basis: QMat) -> Self {
        let inv = inverse(&basis).expect("order basis is nonsingular");
        Order { basis, inv }
    }

    fn coords(&self, v: &[Rational]) -> Vec<Rational> {
        vec_mul(v, &self.inv)
    }

    /// Structure constants T[i][j] = coordinates of ω_i·ω_j (integers).
    fn table(&self, pb: &PowerBasis) -> Vec<Vec<Vec<BigInt>>> {
        let n = self.basis.len();
        let mut t = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let c: Vec<BigInt> = self
                    .coords(&pb.mul(&self.basis[i], &self.basis[j]))
                    .into_iter()
                    .map(|x| {
                        assert!(x.is_integer(), "order is closed under multiplication");
                        x.to_integer()
                    })
                    .collect();
                t[i][j] = c.clone();
                t[j][i] = c;
            }
        }
        t
    }
}

fn int_mod(x: &Rational, p: u64) -> u64 {
    assert!(x.is_integer(), "order is closed under multiplication");
    x.to_integer().mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn mul_mod_table(a: &[u64], b: &[u64], t: &[Vec<Vec<u64>>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0u128; n];
    let pp = p as u128;
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..n {
            if b[j] == 0 {
                continue;
            }
            let ab = a[i] as u128 * b[j] as u128 % pp;
            for (o, &c) in out.iter_mut().zip(&t[i][j]) {
                *o = (*o + ab * c as u128) % pp;
            }
        }
    }
    out.into_iter().map(|x| x as u64).collect()
}

/// One enlargement step at p: returns None when the order is p-maximal.
fn enlarge_at(order: &Order, pb: &PowerBasis, p: u64) -> Option<Order> {
    let n = order.basis.len();
    let tz = order.table(pb);
    let pbig = BigInt::from(p);
    let t: Vec<Vec<Vec<u64>>> = tz
        .iter()
        .map(|row| row.iter().map(|v| v.iter().map(|x| x.mod_floor(&pbig).to_u64().unwrap()).collect()).collect())
        .collect();
    // radical of pO: kernel of x ↦ x^{p^j} with p^j ≥ n
    let mut q = p;
    while (q as usize) < n {
        q *= p;
    }
    let frob: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let e: Vec<u64> = (0..n).map(|k| u64::from(k == i)).collect();
            pow_in_quotient(&e, q, &t, p, order)
        })
        .collect();
    let ker = left_kernel_mod_p(&frob, p);
    let mut gens: Vec<Vec<BigInt>> = ker.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    for i in 0..n {
        gens.push((0..n).map(|k| if k == i { pbig.clone() } else { BigInt::zero() }).collect());
    }
    let h_i = hnf_rows(gens);
    debug_assert_eq!(h_i.len(), n);
    // U = {y ∈ O : y·I ⊆ pI}
    let hq: QMat = h_i.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
    let hinv = inverse(&hq).expect("radical has full rank");
    let mut big: Vec<Vec<u64>> = vec![Vec::with_capacity(n * n); n];
    for (i, row) in big.iter_mut().enumerate() {
        for iota in &h_i {
            // ω_i · ι in O-coordinates
            let mut v = vec![Rational::zero(); n];
            for (l, c) in iota.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (o, x) in v.iter_mut().zip(&tz[i][l]) {
                    *o += Rational::from_integer(c * x);
                }
            }
            let in_i = vec_mul(&v, &hinv);
            row.extend(in_i.iter().map(|x| int_mod(x, p)));
        }
    }
    let uk = left_kernel_mod_p(&big, p);
    let mut ugens: Vec<Vec<BigInt>> = uk.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    for i in 0..n {
        ugens.push((0..n).map(|k| if k == i { pbig.clone() } else { BigInt::zero() }).collect());
    }
    let h_u = hnf_rows(ugens);
    let det: BigInt = (0..n).map(|i| h_u[i][i].clone()).product();
    if det == pbig.pow(n as u32) {
        return None;
    }
    // O' = U/p
    let inv_p = Rational::new(BigInt::one(), pbig);
    let scaled: QMat = h_u.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone()) * &inv_p).collect()).collect();
    let new_basis = super::linalg::mat_mul(&scaled, &order.basis);
    Some(Order::from_basis(new_basis))
}

/// x^e in O/pO for a basis vector, using the coordinates of 1 in the order.
fn pow_in_quotient(a: &[u64], mut e: u64, t: &[Vec<Vec<u64>>], p: u64, order: &Order) -> Vec<u64> {
    let n = a.len();
    let mut one_pb = vec![Rational::zero(); n];
    one_pb[0] = Rational::one();
    let one: Vec<u64> = order.coords(&one_pb).iter().map(|x| int_mod(x, p)).collect();
    let mut acc = one;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_table(&acc, &base, t, p);
        }
        base = mul_mod_table(&base, &base, t, p);
        e >>= 1;
    }
    acc
}

/// How p-maximality was certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// p² ∤ disc(f)
    SquarefreeDisc,
    /// Dedekind's criterion holds for Z[θ]
    Dedekind,
    /// radical/multiplier iteration ran this many enlargement steps
    Round2 { steps: u32 },
}

/// Enlarges `order` until p-maximal.
pub(crate) fn p_maximal(order: Order, pb: &PowerBasis, p: u64) -> (Order, u32) {
    let mut cur = order;
    let mut steps = 0;
    while let Some(next) = enlarge_at(&cur, pb, p) {
        cur = next;
        steps += 1;
    }
    (cur, steps)
}

pub(crate) fn order_index(order: &Order) -> BigInt {
    let d = super::linalg::det_rat(&order.basis).abs();
    let inv = Rational::one() / d;
    assert!(inv.is_integer(), "the equation order has integral index in any larger order");
    inv.to_integer()
}
