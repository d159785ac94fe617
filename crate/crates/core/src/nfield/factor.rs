//! Factorization of monic integer polynomials: square-free parts over Q,
//! a modular factorization, Hensel lifting and Zassenhaus recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fp::{factor_mod_p, FpPoly};
use super::poly::{QPoly, ZPoly};
use crate::arith::primes_up_to;

/// Irreducible monic factors with multiplicities, sorted by (degree, coefficients).
pub fn factor_monic(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    assert!(f.is_monic(), "factor_monic needs a monic polynomial");
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for h in factor_squarefree(&g) {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(&b.0)));
    out
}

pub fn is_irreducible(f: &ZPoly) -> bool {
    if f.degree() == 0 {
        return false;
    }
    let fac = factor_monic(f);
    fac.len() == 1 && fac[0].1 == 1
}

/// Yun's algorithm over Q; monic integral input gives monic integral parts.
fn squarefree_decomposition(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    let fq = f.to_qpoly();
    let mut out = Vec::new();
    let d = fq.derivative();
    let mut a = fq.gcd(&d);
    if a.degree() == 0 {
        return vec![(f.clone(), 1)];
    }
    let mut b = fq.divrem(&a).0;
    let mut c = d.divrem(&a).0;
    let mut dd = c.sub(&b.derivative());
    let mut i = 1;
    loop {
        a = b.gcd(&dd);
        if a.degree() > 0 {
            out.push((monic_z(&a), i));
        }
        b = b.divrem(&a).0;
        if b.degree() == 0 {
            break;
        }
        c = dd.divrem(&a).0;
        dd = c.sub(&b.derivative());
        i += 1;
    }
    out
}

fn monic_z(q: &QPoly) -> ZPoly {
    q.monic().to_zpoly().expect("monic factor of a monic integer polynomial is integral")
}

fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.degree();
    if n <= 1 {
        return vec![f.clone()];
    }
    if f.coeff(0).is_zero() {
        let rest = f.div_exact_monic(&ZPoly::x()).unwrap();
        let mut out = vec![ZPoly::x()];
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let disc = f.discriminant();
    // pick, among a few good primes, one giving the fewest modular factors
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in primes_up_to(2000).into_iter().skip(1) {
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FpPoly::from_zpoly(f, p);
        let facs: Vec<FpPoly> = factor_mod_p(&fp).into_iter().map(|(g, _)| g).collect();
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, facs) = best.expect("a prime not dividing the discriminant exists below 2000");
    // Mignotte: any factor's coefficients are at most 2^n·‖f‖₂
    let bound = (BigInt::one() << n) * f.l2_ceil();
    let target = bound * 2 + 1;
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    while m < target {
        m *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &facs, p, k);
    recombine(f, lifted, &m)
}

/// Lifts f ≡ ∏ g_i (mod p) to a factorization modulo p^k with monic factors.
fn hensel_lift(f: &ZPoly, facs: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![f.clone()];
    }
    let g0 = &facs[0];
    let h0 = facs[1..].iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let (g, h) = lift_pair(f, g0, &h0, p, k);
    let mut out = vec![g];
    out.extend(hensel_lift(&h, &facs[1..], p, k));
    out
}

fn sym_mod(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    ZPoly::new(
        f.coeffs()
            .iter()
            .map(|a| {
                let r = a.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Linear Hensel lifting of f ≡ g·h (mod p), g and h monic and coprime mod p.
fn lift_pair(f: &ZPoly, g0: &FpPoly, h0: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, _, t) = g0.xgcd(h0);
    debug_assert!(one.is_one());
    let pb = BigInt::from(p);
    let mut g = g0.to_zpoly();
    let mut h = h0.to_zpoly();
    let mut pj = pb.clone();
    for _ in 1..k {
        // e = (f − g h)/p^j mod p; solve a·h + b·g ≡ e with deg a < deg g
        let diff = f.sub(&g.mul(&h));
        let e = ZPoly::new(diff.coeffs().iter().map(|c| c / &pj).collect());
        let e = FpPoly::from_zpoly(&e, p);
        let a = t.mul(&e).rem(g0);
        let b = e.sub(&a.mul(h0)).div(g0);
        g = g.add(&a.to_zpoly().scale(&pj));
        h = h.add(&b.to_zpoly().scale(&pj));
        pj *= &pb;
    }
    (sym_mod(&g, &pj), sym_mod(&h, &pj))
}

fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let cand = subset.iter().fold(ZPoly::from_i64(&[1]), |acc, &i| sym_mod(&acc.mul(&lifted[i]), m));
            if let Some(q) = rest.div_exact_monic(&cand) {
                out.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
            if !next_subset(&mut subset, r) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(rest);
    out
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn swinnerton_dyer_style() {
        // x⁴ − 10x² + 1 is irreducible but splits modulo every prime
        assert!(is_irreducible(&z(&[1, 0, -10, 0, 1])));
        assert!(is_irreducible(&z(&[-1, -1, 0, 1])));
        assert!(!is_irreducible(&z(&[-1, 0, 0, 0, 1])));
        assert!(is_irreducible(&z(&[-1, 0, -1, 0, 0, 0, 1])));
    }

    #[test]
    fn products_are_recovered() {
        let a = z(&[-1, -1, 0, 1]);
        let b = z(&[1, 0, -10, 0, 1]);
        let c = z(&[2, 1]);
        let f = a.mul(&b).mul(&c).mul(&c);
        let fac = factor_monic(&f);
        assert_eq!(fac, vec![(c.clone(), 2), (a.clone(), 1), (b.clone(), 1)]);
        // (x²+1)³ = norm of x² + 1 over a cubic field
        let g = z(&[1, 0, 1]);
        assert_eq!(factor_monic(&g.mul(&g).mul(&g)), vec![(g, 3)]);
        // x⁶ − 1
        let fac = factor_monic(&z(&[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(fac.len(), 4);
    }
}
