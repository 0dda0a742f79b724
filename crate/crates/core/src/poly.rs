//! Dense univariate polynomials over an exact field, plus the integer-level
//! machinery this crate needs: cyclotomic polynomials over `BigInt`, Yun
//! square-free factorisation and Sturm chains over `BigRational`.

use crate::field::Field;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with coefficients in ascending degree order; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K> {
    pub coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(K::zero());
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly {
            coeffs: vec![K::zero()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &K {
        self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * K::from_i64(i as i64))
            .collect();
        Poly::new(coeffs)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![K::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c.clone();
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&(K::zero() - K::one())))
    }

    pub fn scale(&self, k: &K) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dl = rhs.degree();
        if self.degree() < dl || self.is_zero() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![K::zero(); self.degree() - dl + 1];
        let lead_inv = rhs
            .leading()
            .inverse()
            .expect("leading coeff must be invertible");
        for k in (0..quot.len()).rev() {
            let c = rem[k + dl].clone() * lead_inv.clone();
            if !c.is_zero() {
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * b.clone();
                }
            }
            quot[k] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        let inv = self
            .leading()
            .inverse()
            .expect("zero polynomial has no monic form");
        self.scale(&inv)
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*rhs = g`, `g` monic.
    pub fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        let mut s0 = Poly::new(vec![K::one()]);
        let mut s1 = Poly::zero();
        let mut t0 = Poly::zero();
        let mut t1 = Poly::new(vec![K::one()]);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let lead_inv = r0.leading().inverse().expect("gcd of zero polynomials");
        (
            r0.scale(&lead_inv),
            s0.scale(&lead_inv),
            t0.scale(&lead_inv),
        )
    }
}

/// The `M`-th cyclotomic polynomial with integer coefficients. Computed by the
/// divisor recursion `x^M - 1 = prod_{d | M} Phi_d(x)`; exact integer division.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut table: Vec<Option<Vec<BigInt>>> = vec![None; m as usize + 1];
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        // x^d - 1
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        for e in 1..d {
            if d % e != 0 {
                continue;
            }
            let phi_e = table[e as usize].as_ref().unwrap();
            num = int_poly_exact_div(&num, phi_e);
        }
        table[d as usize] = Some(num);
    }
    table[m as usize].take().unwrap()
}

/// Exact division of integer polynomials (the divisor must be monic here).
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for (j, b) in den.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
        }
        quot[k] = c;
    }
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "inexact polynomial division"
    );
    quot
}

pub fn euler_phi(m: u32) -> usize {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Yun's square-free decomposition over the rationals: returns `[(f_i, i)]`
/// with `p = prod f_i^i` up to a constant, each `f_i` square-free and monic.
pub fn squarefree_decomposition(p: &Poly<BigRational>) -> Vec<(Poly<BigRational>, usize)> {
    assert!(!p.is_zero());
    if p.degree() == 0 {
        return vec![];
    }
    let p = p.monic();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        if a.degree() > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Number of real roots of a square-free rational polynomial in `(0, +inf)`,
/// by Sturm's theorem (sign variations at 0 minus at +infinity).
pub fn sturm_positive_roots(p: &Poly<BigRational>) -> usize {
    assert!(!p.is_zero());
    if p.degree() == 0 {
        return 0;
    }
    // Sturm chain.
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.scale(&-BigRational::one()));
    }
    let sign_at_zero: Vec<i8> = chain.iter().map(|f| rat_sign(&f.coeffs[0])).collect();
    let sign_at_inf: Vec<i8> = chain.iter().map(|f| rat_sign(f.leading())).collect();
    variations(&sign_at_zero) - variations(&sign_at_inf)
}

fn rat_sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(signs: &[i8]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Positive real roots of an arbitrary rational polynomial, counted with
/// multiplicity. Zero roots are ignored.
pub fn positive_roots_with_multiplicity(p: &Poly<BigRational>) -> usize {
    squarefree_decomposition(p)
        .into_iter()
        .map(|(f, mult)| mult * sturm_positive_roots(&f))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(coeffs: &[i64]) -> Poly<BigRational> {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| <BigRational as crate::field::Field>::from_i64(c))
                .collect(),
        )
    }

    #[test]
    fn cyclotomic_small() {
        // Phi_1 = x - 1, Phi_4 = x^2 + 1, Phi_12 = x^4 - x^2 + 1
        assert_eq!(
            cyclotomic_polynomial(1),
            vec![BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_polynomial(4),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_polynomial(12),
            [1, 0, -1, 0, 1]
                .iter()
                .map(|&c| BigInt::from(c))
                .collect::<Vec<_>>()
        );
        assert_eq!(cyclotomic_polynomial(40).len() - 1, euler_phi(40));
        assert_eq!(euler_phi(40), 16);
        assert_eq!(euler_phi(56), 24);
    }

    #[test]
    fn sturm_counts_positive_roots() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        assert_eq!(positive_roots_with_multiplicity(&rp(&[6, -7, 0, 1])), 2);
        // (x-1)^2 x
        assert_eq!(positive_roots_with_multiplicity(&rp(&[0, 1, -2, 1])), 2);
        // x^2 + 1
        assert_eq!(positive_roots_with_multiplicity(&rp(&[1, 0, 1])), 0);
    }

    #[test]
    fn ext_gcd_inverts() {
        let a = rp(&[1, 3, 1]);
        let m = rp(&[2, 0, 0, 1]);
        let (g, s, _t) = a.ext_gcd(&m);
        assert_eq!(g.degree(), 0);
        // s * a = g (mod m)
        let (_, r) = s.mul(&a).div_rem(&m);
        assert_eq!(r, g);
    }
}
