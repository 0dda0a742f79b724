//! Exact arithmetic in the cyclotomic field Q(zeta_M), together with the
//! q-combinatorics and Gaussian sums built on top of it.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(M)-1)`
//! reduced modulo the M-th cyclotomic polynomial, as an integer coefficient
//! vector over a common positive denominator.  Every operation re-canonicalises,
//! so equality of coefficient vectors decides equality in the field.  A level
//! of 0 marks a plain rational, compatible with any M.

use crate::field::Field;
use crate::poly::{cyclotomic_polynomial, euler_phi, Poly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CycError {
    #[error("division by zero in Q(zeta_{level})")]
    DivisionByZero { level: u32 },
    #[error("denominator vanishes: {what}")]
    VanishingDenominator { what: String },
    #[error("{0}")]
    Domain(String),
}

struct CycCtx {
    m: u32,
    phi: usize,
    /// zeta^e reduced mod Phi_M, for e = 0..M-1.
    monomials: Vec<Vec<BigInt>>,
    /// Phi_M as a rational polynomial, for inversion.
    modulus: Poly<BigRational>,
}

static CTX_CACHE: Lazy<Mutex<HashMap<u32, Arc<CycCtx>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn ctx(m: u32) -> Arc<CycCtx> {
    let mut cache = CTX_CACHE.lock().unwrap();
    cache
        .entry(m)
        .or_insert_with(|| {
            let phi = euler_phi(m);
            let modulus_int = cyclotomic_polynomial(m);
            // Iteratively build zeta^e mod Phi for e = 0..M-1.
            let mut monomials = Vec::with_capacity(m as usize);
            let mut cur = vec![BigInt::zero(); phi];
            cur[0] = BigInt::one();
            monomials.push(cur.clone());
            for _ in 1..m {
                // multiply by zeta: shift, then reduce the overflow via
                // zeta^phi = -(lower part of Phi).
                let top = cur[phi - 1].clone();
                for j in (1..phi).rev() {
                    cur[j] = cur[j - 1].clone();
                }
                cur[0] = BigInt::zero();
                if !top.is_zero() {
                    for j in 0..phi {
                        cur[j] -= &top * &modulus_int[j];
                    }
                }
                monomials.push(cur.clone());
            }
            let modulus = Poly::new(
                modulus_int
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect(),
            );
            Arc::new(CycCtx {
                m,
                phi,
                monomials,
                modulus,
            })
        })
        .clone()
}

/// An element of Q(zeta_M); `level == 0` encodes a plain rational constant.
#[derive(Clone)]
pub struct Cyc {
    level: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyc {
    fn normalized(level: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -c.clone();
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            den /= &g;
            for c in num.iter_mut() {
                *c /= &g;
            }
        }
        if num.iter().all(|c| c.is_zero()) {
            return Cyc {
                level: 0,
                num: vec![BigInt::zero()],
                den: BigInt::one(),
            };
        }
        // A constant vector collapses to level 0.
        if level != 0 && num[1..].iter().all(|c| c.is_zero()) {
            return Cyc {
                level: 0,
                num: vec![num[0].clone()],
                den,
            };
        }
        Cyc { level, num, den }
    }

    pub fn zero() -> Self {
        Cyc {
            level: 0,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Cyc {
            level: 0,
            num: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Cyc {
            level: 0,
            num: vec![BigInt::from(v)],
            den: BigInt::one(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Cyc::normalized(0, vec![BigInt::from(num)], BigInt::from(den))
    }

    pub fn from_big_ratio(r: &BigRational) -> Self {
        Cyc::normalized(0, vec![r.numer().clone()], r.denom().clone())
    }

    /// `zeta_M^k` in canonical form; `k` is taken modulo `M`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        let c = ctx(m);
        let e = k.rem_euclid(m as i64) as usize;
        Cyc::normalized(m, c.monomials[e].clone(), BigInt::one())
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.level == 0 && self.den.is_one() && self.num.len() == 1 && self.num[0].is_one()
    }

    fn lift(&self, level: u32) -> Cyc {
        if self.level == level || level == 0 {
            return self.clone();
        }
        assert_eq!(
            self.level, 0,
            "cannot mix cyclotomic levels {} and {}",
            self.level, level
        );
        let phi = ctx(level).phi;
        let mut num = vec![BigInt::zero(); phi];
        num[0] = self.num[0].clone();
        Cyc {
            level,
            num,
            den: self.den.clone(),
        }
    }

    fn unify(a: &Cyc, b: &Cyc) -> (Cyc, Cyc, u32) {
        let level = if a.level != 0 { a.level } else { b.level };
        if a.level != 0 && b.level != 0 {
            assert_eq!(
                a.level, b.level,
                "cannot mix cyclotomic levels {} and {}",
                a.level, b.level
            );
        }
        (a.lift(level), b.lift(level), level)
    }

    pub fn inverse(&self) -> Result<Cyc, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero { level: self.level });
        }
        if self.level == 0 {
            return Ok(Cyc::normalized(
                0,
                vec![self.den.clone()],
                self.num[0].clone(),
            ));
        }
        let c = ctx(self.level);
        let f = Poly::new(
            self.num
                .iter()
                .map(|n| BigRational::new(n.clone(), self.den.clone()))
                .collect(),
        );
        let (g, s, _) = f.ext_gcd(&c.modulus);
        debug_assert_eq!(g.degree(), 0, "element not invertible mod Phi_M");
        let ginv = g.coeffs[0].inverse().unwrap();
        let inv = s.scale(&ginv);
        Ok(Cyc::from_rational_coeffs(self.level, {
            let mut v = inv.coeffs;
            v.resize(c.phi, BigRational::zero());
            v
        }))
    }

    pub fn pow(&self, e: i64) -> Cyc {
        if e == 0 {
            return Cyc::one();
        }
        let base = if e < 0 {
            self.inverse().expect("pow of zero to negative exponent")
        } else {
            self.clone()
        };
        let mut acc = Cyc::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            k >>= 1;
        }
        acc
    }

    /// Galois automorphism `zeta -> zeta^k` (requires gcd(k, M) = 1).
    pub fn galois(&self, k: i64) -> Cyc {
        if self.level == 0 {
            return self.clone();
        }
        let c = ctx(self.level);
        let kk = k.rem_euclid(self.level as i64) as u64;
        assert_eq!(
            BigInt::from(kk).gcd(&BigInt::from(self.level)),
            BigInt::one(),
            "galois exponent must be coprime to the level"
        );
        let phi = c.phi;
        let mut num = vec![BigInt::zero(); phi];
        for (j, coeff) in self.num.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let e = ((j as u64 * kk) % self.level as u64) as usize;
            for (i, m) in c.monomials[e].iter().enumerate() {
                num[i] += coeff * m;
            }
        }
        Cyc::normalized(self.level, num, self.den.clone())
    }

    /// Complex conjugation (`zeta -> zeta^{-1}`).
    pub fn conj(&self) -> Cyc {
        if self.level == 0 {
            return self.clone();
        }
        self.galois(self.level as i64 - 1)
    }

    /// Floating-point embedding at `zeta_M = exp(2 pi i / M)`; display only.
    pub fn embed(&self) -> (f64, f64) {
        let den = big_to_f64(&self.den);
        let (mut re, mut im) = (0.0, 0.0);
        if self.level == 0 {
            return (big_to_f64(&self.num[0]) / den, 0.0);
        }
        let m = self.level as f64;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / m;
            let cf = big_to_f64(c);
            re += cf * theta.cos();
            im += cf * theta.sin();
        }
        (re / den, im / den)
    }

    /// Coefficient vector over Q in the power basis, padded to phi(M).
    pub fn to_rational_coeffs(&self, level: u32) -> Vec<BigRational> {
        assert!(
            self.level == 0 || self.level == level,
            "level mismatch in serialization"
        );
        let lifted = self.lift(level);
        let phi = if level == 0 { 1 } else { ctx(level).phi };
        let mut out = Vec::with_capacity(phi);
        for j in 0..phi {
            let n = lifted.num.get(j).cloned().unwrap_or_else(BigInt::zero);
            out.push(BigRational::new(n, lifted.den.clone()));
        }
        out
    }

    pub fn from_rational_coeffs(level: u32, coeffs: Vec<BigRational>) -> Cyc {
        if level == 0 {
            return Cyc::from_big_ratio(&coeffs[0]);
        }
        let phi = ctx(level).phi;
        assert_eq!(coeffs.len(), phi);
        let mut den = BigInt::one();
        for c in &coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Cyc::normalized(level, num, den)
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.num == other.num && self.den == other.den;
        }
        let (a, b, _) = Cyc::unify(self, other);
        a.num == b.num && a.den == b.den
    }
}
impl Eq for Cyc {}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, rhs: Cyc) -> Cyc {
        let (a, b, level) = Cyc::unify(&self, &rhs);
        let den = a.den.lcm(&b.den);
        let fa = &den / &a.den;
        let fb = &den / &b.den;
        let n = a.num.len().max(b.num.len());
        let mut num = vec![BigInt::zero(); n];
        for (i, c) in a.num.iter().enumerate() {
            num[i] += c * &fa;
        }
        for (i, c) in b.num.iter().enumerate() {
            num[i] += c * &fb;
        }
        Cyc::normalized(level, num, den)
    }
}

impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, rhs: Cyc) -> Cyc {
        self + (-rhs)
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc::normalized(
            self.level,
            self.num.iter().map(|c| -c.clone()).collect(),
            self.den,
        )
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, rhs: Cyc) -> Cyc {
        if self.is_zero() || rhs.is_zero() {
            return Cyc::zero();
        }
        let (a, b, level) = Cyc::unify(&self, &rhs);
        if level == 0 {
            return Cyc::normalized(0, vec![&a.num[0] * &b.num[0]], &a.den * &b.den);
        }
        let c = ctx(level);
        let phi = c.phi;
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                conv[i + j] += x * y;
            }
        }
        // Fold the overflow degrees back using the monomial table.
        let mut num = conv[..phi].to_vec();
        for e in phi..2 * phi - 1 {
            if conv[e].is_zero() {
                continue;
            }
            // e < 2*phi - 1 <= 2M, and e mod M indexes the table after
            // accounting for zeta^M = 1.
            let red = &c.monomials[e % c.m as usize];
            for (i, m) in red.iter().enumerate() {
                num[i] += &conv[e] * m;
            }
        }
        Cyc::normalized(level, num, &a.den * &b.den)
    }
}

impl Div for Cyc {
    type Output = Cyc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Cyc) -> Cyc {
        let inv = rhs.inverse().expect("division by zero Cyc");
        self * inv
    }
}

impl Zero for Cyc {
    fn zero() -> Self {
        Cyc::zero()
    }
    fn is_zero(&self) -> bool {
        Cyc::is_zero(self)
    }
}

impl One for Cyc {
    fn one() -> Self {
        Cyc::one()
    }
}

impl Field for Cyc {
    fn from_i64(v: i64) -> Self {
        Cyc::from_int(v)
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc(level={}, [", self.level)?;
        for (i, c) in self.num.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]/{})", self.den)
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// q-combinatorics
// ---------------------------------------------------------------------------

/// `[n]^q = (1 - q^n)/(1 - q)`.
pub fn bracket_sup(n: i64, q: &Cyc) -> Result<Cyc, CycError> {
    let den = Cyc::one() - q.clone();
    if den.is_zero() {
        return Err(CycError::VanishingDenominator {
            what: "1 - q".into(),
        });
    }
    Ok((Cyc::one() - q.pow(n)) / den)
}

/// `[n]^q! = [n]^q [n-1]^q ... [1]^q`, with `[0]^q! = 1`.
pub fn bracket_sup_factorial(n: i64, q: &Cyc) -> Result<Cyc, CycError> {
    let mut acc = Cyc::one();
    for k in 1..=n {
        acc = acc * bracket_sup(k, q)?;
    }
    Ok(acc)
}

/// Gaussian binomial `[n over i]^q`.
pub fn gauss_binomial(n: i64, i: i64, q: &Cyc) -> Result<Cyc, CycError> {
    assert!(0 <= i && i <= n);
    let den = bracket_sup_factorial(i, q)? * bracket_sup_factorial(n - i, q)?;
    if den.is_zero() {
        return Err(CycError::VanishingDenominator {
            what: format!("[{}]! [{}]! at this q", i, n - i),
        });
    }
    Ok(bracket_sup_factorial(n, q)? / den)
}

/// `(n)_q = (1 - (-q)^n)/(1 + q)`.
pub fn paren(n: i64, q: &Cyc) -> Result<Cyc, CycError> {
    let den = Cyc::one() + q.clone();
    if den.is_zero() {
        return Err(CycError::VanishingDenominator {
            what: "1 + q".into(),
        });
    }
    Ok((Cyc::one() - (-q.clone()).pow(n)) / den)
}

pub fn paren_factorial(n: i64, q: &Cyc) -> Result<Cyc, CycError> {
    let mut acc = Cyc::one();
    for k in 1..=n {
        acc = acc * paren(k, q)?;
    }
    Ok(acc)
}

/// Pseudo-Gaussian binomial `(n over i)_q`.
pub fn pseudo_gauss_binomial(n: i64, i: i64, q: &Cyc) -> Result<Cyc, CycError> {
    assert!(0 <= i && i <= n);
    let den = paren_factorial(i, q)? * paren_factorial(n - i, q)?;
    if den.is_zero() {
        return Err(CycError::VanishingDenominator {
            what: format!("({})_q! ({})_q! at this q", i, n - i),
        });
    }
    Ok(paren_factorial(n, q)? / den)
}

/// `[n]_q = q^((1-n)/2) (n)_q`, given a square root of q.
pub fn bracket_sub(n: i64, q: &Cyc, q_half: &Cyc) -> Result<Cyc, CycError> {
    debug_assert_eq!(q_half.clone() * q_half.clone(), q.clone());
    Ok(q_half.pow(1 - n) * paren(n, q)?)
}

/// One-call record of the Section-1 q-numbers at a fixed `n` and `q`.
pub struct QNumbers {
    pub bracket_sup: Cyc,
    pub bracket_sup_factorial: Cyc,
    pub paren: Cyc,
    pub paren_factorial: Cyc,
    /// `[n]_q`; present when a square root of q was supplied.
    pub bracket_sub: Option<Cyc>,
}

pub fn q_numbers(n: i64, q: &Cyc, q_half: Option<&Cyc>) -> Result<QNumbers, CycError> {
    Ok(QNumbers {
        bracket_sup: bracket_sup(n, q)?,
        bracket_sup_factorial: bracket_sup_factorial(n, q)?,
        paren: paren(n, q)?,
        paren_factorial: paren_factorial(n, q)?,
        bracket_sub: match q_half {
            Some(h) => Some(bracket_sub(n, q, h)?),
            None => None,
        },
    })
}

// ---------------------------------------------------------------------------
// Gaussian sums and radicals
// ---------------------------------------------------------------------------

/// `G_{+-}(N, m) = sum_{k=0}^{N-1} q^{+-k(k+m)}` with `q = zeta_N`, realised
/// inside Q(zeta_{4N}).
pub fn gauss_sum(n_level: u32, m: i64, positive: bool) -> Cyc {
    assert!(n_level >= 1);
    let m4 = 4 * n_level;
    let sign = if positive { 1 } else { -1 };
    let mut acc = Cyc::zero();
    for k in 0..n_level as i64 {
        // q^{k(k+m)} = zeta_{4N}^{4 k (k+m)}
        acc = acc + Cyc::root_of_unity(m4, sign * 4 * k * (k + m));
    }
    acc
}

/// `i` as an element of Q(zeta_{4N}) (requires 4 | M, true for M = 4N).
pub fn imaginary_unit(m4: u32) -> Cyc {
    assert_eq!(m4 % 4, 0);
    Cyc::root_of_unity(m4, m4 as i64 / 4)
}

/// Exact `sqrt(m)` for odd `m >= 1` dividing `M/4`, via the quadratic Gauss
/// sum `sum_k zeta_m^{k^2}` (= sqrt(m) for m = 1 mod 4, i sqrt(m) for
/// m = 3 mod 4).
pub fn sqrt_odd(m4: u32, m: u32) -> Cyc {
    assert!(m % 2 == 1);
    assert_eq!(m4 % (4 * m), 0, "zeta_m must live in Q(zeta_M)");
    let step = (m4 / m) as i64;
    let mut g = Cyc::zero();
    for k in 0..m as i64 {
        g = g + Cyc::root_of_unity(m4, step * ((k * k) % m as i64));
    }
    if m % 4 == 1 {
        g
    } else {
        // g = i sqrt(m); divide by i.
        g / imaginary_unit(m4)
    }
}

/// Exact `sqrt(d)` for any positive integer `d` whose odd part divides `M/4`
/// and with `8 | M` when `d` is even.  Used for the closed-form constants.
pub fn sqrt_exact(m4: u32, d: u32) -> Cyc {
    assert!(d >= 1);
    let mut e = 0u32;
    let mut odd = d;
    while odd % 2 == 0 {
        odd /= 2;
        e += 1;
    }
    let mut out = Cyc::from_int(2).pow((e / 2) as i64);
    if e % 2 == 1 {
        // sqrt(2) = zeta_8 + zeta_8^{-1}
        assert_eq!(m4 % 8, 0);
        let z8 = Cyc::root_of_unity(m4, m4 as i64 / 8);
        out = out * (z8.clone() + z8.inverse().unwrap());
    }
    out * sqrt_odd(m4, odd)
}

/// `(1 + i) sqrt(N)` in Q(zeta_{4N}), realised per the Gaussian-sum design:
/// for N = 2 mod 4 this equals `t * G_+(N, 1)`; it is cross-checked exactly
/// against the independent `sqrt_exact` construction in the test suite.
pub fn one_plus_i_sqrt_n(n_level: u32) -> Cyc {
    let m4 = 4 * n_level;
    if n_level % 4 == 2 {
        Cyc::root_of_unity(m4, 1) * gauss_sum(n_level, 1, true)
    } else {
        (Cyc::one() + imaginary_unit(m4)) * sqrt_exact(m4, n_level)
    }
}

/// `phi_beta` by the recursion `phi_b = phi_{b-1} + xi [b-1]^{q^2} phi_{b-2}`
/// with `xi = -(1+q)^2/(q - q^{-1})`.
pub fn phi_beta(beta: i64, q: &Cyc) -> Result<Cyc, CycError> {
    assert!(beta >= 0);
    let q2 = q.clone() * q.clone();
    if q2 == Cyc::one() {
        return Err(CycError::Domain("phi_beta requires q^2 != 1".into()));
    }
    let q_inv = q
        .inverse()
        .map_err(|_| CycError::Domain("q must be nonzero".into()))?;
    let denom = q.clone() - q_inv;
    let xi = -(Cyc::one() + q.clone()).pow(2) / denom;
    let mut prev2 = Cyc::one(); // phi_0
    if beta == 0 {
        return Ok(prev2);
    }
    let mut prev1 = Cyc::one(); // phi_1
    for b in 2..=beta {
        let next = prev1.clone() + xi.clone() * bracket_sup(b - 1, &q2)? * prev2.clone();
        prev2 = prev1;
        prev1 = next;
    }
    Ok(prev1)
}

/// Closed form for `phi_beta`: `phi_{2i} = (1-q)^{-i} Psi_{2i}`,
/// `phi_{2i+1} = [2i+1]^q phi_{2i}`, with
/// `Psi_{2i} = ([4]/[2]) [3] ([8]/[4]) [5] ... [2i-1] ([4i]/[2i])`.
pub fn phi_beta_closed(beta: i64, q: &Cyc) -> Result<Cyc, CycError> {
    assert!(beta >= 0);
    if beta <= 1 {
        return Ok(Cyc::one());
    }
    let i = beta / 2;
    let mut psi = Cyc::one();
    for k in 1..=i {
        // [4k]^q / [2k]^q = 1 + q^(2k), valid at every q (including roots of
        // unity where numerator and denominator both vanish).
        psi = psi * (Cyc::one() + q.pow(2 * k));
        if k < i {
            psi = psi * bracket_sup(2 * k + 1, q)?;
        }
    }
    let one_minus_q = Cyc::one() - q.clone();
    if one_minus_q.is_zero() {
        return Err(CycError::Domain(
            "phi_beta closed form requires q != 1".into(),
        ));
    }
    let even_part = one_minus_q.inverse().unwrap().pow(i) * psi;
    if beta % 2 == 0 {
        Ok(even_part)
    } else {
        Ok(bracket_sup(2 * i + 1, q)? * even_part)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_basics() {
        assert_eq!(Cyc::root_of_unity(4, 2), Cyc::from_int(-1));
        assert_eq!(Cyc::root_of_unity(40, 0), Cyc::one());
        let z = Cyc::root_of_unity(40, 4);
        assert_eq!(z.clone() * z.conj(), Cyc::one());
        // zeta_M^M = 1 and Phi_M(zeta_M) = 0 under the arithmetic.
        assert_eq!(Cyc::root_of_unity(40, 1).pow(40), Cyc::one());
        let phi40 = cyclotomic_polynomial(40);
        let mut acc = Cyc::zero();
        for (j, c) in phi40.iter().enumerate() {
            acc = acc
                + Cyc::from_big_ratio(&BigRational::from_integer(c.clone()))
                    * Cyc::root_of_unity(40, j as i64);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn embedding_matches_exact_values() {
        let (re, im) = Cyc::root_of_unity(8, 1).embed();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((re - s).abs() < 1e-12 && (im - s).abs() < 1e-12);
    }

    #[test]
    fn q_number_basics() {
        let q = Cyc::root_of_unity(40, 4); // q = zeta_10
        assert_eq!(bracket_sup_factorial(0, &q).unwrap(), Cyc::one());
        assert_eq!(bracket_sup(1, &q).unwrap(), Cyc::one());
        // (n)_q = [n]^{-q}
        for n in 0..8 {
            assert_eq!(
                paren(n, &q).unwrap(),
                bracket_sup(n, &(-q.clone())).unwrap()
            );
        }
        // [n]_q via q^{1/2} = zeta_40^2
        let qh = Cyc::root_of_unity(40, 2);
        let b3 = bracket_sub(3, &q, &qh).unwrap();
        // [3]_q = (q^{-3/2} + q^{3/2})/(q^{-1/2} + q^{1/2})
        let expect = (qh.pow(-3) + qh.pow(3)) / (qh.pow(-1) + qh.pow(1));
        assert_eq!(b3, expect);
    }

    #[test]
    fn paren_vanishing_at_roots_of_unity() {
        // (i)_q = 0 iff i = k Nbar; for N = 2 mod 4, Nbar = N/2.
        let n = 10u32;
        let q = Cyc::root_of_unity(4 * n, 4);
        for i in 1..=10i64 {
            let v = paren(i, &q).unwrap();
            if i % (n as i64 / 2) == 0 {
                assert!(v.is_zero(), "({})_q should vanish", i);
            } else {
                assert!(!v.is_zero(), "({})_q should not vanish", i);
            }
        }
    }

    #[test]
    fn pascal_relations_for_binomials() {
        let q = Cyc::root_of_unity(72, 4); // q = zeta_18: no vanishing (k)_q for k <= 7
        for n in 0..=6i64 {
            for i in 0..=n {
                // [n+1 over i]^q = [n over i]^q + q^{n+1-i} [n over i-1]^q
                let lhs = gauss_binomial(n + 1, i, &q).unwrap();
                let mut rhs = if i <= n {
                    gauss_binomial(n, i, &q).unwrap()
                } else {
                    Cyc::zero()
                };
                if i >= 1 {
                    rhs = rhs + q.pow(n + 1 - i) * gauss_binomial(n, i - 1, &q).unwrap();
                }
                assert_eq!(lhs, rhs);
                // pseudo version with (-q) weights
                let lhs = pseudo_gauss_binomial(n + 1, i, &q).unwrap();
                let mut rhs = if i <= n {
                    pseudo_gauss_binomial(n, i, &q).unwrap()
                } else {
                    Cyc::zero()
                };
                if i >= 1 {
                    rhs = rhs
                        + (-q.clone()).pow(n + 1 - i)
                            * pseudo_gauss_binomial(n, i - 1, &q).unwrap();
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn gauss_sum_closed_forms() {
        // N = 2 mod 4: G_+(N, 0) = 0.
        for n in [6u32, 10, 14] {
            assert!(gauss_sum(n, 0, true).is_zero());
            assert!(gauss_sum(n, 0, false).is_zero());
        }
        // N = 0 mod 4: G_+(N, 0) = (1+i) sqrt(N), exact via the independent
        // radical construction.
        for n in [4u32, 8, 12] {
            let g = gauss_sum(n, 0, true);
            let expect = (Cyc::one() + imaginary_unit(4 * n)) * sqrt_exact(4 * n, n);
            assert_eq!(g, expect);
        }
        // Odd m, N = 2 mod 4: G_+(N, m) = (1+i) sqrt(N) / t^{m^2}.
        for n in [6u32, 10, 14] {
            let expect_num = (Cyc::one() + imaginary_unit(4 * n)) * sqrt_exact(4 * n, n);
            for m in [1i64, 3, 5] {
                let t_m2 = Cyc::root_of_unity(4 * n, m * m);
                assert_eq!(gauss_sum(n, m, true) * t_m2.clone(), expect_num);
                // G_- is the complex conjugate of G_+.
                assert_eq!(gauss_sum(n, m, false), gauss_sum(n, m, true).conj());
                // G_-(N, m) = t^{m^2} (1-i) sqrt(N)
                let expect_minus =
                    (Cyc::one() - imaginary_unit(4 * n)) * sqrt_exact(4 * n, n) * t_m2;
                assert_eq!(gauss_sum(n, m, false), expect_minus);
            }
        }
    }

    #[test]
    fn sqrt_odd_handles_non_squarefree() {
        for m in [9u32, 15, 25] {
            let m4 = 4 * 2 * m; // embed in Q(zeta_(8m))
            let r = sqrt_odd(m4, m);
            assert_eq!(r.clone() * r.clone(), Cyc::from_int(m as i64));
            let (re, im) = r.embed();
            assert!(im.abs() < 1e-9 && (re - (m as f64).sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn phi_beta_small_values() {
        let q = Cyc::root_of_unity(40, 4);
        assert_eq!(phi_beta(0, &q).unwrap(), Cyc::one());
        assert_eq!(phi_beta(1, &q).unwrap(), Cyc::one());
        // phi_2 = 1 + xi [1]^{q^2} = (1 + q^2)/(1 - q)
        let expect = (Cyc::one() + q.pow(2)) / (Cyc::one() - q.clone());
        assert_eq!(phi_beta(2, &q).unwrap(), expect);
    }

    #[test]
    fn phi_n_prime_by_residue_class() {
        // phi_{N'} = 0 for N = 0,1,3 mod 4 and nonzero for N = 2 mod 4.
        for (n, expect_zero) in [
            (5u32, true),
            (7, true),
            (8, true),
            (12, true),
            (6, false),
            (10, false),
            (14, false),
        ] {
            let q = Cyc::root_of_unity(4 * n, 4);
            let n_prime = if n % 2 == 0 { n / 2 } else { n } as i64;
            let v = phi_beta(n_prime, &q).unwrap();
            assert_eq!(v.is_zero(), expect_zero, "N = {}", n);
        }
    }
}
