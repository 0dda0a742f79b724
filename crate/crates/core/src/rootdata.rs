//! Root data for osp(1|2n): positive roots, the Weyl group with its
//! super-signature, truncated Weyl alcoves at a root of unity, quantum
//! superdimensions, supercharacter sums, the BWM Q-polynomial, and the
//! constants (d_lambda, Omega, Q(0), z) entering the 3-manifold invariant.

use crate::cyclo::{gauss_sum, imaginary_unit, one_plus_i_sqrt_n, Cyc, CycError};
use std::collections::BTreeMap;
use std::fmt;

/// Integer weight `lambda = sum lambda_i eps_i` in the lattice X.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn eps(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1]) && *self.0.last().unwrap() >= 0
    }

    /// Z2-grading of the module labelled by this weight: (sum lambda_i) mod 2.
    pub fn grading(&self) -> u8 {
        (self.0.iter().sum::<i64>().rem_euclid(2)) as u8
    }

    /// Total width of the minimal cable realising this colour.
    pub fn width(&self) -> usize {
        self.0.iter().sum::<i64>() as usize
    }

    /// `2(lambda + rho)` as an integer vector (all entries odd).
    pub fn doubled_shifted(&self) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| 2 * self.0[i] + (2 * n as i64 - 2 * i as i64 - 1))
            .collect()
    }

    /// `(lambda, 2 rho)`.
    pub fn dot_two_rho(&self) -> i64 {
        let n = self.rank() as i64;
        self.0
            .iter()
            .enumerate()
            .map(|(i, &l)| l * (2 * n - 2 * i as i64 - 1))
            .sum()
    }

    /// `(lambda + 2rho, lambda)`, the exponent in the ribbon eigenvalue
    /// `chi_lambda(v) = q^{-(lambda + 2rho, lambda)}`.
    pub fn ribbon_exponent(&self) -> i64 {
        self.0.iter().map(|&l| l * l).sum::<i64>() + self.dot_two_rho()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&c| c == 0) {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            if c == 1 {
                write!(f, "e{}", i + 1)?;
            } else {
                write!(f, "{}e{}", c, i + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A positive root of osp(1|2n), stored as an integer vector in the eps basis.
pub type Root = Vec<i64>;

/// The root system data: positive roots partitioned per the superalgebra.
pub struct RootSystem {
    pub n: usize,
    /// `eps_i - eps_j` and `eps_i + eps_j` for i < j (the reduced even roots).
    pub pos_even_bar: Vec<Root>,
    /// `eps_k` (the odd roots).
    pub pos_odd: Vec<Root>,
    /// `2 eps_k` (the doubled roots completing Phi_0^+).
    pub pos_doubled: Vec<Root>,
    /// `2 rho` componentwise: (2n-1, 2n-3, ..., 1).
    pub two_rho: Vec<i64>,
}

impl RootSystem {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut pos_even_bar = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut a = vec![0i64; n];
                a[i] = 1;
                a[j] = -1;
                pos_even_bar.push(a.clone());
                a[j] = 1;
                pos_even_bar.push(a);
            }
        }
        let pos_odd = (0..n)
            .map(|k| {
                let mut a = vec![0i64; n];
                a[k] = 1;
                a
            })
            .collect();
        let pos_doubled = (0..n)
            .map(|k| {
                let mut a = vec![0i64; n];
                a[k] = 2;
                a
            })
            .collect();
        let two_rho = (0..n).map(|i| 2 * n as i64 - 2 * i as i64 - 1).collect();
        RootSystem {
            n,
            pos_even_bar,
            pos_odd,
            pos_doubled,
            two_rho,
        }
    }

    /// Simple root alpha_i (1-based: alpha_n = eps_n).
    pub fn simple_root(&self, i: usize) -> Root {
        let mut a = vec![0i64; self.n];
        if i < self.n {
            a[i - 1] = 1;
            a[i] = -1;
        } else {
            a[self.n - 1] = 1;
        }
        a
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// ---------------------------------------------------------------------------
// Weyl group
// ---------------------------------------------------------------------------

/// A signed permutation: `sigma(eps_j) = signs[j] * eps_{perm[j]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// Super-signature: the sign of the underlying permutation.
    pub fn eps_prime(&self) -> i64 {
        let mut seen = vec![false; self.perm.len()];
        let mut sign = 1i64;
        for start in 0..self.perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.perm[k];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; v.len()];
        for (j, &x) in v.iter().enumerate() {
            out[self.perm[j]] = self.signs[j] as i64 * x;
        }
        out
    }

    pub fn compose(&self, inner: &SignedPermutation) -> SignedPermutation {
        let n = self.perm.len();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for j in 0..n {
            perm[j] = self.perm[inner.perm[j]];
            signs[j] = inner.signs[j] * self.signs[inner.perm[j]];
        }
        SignedPermutation { perm, signs }
    }
}

/// All 2^n n! elements, enumerated explicitly.
pub fn weyl_group(n: usize) -> Vec<SignedPermutation> {
    let mut perms = Vec::new();
    permute(&mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
    let mut out = Vec::with_capacity(perms.len() << n);
    for p in &perms {
        for mask in 0..(1u32 << n) {
            let signs = (0..n)
                .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(SignedPermutation {
                perm: p.clone(),
                signs,
            });
        }
    }
    out
}

fn permute(arr: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == arr.len() {
        out.push(arr.clone());
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute(arr, k + 1, out);
        arr.swap(k, i);
    }
}

// ---------------------------------------------------------------------------
// Parameters at a root of unity
// ---------------------------------------------------------------------------

/// The working parameters: rank `n` and the order `N` of `q = exp(2 pi i/N)`,
/// with all scalars living in Q(zeta_{4N}).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub n: usize,
    pub big_n: u32,
}

impl Params {
    pub fn new(n: usize, big_n: u32) -> Self {
        assert!(n >= 1 && big_n >= 3);
        Params { n, big_n }
    }

    pub fn level(&self) -> u32 {
        4 * self.big_n
    }

    /// `N' = N` (odd) or `N/2` (even).
    pub fn n_prime(&self) -> i64 {
        if self.big_n % 2 == 1 {
            self.big_n as i64
        } else {
            self.big_n as i64 / 2
        }
    }

    /// `Nbar`: 2N (odd), N (0 mod 4), N/2 (2 mod 4).
    pub fn n_bar(&self) -> i64 {
        match self.big_n % 4 {
            1 | 3 => 2 * self.big_n as i64,
            0 => self.big_n as i64,
            _ => self.big_n as i64 / 2,
        }
    }

    pub fn zeta(&self, e: i64) -> Cyc {
        Cyc::root_of_unity(self.level(), e)
    }

    /// `q^e` with integer e.
    pub fn q_pow(&self, e: i64) -> Cyc {
        self.zeta(4 * e)
    }

    pub fn q(&self) -> Cyc {
        self.q_pow(1)
    }

    /// `q^{e/2}` (the fixed square root `q^{1/2} = zeta_{4N}^2`).
    pub fn q_half_pow(&self, e: i64) -> Cyc {
        self.zeta(2 * e)
    }

    /// `t = exp(pi i/2N) = zeta_{4N}`.
    pub fn t_pow(&self, e: i64) -> Cyc {
        self.zeta(e)
    }

    pub fn i_unit(&self) -> Cyc {
        imaginary_unit(self.level())
    }

    /// `chi_lambda(v) = q^{-(lambda + 2rho, lambda)}`.
    pub fn chi_v(&self, lambda: &Weight) -> Cyc {
        self.q_pow(-lambda.ribbon_exponent())
    }

    /// `chi_lambda(v^{-1}) = q^{(lambda + 2rho, lambda)}`.
    pub fn chi_v_inv(&self, lambda: &Weight) -> Cyc {
        self.q_pow(lambda.ribbon_exponent())
    }
}

// ---------------------------------------------------------------------------
// Alcoves
// ---------------------------------------------------------------------------

/// The truncated Weyl alcoves: `(Lambda_N^+, Pbar_N^+)` with strict and weak
/// inequalities respectively.
pub fn alcove(p: Params) -> (Vec<Weight>, Vec<Weight>) {
    let open = enumerate_alcove(p, true);
    let closed = enumerate_alcove(p, false);
    (open, closed)
}

fn enumerate_alcove(p: Params, strict: bool) -> Vec<Weight> {
    let n = p.n;
    let np = p.n_prime();
    // Scaled bound: lambda_1 (n = 1 or N = 2 mod 4) or lambda_1 + lambda_2,
    // compared against the case-specific right-hand side.
    let mut out = Vec::new();
    let lambda1_max = match p.big_n % 4 {
        2 => {
            // lambda_1 < N/4 - n + 1/2  <=>  4 lambda_1 < N - 4n + 2
            let rhs = p.big_n as i64 - 4 * n as i64 + 2;
            if strict {
                (rhs - 1).div_euclid(4)
            } else {
                rhs.div_euclid(4)
            }
        }
        _ => {
            if n == 1 {
                if strict {
                    np - 1
                } else {
                    np
                }
            } else {
                // enumerate below with the pair bound; lambda_1 alone bounded by it
                let rhs = np - 2 * n as i64 + 2;
                if strict {
                    rhs - 1
                } else {
                    rhs
                }
            }
        }
    };
    if lambda1_max < 0 {
        return out;
    }
    let mut cur = vec![0i64; n];
    enumerate_dominant(&mut cur, 0, lambda1_max, &mut |w| {
        let ok = match p.big_n % 4 {
            2 => true, // the lambda_1 bound is the whole condition
            _ => {
                if n == 1 {
                    true
                } else {
                    let pair = w[0] + w[1];
                    let rhs = np - 2 * n as i64 + 2;
                    if strict {
                        pair < rhs
                    } else {
                        pair <= rhs
                    }
                }
            }
        };
        if ok {
            out.push(Weight(w.to_vec()));
        }
    });
    out.sort();
    out
}

fn enumerate_dominant(cur: &mut Vec<i64>, idx: usize, max: i64, f: &mut impl FnMut(&[i64])) {
    if idx == cur.len() {
        f(cur);
        return;
    }
    for v in 0..=max {
        cur[idx] = v;
        enumerate_dominant(cur, idx + 1, v, f);
    }
    cur[idx] = 0;
}

/// Candidate branching set `P^0_mu = {mu} union {mu +- eps_i dominant}`.
pub fn neighbors(mu: &Weight) -> Vec<Weight> {
    let n = mu.rank();
    let mut out = vec![mu.clone()];
    for i in 0..n {
        for delta in [1i64, -1] {
            let mut v = mu.0.clone();
            v[i] += delta;
            let w = Weight(v);
            if w.is_dominant() && !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Quantum superdimension and supercharacter sums
// ---------------------------------------------------------------------------

/// Exact quantum superdimension of `V_lambda` per the product formula.
pub fn sdim(p: Params, lambda: &Weight) -> Result<Cyc, CycError> {
    let rs = RootSystem::new(p.n);
    let d_lam = lambda.doubled_shifted();
    let d_rho = rs.two_rho.clone();
    let mut acc = if lambda.grading() == 1 {
        -Cyc::one()
    } else {
        Cyc::one()
    };
    acc = acc * p.q_pow(-lambda.dot_two_rho());
    for a in &rs.pos_even_bar {
        // 2(lambda + rho, alpha) and 2(rho, alpha) are integers.
        let num = p.q_pow(dot(&d_lam, a)) - Cyc::one();
        let den = p.q_pow(dot(&d_rho, a)) - Cyc::one();
        if den.is_zero() {
            return Err(CycError::VanishingDenominator {
                what: format!("q^(2(rho,{:?})) - 1", a),
            });
        }
        acc = acc * num / den;
    }
    for b in &rs.pos_odd {
        let num = p.q_pow(dot(&d_lam, b)) + Cyc::one();
        let den = p.q_pow(dot(&d_rho, b)) + Cyc::one();
        if den.is_zero() {
            return Err(CycError::VanishingDenominator {
                what: format!("q^(2(rho,{:?})) + 1", b),
            });
        }
        acc = acc * num / den;
    }
    Ok(acc)
}

/// `S_{lambda,mu} = (-1)^{[lambda]} sum_sigma eps'(sigma) q^{2(lambda+rho, sigma(mu+rho))}`.
pub fn weyl_sum_s(p: Params, lambda: &Weight, mu: &Weight) -> Cyc {
    let sign = if lambda.grading() == 1 { -1 } else { 1 };
    weyl_sum_s_prime(p, lambda, mu) * Cyc::from_int(sign)
}

/// `S'_{lambda,mu} = (-1)^{[lambda]} S_{lambda,mu}` (the sign-free sum).
pub fn weyl_sum_s_prime(p: Params, lambda: &Weight, mu: &Weight) -> Cyc {
    let d_lam = lambda.doubled_shifted();
    let d_mu = mu.doubled_shifted();
    let mut acc = Cyc::zero();
    for sigma in weyl_group(p.n) {
        let term = p.zeta(2 * dot(&d_lam, &sigma.apply(&d_mu)));
        acc = acc + Cyc::from_int(sigma.eps_prime()) * term;
    }
    acc
}

/// `Q(mu) = sum_sigma eps'(sigma) q^{2(mu+rho, sigma(rho))}`.
pub fn weyl_sum_q(p: Params, mu: &Weight) -> Cyc {
    let rs = RootSystem::new(p.n);
    let d_mu = mu.doubled_shifted();
    let mut acc = Cyc::zero();
    for sigma in weyl_group(p.n) {
        let term = p.zeta(2 * dot(&d_mu, &sigma.apply(&rs.two_rho)));
        acc = acc + Cyc::from_int(sigma.eps_prime()) * term;
    }
    acc
}

/// `chi_mu(C_lambda)`: the scalar action of the encircling central element.
pub fn chi_c(p: Params, mu: &Weight, lambda: &Weight) -> Result<Cyc, CycError> {
    let den = weyl_sum_q(p, mu);
    if den.is_zero() {
        return Err(CycError::VanishingDenominator {
            what: format!("Q({})", mu),
        });
    }
    let sign = if lambda.grading() == 1 {
        -Cyc::one()
    } else {
        Cyc::one()
    };
    Ok(sign * weyl_sum_s_prime(p, mu, lambda) / den)
}

/// `f_{mu lambda} = sdim(mu) chi_mu(C_lambda)`.
pub fn f_entry(p: Params, mu: &Weight, lambda: &Weight) -> Result<Cyc, CycError> {
    Ok(sdim(p, mu)? * chi_c(p, mu, lambda)?)
}

// ---------------------------------------------------------------------------
// Pseudo-modular constants
// ---------------------------------------------------------------------------

pub struct Constants {
    pub d: BTreeMap<Weight, Cyc>,
    pub omega: Cyc,
    pub q0: Cyc,
    pub z: Cyc,
}

#[derive(Debug, thiserror::Error)]
pub enum ConstantsError {
    #[error(
        "N = {0} = 0 (mod 4): U_q^(N)(osp(1|2n)) is not a pseudo-modular Hopf algebra \
         (the involution mu -> sigma_(eps1,N')(mu) pairs the alcove with sign-flipped \
         ribbon eigenvalues, making the d_lambda equations inconsistent)"
    )]
    ObstructedRegime(u32),
    #[error("need N = 2 (mod 4) and N >= 4n+2, got n = {n}, N = {big_n}")]
    UnsupportedRegime { n: usize, big_n: u32 },
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// `Q(0)` as the explicit product over positive roots.  `(alpha, rho)` is
/// half of `(alpha, 2rho)`, so the factors are powers of `q^{1/2}`.
pub fn q0_product(p: Params) -> Cyc {
    let rs = RootSystem::new(p.n);
    let mut acc = Cyc::one();
    for a in &rs.pos_even_bar {
        let e = dot(&rs.two_rho, a);
        acc = acc * (p.q_half_pow(e) - p.q_half_pow(-e));
    }
    for b in &rs.pos_odd {
        let e = dot(&rs.two_rho, b);
        acc = acc * (p.q_half_pow(e) + p.q_half_pow(-e));
    }
    acc
}

/// The constants of the invariant: `d_lambda = Omega Q(0) sdim(lambda)`,
/// `Omega = 2^n t^n q^(n^3 - n/2) / ((1+i) sqrt(N))^n`, and
/// `z = (-i)^n q^(2n^3 - n) t^(2n)`.
pub fn constants(p: Params) -> Result<Constants, ConstantsError> {
    if p.big_n % 4 == 0 {
        return Err(ConstantsError::ObstructedRegime(p.big_n));
    }
    if p.big_n % 4 != 2 || (p.big_n as i64) < 4 * p.n as i64 + 2 {
        return Err(ConstantsError::UnsupportedRegime {
            n: p.n,
            big_n: p.big_n,
        });
    }
    let n = p.n as i64;
    let root = one_plus_i_sqrt_n(p.big_n);
    let omega = Cyc::from_int(2).pow(n) * p.t_pow(n) * p.zeta(4 * n * n * n - 2 * n) / root.pow(n);
    let q0 = q0_product(p);
    let z = (-p.i_unit()).pow(n) * p.q_pow(2 * n * n * n - n) * p.t_pow(2 * n);
    let d0 = omega.clone() * q0.clone();
    let (open, _) = alcove(p);
    let mut d = BTreeMap::new();
    for lam in &open {
        d.insert(lam.clone(), d0.clone() * sdim(p, lam)?);
    }
    Ok(Constants { d, omega, q0, z })
}

/// The involution `sigma_(eps1,N')` behind the N = 0 (mod 4) obstruction.
pub fn sigma_eps1(p: Params, mu: &Weight) -> Weight {
    let mut v = mu.0.clone();
    v[0] = p.n_prime() - mu.0[0] - 2 * p.n as i64 + 1;
    Weight(v)
}

// ---------------------------------------------------------------------------
// BWM Q-polynomial
// ---------------------------------------------------------------------------

/// A Young diagram as a weakly decreasing list of row lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct YoungDiagram(pub Vec<usize>);

impl YoungDiagram {
    pub fn column_lengths(&self) -> Vec<usize> {
        if self.0.is_empty() {
            return Vec::new();
        }
        let width = self.0[0];
        (0..width)
            .map(|j| self.0.iter().filter(|&&r| r > j).count())
            .collect()
    }

    pub fn boxes(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_allowable(&self, n: usize) -> bool {
        let cols = self.column_lengths();
        let c1 = cols.first().copied().unwrap_or(0);
        let c2 = cols.get(1).copied().unwrap_or(0);
        c1 + c2 <= 2 * n + 1
    }
}

/// `Q_lambda(-q^{2n}, q)` via the hooklength / axial-distance product.
pub fn bwm_q(p: Params, lambda: &YoungDiagram) -> Result<Cyc, CycError> {
    if !lambda.is_allowable(p.n) {
        return Err(CycError::Domain(format!(
            "Young diagram {:?} is not allowable for n = {} (col1 + col2 > 2n+1)",
            lambda.0, p.n
        )));
    }
    let rows = &lambda.0;
    let cols = lambda.column_lengths();
    let two_n = 2 * p.n as i64;
    let mut acc = Cyc::one();
    for (i0, &len) in rows.iter().enumerate() {
        let i = (i0 + 1) as i64;
        for j0 in 0..len {
            let j = (j0 + 1) as i64;
            let row_i = rows[i0] as i64;
            let col_j = cols[j0] as i64;
            let h = row_i - i + col_j - j + 1;
            let den = p.q_pow(h) - p.q_pow(-h);
            if den.is_zero() {
                return Err(CycError::VanishingDenominator {
                    what: format!("q^{h} - q^-{h} at box ({i},{j})"),
                });
            }
            let num = if i == j {
                // r q^(lam_j - lam'_j) - r^-1 q^-(lam_j - lam'_j)
                //   + q^(lam_j + lam'_j - 2j + 1) - q^-(lam_j + lam'_j - 2j + 1)
                let row_j = rows[j0] as i64;
                let a = row_j - col_j;
                let b = row_j + col_j - 2 * j + 1;
                -p.q_pow(two_n + a) + p.q_pow(-two_n - a) + p.q_pow(b) - p.q_pow(-b)
            } else {
                let d = if i < j {
                    let row_j = if (j0 as usize) < rows.len() {
                        rows[j as usize - 1] as i64
                    } else {
                        0
                    };
                    row_i + row_j - i - j + 1
                } else {
                    let col_i = if (i as usize - 1) < cols.len() {
                        cols[i as usize - 1] as i64
                    } else {
                        0
                    };
                    -col_i - col_j + i + j - 1
                };
                -p.q_pow(two_n + d) + p.q_pow(-two_n - d)
            };
            acc = acc * num / den;
        }
    }
    Ok(acc)
}

/// Verify the Gaussian-sum product identity used in building Omega:
/// `prod_k G_+(N, 2k+1) = ((1+i) sqrt N)^n / t^n * prod_k q^{-k(k+1)}`.
pub fn gauss_product_identity(p: Params) -> bool {
    let n = p.n as i64;
    let mut lhs = Cyc::one();
    for k in 0..n {
        lhs = lhs * gauss_sum(p.big_n, 2 * k + 1, true);
    }
    let mut rhs = one_plus_i_sqrt_n(p.big_n).pow(n) * p.t_pow(-n);
    for k in 0..n {
        rhs = rhs * p.q_pow(-k * (k + 1));
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_system_invariants() {
        for n in 1..=4usize {
            let rs = RootSystem::new(n);
            assert_eq!(rs.pos_odd.len(), n);
            assert_eq!(rs.pos_even_bar.len(), n * (n - 1));
            // (2rho, alpha_i) = (alpha_i, alpha_i)
            for i in 1..=n {
                let a = rs.simple_root(i);
                assert_eq!(dot(&rs.two_rho, &a), dot(&a, &a));
            }
            // (2rho, 2rho) = (4n^3 - n)/3
            let nn = n as i64;
            assert_eq!(dot(&rs.two_rho, &rs.two_rho), (4 * nn * nn * nn - nn) / 3);
        }
    }

    #[test]
    fn eps_prime_is_homomorphism() {
        for n in 1..=3usize {
            let w = weyl_group(n);
            assert_eq!(w.len(), (1 << n) * (1..=n).product::<usize>());
            for a in w.iter().step_by(3) {
                for b in w.iter().step_by(5) {
                    let c = a.compose(b);
                    assert_eq!(c.eps_prime(), a.eps_prime() * b.eps_prime());
                }
            }
        }
    }

    #[test]
    fn eps_prime_on_generators() {
        // s_{eps_i - eps_j} and s_{eps_i + eps_j} carry eps' = -1,
        // sign flips s_{eps_i} carry eps' = +1.
        let swap = SignedPermutation {
            perm: vec![1, 0],
            signs: vec![1, 1],
        };
        assert_eq!(swap.eps_prime(), -1);
        let swap_neg = SignedPermutation {
            perm: vec![1, 0],
            signs: vec![-1, -1],
        };
        assert_eq!(swap_neg.eps_prime(), -1);
        let flip = SignedPermutation {
            perm: vec![0, 1],
            signs: vec![-1, 1],
        };
        assert_eq!(flip.eps_prime(), 1);
    }

    #[test]
    fn alcove_examples() {
        let (open, _) = alcove(Params::new(1, 10));
        assert_eq!(open, vec![Weight(vec![0]), Weight(vec![1])]);
        let (open, _) = alcove(Params::new(2, 14));
        assert_eq!(
            open,
            vec![Weight(vec![0, 0]), Weight(vec![1, 0]), Weight(vec![1, 1])]
        );
        let (open, _) = alcove(Params::new(1, 6));
        assert_eq!(open, vec![Weight(vec![0])]);
        // closed alcove at (1,10) adds the boundary weight 2 eps1
        let (_, closed) = alcove(Params::new(1, 10));
        assert_eq!(
            closed,
            vec![Weight(vec![0]), Weight(vec![1]), Weight(vec![2])]
        );
    }

    #[test]
    fn neighbors_examples() {
        let got = neighbors(&Weight(vec![0]));
        assert_eq!(got, vec![Weight(vec![0]), Weight(vec![1])]);
        let got = neighbors(&Weight(vec![1, 0]));
        assert_eq!(
            got,
            vec![
                Weight(vec![1, 0]),
                Weight(vec![2, 0]),
                Weight(vec![0, 0]),
                Weight(vec![1, 1])
            ]
        );
        let got = neighbors(&Weight(vec![1]));
        assert_eq!(got, vec![Weight(vec![1]), Weight(vec![2]), Weight(vec![0])]);
    }

    #[test]
    fn sdim_basics() {
        let p = Params::new(1, 10);
        assert_eq!(sdim(p, &Weight(vec![0])).unwrap(), Cyc::one());
        // sdim(V) = 1 - (q^2 - q^-2)/(q - q^-1) = 1 - (q + q^-1)
        let expect = Cyc::one() - p.q_pow(1) - p.q_pow(-1);
        assert_eq!(sdim(p, &Weight(vec![1])).unwrap(), expect);
        let (re, im) = sdim(p, &Weight(vec![1])).unwrap().embed();
        assert!((re - (1.0 - 2.0 * (2.0 * std::f64::consts::PI / 10.0).cos())).abs() < 1e-12);
        assert!(im.abs() < 1e-12);
        // boundary weight has sdim 0
        assert!(sdim(p, &Weight(vec![2])).unwrap().is_zero());
        let p2 = Params::new(2, 14);
        assert!(sdim(p2, &Weight(vec![2, 0])).unwrap().is_zero());
    }

    #[test]
    fn weyl_sum_properties() {
        for p in [Params::new(1, 10), Params::new(2, 14)] {
            let (open, closed) = alcove(p);
            // S_{mu,lambda} = (-1)^{[lambda]+[mu]} S_{lambda,mu}
            for a in &closed {
                for b in &closed {
                    let lhs = weyl_sum_s(p, b, a);
                    let sign = if (a.grading() + b.grading()) % 2 == 1 {
                        -1
                    } else {
                        1
                    };
                    assert_eq!(lhs, Cyc::from_int(sign) * weyl_sum_s(p, a, b));
                }
            }
            // Kac supercharacter at 2rho: sdim = S_{lambda,0} / Q(0), with the
            // (-1)^{[lambda]} sign carried by S.  Checked on the closed alcove.
            let zero = Weight::zero(p.n);
            let q0 = weyl_sum_q(p, &zero);
            for lam in &closed {
                let ratio = weyl_sum_s(p, lam, &zero) / q0.clone();
                assert_eq!(ratio, sdim(p, lam).unwrap());
            }
            // Weyl antisymmetry: S'_{lambda, w(mu+rho)-rho} = eps'(w) S'_{lambda, mu}
            for w in weyl_group(p.n).iter().step_by(3) {
                for lam in open.iter().take(2) {
                    for mu in &open {
                        let d_mu = mu.doubled_shifted();
                        let moved = w.apply(&d_mu);
                        // w(mu + rho) - rho back in integer coordinates
                        let rho2: Vec<i64> = Weight::zero(p.n).doubled_shifted();
                        let target =
                            Weight(moved.iter().zip(&rho2).map(|(m, r)| (m - r) / 2).collect());
                        let lhs = weyl_sum_s_prime(p, lam, &target);
                        let rhs = Cyc::from_int(w.eps_prime()) * weyl_sum_s_prime(p, lam, mu);
                        assert_eq!(lhs, rhs, "antisymmetry fails");
                    }
                }
            }
            // boundary: S'_{lambda, mu} = 0 when either index is on the boundary
            for lam in &closed {
                if open.contains(lam) {
                    continue;
                }
                for mu in &closed {
                    assert!(weyl_sum_s_prime(p, lam, mu).is_zero());
                }
            }
        }
    }

    #[test]
    fn q0_product_matches_weyl_denominator() {
        for p in [Params::new(1, 10), Params::new(2, 14), Params::new(3, 18)] {
            assert_eq!(q0_product(p), weyl_sum_q(p, &Weight::zero(p.n)));
        }
    }

    #[test]
    fn chi_c_examples() {
        let p = Params::new(1, 10);
        let (open, closed) = alcove(p);
        // the denominator Q(mu) vanishes exactly on the boundary, and the
        // zero is signalled rather than divided through
        for mu in &closed {
            if !open.contains(mu) {
                assert!(chi_c(p, mu, &Weight(vec![1])).is_err());
            }
        }
        for lam in &open {
            // chi_0(C_lambda) = sdim(lambda)
            assert_eq!(
                chi_c(p, &Weight::zero(1), lam).unwrap(),
                sdim(p, lam).unwrap()
            );
            // chi_mu(C_0) = 1
            assert_eq!(chi_c(p, lam, &Weight::zero(1)).unwrap(), Cyc::one());
        }
    }

    #[test]
    fn axiom_v_and_z() {
        for p in [Params::new(1, 10), Params::new(2, 14)] {
            let c = constants(p).unwrap();
            let (open, _) = alcove(p);
            // Axiom (V): chi_mu(v) sdim(mu) = sum_lambda d_lambda chi_lambda(v^-1) f_{mu lambda}
            for mu in &open {
                let lhs = p.chi_v(mu) * sdim(p, mu).unwrap();
                let mut rhs = Cyc::zero();
                for lam in &open {
                    rhs = rhs + c.d[lam].clone() * p.chi_v_inv(lam) * f_entry(p, mu, lam).unwrap();
                }
                assert_eq!(lhs, rhs, "axiom V fails at mu = {} for {:?}", mu, p);
            }
            // Sigma(O_{+1}) = sum d_lambda chi_lambda(v^-1) sdim(lambda) = 1
            let mut s = Cyc::zero();
            for lam in &open {
                s = s + c.d[lam].clone() * p.chi_v_inv(lam) * sdim(p, lam).unwrap();
            }
            assert_eq!(s, Cyc::one());
            // z = sum d_lambda chi_lambda(v) sdim(lambda), exactly the closed form
            let mut z = Cyc::zero();
            for lam in &open {
                z = z + c.d[lam].clone() * p.chi_v(lam) * sdim(p, lam).unwrap();
            }
            assert_eq!(z, c.z);
            let (re, im) = c.z.embed();
            assert!(
                (re * re + im * im - 1.0).abs() < 1e-9,
                "|z| = 1 at display precision"
            );
        }
    }

    #[test]
    fn q_squared_sum_identity() {
        // sum over X_N of Q(lambda)^2 = (2N)^n n!
        let p = Params::new(1, 10);
        let mut acc = Cyc::zero();
        for l in 0..p.big_n as i64 {
            let q = weyl_sum_q(p, &Weight(vec![l]));
            acc = acc + q.clone() * q;
        }
        assert_eq!(acc, Cyc::from_int(20));
    }

    #[test]
    fn obstruction_involution_at_n0mod4() {
        let p = Params::new(1, 8);
        let (open, _) = alcove(p);
        assert_eq!(open.len() % 2, 0);
        for mu in &open {
            let mu2 = sigma_eps1(p, mu);
            assert!(open.contains(&mu2));
            assert_ne!(&mu2, mu);
            assert_eq!(sigma_eps1(p, &mu2), *mu);
            // sign-flipped ribbon eigenvalues
            assert_eq!(p.chi_v(&mu2), -p.chi_v(mu));
        }
        assert!(constants(p).is_err());
    }

    #[test]
    fn bwm_q_against_sdim() {
        let p = Params::new(1, 10);
        assert_eq!(bwm_q(p, &YoungDiagram(vec![])).unwrap(), Cyc::one());
        assert_eq!(
            bwm_q(p, &YoungDiagram(vec![1])).unwrap(),
            sdim(p, &Weight(vec![1])).unwrap()
        );
        let p2 = Params::new(2, 14);
        assert_eq!(
            bwm_q(p2, &YoungDiagram(vec![2])).unwrap(),
            sdim(p2, &Weight(vec![2, 0])).unwrap()
        );
        assert_eq!(
            bwm_q(p2, &YoungDiagram(vec![1, 1])).unwrap(),
            sdim(p2, &Weight(vec![1, 1])).unwrap()
        );
        // a shape with boxes on both sides of the diagonal
        let p18 = Params::new(2, 18);
        assert_eq!(
            bwm_q(p18, &YoungDiagram(vec![2, 1])).unwrap(),
            sdim(p18, &Weight(vec![2, 1])).unwrap()
        );
        // non-allowable diagram rejected: col1 + col2 = 4 > 3 for n = 1
        assert!(bwm_q(p, &YoungDiagram(vec![2, 2])).is_err());
    }

    #[test]
    fn gauss_product_for_small_ranks() {
        for n in 1..=3usize {
            assert!(gauss_product_identity(Params::new(n, 10)));
            assert!(gauss_product_identity(Params::new(n, 14)));
        }
    }
}
