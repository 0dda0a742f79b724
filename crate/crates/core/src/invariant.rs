//! Framed-link bookkeeping (linking matrix, exact signature count), the
//! coloured state sum Sigma(L), and the 3-manifold invariant
//! F(M_L) = z^(-sigma(A_L)) Sigma(L).

use crate::cyclo::Cyc;
use crate::field::Field;
use crate::linalg::{charpoly_int, Matrix};
use crate::poly::positive_roots_with_multiplicity;
use crate::rootdata::{alcove, constants, Constants, ConstantsError, Params, Weight};
use crate::tangles::{braid_closure_value, braid_components, braid_crossing_data, TangleError};
use crate::towers::Tower;
use num_rational::BigRational;

/// A framed link presented as a braid closure: a word in the generators
/// `s_1..s_(m-1)` (letter `+-i`), plus one framing integer per component of
/// the closure.
#[derive(Clone, Debug, PartialEq)]
pub struct FramedLink {
    pub strands: usize,
    pub braid: Vec<i32>,
    pub framings: Vec<i64>,
}

#[derive(Debug, thiserror::Error)]
pub enum LinkError {
    #[error("braid generator index {0} out of range for {1} strands")]
    BadGenerator(i32, usize),
    #[error("framing count {got} != component count {want}")]
    FramingCount { got: usize, want: usize },
    #[error(transparent)]
    Constants(#[from] ConstantsError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

impl FramedLink {
    pub fn validate(&self) -> Result<(), LinkError> {
        for &letter in &self.braid {
            let i = letter.unsigned_abs() as usize;
            if letter == 0 || i + 1 > self.strands {
                return Err(LinkError::BadGenerator(letter, self.strands));
            }
        }
        let (_, ncomp) = braid_components(self.strands, &self.braid);
        if self.framings.len() != ncomp {
            return Err(LinkError::FramingCount {
                got: self.framings.len(),
                want: ncomp,
            });
        }
        Ok(())
    }

    pub fn components(&self) -> (Vec<usize>, usize) {
        braid_components(self.strands, &self.braid)
    }

    /// Disjoint union with a split unknot of the given framing (one extra
    /// strand on the right, unlinked).
    pub fn disjoint_unknot(&self, framing: i64) -> FramedLink {
        let mut framings = self.framings.clone();
        framings.push(framing);
        FramedLink {
            strands: self.strands + 1,
            braid: self.braid.clone(),
            framings,
        }
    }
}

/// The linking matrix of a framed link: framing numbers on the diagonal
/// (the self-linking of the framed components) and linking numbers off it.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkingMatrix(pub Vec<Vec<i64>>);

pub fn linking_matrix(link: &FramedLink) -> LinkingMatrix {
    let (comp, ncomp) = link.components();
    let (_, lk) = braid_crossing_data(link.strands, &link.braid, &comp, ncomp);
    let mut m = lk;
    for c in 0..ncomp {
        m[c][c] = link.framings[c];
    }
    LinkingMatrix(m)
}

/// Exact count of non-positive eigenvalues (zeros included) of a symmetric
/// integer matrix: size minus the Sturm-counted positive roots of the
/// characteristic polynomial, multiplicities included.
pub fn sigma_count(a: &LinkingMatrix) -> usize {
    let n = a.0.len();
    if n == 0 {
        return 0;
    }
    let mut m: Matrix<BigRational> = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            *m.at_mut(i, j) = <BigRational as Field>::from_i64(a.0[i][j]);
        }
    }
    let charpoly = charpoly_int(&m);
    n - positive_roots_with_multiplicity(&charpoly)
}

/// The alcove colouring set `C(L, Lambda_N^+)` for an m-component link.
pub fn colorings(p: Params, ncomp: usize) -> Vec<Vec<Weight>> {
    let (open, _) = alcove(p);
    let mut out = vec![Vec::new()];
    for _ in 0..ncomp {
        let mut next = Vec::with_capacity(out.len() * open.len());
        for partial in &out {
            for w in &open {
                let mut ext = partial.clone();
                ext.push(w.clone());
                next.push(ext);
            }
        }
        out = next;
    }
    out
}

/// One term of the state sum: `prod_i d_(lambda_i) F(Gamma(L, lambda))`.
pub fn colored_term(
    tower: &Tower,
    consts: &Constants,
    link: &FramedLink,
    coloring: &[Weight],
) -> Result<Cyc, LinkError> {
    let mut d_prod = Cyc::one();
    for w in coloring {
        d_prod = d_prod * consts.d[w].clone();
    }
    let f = braid_closure_value(tower, link.strands, &link.braid, &link.framings, coloring)?;
    Ok(d_prod * f)
}

/// `Sigma(L) = sum over colourings of prod d_(lambda_i) F(Gamma(L, lambda))`.
pub fn sum_l(tower: &Tower, consts: &Constants, link: &FramedLink) -> Result<Cyc, LinkError> {
    link.validate()?;
    let (_, ncomp) = link.components();
    let mut acc = Cyc::zero();
    for coloring in colorings(tower.rep.p, ncomp) {
        acc = acc + colored_term(tower, consts, link, &coloring)?;
    }
    Ok(acc)
}

/// The full invariant record.
pub struct RtValue {
    pub value: Cyc,
    pub sigma: usize,
    pub components: usize,
    /// display embedding (re, im); never used in logic
    pub approx: (f64, f64),
}

/// `F(M_L) = z^(-sigma(A_L)) Sigma(L)`; requires N = 2 (mod 4) with a
/// populated alcove, and rejects N = 0 (mod 4) citing the obstruction.
pub fn rt_invariant(tower: &Tower, link: &FramedLink) -> Result<RtValue, LinkError> {
    link.validate()?;
    let p = tower.rep.p;
    let consts = constants(p)?;
    let (_, ncomp) = link.components();
    let sigma = sigma_count(&linking_matrix(link));
    let sum = sum_l(tower, &consts, link)?;
    let value = consts.z.inverse().expect("z is nonzero").pow(sigma as i64) * sum;
    let approx = value.embed();
    Ok(RtValue {
        value,
        sigma,
        components: ncomp,
        approx,
    })
}
