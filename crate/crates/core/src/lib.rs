//! Exact-arithmetic engine for the quantum superalgebra U_q^(N)(osp(1|2n))
//! at roots of unity, the Reshetikhin-Turaev evaluation of coloured directed
//! ribbon tangles over its representations, and the resulting topological
//! invariant of closed, connected, orientable 3-manifolds presented by
//! framed links.
//!
//! All core logic is exact: scalars live in the cyclotomic field
//! Q(zeta_{4N}), linear algebra is over exact fields, and every identity
//! claimed by the theory is checked by exact equality.  Floating point
//! appears only in display embeddings.

pub mod cyclo;
pub mod field;
pub mod fundrep;
pub mod invariant;
pub mod linalg;
pub mod poly;
pub mod rootdata;
pub mod tangles;
pub mod towers;
pub mod verify;

/// The exact scalar type of this crate: an element of Q(zeta_{4N}).
pub type Scalar = cyclo::Cyc;

/// Rational numbers, used for characteristic polynomials and serialization.
pub type Rat = num_rational::BigRational;

/// Dense matrix over the cyclotomic scalars.
pub type Mat = linalg::Matrix<Scalar>;

/// Sparse operator over the cyclotomic scalars.
pub type Op = linalg::SpMat<Scalar>;

/// Dense matrix over the rationals.
pub type RatMat = linalg::Matrix<Rat>;
