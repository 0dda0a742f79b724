//! Property tests: exact field axioms on random cyclotomic scalars, graded
//! flip involutivity, and supertrace cyclicity.

use ospq_core::cyclo::Cyc;
use ospq_core::fundrep::{build_fundamental, graded_flip};
use ospq_core::linalg::SpMat;
use ospq_core::rootdata::Params;
use ospq_core::towers::Tower;
use proptest::prelude::*;

const LEVEL: u32 = 40;

fn arb_scalar() -> impl Strategy<Value = Cyc> {
    // sparse random elements of Q(zeta_40): a few monomial terms with small
    // rational coefficients, plus the occasional plain rational
    let term = (0i64..40, -6i64..7, 1i64..5)
        .prop_map(|(e, num, den)| Cyc::from_ratio(num, den) * Cyc::root_of_unity(LEVEL, e));
    prop::collection::vec(term, 0..4)
        .prop_map(|ts| ts.into_iter().fold(Cyc::zero(), |acc, t| acc + t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        // associativity and commutativity
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        // distributivity
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        // units
        prop_assert_eq!(a.clone() + Cyc::zero(), a.clone());
        prop_assert_eq!(a.clone() * Cyc::one(), a.clone());
        // multiplicative inverse for nonzero elements
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inverse().unwrap(), Cyc::one());
        }
        // conjugation is a ring homomorphism
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
    }

    #[test]
    fn embedding_is_multiplicative(a in arb_scalar(), b in arb_scalar()) {
        let (ar, ai) = a.embed();
        let (br, bi) = b.embed();
        let (pr, pi) = (a * b).embed();
        let scale = 1.0 + ar.abs() + ai.abs() + br.abs() + bi.abs();
        prop_assert!(((ar * br - ai * bi) - pr).abs() < 1e-9 * scale * scale);
        prop_assert!(((ar * bi + ai * br) - pi).abs() < 1e-9 * scale * scale);
    }
}

#[test]
fn graded_flip_squares_to_identity() {
    let rep = build_fundamental(Params::new(2, 14));
    let p = graded_flip(&rep);
    assert_eq!(p.mul(&p), SpMat::identity(25));
}

#[test]
fn supertrace_is_cyclic() {
    let tw = Tower::new(build_fundamental(Params::new(1, 10))).unwrap();
    let a = tw.rhat_local(2, 1, 1);
    let b = tw
        .rhat_local(2, 1, -1)
        .add(&SpMat::identity(9).scale(&tw.rep.p.q_pow(3)));
    assert_eq!(tw.str_q(&a.mul(&b), 2), tw.str_q(&b.mul(&a), 2));
}
