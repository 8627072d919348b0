//! Exact coefficient ring for all Green-function values: rational
//! polynomials in q, extended by involutive sign indeterminates and by
//! case-splits on the residue of q modulo 4.
//!
//! All values are immutable and every operation is pure; nothing here uses
//! floating point.

pub mod checks;
pub mod display;
pub mod json;
pub mod poly;
pub mod ratfunc;
pub mod sign;
pub mod sym;

pub use checks::{check_integral, check_integral_branch, check_nonneg, check_nonneg_branch};
pub use display::{cyclotomic, cyclotomic_display, parse_cell};
pub use poly::RationalPoly;
pub use ratfunc::{RatFunc, RfMatrix};
pub use sign::{Residue, SignAssignment, SignExpr, SignIndet, SignMonomial};
pub use sym::SymExpr;

#[cfg(test)]
mod prop_tests {
    use super::poly::{int, rat};
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = RationalPoly> {
        proptest::collection::vec((0u32..6, -6i64..7, 1i64..5), 0..5).prop_map(|terms| {
            RationalPoly::from_terms(terms.into_iter().map(|(d, n, den)| (d, rat(n, den))))
        })
    }

    fn arb_sym() -> impl Strategy<Value = SymExpr> {
        proptest::collection::vec((0u8..4, arb_poly()), 0..3).prop_map(|terms| {
            let mut s = SignExpr::zero();
            for (mask, p) in terms {
                s.add_term(SignMonomial(mask & 0b111), &p);
            }
            SymExpr::from_sign(s)
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_sym(), b in arb_sym(), c in arb_sym()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn substitution_is_a_ring_homomorphism(a in arb_sym(), b in arb_sym(), s1 in any::<bool>(), s2 in any::<bool>(), s3 in any::<bool>()) {
            let mut asn = SignAssignment::new();
            asn.set_global(SignIndet(0), if s1 {1} else {-1});
            asn.set_global(SignIndet(1), if s2 {1} else {-1});
            asn.set_global(SignIndet(2), if s3 {1} else {-1});
            let lhs = a.mul(&b).substitute(&asn).unwrap();
            let rhs = a.substitute(&asn).unwrap().mul(&b.substitute(&asn).unwrap());
            prop_assert_eq!(lhs, rhs);
            let lhs = a.add(&b).substitute(&asn).unwrap();
            let rhs = a.substitute(&asn).unwrap().add(&b.substitute(&asn).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eval_commutes_with_arithmetic(a in arb_poly(), b in arb_poly(), q0 in 1i64..30) {
            let sa = SymExpr::from_poly(a.clone());
            let sb = SymExpr::from_poly(b.clone());
            let sum = sa.add(&sb).eval_at(q0).unwrap();
            prop_assert_eq!(sum, a.eval_int(q0) + b.eval_int(q0));
            let prod = sa.mul(&sb).eval_at(q0).unwrap();
            prop_assert_eq!(prod, a.eval_int(q0) * b.eval_int(q0));
        }

        #[test]
        fn display_roundtrips(a in arb_sym()) {
            let shown = cyclotomic_display(&a);
            let back = parse_cell(&shown).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn involution_on_indeterminates(a in arb_sym(), idx in 0u8..3) {
            let i = SignIndet(idx);
            let ai = SymExpr::indet(i);
            let twice = a.mul(&ai).mul(&ai);
            prop_assert_eq!(twice, a);
        }
    }

    #[test]
    fn scalar_div_by_zero_errors() {
        let x = SymExpr::one();
        assert!(x.scalar_div(&int(0)).is_err());
    }
}
