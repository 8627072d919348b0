//! 2-parameter Green functions: invert the Levi's table through the
//! orthogonality relations, identify induced Green functions across the
//! Levi embedding, solve the character-formula system, and resolve the
//! sign indeterminates from positivity and integrality.

pub mod identify;
pub mod resolve;
pub mod solve;

pub use identify::{identify, InducedIdentification};
pub use resolve::{resolve_signs, ResolveOutcome};
pub use solve::{invert, self_induction_check, solve, InvertedTable, TwoParamTable};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greenfn::{green_table, transfer_via_covering};
    use crate::groupdata::{
        levi124_context, levi124_covering, sl2_context, spin8_context, DataSource, Twist,
    };
    use crate::symring::cyclotomic_display;

    fn spin8_and_levi(
        twist: Twist,
    ) -> (crate::greenfn::GreenTable, crate::greenfn::GreenTable, TwoParamTable) {
        let src = DataSource::embedded();
        let spin8 = spin8_context(&src).unwrap();
        let g = green_table(&spin8).unwrap();
        let levi = levi124_context(&src, spin8.weyl.clone(), twist).unwrap();
        let sl2 = green_table(&sl2_context(&src).unwrap()).unwrap();
        let m = transfer_via_covering(&levi, &sl2, &levi124_covering(), twist).unwrap();
        let ident = identify(&spin8, &levi, twist).unwrap();
        let t = solve(&g, &m, &ident).unwrap();
        (g, m, t)
    }

    #[test]
    fn split_corner_value_is_the_index_polynomial() {
        let (_, _, t) = spin8_and_levi(Twist::Split);
        let r = t.row_index("11.11.11,1").unwrap();
        let c = t.col_index("11111111,1").unwrap();
        assert_eq!(cyclotomic_display(&t.values[r][c]), "P2P3P4^2P6");
    }

    #[test]
    fn self_induction_identity() {
        let src = DataSource::embedded();
        let spin8 = spin8_context(&src).unwrap();
        let g = green_table(&spin8).unwrap();
        assert!(self_induction_check(&g).unwrap());
        let sl2 = green_table(&sl2_context(&src).unwrap()).unwrap();
        assert!(self_induction_check(&sl2).unwrap());
        let levi = levi124_context(&src, spin8.weyl.clone(), Twist::Split).unwrap();
        let m = transfer_via_covering(&levi, &sl2, &levi124_covering(), Twist::Split).unwrap();
        assert!(self_induction_check(&m).unwrap());
    }


    #[test]
    fn unresolved_sign_examples_sit_at_the_stated_cells() {
        use crate::symring::poly::rat;
        use crate::symring::{RationalPoly, SymExpr};
        let (_, _, t) = spin8_and_levi(Twist::Split);
        // g((2.2.2,4), (3221,4)) = 1/4 (a10 - 1)(q^4 + q^3) before resolution.
        let a10 = SymExpr::indet(crate::symring::SignIndet::from_name("a10").unwrap());
        let expect = a10
            .sub(&SymExpr::one())
            .mul_poly(&RationalPoly::from_ints(&[0, 0, 0, 1, 1]))
            .scale(&rat(1, 4));
        let r = t.row_index("2.2.2,4").unwrap();
        let c = t.col_index("3221,4").unwrap();
        assert_eq!(t.values[r][c], expect);
        // For both classes regular a value 1/4 (-a27 + 1) occurs.
        let a27 = SymExpr::indet(crate::symring::SignIndet::from_name("a27").unwrap());
        let minus = SymExpr::one().sub(&a27).scale(&rat(1, 4));
        let creg = t.col_index("71,2").unwrap();
        let rreg = t.row_index("2.2.2,1").unwrap();
        assert_eq!(t.values[rreg][creg], minus);
    }

    #[test]
    fn twisted_corner_value() {
        let (_, _, t) = spin8_and_levi(Twist::Twisted);
        let r = t.row_index("11.11.11,1").unwrap();
        let c = t.col_index("11111111,1").unwrap();
        assert_eq!(cyclotomic_display(&t.values[r][c]), "-P1P3P4^2P6");
    }

    #[test]
    fn resolution_is_invariant_under_table_order() {
        let (_, _, split) = spin8_and_levi(Twist::Split);
        let (_, _, twisted) = spin8_and_levi(Twist::Twisted);
        let a = resolve_signs(&[(&split, true), (&twisted, false)]).unwrap();
        let b = resolve_signs(&[(&twisted, false), (&split, true)]).unwrap();
        assert_eq!(a.assignment, b.assignment);
    }

    #[test]
    fn trivial_spin8_column_is_a_delta() {
        // The column of the trivial Spin8 class vanishes except at the
        // trivial Levi class (both twists).
        for twist in [Twist::Split, Twist::Twisted] {
            let (_, _, t) = spin8_and_levi(twist);
            let c = t.col_index("11111111,1").unwrap();
            for (r, row) in t.rows.iter().enumerate() {
                if row == "11.11.11,1" {
                    assert!(!t.values[r][c].is_zero());
                } else {
                    assert!(t.values[r][c].is_zero(), "twist {:?} row {}", twist, row);
                }
            }
        }
    }
}
