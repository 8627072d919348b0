//! Generalized Green function tables: Y-function assembly with the sign
//! ambiguities, the per-block unitriangular decomposition, the covering
//! transfer for the Levi, and exact orthogonality verification.

pub mod assemble;
pub mod decomp;
pub mod ortho;
pub mod table;
pub mod transfer;

pub use assemble::{assemble, column_norm, green_table};
pub use decomp::{decompose, global_pairs, omega_matrix, y_scalar, y_value, Decomposition, PairRef};
pub use ortho::{verify_orthogonality, OrthReport};
pub use table::{GreenColumn, GreenRow, GreenTable};
pub use transfer::transfer_via_covering;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupdata::{
        levi124_context, levi124_covering, sl2_context, spin8_context, DataSource, Twist,
    };
    use crate::symring::poly::int;
    use crate::symring::RationalPoly;

    #[test]
    fn sl2_green_table_matches_hand_values() {
        let ctx = sl2_context(&DataSource::embedded()).unwrap();
        let t = green_table(&ctx).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.cols.len(), 3);
        // Columns: Q_{T,1} = (q+1, 1, 1); Q_{T,s} = (1-q, 1, 1); cuspidal
        // (0, 1, -1) up to the split-class normalization.
        let q_plus_1 = crate::symring::SymExpr::from_poly(RationalPoly::from_ints(&[1, 1]));
        let one_minus_q = crate::symring::SymExpr::from_poly(RationalPoly::from_ints(&[1, -1]));
        let one = crate::symring::SymExpr::one();
        assert_eq!(t.value(0, 0), &q_plus_1);
        assert_eq!(t.value(1, 0), &one);
        assert_eq!(t.value(2, 0), &one);
        assert_eq!(t.value(0, 1), &one_minus_q);
        assert_eq!(t.value(1, 1), &one);
        assert_eq!(t.value(2, 1), &one);
        assert!(t.value(0, 2).is_zero());
        assert_eq!(t.value(1, 2), &one);
        assert_eq!(t.value(2, 2), &one.neg());
        // Norms: 2/(q-1), 2/(q+1), 1/q.
        assert_eq!(t.cols[0].norm_num, RationalPoly::constant(int(2)));
        assert_eq!(t.cols[0].norm_den, RationalPoly::from_ints(&[-1, 1]));
        assert_eq!(t.cols[1].norm_den, RationalPoly::from_ints(&[1, 1]));
        assert_eq!(t.cols[2].norm_num, RationalPoly::one());
        assert_eq!(t.cols[2].norm_den, RationalPoly::q());
        // Unipotent count q^2.
        assert_eq!(t.unipotent_count(), RationalPoly::monomial(2, int(1)));
    }

    #[test]
    fn spin8_green_table_validates() {
        let ctx = spin8_context(&DataSource::embedded()).unwrap();
        let t = green_table(&ctx).unwrap();
        assert_eq!(t.rows.len(), 28);
        assert_eq!(t.cols.len(), 28);
        assert_eq!(t.unipotent_count(), RationalPoly::monomial(24, int(1)));
        // Column of the identity torus element at the trivial class is the
        // Poincare polynomial of W(D4).
        let trivial_row = t.row_by_label("11111111,1").unwrap();
        let poincare = ctx.weyl.poincare();
        assert_eq!(t.value(trivial_row, 0).as_poly().unwrap(), poincare);
        // Triangularity: columns of a cuspidal block vanish on classes not
        // dominated by the block's top class; the trivial class only meets
        // the torus block.
        for (ci, col) in t.cols.iter().enumerate() {
            if col.block != 0 {
                assert!(t.value(trivial_row, ci).is_zero());
            }
        }
    }

    #[test]
    fn levi_transfer_and_direct_decomposition_agree_for_split() {
        let src = DataSource::embedded();
        let spin8 = spin8_context(&src).unwrap();
        let ctx = levi124_context(&src, spin8.weyl.clone(), Twist::Split).unwrap();
        let sl2 = green_table(&sl2_context(&src).unwrap()).unwrap();
        let transferred =
            transfer_via_covering(&ctx, &sl2, &levi124_covering(), Twist::Split).unwrap();
        assert_eq!(transferred.rows.len(), 14);
        assert_eq!(transferred.cols.len(), 14);
        assert_eq!(transferred.unipotent_count(), RationalPoly::monomial(6, int(1)));

        let direct = green_table(&ctx).unwrap();
        assert_eq!(direct.cols.len(), transferred.cols.len());
        for r in 0..14 {
            assert_eq!(direct.rows[r].label, transferred.rows[r].label);
            assert_eq!(direct.rows[r].size, transferred.rows[r].size, "row {} size", r);
            for c in 0..14 {
                assert_eq!(
                    direct.values[r][c], transferred.values[r][c],
                    "value mismatch at ({r},{c})"
                );
            }
        }
    }

    #[test]
    fn levi_twisted_transfer_validates() {
        let src = DataSource::embedded();
        let spin8 = spin8_context(&src).unwrap();
        let ctx = levi124_context(&src, spin8.weyl.clone(), Twist::Twisted).unwrap();
        let sl2 = green_table(&sl2_context(&src).unwrap()).unwrap();
        let t = transfer_via_covering(&ctx, &sl2, &levi124_covering(), Twist::Twisted).unwrap();
        assert_eq!(t.rows.len(), 14);
        // Distinct split/twisted norms: the identity torus column has
        // denominator containing q+1 in place of q-1.
        let split_ctx = levi124_context(&src, spin8.weyl.clone(), Twist::Split).unwrap();
        let ts = transfer_via_covering(&split_ctx, &sl2, &levi124_covering(), Twist::Split).unwrap();
        assert_ne!(t.cols[0].norm_den, ts.cols[0].norm_den);
        // The split class of the regular class is the image of the triple of
        // SL2 split classes: its size is (q^2-1)^3 / 4.
        let r = t.row_by_label("2.2.2,1").unwrap();
        let expect = RationalPoly::from_ints(&[-1, 0, 1])
            .pow(3)
            .scale(&crate::symring::poly::rat(1, 4));
        assert_eq!(t.rows[r].size, expect);
    }


    #[test]
    fn y_functions_on_one_class_are_orthogonal_across_blocks() {
        // For two local systems on the same class coming from different
        // blocks, sum_a |C'_a| Y_i(a) Y_k(a) vanishes identically in the
        // signs. (Two systems of one block on the same class, as on 3311,
        // can pair nontrivially; that part is carried by the decomposition.)
        let ctx = spin8_context(&DataSource::embedded()).unwrap();
        let pairs = global_pairs(&ctx);
        let omega = omega_matrix(&ctx, &pairs, ctx.weyl.identity()).unwrap();
        let d = decompose(&ctx, &omega).unwrap();
        let finite = ctx.catalog.finite_classes();
        for (i, pi) in d.pairs.iter().enumerate() {
            for pj in d.pairs.iter().skip(i + 1) {
                if pi.class_index != pj.class_index || pi.block == pj.block {
                    continue;
                }
                let class = &ctx.catalog.classes[pi.class_index];
                let mut acc = crate::symring::SymExpr::zero();
                for (ri, &(ci, fi)) in finite.iter().enumerate() {
                    if ci != pi.class_index {
                        continue;
                    }
                    let a = class.finite_order[fi];
                    let prod = y_value(class, pi.system, a)
                        .mul(&y_value(class, pj.system, a))
                        .mul_poly(&d.sizes[ri]);
                    acc = acc.add(&prod);
                }
                assert!(acc.is_zero(), "cross-block Y pairing nonzero on {}", class.label);
            }
        }
    }

    #[test]
    fn y_value_patterns() {
        let ctx = spin8_context(&DataSource::embedded()).unwrap();
        // Trivial component group: the single Y is constantly 1 on the class.
        let triv = ctx.catalog.class("221111").unwrap();
        assert_eq!(y_value(triv, crate::groupdata::AChar::TRIVIAL, 0), crate::symring::SymExpr::one());
        // Z2 with the nontrivial character and c = 1: values (1, -1).
        let c2222 = ctx.catalog.class("2222+").unwrap();
        let sgn = crate::groupdata::AChar(1);
        assert_eq!(y_value(c2222, sgn, 0), crate::symring::SymExpr::one());
        assert_eq!(y_value(c2222, sgn, 1), crate::symring::SymExpr::one().neg());
        // The undetermined system on 53 carries a22 times the character.
        let c53 = ctx.catalog.class("53").unwrap();
        let (star, sign) = c53.indeterminate.unwrap();
        assert_eq!(sign.name(), "a22");
        let v = y_value(c53, star, c53.finite_order[1]);
        let a22 = crate::symring::SymExpr::indet(sign);
        assert!(v == a22 || v == a22.neg());
    }

    #[test]
    fn green_table_json_roundtrip() {
        let ctx = sl2_context(&DataSource::embedded()).unwrap();
        let t = green_table(&ctx).unwrap();
        let j = t.to_json();
        let text = serde_json::to_string_pretty(&j).unwrap();
        let back = GreenTable::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.rows.len(), t.rows.len());
        for r in 0..t.rows.len() {
            assert_eq!(back.rows[r].label, t.rows[r].label);
            assert_eq!(back.rows[r].size, t.rows[r].size);
            for c in 0..t.cols.len() {
                assert_eq!(back.values[r][c], t.values[r][c]);
            }
        }
        // Byte-exact round trip of the serialized form.
        let again = serde_json::to_string_pretty(&back.to_json()).unwrap();
        assert_eq!(text, again);
    }
}
