//! Identification of the Levi's generalized Green functions with those of
//! the ambient group through transitivity of twisted induction: a column
//! of the Levi table, indexed by (block, F-class v), corresponds to the
//! ambient column of the same block triple at the fused class of v times
//! the Levi's twist.

use crate::coxeter::ElemId;
use crate::groupdata::{GroupContext, Twist};
use crate::Error;

/// Total map from Levi table columns to ambient table columns.
pub struct InducedIdentification {
    /// For each Levi column index, the ambient column index.
    pub map: Vec<usize>,
}

/// Column enumeration mirrors the assembly order: blocks in data order,
/// then quotient classes in canonical order.
fn column_index(ctx: &GroupContext, block: usize, wclass: usize) -> usize {
    let mut idx = 0;
    for b in ctx.blocks.iter().take(block) {
        idx += b.rel.quotient.class_count();
    }
    idx + wclass
}

pub fn identify(
    ambient: &GroupContext,
    levi: &GroupContext,
    twist: Twist,
) -> Result<InducedIdentification, Error> {
    let w = &ambient.weyl;
    let twist_elem: ElemId = match twist {
        Twist::Split => w.identity(),
        Twist::Twisted => w.longest_element(&[0, 1, 2, 3]),
    };
    let mut map = Vec::new();
    for lb in &levi.blocks {
        // The ambient block with the same cuspidal triple: same Levi nodes.
        let (abi, ab) = ambient
            .blocks
            .iter()
            .enumerate()
            .find(|(_, b)| b.levi_nodes == lb.levi_nodes)
            .ok_or_else(|| {
                Error::Data(format!(
                    "no ambient block matches the Levi block on nodes {:?}",
                    lb.levi_nodes
                ))
            })?;
        for vc in 0..lb.rel.quotient.class_count() {
            let v_amb = lb.rel.embed[lb.rel.quotient.classes[vc].rep];
            let fused = ab.rel.class_of_ambient(w, w.mul(v_amb, twist_elem))?;
            map.push(column_index(ambient, abi, fused));
        }
    }
    Ok(InducedIdentification { map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupdata::{levi124_context, spin8_context, DataSource};

    #[test]
    fn split_identity_column_goes_to_the_identity_class() {
        let src = DataSource::embedded();
        let spin8 = spin8_context(&src).unwrap();
        let levi = levi124_context(&src, spin8.weyl.clone(), Twist::Split).unwrap();
        let id = identify(&spin8, &levi, Twist::Split).unwrap();
        assert_eq!(id.map.len(), 14);
        // First Levi column: torus block, identity class -> ambient torus
        // block, identity class (column 0).
        assert_eq!(id.map[0], 0);
    }

    #[test]
    fn twisted_identity_column_goes_to_the_long_element_class() {
        let src = DataSource::embedded();
        let spin8 = spin8_context(&src).unwrap();
        let levi = levi124_context(&src, spin8.weyl.clone(), Twist::Twisted).unwrap();
        let id = identify(&spin8, &levi, Twist::Twisted).unwrap();
        let w = &spin8.weyl;
        let w0 = w.longest_element(&[0, 1, 2, 3]);
        let expect = spin8.blocks[0].rel.class_of_ambient(w, w0).unwrap();
        assert_eq!(id.map[0], expect);
        assert_ne!(id.map[0], 0);
    }

    #[test]
    fn cuspidal_columns_fuse_into_reflection_classes() {
        let src = DataSource::embedded();
        let spin8 = spin8_context(&src).unwrap();
        let levi = levi124_context(&src, spin8.weyl.clone(), Twist::Split).unwrap();
        let id = identify(&spin8, &levi, Twist::Split).unwrap();
        // Levi columns 8..14 are the three cuspidal blocks, two classes each.
        // The nontrivial class of each fuses into a reflection class of the
        // matching ambient B2-quotient, consistent with the fusion map.
        let w = &spin8.weyl;
        for (lb_idx, lb) in levi.blocks.iter().enumerate().skip(1) {
            let ab = spin8
                .blocks
                .iter()
                .find(|b| b.levi_nodes == lb.levi_nodes)
                .unwrap();
            let fusion = crate::coxeter::fuse(w, &lb.rel, &ab.rel).unwrap();
            let col0 = 8 + (lb_idx - 1) * 2;
            let base: usize = 13
                + spin8
                    .blocks
                    .iter()
                    .skip(1)
                    .take_while(|b| b.levi_nodes != ab.levi_nodes)
                    .map(|b| b.rel.quotient.class_count())
                    .sum::<usize>();
            assert_eq!(id.map[col0], base + fusion.map[0]);
            assert_eq!(id.map[col0 + 1], base + fusion.map[1]);
            // The fused image of the nontrivial element is a length-odd class.
            let rep = ab.rel.quotient.classes[fusion.map[1]].rep;
            assert_eq!(ab.rel.quotient.lengths[rep] % 2, 1);
        }
    }
}
