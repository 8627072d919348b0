//! The simply connected covering SL2 x SL2 x SL2 of the Levi {1,2,4}
//! modulo its connected center, and the induced component-group and
//! finite-class bookkeeping.
//!
//! The kernel of the covering is the diagonal center; component groups of
//! the product are elementary abelian 2-groups supported on the regular
//! factors, and everything reduces to F2 linear algebra on bitmasks.

use std::collections::BTreeMap;

use crate::groupdata::catalog::{UnipClass, UnipotentClassCatalog};
use crate::Error;

/// Covering data: the product factors (as ambient 0-based nodes, in label
/// order) and the kernel of the covering map as masks over the factors.
pub struct CoveringData {
    pub factor_nodes: Vec<usize>,
    pub kernel: Vec<u8>,
}

/// Central involution masks over the factors (paper order 1, 2, 4):
/// z12 flips factors {1,2}, z24 flips {2,4}, z14 flips {1,4}.
pub const CENTER_MASKS: [(&str, u8); 3] = [("z12", 0b011), ("z24", 0b110), ("z14", 0b101)];

pub fn levi124_covering() -> CoveringData {
    CoveringData {
        factor_nodes: vec![0, 1, 3],
        kernel: vec![0b000, 0b111],
    }
}

/// The quotient component group for one class pattern: returns the quotient
/// rank and the projection from product-support masks to quotient masks.
pub struct QuotientComponentGroup {
    /// Mask of factor positions where the class member is regular.
    pub support: u8,
    pub a_rank: u8,
    /// Images of the product generators x_i (i a support position) in the
    /// quotient, as quotient masks.
    pub gen_image: BTreeMap<u8, u8>,
}

impl QuotientComponentGroup {
    /// Number of finite classes = order of the quotient group.
    pub fn class_count(&self) -> usize {
        1usize << self.a_rank
    }

    /// Project a product mask (supported anywhere) into the quotient.
    pub fn project(&self, product_mask: u8) -> u8 {
        let mut out = 0u8;
        for (pos, img) in &self.gen_image {
            if product_mask & (1 << pos) != 0 {
                out ^= img;
            }
        }
        out
    }
}

/// Compute (A_1 x A_2 x A_3)/K-bar for the class whose regular factors are
/// given by `support`.
pub fn quotient_component_group(
    cov: &CoveringData,
    support: u8,
) -> Result<QuotientComponentGroup, Error> {
    let nfac = cov.factor_nodes.len();
    for &k in &cov.kernel {
        if k >= 1 << nfac {
            return Err(Error::Data("covering kernel mask outside the factor product".into()));
        }
    }
    // K-bar = image of the kernel in F2^support.
    let kbar: Vec<u8> = cov.kernel.iter().map(|k| k & support).collect();
    // The quotient of F2^support by the span of kbar. With the diagonal
    // kernel the span is {0, support}; handle the general F2 case anyway.
    let mut span = vec![0u8];
    for &k in &kbar {
        if k != 0 && !span.contains(&k) {
            let mut extra: Vec<u8> = span.iter().map(|s| s ^ k).collect();
            span.append(&mut extra);
            span.sort_unstable();
            span.dedup();
        }
    }
    // Choose quotient generators greedily from the support positions.
    let positions: Vec<u8> = (0..nfac as u8).filter(|p| support & (1 << p) != 0).collect();
    let mut gen_image: BTreeMap<u8, u8> = BTreeMap::new();
    let mut basis: Vec<u8> = Vec::new(); // product masks representing quotient basis
    for &p in &positions {
        let x = 1u8 << p;
        // Reduce x against span and chosen basis to detect dependence.
        let img = reduce_mod(&span, &basis, x);
        match img {
            Some(coords) => {
                gen_image.insert(p, coords);
            }
            None => {
                let idx = basis.len();
                basis.push(x);
                gen_image.insert(p, 1 << idx);
            }
        }
    }
    Ok(QuotientComponentGroup {
        support,
        a_rank: basis.len() as u8,
        gen_image,
    })
}

/// Express x in the F2-span of `span + basis` if possible, returning its
/// coordinates over `basis` (as a quotient mask); None if independent.
fn reduce_mod(span: &[u8], basis: &[u8], x: u8) -> Option<u8> {
    // Brute force over the tiny span and basis subsets.
    for coords in 0..(1u16 << basis.len()) {
        let mut acc = 0u8;
        for (i, b) in basis.iter().enumerate() {
            if coords & (1 << i) != 0 {
                acc ^= b;
            }
        }
        for &s in span {
            if acc ^ s == x {
                return Some(coords as u8);
            }
        }
    }
    None
}

/// Part labels in the class naming: "2" for a regular factor, "11" otherwise.
pub fn pattern_label(nfac: usize, support: u8) -> String {
    (0..nfac)
        .map(|p| if support & (1 << p) != 0 { "2" } else { "11" })
        .collect::<Vec<_>>()
        .join(".")
}

/// Build the Levi's unipotent class catalog from the covering, in row-label
/// order (lexicographic with 11 before 2, leftmost factor most significant).
pub fn levi124_catalog(cov: &CoveringData) -> Result<UnipotentClassCatalog, Error> {
    let nfac = cov.factor_nodes.len();
    let mut supports: Vec<u8> = (0..1u8 << nfac).collect();
    // Lexicographic on the labels: "11" < "2" per factor, leftmost major;
    // bit p set means factor p is "2".
    supports.sort_by_key(|&s| {
        let mut key = 0u32;
        for p in 0..nfac {
            key = key * 2 + u32::from(s & (1 << p) != 0);
        }
        key
    });

    let mut classes = Vec::new();
    for support in supports {
        let qg = quotient_component_group(cov, support)?;
        let order = qg.class_count();
        // Element names: identify each nonzero quotient element with the
        // central involutions mapping to it where possible.
        let mut names = vec![String::new(); order];
        names[0] = "1".to_string();
        let mut center_image = BTreeMap::new();
        for (zname, zmask) in CENTER_MASKS {
            let img = qg.project(zmask);
            center_image.insert(zname.to_string(), img);
            if img != 0 && names[img as usize].is_empty() {
                names[img as usize] = zname.to_string();
            }
        }
        for (i, n) in names.iter_mut().enumerate() {
            if n.is_empty() {
                *n = if order == 2 { "g".to_string() } else { format!("e{}", i) };
            }
        }
        // Finite classes: the all-plus split class first, then the single
        // factor flips by descending factor position, then anything left.
        let mut finite_order: Vec<u8> = vec![0];
        for p in (0..nfac as u8).rev() {
            if support & (1 << p) != 0 {
                let img = qg.project(1 << p);
                if !finite_order.contains(&img) {
                    finite_order.push(img);
                }
            }
        }
        for m in 0..order as u8 {
            if !finite_order.contains(&m) {
                finite_order.push(m);
            }
        }
        classes.push(UnipClass {
            label: pattern_label(nfac, support),
            dim: 2 * support.count_ones(),
            a_rank: qg.a_rank,
            elem_names: names,
            center_image,
            finite_order,
            indeterminate: None,
        });
    }
    Ok(UnipotentClassCatalog { group: "levi124".to_string(), classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_sizes() {
        let cov = levi124_covering();
        // Regular class: diagonal kernel gives Z2 x Z2, 4 finite classes.
        let q = quotient_component_group(&cov, 0b111).unwrap();
        assert_eq!(q.a_rank, 2);
        assert_eq!(q.class_count(), 4);
        // One regular factor: kernel surjects, trivial quotient.
        let q = quotient_component_group(&cov, 0b010).unwrap();
        assert_eq!(q.class_count(), 1);
        // Trivial class.
        let q = quotient_component_group(&cov, 0).unwrap();
        assert_eq!(q.class_count(), 1);
        // Two regular factors: order 2.
        let q = quotient_component_group(&cov, 0b101).unwrap();
        assert_eq!(q.class_count(), 2);
    }

    #[test]
    fn catalog_shape_matches_row_labels() {
        let cat = levi124_catalog(&levi124_covering()).unwrap();
        let labels: Vec<&str> = cat.classes.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(
            labels,
            vec![
                "11.11.11", "11.11.2", "11.2.11", "11.2.2", "2.11.11", "2.11.2", "2.2.11",
                "2.2.2"
            ]
        );
        let counts: Vec<usize> = cat.classes.iter().map(|c| c.finite_count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 2, 2, 4]);
        assert_eq!(cat.total_finite_classes(), 14);
    }

    #[test]
    fn regular_class_center_images_are_distinct() {
        let cat = levi124_catalog(&levi124_covering()).unwrap();
        let c = cat.class("2.2.2").unwrap();
        let imgs: Vec<u8> = ["z12", "z24", "z14"]
            .iter()
            .map(|z| c.center_image[*z])
            .collect();
        assert_eq!(imgs.iter().filter(|&&i| i != 0).count(), 3);
        let mut sorted = imgs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 3);
        // z12 z24 = z14 in the quotient.
        assert_eq!(imgs[0] ^ imgs[1], imgs[2]);
    }

    #[test]
    fn two_factor_class_center_pattern() {
        // Class 2.2.11 has support {1,2}; z12 projects to the identity there.
        let cat = levi124_catalog(&levi124_covering()).unwrap();
        let c = cat.class("2.2.11").unwrap();
        assert_eq!(c.center_image["z12"], 0);
        assert_ne!(c.center_image["z24"], 0);
        assert_ne!(c.center_image["z14"], 0);
    }
}
