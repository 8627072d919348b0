//! The Levi's Green table from three SL2 tables through the simply
//! connected covering: classes merge along the kernel's simultaneous sign
//! flip, values are products of component values (restricted to characters
//! trivial on the kernel -- exactly the column set of the Levi's blocks),
//! and sizes transport through the covering bijection.

use super::assemble::column_norm;
use super::ortho::verify_orthogonality;
use super::table::{GreenColumn, GreenRow, GreenTable};
use crate::groupdata::covering::CoveringData;
use crate::groupdata::{quotient_component_group, GroupContext, Twist};
use crate::symring::poly::int;
use crate::symring::{RationalPoly, SymExpr};
use crate::Error;

/// Per-factor column selector into the SL2 table.
#[derive(Clone, Copy, Debug, PartialEq)]
enum FactorCol {
    /// Torus column with the given twist bit (0 = split torus).
    Torus(u8),
    Cuspidal,
}

fn sl2_col_index(c: FactorCol) -> usize {
    // SL2 table column order: (T, identity class), (T, reflection class),
    // cuspidal.
    match c {
        FactorCol::Torus(0) => 0,
        FactorCol::Torus(_) => 1,
        FactorCol::Cuspidal => 2,
    }
}

/// Row of the SL2 table for a factor: class "11" or the two finite classes
/// of "2" indexed by the flip bit.
fn sl2_row_index(regular: bool, flip: u8) -> usize {
    if !regular {
        0
    } else if flip == 0 {
        1
    } else {
        2
    }
}

/// Build the Levi's table. `ctx` must be a levi124 context (for the blocks,
/// norms and order polynomial); `sl2` the split SL2 table; the twist swaps
/// each factor's torus columns and is also reflected in the norms.
pub fn transfer_via_covering(
    ctx: &GroupContext,
    sl2: &GreenTable,
    cov: &CoveringData,
    twist: Twist,
) -> Result<GreenTable, Error> {
    let nfac = cov.factor_nodes.len();
    let finite = ctx.catalog.finite_classes();
    let twist_elem = match twist {
        Twist::Split => ctx.weyl.identity(),
        Twist::Twisted => ctx.weyl.longest_element(&[0, 1, 2, 3]),
    };
    let twist_bit: u8 = match twist {
        Twist::Split => 0,
        Twist::Twisted => 1,
    };

    // Rows: lift each merged class, summing sizes over the kernel coset.
    let mut rows = Vec::new();
    let mut row_lifts: Vec<Vec<Vec<u8>>> = Vec::new(); // per row: the flip vectors
    for &(ci, fi) in &finite {
        let class = &ctx.catalog.classes[ci];
        let support = support_mask(&class.label);
        let qg = quotient_component_group(cov, support)?;
        let a = class.finite_order[fi];
        let lifts: Vec<Vec<u8>> = (0..1u8 << nfac)
            .filter(|eps| eps & !support == 0 && qg.project(*eps) == a)
            .map(|eps| (0..nfac as u8).map(|p| (eps >> p) & 1).collect())
            .collect();
        if lifts.is_empty() {
            return Err(Error::Data(format!(
                "class {}: no covering lift for finite index {}",
                class.label, fi
            )));
        }
        let mut size = RationalPoly::zero();
        for lift in &lifts {
            let mut s = RationalPoly::one();
            for (p, &flip) in lift.iter().enumerate() {
                let regular = support & (1 << p) != 0;
                s = s.mul(&sl2.rows[sl2_row_index(regular, flip)].size);
            }
            size = size.add(&s);
        }
        rows.push(GreenRow {
            class_index: ci,
            finite_index: fi,
            label: class.finite_label(fi),
            size,
        });
        row_lifts.push(lifts);
    }

    // Columns follow the Levi's blocks exactly as direct assembly would.
    let mut cols = Vec::new();
    let mut values: Vec<Vec<SymExpr>> = vec![Vec::new(); rows.len()];
    for (bi, b) in ctx.blocks.iter().enumerate() {
        // Factors inside the block's Levi get the cuspidal column; the
        // factor on the quotient generator node gets a torus column.
        for wc in 0..b.rel.quotient.class_count() {
            let (norm_num, norm_den) = column_norm(ctx, bi, wc, twist_elem)?;
            cols.push(GreenColumn {
                block: bi,
                wclass: wc,
                label: format!("{}:{}", b.name, b.rel.quotient.classes[wc].label),
                norm_num,
                norm_den,
            });
            // Per-factor column selectors for this table column.
            let rep = b.rel.quotient.classes[wc].rep;
            let word = b.rel.quotient.word(rep);
            let mut torus_bits = vec![0u8; nfac];
            for &g in word {
                // Generator g corresponds to ambient node node_labels[g].
                let node = b.rel.node_labels[g];
                let p = cov
                    .factor_nodes
                    .iter()
                    .position(|&fnode| fnode == node)
                    .ok_or_else(|| Error::Data("quotient generator off the factors".into()))?;
                torus_bits[p] ^= 1;
            }
            let selectors: Vec<FactorCol> = (0..nfac)
                .map(|p| {
                    let node = cov.factor_nodes[p];
                    if b.levi_nodes.contains(&node) {
                        FactorCol::Cuspidal
                    } else {
                        FactorCol::Torus(torus_bits[p] ^ twist_bit)
                    }
                })
                .collect();

            for (ri, row_vals) in values.iter_mut().enumerate() {
                let class = &ctx.catalog.classes[rows[ri].class_index];
                let support = support_mask(&class.label);
                let mut val: Option<SymExpr> = None;
                for lift in &row_lifts[ri] {
                    let mut prod = SymExpr::one();
                    for (p, &flip) in lift.iter().enumerate() {
                        let regular = support & (1 << p) != 0;
                        let v = sl2.value(
                            sl2_row_index(regular, flip),
                            sl2_col_index(selectors[p]),
                        );
                        prod = prod.mul(v);
                    }
                    match &val {
                        None => val = Some(prod),
                        Some(prev) => {
                            if prev != &prod {
                                return Err(Error::Data(format!(
                                    "class {}: covering lifts disagree on a descended value",
                                    class.label
                                )));
                            }
                        }
                    }
                }
                row_vals.push(val.expect("at least one lift"));
            }
        }
    }

    let table = GreenTable {
        group: ctx.name.clone(),
        rows,
        cols,
        values,
        order_poly: ctx.order_poly.clone(),
    };
    let report = verify_orthogonality(&table);
    if !report.is_empty() {
        return Err(Error::Validation(format!(
            "transferred table fails orthogonality: {}",
            report.summary()
        )));
    }
    let expect = RationalPoly::monomial(2 * ctx.positive_roots as u32, int(1));
    if table.unipotent_count() != expect {
        return Err(Error::Validation(
            "transferred sizes do not sum to the unipotent count".into(),
        ));
    }
    Ok(table)
}

/// Regular-factor mask from a label like "2.11.2".
fn support_mask(label: &str) -> u8 {
    let mut mask = 0u8;
    for (p, part) in label.split('.').enumerate() {
        if part == "2" {
            mask |= 1 << p;
        }
    }
    mask
}
