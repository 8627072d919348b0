//! Assembly of Green-function tables from a decomposition: each column is
//! the Fourier combination over the block's relative Weyl group of the
//! q-shifted normalized sheaf functions, expressed in Y-values.

use num_rational::BigRational;
use num_traits::Zero;

use super::decomp::{decompose, global_pairs, omega_matrix, y_value, Decomposition};
use super::ortho::verify_orthogonality;
use super::table::{GreenColumn, GreenRow, GreenTable};
use crate::coxeter::ElemId;
use crate::groupdata::GroupContext;
use crate::symring::poly::int;
use crate::symring::{RationalPoly, SymExpr};
use crate::Error;

/// Norm data for one column: (num, den) with (Q,Q) = num/den =
/// |C_{W_L}(w)| q^d / z0(w t).
pub fn column_norm(
    ctx: &GroupContext,
    block: usize,
    wclass: usize,
    twist_elem: ElemId,
) -> Result<(RationalPoly, RationalPoly), Error> {
    let b = &ctx.blocks[block];
    let quot = &b.rel.quotient;
    let cent = quot.centralizer_order(wclass) as i64;
    let amb = b.rel.embed[quot.classes[wclass].rep];
    let tw = ctx.weyl.mul(amb, twist_elem);
    let z0 = crate::groupdata::sublattice_char_poly(&ctx.weyl, tw, &b.levi_nodes)?;
    let num = RationalPoly::constant(int(cent));
    // d = -|I| <= 0 moves into the denominator.
    let den = z0.mul_qpow((-b.d) as u32);
    Ok((num, den))
}

/// Assemble the group's Green table from its decomposition.
pub fn assemble(
    ctx: &GroupContext,
    decomp: &Decomposition,
    twist_elem: ElemId,
) -> Result<GreenTable, Error> {
    let finite = ctx.catalog.finite_classes();
    let n_pairs = decomp.pairs.len();

    // Y values and the normalized sheaf-function values per pair and row.
    let mut yv = vec![vec![SymExpr::zero(); finite.len()]; n_pairs];
    for (pi, p) in decomp.pairs.iter().enumerate() {
        let class = &ctx.catalog.classes[p.class_index];
        for (ri, &(ci, fi)) in finite.iter().enumerate() {
            if ci == p.class_index {
                yv[pi][ri] = y_value(class, p.system, class.finite_order[fi]);
            }
        }
    }
    let mut xv = vec![vec![SymExpr::zero(); finite.len()]; n_pairs];
    for i in 0..n_pairs {
        for k in 0..n_pairs {
            let c = &decomp.p[k][i];
            if c.is_zero() {
                continue;
            }
            for ri in 0..finite.len() {
                if yv[k][ri].is_zero() {
                    continue;
                }
                let t = yv[k][ri].mul_poly(c);
                xv[i][ri] = xv[i][ri].add(&t);
            }
        }
    }

    let mut rows = Vec::new();
    for (ri, &(ci, fi)) in finite.iter().enumerate() {
        let class = &ctx.catalog.classes[ci];
        rows.push(GreenRow {
            class_index: ci,
            finite_index: fi,
            label: class.finite_label(fi),
            size: decomp.sizes[ri].clone(),
        });
    }

    let mut cols = Vec::new();
    let mut values: Vec<Vec<SymExpr>> = vec![Vec::new(); rows.len()];
    for (bi, b) in ctx.blocks.iter().enumerate() {
        for wc in 0..b.rel.quotient.class_count() {
            let (norm_num, norm_den) = column_norm(ctx, bi, wc, twist_elem)?;
            cols.push(GreenColumn {
                block: bi,
                wclass: wc,
                label: format!("{}:{}", b.name, b.rel.quotient.classes[wc].label),
                norm_num,
                norm_den,
            });
            for (ri, row_vals) in values.iter_mut().enumerate() {
                let mut acc = SymExpr::zero();
                for (pi, p) in decomp.pairs.iter().enumerate() {
                    if p.block != bi || xv[pi][ri].is_zero() {
                        continue;
                    }
                    let chi: &BigRational = &b.rel.table.values[p.char_row][wc];
                    if chi.is_zero() {
                        continue;
                    }
                    let t = xv[pi][ri].mul_poly(&RationalPoly::monomial(p.delta, chi.clone()));
                    acc = acc.add(&t);
                }
                row_vals.push(acc);
            }
        }
    }

    Ok(GreenTable {
        group: ctx.name.clone(),
        rows,
        cols,
        values,
        order_poly: ctx.order_poly.clone(),
    })
}

/// Full pipeline for a split group: decompose, assemble, and validate the
/// orthogonality relations before returning.
pub fn green_table(ctx: &GroupContext) -> Result<GreenTable, Error> {
    let twist = ctx.weyl.identity();
    let pairs = global_pairs(ctx);
    let omega = omega_matrix(ctx, &pairs, twist)?;
    let decomp = decompose(ctx, &omega)?;
    let table = assemble(ctx, &decomp, twist)?;
    let report = verify_orthogonality(&table);
    if !report.is_empty() {
        return Err(Error::Validation(format!(
            "assembled table fails orthogonality: {}",
            report.summary()
        )));
    }
    // Conservation: unipotent count is q^(2 * #positive roots).
    let expect = RationalPoly::monomial(2 * ctx.positive_roots as u32, int(1));
    if table.unipotent_count() != expect {
        return Err(Error::Validation(
            "finite class sizes do not sum to the unipotent count".into(),
        ));
    }
    Ok(table)
}
