//! Exhaustive exact verification of the orthogonality relations: distinct
//! Green functions are orthogonal and each has squared norm
//! |W_L^(wF)| q^d / |Z0(L_w)^F|, identically in q and in the sign
//! indeterminates.

use super::table::GreenTable;
use crate::symring::SymExpr;

pub struct OrthReport {
    /// (col i, col j, residual description) for every violated pair.
    pub violations: Vec<(usize, usize, String)>,
}

impl OrthReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.violations.is_empty() {
            return "all pairs orthogonal with the stated norms".to_string();
        }
        let shown: Vec<String> = self
            .violations
            .iter()
            .take(4)
            .map(|(i, j, d)| format!("({i},{j}): {d}"))
            .collect();
        format!("{} violations, first: {}", self.violations.len(), shown.join("; "))
    }
}

/// Check every pair of columns. The identity tested, with denominators
/// cleared, is: sum_c |c| Q_i(c) Q_j(c) * den_i = delta_ij * num_i * |G|.
pub fn verify_orthogonality(table: &GreenTable) -> OrthReport {
    let mut violations = Vec::new();
    let ncols = table.cols.len();
    for i in 0..ncols {
        for j in i..ncols {
            let mut s = SymExpr::zero();
            for (ri, row) in table.rows.iter().enumerate() {
                let prod = table.values[ri][i].mul(&table.values[ri][j]);
                if prod.is_zero() {
                    continue;
                }
                s = s.add(&prod.mul_poly(&row.size));
            }
            let lhs = s.mul_poly(&table.cols[i].norm_den);
            let rhs = if i == j {
                SymExpr::from_poly(table.cols[i].norm_num.mul(&table.order_poly))
            } else {
                SymExpr::zero()
            };
            let resid = lhs.sub(&rhs);
            if !resid.is_zero() {
                violations.push((i, j, format!("{:?}", resid)));
            }
            // The relation must also hold with j's normalization when i = j
            // is not involved; for i != j symmetry makes the check identical.
        }
    }
    OrthReport { violations }
}
