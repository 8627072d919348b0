//! Inversion of a Green table through its orthogonality relations, and the
//! character-formula solve producing 2-parameter Green functions.
//!
//! With (Q_i, Q_j) = delta_ij n_i, the inverse of the value matrix
//! V[c'][j] = Q_j(c') is W[j][c'] = |c'| Q_j(c') / (|M| n_j). The system
//! Q^G_ident(j)(c) = sum_c' g(c, c') Q^M_j(c') then gives
//! g(c, c') = sum_j Q^G_ident(j)(c) W[j][c'], which is exactly a polynomial
//! (checked by exact division).

use serde_json::{json, Value};

use super::identify::InducedIdentification;
use crate::greenfn::GreenTable;
use crate::symring::json::{sym_from_json, sym_to_json};
use crate::symring::{RationalPoly, SignAssignment, SymExpr};
use crate::Error;

/// The inverse of a Green table's value matrix, as numerators over a common
/// polynomial denominator per entry.
pub struct InvertedTable {
    /// entries[j][c'] with denominator den[j][c'].
    pub num: Vec<Vec<SymExpr>>,
    pub den: Vec<Vec<RationalPoly>>,
}

/// Build the inverse from the norms. Errors if a norm numerator vanishes.
pub fn invert(table: &GreenTable) -> Result<InvertedTable, Error> {
    let nrows = table.rows.len();
    let ncols = table.cols.len();
    if nrows != ncols {
        return Err(Error::Data("only square tables are invertible".into()));
    }
    let mut num = vec![vec![SymExpr::zero(); nrows]; ncols];
    let mut den = vec![vec![RationalPoly::one(); nrows]; ncols];
    for j in 0..ncols {
        let col = &table.cols[j];
        if col.norm_num.is_zero() {
            return Err(Error::Data("zero norm in table".into()));
        }
        for c in 0..nrows {
            // |c| * Q_j(c) * norm_den / (|M| * norm_num)
            num[j][c] = table.values[c][j]
                .mul_poly(&table.rows[c].size)
                .mul_poly(&col.norm_den);
            den[j][c] = table.order_poly.mul(&col.norm_num);
        }
    }
    Ok(InvertedTable { num, den })
}

/// Verify (inverse * values) = identity exactly, identically in the signs.
pub fn verify_inverse(table: &GreenTable, inv: &InvertedTable) -> Result<(), Error> {
    let n = table.rows.len();
    for j in 0..n {
        for j2 in 0..n {
            let mut acc = SymExpr::zero();
            // Common denominator den[j][*] is constant in c.
            for c in 0..n {
                acc = acc.add(&inv.num[j][c].mul(&table.values[c][j2]));
            }
            let expect = if j == j2 {
                SymExpr::from_poly(inv.den[j][0].clone())
            } else {
                SymExpr::zero()
            };
            if acc.sub(&expect) != SymExpr::zero() {
                return Err(Error::Validation(format!(
                    "inverse check failed at columns ({j},{j2})"
                )));
            }
        }
    }
    Ok(())
}

/// A table of 2-parameter Green functions: rows are Levi finite classes,
/// columns ambient finite classes.
pub struct TwoParamTable {
    pub levi_group: String,
    pub ambient_group: String,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    /// values[row][col] = g(col-class, row-class).
    pub values: Vec<Vec<SymExpr>>,
    /// Sign substitution applied, if any.
    pub resolved: Option<SignAssignment>,
}

impl TwoParamTable {
    pub fn row_index(&self, label: &str) -> Result<usize, Error> {
        self.rows
            .iter()
            .position(|r| r == label)
            .ok_or_else(|| Error::Data(format!("no row `{label}`")))
    }

    pub fn col_index(&self, label: &str) -> Result<usize, Error> {
        self.cols
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| Error::Data(format!("no column `{label}`")))
    }

    /// Substitute signs into every value.
    pub fn substitute(&self, s: &SignAssignment) -> Result<TwoParamTable, Error> {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.substitute(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TwoParamTable {
            levi_group: self.levi_group.clone(),
            ambient_group: self.ambient_group.clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            values,
            resolved: Some(s.clone()),
        })
    }

    /// Substitute only the named indeterminates, leaving the rest symbolic.
    pub fn substitute_partial(
        &self,
        s: &SignAssignment,
        which: &[crate::symring::SignIndet],
    ) -> TwoParamTable {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.substitute_partial(s, which)).collect())
            .collect();
        TwoParamTable {
            levi_group: self.levi_group.clone(),
            ambient_group: self.ambient_group.clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            values,
            resolved: Some(s.clone()),
        }
    }

    pub fn to_json(&self, metadata: Value) -> Value {
        json!({
            "schema": "greenfn-twoparam-v1",
            "levi": self.levi_group,
            "group": self.ambient_group,
            "rows": self.rows,
            "cols": self.cols,
            "values": self.values.iter().map(|row| {
                row.iter().map(sym_to_json).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "metadata": metadata,
        })
    }

    pub fn from_json(v: &Value) -> Result<TwoParamTable, Error> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("twoparam: expected object".into()))?;
        let schema = obj.get("schema").and_then(Value::as_str).unwrap_or("");
        if schema != "greenfn-twoparam-v1" {
            return Err(Error::Data(format!("unsupported twoparam schema `{schema}`")));
        }
        let strings = |key: &str| -> Result<Vec<String>, Error> {
            obj.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("twoparam: missing {key}")))?
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::Parse("twoparam: label must be string".into()))
                })
                .collect()
        };
        let rows = strings("rows")?;
        let cols = strings("cols")?;
        let values = obj
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("twoparam: missing values".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("twoparam: bad row".into()))?
                    .iter()
                    .map(sym_from_json)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TwoParamTable {
            levi_group: obj.get("levi").and_then(Value::as_str).unwrap_or("").to_string(),
            ambient_group: obj.get("group").and_then(Value::as_str).unwrap_or("").to_string(),
            rows,
            cols,
            values,
            resolved: None,
        })
    }
}

/// Solve the character-formula system. The residual of the defining system
/// is checked to vanish identically before returning.
pub fn solve(
    ambient: &GreenTable,
    levi: &GreenTable,
    ident: &InducedIdentification,
) -> Result<TwoParamTable, Error> {
    let nlev = levi.rows.len();
    let namb = ambient.rows.len();
    if ident.map.len() != levi.cols.len() {
        return Err(Error::Data("identification does not cover all Levi columns".into()));
    }

    // g(c, c') = (1/|M|) sum_j (1/cent_j) QG_ident(j)(c) QM_j(c') |c'| den_j,
    // where cent_j = norm_num[j] is a constant.
    let mut values = vec![vec![SymExpr::zero(); namb]; nlev];
    for (j, &gcol) in ident.map.iter().enumerate() {
        let cent = levi.cols[j].norm_num.get(0);
        if levi.cols[j].norm_num.degree() != Some(0) {
            return Err(Error::Data("norm numerator is not a constant".into()));
        }
        let inv_cent = cent.recip();
        for (cp, lrow) in levi.rows.iter().enumerate() {
            let weight = levi.values[cp][j]
                .mul_poly(&lrow.size)
                .mul_poly(&levi.cols[j].norm_den)
                .scale(&inv_cent);
            if weight.is_zero() {
                continue;
            }
            for c in 0..namb {
                let qg = &ambient.values[c][gcol];
                if qg.is_zero() {
                    continue;
                }
                values[cp][c] = values[cp][c].add(&qg.mul(&weight));
            }
        }
    }
    for row in values.iter_mut() {
        for v in row.iter_mut() {
            *v = v.div_exact_poly(&levi.order_poly).map_err(|_| {
                Error::Validation(
                    "two-parameter values are not divisible by the Levi order".into(),
                )
            })?;
        }
    }

    let table = TwoParamTable {
        levi_group: levi.group.clone(),
        ambient_group: ambient.group.clone(),
        rows: levi.rows.iter().map(|r| r.label.clone()).collect(),
        cols: ambient.rows.iter().map(|r| r.label.clone()).collect(),
        values,
        resolved: None,
    };

    // Defining-system residual: for every identified column pair,
    // QG_ident(j)(c) = sum_c' g(c,c') QM_j(c') must hold identically.
    for (j, &gcol) in ident.map.iter().enumerate() {
        for c in 0..namb {
            let mut acc = SymExpr::zero();
            for cp in 0..nlev {
                acc = acc.add(&table.values[cp][c].mul(&levi.values[cp][j]));
            }
            if acc.sub(&ambient.values[c][gcol]) != SymExpr::zero() {
                return Err(Error::Validation(format!(
                    "defining system residual nonzero at Levi column {j}, class {}",
                    ambient.rows[c].label
                )));
            }
        }
    }

    Ok(table)
}

/// Solving with M = G and the identity identification must give the
/// identity matrix.
pub fn self_induction_check(table: &GreenTable) -> Result<bool, Error> {
    let ident = InducedIdentification { map: (0..table.cols.len()).collect() };
    let t = solve(table, table, &ident)?;
    for (r, row) in t.values.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let expect = if r == c { SymExpr::one() } else { SymExpr::zero() };
            if v != &expect {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
