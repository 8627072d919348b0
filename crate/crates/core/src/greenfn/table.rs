//! The Green-function table type and its JSON serialization.

use serde_json::{json, Value};

use crate::symring::json::{poly_from_json, poly_to_json, sym_from_json, sym_to_json};
use crate::symring::{RationalPoly, SymExpr};
use crate::Error;

/// One row: a finite unipotent class with its size.
#[derive(Clone, Debug)]
pub struct GreenRow {
    pub class_index: usize,
    pub finite_index: usize,
    /// e.g. "3221,2".
    pub label: String,
    pub size: RationalPoly,
}

/// One column: a generalized Green function, indexed by block and an
/// F-class of the block's relative Weyl group.
#[derive(Clone, Debug)]
pub struct GreenColumn {
    pub block: usize,
    pub wclass: usize,
    /// e.g. "T:121" (block name, class word) -- stable, not contractual.
    pub label: String,
    /// Norm (Q, Q) = norm_num / norm_den.
    pub norm_num: RationalPoly,
    pub norm_den: RationalPoly,
}

/// Matrix of Green function values: rows are finite classes, columns are
/// Green functions.
#[derive(Clone)]
pub struct GreenTable {
    pub group: String,
    pub rows: Vec<GreenRow>,
    pub cols: Vec<GreenColumn>,
    /// values[row][col].
    pub values: Vec<Vec<SymExpr>>,
    /// |G(q)|.
    pub order_poly: RationalPoly,
}

impl GreenTable {
    pub fn value(&self, row: usize, col: usize) -> &SymExpr {
        &self.values[row][col]
    }

    pub fn row_by_label(&self, label: &str) -> Result<usize, Error> {
        self.rows
            .iter()
            .position(|r| r.label == label)
            .ok_or_else(|| Error::Data(format!("no row labeled `{label}`")))
    }

    /// Total number of unipotent elements: sum of row sizes.
    pub fn unipotent_count(&self) -> RationalPoly {
        let mut s = RationalPoly::zero();
        for r in &self.rows {
            s = s.add(&r.size);
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": "greenfn-table-v1",
            "group": self.group,
            "order": poly_to_json(&self.order_poly),
            "rows": self.rows.iter().map(|r| json!({
                "label": r.label,
                "size": poly_to_json(&r.size),
            })).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(|c| json!({
                "block": c.block,
                "w": c.label,
                "norm_num": poly_to_json(&c.norm_num),
                "norm_den": poly_to_json(&c.norm_den),
            })).collect::<Vec<_>>(),
            "values": self.values.iter().map(|row| {
                row.iter().map(sym_to_json).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<GreenTable, Error> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("table: expected object".into()))?;
        let schema = obj.get("schema").and_then(Value::as_str).unwrap_or("");
        if schema != "greenfn-table-v1" {
            return Err(Error::Data(format!("unsupported table schema `{schema}`")));
        }
        let group = obj
            .get("group")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("table: missing group".into()))?
            .to_string();
        let order_poly = poly_from_json(
            obj.get("order").ok_or_else(|| Error::Parse("table: missing order".into()))?,
        )?;
        let mut rows = Vec::new();
        for (i, r) in obj
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("table: missing rows".into()))?
            .iter()
            .enumerate()
        {
            rows.push(GreenRow {
                class_index: i,
                finite_index: 0,
                label: r
                    .get("label")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("row: missing label".into()))?
                    .to_string(),
                size: poly_from_json(
                    r.get("size").ok_or_else(|| Error::Parse("row: missing size".into()))?,
                )?,
            });
        }
        let mut cols = Vec::new();
        for c in obj
            .get("cols")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("table: missing cols".into()))?
        {
            cols.push(GreenColumn {
                block: c.get("block").and_then(Value::as_u64).unwrap_or(0) as usize,
                wclass: 0,
                label: c
                    .get("w")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("col: missing w".into()))?
                    .to_string(),
                norm_num: poly_from_json(
                    c.get("norm_num")
                        .ok_or_else(|| Error::Parse("col: missing norm_num".into()))?,
                )?,
                norm_den: poly_from_json(
                    c.get("norm_den")
                        .ok_or_else(|| Error::Parse("col: missing norm_den".into()))?,
                )?,
            });
        }
        let mut values = Vec::new();
        for row in obj
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("table: missing values".into()))?
        {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse("values: expected arrays".into()))?
                .iter()
                .map(sym_from_json)
                .collect::<Result<Vec<_>, _>>()?;
            values.push(row);
        }
        if values.len() != rows.len() || values.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::Data("table value matrix has wrong shape".into()));
        }
        Ok(GreenTable { group, rows, cols, values, order_poly })
    }
}
