//! Command-line orchestration: table emission, verification reports and
//! machine-readable exports. Exit codes: 0 pass, 1 validation failure,
//! 2 usage error, 3 data error.

use std::sync::OnceLock;

use serde_json::json;

use crate::greenfn::{green_table, transfer_via_covering, verify_orthogonality, GreenTable};
use crate::groupdata::{
    levi124_context, levi124_covering, sl2_context, spin8_context, DataSource, GroupContext, Twist,
};
use crate::render::{render_green, render_twoparam, RenderSpec};
use crate::symring::{cyclotomic_display, Residue, SignAssignment, SignIndet};
use crate::twoparam::{identify, resolve_signs, self_induction_check, solve, TwoParamTable};
use crate::Error;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) => 1,
        Error::Parse(_) | Error::Data(_) => 3,
        Error::Arithmetic(_) | Error::Coxeter(_) | Error::Decomposition(_) => 3,
    }
}

/// Lazily computed engine state shared by the subcommands.
pub struct Pipeline {
    src: DataSource,
    spin8: OnceLock<GroupContext>,
    spin8_table: OnceLock<GreenTable>,
    sl2_table: OnceLock<GreenTable>,
}

impl Pipeline {
    pub fn new(src: DataSource) -> Self {
        Pipeline {
            src,
            spin8: OnceLock::new(),
            spin8_table: OnceLock::new(),
            sl2_table: OnceLock::new(),
        }
    }

    pub fn spin8(&self) -> Result<&GroupContext, Error> {
        if self.spin8.get().is_none() {
            let ctx = spin8_context(&self.src)?;
            let _ = self.spin8.set(ctx);
        }
        Ok(self.spin8.get().unwrap())
    }

    pub fn spin8_table(&self) -> Result<&GreenTable, Error> {
        if self.spin8_table.get().is_none() {
            let t = green_table(self.spin8()?)?;
            let _ = self.spin8_table.set(t);
        }
        Ok(self.spin8_table.get().unwrap())
    }

    pub fn sl2_table(&self) -> Result<&GreenTable, Error> {
        if self.sl2_table.get().is_none() {
            let ctx = sl2_context(&self.src)?;
            let t = green_table(&ctx)?;
            let _ = self.sl2_table.set(t);
        }
        Ok(self.sl2_table.get().unwrap())
    }

    /// The twisted SL2 table: the same functions enumerated relative to the
    /// nonsplit form, i.e. with the two torus columns exchanged.
    pub fn sl2_table_twisted(&self) -> Result<GreenTable, Error> {
        let t = self.sl2_table()?;
        let mut out = t.clone();
        out.cols.swap(0, 1);
        for row in out.values.iter_mut() {
            row.swap(0, 1);
        }
        let report = verify_orthogonality(&out);
        if !report.is_empty() {
            return Err(Error::Validation(report.summary()));
        }
        Ok(out)
    }

    pub fn levi_table(&self, twist: Twist) -> Result<(GroupContext, GreenTable), Error> {
        let weyl = self.spin8()?.weyl.clone();
        let ctx = levi124_context(&self.src, weyl, twist)?;
        let t = transfer_via_covering(&ctx, self.sl2_table()?, &levi124_covering(), twist)?;
        Ok((ctx, t))
    }

    pub fn twoparam(&self, twist: Twist) -> Result<TwoParamTable, Error> {
        let (levi_ctx, m) = self.levi_table(twist)?;
        let ident = identify(self.spin8()?, &levi_ctx, twist)?;
        solve(self.spin8_table()?, &m, &ident)
    }

    /// Both 2-parameter tables and the resolved sign assignment.
    pub fn resolved(&self) -> Result<(TwoParamTable, TwoParamTable, SignAssignment), Error> {
        let split = self.twoparam(Twist::Split)?;
        let twisted = self.twoparam(Twist::Twisted)?;
        let out = resolve_signs(&[(&split, true), (&twisted, false)])?;
        Ok((split, twisted, out.assignment))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Csv,
    Json,
}

fn csv_of(rows: &[String], cols: &[String], cells: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str("class");
    for c in cols {
        out.push(',');
        out.push_str(&format!("\"{}\"", c));
    }
    out.push('\n');
    for (r, label) in rows.iter().enumerate() {
        out.push_str(&format!("\"{}\"", label));
        for v in &cells[r] {
            out.push(',');
            out.push_str(&format!("\"{}\"", v));
        }
        out.push('\n');
    }
    out
}

/// `green`: emit a generalized Green function table with its verification.
pub fn cmd_green(
    pipeline: &Pipeline,
    group: &str,
    twist: Twist,
    format: Format,
    import: Option<&str>,
) -> Result<String, Error> {
    let table: GreenTable = if let Some(path) = import {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Data(format!("cannot read {path}: {e}")))?;
        let t = GreenTable::from_json(
            &serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{e}")))?,
        )?;
        // Imported tables run the identical validation stack.
        let report = verify_orthogonality(&t);
        if !report.is_empty() {
            return Err(Error::Validation(format!(
                "imported table fails orthogonality: {}",
                report.summary()
            )));
        }
        t
    } else {
        match group {
            "spin8" => self_clone(pipeline.spin8_table()?),
            "sl2" => match twist {
                Twist::Split => self_clone(pipeline.sl2_table()?),
                Twist::Twisted => pipeline.sl2_table_twisted()?,
            },
            "levi124" => pipeline.levi_table(twist)?.1,
            other => return Err(Error::Data(format!("unknown group `{other}`"))),
        }
    };
    let report = verify_orthogonality(&table);
    let status = if report.is_empty() { "PASS" } else { "FAIL" };
    let body = match format {
        Format::Ascii => {
            let mut s = format!(
                "group {}  ({} classes x {} functions)\n\n",
                table.group,
                table.rows.len(),
                table.cols.len()
            );
            s.push_str(&render_green(&table, &RenderSpec::default()));
            s.push_str(&format!("\northogonality: {status} ({})\n", report.summary()));
            s
        }
        Format::Csv => {
            let rows: Vec<String> = table.rows.iter().map(|r| r.label.clone()).collect();
            let cols: Vec<String> = table.cols.iter().map(|c| c.label.clone()).collect();
            let cells: Vec<Vec<String>> = table
                .values
                .iter()
                .map(|row| row.iter().map(cyclotomic_display).collect())
                .collect();
            csv_of(&rows, &cols, &cells)
        }
        Format::Json => serde_json::to_string_pretty(&table.to_json()).unwrap() + "\n",
    };
    if report.is_empty() {
        Ok(body)
    } else {
        Err(Error::Validation(format!("orthogonality failed\n{body}")))
    }
}

fn self_clone(t: &GreenTable) -> GreenTable {
    t.clone()
}

/// `twoparam`: emit a 2-parameter table. In symbolic mode the indeterminates
/// whose resolved values do not depend on the residue are substituted and
/// the residue-dependent ones stay symbolic, which is the published shape.
pub fn cmd_twoparam(
    pipeline: &Pipeline,
    twist: Twist,
    resolve: bool,
    residue: Option<Residue>,
    format: Format,
) -> Result<String, Error> {
    let (split, twisted, assignment) = pipeline.resolved()?;
    let table = match twist {
        Twist::Split => split,
        Twist::Twisted => twisted,
    };
    let table = if resolve {
        let full = table.substitute(&assignment)?;
        match residue {
            None => full,
            Some(r) => {
                let mut branch = full;
                for row in branch.values.iter_mut() {
                    for v in row.iter_mut() {
                        *v = crate::symring::SymExpr::from_sign(v.branch(r).clone());
                    }
                }
                branch
            }
        }
    } else {
        // Symbolic: substitute only residue-independent signs.
        let stable: Vec<SignIndet> = assignment
            .indets()
            .filter(|&i| {
                assignment.get(i, Residue::R1) == assignment.get(i, Residue::R3)
            })
            .collect();
        table.substitute_partial(&assignment, &stable)
    };
    match format {
        Format::Ascii => Ok(render_twoparam(&table, &RenderSpec::default())),
        Format::Csv => {
            let cells: Vec<Vec<String>> = table
                .values
                .iter()
                .map(|row| row.iter().map(cyclotomic_display).collect())
                .collect();
            Ok(csv_of(&table.rows, &table.cols, &cells))
        }
        Format::Json => {
            let metadata = json!({
                "levi_nodes": [1, 2, 4],
                "twist": twist.name(),
                "signs": if resolve { format!("{}", assignment) } else {
                    "a22 symbolic; residue-independent signs substituted".to_string()
                },
                "caveat": "the identification of induced generalized Green functions \
                           for the A1+A1 blocks is established for large q only",
            });
            Ok(serde_json::to_string_pretty(&table.to_json(metadata)).unwrap() + "\n")
        }
    }
}

/// `verify`: run a named invariant suite, report one line per check.
pub fn cmd_verify(pipeline: &Pipeline, what: &str) -> Result<String, Error> {
    let mut out = String::new();
    let mut ok = true;
    let mut check = |name: &str, pass: bool, out: &mut String| {
        out.push_str(&format!("{}: {}\n", name, if pass { "PASS" } else { "FAIL" }));
        if !pass {
            ok = false;
        }
    };
    match what {
        "orthogonality" => {
            let t = pipeline.spin8_table()?;
            check("spin8 orthogonality (28 functions)", verify_orthogonality(t).is_empty(), &mut out);
            for twist in [Twist::Split, Twist::Twisted] {
                let (_, m) = pipeline.levi_table(twist)?;
                check(
                    &format!("levi124 {} orthogonality (14 functions)", twist.name()),
                    verify_orthogonality(&m).is_empty(),
                    &mut out,
                );
            }
            check("sl2 split orthogonality", verify_orthogonality(pipeline.sl2_table()?).is_empty(), &mut out);
            check(
                "sl2 twisted orthogonality",
                verify_orthogonality(&pipeline.sl2_table_twisted()?).is_empty(),
                &mut out,
            );
        }
        "self-induction" => {
            check("spin8 self-induction (28x28 identity)", self_induction_check(pipeline.spin8_table()?)?, &mut out);
            for twist in [Twist::Split, Twist::Twisted] {
                let (_, m) = pipeline.levi_table(twist)?;
                check(
                    &format!("levi124 {} self-induction (14x14 identity)", twist.name()),
                    self_induction_check(&m)?,
                    &mut out,
                );
            }
            check("sl2 self-induction (3x3 identity)", self_induction_check(pipeline.sl2_table()?)?, &mut out);
        }
        "counts" => {
            let ctx = pipeline.spin8()?;
            check("spin8: 12 algebraic classes", ctx.catalog.classes.len() == 12, &mut out);
            check("spin8: 28 finite classes", ctx.catalog.total_finite_classes() == 28, &mut out);
            let sizes: Vec<usize> = ctx.blocks.iter().map(|b| b.pairs.len()).collect();
            check("spin8: 4 blocks of sizes 13+5+5+5", sizes == vec![13, 5, 5, 5], &mut out);
            let (lctx, m) = pipeline.levi_table(Twist::Split)?;
            check("levi124: 14 finite classes in 8", lctx.catalog.total_finite_classes() == 14 && lctx.catalog.classes.len() == 8, &mut out);
            let lsizes: Vec<usize> = lctx.blocks.iter().map(|b| b.pairs.len()).collect();
            check("levi124: 4 blocks of sizes 8+2+2+2", lsizes == vec![8, 2, 2, 2], &mut out);
            let q24 = crate::symring::RationalPoly::monomial(24, crate::symring::poly::int(1));
            check("spin8: class sizes sum to q^24", pipeline.spin8_table()?.unipotent_count() == q24, &mut out);
            let q6 = crate::symring::RationalPoly::monomial(6, crate::symring::poly::int(1));
            check("levi124: class sizes sum to q^6", m.unipotent_count() == q6, &mut out);
        }
        "signs" => {
            let (_, _, assignment) = pipeline.resolved()?;
            out.push_str(&format!("resolved signs: {}\n", assignment));
            let a = |n: &str| SignIndet::from_name(n).unwrap();
            check("a10 = +1 on both residues", assignment.get(a("a10"), Residue::R1) == Some(1) && assignment.get(a("a10"), Residue::R3) == Some(1), &mut out);
            check("a27 = +1 on both residues", assignment.get(a("a27"), Residue::R1) == Some(1) && assignment.get(a("a27"), Residue::R3) == Some(1), &mut out);
            check("a22 = +1 for q=1 mod 4, -1 for q=3 mod 4", assignment.get(a("a22"), Residue::R1) == Some(1) && assignment.get(a("a22"), Residue::R3) == Some(-1), &mut out);
        }
        other => return Err(Error::Data(format!("unknown verification suite `{other}`"))),
    }
    if ok {
        Ok(out)
    } else {
        Err(Error::Validation(out))
    }
}
