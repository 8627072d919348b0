//! Resolution of the sign indeterminates: enumerate the eight +-1
//! assignments per residue class of q mod 4 and keep exactly those under
//! which every split-Levi entry is nonnegative (for all real q from the
//! smallest odd prime power of the residue class on) and every entry of
//! every table is integer valued on the residue class.

use crate::symring::checks::{check_integral_branch, check_nonneg_branch};
use crate::symring::sign::INDETERMINATE_NAMES;
use crate::symring::{Residue, SignAssignment, SignIndet};
use crate::Error;

use super::solve::TwoParamTable;

/// Outcome of the scan, with the survivor count per residue for reporting.
pub struct ResolveOutcome {
    pub assignment: SignAssignment,
    pub candidates_checked: usize,
}

/// Smallest odd prime power in the residue class, the positivity threshold.
fn q_min(r: Residue) -> i64 {
    match r {
        Residue::R1 => 5,
        Residue::R3 => 3,
    }
}

/// `tables` pairs each table with whether its Levi is split (contained in an
/// F-stable parabolic), which switches the positivity requirement on.
pub fn resolve_signs(tables: &[(&TwoParamTable, bool)]) -> Result<ResolveOutcome, Error> {
    let nsigns = INDETERMINATE_NAMES.len();
    let mut per_residue: Vec<Vec<u8>> = Vec::new();
    let mut checked = 0;

    for r in Residue::all() {
        let mut survivors = Vec::new();
        for bits in 0..(1u8 << nsigns) {
            checked += 1;
            let mut asn = SignAssignment::new();
            for i in 0..nsigns {
                let v = if bits & (1 << i) != 0 { -1 } else { 1 };
                asn.set_global(SignIndet(i as u8), v);
            }
            if assignment_passes(tables, &asn, r)? {
                survivors.push(bits);
            }
        }
        match survivors.len() {
            1 => per_residue.push(survivors),
            0 => {
                return Err(Error::Validation(format!(
                    "no sign assignment satisfies positivity and integrality for q = {} mod 4",
                    r.value()
                )))
            }
            n => {
                return Err(Error::Validation(format!(
                    "{n} sign assignments survive for q = {} mod 4; upstream data error",
                    r.value()
                )))
            }
        }
    }

    let mut assignment = SignAssignment::new();
    for i in 0..nsigns {
        let v1 = if per_residue[0][0] & (1 << i) != 0 { -1 } else { 1 };
        let v3 = if per_residue[1][0] & (1 << i) != 0 { -1 } else { 1 };
        assignment.set_per_residue(SignIndet(i as u8), v1, v3);
    }
    Ok(ResolveOutcome { assignment, candidates_checked: checked })
}

fn assignment_passes(
    tables: &[(&TwoParamTable, bool)],
    asn: &SignAssignment,
    r: Residue,
) -> Result<bool, Error> {
    for (table, split) in tables {
        for row in &table.values {
            for v in row {
                let sub = v.substitute(asn)?;
                if !check_integral_branch(&sub, r)? {
                    return Ok(false);
                }
                if *split && !check_nonneg_branch(&sub, r, q_min(r))? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
