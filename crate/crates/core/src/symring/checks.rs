//! Exact positivity and integrality decision procedures.
//!
//! `check_nonneg` decides p(q) >= 0 for all real q >= q_min: the fast path
//! inspects the Taylor expansion at q_min; when coefficient signs are mixed
//! it falls back to exact root isolation via Sturm sequences.
//!
//! `check_integral` decides integer-valuedness on a residue class of odd q,
//! using the fact that a degree-d polynomial is integer valued on an
//! arithmetic progression iff it is integral at d+1 consecutive points of it.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{int, RationalPoly};
use super::sign::Residue;
use super::sym::SymExpr;
use crate::Error;

/// True iff every branch of `x` is >= 0 for all real q >= q_min.
/// Errors if sign indeterminates remain.
pub fn check_nonneg(x: &SymExpr, q_min: i64) -> Result<bool, Error> {
    require_sign_free(x)?;
    for r in Residue::all() {
        let p = x.branch(r).as_poly().expect("sign-free");
        if !poly_nonneg_from(&p, q_min) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Residue-aware variant: checks branch `r` only, from `q_min` on.
pub fn check_nonneg_branch(x: &SymExpr, r: Residue, q_min: i64) -> Result<bool, Error> {
    require_sign_free(x)?;
    let p = x.branch(r).as_poly().expect("sign-free");
    Ok(poly_nonneg_from(&p, q_min))
}

/// True iff every branch takes integer values at every odd integer q of its
/// residue class. A single (unsplit) value must be integral on both classes.
pub fn check_integral(x: &SymExpr) -> Result<bool, Error> {
    require_sign_free(x)?;
    for r in Residue::all() {
        let p = x.branch(r).as_poly().expect("sign-free");
        if !poly_integral_on_residue(&p, r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Residue-aware variant of `check_integral`.
pub fn check_integral_branch(x: &SymExpr, r: Residue) -> Result<bool, Error> {
    require_sign_free(x)?;
    let p = x.branch(r).as_poly().expect("sign-free");
    Ok(poly_integral_on_residue(&p, r))
}

fn require_sign_free(x: &SymExpr) -> Result<(), Error> {
    if x.has_signs() {
        return Err(Error::Arithmetic(
            "check requires a sign-free value; indeterminates remain".into(),
        ));
    }
    Ok(())
}

/// Integer-valuedness of p at all q = r (mod 4): test deg(p)+1 consecutive
/// points of the progression.
fn poly_integral_on_residue(p: &RationalPoly, r: Residue) -> bool {
    let d = p.degree().unwrap_or(0);
    (0..=d as i64).all(|k| p.eval_int(r.value() + 4 * k).is_integer())
}

/// Exact decision of p(q) >= 0 for all real q >= a.
pub fn poly_nonneg_from(p: &RationalPoly, a: i64) -> bool {
    if p.is_zero() {
        return true;
    }
    if p.leading_coeff().is_negative() {
        return false;
    }
    let at_a = p.eval_int(a);
    if at_a.is_negative() {
        return false;
    }
    // Taylor shift: p(a + t) with all coefficients >= 0 forces p >= 0 on t >= 0.
    let shifted = p.shift(&int(a));
    if shifted.coeffs_nonneg() {
        return true;
    }
    // Mixed signs: isolate the real roots of the squarefree part on (0, B]
    // and sample the sign of p between consecutive roots.
    let s = shifted.squarefree_part();
    let bound = cauchy_bound(&s);
    let mut roots = isolate_roots(&s, BigRational::zero(), bound);
    roots.sort_by(|x, y| x.0.cmp(&y.0));
    // Sample points: midpoints between root intervals, plus one past the last.
    let mut samples: Vec<BigRational> = Vec::new();
    let mut prev_right = BigRational::zero();
    for (lo, hi) in &roots {
        if lo > &prev_right {
            samples.push((lo + &prev_right) / int(2));
        }
        prev_right = hi.clone();
    }
    samples.push(prev_right + BigRational::one());
    samples
        .iter()
        .all(|x| !shifted.eval(x).is_negative())
}

/// Cauchy root bound: 1 + max |c_i| / |lead|.
fn cauchy_bound(p: &RationalPoly) -> BigRational {
    let lead = p.leading_coeff().abs();
    let mut m = BigRational::zero();
    for (_, c) in p.terms() {
        let a = c.abs();
        if a > m {
            m = a;
        }
    }
    BigRational::one() + m / lead
}

fn sturm_chain(p: &RationalPoly) -> Vec<RationalPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

fn sign_changes(chain: &[RationalPoly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Isolating intervals (lo, hi] for the distinct real roots of squarefree `s`
/// in (lo, hi]. Exact rational roots may be returned as degenerate [x, x].
fn isolate_roots(s: &RationalPoly, lo: BigRational, hi: BigRational) -> Vec<(BigRational, BigRational)> {
    let chain = sturm_chain(s);
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let n = sign_changes(&chain, &a).saturating_sub(sign_changes(&chain, &b));
        match n {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = (&a + &b) / int(2);
                if s.eval(&mid).is_zero() {
                    out.push((mid.clone(), mid.clone()));
                    // Peel off a tiny interval around the exact root so the
                    // two halves count the remaining roots correctly.
                    let eps = smallest_gap(&a, &b);
                    stack.push((a, &mid - &eps));
                    stack.push((&mid + &eps, b));
                } else {
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
    }
    out
}

fn smallest_gap(a: &BigRational, b: &BigRational) -> BigRational {
    // Any positive width smaller than the minimal root gap would do; shrink
    // the interval by a safe factor tied to its current width.
    (b - a) / int(1 << 20)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::poly::rat;

    #[test]
    fn nonneg_basics() {
        // q^4 + q^3 >= 0 for q >= 2.
        let p = SymExpr::from_poly(RationalPoly::from_ints(&[0, 0, 0, 1, 1]));
        assert!(check_nonneg(&p, 2).unwrap());
        // -(q^4+q^3)/2 is negative there.
        let n = p.scale(&rat(-1, 2));
        assert!(!check_nonneg(&n, 2).unwrap());
        // q - 3 is negative at q = 2.
        let m = SymExpr::from_poly(RationalPoly::from_ints(&[-3, 1]));
        assert!(!check_nonneg(&m, 2).unwrap());
        assert!(check_nonneg(&m, 3).unwrap());
    }

    #[test]
    fn nonneg_needs_root_isolation() {
        // (q-5)^2 (q-7)^2 has mixed Taylor signs at 2 but is a square.
        let f = RationalPoly::from_ints(&[-5, 1]).pow(2).mul(&RationalPoly::from_ints(&[-7, 1]).pow(2));
        assert!(check_nonneg(&SymExpr::from_poly(f), 2).unwrap());
        // (q-5)(q-7)^2 dips below zero before 5.
        let g = RationalPoly::from_ints(&[-5, 1]).mul(&RationalPoly::from_ints(&[-7, 1]).pow(2));
        assert!(!check_nonneg(&SymExpr::from_poly(g.clone()), 2).unwrap());
        assert!(check_nonneg(&SymExpr::from_poly(g), 5).unwrap());
    }

    #[test]
    fn integrality_on_residues() {
        // (q-1)/4 is integral exactly on q = 1 mod 4.
        let p = RationalPoly::from_ints(&[-1, 1]).scale(&rat(1, 4));
        let x = SymExpr::from_poly(p);
        assert!(check_integral_branch(&x, Residue::R1).unwrap());
        assert!(!check_integral_branch(&x, Residue::R3).unwrap());
        assert!(!check_integral(&x).unwrap());
        // The constant 1/2 is never integral.
        let half = SymExpr::from_poly(RationalPoly::constant(rat(1, 2)));
        assert!(!check_integral(&half).unwrap());
        // q^2 + q is integral everywhere; so is q(q-1)/2.
        let tri = RationalPoly::from_ints(&[0, -1, 1]).scale(&rat(1, 2));
        assert!(check_integral(&SymExpr::from_poly(tri)).unwrap());
    }

    #[test]
    fn sign_free_requirement() {
        let a = SymExpr::indet(crate::symring::SignIndet::from_name("a10").unwrap());
        assert!(check_nonneg(&a, 2).is_err());
        assert!(check_integral(&a).is_err());
    }
}
