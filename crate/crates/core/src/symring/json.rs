//! Canonical JSON form of values.
//!
//! A single-branch value is a flat term list
//! `[[sign-monomial, [[deg, "num/den"], ...]], ...]` with the monomial given
//! as a list of indeterminate names; a residue-split value wraps two such
//! lists as `{"cases": {"1": ..., "3": ...}}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};
use std::str::FromStr;

use super::poly::RationalPoly;
use super::sign::{SignExpr, SignIndet, SignMonomial};
use super::sym::SymExpr;
use crate::Error;

pub fn rational_to_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn rational_from_string(s: &str) -> Result<BigRational, Error> {
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim())
            .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => Ok(BigRational::new(parse_int(n)?, parse_int(d)?)),
        None => Ok(BigRational::from(parse_int(s)?)),
    }
}

pub fn poly_to_json(p: &RationalPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(&d, c)| json!([d, rational_to_string(c)]))
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<RationalPoly, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("polynomial: expected array".into()))?;
    let mut p = RationalPoly::zero();
    for t in arr {
        let pair = t
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse("polynomial term: expected [deg, coeff]".into()))?;
        let d = pair[0]
            .as_u64()
            .ok_or_else(|| Error::Parse("polynomial degree: expected integer".into()))?;
        let c = match &pair[1] {
            Value::String(s) => rational_from_string(s)?,
            Value::Number(n) => rational_from_string(&n.to_string())?,
            _ => return Err(Error::Parse("polynomial coefficient: expected string".into())),
        };
        p.add_term(d as u32, c);
    }
    Ok(p)
}

fn sign_expr_to_json(s: &SignExpr) -> Value {
    Value::Array(
        s.terms()
            .map(|(&m, p)| json!([m.names(), poly_to_json(p)]))
            .collect(),
    )
}

fn sign_expr_from_json(v: &Value) -> Result<SignExpr, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("value: expected term array".into()))?;
    let mut out = SignExpr::zero();
    for t in arr {
        let pair = t
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse("value term: expected [monomial, poly]".into()))?;
        let names = pair[0]
            .as_array()
            .ok_or_else(|| Error::Parse("monomial: expected name array".into()))?;
        let mut m = SignMonomial::ONE;
        for n in names {
            let name = n
                .as_str()
                .ok_or_else(|| Error::Parse("monomial name: expected string".into()))?;
            m = m.mul(SignMonomial::indet(SignIndet::from_name(name)?));
        }
        out.add_term(m, &poly_from_json(&pair[1])?);
    }
    Ok(out)
}

pub fn sym_to_json(x: &SymExpr) -> Value {
    match x {
        SymExpr::Single(s) => sign_expr_to_json(s),
        SymExpr::Split(a, b) => json!({
            "cases": { "1": sign_expr_to_json(a), "3": sign_expr_to_json(b) }
        }),
    }
}

pub fn sym_from_json(v: &Value) -> Result<SymExpr, Error> {
    if let Some(obj) = v.as_object() {
        let cases = obj
            .get("cases")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("split value: expected `cases`".into()))?;
        let r1 = cases
            .get("1")
            .ok_or_else(|| Error::Parse("split value: missing case `1`".into()))?;
        let r3 = cases
            .get("3")
            .ok_or_else(|| Error::Parse("split value: missing case `3`".into()))?;
        return Ok(SymExpr::split(
            sign_expr_from_json(r1)?,
            sign_expr_from_json(r3)?,
        ));
    }
    Ok(SymExpr::Single(sign_expr_from_json(v)?))
}
