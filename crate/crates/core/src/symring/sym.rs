//! The universal value type of the tables: a sign expression, optionally
//! split by the residue of q modulo 4.
//!
//! A split whose two branches agree is normalized back to the single form.
//! Only the modulus 4 is supported; the engine rejects anything else.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::RationalPoly;
use super::sign::{Residue, SignAssignment, SignExpr, SignIndet, SignMonomial};
use crate::Error;

#[derive(Clone, PartialEq, Eq)]
pub enum SymExpr {
    Single(SignExpr),
    /// Branches for q = 1 mod 4 and q = 3 mod 4, known to differ.
    Split(SignExpr, SignExpr),
}

impl SymExpr {
    pub fn zero() -> Self {
        SymExpr::Single(SignExpr::zero())
    }

    pub fn one() -> Self {
        SymExpr::Single(SignExpr::one())
    }

    pub fn from_poly(p: RationalPoly) -> Self {
        SymExpr::Single(SignExpr::from_poly(p))
    }

    pub fn from_sign(s: SignExpr) -> Self {
        SymExpr::Single(s)
    }

    pub fn indet(i: SignIndet) -> Self {
        SymExpr::Single(SignExpr::indet(i))
    }

    pub fn split(r1: SignExpr, r3: SignExpr) -> Self {
        if r1 == r3 {
            SymExpr::Single(r1)
        } else {
            SymExpr::Split(r1, r3)
        }
    }

    pub fn branch(&self, r: Residue) -> &SignExpr {
        match (self, r) {
            (SymExpr::Single(s), _) => s,
            (SymExpr::Split(a, _), Residue::R1) => a,
            (SymExpr::Split(_, b), Residue::R3) => b,
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self, SymExpr::Split(..))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SymExpr::Single(s) => s.is_zero(),
            SymExpr::Split(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    /// The value as a plain polynomial: single branch, no signs.
    pub fn as_poly(&self) -> Option<RationalPoly> {
        match self {
            SymExpr::Single(s) => s.as_poly(),
            SymExpr::Split(..) => None,
        }
    }

    fn zip(&self, o: &Self, f: impl Fn(&SignExpr, &SignExpr) -> SignExpr) -> Self {
        match (self, o) {
            (SymExpr::Single(a), SymExpr::Single(b)) => SymExpr::Single(f(a, b)),
            _ => {
                // Case-splits propagate: single operands broadcast to both branches.
                let r1 = f(self.branch(Residue::R1), o.branch(Residue::R1));
                let r3 = f(self.branch(Residue::R3), o.branch(Residue::R3));
                SymExpr::split(r1, r3)
            }
        }
    }

    fn map(&self, f: impl Fn(&SignExpr) -> SignExpr) -> Self {
        match self {
            SymExpr::Single(s) => SymExpr::Single(f(s)),
            SymExpr::Split(a, b) => SymExpr::split(f(a), f(b)),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.mul(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|s| s.neg())
    }

    pub fn mul_poly(&self, p: &RationalPoly) -> Self {
        self.map(|s| s.mul_poly(p))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|s| s.scale(c))
    }

    /// Division by a nonzero rational scalar.
    pub fn scalar_div(&self, c: &BigRational) -> Result<Self, Error> {
        if c.is_zero() {
            return Err(Error::Arithmetic("division by zero rational".into()));
        }
        Ok(self.scale(&c.recip()))
    }

    pub fn div_exact_poly(&self, d: &RationalPoly) -> Result<Self, Error> {
        match self {
            SymExpr::Single(s) => Ok(SymExpr::Single(s.div_exact_poly(d)?)),
            SymExpr::Split(a, b) => Ok(SymExpr::split(
                a.div_exact_poly(d)?,
                b.div_exact_poly(d)?,
            )),
        }
    }

    /// Bitmask of indeterminates occurring in either branch.
    pub fn indets_used(&self) -> u8 {
        match self {
            SymExpr::Single(s) => s.indets_used(),
            SymExpr::Split(a, b) => a.indets_used() | b.indets_used(),
        }
    }

    pub fn has_signs(&self) -> bool {
        self.indets_used() != 0
    }

    /// Substitute signs from an assignment. Branches are substituted with
    /// their residue's values; a single value acquires a split exactly when
    /// the relevant assignments differ between residues. The result carries
    /// no sign indeterminates.
    pub fn substitute(&self, s: &SignAssignment) -> Result<Self, Error> {
        let r1 = self
            .branch(Residue::R1)
            .substitute(&s.values_for(Residue::R1))?;
        let r3 = self
            .branch(Residue::R3)
            .substitute(&s.values_for(Residue::R3))?;
        Ok(SymExpr::split(r1, r3))
    }

    /// Substitute only the given indeterminates, leaving others symbolic.
    pub fn substitute_partial(&self, s: &SignAssignment, which: &[SignIndet]) -> Self {
        let subst_branch = |expr: &SignExpr, r: Residue| -> SignExpr {
            let mut out = SignExpr::zero();
            for (&m, p) in expr.terms() {
                let mut mono = SignMonomial::ONE;
                let mut sign = 1i8;
                for i in m.indets() {
                    if which.contains(&i) {
                        if let Some(v) = s.get(i, r) {
                            sign *= v;
                            continue;
                        }
                    }
                    mono = mono.mul(SignMonomial::indet(i));
                }
                let q = if sign == 1 { p.clone() } else { p.neg() };
                out.add_term(mono, &q);
            }
            out
        };
        SymExpr::split(
            subst_branch(self.branch(Residue::R1), Residue::R1),
            subst_branch(self.branch(Residue::R3), Residue::R3),
        )
    }

    /// Exact rational value at an integer q0. The value must carry no sign
    /// indeterminates, and a residue-split value requires odd q0.
    pub fn eval_at(&self, q0: i64) -> Result<BigRational, Error> {
        if self.has_signs() {
            let names: Vec<_> = SignMonomial(self.indets_used()).names();
            return Err(Error::Arithmetic(format!(
                "cannot evaluate: indeterminates remain ({})",
                names.join(", ")
            )));
        }
        let branch = match self {
            SymExpr::Single(s) => s,
            SymExpr::Split(..) => {
                let r = Residue::of(q0).ok_or_else(|| {
                    Error::Arithmetic(format!(
                        "cannot evaluate residue-split value at even q0 = {q0}"
                    ))
                })?;
                self.branch(r)
            }
        };
        Ok(branch
            .as_poly()
            .expect("sign-free branch")
            .eval_int(q0))
    }
}

impl fmt::Debug for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymExpr::Single(s) => write!(f, "{:?}", s),
            SymExpr::Split(a, b) => write!(f, "[q=1(4): {:?} | q=3(4): {:?}]", a, b),
        }
    }
}
