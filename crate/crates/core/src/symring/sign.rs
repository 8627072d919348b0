//! The sign algebra: polynomials extended by involutive indeterminates.
//!
//! The engine ships with the fixed set {a10, a22, a27}; adding one means
//! extending [`INDETERMINATE_NAMES`], nothing else. Each indeterminate
//! squares to 1, so a monomial is a subset of the set, stored as a bitmask.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::RationalPoly;
use crate::Error;

/// Names of the sign indeterminates, in canonical order.
pub const INDETERMINATE_NAMES: &[&str] = &["a10", "a22", "a27"];

/// One of the sign indeterminates (index into [`INDETERMINATE_NAMES`]).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct SignIndet(pub u8);

impl SignIndet {
    pub fn from_name(name: &str) -> Result<Self, Error> {
        INDETERMINATE_NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| SignIndet(i as u8))
            .ok_or_else(|| Error::Arithmetic(format!("unknown sign indeterminate `{name}`")))
    }

    pub fn name(self) -> &'static str {
        INDETERMINATE_NAMES[self.0 as usize]
    }

    fn mask(self) -> u8 {
        1 << self.0
    }
}

/// A product of distinct sign indeterminates (each squared away), as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Default)]
pub struct SignMonomial(pub u8);

impl SignMonomial {
    pub const ONE: SignMonomial = SignMonomial(0);

    pub fn indet(i: SignIndet) -> Self {
        SignMonomial(i.mask())
    }

    /// Multiplication with the involution relations a_i^2 = 1.
    pub fn mul(self, other: Self) -> Self {
        SignMonomial(self.0 ^ other.0)
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn indets(self) -> impl Iterator<Item = SignIndet> {
        (0..INDETERMINATE_NAMES.len() as u8)
            .filter(move |i| self.0 & (1 << i) != 0)
            .map(SignIndet)
    }

    pub fn names(self) -> Vec<&'static str> {
        self.indets().map(|i| i.name()).collect()
    }
}

/// An element of Q[q] tensored with the sign algebra: a finite sum of
/// `monomial * polynomial` terms, with no zero polynomials stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SignExpr {
    terms: BTreeMap<SignMonomial, RationalPoly>,
}

impl SignExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(RationalPoly::one())
    }

    pub fn from_poly(p: RationalPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(SignMonomial::ONE, p);
        }
        Self { terms }
    }

    pub fn indet(i: SignIndet) -> Self {
        Self::term(SignMonomial::indet(i), RationalPoly::one())
    }

    pub fn term(m: SignMonomial, p: RationalPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(m, p);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a plain polynomial, if no sign indeterminates occur.
    pub fn as_poly(&self) -> Option<RationalPoly> {
        match self.terms.len() {
            0 => Some(RationalPoly::zero()),
            1 => {
                let (m, p) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(p.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignMonomial, &RationalPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: SignMonomial) -> RationalPoly {
        self.terms.get(&m).cloned().unwrap_or_else(RationalPoly::zero)
    }

    pub fn add_term(&mut self, m: SignMonomial, p: &RationalPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(RationalPoly::zero);
        *entry = entry.add(p);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&m, p) in &o.terms {
            out.add_term(m, p);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&m, p) in &o.terms {
            out.add_term(m, &p.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&m, p)| (m, p.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (&m1, p1) in &self.terms {
            for (&m2, p2) in &o.terms {
                out.add_term(m1.mul(m2), &p1.mul(p2));
            }
        }
        out
    }

    pub fn mul_poly(&self, p: &RationalPoly) -> Self {
        let mut out = Self::zero();
        for (&m, c) in &self.terms {
            out.add_term(m, &c.mul(p));
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&m, p)| (m, p.scale(c))).collect(),
        }
    }

    /// Exact division of every coefficient polynomial.
    pub fn div_exact_poly(&self, d: &RationalPoly) -> Result<Self, Error> {
        let mut out = Self::zero();
        for (&m, p) in &self.terms {
            out.add_term(m, &p.div_exact(d)?);
        }
        Ok(out)
    }

    /// Union of indeterminates occurring in any term.
    pub fn indets_used(&self) -> u8 {
        self.terms.keys().fold(0, |acc, m| acc | m.0)
    }

    /// Substitute +-1 values (one per indeterminate); any indeterminate that
    /// occurs but is not assigned is an error.
    pub fn substitute(&self, values: &BTreeMap<SignIndet, i8>) -> Result<Self, Error> {
        let mut out = Self::zero();
        for (&m, p) in &self.terms {
            let mut sign = 1i8;
            for i in m.indets() {
                match values.get(&i) {
                    Some(&v) => {
                        debug_assert!(v == 1 || v == -1);
                        sign *= v;
                    }
                    None => {
                        return Err(Error::Arithmetic(format!(
                            "unassigned sign indeterminate `{}`",
                            i.name()
                        )))
                    }
                }
            }
            let q = if sign == 1 { p.clone() } else { p.neg() };
            out.add_term(SignMonomial::ONE, &q);
        }
        Ok(out)
    }
}

impl fmt::Debug for SignExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "({:?})", p)?;
            } else {
                write!(f, "({:?})*{}", p, m.names().join("*"))?;
            }
        }
        Ok(())
    }
}

/// Residue classes of odd q modulo 4.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Residue {
    R1,
    R3,
}

impl Residue {
    pub fn all() -> [Residue; 2] {
        [Residue::R1, Residue::R3]
    }

    pub fn value(self) -> i64 {
        match self {
            Residue::R1 => 1,
            Residue::R3 => 3,
        }
    }

    pub fn of(q0: i64) -> Option<Residue> {
        match q0.rem_euclid(4) {
            1 => Some(Residue::R1),
            3 => Some(Residue::R3),
            _ => None,
        }
    }
}

/// An assignment of +-1 to sign indeterminates, possibly depending on the
/// residue of q mod 4. Every stored value is exactly +1 or -1.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SignAssignment {
    values: BTreeMap<SignIndet, (i8, i8)>,
}

impl SignAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_global(&mut self, i: SignIndet, v: i8) {
        assert!(v == 1 || v == -1);
        self.values.insert(i, (v, v));
    }

    pub fn set_per_residue(&mut self, i: SignIndet, r1: i8, r3: i8) {
        assert!((r1 == 1 || r1 == -1) && (r3 == 1 || r3 == -1));
        self.values.insert(i, (r1, r3));
    }

    pub fn get(&self, i: SignIndet, r: Residue) -> Option<i8> {
        self.values.get(&i).map(|&(v1, v3)| match r {
            Residue::R1 => v1,
            Residue::R3 => v3,
        })
    }

    /// True if some assigned indeterminate differs between the two residues.
    pub fn residue_dependent(&self) -> bool {
        self.values.values().any(|&(a, b)| a != b)
    }

    pub fn values_for(&self, r: Residue) -> BTreeMap<SignIndet, i8> {
        self.values
            .iter()
            .map(|(&i, &(v1, v3))| (i, if r == Residue::R1 { v1 } else { v3 }))
            .collect()
    }

    pub fn indets(&self) -> impl Iterator<Item = SignIndet> + '_ {
        self.values.keys().copied()
    }
}

impl fmt::Display for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &(v1, v3)) in &self.values {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            if v1 == v3 {
                write!(f, "{}={}", i.name(), if v1 > 0 { "+1" } else { "-1" })?;
            } else {
                write!(
                    f,
                    "{}={} (q=1 mod 4) / {} (q=3 mod 4)",
                    i.name(),
                    if v1 > 0 { "+1" } else { "-1" },
                    if v3 > 0 { "+1" } else { "-1" }
                )?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::poly::int;

    #[test]
    fn involution_squares_away() {
        let a22 = SignExpr::indet(SignIndet::from_name("a22").unwrap());
        let sq = a22.mul(&a22);
        assert_eq!(sq, SignExpr::one());
    }

    #[test]
    fn normalizes_product_form() {
        // 1/4 (a10 - 1)(q^4 + q^3) has exactly two monomials.
        let a10 = SignExpr::indet(SignIndet::from_name("a10").unwrap());
        let f = a10
            .sub(&SignExpr::one())
            .mul(&SignExpr::from_poly(RationalPoly::from_ints(&[0, 0, 0, 1, 1])))
            .scale(&super::super::poly::rat(1, 4));
        assert_eq!(f.terms().count(), 2);
        let poly_part = f.coeff(SignMonomial::ONE);
        assert_eq!(
            poly_part,
            RationalPoly::from_ints(&[0, 0, 0, 1, 1]).scale(&super::super::poly::rat(-1, 4))
        );
    }

    #[test]
    fn substitute_is_multiplicative_on_signs() {
        let a10 = SignIndet::from_name("a10").unwrap();
        let a22 = SignIndet::from_name("a22").unwrap();
        let x = SignExpr::indet(a10).mul(&SignExpr::indet(a22));
        let mut vals = BTreeMap::new();
        vals.insert(a10, -1i8);
        vals.insert(a22, -1i8);
        let sub = x.substitute(&vals).unwrap();
        assert_eq!(sub.as_poly().unwrap(), RationalPoly::constant(int(1)));
    }

    #[test]
    fn unassigned_indeterminate_is_reported() {
        let a27 = SignIndet::from_name("a27").unwrap();
        let x = SignExpr::indet(a27);
        let err = x.substitute(&BTreeMap::new()).unwrap_err();
        assert!(err.to_string().contains("a27"));
    }
}
