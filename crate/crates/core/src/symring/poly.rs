//! Univariate polynomials in `q` with exact rational coefficients.
//!
//! Coefficients are stored sparsely as a map from degree to a nonzero
//! rational; the zero polynomial has an empty map. All arithmetic is exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// A polynomial in `q` over the rationals. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    coeffs: BTreeMap<u32, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        Self::monomial(1, int(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(deg: u32, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        Self { coeffs }
    }

    /// Build from `(degree, coefficient)` pairs; repeated degrees are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    /// Build from integer coefficients listed by ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(d, &c)| (d as u32, int(c))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.get(0).is_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Smallest degree with nonzero coefficient (the q-adic valuation).
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn get(&self, deg: u32) -> BigRational {
        self.coeffs.get(&deg).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.degree().map(|d| self.get(d)).unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, deg: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(deg).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, c) in &other.coeffs {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, c) in &other.coeffs {
            out.add_term(d, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&d1, c1) in &self.coeffs {
            for (&d2, c2) in &other.coeffs {
                out.add_term(d1 + d2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&d, k)| (d, k * c)).collect(),
        }
    }

    pub fn mul_qpow(&self, k: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&d, c)| (d + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut out = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        out
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Horner over the sparse terms, highest degree first.
        let mut acc = BigRational::zero();
        let mut last_deg: Option<u32> = None;
        for (&d, c) in self.coeffs.iter().rev() {
            if let Some(prev) = last_deg {
                acc *= pow_rat(x, prev - d);
            }
            acc += c;
            last_deg = Some(d);
        }
        if let Some(d) = last_deg {
            acc *= pow_rat(x, d);
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&int(x))
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(&d, _)| d > 0)
                .map(|(&d, c)| (d - 1, c * BigRational::from(BigInt::from(d)))),
        )
    }

    /// Substitute `q -> q + a`.
    pub fn shift(&self, a: &BigRational) -> Self {
        let mut out = Self::zero();
        let shifted = Self::from_terms([(0, a.clone()), (1, int(1))]);
        for (&d, c) in &self.coeffs {
            out = out.add(&shifted.pow(d).scale(c));
        }
        out
    }

    /// Substitute `q -> m*q + a` (used for residue-class analysis).
    pub fn compose_affine(&self, m: i64, a: i64) -> Self {
        let mut out = Self::zero();
        let arg = Self::from_terms([(0, int(a)), (1, int(m))]);
        for (&d, c) in &self.coeffs {
            out = out.add(&arg.pow(d).scale(c));
        }
        out
    }

    /// Polynomial division with remainder over the rationals.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let dl = div.leading_coeff();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.get(rd) / &dl;
            let k = rd - dd;
            quo.add_term(k, c.clone());
            for (&d2, c2) in &div.coeffs {
                rem.add_term(d2 + k, -(&c * c2));
            }
        }
        (quo, rem)
    }

    /// Exact division; errors if there is a remainder.
    pub fn div_exact(&self, div: &Self) -> Result<Self, Error> {
        let (q, r) = self.divrem(div);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Arithmetic(
                "inexact polynomial division".to_string(),
            ))
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.leading_coeff();
        self.scale(&l.recip())
    }

    /// Squarefree part (monic): self / gcd(self, self').
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Rational content: a positive rational `c` such that `self / c` has
    /// coprime integer coefficients. Zero polynomial has content 1.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.coeffs.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(&c.denom().abs());
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// True if all coefficients are nonnegative.
    pub fn coeffs_nonneg(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }
}

pub fn pow_rat(x: &BigRational, n: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..n {
        out *= x;
    }
    out
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "q^{}", d)?;
            } else {
                write!(f, "{}*q^{}", c, d)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let q = RationalPoly::q();
        let a = q.add(&RationalPoly::one());
        let b = q.sub(&RationalPoly::one());
        let prod = a.mul(&b);
        assert_eq!(prod, RationalPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn divrem_roundtrip() {
        let p = RationalPoly::from_ints(&[2, 0, -3, 1, 4]);
        let d = RationalPoly::from_ints(&[1, 1, 1]);
        let (q, r) = p.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), p);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (q-1)(q+1) and (q-1)(q^2+q+1) share exactly q-1.
        let p1 = RationalPoly::from_ints(&[-1, 0, 1]);
        let p2 = RationalPoly::from_ints(&[-1, 0, 0, 1]);
        let g = p1.gcd(&p2);
        assert_eq!(g, RationalPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn shift_matches_eval() {
        let p = RationalPoly::from_ints(&[1, -4, 0, 2]);
        let s = p.shift(&int(3));
        for x in -3..4 {
            assert_eq!(s.eval_int(x), p.eval_int(x + 3));
        }
    }
}
