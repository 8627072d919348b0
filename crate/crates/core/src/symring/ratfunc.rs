//! Rational functions in `q`, kept in reduced form with monic denominator.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::RationalPoly;
use crate::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: RationalPoly,
    den: RationalPoly,
}

impl RatFunc {
    pub fn new(num: RationalPoly, den: RationalPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut out = Self { num, den };
        out.reduce();
        out
    }

    pub fn from_poly(p: RationalPoly) -> Self {
        Self { num: p, den: RationalPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(RationalPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(RationalPoly::one())
    }

    /// q^k for k possibly negative.
    pub fn qpow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(RationalPoly::monomial(k as u32, super::poly::int(1)))
        } else {
            Self {
                num: RationalPoly::one(),
                den: RationalPoly::monomial((-k) as u32, super::poly::int(1)),
            }
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = RationalPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.div_exact(&g).expect("gcd divides");
            self.den = self.den.div_exact(&g).expect("gcd divides");
        }
        // Normalize to a monic denominator.
        let l = self.den.leading_coeff();
        if !l.is_one() {
            let inv = l.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn num(&self) -> &RationalPoly {
        &self.num
    }

    pub fn den(&self) -> &RationalPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Returns the polynomial if the denominator is 1.
    pub fn as_poly(&self) -> Option<&RationalPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Result<Self, Error> {
        if o.is_zero() {
            return Err(Error::Arithmetic("division by zero rational function".into()));
        }
        Ok(Self::new(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn recip(&self) -> Result<Self, Error> {
        Self::one().div(self)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// q-adic valuation: val(num) - val(den). None for zero.
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().unwrap_or(0) as i64;
        Some(vn - vd)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

/// Dense matrix of rational functions; used by the decomposition solver.
#[derive(Clone, Debug)]
pub struct RfMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<RatFunc>,
}

impl RfMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![RatFunc::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = RatFunc::one();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &RatFunc {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut RatFunc {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    *out.at_mut(i, j) = out.at(i, j).add(&prod);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&o.data) {
            *a = a.sub(b);
        }
        out
    }

    /// Gauss-Jordan inverse; errors on a singular matrix.
    pub fn inverse(&self) -> Result<Self, Error> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or_else(|| Error::Arithmetic("singular matrix".into()))?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                    let tmp = inv.at(pivot, j).clone();
                    *inv.at_mut(pivot, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = tmp;
                }
            }
            let pv = a.at(col, col).recip()?;
            for j in 0..n {
                *a.at_mut(col, j) = a.at(col, j).mul(&pv);
                *inv.at_mut(col, j) = inv.at(col, j).mul(&pv);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let sa = a.at(col, j).mul(&f);
                    *a.at_mut(r, j) = a.at(r, j).sub(&sa);
                    let si = inv.at(col, j).mul(&f);
                    *inv.at_mut(r, j) = inv.at(r, j).sub(&si);
                }
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_factors() {
        // (q^2-1)/(q-1) = q+1
        let f = RatFunc::new(
            RationalPoly::from_ints(&[-1, 0, 1]),
            RationalPoly::from_ints(&[-1, 1]),
        );
        assert_eq!(f.as_poly().unwrap(), &RationalPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let mut m = RfMatrix::zero(2, 2);
        *m.at_mut(0, 0) = RatFunc::from_poly(RationalPoly::from_ints(&[1, 1]));
        *m.at_mut(0, 1) = RatFunc::one();
        *m.at_mut(1, 0) = RatFunc::from_poly(RationalPoly::from_ints(&[0, 1]));
        *m.at_mut(1, 1) = RatFunc::from_poly(RationalPoly::from_ints(&[2]));
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { RatFunc::one() } else { RatFunc::zero() };
                assert_eq!(prod.at(i, j), &expect);
            }
        }
    }
}
