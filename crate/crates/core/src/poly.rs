//! Dense univariate polynomials over [`Rational`] in the lattice variable `x`.
//!
//! Coefficients are stored ascending (`coeffs[i]` multiplies `x^i`) and are
//! kept normalized: the highest stored coefficient is nonzero, and the zero
//! polynomial is the empty vector. Equality is therefore structural.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::rational::{ParseRationalError, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^power`.
    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Ascending integer coefficients; convenient in tests and tables.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// Ascending coefficients. Empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Rational::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`. Panics when `c` is zero.
    pub fn div_scalar(&self, c: &Rational) -> Poly {
        let inv = c.recip().expect("division of a polynomial by zero");
        self.scale(&inv)
    }

    /// `p(x + k)` by Horner's scheme in the shifted variable.
    pub fn shift(&self, k: i64) -> Poly {
        if k == 0 || self.is_constant() {
            return self.clone();
        }
        let step = Poly::from_coeffs(vec![Rational::from(k), Rational::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &step) + &Poly::constant(c.clone())
        })
    }

    /// Forward difference `p(x+1) - p(x)`.
    pub fn delta(&self) -> Poly {
        &self.shift(1) - self
    }

    /// Backward difference `p(x) - p(x-1)`.
    pub fn nabla(&self) -> Poly {
        self - &self.shift(-1)
    }

    pub fn eval(&self, x0: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x0) + c)
    }
}

impl fmt::Display for Poly {
    /// Ascending coefficient list, e.g. `[1, -3, 1]` for `x^2 - 3x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Poly {
    type Err = ParseRationalError;

    /// Parses the `[c0, c1, ...]` list form; brackets are optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Poly::zero());
        }
        inner
            .split(',')
            .map(str::parse::<Rational>)
            .collect::<Result<Vec<_>, _>>()
            .map(Poly::from_coeffs)
    }
}

impl<'b> Add<&'b Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &'b Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'b> Sub<&'b Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &'b Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'b> Mul<&'b Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &'b Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p(&[1, 1]) + &p(&[-1, -1]), Poly::zero());
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[4, 2]).scale(&Rational::half()), p(&[2, 1]));
        assert_eq!(p(&[1, 2]).scale(&Rational::zero()), Poly::zero());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).shift(1), p(&[1, 2, 1]));
        assert_eq!(p(&[1, -3, 1]).shift(1), p(&[-1, -1, 1]));
        assert_eq!(p(&[1, -3, 1]).shift(0), p(&[1, -3, 1]));
        assert_eq!(p(&[0, 0, 1]).shift(-2), p(&[4, -4, 1]));
    }

    #[test]
    fn difference_examples() {
        assert_eq!(p(&[0, 0, 1]).delta(), p(&[1, 2]));
        assert_eq!(p(&[1, -3, 1]).delta(), p(&[-2, 2]));
        assert_eq!(p(&[7]).delta(), Poly::zero());
        assert_eq!(p(&[0, 1]).nabla(), p(&[1]));
        assert_eq!(p(&[0, 0, 1]).nabla().delta(), p(&[2]));
        assert_eq!(p(&[5]).nabla(), Poly::zero());
    }

    #[test]
    fn eval_examples() {
        let q = p(&[1, -3, 1]);
        assert_eq!(q.eval(&Rational::zero()), Rational::one());
        assert_eq!(q.eval(&Rational::from(3)), Rational::one());
        assert_eq!(Poly::zero().eval(&Rational::new(7, 3)), Rational::zero());
    }

    #[test]
    fn degree_and_normalization() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[3]).degree(), Some(0));
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[5, 1]).is_monic());
        assert_eq!(Poly::monomial(Rational::from(2), 3), p(&[0, 0, 0, 2]));
    }

    #[test]
    fn text_form() {
        let q = Poly::from_coeffs(vec![
            Rational::new(1, 3),
            Rational::from(-2),
            Rational::one(),
        ]);
        assert_eq!(q.to_string(), "[1/3, -2, 1]");
        assert_eq!("[1/3, -2, 1]".parse::<Poly>().unwrap(), q);
        assert_eq!("[]".parse::<Poly>().unwrap(), Poly::zero());
        assert_eq!(Poly::zero().to_string(), "[]");
        assert!("[1, x]".parse::<Poly>().is_err());
    }
}
