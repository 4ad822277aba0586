//! Difference operators `Σ a_k(x) E^k` with polynomial coefficients, where
//! `E` is the unit shift `(E u)(x) = u(x + 1)`.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::poly::Poly;
use crate::rational::Rational;

/// A finite difference operator. Shift orders may be negative; terms with a
/// zero coefficient are never stored, so the zero operator is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffOp {
    terms: BTreeMap<i64, Poly>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn identity() -> Self {
        DiffOp::term(0, Poly::one())
    }

    /// `E^k`.
    pub fn shift(k: i64) -> Self {
        DiffOp::term(k, Poly::one())
    }

    /// Multiplication by `a(x)`.
    pub fn mul_by(a: Poly) -> Self {
        DiffOp::term(0, a)
    }

    /// `a(x) E^k`.
    pub fn term(k: i64, a: Poly) -> Self {
        let mut op = DiffOp::zero();
        op.add_term(k, a);
        op
    }

    /// `E + f(x)`: the first-order factors of the Darboux factorization.
    pub fn shift_plus(f: &Poly) -> Self {
        let mut op = DiffOp::shift(1);
        op.add_term(0, f.clone());
        op
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Poly)>>(terms: I) -> Self {
        let mut op = DiffOp::zero();
        for (k, a) in terms {
            op.add_term(k, a);
        }
        op
    }

    fn add_term(&mut self, k: i64, a: Poly) {
        if a.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot = &*slot + &a;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Coefficient of `E^k`; the zero polynomial when absent.
    pub fn coeff(&self, k: i64) -> Poly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending shift order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Poly)> {
        self.terms.iter().map(|(&k, a)| (k, a))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest shift order present.
    pub fn max_order(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_order(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Composition `self ∘ rhs`, using `(a E^j)(b E^k) = a(x) b(x+j) E^{j+k}`.
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&j, a) in &self.terms {
            for (&k, b) in &rhs.terms {
                out.add_term(j + k, a * &b.shift(j));
            }
        }
        out
    }

    /// `(Σ a_k E^k) p = Σ a_k(x) p(x + k)`.
    pub fn apply(&self, p: &Poly) -> Poly {
        self.terms
            .iter()
            .fold(Poly::zero(), |acc, (&k, a)| &acc + &(a * &p.shift(k)))
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        DiffOp::from_terms(self.terms.iter().map(|(&k, a)| (k, a.scale(c))))
    }

    /// `self - c` where `c` is a scalar multiple of the identity.
    pub fn minus_scalar(&self, c: &Rational) -> DiffOp {
        self - &DiffOp::mul_by(Poly::constant(c.clone()))
    }

    /// Commutator `self ∘ rhs - rhs ∘ self`.
    pub fn commutator(&self, rhs: &DiffOp) -> DiffOp {
        &self.compose(rhs) - &rhs.compose(self)
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl fmt::Display for DiffOp {
    /// Descending shift order, e.g. `[1]E^2 + [-4, -1]E^1 + [-2, 1]E^0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, a)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{a}E^{k}")?;
        }
        Ok(())
    }
}

impl<'b> Add<&'b DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &'b DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (&k, a) in &rhs.terms {
            out.add_term(k, a.clone());
        }
        out
    }
}

impl<'b> Sub<&'b DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &'b DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (&k, a) in &rhs.terms {
            out.add_term(k, -a);
        }
        out
    }
}

impl<'b> Mul<&'b DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &'b DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp::from_terms(self.terms.iter().map(|(&k, a)| (k, -a)))
    }
}
