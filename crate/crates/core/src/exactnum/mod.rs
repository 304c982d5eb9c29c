//! Exact scalar fields: arbitrary-precision rationals and real quadratic
//! extensions `Q(sqrt d)`.

use std::fmt;

use thiserror::Error;

mod quad;
mod rational;

pub use quad::{QuadExt, QuadOp};
pub use rational::{q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed number {0:?}")]
    Malformed(String),
    #[error("negative discriminant {0}")]
    NegativeDiscriminant(String),
    #[error("discriminant mismatch: sqrt({0}) vs sqrt({1})")]
    DiscriminantMismatch(String, String),
}

/// Coefficient field of the polynomial engine.
///
/// Arithmetic is exact. Implementations may panic on operands that do not
/// live in a common field (mismatched quadratic discriminants); callers that
/// need to recover use the checked operations of the concrete type.
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn from_rational(r: Rational) -> Self;
    /// `Some` exactly when the value lies in the rational subfield.
    fn to_rational(&self) -> Option<Rational>;

    /// Scale factor applied to both halves of a fraction `num/den` to bring
    /// it to canonical form. The default makes the denominator monic.
    fn pair_normalizer(_num: &[&Self], _den: &[&Self], den_leading: &Self) -> Self {
        den_leading.inverse().expect("nonzero leading coefficient")
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    /// Integer, content-free pair with a positive denominator leading
    /// coefficient.
    fn pair_normalizer(num: &[&Self], den: &[&Self], den_leading: &Self) -> Self {
        let content = num
            .iter()
            .chain(den.iter())
            .fold(Rational::zero(), |acc, c| acc.gcd(c));
        let f = content.recip().expect("nonzero denominator has nonzero content");
        if den_leading.is_negative() {
            -f
        } else {
            f
        }
    }

    fn pow(&self, exp: u32) -> Self {
        Rational::pow(self, exp)
    }
}

impl Scalar for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }
    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other).expect("operands share a quadratic field")
    }
    fn minus(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("operands share a quadratic field")
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("operands share a quadratic field")
    }
    fn negate(&self) -> Self {
        QuadExt::neg(self)
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_rational(r: Rational) -> Self {
        QuadExt::rational(r)
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_rational().cloned()
    }
}
