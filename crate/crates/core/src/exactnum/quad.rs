use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{NumError, Rational};

/// Element `a + b*sqrt(d)` of a real quadratic field.
///
/// Canonical form: `d` is a positive integer that is not a perfect square,
/// or `d = 0` together with `b = 0` for elements of the rational subfield.
/// Rational elements combine with any discriminant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
}

impl QuadExt {
    /// Builds `a + b*sqrt(d)`. A perfect-square `d` collapses to a rational.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self, NumError> {
        if d.is_negative() {
            return Err(NumError::NegativeDiscriminant(d.to_string()));
        }
        if b.is_zero() || d.is_zero() {
            return Ok(QuadExt::rational(a));
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let scale = Rational::from_integer(d.denom().clone());
        let d_int: BigInt = d.numer() * d.denom();
        let b = &b / &scale;
        let root = d_int.sqrt();
        if &root * &root == d_int {
            return Ok(QuadExt::rational(a + b * Rational::from_integer(root)));
        }
        Ok(QuadExt {
            a,
            b,
            d: Rational::from_integer(d_int),
        })
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: Rational::zero(),
        }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_of(d: Rational) -> Result<Self, NumError> {
        QuadExt::new(Rational::zero(), Rational::one(), d)
    }

    pub fn base(&self) -> &Rational {
        &self.a
    }

    pub fn radical_coeff(&self) -> &Rational {
        &self.b
    }

    /// Zero for rational elements.
    pub fn discriminant(&self) -> &Rational {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn common_disc(&self, other: &QuadExt) -> Result<Rational, NumError> {
        match (self.d.is_zero(), other.d.is_zero()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(NumError::DiscriminantMismatch(
                self.d.to_string(),
                other.d.to_string(),
            )),
        }
    }

    fn canonical(a: Rational, b: Rational, d: Rational) -> Self {
        if b.is_zero() {
            QuadExt::rational(a)
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn arith(op: QuadOp, x: &QuadExt, y: &QuadExt) -> Result<QuadExt, NumError> {
        let d = x.common_disc(y)?;
        Ok(match op {
            QuadOp::Add => QuadExt::canonical(&x.a + &y.a, &x.b + &y.b, d),
            QuadOp::Sub => QuadExt::canonical(&x.a - &y.a, &x.b - &y.b, d),
            QuadOp::Mul => {
                let a = &x.a * &y.a + &x.b * &y.b * &d;
                let b = &x.a * &y.b + &x.b * &y.a;
                QuadExt::canonical(a, b, d)
            }
        })
    }

    pub fn checked_add(&self, other: &QuadExt) -> Result<QuadExt, NumError> {
        QuadExt::arith(QuadOp::Add, self, other)
    }

    pub fn checked_sub(&self, other: &QuadExt) -> Result<QuadExt, NumError> {
        QuadExt::arith(QuadOp::Sub, self, other)
    }

    pub fn checked_mul(&self, other: &QuadExt) -> Result<QuadExt, NumError> {
        QuadExt::arith(QuadOp::Mul, self, other)
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt::canonical(-&self.a, -&self.b, self.d.clone())
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt::canonical(self.a.clone(), -&self.b, self.d.clone())
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    /// Multiplicative inverse via conjugate over norm.
    pub fn inv(&self) -> Result<QuadExt, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let n = self.norm();
        if n.is_zero() {
            // unreachable for a non-square d, kept as a guard
            return Err(NumError::DivisionByZero);
        }
        let c = self.conj();
        Ok(QuadExt::canonical(&c.a / &n, &c.b / &n, self.d.clone()))
    }

    /// Exact sign of the real number `a + b*sqrt(d)`.
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with d*b^2
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.d;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

impl fmt::Display for QuadExt {
    /// `a`, `b*sqrt(d)` or `a + b*sqrt(d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let mag = self.b.abs();
        let rad = if mag.is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{mag}*sqrt({})", self.d)
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{rad}"),
            (true, true) => write!(f, "-{rad}"),
            (false, false) => write!(f, "{} + {rad}", self.a),
            (false, true) => write!(f, "{} - {rad}", self.a),
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExt {
    type Err = NumError;

    /// Parses the printer's forms: `a`, `[-]b*sqrt(d)`, `[-]sqrt(d)`,
    /// `a + b*sqrt(d)`, `a - b*sqrt(d)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || NumError::Malformed(s.to_string());
        let Some(open) = s.find("sqrt(") else {
            return Ok(QuadExt::rational(s.parse()?));
        };
        let d: Rational = s[open + 5..]
            .strip_suffix(')')
            .ok_or_else(bad)?
            .parse()?;
        let head = s[..open].trim_end();
        let head = head.strip_suffix('*').map(str::trim_end).unwrap_or(head);
        let (a, sign, b_text) = if let Some(i) = head.rfind(" +") {
            (head[..i].parse::<Rational>()?, 1, head[i + 2..].trim())
        } else if let Some(i) = head.rfind(" -") {
            (head[..i].parse::<Rational>()?, -1, head[i + 2..].trim())
        } else if let Some(rest) = head.strip_prefix('-') {
            (Rational::zero(), -1, rest.trim())
        } else {
            (Rational::zero(), 1, head)
        };
        let b = if b_text.is_empty() {
            Rational::one()
        } else {
            b_text.parse::<Rational>()?
        };
        let b = if sign < 0 { -b } else { b };
        QuadExt::new(a, b, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    fn s3(a: i64, b: i64) -> QuadExt {
        QuadExt::new(q(a, 1), q(b, 1), q(3, 1)).unwrap()
    }

    #[test]
    fn add_mul_examples() {
        assert_eq!(s3(1, 1).checked_add(&s3(2, -1)).unwrap(), QuadExt::rational(q(3, 1)));
        assert_eq!(s3(1, 1).checked_mul(&s3(1, -1)).unwrap(), QuadExt::rational(q(-2, 1)));
        assert_eq!(s3(2, 1).checked_mul(&s3(2, -1)).unwrap(), QuadExt::rational(q(1, 1)));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(s3(2, 1).inv().unwrap(), s3(2, -1));
        let r3 = QuadExt::sqrt_of(q(3, 1)).unwrap();
        assert_eq!(r3.inv().unwrap(), QuadExt::new(q(0, 1), q(1, 3), q(3, 1)).unwrap());
        assert_eq!(QuadExt::rational(q(1, 2)).inv().unwrap(), QuadExt::rational(q(2, 1)));
        assert_eq!(QuadExt::rational(q(0, 1)).inv(), Err(NumError::DivisionByZero));
    }

    #[test]
    fn mismatched_discriminants() {
        let a = QuadExt::sqrt_of(q(2, 1)).unwrap();
        let b = QuadExt::sqrt_of(q(3, 1)).unwrap();
        assert!(matches!(a.checked_add(&b), Err(NumError::DiscriminantMismatch(..))));
        // rationals mix with anything
        assert!(a.checked_mul(&QuadExt::rational(q(5, 1))).is_ok());
    }

    #[test]
    fn perfect_square_collapses() {
        let x = QuadExt::new(q(1, 1), q(2, 1), q(9, 4)).unwrap();
        assert_eq!(x, QuadExt::rational(q(4, 1)));
        // sqrt(1/2) = sqrt(2)/2
        let h = QuadExt::sqrt_of(q(1, 2)).unwrap();
        assert_eq!(h.discriminant(), &q(2, 1));
        assert_eq!(h.radical_coeff(), &q(1, 2));
        assert_eq!(h.checked_mul(&h).unwrap(), QuadExt::rational(q(1, 2)));
    }

    #[test]
    fn exact_sign() {
        assert_eq!(s3(2, -1).signum(), 1); // 2 - 1.73
        assert_eq!(s3(1, -1).signum(), -1);
        assert_eq!(s3(-2, 1).signum(), -1);
        assert_eq!(s3(0, 0).signum(), 0);
    }

    #[test]
    fn text_round_trip() {
        let cases = [
            s3(0, 0),
            s3(3, 0),
            s3(0, 1),
            s3(0, -1),
            s3(2, -1),
            QuadExt::new(q(-1, 2), q(7, 3), q(5, 1)).unwrap(),
            QuadExt::new(q(0, 1), q(-7, 3), q(5, 1)).unwrap(),
        ];
        for x in cases {
            let text = x.to_string();
            assert_eq!(text.parse::<QuadExt>().unwrap(), x, "{text}");
        }
        assert_eq!(s3(1, 1).to_string(), "1 + sqrt(3)");
        assert_eq!(s3(2, -1).to_string(), "2 - sqrt(3)");
    }
}
