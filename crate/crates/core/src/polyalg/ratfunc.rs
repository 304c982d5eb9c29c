use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::exactnum::{Rational, Scalar};

use super::{MultiPoly, PolyError, VarTable};

/// Quotient of two polynomials over a shared table.
///
/// Normalization strips the common monomial factor, folds constant
/// denominators into the numerator, cancels the denominator when it divides
/// the numerator exactly, and rescales both halves with
/// [`Scalar::pair_normalizer`]. Full multivariate gcd cancellation is not
/// attempted, so equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc<F: Scalar> {
    num: MultiPoly<F>,
    den: MultiPoly<F>,
}

impl<F: Scalar> RatFunc<F> {
    pub fn new(num: MultiPoly<F>, den: MultiPoly<F>) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if num.vars() != den.vars() {
            return Err(PolyError::TableMismatch);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: MultiPoly<F>) -> Self {
        let den = MultiPoly::one(p.vars());
        Self::normalized(p, den)
    }

    pub fn zero(vars: &VarTable) -> Self {
        Self::from_poly(MultiPoly::zero(vars))
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::from_poly(MultiPoly::one(vars))
    }

    pub fn var(vars: &VarTable, name: &str) -> Result<Self, PolyError> {
        Ok(Self::from_poly(MultiPoly::var(vars, name)?))
    }

    pub fn constant(vars: &VarTable, c: F) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    fn normalized(mut num: MultiPoly<F>, mut den: MultiPoly<F>) -> Self {
        let vars = num.vars().clone();
        if num.is_zero() {
            return RatFunc {
                num,
                den: MultiPoly::one(&vars),
            };
        }
        let common = num.monomial_content().gcd(&den.monomial_content());
        if !common.is_one() {
            num = num.div_monomial(&common).expect("common monomial divides");
            den = den.div_monomial(&common).expect("common monomial divides");
        }
        if let Some(c) = den.as_constant() {
            num = num.scale(&c.inverse().expect("nonzero denominator"));
            den = MultiPoly::one(&vars);
        } else if let Ok(Some(qt)) = num.exact_div(&den) {
            num = qt;
            den = MultiPoly::one(&vars);
        }
        let k = {
            let nc: Vec<&F> = num.terms().map(|(_, c)| c).collect();
            let dc: Vec<&F> = den.terms().map(|(_, c)| c).collect();
            let lead = den.leading_term().expect("nonzero denominator").1;
            F::pair_normalizer(&nc, &dc, lead)
        };
        if !k.is_one() {
            num = num.scale(&k);
            den = den.scale(&k);
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &MultiPoly<F> {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly<F> {
        &self.den
    }

    pub fn vars(&self) -> &VarTable {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value, when the denominator is constant.
    pub fn as_poly(&self) -> Option<MultiPoly<F>> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&c.inverse()?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.den == other.den {
            return Ok(Self::normalized(self.num.try_add(&other.num)?, self.den.clone()));
        }
        let n = self
            .num
            .try_mul(&other.den)?
            .try_add(&other.num.try_mul(&self.den)?)?;
        Ok(Self::normalized(n, self.den.try_mul(&other.den)?))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        Ok(Self::normalized(
            self.num.try_mul(&other.num)?,
            self.den.try_mul(&other.den)?,
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(
            self.num.try_mul(&other.den)?,
            self.den.try_mul(&other.num)?,
        ))
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::normalized(self.num.pow(e), self.den.pow(e))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Quotient rule.
    pub fn derivative(&self, i: usize) -> Self {
        let dn = self.num.derivative(i);
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let n = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(n, self.den.pow(2))
    }

    pub fn differentiate(&self, name: &str) -> Result<Self, PolyError> {
        Ok(self.derivative(self.vars().require(name)?))
    }

    /// Exact substitution of a rational function for variable `i`.
    pub fn substitute(&self, i: usize, value: &Self) -> Result<Self, PolyError> {
        if value.vars() != self.vars() {
            return Err(PolyError::TableMismatch);
        }
        let (n, dn) = subst_homogenized(&self.num, i, value);
        let (d, dd) = subst_homogenized(&self.den, i, value);
        // n / b^dn  over  d / b^dd
        let b = &value.den;
        let (n, d) = if dn >= dd {
            (n, &d * &b.pow(dn - dd))
        } else {
            (&n * &b.pow(dd - dn), d)
        };
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(n, d))
    }

    pub fn substitute_name(&self, name: &str, value: &Self) -> Result<Self, PolyError> {
        self.substitute(self.vars().require(name)?, value)
    }

    pub fn eval_var(&self, i: usize, value: &F) -> Result<Self, PolyError> {
        let d = self.den.eval_var(i, value);
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(self.num.eval_var(i, value), d))
    }

    pub fn retable(&self, target: &VarTable) -> Result<Self, PolyError> {
        Ok(Self::normalized(self.num.retable(target)?, self.den.retable(target)?))
    }

    pub fn map_polys(&self, f: impl Fn(&MultiPoly<F>) -> MultiPoly<F>) -> Result<Self, PolyError> {
        Self::new(f(&self.num), f(&self.den))
    }
}

/// `p(a/b)` as `(b^deg * p(a/b), deg)` with `deg` the degree of `p` in `i`.
fn subst_homogenized<F: Scalar>(p: &MultiPoly<F>, i: usize, value: &RatFunc<F>) -> (MultiPoly<F>, u32) {
    let deg = p.degree_in(i);
    if deg == 0 {
        return (p.clone(), 0);
    }
    let coeffs = p.coefficients_in(i);
    let a = &value.num;
    let b = &value.den;
    let mut a_pows = vec![MultiPoly::one(p.vars())];
    let mut b_pows = vec![MultiPoly::one(p.vars())];
    for k in 1..=deg as usize {
        a_pows.push(&a_pows[k - 1] * a);
        b_pows.push(&b_pows[k - 1] * b);
    }
    let mut acc = MultiPoly::zero(p.vars());
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(&(c * &a_pows[k]) * &b_pows[deg as usize - k]);
    }
    (acc, deg)
}

impl<F: Scalar> MultiPoly<F> {
    /// `p` with variable `i` replaced by a rational function.
    pub fn substitute(&self, i: usize, value: &RatFunc<F>) -> Result<RatFunc<F>, PolyError> {
        RatFunc::from_poly(self.clone()).substitute(i, value)
    }

    pub fn substitute_name(&self, name: &str, value: &RatFunc<F>) -> Result<RatFunc<F>, PolyError> {
        self.substitute(self.vars().require(name)?, value)
    }
}

/// `(num, den)` with `num/den = r`, integer content-free coefficients and a
/// denominator with positive leading coefficient. Zero gives `(0, 1)`.
pub fn clear_denominators(r: &RatFunc<Rational>) -> (MultiPoly<Rational>, MultiPoly<Rational>) {
    if r.is_zero() {
        return (r.num.clone(), MultiPoly::one(r.vars()));
    }
    (r.num.clone(), r.den.clone())
}

impl<F: Scalar> PartialEq for RatFunc<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars() != other.vars() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<F: Scalar> Eq for RatFunc<F> {}

impl<F: Scalar> From<MultiPoly<F>> for RatFunc<F> {
    fn from(p: MultiPoly<F>) -> Self {
        RatFunc::from_poly(p)
    }
}

macro_rules! ratfunc_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<F: Scalar> $tr for &RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: &RatFunc<F>) -> RatFunc<F> {
                self.$try(rhs).expect("compatible rational-function operands")
            }
        }
        impl<F: Scalar> $tr for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: RatFunc<F>) -> RatFunc<F> {
                (&self).$m(&rhs)
            }
        }
    };
}

ratfunc_op!(Add, add, try_add);
ratfunc_op!(Sub, sub, try_sub);
ratfunc_op!(Mul, mul, try_mul);
ratfunc_op!(Div, div, try_div);

impl<F: Scalar> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<F: Scalar> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        -&self
    }
}

impl<F: Scalar> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl<F: Scalar> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
