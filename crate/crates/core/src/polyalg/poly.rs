use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exactnum::{Rational, Scalar};

use super::{Monomial, PolyError, VarTable};

/// Sparse multivariate polynomial over an exact field.
///
/// Terms are kept in a map keyed by monomial; zero coefficients are never
/// stored, so the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<F: Scalar> {
    vars: VarTable,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> MultiPoly<F> {
    pub fn zero(vars: &VarTable) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn constant(vars: &VarTable, c: F) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn monomial(vars: &VarTable, m: Monomial, c: F) -> Self {
        debug_assert_eq!(m.len(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn var(vars: &VarTable, name: &str) -> Result<Self, PolyError> {
        let i = vars.require(name)?;
        Ok(Self::var_index(vars, i))
    }

    pub fn var_index(vars: &VarTable, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i, 1), F::one())
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I>(vars: &VarTable, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<F> {
        if self.is_zero() {
            return Some(F::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + '_ {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in variable `i`; 0 for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    pub fn degree_in_name(&self, name: &str) -> Result<u32, PolyError> {
        Ok(self.degree_in(self.vars.require(name)?))
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exp(i) > 0)
    }

    /// Indices of variables that occur in some term.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.uses_var(i)).collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().plus(c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_table(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_table(other)?;
        let (mut acc, rest) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &rest.terms {
            acc.add_term(m.clone(), c);
        }
        Ok(acc)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_table(other)?;
        let mut acc = self.clone();
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), &c.negate());
        }
        Ok(acc)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_table(other)?;
        let mut acc = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add_term(ma.mul(mb), &ca.times(cb));
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.times(c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.times(c)))
                .collect(),
        }
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                let k = F::from_rational(Rational::from_integer(e));
                out.add_term(m.with_exp(i, e - 1), &c.times(&k));
            }
        }
        out
    }

    pub fn differentiate(&self, name: &str) -> Result<Self, PolyError> {
        Ok(self.derivative(self.vars.require(name)?))
    }

    /// Coefficients with respect to variable `i`: entry `k` multiplies
    /// `x_i^k` and is free of `x_i`. Empty for the zero polynomial.
    pub fn coefficients_in(&self, i: usize) -> Vec<Self> {
        let deg = self.degree_in(i) as usize;
        if self.is_zero() {
            return Vec::new();
        }
        let mut out = vec![Self::zero(&self.vars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            out[e].add_term(m.with_exp(i, 0), c);
        }
        out
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(vars: &VarTable, i: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(vars);
        for (k, coeff) in coeffs.iter().enumerate() {
            for (m, c) in &coeff.terms {
                debug_assert_eq!(m.exp(i), 0);
                out.add_term(m.with_exp(i, k as u32), c);
            }
        }
        out
    }

    /// Coefficient of `x_i^k`, as a polynomial free of `x_i`.
    pub fn coefficient_in(&self, i: usize, k: u32) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.exp(i) == k {
                out.add_term(m.with_exp(i, 0), c);
            }
        }
        out
    }

    /// Replaces variable `i` by a scalar.
    pub fn eval_var(&self, i: usize, value: &F) -> Self {
        let mut out = Self::zero(&self.vars);
        let mut powers: Vec<F> = vec![F::one()];
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().times(value);
                powers.push(next);
            }
            out.add_term(m.with_exp(i, 0), &c.times(&powers[e]));
        }
        out
    }

    pub fn eval_name(&self, name: &str, value: &F) -> Result<Self, PolyError> {
        Ok(self.eval_var(self.vars.require(name)?, value))
    }

    /// Full evaluation at a point given in table order.
    pub fn evaluate(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.times(&point[i].pow(e));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Replaces variable `i` by a polynomial over the same table.
    pub fn substitute_poly(&self, i: usize, value: &Self) -> Result<Self, PolyError> {
        self.check_table(value)?;
        if !self.uses_var(i) {
            return Ok(self.clone());
        }
        let coeffs = self.coefficients_in(i);
        // Horner
        let mut acc = Self::zero(&self.vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        Ok(acc)
    }

    pub fn substitute_poly_name(&self, name: &str, value: &Self) -> Result<Self, PolyError> {
        self.substitute_poly(self.vars.require(name)?, value)
    }

    /// Rewrites the polynomial over another table, matching variables by
    /// name. Fails if a variable in use is missing from `target`.
    pub fn retable(&self, target: &VarTable) -> Result<Self, PolyError> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for i in 0..self.vars.len() {
            map.push(target.index(self.vars.name(i)));
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    let j = map[i].ok_or_else(|| {
                        PolyError::UnknownVariable(self.vars.name(i).to_string())
                    })?;
                    e[j] = x;
                }
            }
            out.add_term(Monomial::from_exponents(e), c);
        }
        Ok(out)
    }

    /// Simultaneous renaming of variables within the same table, with an
    /// optional scalar factor per renamed variable.
    pub fn permute_vars(&self, perm: &[(usize, usize, F)]) -> Self {
        let mut target: Vec<usize> = (0..self.vars.len()).collect();
        let mut factor: Vec<Option<F>> = vec![None; self.vars.len()];
        for (from, to, k) in perm {
            target[*from] = *to;
            factor[*from] = Some(k.clone());
        }
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; self.vars.len()];
            let mut coeff = c.clone();
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e[target[i]] += x;
                    if let Some(k) = &factor[i] {
                        coeff = coeff.times(&k.pow(x));
                    }
                }
            }
            out.add_term(Monomial::from_exponents(e), &coeff);
        }
        out
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let mut out = MultiPoly::<G>::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Largest monomial dividing every term (the unit monomial for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.vars.len()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(m.quotient_of(k)?, c.clone());
        }
        Some(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>, PolyError> {
        self.check_table(d)?;
        let (dm, dc) = d.leading_term().ok_or(PolyError::DivisionByZero)?;
        let dm = dm.clone();
        let dc_inv = dc.inverse().ok_or(PolyError::DivisionByZero)?;
        if d.len() == 1 {
            return Ok(self.div_monomial(&dm).map(|p| p.scale(&dc_inv)));
        }
        let mut rem = self.clone();
        let mut quo = Self::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            let Some(t) = dm.quotient_of(rm) else {
                return Ok(None);
            };
            let tc = rc.times(&dc_inv);
            let neg = tc.negate();
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&t), &c.times(&neg));
            }
            quo.add_term(t, &tc);
        }
        Ok(Some(quo))
    }
}

impl MultiPoly<Rational> {
    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Rational {
        self.terms
            .values()
            .fold(Rational::zero(), |acc, c| acc.gcd(c))
    }

    /// Integer-coefficient primitive part with a positive leading
    /// coefficient. Zero stays zero.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut k = self.content().recip().expect("nonzero content");
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            k = -k;
        }
        self.scale(&k)
    }

    /// Coefficient of a monomial given by name/exponent pairs.
    pub fn coeff_of(&self, powers: &[(&str, u32)]) -> Result<Rational, PolyError> {
        let mut e = vec![0u32; self.vars.len()];
        for (name, k) in powers {
            e[self.vars.require(name)?] = *k;
        }
        Ok(self.coefficient(&Monomial::from_exponents(e)))
    }
}

impl<F: Scalar> Add for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        self.try_add(rhs).expect("operands share a variable table")
    }
}

impl<F: Scalar> Sub for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        self.try_sub(rhs).expect("operands share a variable table")
    }
}

impl<F: Scalar> Mul for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        self.try_mul(rhs).expect("operands share a variable table")
    }
}

impl<F: Scalar> Add for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        &self + &rhs
    }
}

impl<F: Scalar> Sub for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        &self - &rhs
    }
}

impl<F: Scalar> Mul for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        &self * &rhs
    }
}

impl<F: Scalar> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        self.scale(&F::one().negate())
    }
}

impl<F: Scalar> Neg for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        -&self
    }
}

pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &VarTable, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(vars.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl<F: Scalar> fmt::Display for MultiPoly<F> {
    /// Descending monomial order in the parser's grammar, e.g.
    /// `3*k^6 - 9*k^4 + 21*k^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            match c.to_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    match (idx, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    let mag = r.abs();
                    if m.is_one() {
                        write!(f, "{mag}")?;
                    } else {
                        if !mag.is_one() {
                            write!(f, "{mag}*")?;
                        }
                        write_monomial(f, &self.vars, m)?;
                    }
                }
                None => {
                    if idx > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "({c})")?;
                    if !m.is_one() {
                        f.write_str("*")?;
                        write_monomial(f, &self.vars, m)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;
    use crate::polyalg::parse_polynomial;

    fn table() -> VarTable {
        VarTable::new(["f", "K", "c"]).unwrap()
    }

    fn p(s: &str) -> MultiPoly<Rational> {
        parse_polynomial(s, &table()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("f + K") * &p("f - K"), p("f^2 - K^2"));
        assert_eq!(&p("f + 1") + &MultiPoly::zero(&table()), p("f + 1"));
        let t = VarTable::new(["k"]).unwrap();
        let one_minus = parse_polynomial("1 - 3*k^2", &t).unwrap();
        assert_eq!(one_minus.pow(2), parse_polynomial("9*k^4 - 6*k^2 + 1", &t).unwrap());
    }

    #[test]
    fn table_mismatch_is_an_error() {
        let other = VarTable::new(["f", "c", "K"]).unwrap();
        let a = p("f");
        let b = parse_polynomial("f", &other).unwrap();
        assert_eq!(a.try_add(&b), Err(PolyError::TableMismatch));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("45/2*f^2 - 2*K").differentiate("f").unwrap(), p("45*f"));
        assert_eq!(p("140608*K^4").differentiate("K").unwrap(), p("562432*K^3"));
        assert!(p("f").differentiate("u").is_err());
    }

    #[test]
    fn exact_division() {
        let a = p("f^3 - K^3");
        let b = p("f - K");
        assert_eq!(a.exact_div(&b).unwrap(), Some(p("f^2 + f*K + K^2")));
        assert_eq!(p("f^2 + 1").exact_div(&b).unwrap(), None);
        assert_eq!(p("2*f^2*K").exact_div(&p("4*f")).unwrap(), Some(p("1/2*f*K")));
    }

    #[test]
    fn content_and_primitive_part() {
        let x = p("-6*f^2 + 4*K");
        assert_eq!(x.content(), q(2, 1));
        assert_eq!(x.primitive_part(), p("3*f^2 - 2*K"));
        assert_eq!(p("1/2*f + 1/3").primitive_part(), p("3*f + 2"));
    }

    #[test]
    fn retable_by_name() {
        let other = VarTable::new(["c", "K", "f", "u"]).unwrap();
        let x = p("f^2*K - c");
        let y = x.retable(&other).unwrap();
        assert_eq!(y.to_string(), "K*f^2 - c");
        assert_eq!(y.retable(&table()).unwrap(), x);
        let z = parse_polynomial("u", &other).unwrap();
        assert!(z.retable(&table()).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(MultiPoly::<Rational>::zero(&table()).to_string(), "0");
        assert_eq!(p("1/2*f^2").to_string(), "1/2*f^2");
        assert_eq!(p("-f + 2").to_string(), "-f + 2");
        let t = VarTable::new(["k"]).unwrap();
        let sextic = parse_polynomial("1 + 21*k^2 + 3*k^6 - 9*k^4", &t).unwrap();
        assert_eq!(sextic.to_string(), "3*k^6 - 9*k^4 + 21*k^2 + 1");
    }
}
