use std::fmt;
use std::str::FromStr;

use crate::exactnum::Rational;

use super::{Monomial, MultiPoly, PolyError, VarTable};

/// Extended rational endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    fn rank(&self) -> (i8, Option<&Rational>) {
        match self {
            Bound::NegInf => (-1, None),
            Bound::Finite(r) => (0, Some(r)),
            Bound::PosInf => (1, None),
        }
    }

    fn lt(&self, other: &Bound) -> bool {
        match (self.rank(), other.rank()) {
            ((0, Some(a)), (0, Some(b))) => a < b,
            ((a, _), (b, _)) => a < b,
        }
    }
}

impl FromStr for Bound {
    type Err = PolyError;

    /// `-inf`, `inf`, `+inf`, or a rational `p` / `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(Bound::NegInf),
            "inf" | "+inf" => Ok(Bound::PosInf),
            t => Ok(Bound::Finite(t.parse()?)),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::Finite(r) => write!(f, "{r}"),
            Bound::PosInf => f.write_str("inf"),
        }
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
type Dense = Vec<Rational>;

fn trim(mut p: Dense) -> Dense {
    while p.last().map(Rational::is_zero).unwrap_or(false) {
        p.pop();
    }
    p
}

fn deriv(p: &Dense) -> Dense {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k as i64))
            .collect(),
    )
}

/// Remainder of `a` modulo nonzero `b` over the rationals.
fn rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let t = &r[dr] / &lb;
        for (k, c) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = &r[idx] - &t * c;
        }
        r = trim(r);
    }
    r
}

fn exact_quo(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![Rational::zero(); a.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let t = &r[dr] / &b[db];
        for (k, c) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = &r[idx] - &t * c;
        }
        q[dr - db] = t;
        r = trim(r);
    }
    trim(q)
}

fn gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().expect("nonzero gcd").clone();
    a.iter().map(|c| c / &lead).collect()
}

fn sign_at(p: &Dense, x: &Bound) -> i32 {
    let lead = p.last().expect("nonzero").signum();
    match x {
        Bound::PosInf => lead,
        Bound::NegInf => {
            if (p.len() - 1) % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
        Bound::Finite(v) => {
            let mut acc = Rational::zero();
            for c in p.iter().rev() {
                acc = &acc * v + c;
            }
            acc.signum()
        }
    }
}

/// Sturm sequence of the squarefree part of a univariate polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    var: usize,
    vars: VarTable,
    chain: Vec<Dense>,
}

impl SturmChain {
    pub fn new(p: &MultiPoly<Rational>, var: &str) -> Result<Self, PolyError> {
        let i = p.vars().require(var)?;
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if p.used_vars().iter().any(|&j| j != i) {
            return Err(PolyError::NotUnivariate(var.to_string()));
        }
        let mut dense = vec![Rational::zero(); p.degree_in(i) as usize + 1];
        for (m, c) in p.terms() {
            dense[m.exp(i) as usize] = c.clone();
        }
        let dp = deriv(&dense);
        let sqfree = if dp.is_empty() {
            dense
        } else {
            exact_quo(&dense, &gcd(&dense, &dp))
        };
        let mut chain = vec![sqfree.clone()];
        let mut prev = sqfree;
        let mut cur = deriv(&prev);
        while !cur.is_empty() {
            let next: Dense = rem(&prev, &cur).iter().map(|c| -c).collect();
            chain.push(cur.clone());
            prev = cur;
            cur = next;
        }
        Ok(SturmChain {
            var: i,
            vars: p.vars().clone(),
            chain,
        })
    }

    /// Chain entries as polynomials over the input's table.
    pub fn polys(&self) -> Vec<MultiPoly<Rational>> {
        self.chain
            .iter()
            .map(|d| {
                MultiPoly::from_terms(
                    &self.vars,
                    d.iter()
                        .enumerate()
                        .map(|(k, c)| (Monomial::var(self.vars.len(), self.var, k as u32), c.clone())),
                )
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn variations(&self, x: &Bound) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| sign_at(p, x))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> Result<usize, PolyError> {
        if !lo.lt(hi) {
            return Err(PolyError::InvalidInterval);
        }
        Ok(self.variations(lo) - self.variations(hi))
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &MultiPoly<Rational>, var: &str, lo: &Bound, hi: &Bound) -> Result<usize, PolyError> {
    SturmChain::new(p, var)?.count(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_polynomial;

    fn u(s: &str) -> MultiPoly<Rational> {
        parse_polynomial(s, &VarTable::new(["u"]).unwrap()).unwrap()
    }

    fn all(s: &str) -> usize {
        sturm_count(&u(s), "u", &Bound::NegInf, &Bound::PosInf).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(all("3*u^6 - 9*u^4 + 21*u^2 + 1"), 0);
        let zero = Bound::Finite(Rational::zero());
        assert_eq!(sturm_count(&u("u^2 - 2"), "u", &zero, &Bound::PosInf).unwrap(), 1);
        assert_eq!(all("3*u^3 - 9*u^2 + 21*u + 1"), 1);
    }

    #[test]
    fn half_open_and_multiplicity() {
        let one = Bound::Finite(Rational::one());
        let zero = Bound::Finite(Rational::zero());
        // root at 1 counted in (0, 1] but not in (1, 2]
        assert_eq!(sturm_count(&u("(u - 1)^3"), "u", &zero, &one).unwrap(), 1);
        let two = Bound::Finite(Rational::from_integer(2));
        assert_eq!(sturm_count(&u("(u - 1)^3"), "u", &one, &two).unwrap(), 0);
        assert_eq!(all("(u - 1)^2*(u + 1)"), 2);
        assert_eq!(all("5"), 0);
    }

    #[test]
    fn errors() {
        assert_eq!(SturmChain::new(&u("0"), "u").err(), Some(PolyError::ZeroPolynomial));
        let t = VarTable::new(["u", "v"]).unwrap();
        let p = parse_polynomial("u*v", &t).unwrap();
        assert!(matches!(SturmChain::new(&p, "u"), Err(PolyError::NotUnivariate(_))));
        let c = SturmChain::new(&u("u"), "u").unwrap();
        assert_eq!(c.count(&Bound::PosInf, &Bound::NegInf), Err(PolyError::InvalidInterval));
        assert_eq!("-inf".parse::<Bound>().unwrap(), Bound::NegInf);
        assert_eq!("+inf".parse::<Bound>().unwrap(), Bound::PosInf);
        assert!("x".parse::<Bound>().is_err());
    }

    #[test]
    fn chain_shape() {
        let c = SturmChain::new(&u("u^2 - 2"), "u").unwrap();
        let polys = c.polys();
        assert_eq!(polys[0], u("u^2 - 2"));
        assert_eq!(polys[1], u("2*u"));
        assert_eq!(polys[2], u("2"));
    }
}
