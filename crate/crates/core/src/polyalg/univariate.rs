use crate::exactnum::{Rational, Scalar};

use super::{Monomial, MultiPoly, PolyError};

/// Leading coefficient with respect to variable `i`, as a polynomial free of it.
pub(crate) fn lead_in<F: Scalar>(p: &MultiPoly<F>, i: usize) -> MultiPoly<F> {
    p.coefficient_in(i, p.degree_in(i))
}

/// Pseudo-remainder of `a` by `b` in variable `i`:
/// `lc(b)^(deg a - deg b + 1) * a = q*b + r` with `deg r < deg b`.
pub fn prem<F: Scalar>(a: &MultiPoly<F>, b: &MultiPoly<F>, i: usize) -> Result<MultiPoly<F>, PolyError> {
    if b.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let db = b.degree_in(i);
    let da = a.degree_in(i);
    if a.is_zero() || da < db {
        return Ok(a.clone());
    }
    let lb = lead_in(b, i);
    let nvars = a.vars().len();
    let mut r = a.clone();
    let mut steps = 0u32;
    while !r.is_zero() && r.degree_in(i) >= db {
        let dr = r.degree_in(i);
        let lr = lead_in(&r, i);
        let shift = Monomial::var(nvars, i, dr - db);
        let t = lr.mul_monomial(&shift, &F::one());
        r = &(&lb * &r) - &(&t * b);
        steps += 1;
    }
    let missing = da - db + 1 - steps;
    if missing > 0 {
        r = &r * &lb.pow(missing);
    }
    Ok(r)
}

fn exact<F: Scalar>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
    a.exact_div(b)
        .expect("shared table")
        .expect("subresultant division is exact")
}

/// Outcome of running the subresultant remainder sequence to its end.
pub(crate) enum PrsEnd<F: Scalar> {
    /// The last nonzero remainder, of positive degree.
    Gcd(MultiPoly<F>),
    /// The sequence ended in a nonzero remainder of degree 0.
    Coprime,
}

/// Subresultant PRS; returns the final element of the sequence.
pub(crate) fn subresultant_prs<F: Scalar>(
    a: &MultiPoly<F>,
    b: &MultiPoly<F>,
    i: usize,
) -> Result<PrsEnd<F>, PolyError> {
    let (mut a, mut b) = if a.degree_in(i) >= b.degree_in(i) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let vars = a.vars().clone();
    let mut g = MultiPoly::one(&vars);
    let mut h = MultiPoly::one(&vars);
    loop {
        if b.is_zero() {
            return Ok(PrsEnd::Gcd(a));
        }
        if b.degree_in(i) == 0 {
            return Ok(PrsEnd::Coprime);
        }
        let delta = a.degree_in(i) - b.degree_in(i);
        let r = prem(&a, &b, i)?;
        a = b;
        b = exact(&r, &(&g * &h.pow(delta)));
        g = lead_in(&a, i);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact(&g.pow(delta), &h.pow(delta - 1)),
        };
    }
}

/// Normalized gcd in the full polynomial ring over the rationals: integer
/// content 1, positive leading coefficient; `1` when the inputs are coprime.
pub(crate) fn poly_gcd(p: &MultiPoly<Rational>, q: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    if p.is_zero() {
        return q.primitive_part();
    }
    if q.is_zero() {
        return p.primitive_part();
    }
    let x = match (0..p.vars().len()).find(|&j| p.uses_var(j) || q.uses_var(j)) {
        Some(x) => x,
        None => return MultiPoly::one(p.vars()),
    };
    let cp = content_in(p, x);
    let cq = content_in(q, x);
    let c = poly_gcd(&cp, &cq);
    let pp = exact(p, &cp);
    let qq = exact(q, &cq);
    let g = if pp.degree_in(x) == 0 || qq.degree_in(x) == 0 {
        MultiPoly::one(p.vars())
    } else {
        match subresultant_prs(&pp, &qq, x).expect("nonzero inputs") {
            PrsEnd::Gcd(g) => primitive_in(&g, x),
            PrsEnd::Coprime => MultiPoly::one(p.vars()),
        }
    };
    (&c * &g).primitive_part()
}

/// Gcd of the coefficients of `p` with respect to variable `x`.
fn content_in(p: &MultiPoly<Rational>, x: usize) -> MultiPoly<Rational> {
    let mut acc = MultiPoly::zero(p.vars());
    for c in p.coefficients_in(x) {
        if c.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, &c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

fn primitive_in(p: &MultiPoly<Rational>, x: usize) -> MultiPoly<Rational> {
    exact(p, &content_in(p, x))
}

/// Gcd of `p` and `q` as polynomials in `var`, the remaining variables
/// being treated as coefficients from their fraction field.
///
/// The result is primitive with respect to `var` (no factor free of `var`),
/// has integer content 1 and a positive leading coefficient; a constant gcd
/// is returned as `1`.
pub fn univariate_gcd(
    p: &MultiPoly<Rational>,
    q: &MultiPoly<Rational>,
    var: &str,
) -> Result<MultiPoly<Rational>, PolyError> {
    let i = p.vars().require(var)?;
    if p.vars() != q.vars() {
        return Err(PolyError::TableMismatch);
    }
    if p.is_zero() && q.is_zero() {
        return Err(PolyError::BothZero);
    }
    let g = poly_gcd(p, q);
    if g.degree_in(i) == 0 {
        return Ok(MultiPoly::one(p.vars()));
    }
    Ok(primitive_in(&g, i).primitive_part())
}
