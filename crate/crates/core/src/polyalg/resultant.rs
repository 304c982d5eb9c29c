use crate::exactnum::Scalar;

use super::univariate::{lead_in, prem};
use super::{MultiPoly, PolyError};

/// `Res_var(p, q)` by the subresultant algorithm.
///
/// Both inputs must have positive degree in `var`. The result is free of
/// `var` and follows the convention `Res(p, q) = lc(p)^deg q * prod q(roots of p)`.
pub fn resultant<F: Scalar>(p: &MultiPoly<F>, q: &MultiPoly<F>, var: &str) -> Result<MultiPoly<F>, PolyError> {
    let i = p.vars().require(var)?;
    if p.vars() != q.vars() {
        return Err(PolyError::TableMismatch);
    }
    if p.degree_in(i) == 0 || q.degree_in(i) == 0 {
        return Err(PolyError::DegreeZero(var.to_string()));
    }
    Ok(subresultant_resultant(p, q, i))
}

fn exact<F: Scalar>(a: &MultiPoly<F>, b: &MultiPoly<F>) -> MultiPoly<F> {
    a.exact_div(b)
        .expect("shared table")
        .expect("subresultant division is exact")
}

fn subresultant_resultant<F: Scalar>(p: &MultiPoly<F>, q: &MultiPoly<F>, i: usize) -> MultiPoly<F> {
    let vars = p.vars().clone();
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut negate = false;
    if a.degree_in(i) < b.degree_in(i) {
        std::mem::swap(&mut a, &mut b);
        if a.degree_in(i) % 2 == 1 && b.degree_in(i) % 2 == 1 {
            negate = true;
        }
    }
    let mut g = MultiPoly::one(&vars);
    let mut h = MultiPoly::one(&vars);
    loop {
        let da = a.degree_in(i);
        let db = b.degree_in(i);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b, i).expect("nonzero divisor");
        a = b;
        b = exact(&r, &(&g * &h.pow(delta)));
        if b.is_zero() {
            return MultiPoly::zero(&vars);
        }
        g = lead_in(&a, i);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact(&g.pow(delta), &h.pow(delta - 1)),
        };
        if b.degree_in(i) == 0 {
            let da = a.degree_in(i);
            let lb = lead_in(&b, i);
            let res = if da == 1 {
                lb
            } else {
                exact(&lb.pow(da), &h.pow(da - 1))
            };
            return if negate { -res } else { res };
        }
    }
}

/// Resultant as the determinant of the Sylvester matrix built with formal
/// degrees `deg_p`, `deg_q` (which may exceed the actual degrees, e.g.
/// after specialization), evaluated by fraction-free Bareiss elimination.
pub fn sylvester_resultant<F: Scalar>(
    p: &MultiPoly<F>,
    q: &MultiPoly<F>,
    var: &str,
    deg_p: u32,
    deg_q: u32,
) -> Result<MultiPoly<F>, PolyError> {
    let i = p.vars().require(var)?;
    if p.vars() != q.vars() {
        return Err(PolyError::TableMismatch);
    }
    if deg_p == 0 || deg_q == 0 {
        return Err(PolyError::DegreeZero(var.to_string()));
    }
    if p.degree_in(i) > deg_p || q.degree_in(i) > deg_q {
        return Err(PolyError::DegreeZero(var.to_string()));
    }
    let vars = p.vars().clone();
    let (m, n) = (deg_p as usize, deg_q as usize);
    let size = m + n;
    let coeff = |poly: &MultiPoly<F>, k: usize| poly.coefficient_in(i, k as u32);
    let mut mat: Vec<Vec<MultiPoly<F>>> = vec![vec![MultiPoly::zero(&vars); size]; size];
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + k] = coeff(p, m - k);
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + k] = coeff(q, n - k);
        }
    }
    Ok(bareiss_det(mat))
}

/// Fraction-free determinant with row pivoting.
pub(crate) fn bareiss_det<F: Scalar>(mut a: Vec<Vec<MultiPoly<F>>>) -> MultiPoly<F> {
    let n = a.len();
    let vars = a[0][0].vars().clone();
    let mut sign_flip = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &(&a[r][c] * &a[k][k]) - &(&a[r][k] * &a[k][c]);
                a[r][c] = exact(&num, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}
