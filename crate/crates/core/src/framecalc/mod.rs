//! Moving-frame derivations as rule tables over [`crate::polyalg`], and
//! step-by-step certificates for every identity of the constant-scalar-
//! curvature argument in 4-dimensional space forms.

use thiserror::Error;

use crate::exactnum::Rational;
use crate::polyalg::{Monomial, MultiPoly, PolyError, RatFunc};

mod beta;
mod chain;
mod context;
mod iso;
mod prelim;
mod report;

pub use beta::{commutator_residual, verify_beta_vanishing};
pub use chain::{
    derive_dkdf, derive_first_pol, derive_first_pol_with_order, derive_x1f2, eliminate_to_univariate,
    eliminate_with_seed, first_pol_paper, verify_degenerate_branches, X1f2,
};
pub use context::{
    build_full_context, build_prelim_context, build_reduced_context, build_reduced_context_with_order,
    Assumption, AssumptionKind, Constraint, Direction, FrameContext, FULL_VARS, REDUCED_VARS,
};
pub use iso::{thm31_certificate, verify_isoparametric_identity};
pub use prelim::verify_prelim_chain;
pub use report::{CertStatus, Certificate, StepReport, StepStatus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("no {direction} rule for generator {generator}")]
    MissingRule { direction: Direction, generator: String },
    #[error("{0}")]
    Invalid(String),
}

/// Cross-multiplies `lhs - rhs`, reduces the numerator modulo the
/// context's constraints and reports `verified` iff the normal form is 0.
pub fn verify_identity(
    ctx: &FrameContext,
    lhs: &RatFunc<Rational>,
    rhs: &RatFunc<Rational>,
) -> Result<StepReport, FrameError> {
    check(ctx, "identity", &format!("{lhs} = {rhs}"), "", lhs, rhs)
}

/// [`verify_identity`] with the report's name, claim and anchor supplied.
pub(crate) fn check(
    ctx: &FrameContext,
    name: &str,
    claim: &str,
    anchor: &str,
    lhs: &RatFunc<Rational>,
    rhs: &RatFunc<Rational>,
) -> Result<StepReport, FrameError> {
    let residual = residual(ctx, lhs, rhs)?;
    Ok(StepReport::new(
        name,
        claim,
        anchor,
        StepStatus::from_bool(residual.is_zero()),
        residual.to_string(),
    ))
}

/// Derives every constraint along every direction the context has rules
/// for and reduces modulo the constraints; one step per pair, verified iff
/// the normal form is 0.
pub fn verify_constraint_preservation(ctx: &FrameContext) -> Result<Certificate, FrameError> {
    let zero = RatFunc::zero(ctx.vars());
    let mut steps = Vec::new();
    for constraint in ctx.constraints() {
        let poly = RatFunc::from_poly(constraint.poly.clone());
        for dir in ctx.directions() {
            let image = ctx.derive(dir, &poly)?;
            steps.push(check(
                ctx,
                &format!("{dir}({})", constraint.name),
                &format!("{dir}({}) = 0 modulo the constraints", constraint.poly),
                &constraint.anchor,
                &image,
                &zero,
            )?);
        }
    }
    Ok(Certificate::new(
        format!("preservation {}", ctx.name()),
        steps,
        "the constraints define a differential ideal",
    ))
}

/// Normal form of the numerator of `lhs - rhs`.
pub(crate) fn residual(
    ctx: &FrameContext,
    lhs: &RatFunc<Rational>,
    rhs: &RatFunc<Rational>,
) -> Result<MultiPoly<Rational>, FrameError> {
    let lhs = ctx.expand(lhs)?;
    let rhs = ctx.expand(rhs)?;
    let diff = lhs.try_sub(&rhs)?;
    let reduced = ctx.reduce(diff.numer())?;
    // report polynomial differences at their own scale
    Ok(match diff.denom().as_constant() {
        Some(d) => reduced.scale(&d.recip().expect("nonzero denominator")),
        None => reduced,
    })
}

/// Coefficients of the given monomials (each a product of named powers).
pub(crate) fn coefficient_tuple(p: &MultiPoly<Rational>, monomials: &[&[(&str, u32)]]) -> Result<Vec<Rational>, FrameError> {
    monomials
        .iter()
        .map(|m| p.coeff_of(m).map_err(FrameError::from))
        .collect()
}

pub(crate) fn render_tuple(t: &[Rational]) -> String {
    let parts: Vec<String> = t.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Terms of `got - want`, rendered as `monomial: got vs want`.
pub(crate) fn differing_terms(got: &MultiPoly<Rational>, want: &MultiPoly<Rational>) -> String {
    let diff = got - want;
    if diff.is_zero() {
        return "0".to_string();
    }
    let one = |m: &Monomial| {
        MultiPoly::monomial(got.vars(), m.clone(), Rational::one()).to_string()
    };
    diff.terms()
        .map(|(m, _)| format!("{}: {} vs {}", one(m), got.coefficient(m), want.coefficient(m)))
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_negative_control() {
        let ctx = build_full_context();
        let lhs = ctx.rat("9/4*f^2 + k2^2 + k3^2");
        let rhs = ctx.rat("45/2*f^2 - 2*K");
        let ok = verify_identity(&ctx, &lhs, &rhs).unwrap();
        assert!(ok.verified());
        assert_eq!(ok.witness, "0");
        assert!(verify_identity(&ctx, &lhs, &lhs).unwrap().verified());
        let bad = verify_identity(&ctx, &lhs, &(&rhs + &ctx.rat("1"))).unwrap();
        assert_eq!(bad.status, StepStatus::Mismatch);
        assert_eq!(bad.witness, "-1");
    }

    #[test]
    fn preservation_holds_except_along_x1() {
        // along X1 each constraint produces the next relation of the proof
        let full = build_full_context();
        let cert = verify_constraint_preservation(&full).unwrap();
        for s in &cert.steps {
            assert_eq!(s.verified(), s.name != "X1(sum_curv23)", "{}: {}", s.name, s.witness);
        }
        let l1 = full.poly("(k2 + 3/2*f)*alpha2 + (k3 + 3/2*f)*alpha3 - 9/2*u");
        assert_eq!(cert.step("X1(sum_curv23)").unwrap().witness, full.reduce(&l1).unwrap().to_string());

        let reduced = build_reduced_context();
        let cert = verify_constraint_preservation(&reduced).unwrap();
        assert_eq!(cert.steps.len(), 1);
        let x1f2 = reduced.poly("u*(13/2*K + 10*c - 108*f^2) - f*S*(13/2*K + 15*c - 441/4*f^2)");
        assert_eq!(cert.steps[0].witness, x1f2.to_string());
    }
}
