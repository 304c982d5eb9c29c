use crate::exactnum::{q, QuadExt, Rational, Scalar};
use crate::polyalg::{parse_polynomial, sturm_count, Bound, Monomial, MultiPoly, RatFunc, VarTable};

use super::{Certificate, FrameError, StepReport, StepStatus};

const ANCHOR_NORM: &str = "eq-akalpha, \"the square of the norm of the shape operator\"; \
    \"$k_2 = \\cot\\big(\\theta + \\frac{\\pi}{3}\\big)=\\frac{k_1-\\sqrt 3}{1+\\sqrt{3}k_1}$\"";
const ANCHOR_SEXTIC: &str = "Theorem 3.1, \"$|A|^2=m=3\\cdot2^q$\"; \"$3k_1^6-9k_1^4+21k_1^2+1=0$\"";
const ANCHOR_NO_ROOTS: &str = "Theorem 3.1, \"an equation with no real roots\"";

/// The sextic as printed.
pub const SEXTIC: &str = "3*k^6 - 9*k^4 + 21*k^2 + 1";
const NORM_NUMERATOR: &str = "9*k^6 + 45*k^2 + 6";

fn k_table() -> VarTable {
    VarTable::new(["k"]).expect("static table")
}

fn sqrt3() -> QuadExt {
    QuadExt::sqrt_of(q(3, 1)).expect("3 is not a square")
}

/// `(k^2 + k2^2 + k3^2) * (1 - 3k^2)^2` over `Q(sqrt 3)`, with
/// `k2 = (k - sqrt3)/(1 + sqrt3*k)` and `k3 = (k + sqrt3)/(1 - sqrt3*k)`.
fn norm_times_denominator() -> Result<RatFunc<QuadExt>, FrameError> {
    let t = k_table();
    let k = MultiPoly::<QuadExt>::var(&t, "k")?;
    let one = MultiPoly::<QuadExt>::one(&t);
    let r3 = MultiPoly::constant(&t, sqrt3());
    let rk3 = &r3 * &k;
    let k2 = RatFunc::new(&k - &r3, &one + &rk3)?;
    let k3 = RatFunc::new(&k + &r3, &one - &rk3)?;
    let kk = RatFunc::from_poly(k.clone());
    let sum = kk.pow(2).try_add(&k2.pow(2))?.try_add(&k3.pow(2))?;
    let den = &one - &(&k.pow(2) * &MultiPoly::constant(&t, QuadExt::rational(q(3, 1))));
    Ok(sum.try_mul(&RatFunc::from_poly(den.pow(2)))?)
}

/// The norm identity `(k^2 + k2^2 + k3^2)(1 - 3k^2)^2 = 9k^6 + 45k^2 + 6`
/// for three principal curvatures at angles pi/3 apart, checked over
/// `Q(sqrt 3)` with `k` symbolic.
pub fn verify_isoparametric_identity() -> Result<StepReport, FrameError> {
    let lhs = norm_times_denominator()?;
    let rhs = parse_polynomial(NORM_NUMERATOR, &k_table())?.map_coeffs(|c| QuadExt::rational(c.clone()));
    let residual = lhs.try_sub(&RatFunc::from_poly(rhs))?;
    Ok(StepReport::new(
        "norm_identity",
        format!("(k^2 + k2^2 + k3^2)*(1 - 3*k^2)^2 = {NORM_NUMERATOR}"),
        ANCHOR_NORM,
        StepStatus::from_bool(residual.is_zero()),
        residual.to_string(),
    ))
}

/// Supplementary checks of the norm identity: the value at `k = 1` and the
/// cancellation of every `sqrt 3` component.
fn norm_side_checks() -> Result<Vec<StepReport>, FrameError> {
    let lhs = norm_times_denominator()?;
    let poly = lhs.as_poly();
    let rational = poly.as_ref().map(|p| p.terms().all(|(_, c)| c.to_rational().is_some()));
    let at_one = poly.as_ref().map(|p| p.evaluate(&[QuadExt::one()]));
    Ok(vec![
        StepReport::new(
            "norm_identity_k=1",
            "at k = 1: k2 = sqrt3 - 2, k3 = -(2 + sqrt3), sum of squares 15 = 60/4",
            ANCHOR_NORM,
            StepStatus::from_bool(at_one == Some(QuadExt::rational(q(60, 1)))),
            at_one.map(|v| v.to_string()).unwrap_or_else(|| "not a polynomial".into()),
        ),
        StepReport::new(
            "norm_identity_rational",
            "the sqrt 3 components of the expanded left side cancel",
            ANCHOR_NORM,
            StepStatus::from_bool(rational == Some(true)),
            poly.map(|p| p.to_string()).unwrap_or_else(|| "not a polynomial".into()),
        ),
    ])
}

/// The sextic and its image under `k^2 -> u` (a cubic in `u`), both over `k`.
fn halve_degrees(p: &MultiPoly<Rational>) -> Option<MultiPoly<Rational>> {
    let terms: Option<Vec<_>> = p
        .terms()
        .map(|(m, c)| (m.exp(0) % 2 == 0).then(|| (Monomial::var(1, 0, m.exp(0) / 2), c.clone())))
        .collect();
    terms.map(|t| MultiPoly::from_terms(p.vars(), t))
}

/// No isoparametric hypersurface with three distinct principal curvatures
/// in the unit sphere is proper biharmonic: the biharmonic condition
/// `|A|^2 = m` with `m = 3*2^q` reduces to a sextic without real roots.
pub fn thm31_certificate() -> Result<Certificate, FrameError> {
    let mut steps = vec![verify_isoparametric_identity()?];
    steps.extend(norm_side_checks()?);

    // t stands for 2^q: t*(9k^6 + 45k^2 + 6) = 3t*(1 - 3k^2)^2
    let kt = VarTable::new(["k", "t"]).expect("static table");
    let relation = parse_polynomial(&format!("t*({NORM_NUMERATOR}) - 3*t*(1 - 3*k^2)^2"), &kt)?;
    let t = parse_polynomial("t", &kt)?;
    let without_t = relation.exact_div(&t)?;
    let q_free = without_t.as_ref().is_some_and(|p| !p.uses_var(1));
    steps.push(StepReport::new(
        "q_independence",
        "the multiplicity factor 2^q divides out of |A|^2 = 3*2^q",
        ANCHOR_SEXTIC,
        StepStatus::from_bool(q_free),
        without_t.as_ref().map(|p| p.to_string()).unwrap_or_else(|| relation.to_string()),
    ));
    let derived = without_t
        .ok_or_else(|| FrameError::Invalid("2^q does not divide the relation".into()))?
        .retable(&k_table())?
        .primitive_part();
    let printed = parse_polynomial(SEXTIC, &k_table())?;
    steps.push(StepReport::new(
        "sextic",
        format!("the cleared, primitive relation is {SEXTIC}"),
        ANCHOR_SEXTIC,
        StepStatus::from_bool(derived == printed),
        derived.to_string(),
    ));
    let roots = sturm_count(&derived, "k", &Bound::NegInf, &Bound::PosInf)?;
    steps.push(StepReport::new(
        "sextic_real_roots",
        "the sextic has no real roots (Sturm count over the real line)",
        ANCHOR_NO_ROOTS,
        StepStatus::from_bool(roots == 0),
        roots.to_string(),
    ));
    let cubic = halve_degrees(&derived).ok_or_else(|| FrameError::Invalid("sextic is not even".into()))?;
    let positive = sturm_count(&cubic, "k", &Bound::Finite(Rational::zero()), &Bound::PosInf)?;
    steps.push(StepReport::new(
        "cubic_positive_roots",
        "with u = k^2, the cubic 3u^3 - 9u^2 + 21u + 1 has no roots in (0, oo)",
        ANCHOR_NO_ROOTS,
        StepStatus::from_bool(positive == 0),
        positive.to_string(),
    ));
    Ok(Certificate::new(
        "thm31",
        steps,
        "there are no proper biharmonic isoparametric hypersurfaces with three distinct principal \
         curvatures in the unit sphere",
    ))
}
