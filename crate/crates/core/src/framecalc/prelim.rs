use crate::exactnum::{q, Rational};
use crate::polyalg::{reduce_by_rewrite, MultiPoly};

use super::context::{
    ANCHOR_GAUSS2, ANCHOR_NORM, ANCHOR_X1F1, ANCHOR_X1K, ANCHOR_X1X1F1,
};
use super::report::comparison;
use super::{
    build_full_context, build_prelim_context, build_reduced_context, check, coefficient_tuple, render_tuple,
    Certificate, Direction, FrameError, StepReport, StepStatus,
};

const ANCHOR_G1R: &str =
    "eq. (Gauss1_reloaded) \"$X_1(X_1(k_2))=\\frac{21}{2}\\alpha_2 X_1(f)+\\ldots$\"";
const ANCHOR_FPP: &str =
    "eq. (f''_from_Gauss1) \"$\\frac{7}{3}X_1(f)(\\alpha_2+\\alpha_3)+f(4K+5c-9f^2)$\"";

/// The printed right-hand sides of the two Gauss1_reloaded identities.
const G1R_K2: &str = "21/2*alpha2*u + 2*(K + c)*(k3 + 3/2*f) + (c - 3/2*f*k2)*(k2 + 3/2*f)";
const G1R_K3: &str = "21/2*alpha3*u + 2*(K + c)*(k2 + 3/2*f) + (c - 3/2*f*k3)*(k3 + 3/2*f)";

/// Printed second derivative of f from the first Gauss relation, solved for
/// `X1(u)`, over the reduced variables.
const FPP: &str = "7/3*u*S + f*(4*K + 5*c - 9*f^2)";
const II_RHS: &str = "u*S - (2*K + 3*c - 45/2*f^2)*f";
const R_TILDE: &str = "-9/2*K - 6*c + 189/8*f^2";
const X1X1F1: &str = "f*(-13/2*K - 9*c + 369/8*f^2)";

const TRIPLE: [&[(&str, u32)]; 3] = [&[("K", 1)], &[("c", 1)], &[("f", 2)]];
const TRIPLE_F: [&[(&str, u32)]; 3] = [&[("K", 1), ("f", 1)], &[("c", 1), ("f", 1)], &[("f", 3)]];

fn tuple_step(
    name: &str,
    claim: &str,
    anchor: &str,
    got: &[Rational],
    want: &[Rational],
) -> StepReport {
    let labels = ["K", "c", "f^2"];
    let items: Vec<(&str, String, String)> = labels
        .iter()
        .zip(got.iter().zip(want))
        .map(|(l, (g, w))| (*l, g.to_string(), w.to_string()))
        .collect();
    let ok = got == want;
    let witness = if ok {
        render_tuple(got)
    } else {
        comparison(&items)
    };
    StepReport::new(name, claim, anchor, StepStatus::from_bool(ok), witness)
}

/// Steps (a)–(e) of the preliminary chain: |A|², the second X1-derivatives
/// of the curvatures, the algebraic relation for `u*S`, the closed form of
/// `X1(u)`, and the X1-derivatives of `K` and `S`.
pub fn verify_prelim_chain() -> Result<Certificate, FrameError> {
    let full = build_full_context();
    let pre = build_prelim_context();
    let red = build_reduced_context();
    let mut steps = Vec::new();

    // (a) |A|^2 with k1 = -3/2 f
    let a2 = full.rat("(-3/2*f)^2 + k2^2 + k3^2");
    let norm = full.rat("45/2*f^2 - 2*K");
    steps.push(check(
        &full,
        "norm_A2",
        "k1^2 + k2^2 + k3^2 = 45/2*f^2 - 2*K modulo k2 + k3 = 9/2*f",
        ANCHOR_NORM,
        &a2,
        &norm,
    )?);
    {
        let k = full.rat("9/4*f");
        let kk = full.rat("81/16*f^2");
        let lhs = a2.substitute_name("k2", &k)?.substitute_name("k3", &k)?;
        let rhs = norm.substitute_name("K", &kk)?;
        let want = full.rat("99/8*f^2");
        let ok = lhs == want && rhs == want;
        steps.push(StepReport::new(
            "norm_A2_spot_check",
            "k2 = k3 = 9/4*f gives |A|^2 = 99/8*f^2 both ways",
            ANCHOR_NORM,
            StepStatus::from_bool(ok),
            format!("sum of squares {lhs}; closed form {rhs}"),
        ));
    }

    // (b) second derivatives of k2, k3, with beta = 0, the X1-derivative of
    // the curvature sum and alpha2*alpha3 = -(K + c)
    for (k, printed) in [("k2", G1R_K2), ("k3", G1R_K3)] {
        let once = pre.derive_poly_text(Direction::X1, k)?;
        let twice = pre.derive(Direction::X1, &once)?;
        steps.push(check(
            &pre,
            &format!("Gauss1_reloaded_{k}"),
            &format!("X1(X1({k})) = {printed}"),
            ANCHOR_G1R,
            &twice,
            &pre.rat(printed),
        )?);
    }

    // (c) sum of (b) is 9/2 X1(X1(f)); compare with f''_from_Gauss1
    let sum = full.rat(&format!("2/9*(({G1R_K2}) + ({G1R_K3}))"));
    steps.push(check(
        &full,
        "f''_from_Gauss1",
        &format!("2/9*(X1(X1(k2)) + X1(X1(k3))) = {FPP}"),
        ANCHOR_FPP,
        &sum,
        &full.rat(FPP),
    )?);
    let residual = &red.poly(FPP) - &red.poly(II_RHS);
    let expected = red.poly(&format!("4/3*(u*S - f*({R_TILDE}))"));
    steps.push(StepReport::new(
        "X1f1_residual",
        "Gauss-derived X1(X1(f)) minus the Laplacian relation for f = 4/3*(u*S - f*R), R = -9/2*K - 6*c + 189/8*f^2",
        ANCHOR_X1F1,
        StepStatus::from_bool(residual == expected),
        (&residual - &expected).to_string(),
    ));
    // R recovered from the residual: (u*S - 3/4*residual)/f
    let r_derived = (&red.poly("u*S") - &residual.scale(&q(3, 4)))
        .exact_div(&red.poly("f"))?
        .ok_or_else(|| FrameError::Invalid("residual is not divisible by f".into()))?;
    let got = coefficient_tuple(&r_derived, &TRIPLE)?;
    steps.push(tuple_step(
        "X1f1_tuple",
        "X1(f)*(alpha2 + alpha3) = f*(a*K + b*c + d*f^2) with (a, b, d) = (-9/2, -6, 189/8)",
        ANCHOR_X1F1,
        &got,
        &[q(-9, 2), q(-6, 1), q(189, 8)],
    ));

    // (d) substitute the relation back
    let us_rule = &red.constraint("X1f1").expect("built-in").rule;
    let from_fpp = reduce_by_rewrite(&red.poly(FPP), us_rule)?;
    let from_ii = reduce_by_rewrite(&red.poly(II_RHS), us_rule)?;
    let printed = red.poly(X1X1F1);
    steps.push(StepReport::new(
        "X1X1f1",
        format!("{FPP} reduced by u*S -> f*R equals {X1X1F1}"),
        ANCHOR_X1X1F1,
        StepStatus::from_bool(from_fpp == printed),
        (&from_fpp - &printed).to_string(),
    ));
    steps.push(StepReport::new(
        "X1X1f1_vs_laplacian",
        "the Laplacian relation for f reduced by u*S -> f*R gives the same X1(X1(f))",
        ANCHOR_X1X1F1,
        StepStatus::from_bool(from_ii == printed),
        (&from_ii - &printed).to_string(),
    ));
    let got = coefficient_tuple(&from_fpp, &TRIPLE_F)?;
    steps.push(tuple_step(
        "X1X1f1_tuple",
        "X1(X1(f)) = f*(a*K + b*c + d*f^2) with (a, b, d) = (-13/2, -9, 369/8)",
        ANCHOR_X1X1F1,
        &got,
        &[q(-13, 2), q(-9, 1), q(369, 8)],
    ));
    let reduced_rule = red.rule(Direction::X1, "u").expect("built-in").as_poly();
    steps.push(StepReport::new(
        "reduced_X1u_rule",
        "the reduced context's X1(u) rule is the derived closed form",
        ANCHOR_X1X1F1,
        StepStatus::from_bool(reduced_rule.as_ref() == Some(&printed)),
        reduced_rule.map(|p| (&p - &printed).to_string()).unwrap_or_default(),
    ));

    // (e) X1(K) and X1(S)
    let x1k = pre.derive_poly_text(Direction::X1, "K")?;
    steps.push(check(
        &pre,
        "X1K_middle",
        "X1(K) = -(alpha2*alpha3 + c)*(alpha2 + alpha3) + 3/2*f*(alpha2*k3 + alpha3*k2)",
        ANCHOR_X1K,
        &x1k,
        &pre.rat("-(alpha2*alpha3 + c)*(alpha2 + alpha3) + 3/2*f*(alpha2*k3 + alpha3*k2)"),
    )?);
    steps.push(check(
        &pre,
        "X1K",
        "X1(K) = (K + 9*f^2)*S - 27/4*f*u",
        ANCHOR_X1K,
        &x1k,
        &pre.rat("(K + 9*f^2)*S - 27/4*f*u"),
    )?);
    let x1s = pre.derive_poly_text(Direction::X1, "S")?;
    steps.push(check(
        &pre,
        "X1S",
        "X1(S) = S^2 + 2*K + 4*c - 27/4*f^2",
        ANCHOR_GAUSS2,
        &x1s,
        &pre.rat("S^2 + 2*K + 4*c - 27/4*f^2"),
    )?);
    for (g, text) in [("K", "(K + 9*f^2)*S - 27/4*f*u"), ("S", "S^2 + 2*K + 4*c - 27/4*f^2")] {
        let rule = red.rule(Direction::X1, g).expect("built-in").as_poly();
        let want: MultiPoly<Rational> = red.poly(text);
        steps.push(StepReport::new(
            format!("reduced_X1{g}_rule"),
            format!("the reduced context's X1({g}) rule is {text}"),
            ANCHOR_X1K,
            StepStatus::from_bool(rule.as_ref() == Some(&want)),
            rule.map(|p| (&p - &want).to_string()).unwrap_or_default(),
        ));
    }

    Ok(Certificate::new(
        "prelim",
        steps,
        "X1(f)*(alpha2 + alpha3) = f*(-9/2*K - 6*c + 189/8*f^2) and \
         X1(X1(f)) = f*(-13/2*K - 9*c + 369/8*f^2) hold on every such hypersurface",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prelim_chain_verifies() {
        let cert = verify_prelim_chain().unwrap();
        for s in &cert.steps {
            assert!(s.verified(), "{}: {}", s.name, s.witness);
        }
        assert!(cert.verified());
        assert_eq!(cert.step("X1f1_tuple").unwrap().witness, "(-9/2, -6, 189/8)");
        assert_eq!(cert.step("X1X1f1_tuple").unwrap().witness, "(-13/2, -9, 369/8)");
    }
}
