use crate::exactnum::{q, Rational};
use crate::polyalg::{MultiPoly, RatFunc};

use super::{
    build_full_context, check, residual, Certificate, Direction, FrameContext, FrameError, StepReport, StepStatus,
};

const ANCHOR_B1: &str = "eq. (beta3=0_1) \"$[X_1,X_2]\\alpha_2=\\alpha_2X_2(\\alpha_2)$\"";
const ANCHOR_B2: &str = "eq. (beta3=0_2) \"$[X_1,X_2]\\alpha_2=X_1(X_2(\\alpha_2))-X_2(X_1(\\alpha_2))$\"";
const ANCHOR_B3: &str = "eq. (beta3=0_3) \"$X_1\\Big(\\frac{f}{X_1(f)}\\Big)=-\\frac{(\\alpha_3-\\alpha_2)^2}{(k_3-k_2)^2}$\"";
const ANCHOR_BRACKET: &str = "eq. (comm 12_13) \"$[X_1,X_i]=\\ldots=\\alpha_i X_i$\"";
const ANCHOR_B4: &str = "eq. (beta3=0_4) \"$2(\\alpha_3-\\alpha_2)=-\\frac{f}{X_1(f)}(k_3-k_2)^2$\"";
const ANCHOR_B5: &str = "eq. (beta3=0_5) \"$\\alpha_3-\\alpha_2=-2\\frac{f}{X_1(f)}(k_3-k_2)^2$\"";
const ANCHOR_CONTRA: &str = "§3 \"lead to a contradiction\"";
const ANCHOR_SYM: &str = "§3 \"by using the symmetry of the equations\"";

/// Renaming with scalar factors, `(from, to, factor)` over the full table.
type Relabel = Vec<(usize, usize, Rational)>;

/// The 2<->3 index swap. Exchanging the roles of X2 and X3 maps
/// `beta3 = X2(k3)/(k3 - k2)` to `X3(k2)/(k2 - k3) = -beta2`, so the
/// β-functions swap with a sign. `w` is left alone: in each case it names
/// `X1` of that case's curvature difference.
fn sigma(ctx: &FrameContext) -> Relabel {
    let v = ctx.vars();
    let i = |n: &str| v.require(n).expect("full table");
    vec![
        (i("k2"), i("k3"), q(1, 1)),
        (i("k3"), i("k2"), q(1, 1)),
        (i("alpha2"), i("alpha3"), q(1, 1)),
        (i("alpha3"), i("alpha2"), q(1, 1)),
        (i("beta2"), i("beta3"), q(-1, 1)),
        (i("beta3"), i("beta2"), q(-1, 1)),
    ]
}

/// One instance of the argument: β3 along X2, or its mirror β2 along X3.
struct Case {
    label: &'static str,
    dir: Direction,
    relabel: Relabel,
}

impl Case {
    fn map(&self, ctx: &FrameContext, r: &RatFunc<Rational>) -> RatFunc<Rational> {
        if self.relabel.is_empty() {
            r.clone()
        } else {
            ctx.map_rat(r, &self.relabel)
        }
    }

    /// Parses `num / den` written for the β3 case and relabels it.
    fn expr(&self, ctx: &FrameContext, num: &str, den: &str) -> RatFunc<Rational> {
        self.map(ctx, &ctx.ratfunc(num, den))
    }

    fn name(&self, step: &str) -> String {
        format!("{}:{step}", self.label)
    }
}

/// `X1(X(g)) - X(X1(g)) - alpha*X(g)` for the bracket `[X1, X] = alpha*X`,
/// reduced modulo the context's constraints.
pub fn commutator_residual(
    ctx: &FrameContext,
    dir: Direction,
    alpha: &str,
    generator: &str,
) -> Result<MultiPoly<Rational>, FrameError> {
    let g = ctx.rat(generator);
    let xg = ctx.derive(dir, &g)?;
    let lhs = ctx.derive(Direction::X1, &xg)?.try_sub(&ctx.derive(dir, &ctx.derive(Direction::X1, &g)?)?)?;
    let rhs = ctx.rat(alpha).try_mul(&xg)?;
    residual(ctx, &lhs, &rhs)
}

fn run_case(full: &FrameContext, case: &Case, steps: &mut Vec<StepReport>) -> Result<bool, FrameError> {
    let dir = case.dir;
    let x1 = |r: &RatFunc<Rational>| full.derive(Direction::X1, r);
    let e = |num: &str, den: &str| case.expr(full, num, den);
    let a2 = e("alpha2", "1");
    let beta = e("beta3", "1");
    let d = e("k3 - k2", "1");
    let g = e("f", "u");

    // (a) the bracket applied to alpha2, computed both ways
    let x_a2 = full.derive(dir, &a2)?;
    let lhs = a2.try_mul(&x_a2)?;
    let rhs = x1(&x_a2)?.try_sub(&full.derive(dir, &x1(&a2)?)?)?;
    let x1d = x1(&d)?;
    let x1g = x1(&g)?;

    if case.relabel.is_empty() {
        // printed intermediates: textual comparison only
        let printed1 = e("beta3*(-alpha2*alpha3*u + alpha2^2*u - 2*f*(k3 - k2)^2*alpha2)", "u");
        let r1 = residual(full, &lhs, &printed1)?;
        steps.push(StepReport::new(
            case.name("beta3=0_1"),
            "alpha2*X2(alpha2) = beta3*(-alpha2*alpha3 + alpha2^2 - 2*f/u*(k3 - k2)^2*alpha2)",
            ANCHOR_B1,
            if r1.is_zero() { StepStatus::Verified } else { StepStatus::PaperTextMismatch },
            r1.to_string(),
        ));
        let g2 = e("2*f", "u");
        let inner = g2
            .try_mul(&e("-2*(k3 - k2)", "1").try_mul(&x1d)?.try_add(&e("(k3 - k2)^2*(2*alpha2 - alpha3)", "1"))?)?
            .try_sub(&e("2*(k3 - k2)^2", "1").try_mul(&x1g)?)?;
        let printed2 = beta.try_mul(&e("-2*alpha3^2 - alpha2^2 + 3*alpha2*alpha3", "1").try_add(&inner)?)?;
        let r2 = residual(full, &rhs, &printed2)?;
        steps.push(StepReport::new(
            case.name("beta3=0_2"),
            "X1(X2(alpha2)) - X2(X1(alpha2)) matches the printed expansion",
            ANCHOR_B2,
            if r2.is_zero() { StepStatus::Verified } else { StepStatus::PaperTextMismatch },
            r2.to_string(),
        ));
    }

    let diff = rhs.try_sub(&lhs)?;
    let quotient = diff.try_div(&beta)?;
    let beta_vars: Vec<usize> = beta.numer().used_vars();
    let free = beta_vars
        .iter()
        .all(|&i| !quotient.numer().uses_var(i) && !quotient.denom().uses_var(i));
    steps.push(StepReport::new(
        case.name("bracket_factor"),
        format!("the two evaluations of the bracket on alpha2 differ by exactly {beta} times a {beta}-free factor"),
        ANCHOR_B1,
        StepStatus::from_bool(free && !quotient.is_zero()),
        format!("factor degree in beta: {}", if free { 1 } else { 0 }),
    ));
    // E = -2*D^2 * e3 with e3 the printed relation (lhs - rhs)
    let e3 = x1g.try_sub(
        &e("-(alpha3 - alpha2)^2", "(k3 - k2)^2")
            .try_add(&g.try_mul(&e("3*alpha2 - alpha3", "1").try_sub(&e("2", "1").try_mul(&x1d.try_div(&d)?)?)?)?)?,
    )?;
    steps.push(check(
        full,
        &case.name("beta3=0_3"),
        "bracket difference / beta = -2*(k3 - k2)^2 * [X1(f/u) + (alpha3 - alpha2)^2/(k3 - k2)^2 - f/u*(3*alpha2 - alpha3 - 2*X1(k3 - k2)/(k3 - k2))]",
        ANCHOR_B3,
        &quotient,
        &e("-2*(k3 - k2)^2", "1").try_mul(&e3)?,
    )?);

    // (b) X(w) from the bracket applied to k3 - k2, with w = X1(k3 - k2)
    let xd = full.derive(dir, &d)?;
    let via_bracket = x1(&xd)?.try_sub(&a2.try_mul(&xd)?)?;
    let w_rule = e("2*beta3*(w + (k3 - k2)*(alpha3 - alpha2))", "1");
    let bracket_ok = residual(full, &via_bracket, &w_rule.substitute_name("w", &x1d)?)?;
    steps.push(StepReport::new(
        case.name("X2_of_X1D"),
        "[X1, X](k3 - k2) = alpha*X(k3 - k2) gives X(w) = 2*beta3*(w + (k3 - k2)*(alpha3 - alpha2)), i.e. X(X1(D)/D) = 2*(alpha3 - alpha2)*beta3",
        ANCHOR_BRACKET,
        StepStatus::from_bool(bracket_ok.is_zero()),
        bracket_ok.to_string(),
    ));
    let ext = full.clone().with_rule(dir, "w", w_rule);
    let e3w = x1g.try_sub(
        &e("-(alpha3 - alpha2)^2", "(k3 - k2)^2")
            .try_add(&g.try_mul(&e("3*alpha2 - alpha3", "1").try_sub(&e("2*w", "k3 - k2"))?)?)?,
    )?;
    let q4 = e("2*(alpha3 - alpha2)*u + f*(k3 - k2)^2", "u");
    let x_e3 = ext.derive(dir, &e3w)?;
    steps.push(check(
        &ext,
        &case.name("beta3=0_4"),
        "X(e3) = 6*beta3*(f/u)*[2*(alpha3 - alpha2) + f/u*(k3 - k2)^2]; with beta3, f, u nonzero: 2*(alpha3 - alpha2) = -f/u*(k3 - k2)^2",
        ANCHOR_B4,
        &x_e3,
        &e("6", "1").try_mul(&beta)?.try_mul(&g)?.try_mul(&q4)?,
    )?);

    // (c) differentiate once more
    let q5 = e("(alpha3 - alpha2)*u + 2*f*(k3 - k2)^2", "u");
    let x_q4 = ext.derive(dir, &q4)?;
    steps.push(check(
        &ext,
        &case.name("beta3=0_5"),
        "X(2*(alpha3 - alpha2) + f/u*(k3 - k2)^2) = 4*beta3*[(alpha3 - alpha2) + 2*f/u*(k3 - k2)^2]; hence alpha3 - alpha2 = -2*f/u*(k3 - k2)^2",
        ANCHOR_B5,
        &x_q4,
        &e("4", "1").try_mul(&beta)?.try_mul(&q5)?,
    )?);

    // (d) combine
    let combo = check(
        &ext,
        &case.name("contradiction"),
        "2*[(alpha3 - alpha2) + 2*f/u*D^2] - [2*(alpha3 - alpha2) + f/u*D^2] = 3*(f/u)*(k3 - k2)^2, \
         nonzero under f > 0, u != 0, k2 != k3; so beta3 = 0",
        ANCHOR_CONTRA,
        &e("2", "1").try_mul(&q5)?.try_sub(&q4)?,
        &e("3*f*(k3 - k2)^2", "u"),
    )?;
    let ok = combo.verified();
    steps.push(combo);
    Ok(ok)
}

/// Certificate that β2 and β3 vanish: the bracket on α2 forces a relation
/// whose X2-derivatives give two incompatible linear equations.
pub fn verify_beta_vanishing() -> Result<Certificate, FrameError> {
    let full = build_full_context();
    let mut steps = Vec::new();
    let case3 = Case {
        label: "beta3",
        dir: Direction::X2,
        relabel: Vec::new(),
    };
    run_case(&full, &case3, &mut steps)?;

    // (e) symmetry of the rule tables, then the mirrored run
    let s = sigma(&full);
    let mut mismatches = Vec::new();
    for (from, to) in [(Direction::X1, Direction::X1), (Direction::X2, Direction::X3)] {
        for (gname, image) in full.rules(from) {
            let gi = full.vars().require(gname)?;
            let (target, factor) = s
                .iter()
                .find(|(f, _, _)| *f == gi)
                .map(|(_, t, k)| (*t, k.clone()))
                .unwrap_or((gi, q(1, 1)));
            let tname = full.vars().name(target);
            let mapped = full.map_rat(image, &s);
            let want = full
                .rule(to, tname)
                .map(|r| r.scale(&factor));
            if want.as_ref() != Some(&mapped) {
                mismatches.push(format!("{from}({gname}) -> {to}({tname})"));
            }
        }
    }
    steps.push(StepReport::new(
        "beta2:rule_symmetry",
        "under k2<->k3, alpha2<->alpha3, beta2 -> -beta3, beta3 -> -beta2 the X1 table is invariant and the X2 table becomes the X3 table",
        ANCHOR_SYM,
        StepStatus::from_bool(mismatches.is_empty()),
        if mismatches.is_empty() { "0".to_string() } else { mismatches.join("; ") },
    ));
    let case2 = Case {
        label: "beta2",
        dir: Direction::X3,
        relabel: s,
    };
    run_case(&full, &case2, &mut steps)?;

    Ok(Certificate::new(
        "beta",
        steps,
        "beta2 = beta3 = 0: otherwise 3*(f/u)*(k3 - k2)^2 = 0, contradicting f > 0, u != 0, k2 != k3",
    ))
}
