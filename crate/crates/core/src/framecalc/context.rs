use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;
use crate::polyalg::{parse_polynomial, reduce_all, MultiPoly, RatFunc, RewriteRule, VarTable};

use super::FrameError;

/// Frame vector field along which a derivation acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    X1,
    X2,
    X3,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::X1 => "X1",
            Direction::X2 => "X2",
            Direction::X3 => "X3",
        })
    }
}

/// Polynomial relation `poly = 0` together with the rewrite rule used to
/// reduce modulo it.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub name: String,
    pub anchor: String,
    pub poly: MultiPoly<Rational>,
    pub rule: RewriteRule<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AssumptionKind {
    NonZero,
    Positive,
}

/// Sign fact the computation is allowed to divide by.
#[derive(Clone, Debug)]
pub struct Assumption {
    pub poly: MultiPoly<Rational>,
    pub kind: AssumptionKind,
    pub anchor: String,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AssumptionKind::NonZero => write!(f, "{} != 0", self.poly),
            AssumptionKind::Positive => write!(f, "{} > 0", self.poly),
        }
    }
}

/// Generators, derivation rules and side relations of a frame computation.
///
/// Contexts are immutable once built; the `with_*` methods return extended
/// copies.
#[derive(Clone, Debug)]
pub struct FrameContext {
    name: String,
    vars: VarTable,
    rules: BTreeMap<Direction, BTreeMap<usize, RatFunc<Rational>>>,
    constants: Vec<usize>,
    abbreviations: Vec<(usize, MultiPoly<Rational>)>,
    constraints: Vec<Constraint>,
    assumptions: Vec<Assumption>,
}

/// Variable order of the full context. Every rewrite rule of the full and
/// prelim contexts replaces its lhs by lexicographically smaller terms in
/// this order, and the lhs monomials are pairwise coprime, so reduction
/// yields a unique normal form.
pub const FULL_VARS: [&str; 12] = [
    "u", "beta2", "beta3", "w", "alpha3", "alpha2", "k3", "k2", "S", "K", "f", "c",
];

/// Default variable order of the reduced context.
pub const REDUCED_VARS: [&str; 5] = ["u", "S", "K", "f", "c"];

impl FrameContext {
    fn empty(name: &str, vars: VarTable) -> Self {
        FrameContext {
            name: name.to_string(),
            vars,
            rules: BTreeMap::new(),
            constants: Vec::new(),
            abbreviations: Vec::new(),
            constraints: Vec::new(),
            assumptions: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    /// Parses a polynomial over this context's table.
    pub fn poly(&self, text: &str) -> MultiPoly<Rational> {
        parse_polynomial(text, &self.vars).unwrap_or_else(|e| panic!("built-in polynomial {text:?}: {e}"))
    }

    /// Parses `num / den` over this context's table.
    pub fn ratfunc(&self, num: &str, den: &str) -> RatFunc<Rational> {
        RatFunc::new(self.poly(num), self.poly(den)).expect("nonzero built-in denominator")
    }

    pub fn rat(&self, text: &str) -> RatFunc<Rational> {
        RatFunc::from_poly(self.poly(text))
    }

    pub fn rule(&self, dir: Direction, generator: &str) -> Option<&RatFunc<Rational>> {
        let i = self.vars.index(generator)?;
        self.rules.get(&dir)?.get(&i)
    }

    pub fn rule_count(&self, dir: Direction) -> usize {
        self.rules.get(&dir).map(BTreeMap::len).unwrap_or(0)
    }

    /// `(generator, image)` pairs of one direction, in table order.
    pub fn rules(&self, dir: Direction) -> Vec<(&str, &RatFunc<Rational>)> {
        self.rules
            .get(&dir)
            .map(|m| m.iter().map(|(i, r)| (self.vars.name(*i), r)).collect())
            .unwrap_or_default()
    }

    pub fn directions(&self) -> Vec<Direction> {
        self.rules.keys().copied().collect()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn constraint(&self, name: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.name == name)
    }

    pub fn assumptions(&self) -> &[Assumption] {
        &self.assumptions
    }

    pub fn abbreviations(&self) -> impl Iterator<Item = (&str, &MultiPoly<Rational>)> {
        self.abbreviations.iter().map(|(i, p)| (self.vars.name(*i), p))
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_rule(mut self, dir: Direction, generator: &str, image: RatFunc<Rational>) -> Self {
        let i = self.vars.require(generator).expect("generator in table");
        self.rules.entry(dir).or_default().insert(i, image);
        self
    }

    pub fn with_constant(mut self, name: &str) -> Self {
        let i = self.vars.require(name).expect("constant in table");
        self.constants.push(i);
        self
    }

    pub fn with_abbreviation(mut self, name: &str, value: &str) -> Self {
        let i = self.vars.require(name).expect("abbreviation in table");
        let p = self.poly(value);
        self.abbreviations.push((i, p));
        self
    }

    /// Adds the relation `lhs - rhs = 0` with rewrite rule `lhs -> rhs`,
    /// `lhs` being a product of named powers.
    pub fn with_constraint(
        mut self,
        name: &str,
        anchor: &str,
        poly: &str,
        lhs: &[(&str, u32)],
        rhs: &str,
    ) -> Self {
        let rhs_p = self.poly(rhs);
        let rule = RewriteRule::from_names(&self.vars, lhs, rhs_p, name, anchor)
            .unwrap_or_else(|e| panic!("built-in rule {name}: {e}"));
        let poly = self.poly(poly);
        self.constraints.push(Constraint {
            name: name.to_string(),
            anchor: anchor.to_string(),
            poly,
            rule,
        });
        self
    }

    pub fn with_assumption(mut self, poly: &str, kind: AssumptionKind, anchor: &str) -> Self {
        let poly = self.poly(poly);
        self.assumptions.push(Assumption {
            poly,
            kind,
            anchor: anchor.to_string(),
        });
        self
    }

    /// Rewrite rules of all constraints, in declaration order.
    pub fn rewrite_rules(&self) -> Vec<RewriteRule<Rational>> {
        self.constraints.iter().map(|c| c.rule.clone()).collect()
    }

    /// Normal form of a polynomial modulo the constraints.
    pub fn reduce(&self, p: &MultiPoly<Rational>) -> Result<MultiPoly<Rational>, FrameError> {
        Ok(reduce_all(p, &self.rewrite_rules())?)
    }

    /// Replaces abbreviation generators by their definitions.
    pub fn expand(&self, r: &RatFunc<Rational>) -> Result<RatFunc<Rational>, FrameError> {
        let mut out = r.clone();
        for (i, value) in &self.abbreviations {
            out = out.substitute(*i, &RatFunc::from_poly(value.clone()))?;
        }
        Ok(out)
    }

    /// Applies the derivation `dir` to `expr` (abbreviations expanded first).
    pub fn derive(&self, dir: Direction, expr: &RatFunc<Rational>) -> Result<RatFunc<Rational>, FrameError> {
        let expr = self.expand(expr)?;
        let dn = self.derive_poly(dir, expr.numer())?;
        let d = expr.denom();
        if d.is_constant() {
            return Ok(dn.try_mul(&RatFunc::new(MultiPoly::one(&self.vars), d.clone())?)?);
        }
        let dd = self.derive_poly(dir, d)?;
        // (n/d)' = n'/d - n d'/d^2
        let n = RatFunc::from_poly(expr.numer().clone());
        let den = RatFunc::from_poly(d.clone());
        let first = dn.try_div(&den)?;
        let second = n.try_mul(&dd)?.try_div(&den.pow(2))?;
        Ok(first.try_sub(&second)?)
    }

    pub fn derive_poly_text(&self, dir: Direction, text: &str) -> Result<RatFunc<Rational>, FrameError> {
        self.derive(dir, &self.rat(text))
    }

    /// Derivation of a polynomial: sum over generators of partial
    /// derivative times rule image. Rule images sharing a denominator are
    /// accumulated together before forming fractions.
    fn derive_poly(&self, dir: Direction, p: &MultiPoly<Rational>) -> Result<RatFunc<Rational>, FrameError> {
        let empty = BTreeMap::new();
        let table = self.rules.get(&dir).unwrap_or(&empty);
        let mut poly_part = MultiPoly::zero(&self.vars);
        let mut by_den: Vec<(MultiPoly<Rational>, MultiPoly<Rational>)> = Vec::new();
        for i in p.used_vars() {
            if self.constants.contains(&i) {
                continue;
            }
            let image = table.get(&i).ok_or_else(|| FrameError::MissingRule {
                direction: dir,
                generator: self.vars.name(i).to_string(),
            })?;
            if image.is_zero() {
                continue;
            }
            let dp = p.derivative(i);
            if let Some(ip) = image.as_poly() {
                poly_part = &poly_part + &(&dp * &ip);
                continue;
            }
            let term = &dp * image.numer();
            match by_den.iter_mut().find(|(d, _)| d == image.denom()) {
                Some((_, acc)) => *acc = &*acc + &term,
                None => by_den.push((image.denom().clone(), term)),
            }
        }
        let mut out = RatFunc::from_poly(poly_part);
        for (den, num) in by_den {
            out = out.try_add(&RatFunc::new(num, den)?)?;
        }
        Ok(out)
    }

    /// Relabels the context under a simultaneous renaming of generators
    /// (with scalar factors), e.g. the 2<->3 index swap.
    pub fn map_rat(&self, r: &RatFunc<Rational>, perm: &[(usize, usize, Rational)]) -> RatFunc<Rational> {
        RatFunc::new(r.numer().permute_vars(perm), r.denom().permute_vars(perm)).expect("permutation keeps denominators nonzero")
    }
}

const ANCHOR_FORMS: &str = "eq. (1-form_conn) \"The structure $1$-forms are thus determined\"";
pub(crate) const ANCHOR_SUM: &str = "eq. (sum_curv23) \"$k_2+k_3=\\frac{9}{2}f$\"";
pub(crate) const ANCHOR_NORM: &str = "eq. (norm_A2) \"$=\\frac{45}{2}f^2-2K$\"";
pub(crate) const ANCHOR_GAUSS2: &str = "eq. (Gauss2) \"$K+c=\\ldots-\\alpha_2\\alpha_3-\\beta_2^2-\\beta_3^2$\"";
pub(crate) const ANCHOR_X1F1: &str = "eq. (X_1f_1) \"$f\\big(-\\frac{9}{2}K-6c+\\frac{189}{8}f^2\\big)$\"";
pub(crate) const ANCHOR_X1X1F1: &str = "eq. (X_1X_1f_1) \"$f\\big(-\\frac{13}{2}K-9c+\\frac{369}{8}f^2\\big)$\"";
pub(crate) const ANCHOR_X1K: &str = "eq. (X_1K) \"$(K+9f^2)(\\alpha_2+\\alpha_3)-\\frac{27}{4}fX_1(f)$\"";
pub(crate) const ANCHOR_COND_F: &str = "eq. (cond_f_3) \"$f(p)>0$\"";

/// Frame system with the individual curvatures, connection functions and
/// the abbreviations `K = k2*k3`, `S = alpha2 + alpha3`.
///
/// Besides the X1 and X2 tables the context carries the X3 table as stated
/// for the second index, so the 2<->3 symmetry can be checked rather than
/// assumed. The generator `w` has no rules here; it is used by the
/// β-vanishing argument as a stand-in for `X1(k3 - k2)`.
pub fn build_full_context() -> FrameContext {
    let vars = VarTable::new(FULL_VARS).expect("static table");
    let x1_u = "u*(alpha2 + alpha3) - (2*k2*k3 + 3*c - 45/2*f^2)*f";
    let ctx = FrameContext::empty("full", vars)
        .with_constant("c")
        .with_abbreviation("K", "k2*k3")
        .with_abbreviation("S", "alpha2 + alpha3");
    let ctx = ctx
        .clone()
        .with_rule(Direction::X1, "f", ctx.rat("u"))
        .with_rule(Direction::X1, "u", ctx.rat(x1_u))
        .with_rule(Direction::X1, "k2", ctx.rat("(k2 + 3/2*f)*alpha2"))
        .with_rule(Direction::X1, "k3", ctx.rat("(k3 + 3/2*f)*alpha3"))
        .with_rule(Direction::X1, "alpha2", ctx.rat("alpha2^2 + c - 3/2*f*k2"))
        .with_rule(Direction::X1, "alpha3", ctx.rat("alpha3^2 + c - 3/2*f*k3"))
        .with_rule(Direction::X1, "beta2", ctx.rat("alpha2*beta2"))
        .with_rule(Direction::X1, "beta3", ctx.rat("alpha3*beta3"))
        .with_rule(Direction::X2, "f", ctx.rat("0"))
        .with_rule(Direction::X2, "u", ctx.rat("0"))
        .with_rule(Direction::X2, "k2", ctx.rat("-(k3 - k2)*beta3"))
        .with_rule(Direction::X2, "k3", ctx.rat("(k3 - k2)*beta3"))
        .with_rule(Direction::X2, "alpha3", ctx.rat("beta3*(alpha3 - alpha2)"))
        .with_rule(
            Direction::X2,
            "alpha2",
            ctx.ratfunc("-beta3*(alpha3 - alpha2)*u - 2*f*(k3 - k2)^2*beta3", "u"),
        )
        .with_rule(Direction::X3, "f", ctx.rat("0"))
        .with_rule(Direction::X3, "u", ctx.rat("0"))
        .with_rule(Direction::X3, "k2", ctx.rat("(k3 - k2)*beta2"))
        .with_rule(Direction::X3, "k3", ctx.rat("-(k3 - k2)*beta2"))
        .with_rule(Direction::X3, "alpha2", ctx.rat("beta2*(alpha3 - alpha2)"))
        .with_rule(
            Direction::X3,
            "alpha3",
            ctx.ratfunc("-beta2*(alpha3 - alpha2)*u + 2*f*(k3 - k2)^2*beta2", "u"),
        );
    ctx.with_constraint("sum_curv23", ANCHOR_SUM, "k2 + k3 - 9/2*f", &[("k3", 1)], "9/2*f - k2")
        .with_constraint("K_def", ANCHOR_NORM, "K - k2*k3", &[("k2", 2)], "9/2*f*k2 - K")
        .with_constraint("S_def", ANCHOR_FORMS, "S - alpha2 - alpha3", &[("alpha3", 1)], "S - alpha2")
        .with_assumption("f", AssumptionKind::Positive, ANCHOR_COND_F)
        .with_assumption("u", AssumptionKind::NonZero, ANCHOR_COND_F)
        .with_assumption("k3 - k2", AssumptionKind::NonZero, ANCHOR_FORMS)
}

/// Full context after β2 = β3 = 0, with the two relations this makes
/// available: the X1-derivative of the curvature-sum constraint (solved
/// for `u`) and the Gauss equation `alpha2*alpha3 = -(K + c)`.
pub fn build_prelim_context() -> FrameContext {
    build_full_context()
        .with_name("prelim")
        .with_constraint(
            "X1_sum_curv23",
            ANCHOR_SUM,
            "(k2 + 3/2*f)*alpha2 + (k3 + 3/2*f)*alpha3 - 9/2*u",
            &[("u", 1)],
            "2/9*((2*k2 - 9/2*f)*alpha2 + (6*f - k2)*S)",
        )
        .with_constraint(
            "Gauss2_beta0",
            ANCHOR_GAUSS2,
            "alpha2*alpha3 + K + c",
            &[("alpha2", 2)],
            "alpha2*S + K + c",
        )
        .with_constraint("beta2_zero", ANCHOR_GAUSS2, "beta2", &[("beta2", 1)], "0")
        .with_constraint("beta3_zero", ANCHOR_GAUSS2, "beta3", &[("beta3", 1)], "0")
}

/// Closed system in `u = X1(f)`, `S`, `K`, `f`, `c` obtained once the
/// β-functions vanish.
pub fn build_reduced_context() -> FrameContext {
    build_reduced_context_with_order(&REDUCED_VARS).expect("default order")
}

/// The reduced context over a caller-chosen permutation of its variables.
pub fn build_reduced_context_with_order(order: &[&str]) -> Result<FrameContext, FrameError> {
    let mut sorted: Vec<&str> = order.to_vec();
    sorted.sort_unstable();
    let mut expected = REDUCED_VARS.to_vec();
    expected.sort_unstable();
    if sorted != expected {
        return Err(FrameError::Invalid(format!(
            "variable order must be a permutation of {REDUCED_VARS:?}"
        )));
    }
    let vars = VarTable::new(order.iter().copied())?;
    let ctx = FrameContext::empty("reduced", vars).with_constant("c");
    let ctx = ctx
        .clone()
        .with_rule(Direction::X1, "f", ctx.rat("u"))
        .with_rule(Direction::X1, "u", ctx.rat("f*(-13/2*K - 9*c + 369/8*f^2)"))
        .with_rule(Direction::X1, "K", ctx.rat("(K + 9*f^2)*S - 27/4*f*u"))
        .with_rule(Direction::X1, "S", ctx.rat("S^2 + 2*K + 4*c - 27/4*f^2"));
    Ok(ctx
        .with_constraint(
            "X1f1",
            ANCHOR_X1F1,
            "u*S - f*(-9/2*K - 6*c + 189/8*f^2)",
            &[("u", 1), ("S", 1)],
            "f*(-9/2*K - 6*c + 189/8*f^2)",
        )
        .with_assumption("u", AssumptionKind::NonZero, ANCHOR_COND_F)
        .with_assumption("f", AssumptionKind::Positive, ANCHOR_COND_F))
}
