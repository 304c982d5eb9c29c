use crate::exactnum::Scalar;

use super::{Monomial, MultiPoly, PolyError, VarTable};

/// Replacement `lhs -> rhs` of a monomial by a polynomial.
///
/// A rule is accepted when it is self-reduced (no monomial of `rhs` is
/// divisible by `lhs`) and terminating: either `rhs` avoids every variable
/// of `lhs`, or every monomial of `rhs` is below `lhs` in the term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule<F: Scalar> {
    lhs: Monomial,
    rhs: MultiPoly<F>,
    justification: String,
    anchor: String,
}

impl<F: Scalar> RewriteRule<F> {
    pub fn new(
        lhs: Monomial,
        rhs: MultiPoly<F>,
        justification: impl Into<String>,
        anchor: impl Into<String>,
    ) -> Result<Self, PolyError> {
        let label = || {
            let mut s = String::new();
            for i in lhs.support() {
                if !s.is_empty() {
                    s.push('*');
                }
                s.push_str(rhs.vars().name(i));
                if lhs.exp(i) > 1 {
                    s.push_str(&format!("^{}", lhs.exp(i)));
                }
            }
            s
        };
        if lhs.is_one() || rhs.terms().any(|(m, _)| lhs.divides(m)) {
            return Err(PolyError::NotSelfReduced(label()));
        }
        let disjoint = lhs.support().all(|i| !rhs.uses_var(i));
        let decreasing = rhs.terms().all(|(m, _)| m < &lhs);
        if !disjoint && !decreasing {
            return Err(PolyError::NonTerminatingRule(label()));
        }
        Ok(RewriteRule {
            lhs,
            rhs,
            justification: justification.into(),
            anchor: anchor.into(),
        })
    }

    /// Rule `lhs -> rhs` with `lhs` given as a product of named powers.
    pub fn from_names(
        vars: &VarTable,
        lhs: &[(&str, u32)],
        rhs: MultiPoly<F>,
        justification: impl Into<String>,
        anchor: impl Into<String>,
    ) -> Result<Self, PolyError> {
        let mut e = vec![0u32; vars.len()];
        for (name, k) in lhs {
            e[vars.require(name)?] += k;
        }
        Self::new(Monomial::from_exponents(e), rhs.retable(vars)?, justification, anchor)
    }

    pub fn lhs(&self) -> &Monomial {
        &self.lhs
    }

    pub fn rhs(&self) -> &MultiPoly<F> {
        &self.rhs
    }

    pub fn justification(&self) -> &str {
        &self.justification
    }

    pub fn anchor(&self) -> &str {
        &self.anchor
    }

    /// Applies the rule to every divisible term once, replacing the largest
    /// power of `lhs`. Returns `None` if nothing was divisible.
    fn step(&self, p: &MultiPoly<F>, powers: &mut Vec<MultiPoly<F>>) -> Option<MultiPoly<F>> {
        let mut out = MultiPoly::zero(p.vars());
        let mut changed = false;
        for (m, c) in p.terms() {
            let k = self.lhs.max_power_in(m);
            if k == 0 {
                out.add_term(m.clone(), c);
                continue;
            }
            changed = true;
            while powers.len() <= k as usize {
                let next = powers.last().expect("seeded") * &self.rhs;
                powers.push(next);
            }
            let rest = self.lhs.pow(k).quotient_of(m).expect("power divides");
            out = &out + &powers[k as usize].mul_monomial(&rest, c);
        }
        changed.then_some(out)
    }
}

/// Normal form of `p`: no remaining monomial is divisible by the rule's lhs.
pub fn reduce_by_rewrite<F: Scalar>(p: &MultiPoly<F>, rule: &RewriteRule<F>) -> Result<MultiPoly<F>, PolyError> {
    if p.vars() != rule.rhs.vars() {
        return Err(PolyError::TableMismatch);
    }
    let mut powers = vec![MultiPoly::one(p.vars())];
    let mut cur = p.clone();
    while let Some(next) = rule.step(&cur, &mut powers) {
        cur = next;
    }
    Ok(cur)
}

/// Normal form under a set of rules, applied round-robin to a fixpoint.
pub fn reduce_all<F: Scalar>(p: &MultiPoly<F>, rules: &[RewriteRule<F>]) -> Result<MultiPoly<F>, PolyError> {
    const MAX_PASSES: usize = 10_000;
    let mut powers: Vec<Vec<MultiPoly<F>>> = rules.iter().map(|_| vec![MultiPoly::one(p.vars())]).collect();
    for r in rules {
        if p.vars() != r.rhs.vars() {
            return Err(PolyError::TableMismatch);
        }
    }
    let mut cur = p.clone();
    for _ in 0..MAX_PASSES {
        let mut changed = false;
        for (r, pw) in rules.iter().zip(powers.iter_mut()) {
            while let Some(next) = r.step(&cur, pw) {
                cur = next;
                changed = true;
            }
        }
        if !changed {
            return Ok(cur);
        }
    }
    Err(PolyError::NonTerminatingRule("rule set".into()))
}
