//! Property suites shared by the property tests and the acceptance run.
//! Every suite runs a fixed-seed proptest runner and returns the number of
//! cases checked, or the first counterexample.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestError, TestRunner};

use bihar_core::exactnum::{q, Rational};
use bihar_core::framecalc::{
    build_full_context, build_reduced_context, commutator_residual, derive_first_pol, derive_first_pol_with_order,
    verify_constraint_preservation, Direction,
};
use bihar_core::geomcheck::{
    biharmonic_defect, classify_compact_s4, curvature_data, HypersurfaceInstance,
};
use bihar_core::polyalg::{
    parse_polynomial, reduce_by_rewrite, resultant, sturm_count, sylvester_resultant, univariate_gcd, Bound,
    Monomial, MultiPoly, RatFunc, RewriteRule, VarTable,
};

pub const CASES: u32 = 256;
pub const SEED: u64 = 0x5eed;

pub type Poly = MultiPoly<Rational>;

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map(|_| CASES).map_err(|e| match e {
        TestError::Abort(why) => format!("aborted: {why}"),
        TestError::Fail(why, value) => format!("{why}; minimal input: {value:?}"),
    })
}

pub fn xyz() -> VarTable {
    VarTable::new(["x", "y", "z"]).unwrap()
}

pub fn xy() -> VarTable {
    VarTable::new(["x", "y"]).unwrap()
}

pub fn x_only() -> VarTable {
    VarTable::new(["x"]).unwrap()
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

/// Sparse polynomials with up to `terms` terms of degree at most `deg` in
/// each variable.
pub fn poly(vars: VarTable, terms: usize, deg: u32) -> impl Strategy<Value = Poly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=deg, n), coeff()), 0..=terms).prop_map(move |ts| {
        MultiPoly::from_terms(&vars, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)))
    })
}

/// Univariate polynomials in `x` of exact degree `1..=deg`.
pub fn uni(vars: VarTable, deg: u32) -> impl Strategy<Value = Poly> {
    (prop::collection::vec(coeff(), 1..=deg as usize), 1i64..=5).prop_map(move |(cs, lead)| {
        let n = vars.len();
        let d = cs.len() as u32;
        let mut terms: Vec<(Monomial, Rational)> = cs
            .into_iter()
            .enumerate()
            .map(|(k, c)| (Monomial::var(n, 0, k as u32), c))
            .collect();
        terms.push((Monomial::var(n, 0, d), Rational::from(lead)));
        MultiPoly::from_terms(&vars, terms)
    })
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what()))
    }
}

pub fn ring_axioms() -> Result<u32, String> {
    let p = || poly(xyz(), 5, 2);
    run((p(), p(), p()), |(a, b, c)| {
        let zero = Poly::zero(&xyz());
        let one = Poly::one(&xyz());
        ensure(&(&a + &b) + &c == &a + &(&b + &c), || "addition is not associative".into())?;
        ensure(&a + &b == &b + &a, || "addition is not commutative".into())?;
        ensure(&(&a * &b) * &c == &a * &(&b * &c), || "multiplication is not associative".into())?;
        ensure(&a * &b == &b * &a, || "multiplication is not commutative".into())?;
        ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || "not distributive".into())?;
        ensure(&a + &zero == a && &a * &one == a, || "identities fail".into())?;
        ensure((&a - &a).is_zero() && (&a + &(-&a)).is_zero(), || "no additive inverse".into())?;
        ensure(a.pow(2) == &a * &a, || "pow(2) differs from a*a".into())
    })
}

pub fn parse_format_roundtrip() -> Result<u32, String> {
    run(poly(xyz(), 6, 3), |p| {
        let text = p.to_string();
        let back = parse_polynomial(&text, &xyz()).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        ensure(back == p, || format!("{text} reparses as {back}"))
    })
}

pub fn ratfunc_field() -> Result<u32, String> {
    let p = || poly(xy(), 3, 2);
    run((p(), p(), p(), p()), |(a, b, c, d)| {
        prop_assume!(!a.is_zero() && !b.is_zero() && !d.is_zero());
        let ab = RatFunc::new(a.clone(), b.clone()).unwrap();
        let cd = RatFunc::new(c.clone(), d.clone()).unwrap();
        let sum = ab.try_add(&cd).unwrap();
        let direct = RatFunc::new(&(&a * &d) + &(&b * &c), &b * &d).unwrap();
        ensure(sum == direct, || "a/b + c/d != (ad + bc)/bd".into())?;
        let unit = ab.try_mul(&ab.recip().unwrap()).unwrap();
        ensure(unit == RatFunc::one(&xy()), || "x * 1/x != 1".into())?;
        ensure(ab.numer().exact_div(&a).is_ok(), || "normalization failed".into())
    })
}

pub fn resultant_gcd_duality() -> Result<u32, String> {
    let t = x_only;
    run((uni(t(), 3), uni(t(), 3), uni(t(), 2), any::<bool>()), |(a, b, g, share)| {
        let (p, r) = if share { (&a * &g, &b * &g) } else { (a, b) };
        let res = resultant(&p, &r, "x").unwrap();
        let gcd = univariate_gcd(&p, &r, "x").unwrap();
        let (dp, dr) = (p.degree_in(0), r.degree_in(0));
        let syl = sylvester_resultant(&p, &r, "x", dp, dr).unwrap();
        ensure(res == syl, || format!("subresultant {res} != Sylvester {syl}"))?;
        ensure(res.is_zero() == (gcd.degree_in(0) > 0), || {
            format!("Res = {res} but gcd = {gcd} for {p} and {r}")
        })?;
        ensure(!share || res.is_zero(), || "shared factor but nonzero resultant".into())?;
        // gcd divides both inputs
        ensure(
            p.exact_div(&gcd).unwrap().is_some() && r.exact_div(&gcd).unwrap().is_some(),
            || format!("gcd {gcd} does not divide"),
        )
    })
}

pub fn resultant_parametric() -> Result<u32, String> {
    // a y-dependent common root kills the resultant; specialization commutes
    let p = || (uni(xy(), 2), poly(xy(), 3, 1)).prop_map(|(u, e)| &u + &e);
    run((p(), p(), -4i64..=4), |(a, b, k)| {
        prop_assume!(a.degree_in(0) > 0 && b.degree_in(0) > 0);
        let root = &Poly::var(&xy(), "x").unwrap() - &Poly::var(&xy(), "y").unwrap().scale(&q(k, 1));
        let res = resultant(&(&a * &root), &(&b * &root), "x").unwrap();
        ensure(res.is_zero(), || format!("common factor {root} but Res = {res}"))?;
        let res = resultant(&a, &b, "x").unwrap();
        let eval = |p: &Poly| p.eval_name("y", &q(k, 1)).unwrap();
        prop_assume!(eval(&a).degree_in(0) == a.degree_in(0) && eval(&b).degree_in(0) == b.degree_in(0));
        ensure(
            eval(&res) == resultant(&eval(&a), &eval(&b), "x").unwrap(),
            || "resultant does not commute with specialization".into(),
        )
    })
}

fn bound() -> impl Strategy<Value = Bound> {
    prop_oneof![
        1 => Just(Bound::NegInf),
        1 => Just(Bound::PosInf),
        6 => (-24i64..=24, 1i64..=4).prop_map(|(n, d)| Bound::Finite(q(n, d))),
    ]
}

fn inside(r: &Rational, lo: &Bound, hi: &Bound) -> bool {
    let above = match lo {
        Bound::NegInf => true,
        Bound::Finite(l) => r > l,
        Bound::PosInf => false,
    };
    let below = match hi {
        Bound::NegInf => false,
        Bound::Finite(h) => r <= h,
        Bound::PosInf => true,
    };
    above && below
}

pub fn sturm_vs_roots() -> Result<u32, String> {
    let roots = prop::collection::vec(((-20i64..=20, 1i64..=4), 1u32..=3), 1..=5);
    run((roots, 0i64..=3, bound(), bound()), |(roots, quad, lo, hi)| {
        let t = x_only();
        let mut p = Poly::one(&t);
        let mut distinct = BTreeSet::new();
        for ((n, d), mult) in &roots {
            let r = q(*n, *d);
            let lin = &Poly::var(&t, "x").unwrap() - &Poly::constant(&t, r.clone());
            p = &p * &lin.pow(*mult);
            distinct.insert(r);
        }
        if quad > 0 {
            p = &p * &parse_polynomial(&format!("x^2 + {quad}"), &t).unwrap();
        }
        let ordered = match (&lo, &hi) {
            (Bound::Finite(a), Bound::Finite(b)) => a < b,
            (Bound::PosInf, _) | (_, Bound::NegInf) => false,
            _ => true,
        };
        let got = sturm_count(&p, "x", &lo, &hi);
        if !ordered {
            return ensure(got.is_err(), || format!("accepted interval ({lo}, {hi}]"));
        }
        let got = got.map_err(|e| TestCaseError::fail(e.to_string()))?;
        let want = distinct.iter().filter(|r| inside(r, &lo, &hi)).count();
        ensure(got == want, || format!("Sturm count {got}, constructed {want} on ({lo}, {hi}] for {p}"))
    })
}

pub fn substitution_distributes() -> Result<u32, String> {
    let p = || poly(xyz(), 4, 2);
    run((p(), p(), poly(xyz(), 3, 2)), |(a, b, s)| {
        let s = s.eval_name("x", &Rational::zero()).unwrap();
        let sub = |p: &Poly| p.substitute_poly(0, &s).unwrap();
        ensure(sub(&(&a * &b)) == &sub(&a) * &sub(&b), || "substitution is not multiplicative".into())?;
        ensure(sub(&(&a + &b)) == &sub(&a) + &sub(&b), || "substitution is not additive".into())?;
        // derivations obey Leibniz
        let d = |p: &Poly| p.derivative(1);
        ensure(d(&(&a * &b)) == &(&d(&a) * &b) + &(&a * &d(&b)), || "Leibniz fails".into())
    })
}

pub fn rewrite_matches_substitution() -> Result<u32, String> {
    run((poly(xyz(), 5, 3), poly(xyz(), 3, 2)), |(p, s)| {
        let s = s.eval_name("x", &Rational::zero()).unwrap();
        let rule = RewriteRule::from_names(&xyz(), &[("x", 1)], s.clone(), "x = s", "").unwrap();
        let reduced = reduce_by_rewrite(&p, &rule).unwrap();
        ensure(reduced == p.substitute_poly(0, &s).unwrap(), || "x -> s differs from substitution".into())?;
        // x^2 -> s: reduction is idempotent and x-degree drops below 2
        let sq = RewriteRule::from_names(&xyz(), &[("x", 2)], s.clone(), "x^2 = s", "").unwrap();
        let once = reduce_by_rewrite(&p, &sq).unwrap();
        ensure(once.degree_in(0) < 2, || "x^2 rule leaves x^2".into())?;
        ensure(reduce_by_rewrite(&once, &sq).unwrap() == once, || "not idempotent".into())
    })
}

/// All polyalg suites with their names.
pub fn polyalg_suites() -> Vec<(&'static str, fn() -> Result<u32, String>)> {
    vec![
        ("ring axioms", ring_axioms),
        ("parse/format round trip", parse_format_roundtrip),
        ("rational functions", ratfunc_field),
        ("resultant/gcd duality", resultant_gcd_duality),
        ("parametric resultant", resultant_parametric),
        ("Sturm vs constructed roots", sturm_vs_roots),
        ("substitution", substitution_distributes),
        ("rewrite vs substitution", rewrite_matches_substitution),
    ]
}

/// Rational grid of squared radii in (0, 1).
pub fn radius_grid() -> Vec<Rational> {
    let mut out = BTreeSet::new();
    for d in 2..=12i64 {
        for n in 1..d {
            out.insert(q(n, d));
        }
    }
    out.into_iter().collect()
}

/// All Clifford tori with m1 + m2 <= 6 over the radius grid.
pub fn torus_grid() -> Vec<HypersurfaceInstance> {
    let mut out = Vec::new();
    for m1 in 1..=5u32 {
        for m2 in 1..=(6 - m1) {
            for r in radius_grid() {
                out.push(HypersurfaceInstance::clifford_torus(m1, m2, r).unwrap());
            }
        }
    }
    out
}

pub fn normal_flip_invariance() -> Result<u32, String> {
    let mut n = 0;
    let spheres = (1..=6u32).flat_map(|m| {
        radius_grid()
            .into_iter()
            .map(move |a| HypersurfaceInstance::sphere(m, a, Rational::one()).unwrap())
    });
    for h in spheres.chain(torus_grid()) {
        let d = curvature_data(&h).map_err(|e| e.to_string())?;
        let f = h.flipped().map_err(|e| e.to_string())?;
        let df = curvature_data(&f).map_err(|e| e.to_string())?;
        if (&d.h_sq, &d.a_sq) != (&df.h_sq, &df.a_sq) || biharmonic_defect(&d) != biharmonic_defect(&df) {
            return Err(format!("{h}: flipping the normal changes the invariants"));
        }
        if h.dim() == 3 {
            let (a, b) = (classify_compact_s4(&h), classify_compact_s4(&f));
            if a.map(|c| c.class) != b.map(|c| c.class) {
                return Err(format!("{h}: flipping the normal changes the classification"));
            }
        }
        n += 1;
    }
    Ok(n)
}

pub fn torus_symmetry() -> Result<u32, String> {
    let mut n = 0;
    for h in torus_grid() {
        let HypersurfaceInstance::CliffordTorus { m1, m2, r1_sq, .. } = &h else { unreachable!() };
        let swapped = HypersurfaceInstance::clifford_torus(*m2, *m1, Rational::one() - r1_sq.clone()).unwrap();
        let (d, ds) = (curvature_data(&h).unwrap(), curvature_data(&swapped).unwrap());
        if (&d.h_sq, &d.a_sq) != (&ds.h_sq, &ds.a_sq) || biharmonic_defect(&d) != biharmonic_defect(&ds) {
            return Err(format!("{h} and {swapped} differ"));
        }
        let (defect, _) = biharmonic_defect(&d);
        if defect.is_zero() {
            // (t - 1)(m1 t - m2) = 0 with t = r2^2/r1^2
            let r2_sq = Rational::one() - r1_sq.clone();
            let half = *r1_sq == q(1, 2);
            let minimal_locus = Rational::from(*m1 as i64) * r2_sq == Rational::from(*m2 as i64) * r1_sq.clone();
            if !(half || minimal_locus) || (half && !minimal_locus && m1 == m2) || (minimal_locus && !d.h_sq.is_zero())
            {
                return Err(format!("{h}: zero defect off the expected loci"));
            }
            if half && m1 != m2 && d.h_sq.is_zero() {
                return Err(format!("{h}: should be proper biharmonic"));
            }
        }
        if h.dim() == 3 {
            let a = classify_compact_s4(&h).map(|c| c.class);
            let b = classify_compact_s4(&swapped).map(|c| c.class);
            if a != b {
                return Err(format!("{h}: classification not symmetric"));
            }
        }
        n += 1;
    }
    Ok(n)
}

/// Sphere defect `m(1 - a)/a - m` on a grid: strictly decreasing with its
/// only zero at `a = 1/2`.
pub fn sphere_defect_zero() -> Result<u32, String> {
    let mut n = 0;
    for m in 1..=6u32 {
        let mut prev: Option<Rational> = None;
        for a in radius_grid() {
            let d = curvature_data(&HypersurfaceInstance::sphere(m, a.clone(), Rational::one()).unwrap()).unwrap();
            let (defect, _) = biharmonic_defect(&d);
            if defect.is_zero() != (a == q(1, 2)) {
                return Err(format!("m = {m}, a^2 = {a}: defect {defect}"));
            }
            if prev.as_ref().is_some_and(|p| defect >= *p) {
                return Err(format!("m = {m}: defect not decreasing at a^2 = {a}"));
            }
            prev = Some(defect);
            n += 1;
        }
    }
    Ok(n)
}

pub fn geomcheck_suites() -> Vec<(&'static str, fn() -> Result<u32, String>)> {
    vec![
        ("normal-flip invariance", normal_flip_invariance),
        ("torus symmetry", torus_symmetry),
        ("sphere defect zero", sphere_defect_zero),
    ]
}

/// Constraint preservation in the full and reduced contexts, one line per
/// (context, constraint, direction).
pub fn constraint_preservation() -> Vec<(String, bool, String)> {
    let mut out = Vec::new();
    for ctx in [build_full_context(), build_reduced_context()] {
        let cert = verify_constraint_preservation(&ctx).expect("derivation succeeds");
        for s in cert.steps {
            out.push((format!("{} {}", ctx.name(), s.name), s.verified(), s.witness));
        }
    }
    out
}

/// `[X1, X2] = alpha2*X2` on the generators where the rule tables are
/// consistent with the bracket relation.
pub fn commutator_consistency() -> Result<u32, String> {
    let ctx = build_full_context();
    let mut n = 0;
    for g in ["f", "u", "k3", "alpha3"] {
        let r = commutator_residual(&ctx, Direction::X2, "alpha2", g).map_err(|e| e.to_string())?;
        if !r.is_zero() {
            return Err(format!("[X1, X2]({g}) - alpha2*X2({g}) = {r}"));
        }
        n += 1;
    }
    Ok(n)
}

/// first_pol is unchanged by permuting the reduction order.
pub fn first_pol_order_invariance() -> Result<u32, String> {
    let (_, base) = derive_first_pol().map_err(|e| e.to_string())?;
    let orders: [[&str; 5]; 4] = [
        ["u", "S", "K", "f", "c"],
        ["c", "f", "K", "S", "u"],
        ["S", "u", "f", "c", "K"],
        ["K", "c", "u", "f", "S"],
    ];
    for order in &orders {
        let p = derive_first_pol_with_order(order).map_err(|e| e.to_string())?;
        if p != base {
            return Err(format!("order {order:?} gives {p}"));
        }
    }
    Ok(orders.len() as u32)
}
