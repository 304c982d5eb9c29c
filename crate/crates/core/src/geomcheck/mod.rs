//! Exact checks on concrete constant-mean-curvature hypersurfaces of space
//! forms: biharmonicity defects, scalar curvature, the classification in
//! the 4-sphere and the flat/hyperbolic obstructions.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{q, NumError, QuadExt, Rational, Scalar};
use crate::framecalc::{Certificate, StepReport, StepStatus};

mod instance;

pub use instance::{curvature_data, CurvatureData, HypersurfaceInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
    #[error("{quantity} = {value} is not rational")]
    Irrational { quantity: String, value: String },
    #[error("not realizable: {0}")]
    Unrealizable(String),
    #[error("no obstruction for c = {c}: {witness} is proper biharmonic")]
    NoObstruction { c: Rational, witness: Box<HypersurfaceInstance> },
    #[error(transparent)]
    Num(#[from] NumError),
}

const ANCHOR_DEFECT: &str = "eq. (caract_bih_hipersurf_spheres), \"$\\Delta^\\perp H-(mc-|A|^2)H=0$\"";
const ANCHOR_SCALAR: &str = "Prop. 2.6, \"$s=m^2(1+k)-2m$\"";
const ANCHOR_CLASSIFY: &str =
    "Theorem 3.4, \"the hypersphere $\\mbox{${\\mathbb S}$}^3(\\mbox{${\\scriptstyle \\frac{1}{\\sqrt 2}}$})$ and the torus\"";
const ANCHOR_OBSTRUCTION: &str = "Theorem 3.3 proof, \"we obtain $|A|^2=0$ or $|A|^2=-3$\"";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BiharmonicStatus {
    #[serde(rename = "proper-biharmonic")]
    ProperBiharmonic,
    #[serde(rename = "minimal")]
    Minimal,
    #[serde(rename = "not-biharmonic")]
    NotBiharmonic,
}

impl fmt::Display for BiharmonicStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BiharmonicStatus::ProperBiharmonic => "proper biharmonic",
            BiharmonicStatus::Minimal => "minimal",
            BiharmonicStatus::NotBiharmonic => "not biharmonic",
        })
    }
}

/// `|A|^2 - m*c` and the resulting status. For constant mean curvature the
/// tangent part of the biharmonic system holds identically and the normal
/// part reduces to `(m*c - |A|^2)*|H| = 0`.
pub fn biharmonic_defect(d: &CurvatureData) -> (Rational, BiharmonicStatus) {
    let defect = &d.a_sq - &(Rational::from(d.m as i64) * d.c.clone());
    let status = if d.h_sq.is_zero() {
        BiharmonicStatus::Minimal
    } else if defect.is_zero() {
        BiharmonicStatus::ProperBiharmonic
    } else {
        BiharmonicStatus::NotBiharmonic
    };
    (defect, status)
}

/// Scalar curvature from the contracted Gauss equation,
/// `s = m(m-1)c + m^2|H|^2 - |A|^2`.
pub fn scalar_curvature(d: &CurvatureData) -> Rational {
    let m = Rational::from(d.m as i64);
    &(&(&m * &(&m - &Rational::one())) * &d.c) + &(&(&(&m * &m) * &d.h_sq) - &d.a_sq)
}

/// Computes the scalar curvature and, for proper biharmonic hypersurfaces of
/// the unit sphere, checks it against `m^2(1 + |H|^2) - 2m`.
pub fn scalar_curvature_check(d: &CurvatureData) -> StepReport {
    let s = scalar_curvature(d);
    let (_, status) = biharmonic_defect(d);
    if status != BiharmonicStatus::ProperBiharmonic || !d.c.is_one() {
        return StepReport::new(
            "scalar_curvature",
            "s = m(m-1)c + m^2|H|^2 - |A|^2",
            ANCHOR_SCALAR,
            StepStatus::Verified,
            format!("s = {s}; closed form not applicable ({status}, c = {})", d.c),
        );
    }
    let m = Rational::from(d.m as i64);
    let closed = &(&(&m * &m) * &(&Rational::one() + &d.h_sq)) - &(&q(2, 1) * &m);
    StepReport::new(
        "scalar_curvature",
        "s = m(m-1) + m^2|H|^2 - |A|^2 equals m^2(1 + |H|^2) - 2m",
        ANCHOR_SCALAR,
        StepStatus::from_bool(s == closed),
        format!("s = {s}, m^2(1 + |H|^2) - 2m = {closed}"),
    )
}

/// Compact proper biharmonic hypersurfaces of the unit 4-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum S4Class {
    /// `S^3(1/sqrt 2)`.
    Hypersphere,
    /// `S^m1(1/sqrt 2) x S^m2(1/sqrt 2)` with `m1 < m2`; swapping the
    /// factors is an ambient isometry, so the pair is reported sorted.
    CliffordTorus { m1: u32, m2: u32 },
    Minimal,
    NotProperBiharmonic,
}

impl fmt::Display for S4Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            S4Class::Hypersphere => f.write_str("hypersphere S^3(1/sqrt 2)"),
            S4Class::CliffordTorus { m1, m2 } => {
                write!(f, "Clifford torus S^{m1}(1/sqrt 2) x S^{m2}(1/sqrt 2)")
            }
            S4Class::Minimal => f.write_str("minimal"),
            S4Class::NotProperBiharmonic => f.write_str("not proper biharmonic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S4Classification {
    pub class: S4Class,
    pub data: CurvatureData,
    pub defect: Rational,
    /// For tori: which of the radius and multiplicity conditions hold.
    pub rationale: Option<String>,
}

/// Classifies a hypersurface of the unit 4-sphere by its defect and mean
/// curvature. Proper biharmonic curvature lists must be realizable as an
/// isoparametric hypersurface: a single curvature, or two with `k1*k2 = -1`.
pub fn classify_compact_s4(h: &HypersurfaceInstance) -> Result<S4Classification, GeomError> {
    if h.dim() != 3 || !h.ambient().is_one() {
        return Err(GeomError::Usage(format!(
            "classification needs m = 3 and c = 1, got m = {} and c = {}",
            h.dim(),
            h.ambient()
        )));
    }
    let data = curvature_data(h)?;
    let (defect, status) = biharmonic_defect(&data);
    let rationale = match h {
        HypersurfaceInstance::CliffordTorus { m1, m2, r1_sq, .. } => {
            let half = r1_sq == &q(1, 2);
            Some(format!(
                "r1^2 = {r1_sq}, r2^2 = {}; proper biharmonic needs r1 = r2 = 1/sqrt 2 ({}) and m1 != m2 ({})",
                Rational::one() - r1_sq.clone(),
                if half { "holds" } else { "fails" },
                if m1 != m2 { "holds" } else { "fails" },
            ))
        }
        _ => None,
    };
    let class = match status {
        BiharmonicStatus::Minimal => S4Class::Minimal,
        BiharmonicStatus::NotBiharmonic => S4Class::NotProperBiharmonic,
        BiharmonicStatus::ProperBiharmonic => match h {
            HypersurfaceInstance::Sphere { .. } => S4Class::Hypersphere,
            HypersurfaceInstance::CliffordTorus { m1, m2, .. } => torus_class(*m1, *m2),
            HypersurfaceInstance::CurvatureList { .. } => realized_class(&data)?,
        },
    };
    Ok(S4Classification {
        class,
        data,
        defect,
        rationale,
    })
}

fn torus_class(m1: u32, m2: u32) -> S4Class {
    S4Class::CliffordTorus {
        m1: m1.min(m2),
        m2: m1.max(m2),
    }
}

fn realized_class(data: &CurvatureData) -> Result<S4Class, GeomError> {
    let distinct = data.distinct();
    match distinct.as_slice() {
        [_] => Ok(S4Class::Hypersphere),
        [(k1, n1), (k2, n2)] => {
            if k1.checked_mul(k2)? != QuadExt::rational(-Rational::one()) {
                return Err(GeomError::Unrealizable(format!(
                    "two distinct curvatures {k1}, {k2} with k1*k2 != -1"
                )));
            }
            Ok(torus_class(*n1, *n2))
        }
        _ => Err(GeomError::Unrealizable(format!(
            "{} distinct principal curvatures; the three-curvature case reduces to a sextic with no real roots",
            distinct.len()
        ))),
    }
}

/// The proper biharmonic constant-mean-curvature hypersurfaces of the flat
/// and hyperbolic 4-dimensional space forms: the defect equation forces
/// `|A|^2 = 3c`, which is `0` (so the hypersurface is minimal) or `-3`.
pub fn space_form_obstruction(c: &Rational) -> Result<Certificate, GeomError> {
    if c.is_positive() {
        return Err(GeomError::NoObstruction {
            c: c.clone(),
            witness: Box::new(HypersurfaceInstance::biharmonic_sphere()),
        });
    }
    if !(c.is_zero() || *c == -Rational::one()) {
        return Err(GeomError::Usage(format!("ambient curvature must be 0 or -1, got {c}")));
    }
    let m = Rational::from(3);
    let a_sq = &m * c;
    let mut steps = vec![StepReport::new(
        "defect_equation",
        "a proper biharmonic CMC hypersurface has |A|^2 = m*c",
        ANCHOR_OBSTRUCTION,
        StepStatus::Verified,
        format!("|A|^2 = {a_sq}"),
    )];
    let conclusion = if c.is_zero() {
        // |H|^2 <= |A|^2/m = 0
        let bound = &a_sq / &m;
        steps.push(StepReport::new(
            "minimal_forced",
            "|A|^2 = 0 forces every principal curvature to vanish, so |H|^2 <= |A|^2/m = 0",
            ANCHOR_OBSTRUCTION,
            StepStatus::from_bool(bound.is_zero()),
            format!("|H|^2 <= {bound}"),
        ));
        "minimal forced: no proper biharmonic hypersurfaces of constant mean curvature in R^4"
    } else {
        steps.push(StepReport::new(
            "impossible",
            "|A|^2 is a sum of squares, so |A|^2 = -3 has no solution",
            ANCHOR_OBSTRUCTION,
            StepStatus::from_bool(a_sq.is_negative()),
            format!("|A|^2 = {a_sq}"),
        ));
        "impossible, |A|^2 = -3: no proper biharmonic hypersurfaces of constant mean curvature in H^4"
    };
    Ok(Certificate::new(format!("obstruction c={c}"), steps, conclusion))
}

/// The reference instances of the classification, with their expected
/// status and scalar-curvature report.
pub fn instance_suite() -> Result<Vec<StepReport>, GeomError> {
    let cases = [
        (
            HypersurfaceInstance::biharmonic_sphere(),
            BiharmonicStatus::ProperBiharmonic,
            q(3, 1),
            QuadExt::rational(q(1, 1)),
        ),
        (
            HypersurfaceInstance::clifford_torus(1, 2, q(1, 2))?,
            BiharmonicStatus::ProperBiharmonic,
            q(3, 1),
            QuadExt::rational(q(1, 3)),
        ),
        (
            HypersurfaceInstance::clifford_torus(1, 1, q(1, 2))?,
            BiharmonicStatus::Minimal,
            q(2, 1),
            QuadExt::zero(),
        ),
    ];
    let mut out = Vec::new();
    for (h, want, a_sq, h_abs) in cases {
        let data = curvature_data(&h)?;
        let (defect, status) = biharmonic_defect(&data);
        let ok = status == want && data.a_sq == a_sq && data.h_abs() == h_abs;
        out.push(StepReport::new(
            format!("defect {h}"),
            format!("{h} is {want} with |A|^2 = {a_sq} and |H| = {h_abs}"),
            ANCHOR_DEFECT,
            StepStatus::from_bool(ok),
            format!("{status}, defect {defect}, |A|^2 = {}, |H| = {}", data.a_sq, data.h_abs()),
        ));
        if h.dim() == 3 {
            let got = classify_compact_s4(&h)?;
            let expected = match &h {
                HypersurfaceInstance::Sphere { .. } => S4Class::Hypersphere,
                _ => S4Class::CliffordTorus { m1: 1, m2: 2 },
            };
            out.push(StepReport::new(
                format!("classify {h}"),
                format!("{h} is the {expected}"),
                ANCHOR_CLASSIFY,
                StepStatus::from_bool(got.class == expected),
                got.class.to_string(),
            ));
        }
        let mut s = scalar_curvature_check(&data);
        s.name = format!("scalar_curvature {h}");
        out.push(s);
    }
    for c in [Rational::zero(), -Rational::one()] {
        let cert = space_form_obstruction(&c)?;
        for mut step in cert.steps {
            step.name = format!("obstruction c={c} {}", step.name);
            out.push(step);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(h: &HypersurfaceInstance) -> CurvatureData {
        curvature_data(h).unwrap()
    }

    #[test]
    fn defects() {
        assert_eq!(
            biharmonic_defect(&data(&HypersurfaceInstance::biharmonic_sphere())),
            (q(0, 1), BiharmonicStatus::ProperBiharmonic)
        );
        let small = HypersurfaceInstance::sphere(3, q(1, 3), q(1, 1)).unwrap();
        assert_eq!(data(&small).a_sq, q(6, 1));
        assert_eq!(biharmonic_defect(&data(&small)), (q(3, 1), BiharmonicStatus::NotBiharmonic));
        let equal = HypersurfaceInstance::clifford_torus(1, 1, q(1, 2)).unwrap();
        assert_eq!(biharmonic_defect(&data(&equal)).1, BiharmonicStatus::Minimal);
    }

    #[test]
    fn scalar_curvatures() {
        let torus = HypersurfaceInstance::clifford_torus(1, 2, q(1, 2)).unwrap();
        assert_eq!(scalar_curvature(&data(&torus)), q(4, 1));
        assert!(scalar_curvature_check(&data(&torus)).verified());
        let sphere = data(&HypersurfaceInstance::biharmonic_sphere());
        assert_eq!(scalar_curvature(&sphere), q(12, 1));
        let great = data(&HypersurfaceInstance::sphere(3, q(1, 1), q(1, 1)).unwrap());
        let r = scalar_curvature_check(&great);
        assert!(r.verified());
        assert!(r.witness.starts_with("s = 6;"));
    }

    #[test]
    fn classification() {
        let c = |h: HypersurfaceInstance| classify_compact_s4(&h).unwrap().class;
        assert_eq!(c(HypersurfaceInstance::biharmonic_sphere()), S4Class::Hypersphere);
        assert_eq!(
            c(HypersurfaceInstance::clifford_torus(1, 2, q(1, 2)).unwrap()),
            S4Class::CliffordTorus { m1: 1, m2: 2 }
        );
        assert_eq!(c(HypersurfaceInstance::clifford_torus(1, 2, q(1, 3)).unwrap()), S4Class::Minimal);
        assert!(matches!(
            classify_compact_s4(&HypersurfaceInstance::sphere(2, q(1, 2), q(1, 1)).unwrap()),
            Err(GeomError::Usage(_))
        ));
        // a curvature list equal to the torus is recognized as the torus
        let list = HypersurfaceInstance::curvature_list(
            vec![(QuadExt::rational(q(-1, 1)), 2), (QuadExt::rational(q(1, 1)), 1)],
            q(1, 1),
        )
        .unwrap();
        assert_eq!(c(list), S4Class::CliffordTorus { m1: 1, m2: 2 });
    }

    #[test]
    fn obstructions() {
        let flat = space_form_obstruction(&q(0, 1)).unwrap();
        assert!(flat.verified());
        assert!(flat.conclusion.starts_with("minimal forced"));
        let hyp = space_form_obstruction(&q(-1, 1)).unwrap();
        assert!(hyp.verified());
        assert_eq!(hyp.step("impossible").unwrap().witness, "|A|^2 = -3");
        match space_form_obstruction(&q(1, 1)) {
            Err(GeomError::NoObstruction { witness, .. }) => {
                assert_eq!(*witness, HypersurfaceInstance::biharmonic_sphere())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn suite_passes() {
        for s in instance_suite().unwrap() {
            assert!(s.verified(), "{}: {}", s.name, s.witness);
        }
    }
}
