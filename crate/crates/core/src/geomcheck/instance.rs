use std::fmt;

use crate::exactnum::{q, QuadExt, Rational, Scalar};

use super::GeomError;

/// A constant-mean-curvature hypersurface of a space form of curvature `c`,
/// given by closed-form data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypersurfaceInstance {
    /// Small hypersphere `S^m(a)`; `a_sq` is the squared radius of the
    /// sphere in the ambient model.
    Sphere { m: u32, a_sq: Rational, c: Rational },
    /// `S^m1(r1) x S^m2(r2)` in the unit sphere, `r1^2 + r2^2 = 1`.
    CliffordTorus { m1: u32, m2: u32, r1_sq: Rational, c: Rational },
    /// Constant principal curvatures with multiplicities.
    CurvatureList { curvatures: Vec<(QuadExt, u32)>, c: Rational },
}

impl HypersurfaceInstance {
    pub fn sphere(m: u32, a_sq: Rational, c: Rational) -> Result<Self, GeomError> {
        let h = HypersurfaceInstance::Sphere { m, a_sq, c };
        h.validate()?;
        Ok(h)
    }

    pub fn clifford_torus(m1: u32, m2: u32, r1_sq: Rational) -> Result<Self, GeomError> {
        let h = HypersurfaceInstance::CliffordTorus {
            m1,
            m2,
            r1_sq,
            c: Rational::one(),
        };
        h.validate()?;
        Ok(h)
    }

    pub fn curvature_list(curvatures: Vec<(QuadExt, u32)>, c: Rational) -> Result<Self, GeomError> {
        let h = HypersurfaceInstance::CurvatureList { curvatures, c };
        h.validate()?;
        Ok(h)
    }

    /// The proper biharmonic hypersphere `S^3(1/sqrt 2)` of the unit 4-sphere.
    pub fn biharmonic_sphere() -> Self {
        HypersurfaceInstance::Sphere {
            m: 3,
            a_sq: q(1, 2),
            c: Rational::one(),
        }
    }

    /// Dimension of the hypersurface.
    pub fn dim(&self) -> u32 {
        match self {
            HypersurfaceInstance::Sphere { m, .. } => *m,
            HypersurfaceInstance::CliffordTorus { m1, m2, .. } => m1 + m2,
            HypersurfaceInstance::CurvatureList { curvatures, .. } => curvatures.iter().map(|(_, n)| n).sum(),
        }
    }

    /// Curvature of the ambient space form.
    pub fn ambient(&self) -> &Rational {
        match self {
            HypersurfaceInstance::Sphere { c, .. }
            | HypersurfaceInstance::CliffordTorus { c, .. }
            | HypersurfaceInstance::CurvatureList { c, .. } => c,
        }
    }

    pub fn validate(&self) -> Result<(), GeomError> {
        let invalid = |msg: String| Err(GeomError::Invalid(msg));
        match self {
            HypersurfaceInstance::Sphere { m, a_sq, c } => {
                if *m == 0 {
                    return invalid("sphere dimension must be positive".into());
                }
                if !a_sq.is_positive() {
                    return invalid(format!("squared radius {a_sq} must be positive"));
                }
                if (c * a_sq) > Rational::one() {
                    return invalid(format!("squared radius {a_sq} exceeds 1/c for c = {c}"));
                }
            }
            HypersurfaceInstance::CliffordTorus { m1, m2, r1_sq, c } => {
                if *m1 == 0 || *m2 == 0 {
                    return invalid("torus factor dimensions must be positive".into());
                }
                if !r1_sq.is_positive() || *r1_sq >= Rational::one() {
                    return invalid(format!("r1^2 = {r1_sq} must lie in (0, 1)"));
                }
                if !c.is_one() {
                    return invalid(format!("Clifford tori live in the unit sphere, got c = {c}"));
                }
            }
            HypersurfaceInstance::CurvatureList { curvatures, .. } => {
                if curvatures.is_empty() {
                    return invalid("curvature list is empty".into());
                }
                if curvatures.iter().any(|(_, n)| *n == 0) {
                    return invalid("multiplicities must be positive".into());
                }
            }
        }
        Ok(())
    }

    /// Principal curvatures with multiplicities. Sphere curvatures and the
    /// first torus factor's curvature are taken positive.
    pub fn principal_curvatures(&self) -> Result<Vec<(QuadExt, u32)>, GeomError> {
        self.validate()?;
        Ok(match self {
            HypersurfaceInstance::Sphere { m, a_sq, c } => {
                // k^2 = (1 - c*a^2)/a^2
                let k_sq = (Rational::one() - c * a_sq) / a_sq.clone();
                vec![(QuadExt::new(Rational::zero(), Rational::one(), k_sq)?, *m)]
            }
            HypersurfaceInstance::CliffordTorus { m1, m2, r1_sq, .. } => {
                let r2_sq = Rational::one() - r1_sq.clone();
                let k1 = QuadExt::new(Rational::zero(), Rational::one(), &r2_sq / r1_sq)?;
                let k2 = k1.inv()?.neg();
                vec![(k1, *m1), (k2, *m2)]
            }
            HypersurfaceInstance::CurvatureList { curvatures, .. } => curvatures.clone(),
        })
    }

    /// The same hypersurface with the opposite unit normal.
    pub fn flipped(&self) -> Result<Self, GeomError> {
        let curvatures = self
            .principal_curvatures()?
            .into_iter()
            .map(|(k, n)| (k.neg(), n))
            .collect();
        Ok(HypersurfaceInstance::CurvatureList {
            curvatures,
            c: self.ambient().clone(),
        })
    }
}

impl fmt::Display for HypersurfaceInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypersurfaceInstance::Sphere { m, a_sq, c } => write!(f, "Sphere{{m={m}, a_sq={a_sq}, c={c}}}"),
            HypersurfaceInstance::CliffordTorus { m1, m2, r1_sq, .. } => {
                write!(f, "CliffordTorus{{m1={m1}, m2={m2}, r1_sq={r1_sq}}}")
            }
            HypersurfaceInstance::CurvatureList { curvatures, c } => {
                let parts: Vec<String> = curvatures.iter().map(|(k, n)| format!("{k} x{n}")).collect();
                write!(f, "CurvatureList{{[{}], c={c}}}", parts.join(", "))
            }
        }
    }
}

/// Invariants of a hypersurface with constant principal curvatures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureData {
    pub m: u32,
    pub c: Rational,
    /// `|H|^2`.
    pub h_sq: Rational,
    /// `|A|^2`.
    pub a_sq: Rational,
    /// Signed mean curvature `trace(A)/m` for the chosen normal.
    pub mean: QuadExt,
    pub curvatures: Vec<(QuadExt, u32)>,
    pub is_cmc: bool,
}

impl CurvatureData {
    /// `|H| = sqrt(h_sq)`, exact in a quadratic extension.
    pub fn h_abs(&self) -> QuadExt {
        QuadExt::new(Rational::zero(), Rational::one(), self.h_sq.clone()).expect("h_sq is a square norm")
    }

    /// `|A|^2 >= m*|H|^2`.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        self.a_sq >= Rational::from(self.m as i64) * self.h_sq.clone()
    }

    /// Distinct principal curvatures with combined multiplicities, in order
    /// of first appearance.
    pub fn distinct(&self) -> Vec<(QuadExt, u32)> {
        let mut out: Vec<(QuadExt, u32)> = Vec::new();
        for (k, n) in &self.curvatures {
            match out.iter_mut().find(|(v, _)| v == k) {
                Some((_, total)) => *total += n,
                None => out.push((k.clone(), *n)),
            }
        }
        out
    }
}

fn rational_part(v: QuadExt, quantity: &str) -> Result<Rational, GeomError> {
    v.to_rational().ok_or_else(|| GeomError::Irrational {
        quantity: quantity.to_string(),
        value: v.to_string(),
    })
}

/// `|H|^2`, `|A|^2` and the principal curvatures of `h`.
pub fn curvature_data(h: &HypersurfaceInstance) -> Result<CurvatureData, GeomError> {
    let curvatures = h.principal_curvatures()?;
    let m = h.dim();
    let mut trace = QuadExt::zero();
    let mut norm = QuadExt::zero();
    for (k, n) in &curvatures {
        let n = QuadExt::rational(Rational::from(*n as i64));
        trace = trace.checked_add(&n.checked_mul(k)?)?;
        norm = norm.checked_add(&n.checked_mul(&k.checked_mul(k)?)?)?;
    }
    let inv_m = QuadExt::rational(Rational::new(1, m)?);
    let mean = trace.checked_mul(&inv_m)?;
    let h_sq = rational_part(mean.checked_mul(&mean)?, "|H|^2")?;
    let a_sq = rational_part(norm, "|A|^2")?;
    Ok(CurvatureData {
        m,
        c: h.ambient().clone(),
        h_sq,
        a_sq,
        mean,
        curvatures,
        is_cmc: true,
    })
}
