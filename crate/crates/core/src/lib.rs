//! Exact symbolic verification of the moving-frame computations behind the
//! classification of proper biharmonic hypersurfaces with constant scalar
//! curvature in 4-dimensional space forms.
//!
//! * [`exactnum`] — rationals and real quadratic extensions.
//! * [`polyalg`] — sparse polynomials, rational functions, resultants,
//!   Sturm chains and single-rule rewriting.
//! * [`framecalc`] — frame derivations and step-by-step certificates.
//! * [`geomcheck`] — numerical-free checks on model hypersurfaces.

pub mod exactnum;
pub mod framecalc;
pub mod geomcheck;
pub mod polyalg;
