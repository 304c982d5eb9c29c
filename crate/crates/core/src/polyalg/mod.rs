//! Sparse multivariate polynomials and rational functions over an exact
//! field, with resultants, gcds, Sturm chains, single-rule rewriting and a
//! text parser/printer.

use thiserror::Error;

use crate::exactnum::NumError;

mod monomial;
mod parse;
mod poly;
mod ratfunc;
mod resultant;
mod rewrite;
mod sturm;
mod univariate;
mod vars;

pub use monomial::Monomial;
pub use parse::{parse_polynomial, parse_with_new_vars};
pub use poly::MultiPoly;
pub use ratfunc::{clear_denominators, RatFunc};
pub use resultant::{resultant, sylvester_resultant};
pub use rewrite::{reduce_all, reduce_by_rewrite, RewriteRule};
pub use sturm::{sturm_count, Bound, SturmChain};
pub use univariate::{prem, univariate_gcd};
pub use vars::VarTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands use different variable tables")]
    TableMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("invalid variable name {0:?}")]
    InvalidVariableName(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not univariate in {0:?}")]
    NotUnivariate(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("empty interval: lower bound must be below upper bound")]
    InvalidInterval,
    #[error("input has degree 0 in {0:?}")]
    DegreeZero(String),
    #[error("both inputs are zero")]
    BothZero,
    #[error("rewrite rule {0} -> ... is not self-reduced")]
    NotSelfReduced(String),
    #[error("rewrite rule {0} -> ... does not decrease the term order")]
    NonTerminatingRule(String),
    #[error(transparent)]
    Num(#[from] NumError),
}
