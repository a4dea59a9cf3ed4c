use core::fmt;

use crate::Complex;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A denominator fell below `1e-300` in modulus.
    DivisionNearZero { at: Complex },
    /// The argument of a logarithm fell below `1e-300` in modulus.
    LogDomain { at: Complex },
    /// Evaluation produced a NaN or an infinity.
    NonFinite { at: Complex },
    /// A parameter violated its documented range.
    InvalidParameter(&'static str),
    /// The symbol leaves the closed unit disk.
    NotSelfMap { sup_modulus: f64, witness: Complex },
    /// Taylor coefficients did not reproduce the function.
    PoorConvergence { residual: f64 },
    /// A quadrature integrand was not finite at a node.
    NonFiniteIntegrand { node: Complex },
    /// A polynomial root failed the residual test after polishing.
    IllConditioned { residual: f64 },
    /// The counting function was requested at `w = φ(0)`.
    AtCriticalValue,
    /// An inequality check was called outside its hypotheses.
    PreconditionViolated(&'static str),
    /// The operation only supports polynomial symbols.
    UnsupportedSymbol,
    /// The operator failed the boundedness gate.
    NotBounded,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionNearZero { at } => {
                write!(f, "division by a near-zero value at z = {at}")
            }
            Error::LogDomain { at } => write!(f, "logarithm of a near-zero value at z = {at}"),
            Error::NonFinite { at } => write!(f, "non-finite value at z = {at}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NotSelfMap { sup_modulus, witness } => {
                write!(f, "not a self-map of the disk: |phi({witness})| = {sup_modulus}")
            }
            Error::PoorConvergence { residual } => {
                write!(f, "taylor coefficients did not converge (residual {residual:e})")
            }
            Error::NonFiniteIntegrand { node } => write!(f, "non-finite integrand at node {node}"),
            Error::IllConditioned { residual } => {
                write!(f, "ill-conditioned root (residual {residual:e})")
            }
            Error::AtCriticalValue => f.write_str("counting function evaluated at phi(0)"),
            Error::PreconditionViolated(msg) => write!(f, "precondition violated: {msg}"),
            Error::UnsupportedSymbol => f.write_str("operation requires a polynomial symbol"),
            Error::NotBounded => f.write_str("operator failed the boundedness gate"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// Short stable tag used in report files.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionNearZero { .. } => "division_near_zero",
            Error::LogDomain { .. } => "log_domain",
            Error::NonFinite { .. } => "non_finite",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::NotSelfMap { .. } => "not_self_map",
            Error::PoorConvergence { .. } => "poor_convergence",
            Error::NonFiniteIntegrand { .. } => "non_finite_integrand",
            Error::IllConditioned { .. } => "ill_conditioned",
            Error::AtCriticalValue => "at_critical_value",
            Error::PreconditionViolated(_) => "precondition_violated",
            Error::UnsupportedSymbol => "unsupported_symbol",
            Error::NotBounded => "not_bounded",
        }
    }
}
