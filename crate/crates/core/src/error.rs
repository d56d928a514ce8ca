//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("operands live over different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
    #[error("division by an element that is zero at its precision O({p}^{prec})")]
    DivisionByZeroAtPrecision { p: u64, prec: i64 },
    #[error("comparison to {requested} digits requested but only {available} are guaranteed")]
    RequestedPrecisionUnavailable { requested: i64, available: i64 },
    #[error("Teichmuller representative needs a unit argument (valuation {0})")]
    NotAUnit(i64),
    #[error("argument is zero (or indistinguishable from zero) at working precision")]
    ZeroInput,
    #[error("exponent has negative valuation {0}; only Z_p exponents are supported")]
    ExponentNotIntegral(i64),
    #[error("parameter vector contains a zero entry at index {0}")]
    ZeroParameter(usize),
    #[error("degree {requested} exceeds the table's kmax = {kmax}")]
    DegreeOutOfRange { requested: usize, kmax: usize },
    #[error("series needs {needed} coefficients, above the table cap {cap}")]
    KmaxExceeded { needed: usize, cap: usize },
    #[error("series expansion requires |x|_p > |omega|_p ({0})")]
    SeriesNotApplicable(String),
    #[error("reduction failed: {0}")]
    ReductionFailed(String),
    #[error("evaluation would need {needed} terms, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("integrand domain error: {0}")]
    DomainError(String),
    #[error("x is not in the Z_p-span of the parameters; use the unstarred function")]
    NotInLambda,
    #[error("could not certify {wanted} digits (achieved {got}) after retries")]
    PrecisionLoss { wanted: i64, got: i64 },
    #[error("could not parse '{0}' as a rational a/b")]
    ParseRational(String),
}

impl Error {
    /// True for errors that signal a violated mathematical precondition
    /// rather than malformed input.
    pub fn is_math_precondition(&self) -> bool {
        !matches!(self, Error::ParseRational(_))
    }
}
