//! Arbitrary-precision p-adic special functions over `Q_p` (odd primes).
//!
//! The crate computes the p-adic multiple Barnes-Euler zeta function
//! `zeta_{p,E,N}(s, x; omega)`, the multiple p-adic Diamond-Euler Log Gamma
//! function and its `psi` derivatives, together with the machinery they rest
//! on: capped-precision `Q_p` arithmetic, the Teichmuller / angle projection,
//! the Iwasawa logarithm, exact higher-order Euler polynomials, and the
//! fermionic p-adic integral (both an exact polynomial backend and a numeric
//! truncated-alternating-sum oracle).
//!
//! All inputs are exact rationals; every returned `PAdicNumber` carries the
//! absolute precision it actually guarantees.

pub mod config;
pub mod error;
pub mod euler;
pub mod fermionic;
pub mod loggamma;
pub mod padic;
pub mod projection;
pub mod rational;
pub mod report;
pub mod zeta;

pub use config::EvalConfig;
pub use error::{Error, Result};
pub use euler::EulerTable;
pub use fermionic::{Integrand, NumericIntegral};
pub use loggamma::{LogGammaRequest, LogGammaValue};
pub use padic::{NormBound, PAdicNumber};
pub use projection::OneUnit;
pub use rational::Rational;
pub use report::IdentityReport;
pub use zeta::{ParameterVector, Strategy, ZetaRequest, ZetaValue};
