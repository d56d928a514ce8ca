//! Evaluation knobs shared by the zeta / Log Gamma entry points.

use crate::error::Result;
use crate::rational;

/// Hard cap on Euler-table degree; exceeding it is an explicit error,
/// never a silent truncation.
pub const KMAX_HARD_CAP: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Odd prime p.
    pub prime: u64,
    /// Target absolute precision M of returned values.
    pub prec: i64,
    /// Guard digits G: entry points work at M + G internally and truncate.
    pub guard: i64,
    /// Cap on series length (<= KMAX_HARD_CAP).
    pub kmax_cap: usize,
    /// Largest reduction exponent k tried or accepted.
    pub k_cap: u32,
    /// Term budget for reduction sums and numeric integrals.
    pub budget: u64,
}

impl EvalConfig {
    pub fn new(prime: u64, prec: i64) -> Result<Self> {
        rational::check_odd_prime(prime)?;
        Ok(EvalConfig {
            prime,
            prec,
            guard: 10,
            kmax_cap: KMAX_HARD_CAP,
            k_cap: 4,
            budget: 1_000_000,
        })
    }

    pub fn with_guard(mut self, guard: i64) -> Self {
        self.guard = guard;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_k_cap(mut self, k_cap: u32) -> Self {
        self.k_cap = k_cap;
        self
    }
}
