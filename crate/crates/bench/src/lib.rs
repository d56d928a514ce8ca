//! Shared fixtures for the criterion benches.

use padic_euler::rational::{rat, rat_int, Rational};
use padic_euler::EvalConfig;

pub fn config(prec: i64) -> EvalConfig {
    EvalConfig::new(5, prec).unwrap()
}

pub fn unit_omega(n: usize) -> Vec<Rational> {
    (0..n).map(|i| rat_int(1 + (i as i64 % 2))).collect()
}

pub fn small_x() -> Rational {
    rat(1, 5)
}
