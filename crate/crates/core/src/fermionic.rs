//! The fermionic p-adic integral `I_{-1}(f) = lim_L sum_{a < p^L} (-1)^a f(a)`
//! and its N-fold iteration.
//!
//! Two backends: an exact one for polynomial integrands (each iterated
//! integral of `(x + omega . t)^n` is a higher-order Euler polynomial), and
//! a numeric truncated-sum oracle for everything else. The numeric backend
//! certifies only an empirical stabilization precision -- the digits on which
//! levels L-1 and L agree -- and is used for cross-checks, never as the
//! production path.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::euler::EulerTable;
use crate::padic::PAdicNumber;
use crate::projection;
use crate::rational::{self, rat_int, Rational};
use crate::report::IdentityReport;

/// Refuse numeric enumerations beyond this many grid points.
pub const NUMERIC_TERM_GUARD: u128 = 100_000_000;

/// Pure callback evaluated on the truncated grid points.
pub type GridCallback = Arc<dyn Fn(&[u64]) -> Result<PAdicNumber> + Send + Sync>;

/// An integrand for the N-fold numeric backend, with `N = omega.len()`
/// for the named kinds. For the log / angle kinds the evaluation errors
/// if `x + omega . t` is indistinguishable from zero at working precision.
#[derive(Clone)]
pub enum Integrand {
    /// `(x + omega . t)^n`
    Polynomial {
        degree: u32,
        x: Rational,
        omega: Vec<Rational>,
    },
    /// `log_p(x + omega . t)`
    LogShift { x: Rational, omega: Vec<Rational> },
    /// `(x + omega . t)(log_p(x + omega . t) - 1)`
    XLogXShift { x: Rational, omega: Vec<Rational> },
    /// `<x + omega . t>^(1-s)`
    AnglePower {
        x: Rational,
        omega: Vec<Rational>,
        s: Rational,
    },
    /// Arbitrary pure callback on the truncated grid point.
    Custom { arity: usize, f: GridCallback },
}

impl std::fmt::Debug for Integrand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Integrand::Polynomial { degree, x, omega } => f
                .debug_struct("Polynomial")
                .field("degree", degree)
                .field("x", x)
                .field("omega", omega)
                .finish(),
            Integrand::LogShift { x, omega } => f
                .debug_struct("LogShift")
                .field("x", x)
                .field("omega", omega)
                .finish(),
            Integrand::XLogXShift { x, omega } => f
                .debug_struct("XLogXShift")
                .field("x", x)
                .field("omega", omega)
                .finish(),
            Integrand::AnglePower { x, omega, s } => f
                .debug_struct("AnglePower")
                .field("x", x)
                .field("omega", omega)
                .field("s", s)
                .finish(),
            Integrand::Custom { arity, .. } => {
                f.debug_struct("Custom").field("arity", arity).finish()
            }
        }
    }
}

impl Integrand {
    pub fn arity(&self) -> usize {
        match self {
            Integrand::Polynomial { omega, .. }
            | Integrand::LogShift { omega, .. }
            | Integrand::XLogXShift { omega, .. }
            | Integrand::AnglePower { omega, .. } => omega.len(),
            Integrand::Custom { arity, .. } => *arity,
        }
    }
}

/// A truncated-sum value together with its stabilization certificate.
#[derive(Clone, Debug)]
pub struct NumericIntegral {
    pub value: PAdicNumber,
    /// Digits on which levels L and L-1 agree (capped at the working
    /// precision); the empirical precision of the oracle.
    pub stabilized_digits: i64,
    pub level: u32,
    pub terms: u64,
}

/// One-dimensional partial sum `S_L = sum_{a < p^L} (-1)^a f(a)`.
pub fn fermionic_sum_1d(
    f: impl Fn(u64) -> Result<PAdicNumber>,
    p: u64,
    level: u32,
) -> Result<PAdicNumber> {
    let n = (p as u128).pow(level);
    if n > NUMERIC_TERM_GUARD {
        return Err(Error::BudgetExceeded {
            needed: n,
            budget: NUMERIC_TERM_GUARD,
        });
    }
    let mut acc: Option<PAdicNumber> = None;
    for a in 0..n as u64 {
        let v = f(a)?;
        let signed = if a % 2 == 0 { v } else { v.neg() };
        acc = Some(match acc {
            None => signed,
            Some(t) => t.add(&signed)?,
        });
    }
    Ok(acc.expect("p^L >= 1 terms"))
}

/// N-fold iterated truncated sum at level L, reporting the empirical
/// stabilization precision against level L-1.
pub fn fermionic_integral_numeric(
    spec: &Integrand,
    p: u64,
    level: u32,
    prec: i64,
) -> Result<NumericIntegral> {
    rational::check_odd_prime(p)?;
    if level == 0 {
        return Err(Error::DomainError("level must be >= 1".into()));
    }
    let n = spec.arity();
    let total = (p as u128).pow(level * n as u32);
    if total > NUMERIC_TERM_GUARD {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget: NUMERIC_TERM_GUARD,
        });
    }
    match spec {
        Integrand::Polynomial { degree, x, omega } => {
            let coarse = polynomial_grid_sum(*degree, x, omega, p, level - 1)?;
            let fine = polynomial_grid_sum(*degree, x, omega, p, level)?;
            let diff = &fine - &coarse;
            let stabilized = match rational::valuation(&diff, p) {
                None => prec,
                Some(v) => v.min(prec),
            };
            Ok(NumericIntegral {
                value: PAdicNumber::from_rational(&fine, p, prec)?,
                stabilized_digits: stabilized,
                level,
                terms: total as u64,
            })
        }
        _ => {
            let coarse = padic_grid_sum(spec, p, level - 1, prec)?;
            let fine = padic_grid_sum(spec, p, level, prec)?;
            let stabilized = fine.agreement_digits(&coarse)?.min(prec);
            Ok(NumericIntegral {
                value: fine,
                stabilized_digits: stabilized,
                level,
                terms: total as u64,
            })
        }
    }
}

/// Exact backend: `int (x + omega . t)^n dmu = E_{N,n}(x; omega)` reduced
/// into `Q_p` at the requested precision.
pub fn fermionic_integral_exact_poly(
    degree: u32,
    x: &Rational,
    omega: &[Rational],
    p: u64,
    prec: i64,
) -> Result<PAdicNumber> {
    let table = EulerTable::build(omega, degree as usize)?;
    let value = table.euler_poly(degree as usize, x)?;
    PAdicNumber::from_rational(&value, p, prec)
}

/// Checks one iteration step: the numeric single-variable integral of
/// `E_{k-1,n}(x + omega_k t; omega_1..omega_{k-1})` against the exact
/// `E_{k,n}(x; omega_1..omega_k)`, at stabilization precision.
pub fn check_step_lemma(
    k: usize,
    n: u32,
    x: &Rational,
    omega: &[Rational],
    p: u64,
    level: u32,
) -> Result<IdentityReport> {
    if k == 0 || k > omega.len() {
        return Err(Error::DomainError(format!(
            "step index {k} out of range 1..={}",
            omega.len()
        )));
    }
    let lower = EulerTable::build(&omega[..k - 1], n as usize)?;
    let upper = EulerTable::build(&omega[..k], n as usize)?;
    let wk = &omega[k - 1];

    let grid_sum = |lv: u32| -> Result<Rational> {
        let mut acc = Rational::zero();
        for t in 0..(p as u128).pow(lv) as u64 {
            let arg = x + rat_int(t as i64) * wk;
            let v = lower.euler_poly(n as usize, &arg)?;
            if t % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        Ok(acc)
    };
    let coarse = grid_sum(level - 1)?;
    let fine = grid_sum(level)?;
    let target = upper.euler_poly(n as usize, x)?;

    let big = 10_000i64;
    let stabilized = rational::valuation(&(&fine - &coarse), p).unwrap_or(big);
    let agreement = rational::valuation(&(&fine - &target), p).unwrap_or(big);
    let params = format!(
        "p={p} k={k} n={n} x={} omega=({}) L={level}",
        rational::render(x),
        omega.iter().map(rational::render).collect::<Vec<_>>().join(","),
    );
    Ok(IdentityReport::new(
        "fermionic.step_lemma",
        params,
        agreement.min(big),
        stabilized.min(big).max(1),
    ))
}

/// Exact signed grid sum of `(x + omega . t)^degree`. Scaled to a common
/// denominator so the whole enumeration runs over integers, with the
/// numerator updated incrementally along the row-major walk.
fn polynomial_grid_sum(
    degree: u32,
    x: &Rational,
    omega: &[Rational],
    p: u64,
    level: u32,
) -> Result<Rational> {
    use num_bigint::BigInt;
    let n = omega.len();
    let mut denom: BigInt = x.denom().clone();
    for w in omega {
        denom = num_integer::Integer::lcm(&denom, w.denom());
    }
    let base: BigInt = x.numer() * (&denom / x.denom());
    let steps: Vec<BigInt> = omega
        .iter()
        .map(|w| w.numer() * (&denom / w.denom()))
        .collect();
    let side = (p as u128).pow(level) as u64;
    let mut acc = BigInt::from(0);
    let mut t = vec![0u64; n];
    let mut cur = base;
    let mut parity = 0u64;
    loop {
        let term = cur.pow(degree);
        if parity % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(Rational::new(acc, denom.pow(degree)));
            }
            t[i] += 1;
            if t[i] < side {
                cur += &steps[i];
                parity += 1;
                break;
            }
            cur -= &steps[i] * (side - 1);
            parity += side - 1;
            t[i] = 0;
            i += 1;
        }
    }
}

fn padic_grid_sum(spec: &Integrand, p: u64, level: u32, prec: i64) -> Result<PAdicNumber> {
    let n = spec.arity();
    let mut acc = PAdicNumber::zero(p, prec)?;
    for_each_grid_point(p, level, n, &mut |t| {
        let v = eval_integrand(spec, t, p, prec)?;
        let signed = if t.iter().sum::<u64>() % 2 == 0 {
            v
        } else {
            v.neg()
        };
        acc = acc.add(&signed)?;
        Ok(())
    })?;
    Ok(acc)
}

fn eval_integrand(spec: &Integrand, t: &[u64], p: u64, prec: i64) -> Result<PAdicNumber> {
    let shifted = |x: &Rational, omega: &[Rational]| -> Rational {
        let mut y = x.clone();
        for (ti, w) in t.iter().zip(omega) {
            y += rat_int(*ti as i64) * w;
        }
        y
    };
    match spec {
        Integrand::Polynomial { degree, x, omega } => {
            PAdicNumber::from_rational(&pow_rational(&shifted(x, omega), *degree), p, prec)
        }
        Integrand::LogShift { x, omega } => {
            let y = shifted(x, omega);
            if y.is_zero() {
                return Err(Error::DomainError("log of zero on the grid".into()));
            }
            projection::iwasawa_log(&PAdicNumber::from_rational(&y, p, prec)?)
                .map_err(|_| Error::DomainError("integrand too close to Lambda".into()))
        }
        Integrand::XLogXShift { x, omega } => {
            let y = shifted(x, omega);
            if y.is_zero() {
                return Err(Error::DomainError("log of zero on the grid".into()));
            }
            let vy = rational::valuation(&y, p).expect("nonzero");
            let yp = PAdicNumber::from_rational(&y, p, prec + vy.max(0))?;
            let ly = projection::iwasawa_log(&yp)
                .map_err(|_| Error::DomainError("integrand too close to Lambda".into()))?;
            let one = PAdicNumber::one(p, ly.precision())?;
            Ok(ly.sub(&one)?.mul_rational(&y))
        }
        Integrand::AnglePower { x, omega, s } => {
            let y = shifted(x, omega);
            if y.is_zero() {
                return Err(Error::DomainError("angle of zero on the grid".into()));
            }
            let vy = rational::valuation(&y, p).expect("nonzero");
            let yp = PAdicNumber::from_rational(&y, p, prec + vy)?;
            let z = projection::angle(&yp)
                .map_err(|_| Error::DomainError("integrand too close to Lambda".into()))?;
            let exponent =
                PAdicNumber::from_rational(&(rat_int(1) - s), p, prec)?;
            Ok(projection::one_unit_pow(&z, &exponent)?.into_padic())
        }
        Integrand::Custom { f, .. } => f(t),
    }
}

/// Row-major walk over `[0, p^level)^n`.
fn for_each_grid_point(
    p: u64,
    level: u32,
    n: usize,
    visit: &mut impl FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    let side = (p as u128).pow(level) as u64;
    let mut t = vec![0u64; n];
    loop {
        visit(&t)?;
        // increment with carries; done when every coordinate wrapped
        let mut i = 0;
        loop {
            if i == n {
                return Ok(());
            }
            t[i] += 1;
            if t[i] < side {
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

fn pow_rational(q: &Rational, k: u32) -> Rational {
    q.pow(k as i32)
}
