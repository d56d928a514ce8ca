//! The multiple p-adic Diamond-Euler Log Gamma function and its psi
//! derivatives.
//!
//! Production path is the Stirling series
//!
//! ```text
//! LogGamma(x; omega) = x(log_p x - 1) + E_{N,1}(0; omega) log_p x
//!                      + sum_{j>=2} (-1)^j / (j(j-1)) E_{N,j}(0; omega) x^(1-j)
//! ```
//!
//! for `|x|_p > |omega|_p`, together with the `p^k` distribution relation
//! (whose `E_{N,1} log_p m` correction vanishes at `m = p^k` since
//! `log_p p = 0`). The defining s-derivative of `zeta/(s-1)` at `s = 0` is
//! exercised through a finite-difference check, not used for evaluation.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::euler::EulerTable;
use crate::fermionic::{self, Integrand, NumericIntegral};
use crate::padic::PAdicNumber;
use crate::projection;
use crate::rational::{self, p_power, rat, rat_int, Rational};
use crate::zeta::{self, ParameterVector, Strategy, ZetaRequest};

#[derive(Clone, Debug)]
pub struct LogGammaRequest {
    pub config: EvalConfig,
    pub x: Rational,
    pub omega: Vec<Rational>,
    pub strategy: Strategy,
}

impl LogGammaRequest {
    pub fn new(config: EvalConfig, x: Rational, omega: Vec<Rational>) -> Self {
        LogGammaRequest {
            config,
            x,
            omega,
            strategy: Strategy::Auto,
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    fn parameters(&self) -> Result<ParameterVector> {
        ParameterVector::new(self.config.prime, self.omega.clone())
    }
}

#[derive(Clone, Debug)]
pub struct LogGammaValue {
    pub value: PAdicNumber,
    pub strategy: String,
    pub guaranteed_prec: i64,
}

impl LogGammaValue {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": self.value.to_json(),
            "strategy": self.strategy,
            "guaranteed_prec": self.guaranteed_prec,
        })
    }
}

/// Stirling-series body at fixed working precision. The whole tail is an
/// exact rational; only `log_p x` is a genuine series.
fn stirling_at(
    cfg: &EvalConfig,
    x: &Rational,
    pv: &ParameterVector,
    work: i64,
) -> Result<(PAdicNumber, u64)> {
    let p = cfg.prime;
    let vx = rational::valuation(x, p).ok_or(Error::ZeroInput)?;
    // v_p(term_j) >= j d + v_x - v_p(j(j-1)), d = e - v_x >= 1; consecutive
    // integers share no factor p, so v_p(j(j-1)) <= log_p j.
    let mut tail = Rational::zero();
    let mut terms = 0u64;
    if let Some(e) = pv.min_valuation() {
        let d = e - vx;
        debug_assert!(d >= 1);
        let mut j: i64 = 2;
        while j * d + vx - ilog_p(j as u64, p) < work {
            j += 1;
        }
        let j_max = j as usize;
        if j_max > cfg.kmax_cap {
            return Err(Error::KmaxExceeded {
                needed: j_max,
                cap: cfg.kmax_cap,
            });
        }
        let table = EulerTable::build(pv.omegas(), j_max)?;
        let x_inv = x.recip();
        let mut x_pow = rat_int(1); // becomes x^(1-j), starting at x^{-1} for j = 2
        for j in 2..=j_max {
            x_pow *= &x_inv;
            let c = table.coefficient(j)?;
            if c.is_zero() {
                continue;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            tail += rat(sign, (j * (j - 1)) as i64) * c * &x_pow;
            terms += 1;
        }
        let log_coeff = x + table.coefficient(1)?;
        let lx = log_term(x, p, work)?;
        let mut acc = PAdicNumber::from_rational(&(tail - x), p, work)?;
        if !log_coeff.is_zero() {
            acc = acc.add(&lx.mul_rational(&log_coeff))?;
        }
        Ok((acc, terms + 2))
    } else {
        // N = 0: x (log_p x - 1) exactly.
        let lx = log_term(x, p, work)?;
        let acc = lx.mul_rational(x).add(&PAdicNumber::from_rational(
            &-x.clone(),
            p,
            work,
        )?)?;
        Ok((acc, 1))
    }
}

fn log_term(x: &Rational, p: u64, work: i64) -> Result<PAdicNumber> {
    let vx = rational::valuation(x, p).ok_or(Error::ZeroInput)?;
    let x_p = PAdicNumber::from_rational(x, p, work + vx)?;
    projection::iwasawa_log(&x_p)
}

/// Stirling evaluation; requires `|x|_p > |omega|_p`.
pub fn log_gamma_stirling(req: &LogGammaRequest) -> Result<PAdicNumber> {
    let pv = req.parameters()?;
    if !pv.series_applicable(&req.x) {
        return Err(Error::SeriesNotApplicable(
            "Stirling series needs |x|_p > |omega|_p".into(),
        ));
    }
    let (value, _) = zeta::certify(&req.config, |work| {
        stirling_at(&req.config, &req.x, &pv, work)
    })?;
    Ok(value)
}

/// Main entry point: Stirling when applicable, forced `p^k` reduction with
/// its `p^k` prefactor when requested, an explicit error on `Lambda`.
pub fn log_gamma(req: &LogGammaRequest) -> Result<LogGammaValue> {
    let pv = req.parameters()?;
    match req.strategy {
        Strategy::Series => Ok(LogGammaValue {
            value: log_gamma_stirling(req)?,
            strategy: "stirling".into(),
            guaranteed_prec: req.config.prec,
        }),
        Strategy::Auto => {
            if pv.series_applicable(&req.x) {
                Ok(LogGammaValue {
                    value: log_gamma_stirling(req)?,
                    strategy: "stirling".into(),
                    guaranteed_prec: req.config.prec,
                })
            } else {
                Err(Error::ReductionFailed(
                    "x in Lambda; use loggamma-star".into(),
                ))
            }
        }
        Strategy::Reduce(k) => {
            let value = reduce_sum(&req.config, &req.x, &pv, k)?;
            Ok(LogGammaValue {
                value,
                strategy: format!("reduce({k})"),
                guaranteed_prec: req.config.prec,
            })
        }
    }
}

/// `LogGamma(x) = p^k sum_{j < p^k} (-1)^(|j|) LogGamma((x + j.omega)/p^k)`;
/// the `E_{N,1} log_p m` correction vanishes since `log_p p = 0`.
fn reduce_sum(
    cfg: &EvalConfig,
    x: &Rational,
    pv: &ParameterVector,
    k: u32,
) -> Result<PAdicNumber> {
    if k == 0 {
        let (value, _) = zeta::certify(cfg, |work| stirling_at(cfg, x, pv, work))?;
        return Ok(value);
    }
    let n = pv.len();
    let count = (cfg.prime as u128).pow(k * n as u32);
    if count > cfg.budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: count,
            budget: cfg.budget as u128,
        });
    }
    let scale = p_power(cfg.prime, k as i64);
    // the p^k prefactor raises precision, so certify at a shifted target
    let inner_cfg = EvalConfig {
        prec: cfg.prec - k as i64,
        ..cfg.clone()
    };
    let (value, _) = zeta::certify(&inner_cfg, |work| {
        let side = (cfg.prime as u128).pow(k) as u64;
        let mut acc = PAdicNumber::zero(cfg.prime, work)?;
        let mut idx = vec![0u64; n];
        loop {
            let mut y = x.clone();
            for (j, w) in idx.iter().zip(pv.omegas()) {
                y += rat_int(*j as i64) * w;
            }
            let y = y / &scale;
            if !pv.series_applicable(&y) {
                return Err(Error::ReductionFailed(format!(
                    "term j = ({idx:?}) lands on Lambda at level {k}"
                )));
            }
            let (term, _) = stirling_at(cfg, &y, pv, work)?;
            let sign_odd = idx.iter().sum::<u64>() % 2 == 1;
            acc = if sign_odd {
                acc.sub(&term)?
            } else {
                acc.add(&term)?
            };
            let mut i = 0;
            loop {
                if i == n {
                    return Ok((acc, count as u64));
                }
                idx[i] += 1;
                if idx[i] < side {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    })?;
    Ok(value.mul_rational(&scale).truncate(cfg.prec))
}

/// Definitional oracle: the N-fold fermionic integral of
/// `(x + omega.t) log_p(x + omega.t) - (x + omega.t)` at truncation level L.
pub fn log_gamma_integral_oracle(
    req: &LogGammaRequest,
    level: u32,
) -> Result<NumericIntegral> {
    let pv = req.parameters()?;
    let work = req.config.prec + req.config.guard;
    if pv.is_empty() {
        // degenerate: no integration happens
        let (value, _) = zeta::certify(&req.config, |w| stirling_at(&req.config, &req.x, &pv, w))?;
        return Ok(NumericIntegral {
            value,
            stabilized_digits: req.config.prec,
            level,
            terms: 1,
        });
    }
    let spec = Integrand::XLogXShift {
        x: req.x.clone(),
        omega: req.omega.clone(),
    };
    fermionic::fermionic_integral_numeric(&spec, req.config.prime, level, work)
}

/// `psi^(k)(x; omega) = D^k LogGamma(x; omega)`. Order 1 is the log series
/// from the differentiated Stirling expansion; orders >= 2 use the zeta
/// closed form `psi^(r) = (-1)^r (r-2)! (<x>/x)^(r-1) zeta(r, x; omega)`.
pub fn psi(order: u32, req: &LogGammaRequest) -> Result<PAdicNumber> {
    if order == 0 {
        return Err(Error::DomainError("psi order must be >= 1".into()));
    }
    let pv = req.parameters()?;
    if !pv.series_applicable(&req.x) {
        return Err(Error::SeriesNotApplicable(
            "psi needs |x|_p > |omega|_p".into(),
        ));
    }
    if order == 1 {
        return psi_series(1, req);
    }
    let cfg = &req.config;
    let p = cfg.prime;
    let vx = rational::valuation(&req.x, p).ok_or(Error::ZeroInput)?;
    // the (<x>/x)^(order-1) factor can cost order*|v_x| digits
    let zeta_cfg = EvalConfig {
        prec: cfg.prec + (order as i64) * vx.abs() + 4,
        ..cfg.clone()
    };
    let sreq = ZetaRequest::new(
        zeta_cfg,
        rat_int(order as i64),
        req.x.clone(),
        req.omega.clone(),
    );
    let zv = zeta::zeta(&sreq)?;
    let (value, _) = zeta::certify(cfg, |work| {
        let z = projection::angle(&embed(&req.x, p, work)?)?;
        let ratio = z.as_padic().mul_rational(&req.x.recip());
        let mut v = ratio.pow_int(order as i64 - 1)?.mul(&zv.value)?;
        let mut factorial = rat_int(1);
        for i in 2..order - 1 {
            factorial *= rat_int(i as i64);
        }
        v = v.mul_rational(&factorial);
        if order % 2 == 1 {
            v = v.neg();
        }
        Ok((v, 1))
    })?;
    Ok(value)
}

/// Laurent-series route to `psi^(order)`: order 1 is
/// `log_p x + E_{N,1}(0)/x + sum_{j>=1} (-1)^j/(j+1) E_{N,j+1}(0) x^(-j-1)`,
/// higher orders differentiate it termwise. Cross-check for `psi`.
pub fn psi_series(order: u32, req: &LogGammaRequest) -> Result<PAdicNumber> {
    if order == 0 {
        return Err(Error::DomainError("psi order must be >= 1".into()));
    }
    let pv = req.parameters()?;
    if !pv.series_applicable(&req.x) {
        return Err(Error::SeriesNotApplicable(
            "psi needs |x|_p > |omega|_p".into(),
        ));
    }
    let cfg = &req.config;
    let p = cfg.prime;
    let x = &req.x;
    let vx = rational::valuation(x, p).ok_or(Error::ZeroInput)?;
    let (value, _) = zeta::certify(cfg, |work| {
        let d = pv.min_valuation().map(|e| e - vx).unwrap_or(i64::MAX / 2);
        // term_j has v >= (j + order - 1)(-v_x) ... dominated by j d; pad by order.
        let mut j: i64 = 1;
        while j * d - (order as i64) * vx.abs() - ilog_p((j + order as i64) as u64, p) < work
            && d < i64::MAX / 4
        {
            j += 1;
        }
        let j_max = if d >= i64::MAX / 4 { 0 } else { j as usize + order as usize };
        if j_max > cfg.kmax_cap {
            return Err(Error::KmaxExceeded {
                needed: j_max,
                cap: cfg.kmax_cap,
            });
        }
        let table = EulerTable::build(pv.omegas(), j_max)?;
        let series = psi_formal(&table, order, j_max)?;
        debug_assert!(series.xlogx.is_zero());
        let mut exact = Rational::zero();
        for (e, coeff) in &series.powers {
            exact += coeff * x.pow(*e as i32);
        }
        let mut acc = PAdicNumber::from_rational(&exact, p, work)?;
        if !series.logx.is_zero() {
            let lx = log_term(x, p, work)?;
            acc = acc.add(&lx.mul_rational(&series.logx))?;
        }
        Ok((acc, j_max as u64))
    })?;
    Ok(value)
}

/// The starred Log Gamma on `Lambda`: level-k signed sum
/// `p^(k-1) sum_{j, v_p(x + j.omega) = e} (-1)^(|j|)
///  LogGamma((x + j.omega)/p^k)`; zero by convention for `|omega|_p < 1`.
pub fn log_gamma_star(req: &LogGammaRequest) -> Result<LogGammaValue> {
    let pv = req.parameters()?;
    if !pv.lambda_contains(&req.x) {
        return Err(Error::NotInLambda);
    }
    let level = match req.strategy {
        Strategy::Reduce(k) if k >= 1 => k,
        _ => 1,
    };
    let prefactor = p_power(req.config.prime, level as i64 - 1);
    let inner_cfg = EvalConfig {
        prec: req.config.prec - (level as i64 - 1),
        ..req.config.clone()
    };
    let (value, _) = zeta::star_sum(&inner_cfg, &pv, &req.x, level, |cfg, y, work| {
        stirling_at(cfg, y, &pv, work)
    })?;
    Ok(LogGammaValue {
        value: value.mul_rational(&prefactor).truncate(req.config.prec),
        strategy: format!("star({level})"),
        guaranteed_prec: req.config.prec,
    })
}

/// Finite-difference realization of the defining s-derivative:
/// `(x/<x>) * (g(h) - g(0)) / h` with `g(s) = zeta(s, x; omega)/(s-1)` and
/// step `h = p^r`. Converges to `LogGamma(x; omega)` as r grows.
pub fn log_gamma_s_derivative_fd(req: &LogGammaRequest, r: u32) -> Result<PAdicNumber> {
    let cfg = &req.config;
    let p = cfg.prime;
    let h = p_power(p, r as i64);
    let vx = rational::valuation(&req.x, p).ok_or(Error::ZeroInput)?;
    // dividing by h costs r digits and the x/<x> factor |v_x| more
    let bumped = EvalConfig {
        prec: cfg.prec + r as i64 + vx.abs() + 2,
        ..cfg.clone()
    };
    let g = |s: Rational| -> Result<PAdicNumber> {
        let zv = zeta::zeta(&ZetaRequest::new(
            bumped.clone(),
            s.clone(),
            req.x.clone(),
            req.omega.clone(),
        ))?;
        Ok(zv.value.mul_rational(&(s - rat_int(1)).recip()))
    };
    let g_h = g(h.clone())?;
    let g_0 = g(Rational::zero())?;
    let quotient = g_h.sub(&g_0)?.mul_rational(&h.recip());
    let (value, _) = zeta::certify(cfg, |work| {
        let z = projection::angle(&embed(&req.x, p, work)?)?;
        let inv_ratio = z.as_padic().inv()?.mul_rational(&req.x);
        Ok((inv_ratio.mul(&quotient)?, 1))
    })?;
    Ok(value)
}

fn embed(x: &Rational, p: u64, work: i64) -> Result<PAdicNumber> {
    let vx = rational::valuation(x, p).ok_or(Error::ZeroInput)?;
    PAdicNumber::from_rational(x, p, work + vx)
}

fn ilog_p(n: u64, p: u64) -> i64 {
    let mut k = 0i64;
    let mut m = n;
    while m >= p {
        m /= p;
        k += 1;
    }
    k
}

/// A formal object `a * x log_p x + b * log_p x + sum_e c_e x^e` with exact
/// rational coefficients; closed under d/dx. Used to compare the
/// differentiated Stirling expansion with the psi series coefficient by
/// coefficient over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalLogSeries {
    pub xlogx: Rational,
    pub logx: Rational,
    pub powers: BTreeMap<i64, Rational>,
}

impl FormalLogSeries {
    pub fn derivative(&self) -> FormalLogSeries {
        let mut powers: BTreeMap<i64, Rational> = BTreeMap::new();
        // d(x log x) = log x + 1, d(log x) = 1/x, d(x^e) = e x^(e-1)
        if !self.xlogx.is_zero() {
            powers.insert(0, self.xlogx.clone());
        }
        if !self.logx.is_zero() {
            powers.insert(-1, self.logx.clone());
        }
        for (e, c) in &self.powers {
            if *e == 0 || c.is_zero() {
                continue;
            }
            let entry = powers.entry(e - 1).or_insert_with(Rational::zero);
            *entry += rat_int(*e) * c;
        }
        powers.retain(|_, c| !c.is_zero());
        FormalLogSeries {
            xlogx: Rational::zero(),
            logx: self.xlogx.clone(),
            powers,
        }
    }

    /// Equality of all coefficients with exponent >= min_exp.
    pub fn agrees_down_to(&self, other: &FormalLogSeries, min_exp: i64) -> bool {
        if self.xlogx != other.xlogx || self.logx != other.logx {
            return false;
        }
        let zero = Rational::zero();
        let exps: std::collections::BTreeSet<i64> = self
            .powers
            .keys()
            .chain(other.powers.keys())
            .copied()
            .filter(|e| *e >= min_exp)
            .collect();
        exps.into_iter().all(|e| {
            self.powers.get(&e).unwrap_or(&zero) == other.powers.get(&e).unwrap_or(&zero)
        })
    }
}

/// The Stirling expansion as a formal series with tail up to `x^(1-j_max)`.
pub fn stirling_formal(table: &EulerTable, j_max: usize) -> Result<FormalLogSeries> {
    let mut powers = BTreeMap::new();
    powers.insert(1, rat_int(-1));
    for j in 2..=j_max {
        let c = table.coefficient(j)?;
        if c.is_zero() {
            continue;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        powers.insert(1 - j as i64, rat(sign, (j * (j - 1)) as i64) * c);
    }
    Ok(FormalLogSeries {
        xlogx: rat_int(1),
        logx: table.coefficient(1)?.clone(),
        powers,
    })
}

/// The psi^(order) expansion as a formal series: order 1 carries a log
/// term, higher orders are pure Laurent tails
/// `(order-2)! sum_j (-1)^j C(-j-1, order-2) E_{N,j}(0) x^(1-order-j)`.
pub fn psi_formal(table: &EulerTable, order: u32, j_max: usize) -> Result<FormalLogSeries> {
    let mut powers: BTreeMap<i64, Rational> = BTreeMap::new();
    if order == 1 {
        if j_max >= 1 {
            let c1 = table.coefficient(1)?;
            if !c1.is_zero() {
                powers.insert(-1, c1.clone());
            }
        }
        for j in 1..=j_max.saturating_sub(1) {
            let c = table.coefficient(j + 1)?;
            if c.is_zero() {
                continue;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            powers.insert(-(j as i64) - 1, rat(sign, j as i64 + 1) * c);
        }
        return Ok(FormalLogSeries {
            xlogx: Rational::zero(),
            logx: rat_int(1),
            powers,
        });
    }
    let k = order as i64 - 1; // psi^(k+1) in terms of the tail exponent
    let mut factorial = rat_int(1);
    for i in 2..order - 1 {
        factorial *= rat_int(i as i64);
    }
    for j in 0..=j_max {
        let c = table.coefficient(j)?;
        if c.is_zero() {
            continue;
        }
        // C(-j-1, k-1) = (-1)^(k-1) C(j+k-1, k-1)
        let mut binom = rational::binomial((j as u64) + (k as u64) - 1, (k as u64) - 1);
        if (k - 1) % 2 == 1 {
            binom = -binom;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let coeff = &factorial * rat_int(sign) * Rational::from(binom) * c;
        powers.insert(-k - j as i64, coeff);
    }
    Ok(FormalLogSeries {
        xlogx: Rational::zero(),
        logx: Rational::zero(),
        powers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u64, prec: i64) -> EvalConfig {
        EvalConfig::new(p, prec).unwrap()
    }

    fn greq(p: u64, prec: i64, x: Rational, omega: &[i64]) -> LogGammaRequest {
        LogGammaRequest::new(
            cfg(p, prec),
            x,
            omega.iter().map(|&w| rat_int(w)).collect(),
        )
    }

    #[test]
    fn order_zero_base_case() {
        // LogGamma_{D,E,0}(x; -) = x(log_p x - 1); at x = p this is -p.
        let v = log_gamma(&greq(5, 15, rat_int(5), &[])).unwrap();
        let expect = PAdicNumber::from_integer(-5, 5, 15).unwrap();
        assert!(v.value.eq_to_precision(&expect, 15).unwrap());
        assert_eq!(v.strategy, "stirling");
    }

    #[test]
    fn order_zero_general_x() {
        let x = rat(7, 5);
        let v = log_gamma(&greq(5, 14, x.clone(), &[])).unwrap();
        let work = 22;
        let lx = log_term(&x, 5, work).unwrap();
        let expect = lx
            .mul_rational(&x)
            .sub(&PAdicNumber::from_rational(&x, 5, work).unwrap())
            .unwrap();
        assert!(v.value.eq_to_precision(&expect.truncate(14), 14).unwrap());
    }

    #[test]
    fn stirling_depths_agree() {
        // Same value certified at two different precisions.
        let x = rat(1, 5);
        let deep = log_gamma_stirling(&greq(5, 28, x.clone(), &[1])).unwrap();
        let shallow = log_gamma_stirling(&greq(5, 15, x, &[1])).unwrap();
        assert!(deep.truncate(15).eq_to_precision(&shallow, 15).unwrap());
    }

    #[test]
    fn lambda_is_an_error() {
        assert!(matches!(
            log_gamma(&greq(5, 10, rat(1, 2), &[1])),
            Err(Error::ReductionFailed(_))
        ));
        assert!(matches!(
            log_gamma_stirling(&greq(5, 10, rat_int(0), &[1])),
            Err(Error::SeriesNotApplicable(_))
        ));
    }

    #[test]
    fn reflection_sums_to_zero() {
        // LogGamma(|omega| - x) + LogGamma(x) = 0
        for (omega, x) in [
            (vec![1i64], rat(1, 5)),
            (vec![1, 2], rat(2, 5)),
            (vec![1, 1], rat(7, 5)),
        ] {
            let total: Rational = omega.iter().map(|&w| rat_int(w)).sum();
            let a = log_gamma(&greq(5, 14, x.clone(), &omega)).unwrap();
            let b = log_gamma(&greq(5, 14, total - &x, &omega)).unwrap();
            let s = a.value.add(&b.value).unwrap();
            assert!(
                s.valuation_lower_bound() >= 14,
                "omega = {omega:?}, sum = {s}"
            );
        }
    }

    #[test]
    fn difference_equation() {
        // LogGamma(x + w_N; omega) + LogGamma(x; omega) = 2 LogGamma_{N-1}(x)
        let x = rat(2, 5);
        for omega in [vec![1i64], vec![1, 2], vec![2, 1, 3]] {
            let w_last = rat_int(*omega.last().unwrap());
            let lhs1 = log_gamma(&greq(5, 13, &x + &w_last, &omega)).unwrap();
            let lhs2 = log_gamma(&greq(5, 13, x.clone(), &omega)).unwrap();
            let rhs = log_gamma(&greq(5, 13, x.clone(), &omega[..omega.len() - 1])).unwrap();
            let sum = lhs1.value.add(&lhs2.value).unwrap();
            let double = rhs.value.mul_rational(&rat_int(2));
            assert!(sum.eq_to_precision(&double, 13).unwrap(), "{omega:?}");
        }
    }

    #[test]
    fn forced_reduction_agrees_with_stirling() {
        let base = greq(5, 14, rat(2, 5), &[1]);
        let direct = log_gamma(&base).unwrap();
        for k in 1..=2u32 {
            let forced = log_gamma(&base.clone().with_strategy(Strategy::Reduce(k))).unwrap();
            assert!(
                forced.value.eq_to_precision(&direct.value, 14).unwrap(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn odd_m_distribution_with_correction() {
        // LogGamma(x) = m sum_j (-1)^(|j|) LogGamma((x+j.omega)/m)
        //              + E_{N,1}(x; omega) log_p m
        let p = 5u64;
        let prec = 12i64;
        let m = 3i64;
        let x = rat(1, 5);
        let omega = vec![rat_int(1), rat_int(2)];
        let direct = log_gamma(&LogGammaRequest::new(
            cfg(p, prec),
            x.clone(),
            omega.clone(),
        ))
        .unwrap();
        let mut acc = PAdicNumber::zero(p, prec + 8).unwrap();
        for j1 in 0..m {
            for j2 in 0..m {
                let y = (&x + rat_int(j1) * &omega[0] + rat_int(j2) * &omega[1]) / rat_int(m);
                let term =
                    log_gamma(&LogGammaRequest::new(cfg(p, prec + 6), y, omega.clone()))
                        .unwrap();
                acc = if (j1 + j2) % 2 == 0 {
                    acc.add(&term.value).unwrap()
                } else {
                    acc.sub(&term.value).unwrap()
                };
            }
        }
        let table = EulerTable::build(&omega, 1).unwrap();
        let e1 = table.euler_poly(1, &x).unwrap();
        let log_m = log_term(&rat_int(m), p, prec + 8).unwrap();
        let correction = log_m.mul_rational(&e1);
        // the correction is genuinely nonzero at m = 3, p = 5
        assert!(correction.valuation_lower_bound() < prec);
        let rhs = acc.mul_rational(&rat_int(m)).add(&correction).unwrap();
        let digits = direct.value.precision().min(rhs.precision()).min(prec);
        assert!(direct.value.eq_to_precision(&rhs, digits).unwrap());
    }

    #[test]
    fn psi_order_one_at_order_zero() {
        // N = 0: psi(x) = log_p x
        let x = rat(3, 5);
        let v = psi(1, &greq(5, 14, x.clone(), &[])).unwrap();
        let expect = log_term(&x, 5, 20).unwrap();
        assert!(v.eq_to_precision(&expect.truncate(14), 14).unwrap());
    }

    #[test]
    fn psi_two_closed_form() {
        // psi^(2)(x) = (<x>/x) zeta(2, x)
        let x = rat(1, 5);
        let omega = [1i64];
        let v = psi(2, &greq(5, 14, x.clone(), &omega)).unwrap();
        let zv = zeta::zeta(&ZetaRequest::new(
            cfg(5, 20),
            rat_int(2),
            x.clone(),
            vec![rat_int(1)],
        ))
        .unwrap();
        let z = projection::angle(&embed(&x, 5, 22).unwrap()).unwrap();
        let ratio = z.as_padic().mul_rational(&x.recip());
        let expect = ratio.mul(&zv.value).unwrap();
        let digits = v.precision().min(expect.precision()).min(14);
        assert!(v.eq_to_precision(&expect, digits).unwrap());
    }

    #[test]
    fn psi_closed_form_matches_series_route() {
        let x = rat(2, 5);
        for omega in [vec![1i64], vec![1, 2]] {
            for order in 2..=5u32 {
                let a = psi(order, &greq(5, 12, x.clone(), &omega)).unwrap();
                let b = psi_series(order, &greq(5, 12, x.clone(), &omega)).unwrap();
                assert!(
                    a.eq_to_precision(&b, 12).unwrap(),
                    "order {order}, omega {omega:?}"
                );
            }
        }
    }

    #[test]
    fn psi_series_is_termwise_derivative_of_stirling() {
        let table = EulerTable::build(&[rat_int(1), rat_int(2)], 16).unwrap();
        let stirling = stirling_formal(&table, 16).unwrap();
        let mut d = stirling;
        for order in 1..=4u32 {
            d = d.derivative();
            let direct = psi_formal(&table, order, 16).unwrap();
            assert!(
                d.agrees_down_to(&direct, -12),
                "order {order}: {d:?} vs {direct:?}"
            );
        }
    }

    #[test]
    fn fd_derivative_converges_to_log_gamma() {
        let x = rat(1, 5);
        let req = greq(5, 12, x, &[1]);
        let target = log_gamma(&req).unwrap();
        let mut last = 0i64;
        for r in 3..=5u32 {
            let fd = log_gamma_s_derivative_fd(&req, r).unwrap();
            let agree = fd.agreement_digits(&target.value).unwrap();
            assert!(agree > last, "r = {r}: {agree} <= {last}");
            last = agree;
        }
        assert!(last >= 4);
    }

    #[test]
    fn star_norm_below_one_is_zero() {
        let v = log_gamma_star(&greq(5, 10, rat_int(0), &[5])).unwrap();
        assert!(v.value.is_zero_at_precision());
    }

    #[test]
    fn star_rejects_off_lambda() {
        assert!(matches!(
            log_gamma_star(&greq(5, 10, rat(1, 5), &[1])),
            Err(Error::NotInLambda)
        ));
    }

    #[test]
    fn star_levels_agree() {
        for x in [rat_int(0), rat(1, 2)] {
            let base = greq(5, 13, x, &[1]);
            let v1 = log_gamma_star(&base.clone().with_strategy(Strategy::Reduce(1))).unwrap();
            let v2 = log_gamma_star(&base.clone().with_strategy(Strategy::Reduce(2))).unwrap();
            assert!(v1.value.eq_to_precision(&v2.value, 13).unwrap());
        }
    }

    #[test]
    fn star_matches_term_sum() {
        // x = 0, omega = (1): sum_{j=1..4} (-1)^j LogGamma(j/5)
        let v = log_gamma_star(&greq(5, 13, rat_int(0), &[1])).unwrap();
        let mut acc = PAdicNumber::zero(5, 20).unwrap();
        for j in 1..5i64 {
            let term = log_gamma(&greq(5, 18, rat(j, 5), &[1])).unwrap();
            acc = if j % 2 == 0 {
                acc.add(&term.value).unwrap()
            } else {
                acc.sub(&term.value).unwrap()
            };
        }
        assert!(v.value.eq_to_precision(&acc.truncate(13), 13).unwrap());
    }

    #[test]
    fn star_terms_pair_under_reflection() {
        // With omega = (1), LogGamma((p-j)/p) = -LogGamma(j/p), so the
        // starred sum at x = 0 collapses to twice the first half.
        let v = log_gamma_star(&greq(5, 13, rat_int(0), &[1])).unwrap();
        let g1 = log_gamma(&greq(5, 16, rat(1, 5), &[1])).unwrap();
        let g2 = log_gamma(&greq(5, 16, rat(2, 5), &[1])).unwrap();
        let folded = g2.value.sub(&g1.value).unwrap().mul_rational(&rat_int(2));
        assert!(v.value.eq_to_precision(&folded.truncate(13), 13).unwrap());
    }

    #[test]
    fn scaling_relation() {
        // LogGamma(cx; c omega) = c (LogGamma(x) + (x/<x>) zeta(0,x) log_p c)
        let p = 5u64;
        let prec = 12i64;
        let x = rat(1, 5);
        let c = rat(3, 2);
        let omega = vec![rat_int(1), rat_int(2)];
        let scaled: Vec<Rational> = omega.iter().map(|w| w * &c).collect();
        let lhs = log_gamma(&LogGammaRequest::new(cfg(p, prec), &x * &c, scaled)).unwrap();
        let lg = log_gamma(&LogGammaRequest::new(cfg(p, prec + 4), x.clone(), omega.clone()))
            .unwrap();
        let z0 = zeta::zeta(&ZetaRequest::new(
            cfg(p, prec + 4),
            rat_int(0),
            x.clone(),
            omega,
        ))
        .unwrap();
        let work = prec + 8;
        let z = projection::angle(&embed(&x, p, work).unwrap()).unwrap();
        let x_over_angle = z.as_padic().inv().unwrap().mul_rational(&x);
        let log_c = log_term(&c, p, work).unwrap();
        let rhs = lg
            .value
            .add(&x_over_angle.mul(&z0.value).unwrap().mul(&log_c).unwrap())
            .unwrap()
            .mul_rational(&c);
        let digits = lhs.value.precision().min(rhs.precision()).min(prec);
        assert!(lhs.value.eq_to_precision(&rhs, digits).unwrap());
    }

    #[test]
    fn integral_oracle_cross_check() {
        let req1 = greq(5, 8, rat(1, 5), &[1]);
        let direct = log_gamma(&req1).unwrap();
        let oracle = log_gamma_integral_oracle(&req1, 3).unwrap();
        assert!(oracle.stabilized_digits >= 2);
        let digits = oracle
            .stabilized_digits
            .min(direct.value.precision())
            .min(oracle.value.precision());
        assert!(oracle.value.eq_to_precision(&direct.value, digits).unwrap());
    }

    #[test]
    fn value_json_shape() {
        let v = log_gamma(&greq(5, 10, rat(1, 5), &[1])).unwrap();
        let j = v.to_json();
        assert_eq!(j["strategy"], "stirling");
        assert_eq!(j["guaranteed_prec"], 10);
    }
}
