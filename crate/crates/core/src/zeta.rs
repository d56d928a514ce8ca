//! The p-adic multiple Barnes-Euler zeta function `zeta_{p,E,N}(s, x; omega)`.
//!
//! In the large-argument regime `|x|_p > |omega|_p` the function is the
//! convergent Laurent series
//!
//! ```text
//! zeta_{p,E,N}(s, x; omega) = <x>^(1-s) sum_j C(1-s, j) E_{N,j}(0; omega) x^(-j)
//! ```
//!
//! with `|C(1-s,j)|_p <= 1` for `s` in `Z_p` and `|E_{N,j}(0;omega)|_p <=
//! |omega|_p^j`, which gives an explicit truncation point. Over `Q_p` the
//! `Z_p`-span `Lambda` of the parameters is exactly `p^e Z_p` with
//! `e = min_i v_p(omega_i)`, so the series regime coincides with
//! `x` outside `Lambda`; inputs on `Lambda` belong to the starred variant
//! `zeta*`, which drops the grid points where `|x + omega . j|_p` falls
//! below `|omega|_p` and evaluates the rest one level down.

use num_traits::Zero;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::euler::EulerTable;
use crate::padic::PAdicNumber;
use crate::projection::{self, OneUnit};
use crate::rational::{self, p_power, rat, rat_int, Rational};

/// The parameters `omega = (omega_1, ..., omega_N)` together with their
/// norm `|omega|_p = max |omega_i|_p` and the span `Lambda = p^e Z_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterVector {
    prime: u64,
    omegas: Vec<Rational>,
    /// `e = min_i v_p(omega_i)`; `None` for N = 0, where the norm is 0
    /// and `Lambda = {0}`.
    min_valuation: Option<i64>,
}

impl ParameterVector {
    pub fn new(prime: u64, omegas: Vec<Rational>) -> Result<Self> {
        rational::check_odd_prime(prime)?;
        let mut min_valuation = None;
        for (i, w) in omegas.iter().enumerate() {
            let v = rational::valuation(w, prime).ok_or(Error::ZeroParameter(i))?;
            min_valuation = Some(min_valuation.map_or(v, |m: i64| m.min(v)));
        }
        Ok(ParameterVector {
            prime,
            omegas,
            min_valuation,
        })
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn omegas(&self) -> &[Rational] {
        &self.omegas
    }

    pub fn min_valuation(&self) -> Option<i64> {
        self.min_valuation
    }

    /// `|omega|_p` as an exact rational (0 for N = 0).
    pub fn norm(&self) -> Rational {
        match self.min_valuation {
            None => Rational::zero(),
            Some(e) => p_power(self.prime, -e),
        }
    }

    /// `|omega_1| + ... + |omega_N|` in the additive sense (the reflection
    /// point), not the p-adic norm.
    pub fn component_sum(&self) -> Rational {
        self.omegas.iter().sum()
    }

    /// Is x in `Lambda`, the `Z_p`-span of the parameters?
    pub fn lambda_contains(&self, x: &Rational) -> bool {
        match rational::valuation(x, self.prime) {
            None => true,
            Some(vx) => self.min_valuation.is_some_and(|e| vx >= e),
        }
    }

    /// `|x|_p > |omega|_p`, the series hypothesis; over `Q_p` this is the
    /// complement of `lambda_contains`.
    pub fn series_applicable(&self, x: &Rational) -> bool {
        !self.lambda_contains(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Series when applicable, otherwise report why not.
    Auto,
    /// Series only.
    Series,
    /// Forced p^k-reduction (level k for the starred functions).
    Reduce(u32),
}

#[derive(Clone, Debug)]
pub struct ZetaRequest {
    pub config: EvalConfig,
    pub s: Rational,
    pub x: Rational,
    pub omega: Vec<Rational>,
    pub strategy: Strategy,
}

impl ZetaRequest {
    pub fn new(config: EvalConfig, s: Rational, x: Rational, omega: Vec<Rational>) -> Self {
        ZetaRequest {
            config,
            s,
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

    fn check_exponent(&self) -> Result<()> {
        if let Some(v) = rational::valuation(&self.s, self.config.prime) {
            if v < 0 {
                return Err(Error::ExponentNotIntegral(v));
            }
        }
        Ok(())
    }
}

/// A certified evaluation: the value guarantees `guaranteed_prec` digits.
#[derive(Clone, Debug)]
pub struct ZetaValue {
    pub value: PAdicNumber,
    pub strategy: String,
    pub terms: u64,
    pub guaranteed_prec: i64,
}

impl ZetaValue {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": self.value.to_json(),
            "strategy": self.strategy,
            "terms": self.terms,
            "guaranteed_prec": self.guaranteed_prec,
        })
    }
}

/// Runs `compute` at increasing working precision until the target digits
/// are certified, then truncates to exactly the target.
pub(crate) fn certify(
    cfg: &EvalConfig,
    compute: impl Fn(i64) -> Result<(PAdicNumber, u64)>,
) -> Result<(PAdicNumber, u64)> {
    let mut work = cfg.prec + cfg.guard;
    let mut got = i64::MIN;
    for _ in 0..4 {
        let (value, terms) = compute(work)?;
        got = value.precision();
        if got >= cfg.prec {
            return Ok((value.truncate(cfg.prec), terms));
        }
        work += cfg.prec - got + cfg.guard.max(4);
    }
    Err(Error::PrecisionLoss {
        wanted: cfg.prec,
        got,
    })
}

/// Embeds x so that `angle(x)` retains `work` digits.
fn embed_for_angle(x: &Rational, p: u64, work: i64) -> Result<PAdicNumber> {
    let vx = rational::valuation(x, p).ok_or(Error::ZeroInput)?;
    PAdicNumber::from_rational(x, p, work + vx)
}

/// `<x>^(1-s)` at working precision.
fn angle_power(x: &Rational, s: &Rational, p: u64, work: i64) -> Result<OneUnit> {
    let z = projection::angle(&embed_for_angle(x, p, work)?)?;
    let exponent = PAdicNumber::from_rational(&(rat_int(1) - s), p, work)?;
    projection::one_unit_pow(&z, &exponent)
}

/// Series body at fixed working precision; callers add the head factor.
/// Returns `sum_j C(1-s, j) E_{N,j}(0; omega) x^(-j)` and the term count.
fn series_tail(
    cfg: &EvalConfig,
    s: &Rational,
    x: &Rational,
    pv: &ParameterVector,
    work: i64,
) -> Result<(PAdicNumber, u64)> {
    let p = cfg.prime;
    let vx = rational::valuation(x, p).ok_or(Error::ZeroInput)?;
    // |E_{N,j}(0) x^{-j}|_p <= p^{-j d} with d = e - v_p(x) >= 1.
    let terms = match pv.min_valuation() {
        None => 0usize,
        Some(e) => {
            let d = e - vx;
            debug_assert!(d >= 1, "series precondition");
            (work + d - 1).div_euclid(d).max(0) as usize
        }
    };
    if terms > cfg.kmax_cap {
        return Err(Error::KmaxExceeded {
            needed: terms,
            cap: cfg.kmax_cap,
        });
    }
    let table = EulerTable::build(pv.omegas(), terms)?;
    let u = PAdicNumber::from_rational(&(rat_int(1) - s), p, work)?;
    let mut acc = PAdicNumber::one(p, work)?;
    let mut coeff = PAdicNumber::one(p, work)?;
    let x_inv = x.recip();
    let mut x_pow = Rational::from(num_bigint::BigInt::from(1));
    for j in 1..=terms {
        let shift = PAdicNumber::from_integer(j as i64 - 1, p, work)?;
        coeff = coeff.mul(&u.sub(&shift)?)?.mul_rational(&rat(1, j as i64));
        x_pow *= &x_inv;
        let c = table.coefficient(j)?;
        if c.is_zero() {
            continue;
        }
        let term = coeff.mul_rational(&(c * &x_pow));
        acc = acc.add(&term)?;
    }
    Ok((acc, terms as u64 + 1))
}

fn series_value(
    cfg: &EvalConfig,
    s: &Rational,
    x: &Rational,
    pv: &ParameterVector,
    work: i64,
) -> Result<(PAdicNumber, u64)> {
    let (tail, terms) = series_tail(cfg, s, x, pv, work)?;
    let head = angle_power(x, s, cfg.prime, work)?;
    Ok((head.as_padic().mul(&tail)?, terms))
}

/// Laurent-series evaluation; requires `|x|_p > |omega|_p`.
pub fn zeta_series(req: &ZetaRequest) -> Result<ZetaValue> {
    let pv = req.parameters()?;
    req.check_exponent()?;
    if !pv.series_applicable(&req.x) {
        return Err(Error::SeriesNotApplicable(format!(
            "|x|_p = {} <= {}",
            norm_str(&req.x, req.config.prime),
            rational::render(&pv.norm())
        )));
    }
    let (value, terms) = certify(&req.config, |work| {
        series_value(&req.config, &req.s, &req.x, &pv, work)
    })?;
    Ok(ZetaValue {
        value,
        strategy: "series".into(),
        terms,
        guaranteed_prec: req.config.prec,
    })
}

/// Main entry point: series when the hypothesis holds, explicit
/// `p^k`-reduction when forced, an explicit error on `Lambda`.
pub fn zeta(req: &ZetaRequest) -> Result<ZetaValue> {
    let pv = req.parameters()?;
    req.check_exponent()?;
    match req.strategy {
        Strategy::Series => zeta_series(req),
        Strategy::Auto => {
            if pv.series_applicable(&req.x) {
                zeta_series(req)
            } else {
                // Over Q_p every x off Lambda already satisfies the series
                // hypothesis, so no reduction exponent can help here.
                Err(Error::ReductionFailed(
                    "x in Lambda; use zeta-star".into(),
                ))
            }
        }
        Strategy::Reduce(k) => {
            let (value, terms, k) = reduce_sum(&req.config, &req.s, &req.x, &pv, k)?;
            Ok(ZetaValue {
                value,
                strategy: format!("reduce({k})"),
                terms,
                guaranteed_prec: req.config.prec,
            })
        }
    }
}

/// `zeta(s, x) = sum_{0 <= j_i < p^k} (-1)^(|j|) zeta(s, (x + j.omega)/p^k)`;
/// the `<p^k>^(1-s)` prefactor is 1.
fn reduce_sum(
    cfg: &EvalConfig,
    s: &Rational,
    x: &Rational,
    pv: &ParameterVector,
    k: u32,
) -> Result<(PAdicNumber, u64, u32)> {
    if k == 0 {
        let (value, terms) = certify(cfg, |work| series_value(cfg, s, x, pv, work))?;
        return Ok((value, terms, 0));
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
    let (value, _) = certify(cfg, |work| {
        let mut acc = PAdicNumber::zero(cfg.prime, work)?;
        let mut total = 0u64;
        let side = (cfg.prime as u128).pow(k) as u64;
        let mut idx = vec![0u64; n];
        loop {
            let mut y = x.clone();
            for (j, w) in idx.iter().zip(pv.omegas()) {
                y += rat_int(*j as i64) * w;
            }
            let y = y / &scale;
            if !pv.series_applicable(&y) {
                return Err(Error::ReductionFailed(format!(
                    "term j = ({:?}) lands on Lambda at level {k}",
                    idx
                )));
            }
            let (term, _) = series_value(cfg, s, &y, pv, work)?;
            let sign_odd = idx.iter().sum::<u64>() % 2 == 1;
            acc = if sign_odd {
                acc.sub(&term)?
            } else {
                acc.add(&term)?
            };
            total += 1;
            let mut i = 0;
            loop {
                if i == n {
                    return Ok((acc, total));
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
    Ok((value, count as u64, k))
}

/// Closed form at nonpositive integer arguments:
/// `zeta(1-k, x; omega) = (<x>/x)^k E_{N,k}(x; omega)`, the interpolation
/// oracle for the series path.
pub fn zeta_neg_int(
    k: u32,
    x: &Rational,
    omega: &[Rational],
    config: &EvalConfig,
) -> Result<ZetaValue> {
    let pv = ParameterVector::new(config.prime, omega.to_vec())?;
    if !pv.series_applicable(x) {
        return Err(Error::SeriesNotApplicable(format!(
            "|x|_p = {} <= | omega |_p",
            norm_str(x, config.prime)
        )));
    }
    let table = EulerTable::build(omega, k as usize)?;
    let e_val = table.euler_poly(k as usize, x)?;
    let (value, terms) = certify(config, |work| {
        if e_val.is_zero() {
            return Ok((PAdicNumber::zero(config.prime, work)?, 1));
        }
        let z = projection::angle(&embed_for_angle(x, config.prime, work)?)?;
        let ratio = z.as_padic().mul_rational(&x.recip());
        let v = ratio.pow_int(k as i64)?.mul_rational(&e_val);
        Ok((v, 1))
    })?;
    Ok(ZetaValue {
        value,
        strategy: "interpolation".into(),
        terms,
        guaranteed_prec: config.prec,
    })
}

/// The starred function on `Lambda`: level-k signed sum over the residues
/// that stay at full norm,
/// `zeta*(s,x) = sum_{j, |x + j.omega|_p = |omega|_p} (-1)^(|j|)
///               zeta(s, (x + j.omega)/p^k)`.
/// Zero by convention when `|omega|_p < 1`, and when no residue survives.
pub fn zeta_star(req: &ZetaRequest) -> Result<ZetaValue> {
    let pv = req.parameters()?;
    req.check_exponent()?;
    if !pv.lambda_contains(&req.x) {
        return Err(Error::NotInLambda);
    }
    let level = match req.strategy {
        Strategy::Reduce(k) if k >= 1 => k,
        _ => 1,
    };
    star_sum(&req.config, &pv, &req.x, level, |cfg, y, work| {
        series_value(cfg, &req.s, y, &pv, work)
    })
    .map(|(value, terms)| ZetaValue {
        value,
        strategy: format!("star({level})"),
        terms,
        guaranteed_prec: req.config.prec,
    })
}

/// Shared level-k starred enumeration: sums `(-1)^(|j|) f((x + j.omega)/p^k)`
/// over `j` in `[0, p^k)^N` with `v_p(x + j.omega) = e`. Returns a certified
/// zero when the convention (`|omega|_p < 1`) applies or no residue survives.
pub(crate) fn star_sum(
    cfg: &EvalConfig,
    pv: &ParameterVector,
    x: &Rational,
    level: u32,
    eval: impl Fn(&EvalConfig, &Rational, i64) -> Result<(PAdicNumber, u64)>,
) -> Result<(PAdicNumber, u64)> {
    let e = match pv.min_valuation() {
        // N = 0: the norm is 0 < 1, extension by zero.
        None => return Ok((PAdicNumber::zero(cfg.prime, cfg.prec)?, 0)),
        Some(e) => e,
    };
    if e >= 1 {
        // |omega|_p < 1: extension by zero.
        return Ok((PAdicNumber::zero(cfg.prime, cfg.prec)?, 0));
    }
    let n = pv.len();
    let count = (cfg.prime as u128).pow(level * n as u32);
    if count > cfg.budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: count,
            budget: cfg.budget as u128,
        });
    }
    let scale = p_power(cfg.prime, level as i64);
    let side = (cfg.prime as u128).pow(level) as u64;
    certify(cfg, |work| {
        let mut acc = PAdicNumber::zero(cfg.prime, work)?;
        let mut kept = 0u64;
        let mut idx = vec![0u64; n];
        loop {
            let mut shifted = x.clone();
            for (j, w) in idx.iter().zip(pv.omegas()) {
                shifted += rat_int(*j as i64) * w;
            }
            if rational::valuation(&shifted, cfg.prime) == Some(e) {
                let y = &shifted / &scale;
                debug_assert!(pv.series_applicable(&y));
                let (term, _) = eval(cfg, &y, work)?;
                let sign_odd = idx.iter().sum::<u64>() % 2 == 1;
                acc = if sign_odd {
                    acc.sub(&term)?
                } else {
                    acc.add(&term)?
                };
                kept += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return Ok((acc, kept));
                }
                idx[i] += 1;
                if idx[i] < side {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    })
}

/// Termwise m-th x-derivative of the Laurent series:
/// `<x>^(1-s) x^(-m) sum_j C(1-s,j) E_{N,j}(0) prod_{i<m} (1-s-j-i) x^(-j)`.
/// Used to exercise the derivative formula against its closed form.
pub fn zeta_series_termwise_dx(m: u32, req: &ZetaRequest) -> Result<PAdicNumber> {
    let pv = req.parameters()?;
    req.check_exponent()?;
    if !pv.series_applicable(&req.x) {
        return Err(Error::SeriesNotApplicable("termwise derivative".into()));
    }
    let cfg = &req.config;
    let p = cfg.prime;
    let (value, _) = certify(cfg, |work| {
        let vx = rational::valuation(&req.x, p).expect("nonzero");
        let terms = match pv.min_valuation() {
            None => 0usize,
            Some(e) => {
                let d = e - vx;
                ((work + d - 1).div_euclid(d) + m as i64).max(0) as usize
            }
        };
        if terms > cfg.kmax_cap {
            return Err(Error::KmaxExceeded {
                needed: terms,
                cap: cfg.kmax_cap,
            });
        }
        let table = EulerTable::build(pv.omegas(), terms)?;
        let u = PAdicNumber::from_rational(&(rat_int(1) - &req.s), p, work)?;
        let x_inv = req.x.recip();
        let mut acc = PAdicNumber::zero(p, work)?;
        let mut coeff = PAdicNumber::one(p, work)?;
        let mut x_pow = rat_int(1);
        for j in 0..=terms {
            if j > 0 {
                let shift = PAdicNumber::from_integer(j as i64 - 1, p, work)?;
                coeff = coeff.mul(&u.sub(&shift)?)?.mul_rational(&rat(1, j as i64));
                x_pow *= &x_inv;
            }
            let c = table.coefficient(j)?;
            if c.is_zero() {
                continue;
            }
            // prod_{i<m} (1 - s - j - i)
            let mut fall = PAdicNumber::one(p, work)?;
            for i in 0..m {
                let shift = PAdicNumber::from_integer(j as i64 + i as i64, p, work)?;
                fall = fall.mul(&u.sub(&shift)?)?;
            }
            let term = coeff.mul(&fall)?.mul_rational(&(c * &x_pow));
            acc = acc.add(&term)?;
        }
        let head = angle_power(&req.x, &req.s, p, work)?;
        let scaled = head
            .as_padic()
            .mul(&acc)?
            .mul_rational(&req.x.recip().pow(m as i32));
        Ok((scaled, terms as u64 + 1))
    })?;
    Ok(value)
}

fn norm_str(x: &Rational, p: u64) -> String {
    match rational::valuation(x, p) {
        None => "0".into(),
        Some(v) => rational::render(&p_power(p, -v)),
    }
}
