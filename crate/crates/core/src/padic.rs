//! Capped-precision arithmetic for `Q_p`, p an odd prime.
//!
//! Every number carries an absolute precision `M`: the value is known modulo
//! `p^M` and nothing finer. A nonzero element is stored as `p^v * u` with
//! `0 < u < p^(M-v)` and `p` not dividing `u`; "zero at precision M" stands
//! for an unknown element of `p^M Z_p`. Operations propagate precision with
//! the interval-tight rules
//!
//! ```text
//! add:  min(M_a, M_b)
//! mul:  min(M_a + v_b, M_b + v_a)
//! inv:  the unit digits survive, so M = M_a - 2 v_a
//! ```
//!
//! and rendering, equality and JSON honor only digits below `p^M`. Values
//! are immutable; all operations are pure.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    /// O(p^prec): zero modulo p^prec.
    Zero { prec: i64 },
    /// p^val * unit + O(p^prec), with val < prec, 0 < unit < p^(prec-val),
    /// gcd(unit, p) = 1.
    Unit { val: i64, unit: BigUint, prec: i64 },
}

/// An element of `Q_p` known modulo `p^M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicNumber {
    prime: u64,
    repr: Repr,
}

/// `|a|_p`, or only an upper bound when `a` is zero at its precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormBound {
    Exact(Rational),
    AtMost(Rational),
}

fn p_pow(p: u64, k: i64) -> BigUint {
    debug_assert!(k >= 0, "negative modulus exponent");
    BigUint::from(p).pow(k as u32)
}

impl PAdicNumber {
    pub fn zero(p: u64, prec: i64) -> Result<Self> {
        rational::check_odd_prime(p)?;
        Ok(PAdicNumber {
            prime: p,
            repr: Repr::Zero { prec },
        })
    }

    pub fn one(p: u64, prec: i64) -> Result<Self> {
        Self::from_integer(1, p, prec)
    }

    pub fn from_integer(n: i64, p: u64, prec: i64) -> Result<Self> {
        Self::from_rational(&rational::rat_int(n), p, prec)
    }

    /// Embeds an exact rational into `Q_p` at absolute precision `prec`.
    /// p may divide numerator or denominator.
    pub fn from_rational(q: &Rational, p: u64, prec: i64) -> Result<Self> {
        rational::check_odd_prime(p)?;
        if q.is_zero() {
            return Ok(PAdicNumber {
                prime: p,
                repr: Repr::Zero { prec },
            });
        }
        let (vn, n0) = rational::strip_p(q.numer(), p);
        let (vd, d0) = rational::strip_p(q.denom(), p);
        let val = vn - vd;
        if val >= prec {
            return Ok(PAdicNumber {
                prime: p,
                repr: Repr::Zero { prec },
            });
        }
        let modulus = p_pow(p, prec - val);
        let n_red = reduce_mod(&n0, &modulus);
        let d_red = reduce_mod(&d0, &modulus);
        let unit = n_red * rational::mod_inverse(&d_red, &modulus) % &modulus;
        debug_assert!(!unit.is_zero());
        Ok(PAdicNumber {
            prime: p,
            repr: Repr::Unit { val, unit, prec },
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Absolute precision M: the value is known modulo p^M.
    pub fn precision(&self) -> i64 {
        match &self.repr {
            Repr::Zero { prec } | Repr::Unit { prec, .. } => *prec,
        }
    }

    /// Exact valuation, or `None` for zero-at-precision (only the lower
    /// bound `precision()` is known there).
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Unit { val, .. } => Some(*val),
        }
    }

    /// Largest e with `a = O(p^e)` certified: the valuation, or the
    /// precision for zero-at-precision elements.
    pub fn valuation_lower_bound(&self) -> i64 {
        match &self.repr {
            Repr::Zero { prec } => *prec,
            Repr::Unit { val, .. } => *val,
        }
    }

    pub fn is_zero_at_precision(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    /// `|a|_p = p^(-v)`; an upper bound `p^(-M)` when only that is known.
    pub fn norm(&self) -> NormBound {
        match &self.repr {
            Repr::Zero { prec } => NormBound::AtMost(rational::p_power(self.prime, -prec)),
            Repr::Unit { val, .. } => NormBound::Exact(rational::p_power(self.prime, -val)),
        }
    }

    fn check_same_prime(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Unit { val, unit, prec } => {
                let modulus = p_pow(self.prime, prec - val);
                PAdicNumber {
                    prime: self.prime,
                    repr: Repr::Unit {
                        val: *val,
                        unit: &modulus - unit,
                        prec: *prec,
                    },
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_prime(other)?;
        let p = self.prime;
        let prec = self.precision().min(other.precision());
        match (&self.repr, &other.repr) {
            (Repr::Zero { .. }, Repr::Zero { .. }) => PAdicNumber::zero(p, prec),
            (Repr::Zero { .. }, Repr::Unit { val, unit, .. })
            | (Repr::Unit { val, unit, .. }, Repr::Zero { .. }) => {
                Ok(normalize(p, *val, BigInt::from(unit.clone()), prec))
            }
            (
                Repr::Unit {
                    val: va, unit: ua, ..
                },
                Repr::Unit {
                    val: vb, unit: ub, ..
                },
            ) => {
                let v = (*va).min(*vb);
                let sum = BigInt::from(ua.clone()) * BigInt::from(p_pow(p, va - v))
                    + BigInt::from(ub.clone()) * BigInt::from(p_pow(p, vb - v));
                Ok(normalize(p, v, sum, prec))
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_prime(other)?;
        let p = self.prime;
        // Effective valuation of a zero-at-precision operand is its precision.
        let ea = self.valuation_lower_bound();
        let eb = other.valuation_lower_bound();
        let prec = (self.precision() + eb).min(other.precision() + ea);
        match (&self.repr, &other.repr) {
            (
                Repr::Unit {
                    val: va, unit: ua, ..
                },
                Repr::Unit {
                    val: vb, unit: ub, ..
                },
            ) => {
                let val = va + vb;
                let modulus = p_pow(p, prec - val);
                Ok(PAdicNumber {
                    prime: p,
                    repr: Repr::Unit {
                        val,
                        unit: ua * ub % modulus,
                        prec,
                    },
                })
            }
            _ => PAdicNumber::zero(p, prec),
        }
    }

    /// Multiplication by an exact nonzero rational keeps all unit digits:
    /// the result precision is `M + v_p(q)`.
    pub fn mul_rational(&self, q: &Rational) -> Self {
        let p = self.prime;
        if q.is_zero() {
            // Conservative: claims only what the operand's precision allows.
            return PAdicNumber {
                prime: p,
                repr: Repr::Zero {
                    prec: self.precision(),
                },
            };
        }
        let (vn, n0) = rational::strip_p(q.numer(), p);
        let (vd, d0) = rational::strip_p(q.denom(), p);
        let vq = vn - vd;
        match &self.repr {
            Repr::Zero { prec } => PAdicNumber {
                prime: p,
                repr: Repr::Zero { prec: prec + vq },
            },
            Repr::Unit { val, unit, prec } => {
                let modulus = p_pow(p, prec - val);
                let n_red = reduce_mod(&n0, &modulus);
                let d_inv = rational::mod_inverse(&reduce_mod(&d0, &modulus), &modulus);
                PAdicNumber {
                    prime: p,
                    repr: Repr::Unit {
                        val: val + vq,
                        unit: unit * n_red % &modulus * d_inv % &modulus,
                        prec: prec + vq,
                    },
                }
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::Zero { prec } => Err(Error::DivisionByZeroAtPrecision {
                p: self.prime,
                prec: *prec,
            }),
            Repr::Unit { val, unit, prec } => {
                let r = prec - val;
                let modulus = p_pow(self.prime, r);
                Ok(PAdicNumber {
                    prime: self.prime,
                    repr: Repr::Unit {
                        val: -val,
                        unit: rational::mod_inverse(unit, &modulus),
                        prec: prec - 2 * val,
                    },
                })
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// `a^k` by repeated squaring; `k = 0` yields 1 carried at the
    /// operand's relative precision.
    pub fn pow_int(&self, k: i64) -> Result<Self> {
        if k == 0 {
            let rel = match &self.repr {
                Repr::Zero { prec } => *prec,
                Repr::Unit { val, prec, .. } => prec - val,
            };
            return PAdicNumber::one(self.prime, rel);
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut exp = k.unsigned_abs();
        let mut acc: Option<PAdicNumber> = None;
        let mut sq = base;
        loop {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq)?,
                });
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            sq = sq.mul(&sq)?;
        }
        Ok(acc.expect("k != 0"))
    }

    /// Rising factorial `a (a+1) ... (a+m-1)`; 1 for `m = 0`.
    pub fn pochhammer(&self, m: u32) -> Result<Self> {
        let mut acc = PAdicNumber::one(self.prime, self.precision())?;
        for i in 0..m {
            let shifted = self.add(&PAdicNumber::from_integer(
                i as i64,
                self.prime,
                self.precision(),
            )?)?;
            acc = acc.mul(&shifted)?;
        }
        Ok(acc)
    }

    /// Drops knowledge above `p^prec`; never raises precision.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.precision() {
            return self.clone();
        }
        match &self.repr {
            Repr::Zero { .. } => PAdicNumber {
                prime: self.prime,
                repr: Repr::Zero { prec },
            },
            Repr::Unit { val, unit, .. } => {
                if *val >= prec {
                    PAdicNumber {
                        prime: self.prime,
                        repr: Repr::Zero { prec },
                    }
                } else {
                    let modulus = p_pow(self.prime, prec - val);
                    PAdicNumber {
                        prime: self.prime,
                        repr: Repr::Unit {
                            val: *val,
                            unit: unit % modulus,
                            prec,
                        },
                    }
                }
            }
        }
    }

    /// `|a - b|_p <= p^(-m)`? Errors when either side guarantees fewer
    /// than `m` digits.
    pub fn eq_to_precision(&self, other: &Self, m: i64) -> Result<bool> {
        self.check_same_prime(other)?;
        let available = self.precision().min(other.precision());
        if m > available {
            return Err(Error::RequestedPrecisionUnavailable {
                requested: m,
                available,
            });
        }
        Ok(self.sub(other)?.valuation_lower_bound() >= m)
    }

    /// Certified digits of agreement, capped by the joint precision.
    pub fn agreement_digits(&self, other: &Self) -> Result<i64> {
        self.check_same_prime(other)?;
        Ok(self.sub(other)?.valuation_lower_bound())
    }

    /// Unit digits `d_0 .. d_{r-1}` base p, `r = M - v`; empty for zero.
    pub fn digits(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Zero { .. } => Vec::new(),
            Repr::Unit { val, unit, prec } => {
                let r = (prec - val) as usize;
                let p = BigUint::from(self.prime);
                let mut ds = Vec::with_capacity(r);
                let mut u = unit.clone();
                for _ in 0..r {
                    let (q, d) = num_integer::Integer::div_rem(&u, &p);
                    ds.push(d.to_u64().expect("digit < p"));
                    u = q;
                }
                ds
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.repr {
            Repr::Zero { prec } => serde_json::json!({
                "p": self.prime, "val": null, "digits": [], "prec": prec,
            }),
            Repr::Unit { val, prec, .. } => serde_json::json!({
                "p": self.prime, "val": val, "digits": self.digits(), "prec": prec,
            }),
        }
    }
}

/// Reduces a (possibly negative) integer prime to p into `(0, modulus)`.
fn reduce_mod(n: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    let r = num_integer::Integer::mod_floor(n, &m);
    r.to_biguint().expect("mod_floor is nonnegative")
}

/// Builds p^v * s + O(p^prec) from an exact integer s (sign allowed),
/// recomputing the valuation; collapses to zero-at-precision as needed.
fn normalize(p: u64, v: i64, s: BigInt, prec: i64) -> PAdicNumber {
    if v >= prec {
        return PAdicNumber {
            prime: p,
            repr: Repr::Zero { prec },
        };
    }
    let modulus = p_pow(p, prec - v);
    let t = reduce_mod(&s, &modulus);
    if t.is_zero() {
        return PAdicNumber {
            prime: p,
            repr: Repr::Zero { prec },
        };
    }
    let shift = rational::int_valuation(&BigInt::from(t.clone()), p);
    let val = v + shift;
    if val >= prec {
        return PAdicNumber {
            prime: p,
            repr: Repr::Zero { prec },
        };
    }
    let unit = (t / p_pow(p, shift)) % p_pow(p, prec - val);
    debug_assert!(!unit.is_zero());
    PAdicNumber {
        prime: p,
        repr: Repr::Unit { val, unit, prec },
    }
}

impl fmt::Display for PAdicNumber {
    /// `p^v * (d_0 + d_1*p + ... ) + O(p^M)`, zero digits omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero { prec } => write!(f, "O({}^{})", self.prime, prec),
            Repr::Unit { val, prec, .. } => {
                let p = self.prime;
                let mut parts = Vec::new();
                for (i, d) in self.digits().into_iter().enumerate() {
                    if d == 0 {
                        continue;
                    }
                    parts.push(match i {
                        0 => format!("{d}"),
                        1 => {
                            if d == 1 {
                                format!("{p}")
                            } else {
                                format!("{d}*{p}")
                            }
                        }
                        _ => {
                            if d == 1 {
                                format!("{p}^{i}")
                            } else {
                                format!("{d}*{p}^{i}")
                            }
                        }
                    });
                }
                write!(f, "{}^{} * ({}) + O({}^{})", p, val, parts.join(" + "), p, prec)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn q5(n: i64, d: i64, prec: i64) -> PAdicNumber {
        PAdicNumber::from_rational(&rat(n, d), 5, prec).unwrap()
    }

    #[test]
    fn from_rational_pure_power_of_p() {
        let x = q5(1, 5, 10);
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.digits()[0], 1);
        assert!(x.digits()[1..].iter().all(|&d| d == 0));
    }

    #[test]
    fn from_rational_zero() {
        let x = q5(0, 1, 10);
        assert!(x.is_zero_at_precision());
        assert_eq!(x.precision(), 10);
        assert_eq!(x.valuation(), None);
    }

    #[test]
    fn from_rational_half_mod_25() {
        // 13 * 2 = 26 = 1 mod 25
        let x = q5(1, 2, 2);
        assert_eq!(x.valuation(), Some(0));
        assert_eq!(x.digits(), vec![3, 2]); // 13 = 3 + 2*5
    }

    #[test]
    fn invalid_prime_rejected() {
        assert!(matches!(
            PAdicNumber::from_rational(&rat_int(1), 4, 5),
            Err(Error::InvalidPrime(4))
        ));
        assert!(matches!(
            PAdicNumber::from_rational(&rat_int(1), 2, 5),
            Err(Error::InvalidPrime(2))
        ));
    }

    #[test]
    fn add_identity_and_precision() {
        let x = q5(7, 3, 12);
        let z = PAdicNumber::zero(5, 8).unwrap();
        let s = x.add(&z).unwrap();
        assert_eq!(s.precision(), 8);
        assert!(s.eq_to_precision(&x.truncate(8), 8).unwrap());
    }

    #[test]
    fn add_halves_make_one() {
        let h = q5(1, 2, 10);
        let one = PAdicNumber::one(5, 10).unwrap();
        assert!(h.add(&h).unwrap().eq_to_precision(&one, 10).unwrap());
    }

    #[test]
    fn add_forced_carry() {
        let two = q5(2, 1, 10);
        let three = q5(3, 1, 10);
        let s = two.add(&three).unwrap();
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.digits()[0], 1);
    }

    #[test]
    fn cancellation_yields_zero_at_precision() {
        let x = q5(7, 1, 9);
        let d = x.sub(&x).unwrap();
        assert!(d.is_zero_at_precision());
        assert_eq!(d.precision(), 9);
    }

    #[test]
    fn mul_identity() {
        let x = q5(-9, 14, 11);
        let one = PAdicNumber::one(5, 11).unwrap();
        let y = x.mul(&one).unwrap();
        assert!(y.eq_to_precision(&x, 11).unwrap());
    }

    #[test]
    fn inv_of_seven_mod_25() {
        let x = q5(7, 1, 2);
        let y = x.inv().unwrap();
        assert_eq!(y.valuation(), Some(0));
        assert_eq!(y.digits(), vec![3, 3]); // 18 = 3 + 3*5
    }

    #[test]
    fn inv_precision_rule() {
        // v = -1, M = 9: unit known mod 5^10, inverse has val 1, prec 11.
        let x = q5(1, 5, 9);
        let y = x.inv().unwrap();
        assert_eq!(y.valuation(), Some(1));
        assert_eq!(y.precision(), 11);
    }

    #[test]
    fn division_by_zero_at_precision() {
        let z = PAdicNumber::zero(5, 6).unwrap();
        assert!(matches!(
            z.inv(),
            Err(Error::DivisionByZeroAtPrecision { p: 5, prec: 6 })
        ));
    }

    #[test]
    fn pow_zero_is_one() {
        let x = q5(3, 7, 8);
        let y = x.pow_int(0).unwrap();
        assert!(y
            .eq_to_precision(&PAdicNumber::one(5, 8).unwrap(), 8)
            .unwrap());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let x = q5(12, 7, 15);
        let cube = x.mul(&x).unwrap().mul(&x).unwrap();
        let y = x.pow_int(3).unwrap();
        let m = y.precision().min(cube.precision());
        assert!(y.eq_to_precision(&cube, m).unwrap());
    }

    #[test]
    fn pow_negative_exponent() {
        let x = q5(3, 1, 12);
        let y = x.pow_int(-2).unwrap();
        let expect = PAdicNumber::from_rational(&rat(1, 9), 5, 12).unwrap();
        let m = y.precision().min(expect.precision());
        assert!(y.eq_to_precision(&expect, m).unwrap());
    }

    #[test]
    fn norm_values() {
        let p = q5(5, 1, 10);
        assert_eq!(p.norm(), NormBound::Exact(rat(1, 5)));
        let one = PAdicNumber::one(5, 10).unwrap();
        assert_eq!(one.norm(), NormBound::Exact(rat_int(1)));
        let fifth = q5(1, 5, 10);
        assert_eq!(fifth.norm(), NormBound::Exact(rat_int(5)));
        let z = PAdicNumber::zero(5, 3).unwrap();
        assert_eq!(z.norm(), NormBound::AtMost(rat(1, 125)));
    }

    #[test]
    fn eq_to_precision_cutoff() {
        let one = PAdicNumber::one(5, 12).unwrap();
        let shifted = one
            .add(&PAdicNumber::from_rational(&rat_int(5i64.pow(8)), 5, 12).unwrap())
            .unwrap();
        assert!(one.eq_to_precision(&shifted, 8).unwrap());
        assert!(!one.eq_to_precision(&shifted, 9).unwrap());
        let two = q5(2, 1, 12);
        assert!(!one.eq_to_precision(&two, 1).unwrap());
        assert!(one.eq_to_precision(&one, 12).unwrap());
    }

    #[test]
    fn eq_to_precision_rejects_unavailable_digits() {
        let a = q5(1, 1, 5);
        let b = q5(1, 1, 20);
        assert!(matches!(
            a.eq_to_precision(&b, 10),
            Err(Error::RequestedPrecisionUnavailable {
                requested: 10,
                available: 5
            })
        ));
    }

    #[test]
    fn prime_mismatch_detected() {
        let a = q5(1, 1, 5);
        let b = PAdicNumber::one(7, 5).unwrap();
        assert!(matches!(a.add(&b), Err(Error::PrimeMismatch(5, 7))));
    }

    #[test]
    fn mul_rational_keeps_relative_precision() {
        let x = q5(3, 1, 10);
        let y = x.mul_rational(&rat(1, 5));
        assert_eq!(y.valuation(), Some(-1));
        assert_eq!(y.precision(), 9);
        let z = x.mul_rational(&rat(25, 2));
        assert_eq!(z.valuation(), Some(2));
        assert_eq!(z.precision(), 12);
    }

    #[test]
    fn pochhammer_integer_values() {
        // 3 * 4 * 5 * 6 = 360
        let a = q5(3, 1, 12);
        let v = a.pochhammer(4).unwrap();
        let expect = q5(360, 1, 12);
        let m = v.precision().min(expect.precision());
        assert!(v.eq_to_precision(&expect, m).unwrap());
        let empty = a.pochhammer(0).unwrap();
        assert!(empty
            .eq_to_precision(&PAdicNumber::one(5, 12).unwrap(), 12)
            .unwrap());
    }

    #[test]
    fn rendering_and_json() {
        let x = q5(1, 5, 3); // 5^-1 * 1
        assert_eq!(x.to_string(), "5^-1 * (1) + O(5^3)");
        let y = q5(26, 1, 3); // 1 + 0*5 + 1*25
        assert_eq!(y.to_string(), "5^0 * (1 + 5^2) + O(5^3)");
        let z = PAdicNumber::zero(5, 4).unwrap();
        assert_eq!(z.to_string(), "O(5^4)");
        let j = x.to_json();
        assert_eq!(j["p"], 5);
        assert_eq!(j["val"], -1);
        assert_eq!(j["prec"], 3);
        assert_eq!(j["digits"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<PAdicNumber>();
        assert_send_sync::<NormBound>();
    }

    #[test]
    fn truncate_collapses_below_valuation() {
        let x = q5(25, 1, 10);
        let t = x.truncate(2);
        assert!(t.is_zero_at_precision());
        assert_eq!(t.precision(), 2);
        // truncate never raises precision
        let u = x.truncate(50);
        assert_eq!(u.precision(), 10);
    }
}
