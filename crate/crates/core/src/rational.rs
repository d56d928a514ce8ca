//! Exact rational helpers: parsing, p-adic valuation, small constructors.
//!
//! `Rational` is the canonical reduced big rational; it is the only input
//! representation the crate accepts, so every evaluation has exact
//! provenance.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as a reduced rational. Panics on `d = 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parses `a`, `-a`, `a/b` or `-a/b` (b > 0 after normalization).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_s.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den_s.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// v_p of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut m = n.abs();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

/// v_p of a rational; `None` encodes v_p(0) = +infinity.
pub fn valuation(q: &Rational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(int_valuation(q.numer(), p) - int_valuation(q.denom(), p))
}

/// Strips all factors of p from a nonzero integer: returns (v, n / p^v).
pub fn strip_p(n: &BigInt, p: u64) -> (i64, BigInt) {
    let v = int_valuation(n, p);
    let pv = BigInt::from(p).pow(v as u32);
    (v, n / pv)
}

/// p^k as a rational, k of either sign.
pub fn p_power(p: u64, k: i64) -> Rational {
    let pk = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rational::from(pk)
    } else {
        Rational::new(BigInt::one(), pk)
    }
}

/// Binomial coefficient C(n, k) over the integers.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Renders `a/b`, omitting the denominator when it is 1.
pub fn render(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Odd-prime check by trial division; inputs are desk-scale.
pub fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidPrime(p));
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return Err(Error::InvalidPrime(p));
        }
        d += 2;
    }
    Ok(())
}

/// Modular inverse of `a` modulo `m` (gcd(a, m) = 1).
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> BigUint {
    let a = BigInt::from(a.clone());
    let m_int = BigInt::from(m.clone());
    let ext = num_integer::Integer::extended_gcd(&a, &m_int);
    debug_assert!(ext.gcd.is_one(), "inverse of non-unit");
    let x = ext.x.mod_floor_ref(&m_int);
    x.to_biguint().expect("mod_floor is nonnegative")
}

trait ModFloorRef {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt;
}

impl ModFloorRef for BigInt {
    fn mod_floor_ref(&self, m: &BigInt) -> BigInt {
        num_integer::Integer::mod_floor(self, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_signed_fractions() {
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational(" 1/5 ").unwrap(), rat(1, 5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn valuation_of_rationals() {
        assert_eq!(valuation(&rat(1, 5), 5), Some(-1));
        assert_eq!(valuation(&rat(50, 3), 5), Some(2));
        assert_eq!(valuation(&rat(0, 1), 5), None);
        assert_eq!(valuation(&rat(-25, 10), 5), Some(1));
    }

    #[test]
    fn mod_inverse_small() {
        let inv = mod_inverse(&BigUint::from(7u32), &BigUint::from(25u32));
        assert_eq!(inv, BigUint::from(18u32));
    }

    #[test]
    fn odd_prime_check() {
        assert!(check_odd_prime(5).is_ok());
        assert!(check_odd_prime(2).is_err());
        assert!(check_odd_prime(9).is_err());
        assert!(check_odd_prime(1).is_err());
    }
}
