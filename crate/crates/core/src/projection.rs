//! The angle projection `<x>`, Teichmuller representatives, the Iwasawa
//! logarithm and `Z_p`-exponent powers of one-units.
//!
//! Over `Q_p` the Teichmuller representative of a unit is the unique
//! (p-1)-st root of unity congruent to it mod p, and `<x> = p^(-v) x / x^`
//! always lands in `1 + p Z_p`, which is what makes `<x>^s` meaningful for
//! `s` in `Z_p` via the binomial series.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::padic::PAdicNumber;
use crate::rational::{rat, Rational};

/// A p-adic number z with v(z) = 0 and z = 1 (mod p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneUnit(PAdicNumber);

impl OneUnit {
    pub fn new(z: PAdicNumber) -> Result<Self> {
        if z.valuation() != Some(0) || z.digits().first() != Some(&1) {
            return Err(Error::DomainError(format!(
                "not a one-unit: {z}"
            )));
        }
        Ok(OneUnit(z))
    }

    pub fn as_padic(&self) -> &PAdicNumber {
        &self.0
    }

    pub fn into_padic(self) -> PAdicNumber {
        self.0
    }
}

/// Teichmuller representative of a unit `a`: the limit of `a^(p^n)`,
/// found by iterating y <- y^p until fixed mod p^M (at most M steps).
pub fn teichmuller(a: &PAdicNumber) -> Result<PAdicNumber> {
    match a.valuation() {
        None => Err(Error::ZeroInput),
        Some(v) if v != 0 => Err(Error::NotAUnit(v)),
        Some(_) => {
            let p = a.prime();
            let m = a.precision();
            let modulus = BigUint::from(p).pow(m as u32);
            let mut y = digits_to_biguint(&a.digits(), p);
            let p_big = BigUint::from(p);
            for _ in 0..=m {
                let next = y.modpow(&p_big, &modulus);
                if next == y {
                    break;
                }
                y = next;
            }
            debug_assert_eq!(y.modpow(&p_big, &modulus), y, "p-power iteration fixed");
            let q = Rational::from(num_bigint::BigInt::from(y));
            PAdicNumber::from_rational(&q, p, m)
        }
    }
}

/// `<a> = p^(-v) a / a^` for nonzero a; a one-unit whose precision is the
/// relative precision M - v of the input.
pub fn angle(a: &PAdicNumber) -> Result<OneUnit> {
    let v = a.valuation().ok_or(Error::ZeroInput)?;
    let unit_part = a.mul_rational(&crate::rational::p_power(a.prime(), -v));
    let hat = teichmuller(&unit_part)?;
    OneUnit::new(unit_part.div(&hat)?)
}

/// Iwasawa logarithm `log_p a = log_p <a>`, so `log_p p = 0`; computed by
/// the series `-sum (1-z)^n / n` on the one-unit `z = <a>`.
pub fn iwasawa_log(a: &PAdicNumber) -> Result<PAdicNumber> {
    let z = angle(a)?;
    let p = a.prime();
    let target = z.as_padic().precision();
    let one = PAdicNumber::one(p, target)?;
    let w = z.as_padic().sub(&one)?;
    if w.is_zero_at_precision() {
        return PAdicNumber::zero(p, target);
    }
    let vw = w.valuation().expect("nonzero");
    debug_assert!(vw >= 1);
    let mut acc = PAdicNumber::zero(p, target)?;
    let mut w_pow = w.clone();
    let mut n: i64 = 1;
    // v(w^n / n) >= n*vw - floor(log_p n); stop once that clears the target.
    while n * vw - ilog_p(n as u64, p) < target {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let term = w_pow.mul_rational(&rat(sign, n));
        acc = acc.add(&term)?;
        w_pow = w_pow.mul(&w)?;
        n += 1;
    }
    Ok(acc)
}

/// `z^s` for a one-unit z and `s` in `Z_p`, via the binomial series
/// `sum_j C(s, j) (z-1)^j`; every `|C(s,j)|_p <= 1`, so the tail past
/// `j * v(z-1) >= M` is negligible.
pub fn one_unit_pow(z: &OneUnit, s: &PAdicNumber) -> Result<OneUnit> {
    if let Some(v) = s.valuation() {
        if v < 0 {
            return Err(Error::ExponentNotIntegral(v));
        }
    }
    let p = z.as_padic().prime();
    let target = z.as_padic().precision();
    let one = PAdicNumber::one(p, target)?;
    let w = z.as_padic().sub(&one)?;
    if w.is_zero_at_precision() {
        return OneUnit::new(PAdicNumber::one(p, target)?);
    }
    let vw = w.valuation().expect("nonzero");
    let mut acc = PAdicNumber::one(p, target.max(s.precision()))?;
    let mut coeff = PAdicNumber::one(p, s.precision())?;
    let mut w_pow = w.clone();
    let mut j: i64 = 1;
    while j * vw < target {
        let shift = PAdicNumber::from_integer(j - 1, p, s.precision())?;
        coeff = coeff.mul(&s.sub(&shift)?)?.mul_rational(&rat(1, j));
        let term = coeff.mul(&w_pow)?;
        acc = acc.add(&term)?;
        w_pow = w_pow.mul(&w)?;
        j += 1;
    }
    OneUnit::new(acc)
}

/// Binomial coefficient `C(s, j) = s(s-1)...(s-j+1)/j!` for `s` in `Z_p`.
pub fn binom_falling(s: &PAdicNumber, j: u32) -> Result<PAdicNumber> {
    if let Some(v) = s.valuation() {
        if v < 0 {
            return Err(Error::ExponentNotIntegral(v));
        }
    }
    let p = s.prime();
    let mut coeff = PAdicNumber::one(p, s.precision())?;
    for i in 0..j as i64 {
        let shift = PAdicNumber::from_integer(i, p, s.precision())?;
        coeff = coeff.mul(&s.sub(&shift)?)?.mul_rational(&rat(1, i + 1));
    }
    Ok(coeff)
}

fn digits_to_biguint(digits: &[u64], p: u64) -> BigUint {
    let mut acc = BigUint::from(0u32);
    for &d in digits.iter().rev() {
        acc = acc * p + d;
    }
    acc
}

/// floor(log_p n) for n >= 1.
fn ilog_p(n: u64, p: u64) -> i64 {
    let mut k = 0i64;
    let mut m = n;
    while m >= p {
        m /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn q5(n: i64, d: i64, prec: i64) -> PAdicNumber {
        PAdicNumber::from_rational(&rat(n, d), 5, prec).unwrap()
    }

    #[test]
    fn teichmuller_fixes_one() {
        let one = PAdicNumber::one(5, 10).unwrap();
        let t = teichmuller(&one).unwrap();
        assert!(t.eq_to_precision(&one, 10).unwrap());
    }

    #[test]
    fn teichmuller_of_two_mod_25() {
        // 2^5 = 32 = 7, 7^5 = 7 (mod 25)
        let t = teichmuller(&q5(2, 1, 2)).unwrap();
        assert_eq!(t.digits(), vec![2, 1]); // 7 = 2 + 1*5
    }

    #[test]
    fn teichmuller_idempotent() {
        let t = teichmuller(&q5(3, 1, 12)).unwrap();
        let tt = teichmuller(&t).unwrap();
        assert!(t.eq_to_precision(&tt, 12).unwrap());
    }

    #[test]
    fn teichmuller_rejects_non_units() {
        assert!(matches!(teichmuller(&q5(5, 1, 8)), Err(Error::NotAUnit(1))));
        let z = PAdicNumber::zero(5, 8).unwrap();
        assert!(matches!(teichmuller(&z), Err(Error::ZeroInput)));
    }

    #[test]
    fn teichmuller_root_of_unity() {
        for a in [2i64, 3, 4, 6, 7, 11] {
            let t = teichmuller(&q5(a, 1, 14)).unwrap();
            let pow = t.pow_int(4).unwrap();
            let one = PAdicNumber::one(5, pow.precision()).unwrap();
            assert!(pow.eq_to_precision(&one, pow.precision()).unwrap());
        }
    }

    #[test]
    fn angle_of_p_is_one() {
        let a = angle(&q5(5, 1, 9)).unwrap();
        let one = PAdicNumber::one(5, a.as_padic().precision()).unwrap();
        assert!(a
            .as_padic()
            .eq_to_precision(&one, a.as_padic().precision())
            .unwrap());
    }

    #[test]
    fn angle_of_two_mod_25() {
        // <2> = 2 * 18 = 36 = 11 (mod 25)
        let a = angle(&q5(2, 1, 2)).unwrap();
        assert_eq!(a.as_padic().digits(), vec![1, 2]); // 11 = 1 + 2*5
    }

    #[test]
    fn angle_negation_invariant() {
        for (n, d) in [(2i64, 1i64), (7, 3), (1, 5), (12, 25)] {
            let a = angle(&q5(n, d, 12)).unwrap();
            let b = angle(&q5(-n, d, 12)).unwrap();
            let m = a.as_padic().precision();
            assert!(a.as_padic().eq_to_precision(b.as_padic(), m).unwrap());
        }
    }

    #[test]
    fn angle_multiplicative() {
        let x = q5(7, 2, 14);
        let y = q5(3, 25, 14);
        let lhs = angle(&x.mul(&y).unwrap()).unwrap();
        let rhs = angle(&x)
            .unwrap()
            .as_padic()
            .mul(angle(&y).unwrap().as_padic())
            .unwrap();
        let m = lhs.as_padic().precision().min(rhs.precision());
        assert!(lhs.as_padic().eq_to_precision(&rhs, m).unwrap());
    }

    #[test]
    fn iwasawa_log_of_one_and_p() {
        let log1 = iwasawa_log(&PAdicNumber::one(5, 10).unwrap()).unwrap();
        assert!(log1.valuation_lower_bound() >= 10);
        // <p> = 1 is known to the relative precision of the input, M - 1.
        let logp = iwasawa_log(&q5(5, 1, 10)).unwrap();
        assert!(logp.is_zero_at_precision());
        assert!(logp.valuation_lower_bound() >= 9);
    }

    #[test]
    fn iwasawa_log_homomorphism() {
        let a = q5(6, 1, 16);
        let b = q5(11, 2, 16);
        let lhs = iwasawa_log(&a.mul(&b).unwrap()).unwrap();
        let la = iwasawa_log(&a).unwrap();
        let lb = iwasawa_log(&b).unwrap();
        let rhs = la.add(&lb).unwrap();
        let m = lhs.precision().min(rhs.precision()).min(14);
        assert!(lhs.eq_to_precision(&rhs, m).unwrap());
    }

    #[test]
    fn one_unit_pow_small_exponents() {
        let z = angle(&q5(7, 1, 12)).unwrap();
        let zero = PAdicNumber::zero(5, 12).unwrap();
        let p0 = one_unit_pow(&z, &zero).unwrap();
        let one = PAdicNumber::one(5, 12).unwrap();
        assert!(p0
            .as_padic()
            .eq_to_precision(&one, p0.as_padic().precision().min(12))
            .unwrap());
        let p1 = one_unit_pow(&z, &PAdicNumber::one(5, 12).unwrap()).unwrap();
        let m = p1.as_padic().precision().min(12);
        assert!(p1.as_padic().eq_to_precision(z.as_padic(), m).unwrap());
    }

    #[test]
    fn one_unit_pow_two_matches_square() {
        for (n, d) in [(6i64, 1i64), (11, 1), (7, 2), (31, 6)] {
            let z = angle(&q5(n, d, 13)).unwrap();
            let sq = z.as_padic().mul(z.as_padic()).unwrap();
            let two = PAdicNumber::from_integer(2, 5, 13).unwrap();
            let p2 = one_unit_pow(&z, &two).unwrap();
            let m = p2.as_padic().precision().min(sq.precision()).min(12);
            assert!(p2.as_padic().eq_to_precision(&sq, m).unwrap());
        }
    }

    #[test]
    fn one_unit_pow_log_relation() {
        // log(z^s) = s log z
        let z = angle(&q5(9, 2, 14)).unwrap();
        let s = q5(13, 1, 14);
        let zs = one_unit_pow(&z, &s).unwrap();
        let lhs = iwasawa_log(zs.as_padic()).unwrap();
        let rhs = s.mul(&iwasawa_log(z.as_padic()).unwrap()).unwrap();
        let m = lhs.precision().min(rhs.precision()).min(12);
        assert!(lhs.eq_to_precision(&rhs, m).unwrap());
    }

    #[test]
    fn one_unit_pow_rejects_fractional_exponent() {
        let z = angle(&q5(6, 1, 10)).unwrap();
        let s = q5(1, 5, 10);
        assert!(matches!(
            one_unit_pow(&z, &s),
            Err(Error::ExponentNotIntegral(-1))
        ));
    }

    #[test]
    fn binom_falling_values() {
        let s0 = q5(7, 1, 10);
        let one = PAdicNumber::one(5, 10).unwrap();
        assert!(binom_falling(&s0, 0)
            .unwrap()
            .eq_to_precision(&one, 10)
            .unwrap());
        // C(5, 2) = 10
        let s = q5(5, 1, 10);
        let c = binom_falling(&s, 2).unwrap();
        let ten = q5(10, 1, 10);
        let m = c.precision().min(10);
        assert!(c.eq_to_precision(&ten, m).unwrap());
        // integer binomial vanishing: C(k, j) = 0 for 0 <= k < j
        for (k, j) in [(0i64, 2u32), (1, 3), (3, 5)] {
            let c = binom_falling(&q5(k, 1, 10), j).unwrap();
            assert!(c.valuation_lower_bound() >= c.precision().min(8));
        }
    }

    #[test]
    fn binom_falling_integral_on_zp() {
        let s = q5(172, 3, 12); // a unit in Z_5
        for j in 0..30u32 {
            let c = binom_falling(&s, j).unwrap();
            assert!(c.valuation_lower_bound() >= 0, "j = {j}");
        }
    }
}
