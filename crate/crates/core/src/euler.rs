//! Higher-order Euler polynomials `E_{N,n}(x; omega)` over exact rationals.
//!
//! The generating function `2^N e^{xt} / prod_j (e^{omega_j t} + 1)` is
//! realized as an EGF convolution of N one-parameter factors, each with
//! k-th coefficient `E_k(0) omega_j^k`. Everything here is exact over Q;
//! p-adic reduction happens only in the consumers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::config::KMAX_HARD_CAP;
use crate::error::{Error, Result};
use crate::rational::{binomial, rat, rat_int, Rational};

/// Exact coefficients `c_k = E_{N,k}(0; omega)` for k <= kmax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTable {
    order: usize,
    omega: Vec<Rational>,
    coeffs: Vec<Rational>,
}

/// `E_n(0)` for n = 0..=kmax via the recurrence
/// `2 E_n(0) = -sum_{k<n} C(n,k) E_k(0)`, `E_0(0) = 1`.
pub fn euler_zero_values(kmax: usize) -> Vec<Rational> {
    let mut vals = Vec::with_capacity(kmax + 1);
    vals.push(rat_int(1));
    for n in 1..=kmax {
        let mut s = Rational::zero();
        for (k, v) in vals.iter().enumerate() {
            s += Rational::from(binomial(n as u64, k as u64)) * v;
        }
        vals.push(-s / rat_int(2));
    }
    vals
}

/// `E_n(0)` for the classical (order 1, omega = 1) Euler polynomials.
pub fn euler_number_poly_at_zero(n: usize) -> Rational {
    euler_zero_values(n).pop().expect("nonempty")
}

impl EulerTable {
    /// Builds the coefficient table for order `N = omega.len()`.
    pub fn build(omega: &[Rational], kmax: usize) -> Result<Self> {
        for (i, w) in omega.iter().enumerate() {
            if w.is_zero() {
                return Err(Error::ZeroParameter(i));
            }
        }
        if kmax > KMAX_HARD_CAP {
            return Err(Error::KmaxExceeded {
                needed: kmax,
                cap: KMAX_HARD_CAP,
            });
        }
        let base = euler_zero_values(kmax);
        // EGF of the empty product is 1.
        let mut coeffs: Vec<Rational> = vec![Rational::zero(); kmax + 1];
        coeffs[0] = Rational::one();
        for w in omega {
            let mut w_pow = Rational::one();
            let factor: Vec<Rational> = base
                .iter()
                .map(|e| {
                    let c = e * &w_pow;
                    w_pow *= w;
                    c
                })
                .collect();
            coeffs = egf_convolve(&coeffs, &factor);
        }
        let table = EulerTable {
            order: omega.len(),
            omega: omega.to_vec(),
            coeffs,
        };
        debug_assert!(table.coeffs[0].is_one());
        // Integral parameters force 2-smooth denominators, hence |c_k|_p <= 1
        // for every odd p; the series tail bounds lean on this.
        if table.omega.iter().all(|w| w.denom().is_one()) {
            assert!(
                table.coeffs.iter().all(|c| is_power_of_two(c.denom())),
                "Euler table denominators must be powers of two for integral parameters"
            );
        }
        Ok(table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn omega(&self) -> &[Rational] {
        &self.omega
    }

    pub fn kmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `E_{N,k}(0; omega)`.
    pub fn coefficient(&self, k: usize) -> Result<&Rational> {
        self.coeffs.get(k).ok_or(Error::DegreeOutOfRange {
            requested: k,
            kmax: self.kmax(),
        })
    }

    /// `E_{N,n}(x; omega) = sum_k C(n,k) c_k x^{n-k}`, exact.
    pub fn euler_poly(&self, n: usize, x: &Rational) -> Result<Rational> {
        if n > self.kmax() {
            return Err(Error::DegreeOutOfRange {
                requested: n,
                kmax: self.kmax(),
            });
        }
        let mut acc = Rational::zero();
        let mut x_pow = Rational::one();
        // accumulate from k = n down so x_pow climbs x^0 .. x^n
        for k in (0..=n).rev() {
            acc += Rational::from(binomial(n as u64, k as u64)) * &self.coeffs[k] * &x_pow;
            x_pow *= x;
        }
        Ok(acc)
    }

    /// Value of the complex multiple Barnes-Euler zeta at `-k`:
    /// `2^(-N) E_{N,k}(x; omega)`, with no complex analysis involved.
    pub fn classical_zeta_special_value(&self, k: usize, x: &Rational) -> Result<Rational> {
        let half_pow = rat(1, 2).pow(self.order as i32);
        Ok(self.euler_poly(k, x)? * half_pow)
    }

    /// Export as `[{"k":…,"num":…,"den":…}, …]`; big values as strings.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                serde_json::json!({
                    "k": k,
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// c_k = sum_i C(k,i) a_i b_{k-i}.
fn egf_convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let kmax = a.len() - 1;
    let mut out = vec![Rational::zero(); kmax + 1];
    for (k, o) in out.iter_mut().enumerate() {
        let mut acc = Rational::zero();
        for i in 0..=k {
            if a[i].is_zero() || b[k - i].is_zero() {
                continue;
            }
            acc += Rational::from(binomial(k as u64, i as u64)) * &a[i] * &b[k - i];
        }
        *o = acc;
    }
    out
}

fn is_power_of_two(n: &BigInt) -> bool {
    let m = n.abs();
    if m.is_zero() {
        return false;
    }
    let bits = m.bits();
    m == BigInt::one() << (bits - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn table(omega: &[i64], kmax: usize) -> EulerTable {
        let w: Vec<Rational> = omega.iter().map(|&o| rat_int(o)).collect();
        EulerTable::build(&w, kmax).unwrap()
    }

    #[test]
    fn euler_zero_first_values() {
        let v = euler_zero_values(6);
        assert_eq!(v[0], rat_int(1));
        assert_eq!(v[1], rat(-1, 2));
        assert_eq!(v[2], rat_int(0));
        assert_eq!(v[3], rat(1, 4));
        assert_eq!(v[4], rat_int(0));
        assert_eq!(v[5], rat(-1, 2));
        assert_eq!(v[6], rat_int(0));
        assert_eq!(euler_number_poly_at_zero(3), rat(1, 4));
    }

    #[test]
    fn series_inversion_cross_check() {
        // Invert (e^t + 1)/2 as an EGF and compare with the recurrence.
        let kmax = 12;
        let v = euler_zero_values(kmax);
        // g_k = EGF coefficients of (e^t+1)/2: g_0 = 1, g_k = 1/2 else.
        let g: Vec<Rational> = (0..=kmax)
            .map(|k| if k == 0 { rat_int(1) } else { rat(1, 2) })
            .collect();
        // h = g^{-1} via h_0 = 1, h_k = -sum_{i>=1} C(k,i) g_i h_{k-i}.
        let mut h = vec![rat_int(1)];
        for k in 1..=kmax {
            let mut s = Rational::zero();
            for i in 1..=k {
                s += Rational::from(binomial(k as u64, i as u64)) * &g[i] * &h[k - i];
            }
            h.push(-s);
        }
        assert_eq!(v, h);
    }

    #[test]
    fn order_zero_table() {
        let t = EulerTable::build(&[], 5).unwrap();
        assert_eq!(*t.coefficient(0).unwrap(), rat_int(1));
        for k in 1..=5 {
            assert_eq!(*t.coefficient(k).unwrap(), rat_int(0));
        }
        // E_{0,n}(x; -) = x^n
        assert_eq!(t.euler_poly(3, &rat(7, 2)).unwrap(), rat(343, 8));
    }

    #[test]
    fn order_one_table_is_euler_polys() {
        let t = table(&[1], 6);
        assert_eq!(*t.coefficient(0).unwrap(), rat_int(1));
        assert_eq!(*t.coefficient(1).unwrap(), rat(-1, 2));
        assert_eq!(*t.coefficient(2).unwrap(), rat_int(0));
        assert_eq!(*t.coefficient(3).unwrap(), rat(1, 4));
        // E_2(1/2) = -1/4 since the Euler number E_2 = -1 = 2^2 E_2(1/2)
        assert_eq!(t.euler_poly(2, &rat(1, 2)).unwrap(), rat(-1, 4));
    }

    #[test]
    fn order_two_self_convolution() {
        let t = table(&[1, 1], 3);
        assert_eq!(*t.coefficient(0).unwrap(), rat_int(1));
        assert_eq!(*t.coefficient(1).unwrap(), rat_int(-1));
        assert_eq!(*t.coefficient(2).unwrap(), rat(1, 2));
        assert_eq!(*t.coefficient(3).unwrap(), rat(1, 2));
        assert_eq!(t.euler_poly(1, &rat_int(0)).unwrap(), rat_int(-1));
    }

    #[test]
    fn zeta_special_values() {
        let t0 = EulerTable::build(&[], 4).unwrap();
        assert_eq!(
            t0.classical_zeta_special_value(4, &rat(1, 3)).unwrap(),
            rat(1, 81)
        );
        let t1 = table(&[1], 4);
        assert_eq!(
            t1.classical_zeta_special_value(1, &rat_int(0)).unwrap(),
            rat(-1, 4)
        );
        let t2 = table(&[1, 1], 4);
        assert_eq!(
            t2.classical_zeta_special_value(0, &rat(9, 7)).unwrap(),
            rat(1, 4)
        );
    }

    #[test]
    fn zero_parameter_rejected() {
        let w = vec![rat_int(1), rat_int(0)];
        assert!(matches!(
            EulerTable::build(&w, 3),
            Err(Error::ZeroParameter(1))
        ));
    }

    #[test]
    fn kmax_cap_enforced() {
        let w = vec![rat_int(1)];
        assert!(matches!(
            EulerTable::build(&w, KMAX_HARD_CAP + 1),
            Err(Error::KmaxExceeded { .. })
        ));
        assert!(matches!(
            table(&[1], 3).euler_poly(4, &rat_int(0)),
            Err(Error::DegreeOutOfRange {
                requested: 4,
                kmax: 3
            })
        ));
    }

    #[test]
    fn homogeneity() {
        let t = EulerTable::build(&[rat_int(1), rat_int(2)], 5).unwrap();
        let c = rat(3, 7);
        let scaled: Vec<Rational> = t.omega().iter().map(|w| w * &c).collect();
        let ts = EulerTable::build(&scaled, 5).unwrap();
        let x = rat(5, 2);
        for n in 0..=5usize {
            let lhs = ts.euler_poly(n, &(&x * &c)).unwrap();
            let rhs = t.euler_poly(n, &x).unwrap() * c.pow(n as i32);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn symmetry_under_permutation() {
        let a = EulerTable::build(&[rat_int(1), rat(2, 3), rat_int(5)], 6).unwrap();
        let b = EulerTable::build(&[rat_int(5), rat_int(1), rat(2, 3)], 6).unwrap();
        for k in 0..=6 {
            assert_eq!(a.coefficient(k).unwrap(), b.coefficient(k).unwrap());
        }
    }

    #[test]
    fn alternating_sums_even_and_odd() {
        // sum_{j<M} (-1)^j E_{K,n+1}(x + j w; ...) =
        //   (E_{K+1,n+1}(x; ..., w) -+ E_{K+1,n+1}(x + M w; ..., w)) / 2,
        // minus for even M, plus for odd M.
        let omegas = [rat_int(1), rat_int(2), rat(3, 2)];
        for kk in 0..=2usize {
            let lower = &omegas[..kk];
            let upper = &omegas[..=kk];
            let w = omegas[kk].clone();
            let tl = EulerTable::build(lower, 6).unwrap();
            let tu = EulerTable::build(upper, 6).unwrap();
            for n in 0..=5usize {
                for m in 1..=6i64 {
                    let x = rat(1, 3);
                    let mut s = Rational::zero();
                    for j in 0..m {
                        let arg = &x + rat_int(j) * &w;
                        let term = tl.euler_poly(n + 1, &arg).unwrap();
                        if j % 2 == 0 {
                            s += term;
                        } else {
                            s -= term;
                        }
                    }
                    let e0 = tu.euler_poly(n + 1, &x).unwrap();
                    let em = tu.euler_poly(n + 1, &(&x + rat_int(m) * &w)).unwrap();
                    let rhs = if m % 2 == 0 {
                        (e0 - em) / rat_int(2)
                    } else {
                        (e0 + em) / rat_int(2)
                    };
                    assert_eq!(s, rhs, "K={kk} n={n} M={m}");
                }
            }
        }
    }

    #[test]
    fn json_export_shape() {
        let t = table(&[1, 1], 2);
        let j = t.to_json();
        let rows = j.as_array().unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1]["k"], 1);
        assert_eq!(rows[1]["num"], "-1");
        assert_eq!(rows[1]["den"], "1");
        assert_eq!(rows[2]["num"], "1");
        assert_eq!(rows[2]["den"], "2");
    }
}
