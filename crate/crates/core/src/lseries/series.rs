use std::fmt;

use super::LPolynomial;
use crate::Int;

/// Truncated power series in `t` with `LPolynomial` coefficients.
///
/// Coefficients are stored for `t^0 .. t^order` and are exact modulo
/// `t^{order+1}`. Binary operations on series of different orders truncate
/// to the minimum of the two orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSeries {
    order: usize,
    coeffs: Vec<LPolynomial>,
}

impl LSeries {
    pub fn zero(order: usize) -> Self {
        LSeries {
            order,
            coeffs: vec![LPolynomial::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = LPolynomial::one();
        s
    }

    /// `coeffs[v]` is the coefficient of `t^v`; the vector must have length
    /// `order + 1`.
    pub fn from_coeffs(order: usize, coeffs: Vec<LPolynomial>) -> Self {
        assert_eq!(coeffs.len(), order + 1, "coefficient count must be order + 1");
        LSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, v: usize) -> &LPolynomial {
        &self.coeffs[v]
    }

    pub fn coeffs(&self) -> &[LPolynomial] {
        &self.coeffs
    }

    /// Re-truncate to a (smaller or equal) order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        LSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|v| self.coeffs[v].add(&other.coeffs[v]))
            .collect();
        LSeries { order, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|v| self.coeffs[v].sub(&other.coeffs[v]))
            .collect();
        LSeries { order, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = vec![LPolynomial::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        LSeries { order, coeffs }
    }

    /// Multiply by `(1 - L^ell t^m)^s` for any integer `s` (negative powers
    /// expand the geometric inverse). Requires `m >= 1`.
    pub fn mul_binomial_power(&self, ell: usize, m: usize, s: i64) -> Self {
        assert!(m >= 1, "binomial factor needs positive t-exponent");
        if s == 0 {
            return self.clone();
        }
        let factor = binomial_power_series(ell, m, s, self.order);
        self.mul(&factor)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == LPolynomial::one() && self.coeffs[1..].iter().all(LPolynomial::is_zero)
    }
}

/// Expansion of `(1 - L^ell t^m)^s` modulo `t^{order+1}`.
///
/// For `s >= 0` the coefficients are signed binomials; for `s < 0` they are
/// binomials with repetition, `C(k + |s| - 1, |s| - 1) L^{ell k} t^{m k}`.
pub fn binomial_power_series(ell: usize, m: usize, s: i64, order: usize) -> LSeries {
    assert!(m >= 1);
    let mut out = LSeries::zero(order);
    let kmax = order / m;
    let mut binom = Int::from(1);
    for k in 0..=kmax {
        if k > 0 {
            if s >= 0 {
                if (k as i64) > s {
                    break;
                }
                // C(s, k) with alternating sign folded in below.
                binom = binom * Int::from(s - k as i64 + 1) / Int::from(k as i64);
            } else {
                let n = -s;
                binom = binom * Int::from(n + k as i64 - 1) / Int::from(k as i64);
            }
        }
        let c = if s >= 0 && k % 2 == 1 {
            -binom.clone()
        } else {
            binom.clone()
        };
        out.coeffs[k * m] = LPolynomial::monomial(c, ell * k);
    }
    out
}

impl fmt::Display for LSeries {
    /// Coefficient-list form, one `v: <polynomial>` line per coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{v}: {c}")?;
        }
        Ok(())
    }
}
