use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// Dense univariate polynomial over the rationals, ascending coefficients,
/// trailing zeros trimmed (zero polynomial = empty vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = Rat::one() / divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = &rem[rem.len() - 1] * &lead_inv;
            if !factor.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    let delta = &factor * b;
                    rem[k + j] -= delta;
                }
                quot[k] = factor;
            }
            rem.pop();
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor (1 for coprime inputs).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    fn make_monic(self) -> Self {
        match self.leading() {
            None => self,
            Some(l) if l.is_one() => self,
            Some(l) => {
                let inv = Rat::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Extended gcd: returns `(g, u, v)` with `u*self + v*other = g`, `g`
    /// monic (or zero).
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Self::one(), Self::zero());
        let (mut v0, mut v1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            (r0, r1) = (r1, r);
            (u0, u1) = (u1.clone(), u0.sub(&q.mul(&u1)));
            (v0, v1) = (v1.clone(), v0.sub(&q.mul(&v1)));
        }
        match r0.leading().cloned() {
            None => (r0, u0, v0),
            Some(l) => {
                let inv = Rat::one() / l;
                (r0.scale(&inv), u0.scale(&inv), v0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * Rat::from_integer(Int::from(k as i64 + 1)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// True when the polynomial has a rational root, decided by the
    /// rational-root theorem on the cleared-denominator integer form.
    pub fn has_rational_root(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        if self.coeff(0).is_zero() {
            return true;
        }
        // Clear denominators to a primitive integer polynomial.
        let mut lcm = Int::one();
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let a0 = ints[0].abs();
        let ad = ints[d].abs();
        for p in divisors(&a0) {
            for q in divisors(&ad) {
                for sign in [1, -1] {
                    let cand = Rat::new(p.clone() * Int::from(sign), q.clone());
                    if self.eval(&cand).is_zero() {
                        return true;
                    }
                }
            }
        }
        false
    }
}

fn divisors(n: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut d = Int::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(Int::from(c)))
                .collect(),
        )
    }

    #[test]
    fn divrem_roundtrip() {
        let a = qp(&[1, 0, -3, 2, 5]);
        let b = qp(&[2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_multiples() {
        let g = qp(&[1, 1]);
        let a = g.mul(&qp(&[-1, 1]));
        let b = g.mul(&qp(&[3, 0, 1]));
        assert_eq!(a.gcd(&b), g);
    }

    #[test]
    fn extended_gcd_bezout_identity() {
        let a = qp(&[-2, 0, 1]); // x^2 - 2
        let b = qp(&[1, 1]); // x + 1, coprime to a
        let (g, u, v) = a.extended_gcd(&b);
        assert_eq!(g, QPoly::one());
        assert_eq!(u.mul(&a).add(&v.mul(&b)), QPoly::one());
    }

    #[test]
    fn derivative_and_eval() {
        let p = qp(&[1, -3, 0, 2]); // 1 - 3x + 2x^3
        assert_eq!(p.derivative(), qp(&[-3, 0, 6]));
        assert_eq!(p.eval(&Rat::from_integer(Int::from(2))), Rat::from_integer(Int::from(11)));
    }

    #[test]
    fn rational_root_detection() {
        assert!(qp(&[-1, 0, 1]).has_rational_root()); // x^2 - 1
        assert!(!qp(&[-2, 0, 1]).has_rational_root()); // x^2 - 2
        assert!(qp(&[0, 0, 1]).has_rational_root()); // x^2
        assert!(!qp(&[1, -3, 0, 1]).has_rational_root()); // x^3 - 3x + 1
        // 2x - 1 has the non-integer root 1/2.
        assert!(qp(&[-1, 2]).has_rational_root());
    }
}
