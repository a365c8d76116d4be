use std::collections::BTreeMap;

use super::{LPolynomial, LSeries};

/// Finite polynomial in two series variables with `LPolynomial` coefficients.
///
/// Terms map `(degree in t1, degree in t2)` to a nonzero coefficient; zero
/// coefficients are never stored, so structural equality is ring equality.
/// There is deliberately no bivariate series ring: closed-form identities in
/// two variables are checked after clearing denominators, and a bivariate
/// rational form is evaluated one monomial substitution `(t^a, t^b)` at a
/// time.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivarPolynomial {
    terms: BTreeMap<(usize, usize), LPolynomial>,
}

impl BivarPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, LPolynomial::one());
        p
    }

    /// Add `c * t1^i t2^j` to the polynomial.
    pub fn add_term(&mut self, i: usize, j: usize, c: LPolynomial) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(LPolynomial::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &LPolynomial)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in other.terms() {
                out.add_term(i1 + i2, j1 + j2, c1.mul(c2));
            }
        }
        out
    }

    /// Substitute `t1 = t^a`, `t2 = t^b` and truncate at `t^{order}`.
    pub fn specialize(&self, a: usize, b: usize, order: usize) -> LSeries {
        let mut coeffs = vec![LPolynomial::zero(); order + 1];
        for (i, j, c) in self.terms() {
            let v = a * i + b * j;
            if v <= order {
                coeffs[v] = coeffs[v].add(c);
            }
        }
        LSeries::from_coeffs(order, coeffs)
    }
}

/// Equality of two cleared-denominator sides of a bivariate identity.
pub fn bivar_identity_check(lhs: &BivarPolynomial, rhs: &BivarPolynomial) -> bool {
    lhs == rhs
}
