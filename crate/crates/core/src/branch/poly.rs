use std::collections::BTreeMap;

use crate::linalg::Domain;
use crate::numfield::{CPoly, FieldElement, NumberField};

/// Commutative-ring coefficients for polynomials in `tau`: number-field
/// elements for plain branches, polynomials in the generic parameter `c`
/// for symbolic curvettes.
pub trait Coeff: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coeff for FieldElement {
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        FieldElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FieldElement::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FieldElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
}

impl Coeff for CPoly {
    fn is_zero(&self) -> bool {
        CPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        CPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        CPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        CPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        CPoly::neg(self)
    }
}

/// Sparse polynomial in `tau` with coefficients in a ring over a number
/// field. Stored terms are nonzero; the field handle survives even for the
/// zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauPoly<T: Coeff> {
    field: NumberField,
    terms: BTreeMap<usize, T>,
}

impl<T: Coeff> TauPoly<T> {
    pub fn zero(field: &NumberField) -> Self {
        TauPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: &NumberField, exp: usize, coeff: T) -> Self {
        let mut p = Self::zero(field);
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(field: &NumberField, terms: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut p = Self::zero(field);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn add_term(&mut self, exp: usize, coeff: T) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &T)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Order in `tau`: the lowest exponent with a nonzero coefficient.
    pub fn ord(&self) -> Option<usize> {
        self.terms.keys().next().copied()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading(&self) -> Option<(usize, &T)> {
        self.terms.iter().next_back().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: usize) -> Option<&T> {
        self.terms.get(&exp)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TauPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc: Option<Self> = None;
        for _ in 0..n {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => a.mul(self),
            });
        }
        acc.unwrap_or_else(|| {
            // tau^0 = 1; the multiplicative unit needs a coefficient unit,
            // which only the callers below provide, so n = 0 is handled by
            // each call site. Reaching here is a bug.
            unreachable!("pow(0) must be handled by the caller")
        })
    }

    pub fn map_coeffs<U: Coeff>(&self, f: impl Fn(&T) -> U) -> TauPoly<U> {
        TauPoly::from_terms(&self.field, self.terms().map(|(e, c)| (e, f(c))))
    }
}

impl TauPoly<FieldElement> {
    pub fn one(field: &NumberField) -> Self {
        Self::monomial(field, 0, field.one())
    }

    /// Exact Euclidean division; the divisor must be nonzero and the
    /// coefficients live in a field, so long division always proceeds.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let (dd, dl) = divisor.leading().expect("division by zero polynomial");
        let dl_inv = dl.inverse().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.field);
        while let Some((e, l)) = rem.leading() {
            if e < dd {
                break;
            }
            let factor = l.mul(&dl_inv);
            let shift = e - dd;
            quot.add_term(shift, factor.clone());
            for (de, dc) in divisor.terms() {
                rem.add_term(de + shift, dc.mul(&factor).neg());
            }
        }
        (quot, rem)
    }
}

impl Domain for TauPoly<FieldElement> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.field)
    }
    fn is_zero(&self) -> bool {
        TauPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        TauPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        TauPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        TauPoly::mul(self, other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.divrem(other);
        debug_assert!(r.is_zero(), "inexact division in Bareiss elimination");
        q
    }
    fn neg(&self) -> Self {
        TauPoly::neg(self)
    }
}

/// Finite bivariate polynomial over a number field, the argument type of
/// the valuation: terms map `(x-degree, y-degree)` to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPoly2 {
    field: NumberField,
    terms: BTreeMap<(usize, usize), FieldElement>,
}

impl FieldPoly2 {
    pub fn zero(field: &NumberField) -> Self {
        FieldPoly2 {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn add_term(&mut self, xdeg: usize, ydeg: usize, coeff: FieldElement) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((xdeg, ydeg)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &FieldElement)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a, b, c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in other.terms() {
                out.add_term(a1 + a2, b1 + b2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field);
        for (a, b, coeff) in self.terms() {
            out.add_term(a, b, coeff.mul(c));
        }
        out
    }

    /// Substitute parametrizations `x = x(tau)`, `y = y(tau)` with
    /// coefficients embedded into `T` by `embed`; exact because everything
    /// is a finite polynomial.
    pub fn eval_tau<T: Coeff>(
        &self,
        x: &TauPoly<T>,
        y: &TauPoly<T>,
        embed: impl Fn(&FieldElement) -> T,
    ) -> TauPoly<T> {
        let field = x.field();
        let mut acc = TauPoly::zero(field);
        for (a, b, c) in self.terms() {
            let mut term = TauPoly::monomial(field, 0, embed(c));
            if a > 0 {
                term = term.mul(&x.pow(a));
            }
            if b > 0 {
                term = term.mul(&y.pow(b));
            }
            acc = acc.add(&term);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::bareiss_determinant;
    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn tp(field: &NumberField, terms: &[(usize, i64)]) -> TauPoly<FieldElement> {
        TauPoly::from_terms(
            field,
            terms.iter().map(|&(e, c)| (e, field.from_integer(c))),
        )
    }

    #[test]
    fn divrem_is_exact_on_products() {
        let k = q();
        let a = tp(&k, &[(0, 1), (2, -1)]); // 1 - tau^2
        let b = tp(&k, &[(0, 1), (1, 1)]); // 1 + tau
        let (quot, rem) = a.divrem(&b);
        assert!(rem.is_zero());
        assert_eq!(quot, tp(&k, &[(0, 1), (1, -1)]));
    }

    #[test]
    fn bareiss_over_polynomial_entries() {
        // det [[tau, 1], [1, tau]] = tau^2 - 1.
        let k = q();
        let m = vec![
            vec![tp(&k, &[(1, 1)]), tp(&k, &[(0, 1)])],
            vec![tp(&k, &[(0, 1)]), tp(&k, &[(1, 1)])],
        ];
        assert_eq!(bareiss_determinant(m), tp(&k, &[(0, -1), (2, 1)]));
    }

    #[test]
    fn bivariate_substitution_on_the_cusp() {
        // f = y^2 - x^3 on x = tau^2, y = tau^3 + tau^4 gives
        // 2 tau^7 + tau^8.
        let k = q();
        let mut f = FieldPoly2::zero(&k);
        f.add_term(0, 2, k.one());
        f.add_term(3, 0, k.from_integer(-1));
        let x = tp(&k, &[(2, 1)]);
        let y = tp(&k, &[(3, 1), (4, 1)]);
        let sub = f.eval_tau(&x, &y, Clone::clone);
        assert_eq!(sub, tp(&k, &[(7, 2), (8, 1)]));
        assert_eq!(sub.ord(), Some(7));
    }

    #[test]
    fn substitution_with_scaled_coefficients() {
        let k = NumberField::quadratic(2).unwrap();
        // y - sqrt2 * x on x = tau, y = sqrt2 tau vanishes identically.
        let mut f = FieldPoly2::zero(&k);
        f.add_term(0, 1, k.one());
        f.add_term(1, 0, k.alpha().neg());
        let x = TauPoly::monomial(&k, 1, k.one());
        let y = TauPoly::monomial(&k, 1, k.alpha());
        assert!(f.eval_tau(&x, &y, Clone::clone).is_zero());
    }
}
