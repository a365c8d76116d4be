use super::{FieldElement, NumberField};
use crate::Rat;

/// Polynomial in one transcendental symbol `c` with number-field
/// coefficients, ascending, trailing zeros trimmed.
///
/// `c` is the generic curvette parameter: the divisorial oracle carries it
/// symbolically so that one computation covers all sufficiently general
/// rational choices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoly {
    field: NumberField,
    coeffs: Vec<FieldElement>,
}

impl CPoly {
    pub fn zero(field: &NumberField) -> Self {
        CPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(e: FieldElement) -> Self {
        Self::from_coeffs(e.field().clone(), vec![e])
    }

    /// The symbol `c` itself.
    pub fn c(field: &NumberField) -> Self {
        Self::from_coeffs(field.clone(), vec![field.zero(), field.one()])
    }

    pub fn from_coeffs(field: NumberField, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        CPoly { field, coeffs }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            self.field.clone(),
            (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            self.field.clone(),
            (0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        CPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(FieldElement::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut coeffs =
            vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(self.field.clone(), coeffs)
    }

    /// Substitute a rational value for `c`.
    pub fn eval(&self, c: &Rat) -> FieldElement {
        let c = self.field.from_rational(c.clone());
        let mut acc = self.field.zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&c).add(coeff);
        }
        acc
    }
}

/// Exact rational function in `c` over a number field, as a
/// numerator/denominator pair with a nonzero denominator.
///
/// No normal form is maintained; equality is decided by cross
/// multiplication.
#[derive(Clone, Debug)]
pub struct ParamElement {
    num: CPoly,
    den: CPoly,
}

impl ParamElement {
    /// `num / den`; `None` when the denominator is zero.
    pub fn new(num: CPoly, den: CPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(ParamElement { num, den })
    }

    pub fn from_poly(num: CPoly) -> Self {
        let one = CPoly::constant(num.field().one());
        ParamElement { num, den: one }
    }

    pub fn num(&self) -> &CPoly {
        &self.num
    }

    pub fn den(&self) -> &CPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        ParamElement {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ParamElement {
            num: self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        ParamElement {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.num.is_zero() {
            return None;
        }
        Some(ParamElement {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        })
    }

    /// Substitute a rational value for `c`; `None` when the denominator
    /// vanishes there.
    pub fn eval(&self, c: &Rat) -> Option<FieldElement> {
        let d = self.den.eval(c);
        self.num.eval(c).div(&d)
    }
}

impl PartialEq for ParamElement {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}
impl Eq for ParamElement {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    #[test]
    fn cpoly_arithmetic_over_sqrt2() {
        let k = NumberField::quadratic(2).unwrap();
        // (c + sqrt2)^2 = c^2 + 2*sqrt2*c + 2.
        let p = CPoly::c(&k).add(&CPoly::constant(k.alpha()));
        let sq = p.mul(&p);
        assert_eq!(sq.coeff(0), k.from_integer(2));
        assert_eq!(sq.coeff(1), k.alpha().scale(&rat(2)));
        assert_eq!(sq.coeff(2), k.one());
        // Evaluation at c = 3 matches (3 + sqrt2)^2 = 11 + 6*sqrt2.
        let v = sq.eval(&rat(3));
        assert_eq!(v.as_q_vector(), &[rat(11), rat(6)]);
    }

    #[test]
    fn param_equality_by_cross_multiplication() {
        let k = NumberField::rationals();
        let c = CPoly::c(&k);
        let c2 = c.mul(&c);
        // c^2 / c == c / 1.
        let a = ParamElement::new(c2, c.clone()).unwrap();
        let b = ParamElement::from_poly(c.clone());
        assert_eq!(a, b);
        assert!(ParamElement::new(c.clone(), CPoly::zero(&k)).is_none());
    }

    #[test]
    fn param_eval_commutes_with_arithmetic() {
        let k = NumberField::rationals();
        let c = ParamElement::from_poly(CPoly::c(&k));
        let one = ParamElement::from_poly(CPoly::constant(k.one()));
        // f = (c + 1) / c.
        let f = c.add(&one).div(&c).unwrap();
        let at2 = f.eval(&rat(2)).unwrap();
        assert_eq!(at2.as_rational(), Some(&Rat::new(Int::from(3), Int::from(2))));
        // Denominator vanishes at 0.
        assert!(f.eval(&rat(0)).is_none());
        // (f * c) at 3 == f(3) * 3.
        let g = f.mul(&c);
        assert_eq!(
            g.eval(&rat(3)).unwrap(),
            f.eval(&rat(3)).unwrap().mul(&k.from_integer(3))
        );
    }
}
