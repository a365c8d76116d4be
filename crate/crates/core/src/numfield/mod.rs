//! Exact arithmetic in a number field `K = Q(alpha)` presented by a monic
//! rational minimal polynomial together with an explicitly supplied list of
//! automorphisms, plus a transcendental extension `K(c)` used by the
//! divisorial oracle's generic-parameter computations.
//!
//! Invariants enforced at construction:
//! * the minimal polynomial is monic of degree >= 1, squarefree, and has no
//!   rational root (degree 1 is exempt and represents `Q` itself);
//!   irreducibility beyond these sanity checks is the caller's contract,
//! * every listed automorphism image is a root of the minimal polynomial,
//! * the automorphism list contains the identity, has no duplicates, and is
//!   closed under composition (a finite group by injectivity).
//!
//! Field elements are coordinate vectors in the power basis
//! `1, alpha, ..., alpha^{d-1}`; all arithmetic is exact.

mod param;
mod qpoly;

pub use param::{CPoly, ParamElement};
pub use qpoly::QPoly;

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rat;

#[derive(Debug)]
struct FieldInner {
    minpoly: QPoly,
    degree: usize,
    /// Image of `alpha` under each automorphism, as power-basis coordinates.
    automorphisms: Vec<Vec<Rat>>,
}

/// Validated handle to a number field; cheap to clone and share.
#[derive(Clone, Debug)]
pub struct NumberField {
    inner: Arc<FieldInner>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.minpoly == other.inner.minpoly
                && self.inner.automorphisms == other.inner.automorphisms)
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// Validate and wrap field data. `automorphisms[i]` is the coordinate
    /// vector (degree < d) of the image of `alpha` under the i-th
    /// automorphism.
    pub fn make_field(minpoly: QPoly, automorphisms: Vec<Vec<Rat>>) -> Result<Self> {
        let Some(degree) = minpoly.degree().filter(|&d| d >= 1) else {
            return Err(Error::FieldValidation(
                "minimal polynomial must have degree >= 1".into(),
            ));
        };
        if !minpoly.is_monic() {
            return Err(Error::FieldValidation(
                "minimal polynomial must be monic".into(),
            ));
        }
        if degree > 1 {
            if minpoly.gcd(&minpoly.derivative()).degree() != Some(0) {
                return Err(Error::FieldValidation(
                    "minimal polynomial is not squarefree".into(),
                ));
            }
            if minpoly.has_rational_root() {
                return Err(Error::FieldValidation(
                    "minimal polynomial has a rational root, hence is reducible".into(),
                ));
            }
        }
        let mut autos = Vec::with_capacity(automorphisms.len());
        for a in automorphisms {
            if a.len() > degree {
                return Err(Error::FieldValidation(format!(
                    "automorphism image has {} coordinates, field degree is {degree}",
                    a.len()
                )));
            }
            let mut padded = a;
            padded.resize(degree, Rat::zero());
            autos.push(padded);
        }
        let field = NumberField {
            inner: Arc::new(FieldInner {
                minpoly,
                degree,
                automorphisms: autos,
            }),
        };
        field.validate_automorphism_group()?;
        Ok(field)
    }

    fn validate_automorphism_group(&self) -> Result<()> {
        let autos = &self.inner.automorphisms;
        if autos.is_empty() {
            return Err(Error::FieldValidation(
                "automorphism list must contain at least the identity".into(),
            ));
        }
        for (i, a) in autos.iter().enumerate() {
            for b in &autos[..i] {
                if a == b {
                    return Err(Error::FieldValidation(
                        "duplicate automorphism in the list".into(),
                    ));
                }
            }
        }
        // Each image must be a root of the minimal polynomial.
        for a in autos {
            let image = FieldElement::from_coords(self.clone(), a.clone());
            if !self.eval_minpoly(&image).is_zero() {
                return Err(Error::FieldValidation(
                    "automorphism image is not a root of the minimal polynomial".into(),
                ));
            }
        }
        let identity = self.alpha().coords;
        if !autos.contains(&identity) {
            return Err(Error::FieldValidation(
                "automorphism list does not contain the identity".into(),
            ));
        }
        // Closure under composition.
        for i in 0..autos.len() {
            for j in 0..autos.len() {
                let composed = self
                    .apply_automorphism(i, &FieldElement::from_coords(self.clone(), autos[j].clone()));
                if !autos.contains(&composed.coords) {
                    return Err(Error::FieldValidation(format!(
                        "automorphism list is not closed under composition \
                         (composite of #{i} and #{j} is missing)"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The field of rationals, presented with minimal polynomial `x`
    /// (`alpha = 0`) and the identity automorphism.
    pub fn rationals() -> Self {
        Self::make_field(QPoly::x(), vec![vec![Rat::zero()]]).expect("Q is always valid")
    }

    /// `Q(sqrt(n))` for a squarefree non-square integer `n`, with the
    /// identity and the conjugation `alpha -> -alpha`.
    pub fn quadratic(n: i64) -> Result<Self> {
        let minpoly = QPoly::from_coeffs(vec![
            Rat::from_integer((-n).into()),
            Rat::zero(),
            Rat::one(),
        ]);
        Self::make_field(
            minpoly,
            vec![
                vec![Rat::zero(), Rat::one()],
                vec![Rat::zero(), -Rat::one()],
            ],
        )
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.inner.minpoly
    }

    pub fn automorphism_count(&self) -> usize {
        self.inner.automorphisms.len()
    }

    /// Index of the identity automorphism.
    pub fn identity_automorphism(&self) -> usize {
        let identity = self.alpha().coords;
        self.inner
            .automorphisms
            .iter()
            .position(|a| *a == identity)
            .expect("identity verified at construction")
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_coords(self.clone(), vec![Rat::zero(); self.inner.degree])
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rat::one())
    }

    pub fn from_rational(&self, r: Rat) -> FieldElement {
        let mut coords = vec![Rat::zero(); self.inner.degree];
        coords[0] = r;
        FieldElement::from_coords(self.clone(), coords)
    }

    pub fn from_integer(&self, n: i64) -> FieldElement {
        self.from_rational(Rat::from_integer(n.into()))
    }

    /// The generator `alpha` (zero in the degree-1 field, where alpha = 0).
    pub fn alpha(&self) -> FieldElement {
        let mut coords = vec![Rat::zero(); self.inner.degree];
        if self.inner.degree > 1 {
            coords[1] = Rat::one();
        }
        FieldElement::from_coords(self.clone(), coords)
    }

    /// Element from power-basis coordinates (shorter vectors are padded).
    pub fn element(&self, mut coords: Vec<Rat>) -> Result<FieldElement> {
        if coords.len() > self.inner.degree {
            return Err(Error::InvalidInput(format!(
                "element has {} coordinates, field degree is {}",
                coords.len(),
                self.inner.degree
            )));
        }
        coords.resize(self.inner.degree, Rat::zero());
        Ok(FieldElement::from_coords(self.clone(), coords))
    }

    /// Re-express `e` after `alpha -> p_g(alpha)`: a field automorphism.
    pub fn apply_automorphism(&self, g: usize, e: &FieldElement) -> FieldElement {
        assert!(e.field == *self, "element from a different field");
        let image = FieldElement::from_coords(self.clone(), self.inner.automorphisms[g].clone());
        // Horner evaluation of the coordinate polynomial at the image of
        // alpha, entirely inside the field.
        let mut acc = self.zero();
        for c in e.coords.iter().rev() {
            acc = acc.mul(&image).add(&self.from_rational(c.clone()));
        }
        acc
    }

    fn eval_minpoly(&self, e: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in self.inner.minpoly.coeffs().iter().rev() {
            acc = acc.mul(e).add(&self.from_rational(c.clone()));
        }
        acc
    }

    /// Reduce a coordinate polynomial of arbitrary degree mod the minimal
    /// polynomial, returning power-basis coordinates.
    fn reduce(&self, poly: QPoly) -> Vec<Rat> {
        let (_, rem) = poly.divrem(&self.inner.minpoly);
        let mut coords = rem.coeffs().to_vec();
        coords.resize(self.inner.degree, Rat::zero());
        coords
    }
}

/// Element of a number field in power-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rat>,
}

impl FieldElement {
    fn from_coords(field: NumberField, coords: Vec<Rat>) -> Self {
        debug_assert_eq!(coords.len(), field.degree());
        FieldElement { field, coords }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// Coordinates in the basis `1, alpha, ..., alpha^{d-1}`: the
    /// Q-linear, injective flattening used by the jet oracle.
    pub fn as_q_vector(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in the prime field.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn as_qpoly(&self) -> QPoly {
        QPoly::from_coeffs(self.coords.clone())
    }

    fn check_same_field(&self, other: &Self) {
        assert!(self.field == other.field, "elements from different fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_coords(self.field.clone(), coords)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Self::from_coords(self.field.clone(), coords)
    }

    pub fn neg(&self) -> Self {
        Self::from_coords(self.field.clone(), self.coords.iter().map(|a| -a).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let product = self.as_qpoly().mul(&other.as_qpoly());
        Self::from_coords(self.field.clone(), self.field.reduce(product))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self::from_coords(self.field.clone(), self.coords.iter().map(|a| a * r).collect())
    }

    /// Multiplicative inverse via the extended gcd with the minimal
    /// polynomial; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, u, _) = self.as_qpoly().extended_gcd(self.field.minpoly());
        // With an irreducible minimal polynomial the gcd is the constant 1;
        // a nonconstant gcd would mean the user lied about irreducibility.
        assert!(
            g.degree() == Some(0),
            "element shares a factor with the minimal polynomial; field data invalid"
        );
        Some(Self::from_coords(self.field.clone(), self.field.reduce(u)))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inverse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    fn qp(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn rationals_field_is_degree_one() {
        let q = NumberField::rationals();
        assert_eq!(q.degree(), 1);
        assert_eq!(q.automorphism_count(), 1);
        let two = q.from_integer(2);
        assert_eq!(two.mul(&two), q.from_integer(4));
        assert_eq!(q.apply_automorphism(0, &two), two);
    }

    #[test]
    fn sqrt2_field_arithmetic() {
        let k = NumberField::quadratic(2).unwrap();
        assert_eq!(k.degree(), 2);
        let sqrt2 = k.alpha();
        // alpha^2 = 2, reduced to coordinates (2, 0).
        assert_eq!(sqrt2.mul(&sqrt2).as_q_vector(), &[rat(2), rat(0)]);
        // (3 + 2*sqrt2) has coordinates (3, 2).
        let e = k.from_integer(3).add(&sqrt2.scale(&rat(2)));
        assert_eq!(e.as_q_vector(), &[rat(3), rat(2)]);
    }

    #[test]
    fn conjugation_negates_sqrt2_and_fixes_rationals() {
        let k = NumberField::quadratic(2).unwrap();
        let sqrt2 = k.alpha();
        let conj = 1; // second listed automorphism
        assert_eq!(k.apply_automorphism(conj, &sqrt2), sqrt2.neg());
        let r = k.from_integer(5);
        assert_eq!(k.apply_automorphism(conj, &r), r);
        let e = k.from_integer(1).add(&sqrt2);
        let twice = k.apply_automorphism(conj, &k.apply_automorphism(conj, &e));
        assert_eq!(twice, e);
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let k = NumberField::quadratic(2).unwrap();
        let e = k.from_integer(1).add(&k.alpha());
        let inv = e.inverse().unwrap();
        assert_eq!(e.mul(&inv), k.one());
        // 1/(1 + sqrt2) = sqrt2 - 1.
        assert_eq!(inv, k.alpha().sub(&k.one()));
        assert!(k.zero().inverse().is_none());
    }

    #[test]
    fn rejects_non_root_automorphism() {
        // alpha -> alpha + 1 is not a root of x^2 - 2.
        let err = NumberField::make_field(
            qp(&[-2, 0, 1]),
            vec![vec![rat(0), rat(1)], vec![rat(1), rat(1)]],
        );
        assert!(matches!(err, Err(Error::FieldValidation(_))));
    }

    #[test]
    fn rejects_list_without_identity() {
        let err = NumberField::make_field(qp(&[-2, 0, 1]), vec![vec![rat(0), rat(-1)]]);
        assert!(matches!(err, Err(Error::FieldValidation(_))));
    }

    #[test]
    fn rejects_non_monic_reducible_and_constant_minpolys() {
        assert!(NumberField::make_field(qp(&[1]), vec![]).is_err());
        assert!(NumberField::make_field(qp(&[-2, 0, 2]), vec![]).is_err());
        // x^2 - 1 = (x-1)(x+1) has a rational root.
        assert!(NumberField::make_field(
            qp(&[-1, 0, 1]),
            vec![vec![rat(0), rat(1)], vec![rat(0), rat(-1)]]
        )
        .is_err());
        // x^2 + 2x + 1 is not squarefree.
        assert!(NumberField::make_field(
            qp(&[1, 2, 1]),
            vec![vec![rat(0), rat(1)]]
        )
        .is_err());
    }

    #[test]
    fn cyclic_cubic_automorphism_group_validates() {
        // x^3 - 3x + 1 is cyclic of degree 3 with alpha -> alpha^2 - 2.
        let autos = vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(-2), rat(0), rat(1)],
            vec![rat(2), rat(-1), rat(-1)],
        ];
        let k = NumberField::make_field(qp(&[1, -3, 0, 1]), autos).unwrap();
        assert_eq!(k.degree(), 3);
        assert_eq!(k.automorphism_count(), 3);
        // Applying the generator three times is the identity.
        let a = k.alpha();
        let g = 1;
        let cubed =
            k.apply_automorphism(g, &k.apply_automorphism(g, &k.apply_automorphism(g, &a)));
        assert_eq!(cubed, a);
    }
}
