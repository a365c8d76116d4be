//! Puiseux-parametrized plane branches `x = tau^m`, `y = sum c_i tau^i`
//! over a number field: characteristic exponents and semigroup generators,
//! valuations of bivariate polynomials, contact and intersection numbers,
//! and the m-values of the labeled resolution-graph vertices.
//!
//! Invariants:
//! * branch parametrizations are primitive: gcd of `m` and all exponents
//!   with nonzero coefficient is 1, exponents are >= m and strictly
//!   increasing, coefficients are nonzero,
//! * no blow-up simulation anywhere: every graph invariant is computed from
//!   Puiseux data (characteristic recursion, curvette intersections),
//! * all substitution arithmetic is exact polynomial arithmetic, so
//!   vanishing (valuation +infinity) is decided exactly, never guessed.

mod curvette;
mod intersect;
mod poly;
mod valuation;

pub use curvette::{curvette_at, m_values};
pub use intersect::{contact_order, intersection_multiplicity, separation_exponent};
pub use poly::{Coeff, FieldPoly2, TauPoly};
pub use valuation::{valuation_of, Valuation};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numfield::{FieldElement, NumberField};

/// Irreducible plane branch given by a primitive Puiseux parametrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxBranch {
    field: NumberField,
    m: usize,
    y_terms: BTreeMap<usize, FieldElement>,
}

impl PuiseuxBranch {
    pub fn new(
        field: NumberField,
        m: usize,
        y_terms: impl IntoIterator<Item = (usize, FieldElement)>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::BranchValidation("x-exponent m must be positive".into()));
        }
        let mut terms = BTreeMap::new();
        for (exp, coeff) in y_terms {
            if coeff.is_zero() {
                return Err(Error::BranchValidation(format!(
                    "zero coefficient listed at exponent {exp}"
                )));
            }
            if coeff.field() != &field {
                return Err(Error::BranchValidation(
                    "coefficient from a different field".into(),
                ));
            }
            if exp < m {
                return Err(Error::BranchValidation(format!(
                    "exponent {exp} below the x-exponent {m}"
                )));
            }
            if terms.insert(exp, coeff).is_some() {
                return Err(Error::BranchValidation(format!(
                    "duplicate exponent {exp}"
                )));
            }
        }
        let mut gcd = m;
        for &exp in terms.keys() {
            gcd = num_integer::gcd(gcd, exp);
        }
        if gcd != 1 {
            return Err(Error::BranchValidation(format!(
                "parametrization is not primitive: gcd of exponents is {gcd}"
            )));
        }
        Ok(PuiseuxBranch {
            field,
            m,
            y_terms: terms,
        })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// The exponent `m` in `x = tau^m` (the multiplicity of the branch).
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn y_terms(&self) -> impl Iterator<Item = (usize, &FieldElement)> {
        self.y_terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn y_coeff(&self, exp: usize) -> Option<&FieldElement> {
        self.y_terms.get(&exp)
    }

    pub fn x_tau(&self) -> TauPoly<FieldElement> {
        TauPoly::monomial(&self.field, self.m, self.field.one())
    }

    pub fn y_tau(&self) -> TauPoly<FieldElement> {
        TauPoly::from_terms(
            &self.field,
            self.y_terms.iter().map(|(&e, c)| (e, c.clone())),
        )
    }

    /// Image of the branch under the `g`-th automorphism of its field,
    /// applied coefficientwise.
    pub fn apply_automorphism(&self, g: usize) -> Self {
        PuiseuxBranch {
            field: self.field.clone(),
            m: self.m,
            y_terms: self
                .y_terms
                .iter()
                .map(|(&e, c)| (e, self.field.apply_automorphism(g, c)))
                .collect(),
        }
    }
}

/// Labeled vertices of the trunk of the minimal resolution graph: dead
/// ends `Sigma(i)` (0 <= i <= g), rupture points `Tau(i)` (1 <= i <= g),
/// and the k-th trunk vertex past the end (`Past(k)`, k >= 1), used for
/// divisorial valuations beyond the branch's own graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Vertex {
    Sigma(usize),
    Tau(usize),
    Past(usize),
}

/// Characteristic data of a branch: characteristic exponents, the gcd
/// chain, and the semigroup generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharData {
    /// `beta_0 = m < beta_1 < ... < beta_g`.
    pub char_exponents: Vec<usize>,
    /// `e_0 = m`, `e_i = gcd(e_{i-1}, beta_i)`; ends at `e_g = 1`.
    pub e: Vec<usize>,
    /// `n_i = e_{i-1} / e_i` for `1 <= i <= g` (so `n[i-1]`), each >= 2.
    pub n: Vec<usize>,
    /// Semigroup generators `sg_gens[i] = beta-bar_i`.
    pub sg_gens: Vec<usize>,
}

impl CharData {
    /// The number of Puiseux pairs.
    pub fn g(&self) -> usize {
        self.char_exponents.len() - 1
    }

    /// m-value of a trunk vertex of the branch's own graph; `Past(k)` is
    /// the k-th step beyond the last vertex (`e_g = 1` there, so each step
    /// adds 1).
    pub fn m_value(&self, vertex: Vertex) -> Option<usize> {
        let g = self.g();
        match vertex {
            Vertex::Sigma(i) if i <= g => Some(self.sg_gens[i]),
            Vertex::Tau(i) if 1 <= i && i <= g => Some(self.n[i - 1] * self.sg_gens[i]),
            Vertex::Past(k) if k >= 1 => {
                let base = if g == 0 {
                    self.sg_gens[0]
                } else {
                    self.n[g - 1] * self.sg_gens[g]
                };
                Some(base + k)
            }
            _ => None,
        }
    }
}

/// Characteristic exponents by scanning for gcd drops, then the standard
/// recursion for the semigroup generators.
pub fn char_data(b: &PuiseuxBranch) -> CharData {
    let m = b.m();
    let mut char_exponents = vec![m];
    let mut e = vec![m];
    let mut current = m;
    for (exp, _) in b.y_terms() {
        let next = num_integer::gcd(current, exp);
        if next < current {
            char_exponents.push(exp);
            e.push(next);
            current = next;
        }
    }
    debug_assert_eq!(current, 1, "primitivity guarantees the gcd chain ends at 1");
    let g = char_exponents.len() - 1;
    let n: Vec<usize> = (1..=g).map(|i| e[i - 1] / e[i]).collect();
    let mut sg_gens = vec![m];
    if g >= 1 {
        sg_gens.push(char_exponents[1]);
        for i in 1..g {
            let next = n[i - 1] * sg_gens[i] + char_exponents[i + 1] - char_exponents[i];
            sg_gens.push(next);
        }
    }
    CharData {
        char_exponents,
        e,
        n,
        sg_gens,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn branch_q(m: usize, terms: &[(usize, i64)]) -> PuiseuxBranch {
        let k = NumberField::rationals();
        PuiseuxBranch::new(
            k.clone(),
            m,
            terms.iter().map(|&(e, c)| (e, k.from_integer(c))),
        )
        .unwrap()
    }

    #[test]
    fn cusp_characteristic_data() {
        let d = char_data(&branch_q(2, &[(3, 1)]));
        assert_eq!(d.char_exponents, vec![2, 3]);
        assert_eq!(d.sg_gens, vec![2, 3]);
        assert_eq!(d.g(), 1);
        assert_eq!(d.m_value(Vertex::Sigma(0)), Some(2));
        assert_eq!(d.m_value(Vertex::Sigma(1)), Some(3));
        assert_eq!(d.m_value(Vertex::Tau(1)), Some(6));
        assert_eq!(d.m_value(Vertex::Tau(2)), None);
    }

    #[test]
    fn two_pair_branch_characteristic_data() {
        // x = tau^4, y = tau^6 + tau^7.
        let d = char_data(&branch_q(4, &[(6, 1), (7, 1)]));
        assert_eq!(d.char_exponents, vec![4, 6, 7]);
        assert_eq!(d.e, vec![4, 2, 1]);
        assert_eq!(d.n, vec![2, 2]);
        assert_eq!(d.sg_gens, vec![4, 6, 13]);
        assert_eq!(d.m_value(Vertex::Tau(1)), Some(12));
        assert_eq!(d.m_value(Vertex::Tau(2)), Some(26));
        assert_eq!(d.m_value(Vertex::Past(1)), Some(27));
    }

    #[test]
    fn smooth_branch_characteristic_data() {
        let d = char_data(&branch_q(1, &[]));
        assert_eq!(d.char_exponents, vec![1]);
        assert_eq!(d.sg_gens, vec![1]);
        assert_eq!(d.g(), 0);
        assert_eq!(d.m_value(Vertex::Sigma(0)), Some(1));
        assert_eq!(d.m_value(Vertex::Past(2)), Some(3));
    }

    #[test]
    fn non_characteristic_exponents_are_skipped() {
        // x = tau^4, y = tau^4 + tau^6 + tau^7: exponent 4 causes no gcd
        // drop, so the characteristic exponents are still (4, 6, 7).
        let d = char_data(&branch_q(4, &[(4, 1), (6, 1), (7, 1)]));
        assert_eq!(d.char_exponents, vec![4, 6, 7]);
        assert_eq!(d.sg_gens, vec![4, 6, 13]);
    }

    #[test]
    fn validation_rejects_bad_parametrizations() {
        let k = NumberField::rationals();
        // Not primitive.
        assert!(PuiseuxBranch::new(k.clone(), 2, vec![(4, k.from_integer(1))]).is_err());
        // Exponent below m.
        assert!(PuiseuxBranch::new(k.clone(), 3, vec![(2, k.from_integer(1))]).is_err());
        // Zero coefficient.
        assert!(PuiseuxBranch::new(k.clone(), 2, vec![(3, k.zero())]).is_err());
        // m = 0.
        assert!(PuiseuxBranch::new(k.clone(), 0, vec![]).is_err());
    }

    #[test]
    fn automorphism_acts_coefficientwise() {
        let k = NumberField::quadratic(2).unwrap();
        let b = PuiseuxBranch::new(k.clone(), 2, vec![(3, k.one()), (4, k.alpha())]).unwrap();
        let conj = b.apply_automorphism(1);
        assert_eq!(conj.y_coeff(3), Some(&k.one()));
        assert_eq!(conj.y_coeff(4), Some(&k.alpha().neg()));
    }
}
