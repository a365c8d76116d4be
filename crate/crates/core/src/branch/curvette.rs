use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numfield::FieldElement;
use crate::Rat;

use super::{char_data, intersection_multiplicity, CharData, PuiseuxBranch, Vertex};

/// Bound on the deterministic generic-coefficient candidates 1, 2, 3, ...
/// tried before giving up; genericity failures are measure-zero, so a
/// handful of retries is already generous.
const MAX_GENERIC_TRIES: i64 = 40;

/// Expected intersection number of the branch with a curvette at `vertex`
/// (the vertex's m-value), or an error for a vertex outside the graph.
fn expected_m(cd: &CharData, vertex: Vertex) -> Result<usize> {
    cd.m_value(vertex).ok_or_else(|| {
        Error::GraphValidation(format!(
            "vertex {vertex:?} is outside the branch's resolution graph"
        ))
    })
}

/// A branch whose strict transform meets the exceptional component of
/// `vertex` transversally, built as a truncation of `b`'s parametrization
/// (primitivized) with, where needed, a generic last coefficient from the
/// deterministic sequence 1, 2, 3, ...
///
/// Every candidate is certified by the intersection oracle: the
/// intersection number with `b` must equal the vertex's m-value, so a
/// non-generic choice is detected and retried rather than silently kept.
pub fn curvette_at(b: &PuiseuxBranch, vertex: Vertex) -> Result<PuiseuxBranch> {
    let cd = char_data(b);
    let expected = expected_m(&cd, vertex)?;
    let field = b.field().clone();
    let g = cd.g();
    match vertex {
        Vertex::Sigma(0) => try_generic(b, expected, |q| {
            PuiseuxBranch::new(field.clone(), 1, vec![(1, q)])
        }),
        Vertex::Sigma(i) => {
            // Pure truncation below beta_i, primitivized by e_{i-1}.
            let beta_i = cd.char_exponents[i];
            let scale = cd.e[i - 1];
            let terms: Vec<(usize, FieldElement)> = b
                .y_terms()
                .filter(|&(e, _)| e < beta_i)
                .map(|(e, c)| (e / scale, c.clone()))
                .collect();
            let curvette = PuiseuxBranch::new(field, b.m() / scale, terms)?;
            let got = intersection_multiplicity(b, &curvette)?;
            if got != expected {
                return Err(Error::Internal(format!(
                    "dead-end curvette at {vertex:?} meets the branch with \
                     multiplicity {got}, expected {expected}"
                )));
            }
            Ok(curvette)
        }
        Vertex::Tau(i) => {
            let beta_i = cd.char_exponents[i];
            let scale = cd.e[i];
            let lead = b
                .y_coeff(beta_i)
                .expect("characteristic exponent carries a coefficient")
                .clone();
            try_generic(b, expected, |q| {
                let mut terms: Vec<(usize, FieldElement)> = b
                    .y_terms()
                    .filter(|&(e, _)| e < beta_i)
                    .map(|(e, c)| (e / scale, c.clone()))
                    .collect();
                terms.push((beta_i / scale, lead.mul(&q)));
                PuiseuxBranch::new(field.clone(), b.m() / scale, terms)
            })
        }
        Vertex::Past(k) => {
            debug_assert!(k >= 1);
            // e_g = 1: trunk steps past the last vertex append one more
            // exponent each.
            let cutoff = if g == 0 { 1 + k } else { cd.char_exponents[g] + k };
            try_generic(b, expected, |q| {
                let mut terms: Vec<(usize, FieldElement)> = b
                    .y_terms()
                    .filter(|&(e, _)| e < cutoff)
                    .map(|(e, c)| (e, c.clone()))
                    .collect();
                terms.push((cutoff, q));
                PuiseuxBranch::new(field.clone(), b.m(), terms)
            })
        }
    }
}

fn try_generic(
    b: &PuiseuxBranch,
    expected: usize,
    build: impl Fn(FieldElement) -> Result<PuiseuxBranch>,
) -> Result<PuiseuxBranch> {
    for attempt in 1..=MAX_GENERIC_TRIES {
        let q = b
            .field()
            .from_rational(Rat::from_integer(attempt.into()));
        let curvette = build(q)?;
        match intersection_multiplicity(b, &curvette) {
            Ok(got) if got == expected => return Ok(curvette),
            // Wrong multiplicity or the candidate coincides with the
            // branch itself: the coefficient was not generic, try the next.
            Ok(_) | Err(Error::BranchValidation(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityFailure(
        MAX_GENERIC_TRIES as usize,
        format!("no curvette candidate met the branch with multiplicity {expected}"),
    ))
}

/// m-values of all dead ends and rupture vertices, each certified against
/// the intersection oracle through curvette construction.
pub fn m_values(b: &PuiseuxBranch) -> Result<BTreeMap<Vertex, usize>> {
    let cd = char_data(b);
    let g = cd.g();
    let mut out = BTreeMap::new();
    for i in 0..=g {
        let v = Vertex::Sigma(i);
        curvette_at(b, v)?;
        out.insert(v, expected_m(&cd, v)?);
    }
    for i in 1..=g {
        let v = Vertex::Tau(i);
        curvette_at(b, v)?;
        out.insert(v, expected_m(&cd, v)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;

    fn branch_q(m: usize, terms: &[(usize, i64)]) -> PuiseuxBranch {
        let k = NumberField::rationals();
        PuiseuxBranch::new(
            k.clone(),
            m,
            terms.iter().map(|&(e, c)| (e, k.from_integer(c))),
        )
        .unwrap()
    }

    #[test]
    fn cusp_m_values() {
        let vals = m_values(&branch_q(2, &[(3, 1)])).unwrap();
        let expected: BTreeMap<Vertex, usize> = [
            (Vertex::Sigma(0), 2),
            (Vertex::Sigma(1), 3),
            (Vertex::Tau(1), 6),
        ]
        .into();
        assert_eq!(vals, expected);
    }

    #[test]
    fn two_pair_branch_m_values() {
        let vals = m_values(&branch_q(4, &[(6, 1), (7, 1)])).unwrap();
        let expected: BTreeMap<Vertex, usize> = [
            (Vertex::Sigma(0), 4),
            (Vertex::Sigma(1), 6),
            (Vertex::Sigma(2), 13),
            (Vertex::Tau(1), 12),
            (Vertex::Tau(2), 26),
        ]
        .into();
        assert_eq!(vals, expected);
    }

    #[test]
    fn smooth_branch_m_values() {
        let vals = m_values(&branch_q(1, &[])).unwrap();
        assert_eq!(vals, [(Vertex::Sigma(0), 1)].into());
    }

    #[test]
    fn trunk_vertices_past_the_graph() {
        // One step past the cusp's rupture vertex: m-value 7.
        let cusp = branch_q(2, &[(3, 1)]);
        let c = curvette_at(&cusp, Vertex::Past(1)).unwrap();
        assert_eq!(intersection_multiplicity(&cusp, &c).unwrap(), 7);

        // One step past tau_2 on the <4,6,13> branch: m-value 27.
        let b = branch_q(4, &[(6, 1), (7, 1)]);
        let c = curvette_at(&b, Vertex::Past(1)).unwrap();
        assert_eq!(intersection_multiplicity(&b, &c).unwrap(), 27);

        // Two steps past sigma_0 on a smooth branch: m-value 3.
        let line = branch_q(1, &[]);
        let c = curvette_at(&line, Vertex::Past(2)).unwrap();
        assert_eq!(intersection_multiplicity(&line, &c).unwrap(), 3);
    }

    #[test]
    fn curvette_rejects_vertices_outside_the_graph() {
        let cusp = branch_q(2, &[(3, 1)]);
        assert!(curvette_at(&cusp, Vertex::Tau(2)).is_err());
        assert!(curvette_at(&cusp, Vertex::Sigma(5)).is_err());
        assert!(curvette_at(&cusp, Vertex::Past(0)).is_err());
    }

    #[test]
    fn generic_coefficient_skips_the_branch_tangent() {
        // For x = tau, y = 1*tau + tau^2 the first candidate q = 1 gives a
        // curvette with too-high contact; the retry must land on q = 2.
        let b = branch_q(1, &[(1, 1), (2, 1)]);
        let c = curvette_at(&b, Vertex::Sigma(0)).unwrap();
        assert_eq!(intersection_multiplicity(&b, &c).unwrap(), 1);
        assert_eq!(c.y_coeff(1), Some(&NumberField::rationals().from_integer(2)));
    }
}
