use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::bareiss_determinant;
use crate::numfield::{FieldElement, NumberField};
use crate::Rat;

use super::{PuiseuxBranch, TauPoly};

/// `e^k` for a signed exponent; `e` must be nonzero when `k < 0`.
fn fe_pow(e: &FieldElement, k: i64) -> FieldElement {
    let base = if k < 0 {
        e.inverse().expect("negative power of zero")
    } else {
        e.clone()
    };
    let mut acc = e.field().one();
    for _ in 0..k.unsigned_abs() {
        acc = acc.mul(&base);
    }
    acc
}

/// Extended gcd on positive integers: `(g, x, y)` with `x*a + y*b = g`.
fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a, 1, 0);
    }
    let (g, x, y) = egcd(b, a % b);
    (g, y, x - (a / b) * y)
}

/// First exponent at which two coefficient sequences must disagree, for
/// every reparametrization `tau -> zeta*tau` with `zeta^modulus = 1`;
/// `None` when some `zeta` makes them agree everywhere (same branch).
///
/// `zeta` is never constructed: the constraints `zeta^e = r_e` accumulate
/// as a single congruence `zeta^g = u`, merged by the extended gcd, and
/// solvability of a new constraint is the identity `u^(e/d) = r^(g/d)`
/// with `d = gcd(g, e)`. Roots of unity outside the coefficient field are
/// thereby handled without ever adjoining them.
fn first_disagreement(
    field: &NumberField,
    modulus: usize,
    t1: &BTreeMap<usize, FieldElement>,
    t2: &BTreeMap<usize, FieldElement>,
) -> Option<usize> {
    let mut exponents: Vec<usize> = t1.keys().chain(t2.keys()).copied().collect();
    exponents.sort_unstable();
    exponents.dedup();
    let mut g = modulus as i64;
    let mut u = field.one();
    for &e in &exponents {
        let (c1, c2) = (t1.get(&e), t2.get(&e));
        let (c1, c2) = match (c1, c2) {
            (Some(c1), Some(c2)) => (c1, c2),
            _ => return Some(e),
        };
        // Agreement at e needs zeta^e = c2/c1.
        let r = c2.div(c1).expect("branch coefficients are nonzero");
        let (d, x, y) = egcd(g, e as i64);
        if fe_pow(&u, e as i64 / d) != fe_pow(&r, g / d) {
            return Some(e);
        }
        u = fe_pow(&u, x).mul(&fe_pow(&r, y));
        g = d;
    }
    None
}

/// First tau-exponent (in the shared parametrization) where two branches
/// with the same multiplicity separate; `None` if they are the same branch.
pub fn separation_exponent(b1: &PuiseuxBranch, b2: &PuiseuxBranch) -> Result<Option<usize>> {
    if b1.m() != b2.m() {
        return Err(Error::BranchValidation(
            "separation exponent needs equal multiplicities; use contact_order".into(),
        ));
    }
    let t1: BTreeMap<usize, FieldElement> = b1.y_terms().map(|(e, c)| (e, c.clone())).collect();
    let t2: BTreeMap<usize, FieldElement> = b2.y_terms().map(|(e, c)| (e, c.clone())).collect();
    Ok(first_disagreement(b1.field(), b1.m(), &t1, &t2))
}

/// Coincidence exponent of two branches measured in x-units (the exponent
/// divided by the common ramification); `None` means the branches are
/// identical (+infinity).
pub fn contact_order(b1: &PuiseuxBranch, b2: &PuiseuxBranch) -> Option<Rat> {
    let l = num_integer::lcm(b1.m(), b2.m());
    let scale = |b: &PuiseuxBranch| -> BTreeMap<usize, FieldElement> {
        let f = l / b.m();
        b.y_terms().map(|(e, c)| (e * f, c.clone())).collect()
    };
    let (t1, t2) = (scale(b1), scale(b2));
    first_disagreement(b1.field(), l, &t1, &t2)
        .map(|e| Rat::new((e as i64).into(), (l as i64).into()))
}

/// Intersection multiplicity `b1 . b2` as `ord_tau` of the implicit
/// equation of `b2` evaluated on `b1`'s parametrization.
///
/// The implicitization is never expanded symbolically: the resultant in `s`
/// of `s^(m2) - x1(tau)` and `y1(tau) - y2(s)` is taken directly over
/// `K[tau]` by fraction-free Bareiss elimination. Both inputs are finite
/// polynomials, so the result is exact; a zero resultant means the two
/// parametrizations define the same branch.
pub fn intersection_multiplicity(b1: &PuiseuxBranch, b2: &PuiseuxBranch) -> Result<usize> {
    let field = b1.field();
    if b2.field() != field {
        return Err(Error::BranchValidation(
            "intersection of branches over different fields".into(),
        ));
    }
    let zero = || TauPoly::zero(field);
    let p = b2.m();
    // Coefficients of A(s) = s^p - x1(tau), descending in s.
    let mut a = vec![zero(); p + 1];
    a[0] = TauPoly::one(field);
    a[p] = b1.x_tau().neg();
    // Coefficients of B(s) = y1(tau) - y2(s), descending in s.
    let q = b2.y_terms().map(|(e, _)| e).max().unwrap_or(0);
    let mut b = vec![zero(); q + 1];
    b[q] = b1.y_tau();
    for (e, c) in b2.y_terms() {
        b[q - e] = TauPoly::monomial(field, 0, c.neg());
    }
    let resultant = if q == 0 {
        // B is constant in s: Res(A, B) = B^(deg A).
        let mut acc = TauPoly::one(field);
        for _ in 0..p {
            acc = acc.mul(&b[0]);
        }
        acc
    } else {
        let n = p + q;
        let mut m = vec![vec![zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate().take(q) {
            row[i..=i + p].clone_from_slice(&a);
        }
        for (i, row) in m.iter_mut().enumerate().skip(q) {
            let i = i - q;
            row[i..=i + q].clone_from_slice(&b);
        }
        bareiss_determinant(m)
    };
    match resultant.ord() {
        None => Err(Error::BranchValidation(
            "intersection multiplicity of a branch with itself is infinite".into(),
        )),
        Some(v) => Ok(v),
    }
}
