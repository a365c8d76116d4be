//! Independent ground truth: brute-force jet dimensions `a_v` computed by
//! exact rational linear algebra on substituted monomials, for curve
//! valuations directly and for divisorial valuations through a curvette
//! family with a symbolic generic coefficient.
//!
//! Invariants:
//! * the base field of the germs is the rationals; coefficients living in
//!   the branch's number field are flattened to rational coordinate blocks,
//! * the monomial set `x^a y^b` with `a*nu(x) + b*nu(y) <= v_max` realizes
//!   every valuation `<= v_max` (any germ's terms of larger value cannot
//!   change tau-coefficients up to `v_max`),
//! * a symbolic-parameter computation is accepted only after two rational
//!   specializations of the parameter reproduce it.

use num_traits::Zero;

use crate::branch::{char_data, Coeff, PuiseuxBranch, TauPoly};
use crate::error::{Error, Result};
use crate::linalg::{rank_profile, SparseRow};
use crate::lseries::{geometric_sum, LSeries};
use crate::numfield::{CPoly, FieldElement};
use crate::Rat;

/// Ceiling on flattened matrix entries (rows x columns) before a request
/// is refused instead of exhausting memory.
const MAX_MATRIX_ENTRIES: usize = 16_000_000;

/// Pairs of rational parameter values tried when certifying a symbolic
/// divisorial computation.
const MAX_CERTIFY_TRIES: i64 = 20;

/// Drop tau-terms above the probing cap; powers stay small.
fn truncate_poly<T: Coeff + Clone>(p: &TauPoly<T>, cap: usize) -> TauPoly<T> {
    TauPoly::from_terms(
        p.field(),
        p.terms()
            .take_while(|&(e, _)| e <= cap)
            .map(|(e, c)| (e, c.clone())),
    )
}

/// Monomials `x^a y^b` of valuation `<= v_max`, substituted along the
/// parametrization and truncated, in a deterministic order.
fn substituted_monomials<T: Coeff + Clone>(
    m: usize,
    y: &TauPoly<T>,
    one: &T,
    v_max: usize,
) -> Vec<TauPoly<T>> {
    let ord_y = y.ord();
    let mut rows = Vec::new();
    let mut y_pow = TauPoly::monomial(y.field(), 0, one.clone());
    let mut b = 0;
    loop {
        let base = match (b, ord_y) {
            (0, _) => 0,
            // y vanishes identically: monomials with b > 0 contribute
            // nothing to any finite valuation.
            (_, None) => break,
            (_, Some(o)) => b * o,
        };
        if base > v_max {
            break;
        }
        let mut a = 0;
        while a * m + base <= v_max {
            // x^a y^b = tau^(a m) * y(tau)^b.
            let shift = TauPoly::monomial(y.field(), a * m, one.clone());
            rows.push(truncate_poly(&shift.mul(&y_pow), v_max));
            a += 1;
        }
        b += 1;
        y_pow = truncate_poly(&y_pow.mul(y), v_max);
    }
    rows
}

/// Per-value jet dimensions from flattened rational rows: `a_v` is the
/// number of elimination pivots falling in the `tau^v` coordinate block.
/// `flatten` maps a coefficient to its rational coordinates; `width` is the
/// block width.
fn dims_from_rows<T: Coeff>(
    rows: &[TauPoly<T>],
    v_max: usize,
    width: usize,
    flatten: impl Fn(&T) -> Vec<Rat>,
) -> Result<Vec<usize>> {
    let columns = (v_max + 1) * width;
    if rows.len().saturating_mul(columns) > MAX_MATRIX_ENTRIES {
        return Err(Error::ResourceLimit(format!(
            "jet matrix of {} x {columns} entries exceeds the budget",
            rows.len()
        )));
    }
    let sparse = rows.iter().map(|p| {
        let mut row = SparseRow::new();
        for (e, c) in p.terms() {
            debug_assert!(e <= v_max);
            for (k, q) in flatten(c).into_iter().enumerate() {
                if !q.is_zero() {
                    row.insert(e * width + k, q);
                }
            }
        }
        row
    });
    let mut dims = vec![0usize; v_max + 1];
    for col in rank_profile(sparse) {
        dims[col / width] += 1;
    }
    Ok(dims)
}

/// `a_v = dim (J(v) / J(v+1))` for the curve valuation of `b`, for
/// `v = 0..v_max`, over base field Q.
pub fn curve_dims(b: &PuiseuxBranch, v_max: usize) -> Result<Vec<usize>> {
    let field = b.field();
    let width = field.degree();
    let rows = substituted_monomials(b.m(), &b.y_tau(), &field.one(), v_max);
    dims_from_rows(&rows, v_max, width, |c: &FieldElement| {
        c.as_q_vector().to_vec()
    })
}

/// The curvette family realizing the divisorial valuation of m-value
/// `m_delta` on the trunk of `b`: the branch's own terms below the cutoff
/// exponent plus `coeff` at the cutoff.
///
/// The cutoff is resolved from `m_delta`: the last rupture vertex when
/// `m_delta` equals its m-value, or `k` further steps along the trunk for
/// `k = m_delta - (that m-value)`.
fn divisorial_family<T: Coeff + Clone>(
    b: &PuiseuxBranch,
    m_delta: usize,
    coeff: T,
    embed: impl Fn(&FieldElement) -> T,
) -> Result<TauPoly<T>> {
    let cd = char_data(b);
    let g = cd.g();
    let trunk_base = cd
        .m_value(if g == 0 {
            crate::branch::Vertex::Sigma(0)
        } else {
            crate::branch::Vertex::Tau(g)
        })
        .expect("base trunk vertex is in the graph");
    if m_delta < trunk_base {
        return Err(Error::InvalidInput(format!(
            "M_delta = {m_delta} is below the trunk (first trunk m-value is {trunk_base})"
        )));
    }
    let cutoff = if g == 0 {
        // Smooth branch: the trunk starts at m-value 1 with cutoff 1.
        m_delta
    } else {
        cd.char_exponents[g] + (m_delta - trunk_base)
    };
    let mut family = TauPoly::zero(b.field());
    for (e, c) in b.y_terms() {
        if e >= cutoff {
            break;
        }
        family.add_term(e, embed(c));
    }
    family.add_term(cutoff, coeff);
    Ok(family)
}

/// `a_v` for the divisorial valuation of m-value `m_delta` on the trunk of
/// `b`, for `v = 0..v_max`.
///
/// The generic curvette coefficient is carried symbolically; each
/// coordinate of a matrix entry is a rational polynomial in the parameter
/// and is flattened into one rational column per parameter power, so that a
/// germ drops out of a jet block exactly when its substitution vanishes
/// identically in the parameter, i.e. for generic rational values. The
/// symbolic answer is then certified against two rational specializations.
pub fn divisorial_dims(b: &PuiseuxBranch, m_delta: usize, v_max: usize) -> Result<Vec<usize>> {
    let field = b.field();
    let deg = field.degree();
    let family = divisorial_family(b, m_delta, CPoly::c(field), |c| CPoly::constant(c.clone()))?;
    let rows = substituted_monomials(b.m(), &family, &CPoly::constant(field.one()), v_max);
    // Every entry is a polynomial in the parameter of degree at most the
    // largest y-power, bounded by v_max.
    let c_cap = rows
        .iter()
        .flat_map(|p| p.terms().filter_map(|(_, c)| c.degree()))
        .max()
        .unwrap_or(0);
    let width = deg * (c_cap + 1);
    let symbolic = dims_from_rows(&rows, v_max, width, |c: &CPoly| {
        let mut flat = Vec::with_capacity(width);
        for j in 0..=c_cap {
            flat.extend(c.coeff(j).as_q_vector().iter().cloned());
        }
        flat
    })?;

    // Certification: the generic tau-order of every substituted monomial
    // (the lowest exponent whose coefficient is a nonzero polynomial in the
    // parameter) must be realized by two rational parameter values; values
    // hitting a root of some coefficient are skipped.
    let generic_orders: Vec<Option<usize>> = rows.iter().map(TauPoly::ord).collect();
    let mut confirmed = 0;
    'values: for q in 1..=MAX_CERTIFY_TRIES {
        let q = Rat::from_integer(q.into());
        for (row, expected) in rows.iter().zip(&generic_orders) {
            let evaluated =
                TauPoly::from_terms(field, row.terms().map(|(e, c)| (e, c.eval(&q))));
            if evaluated.ord() != *expected {
                continue 'values;
            }
        }
        confirmed += 1;
        if confirmed == 2 {
            return Ok(symbolic);
        }
    }
    Err(Error::GenericityFailure(
        MAX_CERTIFY_TRIES as usize,
        format!("divisorial dimensions at M_delta = {m_delta} failed rational certification"),
    ))
}

/// The definitional generalized series: each dimension becomes a geometric
/// sum in `L`.
pub fn oracle_generalized(dims: &[usize]) -> LSeries {
    let order = dims.len().saturating_sub(1);
    LSeries::from_coeffs(order, dims.iter().map(|&a| geometric_sum(a)).collect())
}

/// The classical series with integer coefficients `a_v`.
pub fn oracle_classical(dims: &[usize]) -> LSeries {
    let order = dims.len().saturating_sub(1);
    LSeries::from_coeffs(
        order,
        dims.iter()
            .map(|&a| crate::lseries::LPolynomial::constant((a as i64).into()))
            .collect(),
    )
}

/// The value set `{v : a_v > 0}` must be closed under addition inside the
/// probed window (it is the value semigroup of the curve valuation).
pub fn check_semigroup_closure(dims: &[usize]) -> Result<()> {
    let values: Vec<usize> = (0..dims.len()).filter(|&v| dims[v] > 0).collect();
    for &v in &values {
        for &w in &values {
            if v + w < dims.len() && dims[v + w] == 0 {
                return Err(Error::Internal(format!(
                    "value set is not additively closed: {v} + {w} is missing"
                )));
            }
        }
    }
    Ok(())
}
