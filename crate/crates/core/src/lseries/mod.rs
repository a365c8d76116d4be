//! Exact arithmetic in the value ring of Poincare series: integer
//! polynomials in the symbol `L` (the class of the affine line), truncated
//! power series in `t` over them, finite bivariate polynomials for the
//! two-valuation identity fixtures, and binomial-product representations
//! `prod (1 - L^ell t^m)^s`.

mod binomial;
mod bivar;
mod lpoly;
mod series;

pub use binomial::BinomialFactorization;
pub use bivar::{bivar_identity_check, BivarPolynomial};
pub use lpoly::LPolynomial;
pub use series::LSeries;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Int;

/// `1 + L + ... + L^{a-1}`, the generalized Euler characteristic of the
/// projectivization of an affine space of dimension `a`. The empty sum
/// (`a = 0`) is the zero polynomial.
pub fn geometric_sum(a: usize) -> LPolynomial {
    LPolynomial::from_coeffs(vec![Int::from(1); a])
}

/// Generalized Euler characteristic of a fibre of the extended semigroup by
/// inclusion-exclusion over the index subsets.
///
/// `dims` maps every subset of `{0, .., r-1}` (as a bitmask) to the
/// dimension of the corresponding jet quotient. Dimensions must be
/// non-increasing under inclusion of subsets.
pub fn chi_g_inclusion_exclusion(r: u32, dims: &BTreeMap<u32, usize>) -> Result<LPolynomial> {
    assert!(r < 31, "index set too large");
    let full: u32 = (1u32 << r) - 1;
    for mask in 0..=full {
        if !dims.contains_key(&mask) {
            return Err(Error::InvalidInput(format!(
                "dims missing subset {mask:#b} of the index set"
            )));
        }
    }
    // Monotonicity needs checking only across single-element extensions.
    for mask in 0..=full {
        for i in 0..r {
            let bit = 1u32 << i;
            if mask & bit == 0 {
                let bigger = mask | bit;
                if dims[&mask] < dims[&bigger] {
                    return Err(Error::NonMonotoneDims {
                        subset: mask,
                        superset: bigger,
                        inner: dims[&mask],
                        outer: dims[&bigger],
                    });
                }
            }
        }
    }
    let mut acc = LPolynomial::zero();
    for mask in 0..=full {
        let term = geometric_sum(dims[&mask]);
        if mask.count_ones() % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    Ok(acc)
}

/// Coefficientwise transform of a classical series into the generalized one:
/// each non-negative integer coefficient `a_v` becomes `1 + L + ... + L^{a_v-1}`.
///
/// Fails if some coefficient is negative or not constant in `L`.
pub fn coefficientwise_generalize(classical: &LSeries) -> Result<LSeries> {
    let mut coeffs = Vec::with_capacity(classical.order() + 1);
    for v in 0..=classical.order() {
        let c = classical.coeff(v);
        match c.as_constant() {
            Some(a) if !a.is_negative() => {
                let a: usize = a.try_into().map_err(|_| {
                    Error::ResourceLimit(format!("coefficient of t^{v} too large"))
                })?;
                coeffs.push(geometric_sum(a));
            }
            _ => return Err(Error::NotClassical(v, c.to_string())),
        }
    }
    Ok(LSeries::from_coeffs(classical.order(), coeffs))
}

/// Evaluate every coefficient at `L = value`.
pub fn specialize_l(series: &LSeries, value: &Int) -> LSeries {
    let coeffs = (0..=series.order())
        .map(|v| LPolynomial::constant(series.coeff(v).eval(value)))
        .collect();
    LSeries::from_coeffs(series.order(), coeffs)
}

/// Greedy lowest-degree peeling of a series with constant term 1 into a
/// binomial factorization whose expansion reproduces it modulo `t^{N+1}`.
///
/// At each step the extremal nonconstant term `c * L^ell * t^m` (lowest
/// `t`-degree, then lowest `L`-degree within that coefficient) is read off;
/// the factor `(1 - L^ell t^m)^{-c}` is recorded and divided out, which
/// removes exactly that term and touches only higher orders. The extremal
/// term strictly increases in `(m, ell)`, so the loop terminates with an
/// exact factorization of the truncation.
pub fn peel_binomial_factorization(series: &LSeries) -> Result<BinomialFactorization> {
    let c0 = series.coeff(0);
    if c0.as_constant().map(|c| c == &Int::from(1)) != Some(true) {
        return Err(Error::NonUnitConstantTerm(c0.to_string()));
    }
    let order = series.order();
    let mut rest = series.clone();
    let mut factors = BinomialFactorization::new();
    loop {
        let mut lowest = None;
        for v in 1..=order {
            if !rest.coeff(v).is_zero() {
                lowest = Some(v);
                break;
            }
        }
        let Some(m) = lowest else { break };
        let coeff = rest.coeff(m);
        let (ell, c) = coeff
            .coeffs()
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .expect("nonzero coefficient has a nonzero term");
        let c: i64 = (&c).try_into().map_err(|_| {
            Error::ResourceLimit(format!("peel multiplicity at t^{m} does not fit in i64"))
        })?;
        factors.push(ell, m, -c)?;
        // Divide by (1 - L^ell t^m)^{-c}, i.e. multiply by the factor to
        // the power c.
        rest = rest.mul_binomial_power(ell, m, c);
    }
    Ok(factors)
}
