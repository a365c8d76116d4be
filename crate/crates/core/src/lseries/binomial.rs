use std::collections::BTreeMap;
use std::fmt;

use super::LSeries;
use crate::error::{Error, Result};

/// Finite product `prod (1 - L^ell t^m)^s` with integer multiplicities.
///
/// Factors are keyed by `(ell, m)`, so no two factors share the same pair;
/// pushing an existing pair adds multiplicities (and drops the factor when
/// they cancel). Every `m` is positive, which keeps the constant term of
/// the expansion equal to 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BinomialFactorization {
    factors: BTreeMap<(usize, usize), i64>,
}

impl BinomialFactorization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `(1 - L^ell t^m)^s` to the product.
    pub fn push(&mut self, ell: usize, m: usize, s: i64) -> Result<()> {
        if m == 0 {
            return Err(Error::InvalidInput(
                "binomial factor must have positive t-exponent".into(),
            ));
        }
        if s == 0 {
            return Ok(());
        }
        let entry = self.factors.entry((ell, m)).or_insert(0);
        *entry += s;
        if *entry == 0 {
            self.factors.remove(&(ell, m));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Iterate `(ell, m, s)` in `(ell, m)` order.
    pub fn factors(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.factors.iter().map(|(&(ell, m), &s)| (ell, m, s))
    }

    /// Exact expansion modulo `t^{N+1}`.
    pub fn expand(&self, order: usize) -> Result<LSeries> {
        let mut acc = LSeries::one(order);
        for (&(ell, m), &s) in &self.factors {
            acc = acc.mul_binomial_power(ell, m, s);
        }
        Ok(acc)
    }

    /// Copy with every `L`-exponent set to zero (the classical shadow).
    pub fn forget_l(&self) -> Self {
        let mut out = Self::new();
        for (&(_, m), &s) in &self.factors {
            out.push(0, m, s).expect("m positive by invariant");
        }
        out
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, ell: usize, m: usize, s: i64) -> fmt::Result {
    write!(f, "(1 - ")?;
    match ell {
        0 => {}
        1 => write!(f, "L*")?,
        _ => write!(f, "L^{ell}*")?,
    }
    write!(f, "t^{m})")?;
    if s.unsigned_abs() > 1 {
        write!(f, "^{}", s.unsigned_abs())?;
    }
    Ok(())
}

impl fmt::Display for BinomialFactorization {
    /// Numerator / denominator form, e.g.
    /// `(1 - t^12)(1 - t^26) / ((1 - t^4)(1 - t^6)(1 - t^13)(1 - L*t^26))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<_> = self.factors().filter(|&(_, _, s)| s > 0).collect();
        let den: Vec<_> = self.factors().filter(|&(_, _, s)| s < 0).collect();
        if num.is_empty() {
            write!(f, "1")?;
        } else {
            for &(ell, m, s) in &num {
                write_factor(f, ell, m, s)?;
            }
        }
        if !den.is_empty() {
            write!(f, " / ")?;
            let parens = den.len() > 1;
            if parens {
                write!(f, "(")?;
            }
            for &(ell, m, s) in &den {
                write_factor(f, ell, m, s)?;
            }
            if parens {
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}
