use std::fmt;

use num_traits::Zero;

use crate::Int;

/// Integer-coefficient polynomial in the symbol `L`.
///
/// Coefficient of `L^k` is `coeffs[k]`; the highest-index coefficient is
/// nonzero unless the polynomial is zero (empty coefficient vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LPolynomial {
    coeffs: Vec<Int>,
}

impl LPolynomial {
    pub fn zero() -> Self {
        LPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Int::from(1))
    }

    pub fn constant(c: Int) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * L^k`.
    pub fn monomial(c: Int, k: usize) -> Self {
        let mut coeffs = vec![Int::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        LPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `L`, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Int {
        self.coeffs.get(k).cloned().unwrap_or_else(Int::zero)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// The constant value if the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<&Int> {
        static ZERO: std::sync::OnceLock<Int> = std::sync::OnceLock::new();
        match self.coeffs.len() {
            0 => Some(ZERO.get_or_init(Int::zero)),
            1 => Some(&self.coeffs[0]),
            _ => None,
        }
    }

    /// `(c, ell)` if the polynomial is a single term `c * L^ell`.
    pub fn as_monomial(&self) -> Option<(&Int, usize)> {
        let ell = self.coeffs.len().checked_sub(1)?;
        if self.coeffs[..ell].iter().all(Zero::is_zero) {
            Some((&self.coeffs[ell], ell))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        LPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Evaluate at `L = value`.
    pub fn eval(&self, value: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * value + c;
        }
        acc
    }

    /// Multiply by `L^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Int::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        LPolynomial { coeffs }
    }
}

impl fmt::Display for LPolynomial {
    /// Renders as `c0 + c1*L + c2*L^2 + ...` with zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                match k {
                    0 => write!(f, "{c}")?,
                    _ => {
                        if c == &Int::from(1) {
                            // nothing
                        } else if c == &Int::from(-1) {
                            write!(f, "-")?;
                        } else {
                            write!(f, "{c}*")?;
                        }
                        if k == 1 {
                            write!(f, "L")?;
                        } else {
                            write!(f, "L^{k}")?;
                        }
                    }
                }
            } else {
                let (sign, abs) = if c < &Int::zero() {
                    ("-", -c)
                } else {
                    ("+", c.clone())
                };
                write!(f, " {sign} ")?;
                match k {
                    0 => write!(f, "{abs}")?,
                    _ => {
                        if abs != Int::from(1) {
                            write!(f, "{abs}*")?;
                        }
                        if k == 1 {
                            write!(f, "L")?;
                        } else {
                            write!(f, "L^{k}")?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
