//! Dense integer polynomials in one variable `s`, used for K-polynomials and
//! Hilbert-series numerators.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer polynomial `Σ coeffs[i] s^i` with trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KPolynomial {
    coeffs: Vec<BigInt>,
}

impl KPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact quotient by `1 - s`, or `None` if `1 - s` does not divide.
    ///
    /// The quotient coefficients are the partial sums of the dividend; the
    /// remainder is the full sum, i.e. the value at `s = 1`.
    pub fn div_one_minus_s(&self) -> Option<Self> {
        if !self.eval_at_one().is_zero() {
            return None;
        }
        let mut acc = BigInt::zero();
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for c in self.coeffs.iter().take(self.coeffs.len().saturating_sub(1)) {
            acc += c;
            out.push(acc.clone());
        }
        Some(Self::new(out))
    }

    /// Exact quotient by `(1 - s)^power`.
    pub fn div_one_minus_s_pow(&self, power: usize) -> Option<Self> {
        let mut q = self.clone();
        for _ in 0..power {
            q = q.div_one_minus_s()?;
        }
        Some(q)
    }

    /// Order of vanishing at `s = 1`; `None` for the zero polynomial.
    pub fn order_at_one(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut q = self.clone();
        let mut order = 0;
        while let Some(next) = q.div_one_minus_s() {
            q = next;
            order += 1;
        }
        Some(order)
    }
}

impl fmt::Display for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("s")?,
                _ => write!(f, "s^{i}")?,
            }
        }
        Ok(())
    }
}
