//! Polynomials in `q` with nonnegative integer coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

/// `coeffs[d]` is the coefficient of `q^d`. Trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<u64>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![1])
    }

    /// `Σ q^{e}` over the given exponents.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut coeffs = Vec::new();
        for e in exponents {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] += 1;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval_at_one(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// `self + q^shift · other`.
    fn add_shifted(&self, other: &Self, shift: usize) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len() + shift);
        let mut out = vec![0; len];
        for (d, c) in self.coeffs.iter().enumerate() {
            out[d] += c;
        }
        for (d, c) in other.coeffs.iter().enumerate() {
            out[d + shift] += c;
        }
        Self::from_coeffs(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "q")?,
                (1, c) => write!(f, "{c}q")?,
                (d, 1) => write!(f, "q^{d}")?,
                (d, c) => write!(f, "{c}q^{d}")?,
            }
        }
        Ok(())
    }
}

/// The Gaussian binomial `[n choose k]_q`, by the recurrence
/// `[n, k] = [n−1, k−1] + q^k [n−1, k]`.
pub fn gaussian_binomial(n: usize, k: usize) -> IntPolynomial {
    if k > n {
        return IntPolynomial::default();
    }
    // row[j] = [i choose j]_q
    let mut row = vec![IntPolynomial::one()];
    for i in 1..=n {
        let mut next = Vec::with_capacity(i + 1);
        for j in 0..=i {
            let left = if j > 0 {
                row[j - 1].clone()
            } else {
                IntPolynomial::default()
            };
            let right = row.get(j).cloned().unwrap_or_default();
            next.push(left.add_shifted(&right, j));
        }
        row = next;
    }
    row.swap_remove(k)
}
