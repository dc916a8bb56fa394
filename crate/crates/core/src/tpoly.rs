//! Exact polynomials in the formal deformation parameter t.

use crate::scalar::{Field, Scalar};
use std::fmt;

/// A polynomial in t with [`Scalar`] coefficients, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl TPoly {
    pub fn zero(field: Field) -> TPoly {
        TPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Scalar) -> TPoly {
        let field = c.field();
        TPoly::from_coeffs(field, vec![c])
    }

    /// The monomial t.
    pub fn t(field: Field) -> TPoly {
        TPoly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn from_coeffs(field: Field, mut coeffs: Vec<Scalar>) -> TPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        for c in &coeffs {
            assert_eq!(c.field(), field, "mixed fields in one expression");
        }
        TPoly { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of t^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        TPoly::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        TPoly::from_coeffs(self.field, coeffs)
    }

    pub fn neg(&self) -> TPoly {
        TPoly::from_coeffs(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TPoly::from_coeffs(self.field, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> TPoly {
        TPoly::from_coeffs(self.field, self.coeffs.iter().map(|a| c * a).collect())
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}
