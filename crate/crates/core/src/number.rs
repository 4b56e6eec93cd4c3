use std::fmt;
use std::sync::Arc;

use crate::algebra::{basis_label, same_algebra, Algebra};
use crate::error::{Error, Result};

/// A hypercomplex number `p_0 + p_1 i_1 + ... + p_n i_n` bound to its algebra.
#[derive(Clone)]
pub struct HNumber {
    algebra: Algebra,
    coeffs: Vec<f64>,
}

impl HNumber {
    pub fn new(algebra: &Algebra, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: coeffs.len(),
            });
        }
        Ok(Self {
            algebra: Arc::clone(algebra),
            coeffs,
        })
    }

    pub fn zero(algebra: &Algebra) -> Self {
        Self {
            algebra: Arc::clone(algebra),
            coeffs: vec![0.0; algebra.dim()],
        }
    }

    pub fn one(algebra: &Algebra) -> Self {
        Self::real(algebra, 1.0)
    }

    pub fn real(algebra: &Algebra, value: f64) -> Self {
        let mut n = Self::zero(algebra);
        n.coeffs[0] = value;
        n
    }

    /// Basis element `e_k` (`e_0 = 1`).
    pub fn basis(algebra: &Algebra, k: usize) -> Result<Self> {
        if k >= algebra.dim() {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: algebra.dim(),
            });
        }
        let mut n = Self::zero(algebra);
        n.coeffs[k] = 1.0;
        Ok(n)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Real part `p_0`.
    pub fn re(&self) -> f64 {
        self.coeffs[0]
    }

    /// Vector part `p_1 i_1 + ... + p_n i_n`.
    pub fn vector_part(&self) -> HNumber {
        let mut v = self.clone();
        v.coeffs[0] = 0.0;
        v
    }

    /// Euclidean norm of the coefficient vector.
    pub fn abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub(crate) fn ensure_same(&self, other: &HNumber) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch {
                left: self.algebra.name().to_string(),
                right: other.algebra.name().to_string(),
            })
        }
    }

    pub fn add(&self, other: &HNumber) -> Result<HNumber> {
        self.ensure_same(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &HNumber) -> Result<HNumber> {
        self.ensure_same(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, alpha: f64) -> HNumber {
        HNumber {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(|c| alpha * c).collect(),
        }
    }

    /// Product through the structure constants of the shared algebra.
    pub fn mul(&self, other: &HNumber) -> Result<HNumber> {
        self.ensure_same(other)?;
        let mut out = vec![0.0; self.dim()];
        self.algebra.mul_into(&self.coeffs, &other.coeffs, &mut out);
        Ok(HNumber {
            algebra: Arc::clone(&self.algebra),
            coeffs: out,
        })
    }

    fn zip_with(&self, other: &HNumber, f: impl Fn(f64, f64) -> f64) -> HNumber {
        HNumber {
            algebra: Arc::clone(&self.algebra),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl PartialEq for HNumber {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for HNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HNumber[{}]({})", self.algebra.name(), self)
    }
}

impl fmt::Display for HNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if wrote {
                write!(f, "{}", if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            let m = c.abs();
            if k == 0 {
                write!(f, "{m}")?;
            } else if m == 1.0 {
                write!(f, "{}", basis_label(k))?;
            } else {
                write!(f, "{m}{}", basis_label(k))?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
