//! Diagonal reverse-involutions and the bilinear form they induce.


use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::number::HNumber;

/// A coefficient-wise sign map `tau(p)_k = signs[k] * p_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct Involution {
    signs: Vec<i8>,
}

impl Involution {
    /// `signs[0]` must be `+1` and every entry must be `+1` or `-1`.
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::InvalidInvolution("empty sign vector".into()));
        }
        if signs[0] != 1 {
            return Err(Error::InvalidInvolution(
                "the real unit must be fixed (signs[0] = +1)".into(),
            ));
        }
        if let Some(bad) = signs.iter().find(|s| **s != 1 && **s != -1) {
            return Err(Error::InvalidInvolution(format!("sign {bad} is not +1 or -1")));
        }
        Ok(Self { signs })
    }

    /// Natural conjugation `p_0 - p_1 i_1 - ... - p_n i_n`.
    pub fn natural(dim: usize) -> Self {
        let mut signs = vec![-1; dim.max(1)];
        signs[0] = 1;
        Self { signs }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            signs: vec![1; dim.max(1)],
        }
    }

    /// `p_0 - p_1 i + p_2 j - p_3 k` on the tessarines.
    pub fn tessarine() -> Self {
        Self {
            signs: vec![1, -1, 1, -1],
        }
    }

    /// `tau_lambda(p) = p_0 + lambda p_1 i` on a two-dimensional algebra.
    pub fn lambda(lambda: i8) -> Result<Self> {
        Self::new(vec![1, lambda])
    }

    /// Resolves `natural`, `identity` or `tessarine` for an algebra of size `dim`.
    pub fn from_id(id: &str, dim: usize) -> Result<Self> {
        match id {
            "natural" => Ok(Self::natural(dim)),
            "identity" => Ok(Self::identity(dim)),
            "tessarine" if dim == 4 => Ok(Self::tessarine()),
            "tessarine" => Err(Error::InvalidInvolution(format!(
                "tessarine involution needs dimension 4, not {dim}"
            ))),
            other => Err(Error::InvalidInvolution(format!("unknown involution `{other}`"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, k: usize) -> f64 {
        f64::from(self.signs[k])
    }

    pub fn apply(&self, p: &HNumber) -> Result<HNumber> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            });
        }
        let coeffs = p
            .coeffs()
            .iter()
            .zip(&self.signs)
            .map(|(c, &s)| f64::from(s) * c)
            .collect();
        HNumber::new(p.algebra(), coeffs)
    }

    pub fn apply_slice(&self, p: &[f64], out: &mut [f64]) {
        for ((o, c), &s) in out.iter_mut().zip(p).zip(&self.signs) {
            *o = f64::from(s) * c;
        }
    }
}

impl TryFrom<Vec<i8>> for Involution {
    type Error = Error;

    fn try_from(signs: Vec<i8>) -> Result<Self> {
        Self::new(signs)
    }
}

impl From<Involution> for Vec<i8> {
    fn from(value: Involution) -> Self {
        value.signs
    }
}

/// An algebra paired with a reverse-involution, which together fix the
/// symmetric bilinear form `B(p, q) = Re(tau(p) q)`.
#[derive(Clone, Debug)]
pub struct NumberSystem {
    algebra: Algebra,
    involution: Involution,
    // nonzero entries (mu, nu, g) of g[mu][nu] = B(e_mu, e_nu)
    gram: Vec<(usize, usize, f64)>,
}

impl NumberSystem {
    pub fn new(algebra: Algebra, involution: Involution) -> Result<Self> {
        if involution.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: involution.dim(),
            });
        }
        let dim = algebra.dim();
        let mut gram = Vec::new();
        for mu in 0..dim {
            for nu in 0..dim {
                let c = algebra.constant(mu, nu, 0);
                if *c.numer() != 0 {
                    let value = involution.sign(mu) * (*c.numer() as f64 / *c.denom() as f64);
                    gram.push((mu, nu, value));
                }
            }
        }
        Ok(Self {
            algebra,
            involution,
            gram,
        })
    }

    /// Parses an algebra id together with an involution id (or `default`).
    pub fn from_ids(algebra: &str, involution: &str) -> Result<Self> {
        let (algebra, default) = crate::algebra::algebra_from_id(algebra)?;
        let involution = if involution == "default" {
            default
        } else {
            Involution::from_id(involution, algebra.dim())?
        };
        Self::new(algebra, involution)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `B(p, q) = Re(tau(p) q)`.
    pub fn bilinear(&self, p: &HNumber, q: &HNumber) -> Result<f64> {
        p.ensure_same(q)?;
        if p.dim() != self.dim() || !crate::algebra::same_algebra(p.algebra(), &self.algebra) {
            return Err(Error::AlgebraMismatch {
                left: p.algebra().name().to_string(),
                right: self.algebra.name().to_string(),
            });
        }
        Ok(self.bilinear_slices(p.coeffs(), q.coeffs()))
    }

    pub fn bilinear_slices(&self, p: &[f64], q: &[f64]) -> f64 {
        self.gram.iter().map(|&(mu, nu, g)| g * p[mu] * q[nu]).sum()
    }

    pub fn involute(&self, p: &HNumber) -> Result<HNumber> {
        self.involution.apply(p)
    }

    /// Real part of the associator `(pq)r - p(qr)`.
    pub fn associator_re(&self, p: &HNumber, q: &HNumber, r: &HNumber) -> Result<f64> {
        associator_re(p, q, r)
    }
}

/// `Re((pq)r - p(qr))` in floating point.
pub fn associator_re(p: &HNumber, q: &HNumber, r: &HNumber) -> Result<f64> {
    let left = p.mul(q)?.mul(r)?;
    let right = p.mul(&q.mul(r)?)?;
    Ok(left.re() - right.re())
}
