//! Real bipolar networks equivalent to split-sign hypercomplex networks.

use ndarray::{Array1, Array2};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::activation::Activation;
use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::involution::NumberSystem;
use crate::network::{Network, StateVector, WeightMatrix};

pub const REALIFICATION_TOL: f64 = 1e-12;

/// Matrix `L(w)` of left multiplication by `w`: column `k` holds `w e_k`.
pub fn left_mul_matrix(algebra: &AlgebraSpec, w: &[f64]) -> Array2<f64> {
    let dim = algebra.dim();
    Array2::from_shape_fn((dim, dim), |(r, k)| {
        (0..dim)
            .map(|mu| {
                let c = algebra.constant(mu, k, r);
                if c == 0.into() {
                    0.0
                } else {
                    w[mu] * c.to_f64().expect("finite structure constant")
                }
            })
            .sum()
    })
}

/// `N dim x N dim` real matrix whose `(i, j)` block is `L(w_ij)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealBlockMatrix {
    n: usize,
    dim: usize,
    m: Array2<f64>,
}

impl RealBlockMatrix {
    pub fn from_network(net: &Network) -> Self {
        let (n, dim) = (net.n(), net.dim());
        let algebra = net.system().algebra();
        let mut m = Array2::zeros((n * dim, n * dim));
        for i in 0..n {
            for j in 0..n {
                let block = left_mul_matrix(algebra, net.weights().get(i, j));
                m.slice_mut(ndarray::s![i * dim..(i + 1) * dim, j * dim..(j + 1) * dim])
                    .assign(&block);
            }
        }
        Self { n, dim, m }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.m
    }

    pub fn block(&self, i: usize, j: usize) -> Array2<f64> {
        let d = self.dim;
        self.m
            .slice(ndarray::s![i * d..(i + 1) * d, j * d..(j + 1) * d])
            .to_owned()
    }

    pub fn is_symmetric(&self) -> bool {
        self.m == self.m.t()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.m.rows().into_iter().map(|r| r.to_vec()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.m.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `M phi(x)`.
    pub fn apply(&self, phi_x: &[f64]) -> Vec<f64> {
        self.m.dot(&Array1::from(phi_x.to_vec())).to_vec()
    }
}

/// Concatenation of the neurons' coefficient vectors.
pub fn phi(x: &StateVector) -> Vec<f64> {
    x.as_flat().to_vec()
}

pub fn phi_inv(v: &[f64], dim: usize) -> Result<StateVector> {
    StateVector::from_flat(dim, v.to_vec())
}

/// Real bipolar network with `N dim` neurons equivalent to a split-sign net.
pub fn realify_network(net: &Network) -> Result<(RealBlockMatrix, Network)> {
    if net.activation() != Activation::Split {
        return Err(Error::IncompatibleActivation {
            activation: net.activation().to_string(),
            dim: net.dim(),
        });
    }
    let m = RealBlockMatrix::from_network(net);
    let size = m.n * m.dim;
    let weights = WeightMatrix::from_flat(size, 1, m.m.iter().copied().collect())?;
    let real = Network::new(
        NumberSystem::from_ids("R", "identity")?,
        weights,
        Activation::Split,
        net.schedule(),
    )?;
    Ok((m, real))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealificationWitness {
    pub trial: usize,
    pub state: Vec<f64>,
    pub max_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RealificationVerdict {
    Pass { max_error: f64 },
    Fail(RealificationWitness),
}

impl RealificationVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, RealificationVerdict::Pass { .. })
    }
}

/// Checks `|M phi(x) - phi(W x)|_inf <= 1e-12` on random states of `net`.
pub fn verify_realification(net: &Network, trials: usize, seed: u64) -> RealificationVerdict {
    let m = RealBlockMatrix::from_network(net);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for trial in 0..trials {
        let x = net.random_state_with(&mut rng);
        let lhs = m.apply(&phi(&x));
        let mut err = 0.0f64;
        let mut v = vec![0.0; net.dim()];
        for i in 0..net.n() {
            net.potential_into(&x, i, &mut v);
            for (k, vk) in v.iter().enumerate() {
                err = err.max((lhs[i * net.dim() + k] - vk).abs());
            }
        }
        if err.is_nan() || err > REALIFICATION_TOL {
            return RealificationVerdict::Fail(RealificationWitness {
                trial,
                state: phi(&x),
                max_error: err,
            });
        }
        worst = worst.max(err);
    }
    RealificationVerdict::Pass { max_error: worst }
}
