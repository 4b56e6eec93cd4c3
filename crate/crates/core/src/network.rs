//! Network definition: weights, states, update schedule and the hypotheses
//! under which asynchronous dynamics are guaranteed to settle.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::activation::{Activation, StateSet};
use crate::algebra::same_algebra;
use crate::error::{Error, Result};
use crate::involution::NumberSystem;
use crate::laws;
use crate::number::HNumber;

/// Tolerance for the Hermitian test `w_ij = tau(w_ji)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense `N x N` matrix of hypercomplex weights stored row-major as raw
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightMatrix {
    n: usize,
    dim: usize,
    data: Vec<f64>,
}

impl WeightMatrix {
    pub fn zeros(n: usize, dim: usize) -> Self {
        Self {
            n,
            dim,
            data: vec![0.0; n * n * dim],
        }
    }

    /// `data` holds `n * n` coefficient vectors of length `dim`, row-major.
    pub fn from_flat(n: usize, dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n * dim {
            return Err(Error::DimensionMismatch {
                expected: n * n * dim,
                found: data.len(),
            });
        }
        Ok(Self { n, dim, data })
    }

    pub fn from_numbers(n: usize, weights: &[HNumber]) -> Result<Self> {
        if weights.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: weights.len(),
            });
        }
        let dim = weights.first().map_or(1, HNumber::dim);
        if let Some(first) = weights.first() {
            if let Some(bad) = weights.iter().find(|w| !same_algebra(w.algebra(), first.algebra())) {
                return Err(Error::AlgebraMismatch {
                    left: first.algebra().name().to_string(),
                    right: bad.algebra().name().to_string(),
                });
            }
        }
        let data = weights.iter().flat_map(|w| w.coeffs().iter().copied()).collect();
        Ok(Self { n, dim, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &[f64] {
        let start = (i * self.n + j) * self.dim;
        &self.data[start..start + self.dim]
    }

    pub fn set(&mut self, i: usize, j: usize, w: &[f64]) {
        let start = (i * self.n + j) * self.dim;
        self.data[start..start + self.dim].copy_from_slice(w);
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }
}

/// Network state: one coefficient vector per neuron, stored contiguously.
///
/// The flat layout is exactly the realification map, so
/// [`StateVector::as_flat`] doubles as `phi(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    dim: usize,
    data: Vec<f64>,
}

impl StateVector {
    pub fn from_flat(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 || !data.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_numbers(x: &[HNumber]) -> Result<Self> {
        let dim = x.first().map_or(1, HNumber::dim);
        if x.iter().any(|v| v.dim() != dim) {
            return Err(Error::Config("state components differ in dimension".into()));
        }
        Ok(Self {
            dim,
            data: x.iter().flat_map(|v| v.coeffs().iter().copied()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn neuron(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn set_neuron(&mut self, i: usize, v: &[f64]) {
        self.data[i * self.dim..(i + 1) * self.dim].copy_from_slice(v);
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn to_numbers(&self, system: &NumberSystem) -> Result<Vec<HNumber>> {
        self.data
            .chunks(self.dim)
            .map(|c| HNumber::new(system.algebra(), c.to_vec()))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Schedule {
    /// Neurons `0..N` in order, every sweep.
    #[default]
    Cyclic,
    /// A fresh random permutation each sweep, seeded.
    RandomPermutation { seed: u64 },
}

/// Discrete-time hypercomplex-valued Hopfield network.
#[derive(Clone, Debug)]
pub struct Network {
    system: NumberSystem,
    weights: WeightMatrix,
    activation: Activation,
    schedule: Schedule,
}

impl Network {
    pub fn new(
        system: NumberSystem,
        weights: WeightMatrix,
        activation: Activation,
        schedule: Schedule,
    ) -> Result<Self> {
        if weights.dim() != system.dim() {
            return Err(Error::DimensionMismatch {
                expected: system.dim(),
                found: weights.dim(),
            });
        }
        activation.check_dim(system.dim())?;
        Ok(Self {
            system,
            weights,
            activation,
            schedule,
        })
    }

    pub fn system(&self) -> &NumberSystem {
        &self.system
    }

    pub fn weights(&self) -> &WeightMatrix {
        &self.weights
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn schedule(&self) -> Schedule {
        self.schedule
    }

    pub fn with_schedule(mut self, schedule: Schedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn n(&self) -> usize {
        self.weights.n()
    }

    pub fn dim(&self) -> usize {
        self.system.dim()
    }

    pub fn weight(&self, i: usize, j: usize) -> Result<HNumber> {
        self.check_index(i)?;
        self.check_index(j)?;
        HNumber::new(self.system.algebra(), self.weights.get(i, j).to_vec())
    }

    pub fn state_set(&self) -> StateSet {
        self.activation
            .state_set(self.dim())
            .expect("activation dimension checked at construction")
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.n(),
            })
        }
    }

    /// Confirms `x` has `N` components, each in the activation's state set.
    pub fn validate_state(&self, x: &StateVector) -> Result<()> {
        if x.dim() != self.dim() || x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n() * self.dim(),
                found: x.as_flat().len(),
            });
        }
        let states = self.state_set();
        match (0..self.n()).find(|&i| !states.contains(x.neuron(i))) {
            Some(neuron) => Err(Error::InvalidState { neuron }),
            None => Ok(()),
        }
    }

    /// Uniformly random initial state drawn from the state set.
    pub fn random_state(&self, seed: u64) -> StateVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_state_with(&mut rng)
    }

    pub fn random_state_with<R: Rng + ?Sized>(&self, rng: &mut R) -> StateVector {
        let states = self.state_set();
        let data = (0..self.n()).flat_map(|_| states.sample(rng)).collect();
        StateVector {
            dim: self.dim(),
            data,
        }
    }
}

/// Which hypotheses of the convergence theorem a network satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    /// `w_ij = tau(w_ji)` for all `i, j`.
    pub hermitian: bool,
    /// Every `w_ii = 0`.
    pub case_a: bool,
    /// Every `w_ii` is a nonnegative real and the system is positive semidefinite.
    pub case_b: bool,
    pub psd: bool,
}

impl ConditionReport {
    pub fn convergence_guaranteed(&self) -> bool {
        self.hermitian && (self.case_a || self.case_b)
    }
}

pub fn check_conditions(net: &Network) -> ConditionReport {
    let n = net.n();
    let dim = net.dim();
    let tau = net.system().involution();
    let w = net.weights();
    let mut buf = vec![0.0; dim];
    let mut hermitian = true;
    'outer: for i in 0..n {
        for j in 0..n {
            tau.apply_slice(w.get(j, i), &mut buf);
            if w.get(i, j)
                .iter()
                .zip(&buf)
                .any(|(a, b)| (a - b).abs() > HERMITIAN_TOL)
            {
                hermitian = false;
                break 'outer;
            }
        }
    }
    let case_a = (0..n).all(|i| w.get(i, i).iter().all(|&c| c == 0.0));
    let psd = laws::is_positive_semidefinite(net.system().algebra(), tau);
    let nonneg_real_diag = (0..n).all(|i| {
        let d = w.get(i, i);
        d[0] >= 0.0 && d[1..].iter().all(|&c| c == 0.0)
    });
    ConditionReport {
        hermitian,
        case_a,
        case_b: nonneg_real_diag && psd,
        psd,
    }
}

/// Hermitian weights with standard normal upper triangle, `w_ji = tau(w_ij)`
/// and real self-weight `self_weight` on the diagonal.
pub fn random_hermitian_weights(
    n: usize,
    system: &NumberSystem,
    seed: u64,
    self_weight: f64,
) -> WeightMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_hermitian_weights_with(n, system, &mut rng, self_weight)
}

pub fn random_hermitian_weights_with<R: Rng + ?Sized>(
    n: usize,
    system: &NumberSystem,
    rng: &mut R,
    self_weight: f64,
) -> WeightMatrix {
    let dim = system.dim();
    let tau = system.involution();
    let mut w = WeightMatrix::zeros(n, dim);
    let mut diag = vec![0.0; dim];
    diag[0] = self_weight;
    let mut mirrored = vec![0.0; dim];
    for i in 0..n {
        w.set(i, i, &diag);
        for j in i + 1..n {
            let upper: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            tau.apply_slice(&upper, &mut mirrored);
            w.set(i, j, &upper);
            w.set(j, i, &mirrored);
        }
    }
    w
}
