//! JSON network configurations and built-in presets.
//!
//! ```json
//! {
//!   "algebra": "U",
//!   "involution": "identity",
//!   "activation": "split",
//!   "N": 2,
//!   "weights": [[[0, 0], [1, 3]], [[1, 3], [0, 0]]],
//!   "schedule": "cyclic",
//!   "seed": 7
//! }
//! ```
//!
//! `involution` is `natural`, `identity`, `tessarine`, `default` or an explicit
//! sign array. `weights[i][j]` holds the coefficients of `w_ij`.

use serde::{Deserialize, Serialize};

use crate::activation::Activation;
use crate::error::{Error, Result};
use crate::involution::{Involution, NumberSystem};
use crate::network::{Network, Schedule, StateVector, WeightMatrix};
use crate::realify::realify_network;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InvolutionSpec {
    Named(String),
    Signs(Vec<i8>),
}

impl Default for InvolutionSpec {
    fn default() -> Self {
        InvolutionSpec::Named("default".into())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleKind {
    #[default]
    Cyclic,
    /// Random permutation per sweep, seeded from `seed`.
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub algebra: String,
    #[serde(default)]
    pub involution: InvolutionSpec,
    pub activation: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub weights: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    pub schedule: ScheduleKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Initial state, one coefficient vector per neuron. Drawn from `seed`
    /// when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<Vec<Vec<f64>>>,
}

impl NetworkConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn system(&self) -> Result<NumberSystem> {
        match &self.involution {
            InvolutionSpec::Named(id) => NumberSystem::from_ids(&self.algebra, id),
            InvolutionSpec::Signs(signs) => {
                let (algebra, _) = crate::algebra::algebra_from_id(&self.algebra)?;
                NumberSystem::new(algebra, Involution::new(signs.clone())?)
            }
        }
    }

    pub fn build(&self) -> Result<Network> {
        let system = self.system()?;
        let dim = system.dim();
        if self.weights.len() != self.n || self.weights.iter().any(|row| row.len() != self.n) {
            return Err(Error::Config(format!(
                "weights must be an {0} x {0} array",
                self.n
            )));
        }
        let mut flat = Vec::with_capacity(self.n * self.n * dim);
        for w in self.weights.iter().flatten() {
            if w.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: w.len(),
                });
            }
            flat.extend_from_slice(w);
        }
        let weights = WeightMatrix::from_flat(self.n, dim, flat)?;
        let activation: Activation = self.activation.parse()?;
        let schedule = match self.schedule {
            ScheduleKind::Cyclic => Schedule::Cyclic,
            ScheduleKind::Random => Schedule::RandomPermutation {
                seed: self.seed.unwrap_or(0),
            },
        };
        Network::new(system, weights, activation, schedule)
    }

    /// The configured initial state, or a random one drawn from `seed`
    /// (default 0).
    pub fn initial_state(&self, net: &Network) -> Result<StateVector> {
        match &self.initial_state {
            Some(rows) => {
                if rows.len() != net.n() {
                    return Err(Error::DimensionMismatch {
                        expected: net.n(),
                        found: rows.len(),
                    });
                }
                if let Some(bad) = rows.iter().find(|r| r.len() != net.dim()) {
                    return Err(Error::DimensionMismatch {
                        expected: net.dim(),
                        found: bad.len(),
                    });
                }
                let x = StateVector::from_flat(net.dim(), rows.concat())?;
                net.validate_state(&x)?;
                Ok(x)
            }
            None => Ok(net.random_state(self.seed.unwrap_or(0))),
        }
    }

    /// Describes an existing network. Realified networks come out with
    /// algebra `R`.
    pub fn from_network(net: &Network, seed: Option<u64>) -> Self {
        let (n, dim) = (net.n(), net.dim());
        let weights = (0..n)
            .map(|i| (0..n).map(|j| net.weights().get(i, j).to_vec()).collect())
            .collect();
        let (schedule, seed) = match net.schedule() {
            Schedule::Cyclic => (ScheduleKind::Cyclic, seed),
            Schedule::RandomPermutation { seed } => (ScheduleKind::Random, Some(seed)),
        };
        let signs = net.system().involution().signs().to_vec();
        let involution = if signs == Involution::identity(dim).signs() {
            InvolutionSpec::Named("identity".into())
        } else if signs == Involution::natural(dim).signs() {
            InvolutionSpec::Named("natural".into())
        } else {
            InvolutionSpec::Signs(signs)
        };
        Self {
            algebra: net.system().algebra().name().to_string(),
            involution,
            activation: net.activation().to_string(),
            n,
            weights,
            schedule,
            seed,
            initial_state: None,
        }
    }
}

pub const EXAMPLE5_VARIANTS: [&str; 6] = ["c-split", "c-conj", "u-split", "u-conj", "d-split", "d-conj"];
pub const EXAMPLE6_VARIANTS: [&str; 3] = ["c", "u", "d"];

/// Two-neuron networks with `w_12 = w_21 = 1 + 3i` and zero self-weights,
/// started from `[-1 - i, 1 + i]`.
///
/// The involution is the one under which the activation is a B-projection:
/// split-sign needs `lambda i^2 >= 0`, the conjugated split-sign
/// `lambda i^2 <= 0`. Dual numbers (`i^2 = 0`) use natural conjugation.
pub fn example5(variant: &str) -> Result<NetworkConfig> {
    let (algebra, activation) = variant
        .split_once('-')
        .ok_or_else(|| Error::Config(format!("unknown preset example5:{variant}")))?;
    let (algebra, involution) = match (algebra, activation) {
        ("c", "split") => ("C", "natural"),
        ("c", "conj") => ("C", "identity"),
        ("u", "split") => ("U", "identity"),
        ("u", "conj") => ("U", "natural"),
        ("d", "split" | "conj") => ("D", "natural"),
        _ => return Err(Error::Config(format!("unknown preset example5:{variant}"))),
    };
    let activation = if activation == "split" { "split" } else { "conj_split" };
    let w = vec![1.0, 3.0];
    let z = vec![0.0, 0.0];
    Ok(NetworkConfig {
        algebra: algebra.into(),
        involution: InvolutionSpec::Named(involution.into()),
        activation: activation.into(),
        n: 2,
        weights: vec![vec![z.clone(), w.clone()], vec![w, z]],
        schedule: ScheduleKind::Cyclic,
        seed: None,
        initial_state: Some(vec![vec![-1.0, -1.0], vec![1.0, 1.0]]),
    })
}

/// Realification of the split-sign `example5` network over `c`, `u` or `d`.
pub fn example6(variant: &str) -> Result<NetworkConfig> {
    if !EXAMPLE6_VARIANTS.contains(&variant) {
        return Err(Error::Config(format!("unknown preset example6:{variant}")));
    }
    let complex = example5(&format!("{variant}-split"))?;
    let net = complex.build()?;
    let (_, real) = realify_network(&net)?;
    let mut cfg = NetworkConfig::from_network(&real, None);
    cfg.initial_state = complex
        .initial_state
        .map(|rows| rows.concat().into_iter().map(|c| vec![c]).collect());
    Ok(cfg)
}

/// Resolves `example5:<variant>` or `example6:<variant>`.
pub fn preset(name: &str) -> Result<NetworkConfig> {
    match name.split_once(':') {
        Some(("example5", v)) => example5(v),
        Some(("example6", v)) => example6(v),
        _ => Err(Error::Config(format!("unknown preset `{name}`"))),
    }
}
