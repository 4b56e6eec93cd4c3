//! Octonion split-sign network against its realified bipolar counterpart.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::activation::Activation;
use crate::dynamics::{Trace, DEFAULT_MAX_SWEEPS};
use crate::error::{Error, Result};
use crate::involution::NumberSystem;
use crate::network::{random_hermitian_weights_with, Network, Schedule, StateVector};
use crate::realify::{phi, realify_network};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OctonionExperiment {
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
    pub max_sweeps: usize,
}

impl OctonionExperiment {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            seed,
            max_sweeps: DEFAULT_MAX_SWEEPS,
        }
    }

    /// Networks and the shared initial state. Weights are drawn before the
    /// initial state from a single seeded stream.
    pub fn setup(&self) -> Result<(Network, Network, StateVector)> {
        if self.n < 2 {
            return Err(Error::Config(format!("need at least 2 neurons, got {}", self.n)));
        }
        let system = NumberSystem::from_ids("O", "natural")?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let weights = random_hermitian_weights_with(self.n, &system, &mut rng, 0.0);
        let octonion = Network::new(system, weights, Activation::Split, Schedule::Cyclic)?;
        let x0 = octonion.random_state_with(&mut rng);
        let (_, real) = realify_network(&octonion)?;
        Ok((octonion, real, x0))
    }

    pub fn run(&self) -> Result<ExperimentOutcome> {
        let (octonion, real, x0) = self.setup()?;
        let real_x0 = StateVector::from_flat(1, phi(&x0))?;
        let octonion_trace = octonion.run(&x0, self.max_sweeps)?;
        let real_trace = real.run(&real_x0, self.max_sweeps)?;
        Ok(ExperimentOutcome {
            config: *self,
            octonion: octonion_trace,
            real: real_trace,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub config: OctonionExperiment,
    pub octonion: Trace,
    pub real: Trace,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSummary {
    pub converged: bool,
    pub sweeps: usize,
    pub updates: usize,
    pub state_changes: usize,
    pub initial_energy: f64,
    pub final_energy: f64,
    pub monotone: bool,
}

impl RunSummary {
    pub fn of(trace: &Trace) -> Self {
        Self {
            converged: trace.converged,
            sweeps: trace.sweeps,
            updates: trace.events.len(),
            state_changes: trace.changes(),
            initial_energy: trace.initial_energy,
            final_energy: trace.final_energy(),
            monotone: is_monotone(trace),
        }
    }
}

/// Energy falls strictly at every state change and stays put otherwise.
pub fn is_monotone(trace: &Trace) -> bool {
    let mut prev = trace.initial_energy;
    for e in &trace.events {
        let ok = if e.changed {
            e.energy < prev
        } else {
            e.energy == prev
        };
        if !ok {
            return false;
        }
        prev = e.energy;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub config: OctonionExperiment,
    pub octonion: RunSummary,
    pub real: RunSummary,
}

impl ExperimentOutcome {
    pub fn summary(&self) -> ExperimentSummary {
        ExperimentSummary {
            config: self.config,
            octonion: RunSummary::of(&self.octonion),
            real: RunSummary::of(&self.real),
        }
    }
}
