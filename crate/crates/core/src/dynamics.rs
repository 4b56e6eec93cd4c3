//! Asynchronous dynamics, energy and traces.

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::activation::StateSet;
use crate::error::Result;
use crate::network::{Network, Schedule, StateVector};
use crate::number::HNumber;

pub const DEFAULT_MAX_SWEEPS: usize = 1000;

/// On the unit sphere an update moving a neuron by at most this much (max
/// norm) counts as no change and the old state is kept. A move of size `d`
/// lowers the energy by roughly `|v| d^2 / 2`, so smaller moves would be lost
/// in rounding.
pub const CONTINUOUS_CHANGE_TOL: f64 = 1e-6;

impl Network {
    pub(crate) fn potential_into(&self, x: &StateVector, i: usize, out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        let algebra = self.system().algebra();
        for j in 0..self.n() {
            algebra.mul_acc(self.weights().get(i, j), x.neuron(j), out);
        }
    }

    /// Activation potential `v_i = sum_j w_ij x_j`.
    pub fn potential(&self, x: &StateVector, i: usize) -> Result<HNumber> {
        self.check_index(i)?;
        let mut v = vec![0.0; self.dim()];
        self.potential_into(x, i, &mut v);
        HNumber::new(self.system().algebra(), v)
    }

    /// Candidate new state for a neuron with potential `v`, if it differs
    /// from `old`.
    fn next_state(&self, old: &[f64], v: &[f64], continuous: bool) -> Option<Vec<f64>> {
        let candidate = self.activation().apply_slice(v)?;
        let changed = if continuous {
            old.iter()
                .zip(&candidate)
                .any(|(a, b)| (a - b).abs() > CONTINUOUS_CHANGE_TOL)
        } else {
            old != candidate.as_slice()
        };
        changed.then_some(candidate)
    }

    /// Single asynchronous update of neuron `i`.
    ///
    /// A potential outside the activation's domain leaves the state as is.
    pub fn step(&self, x: &StateVector, i: usize) -> Result<(StateVector, bool)> {
        self.check_index(i)?;
        let mut next = x.clone();
        let mut v = vec![0.0; self.dim()];
        self.potential_into(x, i, &mut v);
        let continuous = matches!(self.state_set(), StateSet::UnitSphere { .. });
        match self.next_state(x.neuron(i), &v, continuous) {
            Some(s) => {
                next.set_neuron(i, &s);
                Ok((next, true))
            }
            None => Ok((next, false)),
        }
    }

    /// `E(x) = -1/2 sum_i sum_j B(x_i, w_ij x_j)`.
    pub fn energy(&self, x: &StateVector) -> f64 {
        let mut v = vec![0.0; self.dim()];
        let sys = self.system();
        let mut total = 0.0;
        for i in 0..self.n() {
            self.potential_into(x, i, &mut v);
            total += sys.bilinear_slices(x.neuron(i), &v);
        }
        -0.5 * total
    }

    /// Exact energy change when neuron `mu` moves from `x_mu` to `new`, for
    /// arbitrary weights: `-1/2 [B(d, v_mu) + sum_i B(x_i, w_i,mu d) + B(d, w_mu,mu d)]`
    /// with `d = new - x_mu` and `v_mu` the potential at `x`.
    pub fn energy_change(&self, x: &StateVector, mu: usize, new: &[f64], v: &[f64]) -> f64 {
        let sys = self.system();
        let algebra = sys.algebra();
        let d: Vec<f64> = new.iter().zip(x.neuron(mu)).map(|(a, b)| a - b).collect();
        let mut wd = vec![0.0; self.dim()];
        let mut column = 0.0;
        for i in 0..self.n() {
            algebra.mul_into(self.weights().get(i, mu), &d, &mut wd);
            column += sys.bilinear_slices(x.neuron(i), &wd);
        }
        algebra.mul_into(self.weights().get(mu, mu), &d, &mut wd);
        let self_term = sys.bilinear_slices(&d, &wd);
        -0.5 * (sys.bilinear_slices(&d, v) + column + self_term)
    }

    /// Energy change predicted by the proof decomposition
    /// `-B(d, v_mu) - 1/2 B(d, w_mu,mu d)`, valid for Hermitian weights.
    pub fn hermitian_energy_change(&self, old: &[f64], new: &[f64], v: &[f64], mu: usize) -> f64 {
        let sys = self.system();
        let d: Vec<f64> = new.iter().zip(old).map(|(a, b)| a - b).collect();
        let mut wd = vec![0.0; self.dim()];
        sys.algebra().mul_into(self.weights().get(mu, mu), &d, &mut wd);
        -sys.bilinear_slices(&d, v) - 0.5 * sys.bilinear_slices(&d, &wd)
    }

    /// Runs sweeps until one full sweep changes nothing or `max_sweeps` is hit.
    pub fn run(&self, x0: &StateVector, max_sweeps: usize) -> Result<Trace> {
        self.validate_state(x0)?;
        let n = self.n();
        let continuous = matches!(self.state_set(), StateSet::UnitSphere { .. });
        let mut rng = match self.schedule() {
            Schedule::RandomPermutation { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            Schedule::Cyclic => None,
        };
        let mut order: Vec<usize> = (0..n).collect();
        let mut x = x0.clone();
        let initial_energy = self.energy(&x);
        let mut energy = initial_energy;
        let mut events = Vec::new();
        let mut v = vec![0.0; self.dim()];
        let mut converged = false;
        let mut sweeps = 0;
        while sweeps < max_sweeps {
            sweeps += 1;
            if let Some(rng) = rng.as_mut() {
                order.shuffle(rng);
            }
            let mut any_change = false;
            for &i in &order {
                self.potential_into(&x, i, &mut v);
                let old = x.neuron(i).to_vec();
                let changed = match self.next_state(&old, &v, continuous) {
                    Some(s) => {
                        energy += self.energy_change(&x, i, &s, &v);
                        x.set_neuron(i, &s);
                        true
                    }
                    None => false,
                };
                any_change |= changed;
                events.push(UpdateEvent {
                    t: events.len() + 1,
                    neuron: i,
                    changed,
                    old,
                    new: x.neuron(i).to_vec(),
                    potential: v.clone(),
                    energy,
                });
            }
            if !any_change {
                converged = true;
                break;
            }
        }
        Ok(Trace {
            initial_energy,
            events,
            converged,
            sweeps,
            final_state: x,
        })
    }
}

/// One asynchronous update.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpdateEvent {
    /// 1-based update index.
    pub t: usize,
    pub neuron: usize,
    pub changed: bool,
    pub old: Vec<f64>,
    pub new: Vec<f64>,
    pub potential: Vec<f64>,
    /// Energy after the update.
    pub energy: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub initial_energy: f64,
    pub events: Vec<UpdateEvent>,
    pub converged: bool,
    pub sweeps: usize,
    pub final_state: StateVector,
}

impl Trace {
    /// Number of state-changing updates.
    pub fn changes(&self) -> usize {
        self.events.iter().filter(|e| e.changed).count()
    }

    pub fn final_energy(&self) -> f64 {
        self.events.last().map_or(self.initial_energy, |e| e.energy)
    }

    /// CSV with header `update_index,neuron,changed,energy`. Row 0 carries the
    /// initial energy and an empty neuron field.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("update_index,neuron,changed,energy\n");
        out.push_str(&format!("0,,0,{}\n", self.initial_energy));
        for e in &self.events {
            out.push_str(&format!(
                "{},{},{},{}\n",
                e.t,
                e.neuron,
                u8::from(e.changed),
                e.energy
            ));
        }
        out
    }
}
