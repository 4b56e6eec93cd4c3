//! Activation functions as partial maps with explicit domains.
//!
//! An input outside the domain (zero, a quantization boundary, a vanishing
//! component) yields [`ActivationResult::OutsideDomain`]; the network then
//! keeps the neuron's current state.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::involution::NumberSystem;
use crate::number::HNumber;

/// Inputs within this distance of a domain boundary are outside the domain.
pub const DOMAIN_EPS: f64 = 1e-12;
/// Boundary distance below which `verify_b_projection` rejects a sample.
pub const MARGIN_EPS: f64 = 1e-9;
/// Tolerance on `| |s| - 1 |` for unit-sphere states.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Activation {
    /// Multistate complex signum with resolution factor `K`.
    Csgn(u32),
    /// Tessarine signum: csgn on both complex halves `u_p + v_p j`.
    Tsgn(u32),
    /// Componentwise sign of every coefficient.
    Split,
    /// `sgn(p_0) - sgn(p_1) i` on two-dimensional algebras.
    ConjSplit,
    /// `p / |p|`.
    Sigma,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ActivationResult {
    Defined(HNumber),
    OutsideDomain,
}

impl ActivationResult {
    pub fn defined(&self) -> Option<&HNumber> {
        match self {
            ActivationResult::Defined(v) => Some(v),
            ActivationResult::OutsideDomain => None,
        }
    }
}

/// The set of states a neuron can take.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSet {
    /// Duplicate-free list of coefficient vectors in canonical order.
    Finite(Vec<Vec<f64>>),
    UnitSphere { dim: usize },
}

impl StateSet {
    pub fn dim(&self) -> usize {
        match self {
            StateSet::Finite(states) => states.first().map_or(0, Vec::len),
            StateSet::UnitSphere { dim } => *dim,
        }
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            StateSet::Finite(states) => Some(states.len()),
            StateSet::UnitSphere { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Position of `s` in a finite set (exact comparison).
    pub fn index_of(&self, s: &[f64]) -> Option<usize> {
        match self {
            StateSet::Finite(states) => states.iter().position(|x| x.as_slice() == s),
            StateSet::UnitSphere { .. } => None,
        }
    }

    pub fn contains(&self, s: &[f64]) -> bool {
        match self {
            StateSet::Finite(_) => self.index_of(s).is_some(),
            StateSet::UnitSphere { dim } => {
                s.len() == *dim && (norm(s) - 1.0).abs() <= UNIT_TOL
            }
        }
    }

    /// Draws a state: uniform over a finite set, rotation invariant on the sphere.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match self {
            StateSet::Finite(states) => states[rng.random_range(0..states.len())].clone(),
            StateSet::UnitSphere { dim } => loop {
                let v: Vec<f64> = (0..*dim).map(|_| rng.sample(StandardNormal)).collect();
                let n = norm(&v);
                if n > DOMAIN_EPS {
                    break v.iter().map(|x| x / n).collect();
                }
            },
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn csgn_states(k: u32) -> Vec<[f64; 2]> {
    let step = 2.0 * PI / f64::from(k);
    (0..k)
        .map(|m| {
            if m == 0 {
                [1.0, 0.0]
            } else {
                let a = step * f64::from(m);
                [snap(a.cos()), snap(a.sin())]
            }
        })
        .collect()
}

// axis-aligned roots of unity come out exact
fn snap(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else if (x.abs() - 1.0).abs() < 1e-15 {
        x.signum()
    } else {
        x
    }
}

/// Phase in `[0, 2 pi)`.
fn arg(re: f64, im: f64) -> f64 {
    let a = im.atan2(re);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

fn csgn_sector(k: u32, re: f64, im: f64) -> Option<usize> {
    if (re * re + im * im).sqrt() <= DOMAIN_EPS {
        return None;
    }
    let half = PI / f64::from(k);
    let width = 2.0 * half;
    let shifted = arg(re, im) + half;
    let residue = shifted.rem_euclid(width);
    if residue <= DOMAIN_EPS || width - residue <= DOMAIN_EPS {
        return None;
    }
    Some(((shifted / width).floor() as usize) % k as usize)
}

/// Euclidean distance from `z` to the csgn boundary (origin and quantization rays).
fn csgn_boundary_distance(k: u32, re: f64, im: f64) -> f64 {
    let r = (re * re + im * im).sqrt();
    let half = PI / f64::from(k);
    let residue = (arg(re, im) + half).rem_euclid(2.0 * half);
    let angular = residue.min(2.0 * half - residue);
    r * angular.min(PI / 2.0).sin()
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else {
        -1.0
    }
}

impl Activation {
    /// Checks that the activation can act on numbers of dimension `dim`.
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        let ok = match self {
            Activation::Csgn(_) | Activation::ConjSplit => dim == 2,
            Activation::Tsgn(_) => dim == 4,
            Activation::Split | Activation::Sigma => dim >= 1,
        };
        let k_ok = match self {
            Activation::Csgn(k) | Activation::Tsgn(k) => *k >= 2,
            _ => true,
        };
        if ok && k_ok {
            Ok(())
        } else {
            Err(Error::IncompatibleActivation {
                activation: self.to_string(),
                dim,
            })
        }
    }

    /// Applies the activation to a raw coefficient slice.
    pub fn apply_slice(&self, p: &[f64]) -> Option<Vec<f64>> {
        match *self {
            Activation::Csgn(k) => {
                let m = csgn_sector(k, p[0], p[1])?;
                Some(csgn_states(k)[m].to_vec())
            }
            Activation::Tsgn(k) => {
                let states = csgn_states(k);
                let u = csgn_sector(k, p[0], p[1])?;
                let v = csgn_sector(k, p[2], p[3])?;
                Some(vec![states[u][0], states[u][1], states[v][0], states[v][1]])
            }
            Activation::Split => {
                if p.iter().any(|c| c.abs() <= DOMAIN_EPS) {
                    return None;
                }
                Some(p.iter().map(|&c| sgn(c)).collect())
            }
            Activation::ConjSplit => {
                if p.iter().any(|c| c.abs() <= DOMAIN_EPS) {
                    return None;
                }
                Some(vec![sgn(p[0]), -sgn(p[1])])
            }
            Activation::Sigma => {
                let n = norm(p);
                if n <= DOMAIN_EPS {
                    return None;
                }
                Some(p.iter().map(|c| c / n).collect())
            }
        }
    }

    pub fn apply(&self, p: &HNumber) -> Result<ActivationResult> {
        self.check_dim(p.dim())?;
        Ok(match self.apply_slice(p.coeffs()) {
            Some(v) => ActivationResult::Defined(HNumber::new(p.algebra(), v)?),
            None => ActivationResult::OutsideDomain,
        })
    }

    /// Distance from `p` to the complement of the domain.
    pub fn boundary_distance(&self, p: &[f64]) -> f64 {
        match *self {
            Activation::Csgn(k) => csgn_boundary_distance(k, p[0], p[1]),
            Activation::Tsgn(k) => csgn_boundary_distance(k, p[0], p[1])
                .min(csgn_boundary_distance(k, p[2], p[3])),
            Activation::Split | Activation::ConjSplit => {
                p.iter().map(|c| c.abs()).fold(f64::INFINITY, f64::min)
            }
            Activation::Sigma => norm(p),
        }
    }

    /// The activation's state set for numbers of dimension `dim`.
    ///
    /// Ordering: csgn by increasing phase; tsgn with the `u` half as the
    /// major digit; split-sign in reflected Gray-code order over the
    /// components (bit set = `-1`, component 0 most significant), which for
    /// two dimensions lists `1+i, 1-i, -1-i, -1+i`.
    pub fn state_set(&self, dim: usize) -> Result<StateSet> {
        self.check_dim(dim)?;
        Ok(match *self {
            Activation::Csgn(k) => StateSet::Finite(csgn_states(k).iter().map(|s| s.to_vec()).collect()),
            Activation::Tsgn(k) => {
                let s = csgn_states(k);
                StateSet::Finite(
                    s.iter()
                        .flat_map(|u| s.iter().map(move |v| vec![u[0], u[1], v[0], v[1]]))
                        .collect(),
                )
            }
            Activation::Split | Activation::ConjSplit => {
                if dim >= usize::BITS as usize {
                    return Err(Error::IncompatibleActivation {
                        activation: self.to_string(),
                        dim,
                    });
                }
                StateSet::Finite(
                    (0..1usize << dim)
                        .map(|g| {
                            let gray = g ^ (g >> 1);
                            (0..dim)
                                .map(|c| {
                                    if gray >> (dim - 1 - c) & 1 == 1 {
                                        -1.0
                                    } else {
                                        1.0
                                    }
                                })
                                .collect()
                        })
                        .collect(),
                )
            }
            Activation::Sigma => StateSet::UnitSphere { dim },
        })
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Activation::Csgn(k) => write!(f, "csgn:{k}"),
            Activation::Tsgn(k) => write!(f, "tsgn:{k}"),
            Activation::Split => write!(f, "split"),
            Activation::ConjSplit => write!(f, "conj_split"),
            Activation::Sigma => write!(f, "sigma"),
        }
    }
}

impl FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_k = |k: &str| -> Result<u32> {
            match k.parse::<u32>() {
                Ok(k) if k >= 2 => Ok(k),
                _ => Err(Error::UnknownActivation(s.to_string())),
            }
        };
        match s {
            "split" => Ok(Activation::Split),
            "conj_split" => Ok(Activation::ConjSplit),
            "sigma" => Ok(Activation::Sigma),
            _ => {
                if let Some(k) = s.strip_prefix("csgn:") {
                    Ok(Activation::Csgn(parse_k(k)?))
                } else if let Some(k) = s.strip_prefix("tsgn:") {
                    Ok(Activation::Tsgn(parse_k(k)?))
                } else {
                    Err(Error::UnknownActivation(s.to_string()))
                }
            }
        }
    }
}

pub fn csgn(k: u32, z: &HNumber) -> Result<ActivationResult> {
    Activation::Csgn(k).apply(z)
}

pub fn tsgn(k: u32, p: &HNumber) -> Result<ActivationResult> {
    Activation::Tsgn(k).apply(p)
}

pub fn split_sign(p: &HNumber) -> Result<ActivationResult> {
    Activation::Split.apply(p)
}

pub fn conj_split_sign(p: &HNumber) -> Result<ActivationResult> {
    Activation::ConjSplit.apply(p)
}

pub fn sigma_normalize(p: &HNumber) -> Result<ActivationResult> {
    Activation::Sigma.apply(p)
}

/// A sample at which `B(f(q), q) > B(s, q)` fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProjectionCounterexample {
    pub q: Vec<f64>,
    pub f_q: Vec<f64>,
    pub s: Vec<f64>,
    pub b_f_q: f64,
    pub b_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "counterexample", rename_all = "snake_case")]
pub enum ProjectionVerdict {
    Pass,
    Counterexample(ProjectionCounterexample),
}

impl ProjectionVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ProjectionVerdict::Pass)
    }
}

/// Randomized check that `f` is a B-projection for the given system.
///
/// Potentials `q` are standard normal coefficient vectors, rejected when
/// within [`MARGIN_EPS`] of the domain boundary. For a finite state set every
/// alternative state is compared; on the unit sphere one random unit `s` is
/// drawn per `q`, so `samples` counts `(q, s)` pairs.
pub fn verify_b_projection(
    f: Activation,
    system: &NumberSystem,
    samples: usize,
    seed: u64,
) -> Result<ProjectionVerdict> {
    let dim = system.dim();
    let states = f.state_set(dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = 0;
    while accepted < samples {
        let q: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        if f.boundary_distance(&q) < MARGIN_EPS {
            continue;
        }
        let Some(f_q) = f.apply_slice(&q) else {
            continue;
        };
        accepted += 1;
        let b_f_q = system.bilinear_slices(&f_q, &q);
        let check = |s: &[f64]| -> Option<ProjectionCounterexample> {
            let b_s = system.bilinear_slices(s, &q);
            (b_f_q <= b_s).then(|| ProjectionCounterexample {
                q: q.clone(),
                f_q: f_q.clone(),
                s: s.to_vec(),
                b_f_q,
                b_s,
            })
        };
        let found = match &states {
            StateSet::Finite(list) => list
                .iter()
                .filter(|s| s.as_slice() != f_q.as_slice())
                .find_map(|s| check(s)),
            StateSet::UnitSphere { .. } => {
                let s = states.sample(&mut rng);
                if s == f_q {
                    None
                } else {
                    check(&s)
                }
            }
        };
        if let Some(cex) = found {
            return Ok(ProjectionVerdict::Counterexample(cex));
        }
    }
    Ok(ProjectionVerdict::Pass)
}
