//! Hypercomplex number systems and discrete-time hypercomplex-valued Hopfield
//! networks.

pub mod activation;
pub mod algebra;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod involution;
pub mod laws;
pub mod network;
pub mod number;
pub mod realify;

pub use activation::{Activation, ActivationResult, StateSet};
pub use algebra::{Algebra, AlgebraSpec};
pub use config::NetworkConfig;
pub use dynamics::Trace;
pub use error::{Error, Result};
pub use experiment::{OctonionExperiment, ExperimentOutcome};
pub use graph::{classify, enumerate_graph, Classification, TransitionGraph};
pub use involution::{Involution, NumberSystem};
pub use network::{Network, Schedule, StateVector, WeightMatrix};
pub use number::HNumber;
pub use realify::{phi, phi_inv, realify_network, RealBlockMatrix};
