//! Kuramoto oscillators on threshold graphs.
//!
//! The crate covers the whole pipeline around the homogeneous Kuramoto
//! model `dθ_i/dt = Σ_j A_ij sin(θ_j − θ_i)`, which is the gradient flow of
//! `E(θ) = ½ Σ A_ij (1 − cos(θ_i − θ_j))`:
//!
//! - [`graph`]: threshold codes, recognition and the classical
//!   characterizations, closed twins, block decomposition, windmills;
//! - [`landscape`]: energy, gradient, Hessian, phasor quantities and the
//!   classification of stationary points;
//! - [`dynamics`]: fixed-step RK4 integration and seeded ensembles;
//! - [`equilibria`]: multistart Newton cataloging of equilibria;
//! - [`certifier`]: step-by-step synchronization certificates for connected
//!   threshold graphs, their structural verification and numeric audits.

pub mod certifier;
pub mod dynamics;
pub mod equilibria;
pub mod error;
pub mod graph;
pub mod json;
pub mod landscape;
pub mod linalg;

pub use error::{Error, Result};
pub use graph::{Graph, ThresholdCode};
pub use landscape::{Classification, LandscapeReport, PhaseConfig, Tolerances};
