//! Multistart Newton search for equilibria, deduplicated modulo the global
//! rotation symmetry.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{random_config, trial_seed};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::json;
use crate::landscape::{self, classify, geodesic, wrap_angle, Classification, PhaseConfig, Tolerances};
use crate::linalg::solve;

/// Entries closer than this in canonical sup-distance are merged.
pub const DEDUP_RADIUS: f64 = 1e-4;
pub const DEFAULT_MAX_ITER: usize = 100;
const MAX_HALVINGS: usize = 30;
const MAX_FALLBACKS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Equilibrium {
    #[serde(rename = "angles", serialize_with = "config_angles")]
    pub config: PhaseConfig,
    #[serde(rename = "class")]
    pub classification: Classification,
    #[serde(serialize_with = "json::f64")]
    pub residual: f64,
    pub basin_hits: usize,
}

fn config_angles<S: serde::Serializer>(c: &PhaseConfig, s: S) -> std::result::Result<S::Ok, S::Error> {
    json::vec_f64(c.angles(), s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumCatalog {
    pub graph: Option<String>,
    pub starts: usize,
    pub seed: u64,
    pub failures: usize,
    pub equilibria: Vec<Equilibrium>,
}

impl EquilibriumCatalog {
    pub fn with_graph_id(mut self, id: impl Into<String>) -> Self {
        self.graph = Some(id.into());
        self
    }

    pub fn count(&self, class: Classification) -> usize {
        self.equilibria.iter().filter(|e| e.classification == class).count()
    }
}

/// Rotates vertex 1 to angle 0 and wraps every angle to `(−π, π]`.
pub fn canonicalize(theta: &PhaseConfig) -> PhaseConfig {
    let Some(&base) = theta.angles().first() else {
        return theta.clone();
    };
    PhaseConfig::from_raw(theta.angles().iter().map(|&a| wrap_angle(a - base)).collect())
}

/// `max_i dist(a_i, b_i)` on the circle.
pub fn circular_sup_distance(a: &PhaseConfig, b: &PhaseConfig) -> f64 {
    a.angles()
        .iter()
        .zip(b.angles())
        .map(|(&x, &y)| geodesic(x, y))
        .fold(0.0, f64::max)
}

/// Twisted state `θ_i = 2π(i − 1)/n`.
pub fn splay_config(n: usize) -> PhaseConfig {
    PhaseConfig::from_raw((0..n).map(|i| TAU * i as f64 / n as f64).collect())
}

/// Damped Newton on `∇E = 0` in the gauge `θ_1 = 0`.
///
/// Vertex 1 is pinned by deleting its row and column from the Hessian,
/// which removes the rotation kernel. Steps are halved while the gradient
/// norm fails to decrease. When the reduced system is singular, or no
/// halving helps, one gradient-descent step is taken instead; after
/// `MAX_FALLBACKS` of those the solve gives up with `SingularSystem`.
pub fn refine_newton(g: &Graph, theta0: &PhaseConfig, tol: f64, max_iter: usize) -> Result<Equilibrium> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameters(format!("tolerance must be positive, got {tol}")));
    }
    if theta0.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: theta0.len(),
        });
    }
    let max_degree = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0).max(1);
    let descent_step = 1.0 / (2.0 * max_degree as f64);

    let mut theta = canonicalize(theta0);
    let mut fallbacks = 0;
    let mut residual = f64::INFINITY;
    for _ in 0..=max_iter {
        let grad = landscape::gradient(g, &theta)?;
        residual = landscape::norm(&grad);
        if residual < tol {
            let tolerances = Tolerances {
                grad: tol.max(Tolerances::default().grad),
                ..Tolerances::default()
            };
            let report = classify(g, &theta, &tolerances)?;
            return Ok(Equilibrium {
                config: theta,
                classification: report.classification,
                residual,
                basin_hits: 1,
            });
        }

        let h = landscape::hessian(g, &theta)?.without(0);
        let rhs: Vec<f64> = grad[1..].iter().map(|x| -x).collect();
        let accepted = match solve(&h, &rhs) {
            Ok(delta) => damped_step(g, &theta, &delta, residual)?,
            Err(Error::SingularSystem) => None,
            Err(e) => return Err(e),
        };
        theta = match accepted {
            Some(next) => next,
            None => {
                fallbacks += 1;
                if fallbacks > MAX_FALLBACKS {
                    return Err(Error::SingularSystem);
                }
                let t = theta.angles();
                PhaseConfig::from_raw(t.iter().zip(&grad).map(|(a, d)| a - descent_step * d).collect())
            }
        };
        theta = canonicalize(&theta);
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

fn damped_step(g: &Graph, theta: &PhaseConfig, delta: &[f64], residual: f64) -> Result<Option<PhaseConfig>> {
    let mut alpha = 1.0;
    for _ in 0..=MAX_HALVINGS {
        let mut trial = theta.angles().to_vec();
        for (a, d) in trial[1..].iter_mut().zip(delta) {
            *a += alpha * d;
        }
        let trial = PhaseConfig::from_raw(trial);
        if landscape::gradient_norm(g, &trial)? < residual {
            return Ok(Some(trial));
        }
        alpha *= 0.5;
    }
    Ok(None)
}

/// Newton from the synchronous state, the splay state and `starts` random
/// configurations. Converged roots are merged in start order whenever they
/// lie within [`DEDUP_RADIUS`] of an existing entry; failed starts are only
/// counted.
pub fn multistart_search(g: &Graph, starts: usize, seed: u64, tol: f64) -> Result<EquilibriumCatalog> {
    if starts == 0 {
        return Err(Error::InvalidParameters("starts must be at least 1".into()));
    }
    let n = g.n();
    let mut seeds = vec![PhaseConfig::synchronous(n, 0.0)];
    if n >= 2 {
        seeds.push(splay_config(n));
    }
    seeds.extend((0..starts as u64).map(|k| random_config(n, trial_seed(seed, k))));

    let results: Vec<Result<Equilibrium>> = seeds
        .par_iter()
        .map(|s| refine_newton(g, s, tol, DEFAULT_MAX_ITER))
        .collect();

    let mut equilibria: Vec<Equilibrium> = Vec::new();
    let mut failures = 0;
    for r in results {
        match r {
            Ok(eq) => match equilibria
                .iter_mut()
                .find(|e| circular_sup_distance(&e.config, &eq.config) < DEDUP_RADIUS)
            {
                Some(existing) => existing.basin_hits += 1,
                None => equilibria.push(eq),
            },
            Err(Error::InvalidParameters(m)) => return Err(Error::InvalidParameters(m)),
            Err(_) => failures += 1,
        }
    }
    Ok(EquilibriumCatalog {
        graph: None,
        starts,
        seed,
        failures,
        equilibria,
    })
}
