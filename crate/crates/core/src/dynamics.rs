//! Gradient-flow integration and seeded random ensembles.

use std::f64::consts::{PI, TAU};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::json;
use crate::landscape::{self, circular_diameter, PhaseConfig, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationParams {
    pub dt: f64,
    pub t_max: f64,
    pub stop_grad_norm: f64,
    pub record_every: usize,
}

impl Default for IntegrationParams {
    fn default() -> Self {
        IntegrationParams {
            dt: 0.01,
            t_max: 1000.0,
            stop_grad_norm: 1e-8,
            record_every: 1,
        }
    }
}

const MAX_DT: f64 = 0.1;
const MAX_STEPS: f64 = 1e8;

impl IntegrationParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameters(m));
        if !(self.dt > 0.0 && self.dt <= MAX_DT) {
            return bad(format!("dt must lie in (0, {MAX_DT}], got {}", self.dt));
        }
        if !(self.t_max >= 0.0) || self.t_max / self.dt > MAX_STEPS {
            return bad(format!(
                "t_max must be nonnegative with t_max/dt <= {MAX_STEPS:e}, got {}",
                self.t_max
            ));
        }
        if !(self.stop_grad_norm >= 0.0) {
            return bad("stop_grad_norm must be nonnegative".into());
        }
        if self.record_every == 0 {
            return bad("record_every must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Termination {
    GradientVanished,
    TimeExhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhaseConfig>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn final_state(&self) -> &PhaseConfig {
        self.states.last().expect("a trajectory records at least its start")
    }

    /// CSV with header `t,theta_1,…,theta_n`, one row per recorded state.
    pub fn to_csv(&self) -> String {
        let n = self.states.first().map_or(0, PhaseConfig::len);
        let mut out = String::from("t");
        for i in 1..=n {
            out.push_str(&format!(",theta_{i}"));
        }
        out.push('\n');
        for (t, s) in self.times.iter().zip(&self.states) {
            out.push_str(&json::format_f64(*t));
            for a in s.angles() {
                out.push(',');
                out.push_str(&json::format_f64(*a));
            }
            out.push('\n');
        }
        out
    }
}

/// Kuramoto vector field `f_i = Σ_j A_ij sin(θ_j − θ_i)`, i.e. `−∇E`.
fn field(g: &Graph, theta: &[f64], out: &mut [f64]) {
    for (i, o) in out.iter_mut().enumerate() {
        *o = g.neighbors(i).iter().map(|&j| (theta[j] - theta[i]).sin()).sum();
    }
}

struct Rk4Scratch {
    k: [Vec<f64>; 4],
    tmp: Vec<f64>,
}

impl Rk4Scratch {
    fn new(n: usize) -> Self {
        Rk4Scratch {
            k: std::array::from_fn(|_| vec![0.0; n]),
            tmp: vec![0.0; n],
        }
    }

    /// Advances `theta` by one step, assuming `k[0]` already holds `f(theta)`.
    fn step(&mut self, g: &Graph, theta: &mut [f64], dt: f64) {
        let [k1, k2, k3, k4] = &mut self.k;
        let tmp = &mut self.tmp;
        for ((t, th), k) in tmp.iter_mut().zip(theta.iter()).zip(k1.iter()) {
            *t = th + 0.5 * dt * k;
        }
        field(g, tmp, k2);
        for ((t, th), k) in tmp.iter_mut().zip(theta.iter()).zip(k2.iter()) {
            *t = th + 0.5 * dt * k;
        }
        field(g, tmp, k3);
        for ((t, th), k) in tmp.iter_mut().zip(theta.iter()).zip(k3.iter()) {
            *t = th + dt * k;
        }
        field(g, tmp, k4);
        for i in 0..theta.len() {
            theta[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
}

/// One classical fourth-order Runge–Kutta step of the Kuramoto flow.
pub fn rk4_step(g: &Graph, theta: &PhaseConfig, dt: f64) -> Result<PhaseConfig> {
    if theta.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: theta.len(),
        });
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidParameters(format!("dt must be positive, got {dt}")));
    }
    let mut state = theta.angles().to_vec();
    let mut scratch = Rk4Scratch::new(g.n());
    field(g, &state, &mut scratch.k[0]);
    scratch.step(g, &mut state, dt);
    Ok(PhaseConfig::from_raw(state))
}

/// Runs the flow, calling `record(t, state)` at the start, every
/// `record_every` steps and at the final step.
fn run_flow(
    g: &Graph,
    theta0: &PhaseConfig,
    p: &IntegrationParams,
    mut record: impl FnMut(f64, &[f64]),
) -> Result<(Termination, Vec<f64>)> {
    p.validate()?;
    if theta0.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: theta0.len(),
        });
    }
    let mut state = theta0.angles().to_vec();
    let mut scratch = Rk4Scratch::new(g.n());
    let mut steps: u64 = 0;
    let mut final_recorded = true;
    record(0.0, &state);
    let termination = loop {
        field(g, &state, &mut scratch.k[0]);
        if landscape::norm(&scratch.k[0]) < p.stop_grad_norm {
            break Termination::GradientVanished;
        }
        let t = steps as f64 * p.dt;
        if t >= p.t_max {
            break Termination::TimeExhausted;
        }
        scratch.step(g, &mut state, p.dt);
        steps += 1;
        let t = steps as f64 * p.dt;
        if state.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteState { t });
        }
        if steps.is_multiple_of(p.record_every as u64) {
            record(t, &state);
            final_recorded = true;
        } else {
            final_recorded = false;
        }
    };
    if !final_recorded {
        record(steps as f64 * p.dt, &state);
    }
    Ok((termination, state))
}

/// Integrates `dθ/dt = −∇E` with fixed-step RK4 until the gradient norm
/// drops below `stop_grad_norm` or `t_max` is reached.
pub fn integrate(g: &Graph, theta0: &PhaseConfig, p: &IntegrationParams) -> Result<Trajectory> {
    let mut times = Vec::new();
    let mut states = Vec::new();
    let (termination, _) = run_flow(g, theta0, p, |t, s| {
        times.push(t);
        states.push(PhaseConfig::from_raw(s.to_vec()));
    })?;
    Ok(Trajectory {
        times,
        states,
        termination,
    })
}

/// I.i.d. uniform angles on `(−π, π]` from a ChaCha20 stream keyed by `seed`.
pub fn random_config(n: usize, seed: u64) -> PhaseConfig {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    PhaseConfig::from_raw((0..n).map(|_| PI - TAU * rng.random::<f64>()).collect())
}

/// Seed of trial `trial`: the first word of stream `trial` of the ChaCha20
/// generator keyed by `master_seed`.
pub fn trial_seed(master_seed: u64, trial: u64) -> u64 {
    let mut rng = ChaCha20Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng.next_u64()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrialTermination {
    GradientVanished,
    TimeExhausted,
    NonFiniteState,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub termination: TrialTermination,
    #[serde(serialize_with = "json::f64")]
    pub final_diameter: f64,
    #[serde(serialize_with = "json::f64")]
    pub final_energy: f64,
}

impl TrialRecord {
    pub fn synchronized(&self, sync_tol: f64) -> bool {
        self.termination == TrialTermination::GradientVanished && self.final_diameter < sync_tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub trials: usize,
    pub synchronized_count: usize,
    pub seed: u64,
    pub per_trial: Vec<TrialRecord>,
}

fn run_trial(g: &Graph, seed: u64, p: &IntegrationParams) -> Result<TrialRecord> {
    let theta0 = random_config(g.n(), seed);
    match run_flow(g, &theta0, p, |_, _| {}) {
        Ok((termination, state)) => {
            let final_state = PhaseConfig::from_raw(state);
            Ok(TrialRecord {
                seed,
                termination: match termination {
                    Termination::GradientVanished => TrialTermination::GradientVanished,
                    Termination::TimeExhausted => TrialTermination::TimeExhausted,
                },
                final_diameter: circular_diameter(final_state.angles()),
                final_energy: landscape::energy(g, &final_state)?,
            })
        }
        Err(Error::NonFiniteState { .. }) => Ok(TrialRecord {
            seed,
            termination: TrialTermination::NonFiniteState,
            final_diameter: f64::NAN,
            final_energy: f64::NAN,
        }),
        Err(e) => Err(e),
    }
}

/// Runs `trials` independent flows from random starts. Trial `t` starts
/// from `random_config(n, trial_seed(master_seed, t))`; trials run in
/// parallel and are reported in index order, so the report does not depend
/// on scheduling.
pub fn ensemble(
    g: &Graph,
    trials: usize,
    master_seed: u64,
    p: &IntegrationParams,
) -> Result<EnsembleReport> {
    if trials == 0 {
        return Err(Error::InvalidParameters("trials must be at least 1".into()));
    }
    p.validate()?;
    let per_trial = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial(g, trial_seed(master_seed, t), p))
        .collect::<Result<Vec<_>>>()?;
    let sync_tol = Tolerances::default().sync;
    let synchronized_count = per_trial.iter().filter(|r| r.synchronized(sync_tol)).count();
    Ok(EnsembleReport {
        trials,
        synchronized_count,
        seed: master_seed,
        per_trial,
    })
}
