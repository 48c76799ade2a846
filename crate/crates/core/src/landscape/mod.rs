//! The Kuramoto energy `E(θ) = ½ Σ A_ij (1 − cos(θ_i − θ_j))`, its
//! derivatives, phasor quantities and the classification of stationary
//! points.

mod phase;
mod twins;

pub use phase::{circular_diameter, geodesic, is_synchronous, wrap_angle, PhaseConfig};
pub use twins::{twin_case, TwinAnalysis, TwinCase};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::json;
use crate::linalg::{symmetric_eigen, SquareMatrix};

fn check_dim(g: &Graph, theta: &PhaseConfig) -> Result<()> {
    if theta.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: theta.len(),
        });
    }
    Ok(())
}

pub fn energy(g: &Graph, theta: &PhaseConfig) -> Result<f64> {
    check_dim(g, theta)?;
    let t = theta.angles();
    Ok(g.edges().map(|(u, v)| 1.0 - (t[u] - t[v]).cos()).sum())
}

/// `∇E`, component `i` equal to `Σ_j A_ij sin(θ_i − θ_j)`. The flow
/// `dθ/dt = −∇E` is the homogeneous Kuramoto model.
pub fn gradient(g: &Graph, theta: &PhaseConfig) -> Result<Vec<f64>> {
    check_dim(g, theta)?;
    Ok(gradient_raw(g, theta.angles()))
}

pub(crate) fn gradient_raw(g: &Graph, t: &[f64]) -> Vec<f64> {
    (0..g.n())
        .map(|i| g.neighbors(i).iter().map(|&j| (t[i] - t[j]).sin()).sum())
        .collect()
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn gradient_norm(g: &Graph, theta: &PhaseConfig) -> Result<f64> {
    gradient(g, theta).map(|v| norm(&v))
}

/// `∇²E`: diagonal `Σ_j A_ij cos(θ_i − θ_j)`, off-diagonal
/// `−A_ij cos(θ_i − θ_j)`. Rows sum to zero.
pub fn hessian(g: &Graph, theta: &PhaseConfig) -> Result<SquareMatrix> {
    check_dim(g, theta)?;
    let t = theta.angles();
    let mut h = SquareMatrix::zeros(g.n());
    for i in 0..g.n() {
        let mut diag = 0.0;
        for &j in g.neighbors(i) {
            let c = (t[i] - t[j]).cos();
            h[(i, j)] = -c;
            diag += c;
        }
        h[(i, i)] = diag;
    }
    Ok(h)
}

/// `μ_i = Σ_{j∈N(i)} cos(θ_j − θ_i)`, the projection of the neighbor phasor
/// sum onto `v_i`.
pub fn mu_all(g: &Graph, theta: &PhaseConfig) -> Result<Vec<f64>> {
    check_dim(g, theta)?;
    let t = theta.angles();
    Ok((0..g.n())
        .map(|i| g.neighbors(i).iter().map(|&j| (t[j] - t[i]).cos()).sum())
        .collect())
}

/// `Σ_{j∈N(i)} v_j` as a plane vector.
pub fn neighbor_phasor_sum(g: &Graph, theta: &PhaseConfig, i: usize) -> Result<[f64; 2]> {
    check_dim(g, theta)?;
    let t = theta.angles();
    Ok(g.neighbors(i)
        .iter()
        .fold([0.0, 0.0], |[x, y], &j| [x + t[j].cos(), y + t[j].sin()]))
}

/// Local order parameter `R_i = |Σ_{j∈N(i)} e^{iθ_j}| / deg(i)`.
pub fn local_order(g: &Graph, theta: &PhaseConfig, i: usize) -> Result<f64> {
    check_dim(g, theta)?;
    if i >= g.n() {
        return Err(Error::InvalidParameters(format!("vertex {} out of range", i + 1)));
    }
    if g.degree(i) == 0 {
        return Err(Error::IsolatedVertex(i + 1));
    }
    let [x, y] = neighbor_phasor_sum(g, theta, i)?;
    Ok((x.hypot(y) / g.degree(i) as f64).min(1.0))
}

/// `xᵀ ∇²E x` for the 0/1 indicator `x` of `block`, which reduces to
/// `Σ_{i∈B} Σ_{j∈N(i)∖B} cos(θ_i − θ_j)`. A negative value means the
/// indicator is a descent direction.
pub fn block_descent_value(g: &Graph, theta: &PhaseConfig, block: &[usize]) -> Result<f64> {
    check_dim(g, theta)?;
    let mut member = vec![false; g.n()];
    for &v in block {
        if v >= g.n() {
            return Err(Error::InvalidParameters(format!("vertex {} out of range", v + 1)));
        }
        member[v] = true;
    }
    let t = theta.angles();
    Ok((0..g.n())
        .filter(|&i| member[i])
        .flat_map(|i| {
            g.neighbors(i)
                .iter()
                .filter(|&&j| !member[j])
                .map(move |&j| (t[i] - t[j]).cos())
        })
        .sum())
}

/// Thresholds used by [`classify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Gradient norm below which a point is an equilibrium.
    pub grad: f64,
    /// Eigenvalues and μ-values down to `−psd` count as nonnegative.
    pub psd: f64,
    /// Circular diameter below which a configuration is synchronous.
    pub sync: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            grad: 1e-9,
            psd: 1e-8,
            sync: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub enum Classification {
    NotEquilibrium,
    SynchronousMinimum,
    #[serde(rename = "NonSyncSOSP")]
    NonSyncSosp,
    Saddle,
}

impl Classification {
    /// Equilibria passing the second-order test.
    pub fn is_sosp(self) -> bool {
        matches!(self, Classification::SynchronousMinimum | Classification::NonSyncSosp)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LandscapeReport {
    #[serde(serialize_with = "json::f64")]
    pub energy: f64,
    #[serde(serialize_with = "json::f64")]
    pub gradient_norm: f64,
    #[serde(serialize_with = "json::vec_f64")]
    pub mu: Vec<f64>,
    #[serde(rename = "min_eig", serialize_with = "json::f64")]
    pub min_hessian_eigenvalue: f64,
    #[serde(rename = "class")]
    pub classification: Classification,
    #[serde(serialize_with = "json::opt_vec_f64")]
    pub witness: Option<Vec<f64>>,
}

/// First- and second-order analysis of `θ`.
///
/// A saddle is reported with a descent witness: the coordinate direction of
/// the most negative `μ_i` when one exists, otherwise the eigenvector of the
/// most negative Hessian eigenvalue. Equilibria whose smallest eigenvalue
/// lies in `[−psd, psd]` count as second-order stationary.
pub fn classify(g: &Graph, theta: &PhaseConfig, tol: &Tolerances) -> Result<LandscapeReport> {
    check_dim(g, theta)?;
    let energy = energy(g, theta)?;
    let gradient_norm = gradient_norm(g, theta)?;
    let mu = mu_all(g, theta)?;
    let h = hessian(g, theta)?;
    let eig = symmetric_eigen(&h)?;
    let min_hessian_eigenvalue = eig.values.first().copied().unwrap_or(0.0);

    let (classification, witness) = if gradient_norm > tol.grad {
        (Classification::NotEquilibrium, None)
    } else if let Some((i, _)) = mu
        .iter()
        .enumerate()
        .filter(|(_, &m)| m < -tol.psd)
        .min_by(|a, b| a.1.total_cmp(b.1))
    {
        let mut e = vec![0.0; g.n()];
        e[i] = 1.0;
        (Classification::Saddle, Some(e))
    } else if min_hessian_eigenvalue < -tol.psd {
        (Classification::Saddle, Some(eig.vectors[0].clone()))
    } else if is_synchronous(theta, tol.sync) {
        (Classification::SynchronousMinimum, None)
    } else {
        (Classification::NonSyncSosp, None)
    };

    Ok(LandscapeReport {
        energy,
        gradient_norm,
        mu,
        min_hessian_eigenvalue,
        classification,
        witness,
    })
}
