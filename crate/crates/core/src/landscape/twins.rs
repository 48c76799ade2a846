//! Case analysis for geometric twins: unit vectors `v_a`, `v_b` and a plane
//! vector `q` with `v_b + q = μ_a v_a` and `v_a + q = μ_b v_b`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TwinCase {
    /// `v_a = v_b`, `μ_a = μ_b`.
    Equal,
    /// `v_a = −v_b`, `μ_a + μ_b = −2`, `(μ_a, μ_b) ≠ (−1, −1)`.
    Antipodal,
    /// `μ_a = μ_b = −1` and `v_a + v_b + q = 0`, directions otherwise free.
    FreeAtMinusOne,
    NotGeometricTwins,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwinAnalysis {
    pub case: TwinCase,
    pub mu_a: f64,
    pub mu_b: f64,
}

type V2 = [f64; 2];

fn dot(a: V2, b: V2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn dist(a: V2, b: V2) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Recovers `μ_a = ⟨v_b + q, v_a⟩` and `μ_b = ⟨v_a + q, v_b⟩` by projection,
/// checks both relations hold within `tol`, then sorts the pair into the
/// trichotomy. The point `(−1, −1)` goes to [`TwinCase::FreeAtMinusOne`].
pub fn twin_case(v_a: V2, v_b: V2, q: V2, tol: f64) -> Result<TwinAnalysis> {
    let unit = |v: V2| (dot(v, v).sqrt() - 1.0).abs() <= tol;
    if !unit(v_a) || !unit(v_b) {
        return Err(Error::NotUnitVectors);
    }
    let lhs_a = [v_b[0] + q[0], v_b[1] + q[1]];
    let lhs_b = [v_a[0] + q[0], v_a[1] + q[1]];
    let mu_a = dot(lhs_a, v_a);
    let mu_b = dot(lhs_b, v_b);
    let residual = dist(lhs_a, [mu_a * v_a[0], mu_a * v_a[1]])
        .max(dist(lhs_b, [mu_b * v_b[0], mu_b * v_b[1]]));

    let case = if residual > tol {
        TwinCase::NotGeometricTwins
    } else if (mu_a + 1.0).abs() <= tol && (mu_b + 1.0).abs() <= tol {
        TwinCase::FreeAtMinusOne
    } else if dist(v_a, v_b) <= tol {
        TwinCase::Equal
    } else if dist(v_a, [-v_b[0], -v_b[1]]) <= tol {
        TwinCase::Antipodal
    } else {
        TwinCase::NotGeometricTwins
    };
    Ok(TwinAnalysis { case, mu_a, mu_b })
}
