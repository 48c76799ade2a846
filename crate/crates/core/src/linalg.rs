//! Small dense linear algebra: a square matrix type, a cyclic Jacobi
//! eigensolver for symmetric matrices and a pivoted linear solver.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "row-major data must hold n*n entries");
        SquareMatrix { n, data }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = SquareMatrix::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `xᵀ M x`
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Principal submatrix obtained by deleting row and column `k`.
    pub fn without(&self, k: usize) -> SquareMatrix {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != k).collect();
        let mut m = SquareMatrix::zeros(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigen-decomposition of a symmetric matrix, eigenvalues ascending.
/// `vectors[k]` is the unit eigenvector of `values[k]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

const SYMMETRY_TOL: f64 = 1e-9;
const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
pub fn symmetric_eigen(m: &SquareMatrix) -> Result<SymmetricEigen> {
    let n = m.n();
    let asym = m.max_asymmetry();
    if asym > SYMMETRY_TOL * m.max_abs().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    let mut a = m.clone();
    // symmetrize so rounding noise in the input does not bias the rotations
    for i in 0..n {
        for j in i + 1..n {
            let s = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = s;
            a[(j, i)] = s;
        }
    }
    let mut v = SquareMatrix::zeros(n);
    for i in 0..n {
        v[(i, i)] = 1.0;
    }

    let scale: f64 = a.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = (1e-15 * scale.max(1.0)).powi(2);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| 2.0 * a[(i, j)] * a[(i, j)])
            .sum();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&k| a[(k, k)]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|r| v[(r, k)]).collect())
        .collect();
    Ok(SymmetricEigen { values, vectors })
}

fn rotate(a: &mut SquareMatrix, v: &mut SquareMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.n();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Smallest eigenvalue of a symmetric matrix. An empty matrix has no
/// spectrum; zero is returned for it.
pub fn min_symmetric_eigenvalue(m: &SquareMatrix) -> Result<f64> {
    Ok(symmetric_eigen(m)?.values.first().copied().unwrap_or(0.0))
}

/// Solves `M x = b` by Gaussian elimination with partial pivoting. A pivot
/// below `1e-12 · max|M|` is treated as singular.
pub fn solve(m: &SquareMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = m.n();
    assert_eq!(b.len(), n);
    let mut a = m.clone();
    let mut x = b.to_vec();
    let tiny = 1e-12 * m.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
            .expect("nonempty range");
        if a[(pivot, col)].abs() <= tiny {
            return Err(Error::SingularSystem);
        }
        if pivot != col {
            for k in 0..n {
                a.data.swap(pivot * n + k, col * n + k);
            }
            x.swap(pivot, col);
        }
        for r in col + 1..n {
            let f = a[(r, col)] / a[(col, col)];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[(r, k)] -= f * a[(col, k)];
            }
            x[r] -= f * x[col];
        }
    }
    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|k| a[(r, k)] * x[k]).sum();
        x[r] = (x[r] - tail) / a[(r, r)];
    }
    Ok(x)
}
