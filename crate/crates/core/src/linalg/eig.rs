//! Cyclic complex Jacobi eigensolver for small Hermitian matrices.
//!
//! Each step annihilates one off-diagonal pair `(p, q)` with a 2x2 unitary
//! `J = diag(1, e^{-i arg a_pq}) * R(theta)`: the phase factor makes the
//! pivot real, the real rotation then diagonalizes the 2x2 block. Sweeps
//! visit pairs in row-major order, so the output is a deterministic function
//! of the input.

use serde::Serialize;

use super::matrix::{inner, SquareMatrix, C64, ONE, ZERO};
use super::operators::PureState;
use crate::config::Config;
use crate::error::{Error, Result};

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<PureState>,
    /// `||M - sum_i lambda_i |v_i><v_i| ||_F`.
    pub residual: f64,
}

impl SpectralDecomposition {
    /// Largest deviation of the eigenvector Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let vs = &self.eigenvectors;
        let mut worst: f64 = 0.0;
        for (i, u) in vs.iter().enumerate() {
            for (j, v) in vs.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((inner(u.amplitudes(), v.amplitudes()) - target).norm());
            }
        }
        worst
    }

    /// `sum_i f(lambda_i) |v_i><v_i|`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> SquareMatrix {
        let dim = self.eigenvalues.len();
        let mut out = SquareMatrix::zeros(dim);
        let data = out.data_mut();
        for (&lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let w = f(lambda);
            let a = v.amplitudes();
            for i in 0..dim {
                for j in 0..dim {
                    data[i * dim + j] += a[i] * a[j].conj() * w;
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> SquareMatrix {
        self.reconstruct_with(|x| x)
    }
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvectors follow a fixed phase convention: the largest-magnitude
/// component (lowest index on ties) is real and positive.
pub fn hermitian_eig(m: &SquareMatrix, cfg: &Config) -> Result<SpectralDecomposition> {
    let residual = m.hermiticity_residual();
    if residual > cfg.tol_identity {
        return Err(Error::NotHermitian { residual });
    }
    let n = m.dim();
    // Work on the exact Hermitian part.
    let mut a: Vec<C64> = vec![ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v: Vec<C64> = SquareMatrix::identity(n).entries().to_vec();

    let scale = m.frobenius_norm();
    let negligible = f64::EPSILON * scale * 1e-3;
    let mut converged = false;
    for _ in 0..cfg.max_sweeps {
        let off = off_diagonal_norm(&a, n);
        if off <= f64::EPSILON * scale {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let b = apq.norm();
                if b <= negligible || b == 0.0 {
                    continue;
                }
                rotated = true;
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged && off_diagonal_norm(&a, n) > f64::EPSILON * scale {
        return Err(Error::NoConvergence { sweeps: cfg.max_sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[k * n + k].re).collect();
    let eigenvectors: Vec<PureState> = order
        .iter()
        .map(|&k| {
            let col: Vec<C64> = (0..n).map(|i| v[i * n + k]).collect();
            PureState::from_raw(fix_phase(col))
        })
        .collect();

    let mut decomposition = SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        residual: 0.0,
    };
    decomposition.residual = (m - &decomposition.reconstruct()).frobenius_norm();
    Ok(decomposition)
}

fn off_diagonal_norm(a: &[C64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate(a: &mut [C64], v: &mut [C64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let b = apq.norm();
    let phase = apq / b;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;

    let zeta = (aqq - app) / (2.0 * b);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + zeta.hypot(1.0))
    } else {
        -1.0 / (-zeta + zeta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    // J restricted to (p, q): [[j00, j01], [j10, j11]]
    let j00 = C64::new(c, 0.0);
    let j01 = C64::new(s, 0.0);
    let j10 = -phase.conj() * s;
    let j11 = phase.conj() * c;

    // A <- A J, V <- V J
    for k in 0..n {
        let (akp, akq) = (a[k * n + p], a[k * n + q]);
        a[k * n + p] = akp * j00 + akq * j10;
        a[k * n + q] = akp * j01 + akq * j11;
        let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
        v[k * n + p] = vkp * j00 + vkq * j10;
        v[k * n + q] = vkp * j01 + vkq * j11;
    }
    // A <- J^dag A
    for k in 0..n {
        let (apk, aqk) = (a[p * n + k], a[q * n + k]);
        a[p * n + k] = j00.conj() * apk + j10.conj() * aqk;
        a[q * n + k] = j01.conj() * apk + j11.conj() * aqk;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = C64::new(a[q * n + q].re, 0.0);
}

fn fix_phase(mut col: Vec<C64>) -> Vec<C64> {
    let largest = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if largest == 0.0 {
        return col;
    }
    let slack = largest * 1e-12;
    let pivot = col
        .iter()
        .position(|z| z.norm() >= largest - slack)
        .expect("non-empty column");
    let rot = col[pivot].conj() / col[pivot].norm();
    for z in &mut col {
        *z *= rot;
    }
    col[pivot] = C64::new(col[pivot].re, 0.0);
    col
}
