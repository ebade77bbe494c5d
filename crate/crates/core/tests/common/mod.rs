//! Reference computations that share no code path with the library's
//! arithmetic: plain nested loops over `Vec<Vec<Complex64>>`.

#![allow(dead_code)]

use bks::{SquareMatrix, C64};

pub type Dense = Vec<Vec<C64>>;

pub fn dense(m: &SquareMatrix) -> Dense {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn sub(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn dagger(a: &Dense) -> Dense {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn trace(a: &Dense) -> C64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn fro(a: &Dense) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn matvec(a: &Dense, v: &[C64]) -> Vec<C64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// `kron(a, b)[(i*nb + k, j*nb + l)] = a[i][j] * b[k][l]`.
pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let mut out = vec![vec![C64::new(0.0, 0.0); n]; n];
    for r in 0..n {
        for c in 0..n {
            out[r][c] = a[r / nb][c / nb] * b[r % nb][c % nb];
        }
    }
    out
}

pub fn real(rows: &[&[f64]]) -> Dense {
    rows.iter()
        .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
        .collect()
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect()
}

pub fn to_matrix(a: &Dense) -> SquareMatrix {
    SquareMatrix::new(a.len(), a.iter().flatten().copied().collect()).unwrap()
}

/// `tr[rho (A (x) B)]` by explicit index sums over a two-qubit density.
pub fn correlator(rho: &Dense, a: &Dense, b: &Dense) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    // (A (x) B)[(j,l),(i,k)] * rho[(i,k),(j,l)]
                    acc += a[j][i] * b[l][k] * rho[i * 2 + k][j * 2 + l];
                }
            }
        }
    }
    acc.re
}

pub fn pure_density(v: &[C64]) -> Dense {
    v.iter().map(|&x| v.iter().map(|&y| x * y.conj()).collect()).collect()
}

/// Qubit observable `cos(t) Z + sin(t) X`, written out by hand.
pub fn angle_observable(t: f64) -> Dense {
    real(&[&[t.cos(), t.sin()], &[t.sin(), -t.cos()]])
}

/// `(|01> - |10>) / sqrt 2`.
pub fn singlet() -> Vec<C64> {
    let s = 0.5f64.sqrt();
    vec![
        C64::new(0.0, 0.0),
        C64::new(s, 0.0),
        C64::new(-s, 0.0),
        C64::new(0.0, 0.0),
    ]
}

/// Angles reaching `2 sqrt 2` on the singlet.
pub const OPTIMAL_ANGLES: [f64; 4] = [
    0.0,
    std::f64::consts::FRAC_PI_2,
    std::f64::consts::PI + std::f64::consts::FRAC_PI_4,
    -std::f64::consts::FRAC_PI_4 + std::f64::consts::PI,
];
