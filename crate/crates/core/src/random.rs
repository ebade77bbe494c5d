//! Seeded random instances.
//!
//! Every generator is a pure function of its parameters and a `u64` seed.
//! Seeds map to ChaCha8 streams; [`substream_seed`] derives independent
//! per-object seeds from a master seed and an index, so a suite of `n`
//! instances is reproducible item by item.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Config, MAX_DIM};
use crate::error::{Error, Result};
use crate::linalg::{inner, DensityOperator, Projector, PureState, SquareMatrix, C64};

/// Generator for `(seed, stream)`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Seed of the `index`-th object derived from `master`.
pub fn substream_seed(master: u64, index: u64) -> u64 {
    rng_for(master, index).next_u64()
}

/// Standard complex Gaussian (unit variance per component) by Box-Muller.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    // 1 - U keeps the logarithm argument in (0, 1]
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    C64::new(r * theta.cos(), r * theta.sin())
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidDimension { dim, max: MAX_DIM });
    }
    Ok(())
}

fn gaussian_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C64> {
    (0..dim).map(|_| complex_gaussian(rng)).collect()
}

/// Orthonormalizes `count` Gaussian vectors by modified Gram-Schmidt,
/// run twice per vector.
fn orthonormal_columns(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(count);
    while basis.len() < count {
        let mut v = gaussian_vector(rng, dim);
        for _ in 0..2 {
            for q in &basis {
                let c = inner(q, &v);
                for (x, &qi) in v.iter_mut().zip(q) {
                    *x -= c * qi;
                }
            }
        }
        let n = crate::linalg::norm(&v);
        // a draw inside the span of the previous columns is discarded
        if n < 1e-6 {
            continue;
        }
        basis.push(v.into_iter().map(|z| z / n).collect());
    }
    basis
}

/// Normalized vector of standard complex Gaussians.
pub fn random_pure_state(dim: usize, seed: u64) -> Result<PureState> {
    check_dim(dim)?;
    let mut rng = rng_for(seed, 0);
    loop {
        let v = gaussian_vector(&mut rng, dim);
        if crate::linalg::norm(&v) > 1e-6 {
            return PureState::normalized(v);
        }
    }
}

/// Projector onto the span of `rank` orthonormalized Gaussian columns.
pub fn random_projector(dim: usize, rank: usize, seed: u64, cfg: &Config) -> Result<Projector> {
    check_dim(dim)?;
    if rank == 0 || rank > dim {
        return Err(Error::InvalidRank { rank, dim });
    }
    let mut rng = rng_for(seed, 0);
    let cols = orthonormal_columns(&mut rng, dim, rank);
    let mut data = vec![C64::new(0.0, 0.0); dim * dim];
    for q in &cols {
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] += q[i] * q[j].conj();
            }
        }
    }
    Projector::new(SquareMatrix::new(dim, data)?, cfg)
}

/// `M M^dag / tr[M M^dag]` for a Gaussian `M`.
pub fn random_density(dim: usize, seed: u64, cfg: &Config) -> Result<DensityOperator> {
    check_dim(dim)?;
    let mut rng = rng_for(seed, 0);
    let m = SquareMatrix::new(dim, gaussian_vector(&mut rng, dim * dim))?;
    let w = &m * &m.adjoint();
    let tr = w.trace().re;
    DensityOperator::new(w.scale(C64::new(1.0 / tr, 0.0)), cfg)
}

/// Unitary whose columns are orthonormalized Gaussian vectors.
pub fn random_unitary(dim: usize, seed: u64) -> Result<SquareMatrix> {
    check_dim(dim)?;
    let mut rng = rng_for(seed, 0);
    let cols = orthonormal_columns(&mut rng, dim, dim);
    let mut data = vec![C64::new(0.0, 0.0); dim * dim];
    for (j, q) in cols.iter().enumerate() {
        for i in 0..dim {
            data[i * dim + j] = q[i];
        }
    }
    SquareMatrix::new(dim, data)
}

/// `(X + X^dag) / 2` for a Gaussian `X`.
pub fn random_hermitian(dim: usize, seed: u64) -> Result<SquareMatrix> {
    check_dim(dim)?;
    let mut rng = rng_for(seed, 0);
    let x = SquareMatrix::new(dim, gaussian_vector(&mut rng, dim * dim))?;
    Ok((&x + &x.adjoint()).scale(C64::new(0.5, 0.0)))
}
