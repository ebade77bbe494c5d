//! Constructions from the two no-go theorems.
//!
//! * [`eigen_set`]: eigenvectors of `G(A, B)` with nonzero eigenvalue. It is
//!   non-empty exactly when `A` and `B` fail to commute, and every member is
//!   a state on which `[A, B]` does not vanish.
//! * [`theorem2_pair`]: for a state `phi`, the pair `A = |phi><phi|`,
//!   `B = |phi + xi><phi + xi| / 2` with `xi` orthogonal to `phi`.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{compound_commutator, hermitian_eig, inner, norm, Projector, PureState, SquareMatrix, C64};

#[derive(Debug, Clone, Serialize)]
pub struct EigenPair {
    pub eigenvalue: f64,
    pub state: PureState,
}

/// Eigenvectors of `G(A, B)` whose eigenvalue exceeds `tol_null` in
/// magnitude, in ascending eigenvalue order.
///
/// Within a degenerate eigenspace any orthonormal basis is a valid answer;
/// callers comparing sets should compare eigenspace projectors.
#[derive(Debug, Clone, Serialize)]
pub struct EigenSet {
    pub pairs: Vec<EigenPair>,
    pub tol_null: f64,
}

impl EigenSet {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }
}

pub fn eigen_set(a: &Projector, b: &Projector, cfg: &Config) -> Result<EigenSet> {
    let g = compound_commutator(a, b, cfg)?.matrix;
    let eig = hermitian_eig(&g, cfg)?;
    let mut pairs = Vec::new();
    for (lambda, phi) in eig.eigenvalues.into_iter().zip(eig.eigenvectors) {
        if lambda.abs() <= cfg.tol_null {
            continue;
        }
        let gphi = g.apply(phi.amplitudes())?;
        let residual = norm(
            &gphi
                .iter()
                .zip(phi.amplitudes())
                .map(|(&x, &p)| x - p * lambda)
                .collect::<Vec<_>>(),
        );
        if residual > cfg.tol_eig {
            return Err(Error::NumericalBreakdown {
                what: "eigenpair of G",
                residual,
            });
        }
        pairs.push(EigenPair {
            eigenvalue: lambda,
            state: phi,
        });
    }
    Ok(EigenSet {
        pairs,
        tol_null: cfg.tol_null,
    })
}

/// The projector pair attached to a pure state.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Pair {
    pub a: Projector,
    pub b: Projector,
    pub phi: PureState,
    pub xi: PureState,
}

/// Builds `A = |phi><phi|`, `B = |phi + xi><phi + xi| / 2`.
///
/// Without an explicit `xi`, the first canonical basis vector `e_i` with
/// `|<e_i|phi>|^2 < 1/2` is orthogonalized against `phi` (falling back to
/// the first `e_i` with a nonzero residual).
pub fn theorem2_pair(phi: &PureState, xi: Option<&PureState>, cfg: &Config) -> Result<Theorem2Pair> {
    let dim = phi.dim();
    if dim < 2 {
        return Err(Error::NoOrthogonalComplement);
    }
    let phi = PureState::new(phi.amplitudes().to_vec(), cfg)?;
    let xi = match xi {
        Some(xi) => {
            if xi.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: xi.dim(),
                });
            }
            let xi = PureState::new(xi.amplitudes().to_vec(), cfg)?;
            let overlap = inner(xi.amplitudes(), phi.amplitudes()).norm();
            if overlap > cfg.tol_identity {
                return Err(Error::NotOrthogonal { overlap });
            }
            xi
        }
        None => default_orthogonal(&phi)?,
    };

    let sum: Vec<C64> = phi
        .amplitudes()
        .iter()
        .zip(xi.amplitudes())
        .map(|(&p, &x)| p + x)
        .collect();
    let b = SquareMatrix::outer(&sum, &sum)?.scale(C64::new(0.5, 0.0));
    Ok(Theorem2Pair {
        a: Projector::from_state(&phi, cfg)?,
        b: Projector::new(b, cfg)?,
        phi,
        xi,
    })
}

fn default_orthogonal(phi: &PureState) -> Result<PureState> {
    let amps = phi.amplitudes();
    let dim = amps.len();
    let residual = |i: usize| -> Vec<C64> {
        // e_i - <phi|e_i> phi, projected twice
        let mut r = vec![C64::new(0.0, 0.0); dim];
        r[i] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            let c = inner(amps, &r);
            for (x, &p) in r.iter_mut().zip(amps) {
                *x -= c * p;
            }
        }
        r
    };
    let preferred = (0..dim).find(|&i| (1.0 - amps[i].norm_sqr()).abs() > 0.5);
    let chosen = preferred
        .map(residual)
        .or_else(|| (0..dim).map(residual).find(|r| norm(r) > 1e-8));
    match chosen {
        Some(r) => PureState::normalized(r),
        None => Err(Error::NoOrthogonalComplement),
    }
}
