//! The commutator `[A, B]` and the compound commutator `G(A, B) = [AB, BA]`.
//!
//! For projectors, idempotence collapses `[AB, BA] = AB*BA - BA*AB` to
//! `ABA - BAB`. `G` is Hermitian, so unlike `[A, B]` it is an observable,
//! and `[A, B]^dag [A, B] = (A - B) G`.

use serde::Serialize;

use super::matrix::{multiply, SquareMatrix};
use super::operators::Projector;
use crate::config::Config;
use crate::error::{Error, Result};

/// `AB - BA`.
pub fn commutator(a: &SquareMatrix, b: &SquareMatrix) -> Result<SquareMatrix> {
    Ok(&multiply(a, b)? - &multiply(b, a)?)
}

/// `G(A, B)` together with the residuals of its two consistency checks.
#[derive(Debug, Clone, Serialize)]
pub struct CompoundCommutator {
    /// `ABA - BAB`.
    pub matrix: SquareMatrix,
    /// `||G - G^dag||_F`.
    pub hermiticity_residual: f64,
    /// `||(ABA - BAB) - (AB*BA - BA*AB)||_F`.
    pub form_residual: f64,
}

/// Computes `G = ABA - BAB` and checks it against the unreduced form
/// `[AB, BA]`. Fails with [`Error::NumericalBreakdown`] if either residual
/// exceeds `tol_identity`.
pub fn compound_commutator(a: &Projector, b: &Projector, cfg: &Config) -> Result<CompoundCommutator> {
    let (a, b) = (a.matrix(), b.matrix());
    let ab = multiply(a, b)?;
    let ba = multiply(b, a)?;
    let g = &(&ab * a) - &(&ba * b);
    let unreduced = &(&ab * &ba) - &(&ba * &ab);
    let form_residual = (&g - &unreduced).frobenius_norm();
    let hermiticity_residual = g.hermiticity_residual();
    if form_residual > cfg.tol_identity {
        return Err(Error::NumericalBreakdown {
            what: "[AB, BA] = ABA - BAB",
            residual: form_residual,
        });
    }
    if hermiticity_residual > cfg.tol_identity {
        return Err(Error::NumericalBreakdown {
            what: "G Hermitian",
            residual: hermiticity_residual,
        });
    }
    Ok(CompoundCommutator {
        matrix: g,
        hermiticity_residual,
        form_residual,
    })
}

/// `||C^dag C - (A - B) G||_F` with `C = [A, B]`, `G = ABA - BAB`.
pub fn verify_identity_2_2(a: &Projector, b: &Projector) -> Result<f64> {
    let (a, b) = (a.matrix(), b.matrix());
    let c = commutator(a, b)?;
    let ctc = &c.adjoint() * &c;
    let g = &(&(a * b) * a) - &(&(b * a) * b);
    let rhs = &(a - b) * &g;
    Ok((&ctc - &rhs).frobenius_norm())
}
