//! Effects (`0 <= E <= I`) and POVMs, and the single-qubit version of the
//! witness argument with the observable class widened to effects.

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::generators::theorem2_pair;
use crate::linalg::{hermitian_eig, Projector, PureState, SquareMatrix};
use crate::witness::{check_theorem2, TheoremId, TheoremReport};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Effect {
    matrix: SquareMatrix,
}

impl Effect {
    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }
}

impl From<&Projector> for Effect {
    fn from(p: &Projector) -> Self {
        Effect {
            matrix: p.matrix().clone(),
        }
    }
}

/// Accepts a Hermitian `m` whose spectrum lies in `[0, 1]` within
/// `tol_identity`.
pub fn validate_effect(m: &SquareMatrix, cfg: &Config) -> Result<Effect> {
    let residual = m.hermiticity_residual();
    if residual > cfg.tol_identity {
        return Err(Error::NotHermitian { residual });
    }
    let eig = hermitian_eig(m, cfg)?;
    let min = eig.eigenvalues[0];
    let max = *eig.eigenvalues.last().expect("dim >= 1");
    if min < -cfg.tol_identity {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    if max > 1.0 + cfg.tol_identity {
        return Err(Error::EffectAboveIdentity { max_eigenvalue: max });
    }
    Ok(Effect { matrix: m.clone() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Povm {
    effects: Vec<Effect>,
    /// `||sum_i E_i - I||_F`.
    completeness_residual: f64,
}

impl Povm {
    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn completeness_residual(&self) -> f64 {
        self.completeness_residual
    }
}

/// Validates each effect and the completeness relation `sum_i E_i = I`.
pub fn validate_povm(effects: &[SquareMatrix], cfg: &Config) -> Result<Povm> {
    let first = effects.first().ok_or(Error::EmptyPovm)?;
    let dim = first.dim();
    let mut sum = SquareMatrix::zeros(dim);
    let mut validated = Vec::with_capacity(effects.len());
    for m in effects {
        let e = validate_effect(m, cfg)?;
        sum = sum.checked_add(e.matrix())?;
        validated.push(e);
    }
    let residual = (&sum - &SquareMatrix::identity(dim)).frobenius_norm();
    if residual > cfg.tol_identity {
        return Err(Error::PovmIncomplete { residual });
    }
    Ok(Povm {
        effects: validated,
        completeness_residual: residual,
    })
}

/// Runs [`check_theorem2`] on a qubit state and additionally validates
/// `{A, I - A}` and `{B, I - B}` as two-outcome POVMs, so that the
/// contradiction is exhibited on observables from the effect class.
pub fn bbks_qubit_demo(phi: &PureState, cfg: &Config) -> Result<TheoremReport> {
    if phi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: phi.dim(),
        });
    }
    let theorem = check_theorem2(phi, None, cfg)?;
    let pair = theorem2_pair(phi, None, cfg)?;

    let mut report = TheoremReport {
        theorem: TheoremId::BbksQubit,
        status: theorem.status,
        clauses: Vec::new(),
    };
    report.extend(theorem);
    for (name, p) in [("A", &pair.a), ("B", &pair.b)] {
        let complement = p.complement();
        let povm = validate_povm(&[p.matrix().clone(), complement.matrix().clone()], cfg);
        let (value, pass) = match &povm {
            Ok(povm) => (povm.completeness_residual(), true),
            Err(_) => (f64::INFINITY, false),
        };
        report = report.with_clause(
            format!("effects {{{name}, I-{name}}} form a POVM"),
            value,
            cfg.tol_identity,
            pass,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::random::random_projector;
    use crate::witness::ReportStatus;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn projectors_are_effects() {
        let c = cfg();
        for seed in 0..50 {
            let p = random_projector(4, 1 + seed as usize % 3, seed, &c).unwrap();
            assert!(validate_effect(p.matrix(), &c).is_ok());
            assert!(validate_povm(&[p.matrix().clone(), p.complement().matrix().clone()], &c).is_ok());
        }
    }

    #[test]
    fn half_identity_povm() {
        let c = cfg();
        let h = SquareMatrix::identity(2).scale(C64::new(0.5, 0.0));
        let povm = validate_povm(&[h.clone(), h], &c).unwrap();
        assert_eq!(povm.effects().len(), 2);
        assert_eq!(povm.completeness_residual(), 0.0);
    }

    #[test]
    fn rejections() {
        let c = cfg();
        assert!(matches!(
            validate_effect(&SquareMatrix::diag(&[-0.1, 0.5]).unwrap(), &c),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            validate_effect(&SquareMatrix::diag(&[0.2, 1.1]).unwrap(), &c),
            Err(Error::EffectAboveIdentity { .. })
        ));
        assert!(matches!(
            validate_effect(&SquareMatrix::from_real(2, &[0.5, 0.1, 0.0, 0.5]).unwrap(), &c),
            Err(Error::NotHermitian { .. })
        ));
        let h = SquareMatrix::diag(&[0.5, 0.5]).unwrap();
        assert!(matches!(validate_povm(&[h], &c), Err(Error::PovmIncomplete { .. })));
        assert_eq!(validate_povm(&[], &c), Err(Error::EmptyPovm));
    }

    #[test]
    fn qubit_demo() {
        let c = cfg();
        for phi in [
            PureState::basis(2, 0).unwrap(),
            PureState::normalized(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap(),
        ] {
            let r = bbks_qubit_demo(&phi, &c).unwrap();
            assert_eq!(r.status, ReportStatus::Pass, "{r:#?}");
            assert_eq!(r.theorem, TheoremId::BbksQubit);
            assert!((r.clauses[0].value - 0.25).abs() < 1e-15);
        }
        let phi3 = PureState::basis(3, 0).unwrap();
        assert!(bbks_qubit_demo(&phi3, &c).is_err());
    }
}
