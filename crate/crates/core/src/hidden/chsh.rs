//! Two-party, two-setting, two-outcome scenarios.

use super::scenario::{HvScenario, ScenarioObservable};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{DensityOperator, SquareMatrix};

/// Local observables of a CHSH experiment: `a1, a2` act on the first
/// factor, `b1, b2` on the second. Each must square to the identity.
#[derive(Debug, Clone)]
pub struct ChshSettings {
    pub a1: SquareMatrix,
    pub a2: SquareMatrix,
    pub b1: SquareMatrix,
    pub b2: SquareMatrix,
}

fn check_dichotomic(o: &SquareMatrix, cfg: &Config) -> Result<()> {
    let residual = o.hermiticity_residual();
    if residual > cfg.tol_identity {
        return Err(Error::NotHermitian { residual });
    }
    let residual = (&(o * o) - &SquareMatrix::identity(o.dim())).frobenius_norm();
    if residual > cfg.tol_eig {
        return Err(Error::NotDichotomic { residual });
    }
    Ok(())
}

impl ChshSettings {
    fn validate(&self, d: &DensityOperator, cfg: &Config) -> Result<(usize, usize)> {
        for o in [&self.a1, &self.a2, &self.b1, &self.b2] {
            check_dichotomic(o, cfg)?;
        }
        self.a1.same_dim(&self.a2)?;
        self.b1.same_dim(&self.b2)?;
        let (da, db) = (self.a1.dim(), self.b1.dim());
        if da * db != d.dim() {
            return Err(Error::DimensionMismatch {
                left: d.dim(),
                right: da * db,
            });
        }
        Ok((da, db))
    }

    /// `[[E(a1,b1), E(a1,b2)], [E(a2,b1), E(a2,b2)]]` with
    /// `E(a,b) = tr[D (a (x) b)]`.
    pub fn correlators(&self, d: &DensityOperator, cfg: &Config) -> Result<[[f64; 2]; 2]> {
        self.validate(d, cfg)?;
        let mut e = [[0.0; 2]; 2];
        for (i, a) in [&self.a1, &self.a2].into_iter().enumerate() {
            for (j, b) in [&self.b1, &self.b2].into_iter().enumerate() {
                e[i][j] = d.expectation(&a.tensor(b)?)?.re;
            }
        }
        Ok(e)
    }

    /// `E11 + E12 + E21 - E22`.
    pub fn value(&self, d: &DensityOperator, cfg: &Config) -> Result<f64> {
        let e = self.correlators(d, cfg)?;
        Ok(e[0][0] + e[0][1] + e[1][0] - e[1][1])
    }

    /// All eight CHSH expressions: the minus sign on each of the four
    /// correlators, each with both overall signs. A joint distribution
    /// exists iff all are at most 2.
    pub fn combinations(&self, d: &DensityOperator, cfg: &Config) -> Result<[f64; 8]> {
        let e = self.correlators(d, cfg)?;
        let flat = [e[0][0], e[0][1], e[1][0], e[1][1]];
        let total: f64 = flat.iter().sum();
        let mut out = [0.0; 8];
        for (k, &x) in flat.iter().enumerate() {
            let s = total - 2.0 * x;
            out[2 * k] = s;
            out[2 * k + 1] = -s;
        }
        Ok(out)
    }

    /// Scenario with observables `A1 (x) I, A2 (x) I, I (x) B1, I (x) B2`.
    pub fn scenario(&self, d: &DensityOperator, cfg: &Config) -> Result<HvScenario> {
        let (da, db) = self.validate(d, cfg)?;
        let (ia, ib) = (SquareMatrix::identity(da), SquareMatrix::identity(db));
        let observables = vec![
            ScenarioObservable::new("A1", self.a1.tensor(&ib)?, cfg)?,
            ScenarioObservable::new("A2", self.a2.tensor(&ib)?, cfg)?,
            ScenarioObservable::new("B1", ia.tensor(&self.b1)?, cfg)?,
            ScenarioObservable::new("B2", ia.tensor(&self.b2)?, cfg)?,
        ];
        HvScenario::new(d.clone(), observables, cfg)
    }
}

/// `tr[D (A1 B1 + A1 B2 + A2 B1 - A2 B2)]`.
pub fn chsh_value(
    d: &DensityOperator,
    a1: &SquareMatrix,
    a2: &SquareMatrix,
    b1: &SquareMatrix,
    b2: &SquareMatrix,
    cfg: &Config,
) -> Result<f64> {
    ChshSettings {
        a1: a1.clone(),
        a2: a2.clone(),
        b1: b1.clone(),
        b2: b2.clone(),
    }
    .value(d, cfg)
}

/// `cos(t) Z + sin(t) X`, a qubit observable with eigenvalues -1, +1.
pub fn qubit_observable(angle: f64) -> SquareMatrix {
    let (s, c) = angle.sin_cos();
    SquareMatrix::from_real(2, &[c, s, s, -c]).expect("finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PureState;
    use crate::C64;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn singlet() -> DensityOperator {
        let s = 0.5f64.sqrt();
        let z = C64::new(0.0, 0.0);
        let psi = PureState::new(vec![z, C64::new(s, 0.0), C64::new(-s, 0.0), z], &Config::default()).unwrap();
        DensityOperator::from_pure(&psi)
    }

    fn settings(t: [f64; 4]) -> ChshSettings {
        ChshSettings {
            a1: qubit_observable(t[0]),
            a2: qubit_observable(t[1]),
            b1: qubit_observable(t[2]),
            b2: qubit_observable(t[3]),
        }
    }

    #[test]
    fn singlet_correlator_is_minus_cosine() {
        let cfg = Config::default();
        let s = settings([0.3, 1.1, -0.4, 2.0]);
        let e = s.correlators(&singlet(), &cfg).unwrap();
        assert!((e[0][0] + (0.3f64 + 0.4).cos()).abs() < 1e-15);
        assert!((e[1][1] + (1.1f64 - 2.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn tsirelson_value() {
        let cfg = Config::default();
        let s = settings([0.0, FRAC_PI_2, PI + FRAC_PI_4, PI - FRAC_PI_4]);
        let v = s.value(&singlet(), &cfg).unwrap();
        assert!((v - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        let combos = s.combinations(&singlet(), &cfg).unwrap();
        assert_eq!(combos[6], v);
        assert_eq!(combos.iter().copied().fold(f64::MIN, f64::max), v);
    }

    #[test]
    fn rejects_bad_settings() {
        let cfg = Config::default();
        let mut s = settings([0.0; 4]);
        s.b2 = SquareMatrix::identity(3);
        assert!(s.value(&singlet(), &cfg).is_err());
        let qubit = DensityOperator::from_pure(&PureState::basis(2, 0).unwrap());
        assert!(matches!(
            settings([0.0; 4]).value(&qubit, &cfg),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
