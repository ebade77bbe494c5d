//! Numerical checks of the conflict between noncommuting observables and
//! hidden-variable models.
//!
//! For two projectors `A`, `B` the compound commutator
//! `G(A, B) = [AB, BA] = ABA - BAB` is Hermitian, vanishes exactly when
//! `A` and `B` commute, and satisfies `[A, B]^dag [A, B] = (A - B) G`. Any
//! model assigning jointly distributed values to all observables in a pure
//! state `phi` forces `<phi|G|phi> = 0` whenever `A phi` and `B phi` are
//! nonzero. This crate computes that witness, builds the states and pairs on
//! which it is nonzero, decides finite joint-distribution problems by linear
//! programming, and simulates the sequential-measurement experiment that
//! measures the witness as an order effect.
//!
//! ```
//! use bks::{Config, PureState};
//! use bks::witness::check_theorem2;
//!
//! let cfg = Config::default();
//! let phi = PureState::basis(2, 0)?;
//! let report = check_theorem2(&phi, None, &cfg)?;
//! assert!(report.passed());
//! assert_eq!(report.clauses[0].value, 0.25);
//! # Ok::<(), bks::Error>(())
//! ```
//!
//! Modules:
//! * [`linalg`]: dense complex matrices, validated operators, the Jacobi
//!   eigensolver, commutators.
//! * [`generators`]: the eigenvector set `S(A, B)` and the projector pair
//!   attached to a state.
//! * [`random`]: seeded random states, projectors, densities and unitaries.
//! * [`witness`]: the witness and clause-by-clause theorem reports.
//! * [`povm`]: effects and POVMs.
//! * [`hidden`]: joint-distribution LPs, the simplex solver, CHSH.
//! * [`seqsim`]: Lüders updates and the two-order experiment.

#![forbid(unsafe_code)]

pub mod config;
mod error;
pub mod generators;
pub mod hidden;
pub mod linalg;
pub mod povm;
pub mod random;
pub mod seqsim;
pub mod witness;

pub use config::{Config, MAX_DIM};
pub use error::{Error, Result};
pub use linalg::{DensityOperator, Projector, PureState, SquareMatrix, C64};
