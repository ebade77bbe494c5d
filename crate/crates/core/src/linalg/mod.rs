//! Dense complex linear algebra: matrices, validated operator roles,
//! the Hermitian eigensolver and the commutator objects.

pub mod commutator;
pub mod eig;
pub mod matrix;
pub mod operators;

pub use commutator::{commutator, compound_commutator, verify_identity_2_2, CompoundCommutator};
pub use eig::{hermitian_eig, SpectralDecomposition};
pub use matrix::{inner, multiply, norm, SquareMatrix, C64};
pub use operators::{overlap, DensityOperator, Projector, PureState};
