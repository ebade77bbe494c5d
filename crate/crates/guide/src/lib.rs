//! The book chapters, compiled as rustdoc so that every listing in them is
//! run by `cargo test`. Each chapter gets its own module so a failing
//! doctest names the chapter it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/compound-commutator.md")]
pub mod compound_commutator {}

#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}

#[doc = include_str!("../../../book/src/witness.md")]
pub mod witness {}

#[doc = include_str!("../../../book/src/hidden-variables.md")]
pub mod hidden_variables {}

#[doc = include_str!("../../../book/src/sequential.md")]
pub mod sequential {}

#[doc = include_str!("../../../book/src/povm.md")]
pub mod povm {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
