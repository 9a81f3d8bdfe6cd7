//! Exact structure-constant workbench for Hom-rhizaform algebras and their
//! relatives: identity checkers, Rota-Baxter and O-operator constructions,
//! Connes-cocycle solvers, nilpotency series, semigroup-indexed families and
//! a catalog of low-dimensional representatives.

pub mod algmodel;
pub mod axioms;
pub mod catalog;
pub mod cocycles;
pub mod error;
pub mod exactlin;
pub mod family;
pub mod nilpotency;
pub mod operators;
pub mod oracle;
pub mod report;

pub use algmodel::{BilinearOp, HomAlgebra, LinearMap};
pub use error::{Error, Result};
pub use exactlin::{Matrix, Rational, Vector};
pub use report::{CheckReport, Violation};
