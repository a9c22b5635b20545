//! Exact computations around moment-angle complexes `(D², S¹)^K`.
//!
//! The crate covers simplicial complexes and their full subcomplexes, integral
//! and field homology, the Hochster decomposition with its cup product, an
//! independent Koszul-type DGA model with triple Massey products, Golod-type
//! classifiers, permutohedral combinatorics and exact evaluators for the
//! piecewise-rational maps used to study co-H-structures.

pub mod catalog;
pub mod complex;
pub mod config;
pub mod error;
pub mod field;
pub mod geometry;
pub mod golod;
pub mod hochster;
pub mod homology;
pub mod koszul;
pub mod named;
pub mod permutohedron;
pub mod sampling;
pub mod subset;

pub use complex::{iota_inclusion, ComplexJson, SimplicialComplex, SimplicialMap};
pub use error::{Error, Result};
pub use field::{Coefficients, Field, PrimeField, Rationals};
pub use subset::VertexSubset;
