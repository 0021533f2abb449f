//! Exact algebra for rank-metric list-decoding experiments.
//!
//! The crate builds Gabidulin codes over small extension fields, the
//! subspace-polynomial families whose members share their top coefficients,
//! and the center words that have exponentially many codewords within a
//! small rank radius. Every claim is certified by brute force: kernels are
//! found by scanning the field, balls by scanning the code.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the modulus
//! table override and the command line live in the `ranklab` crate.

#![no_std]

extern crate alloc;

pub mod adversarial;
pub mod arith;
pub mod constructions;
mod error;
pub mod field;
pub mod gabidulin;
pub mod gfq;
pub mod linpoly;
pub mod poly;
pub mod subspace;
pub mod subspace_code;

pub use error::{Error, Result};
pub use field::{make_field, Elem, Embedding, Field, ModulusTable};
pub use gabidulin::{GabidulinCode, RankWord};
pub use linpoly::LinearizedPoly;
pub use subspace::Subspace;
