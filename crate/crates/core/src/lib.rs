//! Exact-arithmetic toolkit for (2,3)-generated orthogonal groups `Ω_n^ε(q)`, `q` odd:
//! finite fields, dense linear algebra, quadratic forms and spinor norms, explicit generator
//! pairs, identity checks, and Schreier–Sims certification at small sizes.

pub mod arith;
pub mod certify;
pub mod error;
pub mod factor;
pub mod ff;
pub mod forms;
pub mod gens;
pub mod matrix;
pub mod oracle;
pub mod order;
pub mod poly;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use ff::{Field, Fq};
pub use matrix::{Matrix, Vector};
pub use poly::Poly;

/// Seed used whenever a caller does not supply one.
pub const DEFAULT_SEED: u64 = 53251;
