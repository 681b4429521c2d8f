//! Walled Brauer algebras, Jucys–Murphy elements, the level-2 cyclotomic
//! degenerate affine walled Brauer algebra and the isomorphism between
//! Br_{r,t}(−δ) and its idempotent truncation, all computed explicitly.

pub mod algebra;
pub mod calculus;
pub mod center;
pub mod cyclotomic;
pub mod diagram;
pub mod error;
pub mod isomorphism;
pub mod jm;
pub mod matrix;
pub mod params;
pub mod poly;
pub mod presentation;
pub mod report;
pub mod scalar;
pub mod schur_weyl;
pub mod truncation;
pub mod young4;

pub use algebra::{Element, WalledBrauer};
pub use diagram::{Arrow, GenKind, OrientedDiagram, Sequence};
pub use error::{Error, Result};
pub use scalar::{BigFloat, DeltaPoly, Field, Rational, Ring, Scalar};
