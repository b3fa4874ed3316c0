//! Exact-arithmetic toolkit certifying the orbit-boundary computations for
//! the 3x3 determinant cubic.
//!
//! Everything is computed over arbitrary-precision rationals: stabilizer
//! Lie-algebra dimensions as nullspaces of a 165x81 system, the
//! derivative-span invariant nu, the degeneration of the determinant along
//! a skew pencil, semistability witnesses from an invariant trace function,
//! and the two 34-dimensional tangent spaces at the generic skew point.
//! The `certify` binary runs the whole battery and emits a deterministic
//! JSON report; see [`certify`] for the check registry.

pub mod boundary;
pub mod certify;
pub mod error;
pub mod formmatrix;
pub mod forms;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod rng;
pub mod scalar;

pub use error::Error;
pub use formmatrix::{FormMatrix, Point};
pub use forms::{canonical_forms, det3, monomial_basis, p1, p2, Endo, Exponent9, Form};
pub use linalg::{kernel, rank, span_dim, Matrix, Subspace};
pub use scalar::Scalar;
