//! Exact Hochschild cohomology of the Beilinson algebra ∇A of a graded
//! down-up algebra `A(α, β)` with `(deg x, deg y) = (1, n)`.
//!
//! The crate builds ∇A as a bound quiver algebra, constructs its minimal
//! projective bimodule resolution, dualises it and reads off
//! `dim HH^0, HH^1, HH^2` by exact rank computations over ℚ or ℚ(√d). The
//! brute-force dimensions are compared with the closed-form case table, and
//! the Cartan, Serre and Coxeter matrices of ∇A are checked against the
//! Happel trace formula.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod grothendieck;
pub mod hochschild;
pub mod linalg;
pub mod quiver;
pub mod resolution;
pub mod scalar;

pub use linalg::{LinalgError, Matrix};
pub use quiver::{Algebra, Arrow, ArrowKind, DownUpParams, Path, Quiver, QuiverError};
pub use scalar::{Field, QuadScalar, Rational, ScalarError};
