//! Exact computations with finite-dimensional sl2 modules.
//!
//! The crate builds the irreducible modules `V_m`, their tensor products and the
//! invariant bilinear forms that make them `*`-representations, then evaluates the
//! forms `ω_k` on the singular vectors of `V_m ⊗ V_n`. Every quantity is an exact
//! rational. Closed forms for singular vectors, `X^{s_k} b` and `ω_k` are always
//! paired with a brute-force matrix computation so the two can be compared exactly.
//!
//! Module map:
//! - [`arith`]: big rationals, factorials, binomials.
//! - [`linalg`]: dense exact matrices, operator powers, rank and null space.
//! - [`modules`]: weight modules, tensor products, weight spaces, decomposition.
//! - [`forms`]: `*`-compatible symmetric bilinear forms.
//! - [`omega`]: singular vectors and the forms `ω_k`.
//! - [`hypergeom`]: the Karlsson-Minton sum and its terminating `3F2` form.
//! - [`verify`]: parameter sweeps combining all of the above.

pub mod arith;
pub mod error;
pub mod forms;
pub mod hypergeom;
pub mod linalg;
pub mod modules;
pub mod omega;
pub mod verify;

pub use arith::Rational;
pub use error::{Error, Result};
