//! Clenshaw-Curtis quadrature for integrands with algebraic and
//! algebraic-logarithmic endpoint singularities.
//!
//! The crate is organised bottom-up:
//!
//! - [`transform`]: DCT-I on Chebyshev-Lobatto grids and Chebyshev coefficients.
//! - [`rules`]: Clenshaw-Curtis and Gauss-Legendre nodes and weights.
//! - [`engine`]: rule application with nested sample reuse, the aliasing error
//!   identity and interval splitting.
//! - [`singular`]: singularity profiles, smoothness index, exponent ladders,
//!   coefficient asymptotics and the exact rational power sums.
//! - [`accel`]: Richardson extrapolation on nested grids and rate fitting.
//! - [`bench`]: reference oracle, test-function corpus, experiment runner and CLI.
//!
//! Data-parallel loops go through [`exec`]; with the default `parallel`
//! feature they run on rayon, otherwise sequentially. Results are bit-identical
//! either way because every reduction is done sequentially in a fixed order.

pub mod accel;
pub mod bench;
pub mod engine;
mod error;
pub mod exec;
pub mod rules;
pub mod singular;
pub mod sum;
pub mod transform;

pub use error::{Error, Result};
