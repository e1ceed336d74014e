//! Exact computation on p-adic numbers, Heisenberg-type groups, their
//! invariant ultrametrics and Haar measures, and a formal-calculus layer.
//!
//! Everything here is exact: scalars are unbounded integers, rationals, or
//! capped-precision p-adic classes; metrics compare integer exponents; Haar
//! measures are rationals on an explicit cell algebra. No floating point
//! anywhere.
//!
//! Module map:
//! - [`exact`]: rationals, the p-adic absolute value, capped-precision
//!   p-adic scalars, certified series summation, residue-ring checks.
//! - [`rings`]: a pluggable commutative-ring layer (Z, Q, Z/m and its
//!   stride subrings, Q_p/Z_p), ring homomorphisms, matrix bilinear forms.
//! - [`heis`]: Heisenberg-type groups on R^N x R' from bilinear forms or
//!   2-cocycle tables, subgroup/normality/quotient machinery, dilations,
//!   and brute-force H^2 enumeration.
//! - [`metric`]: sequence-space ultrametrics, the standard ultranorm, the
//!   homogeneous gauge and its left-invariant distance, ultrametric checks.
//! - [`measure`]: exact Haar measure on p-adic boxes, dilation/shear/
//!   translation transformation laws, finite-quotient counting.
//! - [`calculus`]: sparse multivariate polynomials and truncated power
//!   series, invariant derivations, dilation pullbacks, the horizontal
//!   curve ODE, and convergent p-adic evaluation.
//! - [`check`]: seeded, deterministic property suites over all of the
//!   above (the `check` CLI subcommand runs these).
//!
//! Heavy enumerations run data-parallel under the default `parallel`
//! feature and fall back to sequential loops without it; the `*_seq`
//! entry points are always sequential for comparison.

// Double-index sums like Σ_{j,l} b_{j,l} w_j z_l read better as index
// loops, and the scalar types use add/mul/neg methods rather than the
// operator traits throughout.
#![allow(clippy::needless_range_loop, clippy::should_implement_trait)]

pub mod calculus;
pub mod check;
pub mod error;
pub mod exact;
pub mod exec;
pub mod heis;
pub mod measure;
pub mod metric;
pub mod rings;
pub mod sample;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
