//! Exact computation of classical and generalized Poincare series of plane
//! curve and divisorial valuations on germs with Taylor coefficients in a
//! subfield of the complex numbers.
//!
//! The crate is organized around three independent routes to the same
//! series, which cross-validate each other:
//!
//! * [`poincare`] — closed-form products over resolution-graph data,
//!   expanded exactly in the truncated series ring `Z[L][[t]]`,
//! * [`galois`] — derivation of that graph data from a Puiseux-parametrized
//!   branch and its Galois orbit,
//! * [`oracle`] — brute-force jet dimensions `dim_Q J(v)/J(v+1)` by exact
//!   linear algebra, the ground truth everything else is checked against.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, no floating point anywhere.

pub mod error;
pub mod linalg;
pub mod lseries;
pub mod numfield;
pub mod branch;
pub mod galois;
pub mod poincare;
pub mod oracle;
pub mod io;

pub use error::Error;

/// Arbitrary-precision integer used for all series coefficients.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, always kept normalized.
pub type Rat = num_rational::BigRational;
