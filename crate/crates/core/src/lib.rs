//! Exact and asymptotic statistics of peaks of permutations restricted to a
//! conjugacy class of the symmetric group.
//!
//! The crate is `no_std` (it needs `alloc`). Layers, bottom-up:
//!
//! * [`numbers`], [`poly`], [`series`], [`partition`]: exact big-integer and
//!   rational primitives, dense polynomials, truncated power series, cycle
//!   types.
//! * [`perm`], [`eulerian`], [`class_dist`]: peaks and descents, Eulerian and
//!   peak polynomials of `S_n`, and the exact peak distribution of a single
//!   conjugacy class.
//! * [`sampling`]: uniform sampling from a conjugacy class and empirical
//!   diagnostics.
//! * [`asymptotics`]: the saddle-point parameter `t(s, n)`, the correction
//!   factors entering the class generating function, and the Gaussian
//!   predictions for the moment generating function.
//!
//! Floating point work that needs more than `f64` goes through the
//! double-double type [`Dd`].
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod asymptotics;
pub mod class_dist;
pub mod dd;
mod error;
pub mod eulerian;
pub mod numbers;
pub mod partition;
pub mod perm;
pub mod poly;
pub mod roots;
pub mod sampling;
pub mod series;

pub use dd::Dd;
pub use error::{Error, Result};
pub use partition::CycleType;
pub use perm::Permutation;
pub use poly::DensePolynomial;
pub use series::TruncatedSeries;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
