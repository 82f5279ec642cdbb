//! Numerical core for moment computations over families of even primitive
//! Dirichlet characters.
//!
//! The crate provides, bottom to top:
//!
//! - [`characters`]: exact Dirichlet-character arithmetic modulo an odd prime
//!   or a product of two distinct odd primes, Gauss sums, and closed-form
//!   family averages with their brute-force counterparts.
//! - [`special_functions`]: complex log-gamma, the smoothing weight used by
//!   the approximate functional equation, and the kernel/transform pair of
//!   the dual (Voronoi-type) summation formula, all via vertical-line
//!   contour quadrature.
//! - [`coefficients`]: Hecke-multiplicative coefficient sources — a synthetic
//!   Eisenstein family with closed-form oracles and an ingestion path for
//!   external coefficient tables — plus `L(1, f)` evaluation.
//! - [`lvalues`]: central values `L(1/2, f⊗χ)·conj(L(1/2, χ))` through a
//!   truncated joint approximate functional equation, with an independent
//!   Dirichlet-L route for cross-checking.
//! - [`moments`]: family sums, closed-form main terms, the `S₁ + S₂`
//!   decomposition, and trend tables across moduli.
//! - [`identity_lab`]: a standalone verification suite that evaluates both
//!   sides of every finite identity the pipeline relies on.
//!
//! # Conventions
//!
//! - `e(x) = exp(2πi·x)` is the additive character used everywhere; see
//!   [`numerics::e`].
//! - Complex numbers are `num_complex::Complex<f64>` (re-exported as
//!   [`Complex64`]).
//! - Every enumeration and reduction order is deterministic, so identical
//!   inputs produce bit-identical outputs regardless of how callers schedule
//!   the work.
//!
//! The crate is `no_std` (it requires `alloc`); everything involving files,
//! clocks, threads, or output formats lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod characters;
pub mod coefficients;
pub mod hurwitz;
pub mod identity_lab;
pub mod lvalues;
pub mod moments;
pub mod numerics;
pub mod special_functions;

mod error;

pub use error::{Error, Result};

/// Double-precision complex number used throughout the crate.
pub type Complex64 = num_complex::Complex<f64>;
