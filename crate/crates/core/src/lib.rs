//! Pair correlation statistics of Farey fractions with congruence
//! constraints on the denominators.
//!
//! The Farey set of order `Q` is `{ a/q : 0 < a <= q <= Q, gcd(a,q) = 1 }`,
//! every reduced fraction in `(0, 1]` with denominator at most `Q`. This
//! crate works with that set and with two constrained families: denominators
//! coprime to a modulus `m`, and denominators in a fixed residue class
//! `b mod m` with `gcd(b, m) = 1`.
//!
//! For a finite set `F` of `N` points in `(0, 1]`, the pair correlation
//! measure of the window `[0, lambda]` is
//!
//! ```text
//! G_F(lambda) = (1/N) #{ (x, y) in F^2 : y != x, y - x mod 1 in (0, lambda/N] }
//! ```
//!
//! As `Q` grows these measures converge to explicit limits: a density
//! `g_m(lambda)` supported on `[C_m/2, oo)` built from the totient function
//! and a gcd correction, where `C_m` is the asymptotic density constant of
//! the constrained set. The crate provides
//!
//! - [`ntheory`]: linear sieves, the multiplicative kernel `K_m`, Ramanujan
//!   sums, the constants `C_m`, and a brute-force congruence counting oracle;
//! - [`farey`]: ordered streaming enumeration of the (constrained) Farey
//!   sets via the neighbor recurrence, with exact counts and interval slices;
//! - [`correlation`]: exact integer-arithmetic pair counting of scaled gaps,
//!   the empirical correlation curve, and a density histogram;
//! - [`theory`]: the closed-form limit curves, their cumulative forms, and
//!   the asymptotic identities used as cross-checks.
//!
//! All finite-`Q` statistics are computed exactly: window membership is
//! decided by cross-multiplied integer comparisons, never floating point.
//! Floating point enters only in the closed-form limit evaluations.
//!
//! The crate is `no_std`-compatible (`alloc` is required): disable default
//! features and enable `libm` for the float math.
//!
//! ```
//! use fareycorr::farey::{Constraint, FareySpec};
//! use fareycorr::{correlation, theory, Rational64};
//!
//! // Empirical pair correlation of odd-denominator Farey fractions ...
//! let spec = FareySpec::new(200, Constraint::CoprimeTo(2));
//! let curve = correlation::empirical_g(&spec, &[Rational64::new(1, 1)]).unwrap();
//! // ... is already close to its closed-form limit at Q = 200.
//! let limit = theory::cumulative_g_m(2, 1.0);
//! assert!((curve.rows[0].g_empirical - limit).abs() < 0.1);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("fareycorr needs either the `std` (default) or the `libm` feature");

pub mod correlation;
mod error;
pub mod farey;
mod fmath;
pub mod ntheory;
pub mod theory;

pub use error::Error;
pub use num_rational::Rational64;
