//! Exact periodic radix expansions of rationals, base-change keys, and
//! block-sum partition checks.
//!
//! The crate works with reduced fractions n/m in (0, 1) and an integer
//! base b >= 2, all as `u64` scalars. Everything is exact: digits come
//! from modular arithmetic on the denominator (128-bit intermediates, so
//! no overflow for any `u64` inputs), and value-level quantities such as
//! block values and repunits use arbitrary-precision integers.
//!
//! The main entry points:
//!
//! - [`expansion::expand`] computes the preperiodic and periodic digit
//!   strings of n/m in base b.
//! - [`rebase::key_of`] computes the residue sequence that transports an
//!   expansion from base b to base b + m·t, and [`rebase::rebase`]
//!   applies it digit by digit.
//! - [`midy::report`] splits the period of 1/p into d blocks and checks
//!   that the blocks sum to an exact multiple of the d-block repunit.
//! - [`sweep::run_sweep`] tabulates that multiplier over ranges of
//!   primes and bases, deterministically under any worker count.
//!
//! ```
//! use midybase::expansion::expand;
//!
//! let e = expand(1, 7, 10).unwrap();
//! assert_eq!(e.period(), &[1, 4, 2, 8, 5, 7]);
//! assert_eq!(e.to_string(), "0.(142857)");
//! ```

pub mod expansion;
pub mod midy;
pub mod numtheory;
pub mod rebase;
pub mod sweep;

mod error;

pub use error::{Error, Result};
