//! Exact position distributions, moments and step-correlation statistics
//! for three discrete-time walks on the line and the 2D lattice:
//!
//! * the classical random walk (`crw`), whose position law is binomial;
//! * the many-coin quantum random walk (`qrw`), where every step flips a
//!   fresh quantum coin once — the initial coherence of the coin sets the
//!   drift, but steps stay independent and the law stays (quad)binomial;
//! * the conventional single-coin quantum walk (`qw`), whose sequential
//!   unitary evolution correlates steps and spreads ballistically.
//!
//! The `oracle` module provides independent validators (exhaustive path
//! enumeration, reproducible Monte Carlo sampling, total-variation and
//! chi-square comparison) used by the test suite and the CLI.

pub mod crw;
pub mod error;
pub mod oracle;
pub mod qrw;
pub mod qw;
pub mod types;

mod numeric;
mod quad;

pub use error::{Error, InvariantCheck, ValidationReport};
pub use types::{
    effective_coherence, grover4, hadamard2, validate_coin2, validate_coin4, CoinOperator,
    CoinState2, CoinState4, Distribution1D, Distribution2D, EffectiveCoherence, Moments1D,
    Moments2D,
};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
