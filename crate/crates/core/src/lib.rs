//! Band-limited superoscillatory approximation of the Weierstrass function.
//!
//! The crate evaluates the superoscillating sequence
//! `F_n(x; α) = (cos(x/n) + iα sin(x/n))^n`, the truncated Weierstrass
//! series `W_N`, and the approximant `𝒲_{N,n}` obtained by substituting
//! `F_n(x; b^m π)` for each exponential; computes the explicit per-term and
//! global error bounds that control `|W_N − 𝒲_{N,n}|`; and maps where the
//! double limit `(N, n) → ∞` converges or blows up, depending on how fast
//! the oscillation order grows along a schedule `n_N`.
//!
//! Modules:
//! - [`numerics`]: log-polar complex values and cancellation-aware summation;
//! - [`superosc`]: `F_n` in closed and Fourier form, local wave number,
//!   Lagrange-type sequences `T_n`;
//! - [`weierstrass`]: `W`, `W_N`, and `𝒲_{N,n}` evaluators;
//! - [`bounds`]: the explicit error machinery and empirical sup-error
//!   measurements;
//! - [`regimes`]: divergence probes, growth schedules, regime
//!   classification, and the phase diagram;
//! - [`cli`]: the `superweier` command-line front end.

// `!(a < b)` appears where NaN must fail a domain check; `a >= b` would
// silently admit it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod regimes;
pub mod superosc;
pub mod svg;
pub mod weierstrass;

pub use error::{Error, Result};
pub use numerics::{
    logpolar_from_cartesian, scaled_sum, to_cartesian, CartesianComplex, LogPolarComplex,
    PrecisionConfig,
};
