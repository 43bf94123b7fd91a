//! Numerical verification of hyperbolicity for the non-wandering set of the
//! real quadratic family `f_c(x) = x^2 + c` with `c <= -2`.
//!
//! For `c < -2` the non-wandering set is the Cantor set
//! `C = bigcap_n f^{-n}(J)` with `J = [-p, -alpha] U [alpha, p]`, where `p` is
//! the positive fixed point and `alpha = sqrt(-c - p)` bounds the central
//! escape gap. The crate builds finite approximations of `C`, codes orbits
//! symbolically, and checks uniform expansion `|Df^n| >= prefactor * lambda^n`
//! through three certificate constructions:
//!
//! * **gap**: per-step bound `|2x| >= 2 alpha > 1`, valid when `alpha > 1/2`;
//! * **metric**: contraction of the interval hyperbolic metric under compact
//!   inclusion, combined with cross-ratio expansion of maps with negative
//!   Schwarzian derivative;
//! * **weight**: an adapted norm `omega = G^M` built from a frame cross-ratio,
//!   giving the one-step expansion `2|x| * R(x)^M > 1` on the invariant set.
//!
//! At `c = -2` the non-wandering set is the full interval `[-2, 2]` and is
//! *not* hyperbolic; the crate produces the explicit witness (the critical
//! orbit `0 -> -2 -> 2` with vanishing derivative cocycle against `4^n`
//! growth along its tail) instead of a certificate.
//!
//! Everything is plain `f64` with explicit tolerances; the goal is honest
//! desk-scale numerical evidence, not rigorous enclosures. All operations are
//! pure functions; parallel sweeps use order-independent reductions so every
//! result is deterministic regardless of thread count.

pub mod certificates;
pub mod error;
pub mod interval;
pub mod map;
pub mod metric;
pub mod nonwandering;
pub mod render;
pub mod symbolic;

pub use error::{Error, Result};
pub use interval::Interval;
pub use map::{analyze, MapParams, Regime, Sign};
pub use nonwandering::CantorApprox;
pub use symbolic::Word;
