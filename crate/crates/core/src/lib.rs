//! Exact minimal log discrepancies of weighted blowups of affine space and
//! constructive lattice-point certificates for the failure of eps-lc-ness.
//!
//! The weighted blowup `X_a` of `A^n` with coprime weights `a` is toric; its
//! fan subdivides the first orthant along the ray through `a`. Everything
//! here reduces to the piecewise-linear log discrepancy function `psi` on
//! that fan and the polytope `C_n^eps = conv(0, eps*e_1, ..., eps*e_n, eps*a)`.

pub mod diophantine;
pub mod error;
pub mod harness;
pub mod lattice;
pub mod oracle;
pub mod report;
pub mod toric;
pub mod witness;

pub use error::{Error, Result};
pub use lattice::{LatticeVector, Rational, RationalVector};
pub use toric::WeightVector;

/// Default enumeration budget, overridable through `WBLOWUP_BUDGET`.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

pub const BUDGET_ENV: &str = "WBLOWUP_BUDGET";

/// Budget from the environment, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_BUDGET)
}
