//! Exact invariants of circle-invariant spherical CR structures on Seifert
//! 3-manifolds.
//!
//! - [`exact`]: the [`Rational`] value type and modular helpers.
//! - [`dedekind`]: three-argument Dedekind sums, fast and brute force.
//! - [`seifert`]: orbifold circle bundles and their ν, η, μ invariants.
//! - [`lens`]: lens spaces, with two independent routes to ν.
//! - [`obstruct`]: filling obstructions from ν and the characteristic numbers.
//! - [`expansion`]: exact Laurent-series check of the renormalized limit that defines ν.
//! - [`scan`]: family scans, parallel when the `parallel` feature is on.

pub mod dedekind;
pub mod error;
pub mod exact;
pub mod expansion;
pub mod lens;
pub mod obstruct;
pub mod par;
pub mod scan;
pub mod seifert;

pub use error::{Error, Result};
pub use exact::Rational;
pub use lens::{Convention, LensSpace};
pub use par::Exec;
pub use seifert::{OrbifoldPoint, SeifertData};
