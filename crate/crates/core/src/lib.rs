//! Geometric function theory on the unit disk, computed on truncated
//! Taylor series.
//!
//! - [`series`]: truncated complex power-series arithmetic
//! - [`zoo`]: Koebe, Möbius and the constructors of starlike, bounded-turning
//!   and close-to-convex functions from a Carathéodory series
//! - [`transforms`]: univalence-preserving maps, Libera/Bernardi integrals,
//!   Hadamard convolution and the iterated integral transforms
//! - [`caratheodory`]: Herglotz/Schwarz/Janowski representations, sampling
//!   and the sharp coefficient inequalities
//! - [`functionals`]: Fekete–Szegő, Hankel determinants, Bieberbach and
//!   covering checks
//! - [`probe`]: grid predicates for the geometric classes and radius solving
//! - [`report`]: batch sweeps of every bound over sampled functions
//! - [`cli`]: the `unidisk` command-line front end

pub mod caratheodory;
pub mod cli;
pub mod error;
pub mod functionals;
pub mod probe;
pub mod report;
pub mod series;
pub mod transforms;
pub mod zoo;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use series::{NormalizedSeries, TruncatedSeries, DEFAULT_ORDER};
