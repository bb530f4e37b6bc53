//! Exact arithmetic for the n-dimensional Peano space-filling curve.
//!
//! A parameter `t` in `[0, 1]` is a ternary digit sequence with an
//! eventually constant tail ([`DigitSeq`]). [`PeanoCurve`] maps it to a point
//! of `[0, 1]^n` whose coordinates are exact triadic rationals, inverts that
//! map digit by digit, and packs parameters into integer keys. The
//! [`analysis`] module checks distributional and fractal properties on finite
//! triadic grids.
//!
//! ```
//! use npeano::{DigitSeq, PeanoCurve};
//!
//! let curve = PeanoCurve::new(2).unwrap();
//! let t: DigitSeq = "0.1".parse().unwrap();
//! assert_eq!(curve.eval(&t, 4).unwrap().to_string(), "(1/3, 1)");
//! ```

pub mod affine;
pub mod analysis;
pub mod curve;
pub mod error;
pub mod inverse;
pub mod ternary;

pub use affine::{classic_peano_s, self_affine_params, AffineDecomposition, SelfAffineParams};
pub use analysis::Analyzer;
pub use curve::{xi_apply, PeanoCurve, Point};
pub use error::{Error, Result};
pub use inverse::{PointDigits, SfcKey};
pub use ternary::{Digit, DigitSeq, SignedTriadic, Tail, TriadicRational};
