//! Exact piecewise-linear circle dynamics.
//!
//! Rational arithmetic throughout: circle points, PL lifts with jumps,
//! rotation numbers, Euler cocycles, semi-conjugacies and the Sullivan
//! cocycle on the double cover.

pub mod action;
pub mod checks;
pub mod circle;
pub mod cocycle;
pub mod error;
pub mod gen;
pub mod homeo;
pub mod json;
pub mod monotone;
pub mod pl;
pub mod rotation;
pub mod semiconj;
pub mod sullivan;
pub mod svg;

pub use circle::{CirclePoint, Rational};
pub use error::{Error, Result};
pub use homeo::{CircleHomeo, Group};
pub use pl::{Pl, PlLift};
