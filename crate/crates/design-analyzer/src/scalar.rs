//! Scalar abstraction for the numeric half of the crate.
//!
//! Everything downstream of the metric matrix (centering, covariance,
//! eigen decomposition, principal components) is generic over a
//! floating-point scalar so the same routines run at `f32` or `f64`
//! precision. The crate root pins `f64` aliases for the default
//! command-line pipeline.

use std::fmt::{Debug, Display};

use num_traits::Float;

/// Floating-point scalar the numeric modules are generic over.
///
/// Implemented for `f32` and `f64` via the blanket impl; tolerances are
/// expressed as `f64` constants and cast in.
pub trait Scalar: Float + Debug + Display + 'static {
    /// Cast an `f64` constant (tolerance, count) into this scalar.
    fn from_f64(value: f64) -> Self {
        num_traits::cast(value).expect("f64 constant must be representable in the scalar type")
    }

    /// Widen to `f64` for formatting and diagnostics.
    fn as_f64(self) -> f64 {
        num_traits::cast(self).expect("scalar must be representable as f64")
    }
}

impl<T> Scalar for T where T: Float + Debug + Display + 'static {}
