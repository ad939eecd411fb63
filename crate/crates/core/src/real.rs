//! Scalar abstraction shared by plain numbers and truncated jets.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar coefficient field for the dual-number algebra.
///
/// Implemented by `f64` (plain evaluation) and by [`Jet`](crate::jet::Jet)
/// (evaluation that carries derivatives in the curve parameter). Division and
/// square root are total functions here; callers guard the leading value
/// against zero or negative input first, so error handling stays at the layer
/// that owns the tolerance.
pub trait Real:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    /// Leading (order-zero) value, used for threshold checks.
    fn val(self) -> f64;
    fn sqrt(self) -> Self;
    /// Multiplication by a plain constant.
    fn scale(self, k: f64) -> Self;
}

impl Real for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn val(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
}
