//! Scalar abstraction: the library is generic over the floating-point type.

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the solvers work with (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + std::fmt::Debug
        + std::fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Shorthand for converting an `f64` literal into the working scalar type.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal not representable in scalar type")
}
