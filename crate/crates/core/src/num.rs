//! Scalar abstraction for the numeric side of the crate.

use num_traits::{Float, FloatConst, NumAssign, NumCast};

/// Floating point scalar that coefficients, amplitudes and energies are
/// generic over. Implemented for `f32` and `f64`.
///
/// Tolerances quoted elsewhere in the documentation assume `f64`; the
/// crate root exports `f64` aliases of the main types.
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + Default
    + std::fmt::Debug
    + std::fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + NumAssign
        + Default
        + std::fmt::Debug
        + std::fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Lossy conversion from `f64`, for constants and shot weights.
pub(crate) fn real<T: Real>(v: f64) -> T {
    <T as NumCast>::from(v).expect("f64 value representable in scalar type")
}

/// Exact-ish conversion to `f64` for reporting.
pub(crate) fn to_f64<T: Real>(v: T) -> f64 {
    v.to_f64().expect("scalar value representable as f64")
}
