//! The real scalar type every numerical routine is generic over.

use std::fmt::{Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Floating point scalar usable by the FFT backend: `f32` or `f64`.
///
/// Tolerances throughout the crate are stated for `f64`; the `f32`
/// instantiation is supported but only meaningful at single precision.
pub trait Real:
    Float + FloatConst + FftNum + FromPrimitive + ToPrimitive + Display + LowerExp + Default + Sum
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    /// Lossy conversion from a count or index.
    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize representable")
    }

    /// Lossy conversion from a signed lattice index.
    #[inline]
    fn from_index(i: i64) -> Self {
        <Self as FromPrimitive>::from_i64(i).expect("i64 representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over a [`Real`] type.
pub type Cplx<T> = num_complex::Complex<T>;
