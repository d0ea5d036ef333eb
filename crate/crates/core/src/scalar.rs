//! Scalar abstraction for the numeric layer.
//!
//! Everything that is not exact integer combinatorics is generic over
//! [`Real`], which is implemented for `f32` and `f64`. Constants enter
//! through [`Real::val`], so tables of Gauss–Legendre nodes and the like are
//! written once in `f64` and converted.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`; the blessed way to inject constants.
    #[inline]
    fn val(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }

    #[inline]
    fn of_i64(x: i64) -> Self {
        Self::from_i64(x).expect("integer not representable in scalar type")
    }

    #[inline]
    fn of_usize(x: usize) -> Self {
        Self::from_usize(x).expect("count not representable in scalar type")
    }

    /// Round-trip into `f64` (used at the CLI boundary and for formatting).
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
