use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive};

/// Floating-point weight type: `f32` or `f64`.
///
/// Values stored in matrices and lists are extended reals: any finite value or
/// `+inf`. NaN and `-inf` are rejected at construction time.
pub trait Weight:
    Float + FromPrimitive + FromStr + Display + Debug + Default + Send + Sync + 'static
{
    /// Widening conversion used for checksums and statistics.
    fn to_f64_lossless(self) -> f64;
}

impl Weight for f32 {
    #[inline]
    fn to_f64_lossless(self) -> f64 {
        self as f64
    }
}

impl Weight for f64 {
    #[inline]
    fn to_f64_lossless(self) -> f64 {
        self
    }
}

/// True for finite values and `+inf`.
#[inline]
pub fn is_extended_weight<T: Weight>(x: T) -> bool {
    !x.is_nan() && x != T::neg_infinity()
}

/// Maps `-0.0` to `+0.0` so that min-plus sums never depend on the sign of zero.
#[inline]
pub(crate) fn canonical_zero<T: Weight>(x: T) -> T {
    if x == T::zero() {
        T::zero()
    } else {
        x
    }
}
