use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar used by all geometry and quadrature in this crate.
///
/// `f32` and `f64` both implement it; `f64` is what the CLI and the
/// verification suites run on, and the concrete aliases at the crate root
/// are spelled out for that instantiation.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum<Self>
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Cast an `f64` constant into the scalar type.
    fn cast(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }

    fn cast_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }

    fn f64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum<T>
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Euclidean distance between two planar points.
#[inline]
pub fn dist2d<T: Scalar>(a: [T; 2], b: [T; 2]) -> T {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    (dx * dx + dy * dy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn casts_round_trip() {
        assert_eq!(f64::cast(0.5), 0.5);
        assert_eq!(f32::cast(0.25), 0.25f32);
        assert_eq!(f64::cast_usize(129), 129.0);
    }

    #[test]
    fn planar_distance() {
        assert_eq!(dist2d([0.0, 0.0], [3.0, 4.0]), 5.0);
        assert_eq!(dist2d([1.0f32, 1.0], [1.0, 1.0]), 0.0);
    }
}
