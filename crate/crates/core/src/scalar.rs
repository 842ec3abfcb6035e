//! Floating point abstraction shared by every numeric module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar type the spectral machinery is generic over.
///
/// The tolerance hooks carry the precision-dependent constants so that the
/// same algorithms run in `f64` (the reference precision) and `f32`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Slack used for every `λ ≤ ω` band membership decision.
    fn eps_eig() -> Self;

    /// Relative cutoff (against the largest Gram eigenvalue) below which a
    /// Gram eigenvalue counts as zero.
    fn rank_tol() -> Self;

    /// Absolute floor under which a smallest singular value is treated as zero.
    fn singular_floor() -> Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn eps_eig() -> Self {
        1e-9
    }

    fn rank_tol() -> Self {
        1e-10
    }

    fn singular_floor() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn eps_eig() -> Self {
        1e-4
    }

    fn rank_tol() -> Self {
        1e-5
    }

    fn singular_floor() -> Self {
        1e-6
    }
}

/// Euclidean norm of a coordinate slice.
pub fn norm<T: Scalar>(x: &[T]) -> T {
    x.iter().map(|&v| v * v).sum::<T>().sqrt()
}

pub fn dot<T: Scalar>(x: &[T], y: &[T]) -> T {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(&a, &b)| a * b).sum()
}

/// `‖x − y‖`.
pub fn distance<T: Scalar>(x: &[T], y: &[T]) -> T {
    debug_assert_eq!(x.len(), y.len());
    x.iter()
        .zip(y)
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum::<T>()
        .sqrt()
}
