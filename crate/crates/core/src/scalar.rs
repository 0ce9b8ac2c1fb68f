//! Numeric abstraction shared by the graph, metric and community code.
//!
//! Edge weights, centralities and modularity are computed in a generic
//! scalar so the same algorithm can run on `f64` for production work and on
//! exact rationals when a result has to be compared bit-for-bit against an
//! enumeration oracle.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Field-like scalar: the four arithmetic operations, ordering and
/// conversions from counts. Implemented for `f32`, `f64` and `BigRational`.
pub trait Scalar:
    Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Converts an occurrence count. Every implementor can represent
    /// the counts this crate produces.
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable in scalar type")
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }
}

impl<T> Scalar for T where
    T: Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Scalars that additionally support square roots and IEEE semantics.
pub trait Real: Scalar + Float {}

impl<T> Real for T where T: Scalar + Float {}

/// Sums an iterator of scalars without requiring `std::iter::Sum`.
pub fn sum<T: Scalar, I: IntoIterator<Item = T>>(items: I) -> T {
    items.into_iter().fold(T::zero(), |acc, x| acc + x)
}
