//! Scalar abstraction for the dense linear algebra kernel.
//!
//! Everything downstream instantiates [`crate::Rat`], but solving, simplex
//! pivoting and double description only need ordered-field arithmetic, so the
//! kernel stays generic over it.

use num_traits::Signed;

/// An ordered field element with exact comparisons.
pub trait Scalar: Signed + Clone + PartialOrd + std::fmt::Debug {}

impl<T> Scalar for T where T: Signed + Clone + PartialOrd + std::fmt::Debug {}
