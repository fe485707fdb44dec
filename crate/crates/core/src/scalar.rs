//! Coefficient field abstraction shared by the polynomial layer.
//!
//! Everything in [`crate::polyalg`] that only needs field arithmetic is
//! written against [`Scalar`]. The exact pipeline instantiates it with
//! [`crate::Rational`]; `f64`/`f32` are supported for quick numerical work but
//! zero tests on floats are exact comparisons, so gcd-like operations are only
//! meaningful over an exact field.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Num;

pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialEq + Debug + Send + Sync {
    fn from_i64(v: i64) -> Self;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
}
