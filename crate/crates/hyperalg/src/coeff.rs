//! Coefficient abstraction: exact big rationals for structural work,
//! f64 for analytic/spectral work.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Pivot threshold for float-mode linear solves.
pub const FLOAT_PIVOT_TOL: f64 = 1e-12;

pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_i64(v: i64) -> Self;

    /// Approximate magnitude, used for pivot selection and norms.
    fn abs_f64(&self) -> f64;

    /// Whether the value is usable as a Gaussian-elimination pivot.
    fn pivot_ok(&self) -> bool;

    fn is_finite_val(&self) -> bool;
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn abs_f64(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn pivot_ok(&self) -> bool {
        !self.is_zero()
    }

    fn is_finite_val(&self) -> bool {
        true
    }
}

impl Coeff for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn abs_f64(&self) -> f64 {
        self.abs()
    }

    fn pivot_ok(&self) -> bool {
        self.abs() > FLOAT_PIVOT_TOL
    }

    fn is_finite_val(&self) -> bool {
        self.is_finite()
    }
}
