//! Hypercomplex numbers a*1 + b*i + c*j + d*k with generic coefficients.
//!
//! Multiplication depends on a Cayley table and therefore lives on
//! [`crate::algebra::Algebra`]; everything componentwise lives here.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;

use crate::coeff::Coeff;
use crate::table::BASIS_NAMES;

/// Exact-rational hypercomplex number.
pub type HRat = HNum<BigRational>;
/// Float hypercomplex number.
pub type HFloat = HNum<f64>;

/// Which conjugation to apply. These are coefficient negations, chosen
/// so that `Phi` is complex conjugation
/// of the Phi subalgebra under its internal unity k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugation {
    /// Negates the i coefficient.
    Psi,
    /// Negates the j coefficient, fixes k.
    Phi,
    /// Negates i, j and k coefficients.
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HNum<S> {
    /// Coefficients of (1, i, j, k).
    pub c: [S; 4],
}

impl<S: Coeff> HNum<S> {
    pub fn new(c: [S; 4]) -> Self {
        HNum { c }
    }

    pub fn zero() -> Self {
        HNum { c: std::array::from_fn(|_| S::zero()) }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// The basis element with the given index (0..4) as a number.
    pub fn basis(idx: usize) -> Self {
        assert!(idx < 4);
        HNum { c: std::array::from_fn(|n| if n == idx { S::one() } else { S::zero() }) }
    }

    pub fn scalar(v: S) -> Self {
        HNum { c: [v, S::zero(), S::zero(), S::zero()] }
    }

    pub fn from_i64s(c: [i64; 4]) -> Self {
        HNum { c: std::array::from_fn(|n| S::from_i64(c[n])) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite_val())
    }

    pub fn scale(&self, s: &S) -> Self {
        HNum { c: std::array::from_fn(|n| self.c[n].clone() * s.clone()) }
    }

    pub fn conjugate(&self, kind: Conjugation) -> Self {
        let mut c = self.c.clone();
        match kind {
            Conjugation::Psi => c[1] = -c[1].clone(),
            Conjugation::Phi => c[2] = -c[2].clone(),
            Conjugation::Full => {
                for v in c.iter_mut().skip(1) {
                    *v = -v.clone();
                }
            }
        }
        HNum { c }
    }

    /// Euclidean norm of the coefficient vector, as f64.
    pub fn coeff_norm(&self) -> f64 {
        self.c.iter().map(|v| v.abs_f64() * v.abs_f64()).sum::<f64>().sqrt()
    }

    /// Max-norm over coefficients, as f64.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|v| v.abs_f64()).fold(0.0, f64::max)
    }

    /// True when all coefficients outside `indices` are zero.
    pub fn supported_on(&self, indices: &[usize]) -> bool {
        (0..4).all(|n| indices.contains(&n) || self.c[n].is_zero())
    }

    /// Like `supported_on` but with an absolute tolerance (float mode).
    pub fn supported_on_tol(&self, indices: &[usize], tol: f64) -> bool {
        (0..4).all(|n| indices.contains(&n) || self.c[n].abs_f64() <= tol)
    }
}

impl HFloat {
    pub fn approx_eq(&self, other: &HFloat, tol: f64) -> bool {
        (self.clone() - other.clone()).max_abs() <= tol
    }
}

impl<S: Coeff> Add for HNum<S> {
    type Output = HNum<S>;
    fn add(self, rhs: HNum<S>) -> HNum<S> {
        HNum { c: std::array::from_fn(|n| self.c[n].clone() + rhs.c[n].clone()) }
    }
}

impl<S: Coeff> Sub for HNum<S> {
    type Output = HNum<S>;
    fn sub(self, rhs: HNum<S>) -> HNum<S> {
        HNum { c: std::array::from_fn(|n| self.c[n].clone() - rhs.c[n].clone()) }
    }
}

impl<S: Coeff> Neg for HNum<S> {
    type Output = HNum<S>;
    fn neg(self) -> HNum<S> {
        HNum { c: std::array::from_fn(|n| -self.c[n].clone()) }
    }
}

impl<S: Coeff> fmt::Display for HNum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for n in 0..4 {
            if self.c[n].is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if n == 0 {
                write!(f, "{}", self.c[n])?;
            } else {
                write!(f, "{}{}", self.c[n], BASIS_NAMES[n])?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_ops_componentwise() {
        // (1+i) + (j+k) = 1+i+j+k
        let x = HFloat::from_i64s([1, 1, 0, 0]);
        let y = HFloat::from_i64s([0, 0, 1, 1]);
        assert_eq!(x + y, HFloat::from_i64s([1, 1, 1, 1]));
        // 2*(1-k) = 2-2k
        let z = HFloat::from_i64s([1, 0, 0, -1]);
        assert_eq!(z.scale(&2.0), HFloat::from_i64s([2, 0, 0, -2]));
        // x - x = 0
        let w = HRat::from_i64s([3, -7, 2, 5]);
        assert!((w.clone() - w).is_zero());
    }

    #[test]
    fn conjugations_negate_expected_coefficients() {
        // psi: 3+2i -> 3-2i
        let x = HRat::from_i64s([3, 2, 0, 0]);
        assert_eq!(x.conjugate(Conjugation::Psi), HRat::from_i64s([3, -2, 0, 0]));
        // phi: k+j -> k-j
        let y = HRat::from_i64s([0, 0, 1, 1]);
        assert_eq!(y.conjugate(Conjugation::Phi), HRat::from_i64s([0, 0, -1, 1]));
        // full: 1+i+j+k -> 1-i-j-k
        let z = HRat::from_i64s([1, 1, 1, 1]);
        assert_eq!(z.conjugate(Conjugation::Full), HRat::from_i64s([1, -1, -1, -1]));
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(HFloat::from_i64s([1, 0, 0, -2]).to_string(), "1 + -2k");
        assert_eq!(HFloat::zero().to_string(), "0");
    }
}
