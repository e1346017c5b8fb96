//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating point scalar: `f32` or `f64`.
///
/// Everything in the crate is written against this trait. The default
/// tolerance is the absolute Frobenius-norm tolerance used by the matrix
/// invariant checks; it is tied to the precision of the type.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Default absolute tolerance for matrix identities.
    fn default_tol() -> Self;

    /// Default tolerance for the Riemann-relation certificate on periods.
    fn riemann_tol() -> Self;
}

impl Real for f64 {
    fn default_tol() -> Self {
        1e-10
    }
    fn riemann_tol() -> Self {
        1e-8
    }
}

impl Real for f32 {
    fn default_tol() -> Self {
        2e-4
    }
    fn riemann_tol() -> Self {
        1e-3
    }
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[inline]
pub fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(lit(re), lit(im))
}

#[inline]
pub fn i_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// `T::from_usize` without the `Option`.
#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("index representable in scalar type")
}
