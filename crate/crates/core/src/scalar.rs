use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar the numerical code is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub(crate) fn cr<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

pub(crate) fn cn<T: Real>(n: usize) -> Complex<T> {
    Complex::new(T::from_usize_lossy(n), T::zero())
}

/// Tolerance used to recognise integer-valued parameters.
pub(crate) fn integer_tol<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(8.0))
}

/// Returns `j` when `z` lies within tolerance of the nonpositive integer `-j`.
pub fn nonpositive_integer<T: Real>(z: Complex<T>) -> Option<usize> {
    let r = z.re.round();
    if r > T::zero() {
        return None;
    }
    let tol = integer_tol::<T>() * T::one().max(r.abs());
    if (z.re - r).abs() <= tol && z.im.abs() <= tol {
        (-r).to_usize()
    } else {
        None
    }
}

/// Returns `j` when `z` lies within tolerance of the nonnegative integer `j`.
pub fn nonnegative_integer<T: Real>(z: Complex<T>) -> Option<usize> {
    nonpositive_integer(-z)
}

pub(crate) fn is_zero<T: Real>(z: Complex<T>) -> bool {
    z.re == T::zero() && z.im == T::zero()
}

/// Integer power that treats `0^0` as one.
pub(crate) fn powu<T: Real>(z: Complex<T>, n: usize) -> Complex<T> {
    let mut acc = Complex::new(T::one(), T::zero());
    let mut base = z;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}
