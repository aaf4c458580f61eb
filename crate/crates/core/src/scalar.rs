//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar type the library is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion of a count or index.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Machine epsilon of the type, used to scale convergence thresholds.
    #[inline]
    fn eps() -> Self {
        Float::epsilon()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `e^{2πi m / n}` with the exponent reduced modulo `n` first, so large
/// integer phases do not lose precision.
#[inline]
pub fn unit_root<T: Real>(n: usize, m: i64) -> Complex<T> {
    let n_i = n as i64;
    let r = m.rem_euclid(n_i);
    let theta = T::TAU() * T::from_count(r as usize) / T::from_count(n);
    Complex::from_polar(T::one(), theta)
}

/// Conjugate Hölder exponent; `p = ∞` is encoded as `T::infinity()`.
pub fn conjugate_exponent<T: Real>(p: T) -> T {
    if p.is_infinite() {
        T::one()
    } else if p == T::one() {
        T::infinity()
    } else {
        p / (p - T::one())
    }
}
