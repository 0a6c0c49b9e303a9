//! Scalar abstraction shared by every module.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar the whole pipeline is generic over.
///
/// Besides the arithmetic bounds, each type carries the comparison
/// tolerances used by normalization, root clustering and the residue
/// realness check. The `f64` values are the reference ones; `f32` scales
/// them to its own precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + 'static
{
    /// Terms whose combined coefficient falls below this are dropped.
    fn drop_tol() -> Self;
    /// Two roots (or exponential rates) closer than this, relative to
    /// `max(1, |root|)`, are the same.
    fn cluster_tol() -> Self;
    /// Largest imaginary residue tolerated on a real pole.
    fn imag_tol() -> Self;
    /// Relative residual below which a polynomial is considered to vanish.
    fn vanish_tol() -> Self;

    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in scalar type")
    }
}

impl Real for f64 {
    fn drop_tol() -> Self {
        1e-12
    }
    fn cluster_tol() -> Self {
        1e-8
    }
    fn imag_tol() -> Self {
        1e-9
    }
    fn vanish_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn drop_tol() -> Self {
        1e-5
    }
    fn cluster_tol() -> Self {
        1e-3
    }
    fn imag_tol() -> Self {
        1e-3
    }
    fn vanish_tol() -> Self {
        1e-4
    }
}

/// `n!` as a scalar.
pub fn factorial<T: Real>(n: u32) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_u32(k).unwrap())
}

/// Binomial coefficient as a scalar.
pub fn binomial<T: Real>(n: u32, k: u32) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(T::one(), |acc, i| {
        acc * T::from_u32(n - i).unwrap() / T::from_u32(i + 1).unwrap()
    })
}

/// `true` when `a` and `b` agree within `tol * max(1, |a|, |b|)`.
pub fn close<T: Real>(a: T, b: T, tol: T) -> bool {
    (a - b).abs() <= tol * T::one().max(a.abs()).max(b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial::<f64>(0), 1.0);
        assert_eq!(factorial::<f64>(5), 120.0);
        assert_eq!(binomial::<f64>(5, 2), 10.0);
        assert_eq!(binomial::<f64>(3, 4), 0.0);
        assert_eq!(binomial::<f32>(6, 3), 20.0);
    }
}
