//! Parametric fuzzy numbers with endpoints affine in the membership level `r`.
//!
//! A fuzzy number is stored as its pair of endpoint functions
//! `(lower(r), upper(r))`, `r ∈ [0, 1]`. Restricting both to `a + b·r` makes
//! every supremum over `r` an exact endpoint evaluation.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum FuzzyError {
    #[error("H-difference does not exist: the componentwise difference is not a fuzzy number")]
    NoHDifference,
}

/// `a + b·r`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AffineR<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> AffineR<T> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    pub fn constant(a: T) -> Self {
        Self { a, b: T::zero() }
    }

    pub fn zero() -> Self {
        Self::constant(T::zero())
    }

    pub fn eval(&self, r: T) -> T {
        self.a + self.b * r
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.a * k, self.b * k)
    }

    pub fn is_constant(&self) -> bool {
        self.b == T::zero()
    }
}

impl<T: Real> Add for AffineR<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<T: Real> Sub for AffineR<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl<T: Real> Neg for AffineR<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<T: Real> fmt::Display for AffineR<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == T::zero() {
            return write!(f, "{}", self.a);
        }
        if self.a == T::zero() {
            return write!(f, "{}*r", self.b);
        }
        if self.b < T::zero() {
            write!(f, "{} - {}*r", self.a, -self.b)
        } else {
            write!(f, "{} + {}*r", self.a, self.b)
        }
    }
}

/// One clause of the parametric fuzzy-number definition that failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation<T> {
    /// The lower endpoint decreases with `r` (slope given).
    LowerDecreasing(T),
    /// The upper endpoint increases with `r` (slope given).
    UpperIncreasing(T),
    /// `lower(r) > upper(r)` at the given level.
    Crossed { r: T, lower: T, upper: T },
}

impl<T: Real> fmt::Display for Violation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LowerDecreasing(b) => {
                write!(f, "lower endpoint decreasing in r (slope {b})")
            }
            Violation::UpperIncreasing(b) => {
                write!(f, "upper endpoint increasing in r (slope {b})")
            }
            Violation::Crossed { r, lower, upper } => {
                write!(f, "lower({r}) = {lower} > upper({r}) = {upper}")
            }
        }
    }
}

/// Clause-by-clause result of [`FuzzyNumber::validate`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Validity<T> {
    pub violations: Vec<Violation<T>>,
}

impl<T> Validity<T> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A fuzzy number in parametric form `(lower(r), upper(r))`.
///
/// Values violating the fuzzy-number conditions can still be built; use
/// [`FuzzyNumber::validate`] to see which condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FuzzyNumber<T> {
    pub lower: AffineR<T>,
    pub upper: AffineR<T>,
}

impl<T: Real> FuzzyNumber<T> {
    pub fn new(lower: AffineR<T>, upper: AffineR<T>) -> Self {
        Self { lower, upper }
    }

    /// Builds `(l0 + l1·r, u0 + u1·r)`.
    pub fn from_coeffs(l0: T, l1: T, u0: T, u1: T) -> Self {
        Self::new(AffineR::new(l0, l1), AffineR::new(u0, u1))
    }

    pub fn crisp(x: T) -> Self {
        Self::new(AffineR::constant(x), AffineR::constant(x))
    }

    pub fn zero() -> Self {
        Self::crisp(T::zero())
    }

    pub fn is_crisp(&self) -> bool {
        self.lower == self.upper && self.lower.is_constant()
    }

    /// The r-cut `[lower(r), upper(r)]`.
    pub fn cut(&self, r: T) -> (T, T) {
        (self.lower.eval(r), self.upper.eval(r))
    }

    /// Checks monotonicity of both endpoints and `lower ≤ upper`. Affinity
    /// means checking the slopes and the levels `r = 0, 1` is sufficient.
    pub fn validate(&self) -> Validity<T> {
        let mut violations = Vec::new();
        if self.lower.b < T::zero() {
            violations.push(Violation::LowerDecreasing(self.lower.b));
        }
        if self.upper.b > T::zero() {
            violations.push(Violation::UpperIncreasing(self.upper.b));
        }
        for r in [T::zero(), T::one()] {
            let (lower, upper) = self.cut(r);
            if lower > upper {
                violations.push(Violation::Crossed { r, lower, upper });
            }
        }
        Validity { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Endpointwise sum.
    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.lower + other.lower, self.upper + other.upper)
    }

    /// Multiplication by a crisp scalar; a negative factor swaps endpoints.
    pub fn scalar_mul(&self, j: T) -> Self {
        if j >= T::zero() {
            Self::new(self.lower.scale(j), self.upper.scale(j))
        } else {
            Self::new(self.upper.scale(j), self.lower.scale(j))
        }
    }

    /// Hukuhara difference `self ⊖ other`: the `z` with `self = other + z`.
    pub fn h_difference(&self, other: &Self) -> Result<Self, FuzzyError> {
        let z = Self::new(self.lower - other.lower, self.upper - other.upper);
        if z.is_valid() {
            Ok(z)
        } else {
            Err(FuzzyError::NoHDifference)
        }
    }

    /// `sup_r max(|Δlower(r)|, |Δupper(r)|)`, attained at `r ∈ {0, 1}`.
    pub fn hausdorff_distance(&self, other: &Self) -> T {
        let dl = self.lower - other.lower;
        let du = self.upper - other.upper;
        [
            dl.eval(T::zero()),
            dl.eval(T::one()),
            du.eval(T::zero()),
            du.eval(T::one()),
        ]
        .into_iter()
        .fold(T::zero(), |m, x| m.max(x.abs()))
    }
}

impl<T: Real> fmt::Display for FuzzyNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type F = FuzzyNumber<f64>;

    fn fz(l0: f64, l1: f64, u0: f64, u1: f64) -> F {
        F::from_coeffs(l0, l1, u0, u1)
    }

    #[test]
    fn validate_examples() {
        assert!(fz(-1.0, 1.0, 1.0, -1.0).is_valid());
        assert!(F::zero().is_valid());

        let bad = fz(1.0, 1.0, -2.0, 1.0).validate();
        assert!(!bad.is_valid());
        assert!(bad.violations.contains(&Violation::UpperIncreasing(1.0)));
        assert!(bad.violations.contains(&Violation::Crossed {
            r: 1.0,
            lower: 2.0,
            upper: -1.0
        }));
    }

    #[test]
    fn add_examples() {
        let u = fz(0.0, 1.0, 2.0, -1.0);
        assert_eq!(u.add(&F::zero()), u);
        let v = fz(-1.0, 1.0, 1.0, -1.0);
        assert_eq!(v.add(&v), fz(-2.0, 2.0, 2.0, -2.0));
        assert_eq!(
            fz(1.0, 1.0, -2.0, 1.0).add(&fz(1.0, -1.0, 0.0, 1.0)),
            fz(2.0, 0.0, -2.0, 2.0)
        );
    }

    #[test]
    fn scalar_mul_examples() {
        let u = fz(0.0, 1.0, 2.0, -1.0);
        assert_eq!(u.scalar_mul(1.0), u);
        let v = fz(-1.0, 1.0, 1.0, -1.0);
        assert_eq!(v.scalar_mul(2.0), fz(-2.0, 2.0, 2.0, -2.0));
        assert_eq!(v.scalar_mul(-1.0), v);
    }

    #[test]
    fn h_difference_examples() {
        let x = fz(0.0, 2.0, 4.0, -2.0);
        let y = fz(0.0, 1.0, 2.0, -1.0);
        let z = x.h_difference(&y).unwrap();
        assert_eq!(z, y);
        assert_eq!(y.add(&z), x);
        assert_eq!(x.h_difference(&x).unwrap(), F::zero());
        assert_eq!(y.h_difference(&x), Err(FuzzyError::NoHDifference));
    }

    #[test]
    fn hausdorff_examples() {
        let u = fz(0.0, 1.0, 2.0, -1.0);
        assert_eq!(u.hausdorff_distance(&u), 0.0);
        assert_eq!(u.hausdorff_distance(&F::zero()), 2.0);
    }

    #[test]
    fn generic_over_f32() {
        let u = FuzzyNumber::<f32>::from_coeffs(0.0, 1.0, 2.0, -1.0);
        assert_eq!(u.hausdorff_distance(&FuzzyNumber::zero()), 2.0);
        assert!(u.is_valid());
    }

    fn valid_fuzzy() -> impl Strategy<Value = F> {
        // lower = l0 + l1 r, upper = u0 + u1 r with l1 >= 0 >= u1 and
        // lower(1) <= upper(1).
        (-5.0..5.0f64, 0.0..3.0f64, 0.0..3.0f64, 0.0..4.0f64).prop_map(|(l0, l1, u1, gap)| {
            let u0 = l0 + l1 + u1 + gap;
            fz(l0, l1, u0, -u1)
        })
    }

    proptest! {
        #[test]
        fn translation_invariance(u in valid_fuzzy(), v in valid_fuzzy(), w in valid_fuzzy()) {
            let lhs = u.add(&w).hausdorff_distance(&v.add(&w));
            prop_assert!((lhs - u.hausdorff_distance(&v)).abs() <= 1e-12);
        }

        #[test]
        fn scale_homogeneity(u in valid_fuzzy(), v in valid_fuzzy(), k in -4.0..4.0f64) {
            let lhs = u.scalar_mul(k).hausdorff_distance(&v.scalar_mul(k));
            prop_assert!((lhs - k.abs() * u.hausdorff_distance(&v)).abs() <= 1e-12);
        }

        #[test]
        fn triangle_type(u in valid_fuzzy(), v in valid_fuzzy(), w in valid_fuzzy(), e in valid_fuzzy()) {
            let lhs = u.add(&v).hausdorff_distance(&w.add(&e));
            prop_assert!(lhs <= u.hausdorff_distance(&w) + v.hausdorff_distance(&e) + 1e-12);
        }

        #[test]
        fn h_difference_round_trip(y in valid_fuzzy(), z in valid_fuzzy()) {
            let x = y.add(&z);
            if let Ok(d) = x.h_difference(&y) {
                let back = y.add(&d);
                prop_assert!((back.lower.a - x.lower.a).abs() <= 1e-12);
                prop_assert!((back.lower.b - x.lower.b).abs() <= 1e-12);
                prop_assert!((back.upper.a - x.upper.a).abs() <= 1e-12);
                prop_assert!((back.upper.b - x.upper.b).abs() <= 1e-12);
            }
        }

        #[test]
        fn double_negation(u in valid_fuzzy()) {
            prop_assert_eq!(u.scalar_mul(-1.0).scalar_mul(-1.0), u);
        }
    }
}
