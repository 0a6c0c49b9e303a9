//! Rational functions of `p` whose denominators are kept factored.
//!
//! The denominator is a monic product of pole factors: `(p - a)` for a real
//! pole, `(p - a)² + ω²` for a conjugate pair `a ± iω`. Sums take the least
//! common multiple of the factor lists and products concatenate them, so only
//! division by a rational (whose numerator becomes a denominator) needs
//! [`poly_roots`].

use std::fmt;

use num_complex::Complex;

use super::{poly_roots, AlgebraError, Polynomial};
use crate::real::{close, Real};

/// A real pole (`im == 0`) or the conjugate pair `re ± i·im` (`im > 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Pole<T> {
    pub fn real(re: T) -> Self {
        Self { re, im: T::zero() }
    }

    /// Pair `re ± i·im`; the sign of `im` is ignored.
    pub fn pair(re: T, im: T) -> Self {
        Self { re, im: im.abs() }
    }

    pub fn is_real(&self) -> bool {
        self.im == T::zero()
    }

    /// The representative root (upper half plane for pairs).
    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re, self.im)
    }

    /// Degree contributed by one power of this factor.
    pub fn degree(&self) -> usize {
        if self.is_real() {
            1
        } else {
            2
        }
    }

    /// Monic real factor polynomial.
    pub fn factor(&self) -> Polynomial<T> {
        if self.is_real() {
            Polynomial::new(vec![-self.re, T::one()])
        } else {
            let two = T::lit(2.0);
            Polynomial::new(vec![
                self.re * self.re + self.im * self.im,
                -two * self.re,
                T::one(),
            ])
        }
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.is_real() == other.is_real()
            && close(self.re, other.re, T::cluster_tol())
            && close(self.im, other.im, T::cluster_tol())
            && (self.value() - other.value()).norm()
                <= T::cluster_tol() * T::one().max(self.value().norm())
    }

    fn key(&self) -> (T, T) {
        (self.re, self.im)
    }
}

/// `factor(pole)^multiplicity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleFactor<T> {
    pub pole: Pole<T>,
    pub multiplicity: usize,
}

/// `num / Π factor^multiplicity`, in lowest terms with a monic denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn<T> {
    num: Polynomial<T>,
    poles: Vec<PoleFactor<T>>,
}

/// Binary operations for [`rat_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Mul,
    Div,
}

/// `A op B`, normalized.
pub fn rat_arith<T: Real>(
    op: RatOp,
    a: &RationalFn<T>,
    b: &RationalFn<T>,
) -> Result<RationalFn<T>, AlgebraError> {
    match op {
        RatOp::Add => Ok(a.add(b)),
        RatOp::Mul => Ok(a.mul(b)),
        RatOp::Div => a.div(b),
    }
}

fn merge_poles<T: Real>(
    into: &mut Vec<PoleFactor<T>>,
    pf: PoleFactor<T>,
    combine: fn(usize, usize) -> usize,
) {
    match into.iter_mut().find(|f| f.pole.same_as(&pf.pole)) {
        Some(f) => f.multiplicity = combine(f.multiplicity, pf.multiplicity),
        None => into.push(pf),
    }
}

fn expand<T: Real>(factors: &[PoleFactor<T>]) -> Polynomial<T> {
    factors.iter().fold(Polynomial::one(), |acc, f| {
        let base = f.pole.factor();
        (0..f.multiplicity).fold(acc, |acc, _| &acc * &base)
    })
}

impl<T: Real> RationalFn<T> {
    /// `num / den` with `den` factored by root finding.
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZeroRational);
        }
        let lead = den.leading();
        let poles = poles_of(&den)?;
        Ok(Self::from_factors(num.scaled(T::one() / lead), poles))
    }

    /// Builds from a numerator and the monic factored denominator.
    pub fn from_factors(num: Polynomial<T>, factors: Vec<PoleFactor<T>>) -> Self {
        let mut poles = Vec::new();
        for f in factors.into_iter().filter(|f| f.multiplicity > 0) {
            merge_poles(&mut poles, f, |a, b| a + b);
        }
        Self { num, poles }.normalize()
    }

    pub fn from_poly(num: Polynomial<T>) -> Self {
        Self {
            num,
            poles: Vec::new(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// The Laplace variable `p` itself.
    pub fn p() -> Self {
        Self::from_poly(Polynomial::monomial(T::one(), 1))
    }

    pub fn num(&self) -> &Polynomial<T> {
        &self.num
    }

    /// Expanded monic denominator.
    pub fn den(&self) -> Polynomial<T> {
        expand(&self.poles)
    }

    pub fn poles(&self) -> &[PoleFactor<T>] {
        &self.poles
    }

    pub fn den_degree(&self) -> usize {
        self.poles
            .iter()
            .map(|f| f.pole.degree() * f.multiplicity)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `num degree ≥ den degree`.
    pub fn is_improper(&self) -> bool {
        self.num.degree().is_some_and(|d| d >= self.den_degree())
    }

    pub fn eval(&self, p: T) -> T {
        self.num.eval(p) / self.den().eval(p)
    }

    pub fn eval_complex(&self, p: Complex<T>) -> Complex<T> {
        self.num.eval_complex(p) / self.den().eval_complex(p)
    }

    pub fn scale(&self, k: T) -> Self {
        if k == T::zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scaled(k),
            poles: self.poles.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-T::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut lcm = self.poles.clone();
        for f in &other.poles {
            merge_poles(&mut lcm, *f, usize::max);
        }
        let lift = |r: &Self| {
            let missing: Vec<PoleFactor<T>> = lcm
                .iter()
                .map(|l| {
                    let have = r
                        .poles
                        .iter()
                        .find(|f| f.pole.same_as(&l.pole))
                        .map_or(0, |f| f.multiplicity);
                    PoleFactor {
                        pole: l.pole,
                        multiplicity: l.multiplicity - have,
                    }
                })
                .collect();
            &r.num * &expand(&missing)
        };
        let (x, y) = (lift(self), lift(other));
        let reference = x.scale().max(y.scale());
        let num = (&x + &y).clean(reference);
        Self { num, poles: lcm }.normalize()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut poles = self.poles.clone();
        for f in &other.poles {
            merge_poles(&mut poles, *f, |a, b| a + b);
        }
        Self {
            num: &self.num * &other.num,
            poles,
        }
        .normalize()
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZeroRational);
        }
        let inverse = Self::new(other.den(), other.num.clone())?;
        Ok(self.mul(&inverse))
    }

    /// Cancels every pole that is also a root of the numerator, then sorts
    /// the factors.
    fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            self.poles.clear();
            return self;
        }
        for f in self.poles.iter_mut() {
            let z = f.pole.value();
            let factor = f.pole.factor();
            while f.multiplicity > 0 {
                let value = self.num.eval_complex(z).norm();
                let scale = self.num.taylor_scale(z.norm(), 0);
                if value > T::vanish_tol() * scale {
                    break;
                }
                let (q, _) = self.num.div_rem(&factor);
                self.num = q;
                f.multiplicity -= 1;
                if self.num.is_zero() {
                    break;
                }
            }
        }
        self.poles.retain(|f| f.multiplicity > 0);
        self.poles.sort_by(|a, b| {
            a.pole
                .key()
                .partial_cmp(&b.pole.key())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        self
    }

    /// Coefficientwise comparison of numerators and expanded denominators.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.num.approx_eq(&other.num, tol) && self.den().approx_eq(&other.den(), tol)
    }
}

/// Factors a denominator polynomial into monic pole factors.
fn poles_of<T: Real>(den: &Polynomial<T>) -> Result<Vec<PoleFactor<T>>, AlgebraError> {
    Ok(poly_roots(den)?
        .into_iter()
        .filter(|r| r.value.im >= T::zero())
        .map(|r| PoleFactor {
            pole: if r.value.im == T::zero() {
                Pole::real(r.value.re)
            } else {
                Pole::pair(r.value.re, r.value.im)
            },
            multiplicity: r.multiplicity,
        })
        .collect())
}

impl<T: Real> fmt::Display for RationalFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type R = RationalFn<f64>;
    type P = Polynomial<f64>;

    fn inv_p(k: usize) -> R {
        R::from_factors(
            P::one(),
            vec![PoleFactor {
                pole: Pole::real(0.0),
                multiplicity: k,
            }],
        )
    }

    #[test]
    fn identity_and_powers() {
        let a = R::new(P::new(vec![1.0, 1.0]), P::new(vec![0.0, 0.0, 1.0])).unwrap();
        assert!(a.mul(&R::one()).approx_eq(&a, 0.0));
        assert!(inv_p(1).mul(&inv_p(1)).approx_eq(&inv_p(2), 0.0));
    }

    #[test]
    fn transform_of_convolution() {
        // L[1] · L[1 + t] = (p + 1)/p^3
        let one_plus_t = R::new(P::new(vec![1.0, 1.0]), P::monomial(1.0, 2)).unwrap();
        let got = inv_p(1).mul(&one_plus_t);
        let want = R::new(P::new(vec![1.0, 1.0]), P::monomial(1.0, 3)).unwrap();
        assert!(got.approx_eq(&want, 1e-15));
    }

    #[test]
    fn cancellation() {
        // (p + 1) / (p (p - 1)(p + 1)) = 1 / (p (p - 1))
        let r = R::new(P::new(vec![1.0, 1.0]), P::new(vec![0.0, -1.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.num(), &P::one());
        assert!(r.den().approx_eq(&P::new(vec![0.0, -1.0, 1.0]), 1e-14));
    }

    #[test]
    fn division_and_sums() {
        // p - 1/p = (p^2 - 1)/p
        let m = R::p().sub(&inv_p(1));
        assert!(m.num().approx_eq(&P::new(vec![-1.0, 0.0, 1.0]), 1e-15));
        // (1/p) / m = 1/(p^2 - 1)
        let q = inv_p(1).div(&m).unwrap();
        assert!(q.approx_eq(
            &R::new(P::one(), P::new(vec![-1.0, 0.0, 1.0])).unwrap(),
            1e-14
        ));
        assert!(inv_p(1).sub(&inv_p(1)).is_zero());
        assert_eq!(
            R::one().div(&R::zero()),
            Err(AlgebraError::DivisionByZeroRational)
        );
        let via = rat_arith(RatOp::Add, &inv_p(1), &inv_p(2)).unwrap();
        assert!(via.approx_eq(
            &R::new(P::new(vec![1.0, 1.0]), P::monomial(1.0, 2)).unwrap(),
            1e-15
        ));
    }

    #[test]
    fn monic_denominator() {
        let r = R::new(P::constant(4.0), P::new(vec![2.0, 2.0])).unwrap();
        assert_eq!(r.num(), &P::constant(2.0));
        assert_eq!(r.den(), P::new(vec![1.0, 1.0]));
    }
}
