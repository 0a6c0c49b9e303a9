use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::real::{binomial, Real};

/// Real polynomial in the Laplace variable `p`, coefficients in ascending
/// degree with trailing zeros stripped.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| *c == T::zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// `c·p^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `Π (p - root)` over real roots.
    pub fn from_real_roots(roots: &[T]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| &acc * &Self::new(vec![-r, T::one()]))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().copied().unwrap_or_else(T::zero)
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.abs()))
    }

    pub fn scaled(&self, k: T) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * T::from_usize_lossy(k))
                .collect(),
        )
    }

    /// Coefficients `d_j` of `P(z + h) = Σ d_j h^j` for `j < count`.
    pub fn taylor_at(&self, z: Complex<T>, count: usize) -> Vec<Complex<T>> {
        (0..count)
            .map(|j| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .skip(j)
                    .map(|(k, &c)| z.powu((k - j) as u32) * (c * binomial::<T>(k as u32, j as u32)))
                    .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
            })
            .collect()
    }

    /// `Σ |c_k| · C(k, j) · ρ^{k-j}`: magnitude bound of the `j`-th Taylor
    /// coefficient at any point of modulus `ρ`.
    pub fn taylor_scale(&self, rho: T, j: usize) -> T {
        self.coeffs
            .iter()
            .enumerate()
            .skip(j)
            .map(|(k, &c)| c.abs() * binomial::<T>(k as u32, j as u32) * rho.powi((k - j) as i32))
            .sum()
    }

    /// Euclidean division, `self = q·d + r` with `deg r < deg d`.
    ///
    /// # Panics
    ///
    /// Panics if `d` is the zero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd] / lead;
            quot[i] = q;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= q * dc;
            }
            rem[i + dd] = T::zero();
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Zeroes coefficients below `64·ε·reference` and strips the resulting
    /// trailing zeros. Used after sums where leading terms cancel in exact
    /// arithmetic.
    pub(crate) fn clean(self, reference: T) -> Self {
        let cut = T::epsilon() * T::lit(64.0) * reference;
        Self::new(
            self.coeffs
                .into_iter()
                .map(|c| if c.abs() <= cut { T::zero() } else { c })
                .collect(),
        )
    }

    /// Coefficientwise comparison relative to the larger coefficient scale.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        let scale = T::one().max(self.scale()).max(other.scale());
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| {
            let a = self.coeffs.get(k).copied().unwrap_or_else(T::zero);
            let b = other.coeffs.get(k).copied().unwrap_or_else(T::zero);
            (a - b).abs() <= tol * scale
        })
    }
}

impl<T: Real> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or_else(T::zero)
                        + rhs.coeffs.get(k).copied().unwrap_or_else(T::zero)
                })
                .collect(),
        )
    }
}

impl<T: Real> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        self + &(-rhs)
    }
}

impl<T: Real> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        self.scaled(-T::one())
    }
}

impl<T: Real> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Real> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == T::zero() {
                continue;
            }
            if !first {
                f.write_str(if c < T::zero() { " - " } else { " + " })?;
            } else if c < T::zero() {
                f.write_str("-")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c.abs())?,
                1 => write!(f, "{}*p", c.abs())?,
                _ => write!(f, "{}*p^{k}", c.abs())?,
            }
        }
        Ok(())
    }
}

/// Complex polynomial helpers for residue computations.
pub(crate) fn cpoly_mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex::new(T::zero(), T::zero()); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + x * y;
        }
    }
    out
}
