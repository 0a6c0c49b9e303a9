use num_complex::Complex;

use super::rational::{PoleFactor, RationalFn};
use super::{AlgebraError, Polynomial};
use crate::real::Real;

/// `coefficient / (p - root)^multiplicity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfdTerm<T> {
    pub root: Complex<T>,
    pub multiplicity: usize,
    pub coefficient: Complex<T>,
}

/// Polynomial quotient plus proper partial fraction terms.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractions<T> {
    pub quotient: Polynomial<T>,
    pub terms: Vec<PfdTerm<T>>,
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Truncated power series of `(d + h)^k` in `h`.
fn binomial_series<T: Real>(d: Complex<T>, k: usize, order: usize) -> Vec<Complex<T>> {
    let mut out = vec![czero(); order];
    if order == 0 {
        return out;
    }
    out[0] = Complex::new(T::one(), T::zero());
    for _ in 0..k {
        for j in (0..order).rev() {
            let prev = if j > 0 { out[j - 1] } else { czero() };
            out[j] = out[j] * d + prev;
        }
    }
    out
}

fn series_mul<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = a.len();
    (0..n)
        .map(|j| (0..=j).fold(czero(), |acc, i| acc + a[i] * b[j - i]))
        .collect()
}

fn series_div<T: Real>(num: &[Complex<T>], den: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut out: Vec<Complex<T>> = Vec::with_capacity(num.len());
    for j in 0..num.len() {
        let acc = (1..=j).fold(num[j], |acc, i| acc - den[i] * out[j - i]);
        out.push(acc / den[0]);
    }
    out
}

/// All roots of the factored denominator as `(root, multiplicity)`.
fn complex_roots<T: Real>(poles: &[PoleFactor<T>]) -> Vec<(Complex<T>, usize)> {
    poles
        .iter()
        .flat_map(|f| {
            let z = f.pole.value();
            let conj = (!f.pole.is_real()).then(|| (z.conj(), f.multiplicity));
            std::iter::once((z, f.multiplicity)).chain(conj)
        })
        .collect()
}

/// Splits `R` into its polynomial part and residue terms. Residues at an
/// `m`-fold pole `α` come from the Taylor expansion of `N(p)/Q(p)` at `α`,
/// where `Q = D / (p - α)^m`; no limits are sampled.
pub fn partial_fractions<T: Real>(r: &RationalFn<T>) -> Result<PartialFractions<T>, AlgebraError> {
    let den = r.den();
    let (quotient, rem) = r.num().div_rem(&den);
    let roots = complex_roots(r.poles());
    let mut terms = Vec::new();
    if rem.is_zero() {
        return Ok(PartialFractions { quotient, terms });
    }
    for (i, &(alpha, m)) in roots.iter().enumerate() {
        let n_series = rem.taylor_at(alpha, m);
        let q_series = roots
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(binomial_series(czero(), 0, m), |acc, (_, &(beta, k))| {
                series_mul(&acc, &binomial_series(alpha - beta, k, m))
            });
        if q_series[0].norm() == T::zero() {
            return Err(AlgebraError::RootFinding);
        }
        let e = series_div(&n_series, &q_series);
        for (j, coefficient) in e.into_iter().enumerate() {
            terms.push(PfdTerm {
                root: alpha,
                multiplicity: m - j,
                coefficient,
            });
        }
    }
    Ok(PartialFractions { quotient, terms })
}

impl<T: Real> PartialFractions<T> {
    /// Recombines into `(numerator, denominator)` over a common
    /// denominator `Π (p - root)^max multiplicity`. Imaginary parts (roundoff
    /// for conjugate-symmetric input) are discarded.
    pub fn recombine(&self) -> (Polynomial<T>, Polynomial<T>) {
        let mut roots: Vec<(Complex<T>, usize)> = Vec::new();
        for t in &self.terms {
            match roots
                .iter_mut()
                .find(|(z, _)| (*z - t.root).norm() <= T::cluster_tol())
            {
                Some((_, m)) => *m = (*m).max(t.multiplicity),
                None => roots.push((t.root, t.multiplicity)),
            }
        }
        let one = vec![Complex::new(T::one(), T::zero())];
        let linear = |z: Complex<T>| vec![-z, Complex::new(T::one(), T::zero())];
        let power = |z: Complex<T>, k: usize| {
            (0..k).fold(one.clone(), |acc, _| {
                super::poly::cpoly_mul(&acc, &linear(z))
            })
        };
        let den_c = roots.iter().fold(one.clone(), |acc, &(z, k)| {
            super::poly::cpoly_mul(&acc, &power(z, k))
        });

        let mut num_c: Vec<Complex<T>> = super::poly::cpoly_mul(
            &self
                .quotient
                .coeffs()
                .iter()
                .map(|&c| Complex::new(c, T::zero()))
                .collect::<Vec<_>>(),
            &den_c,
        );
        for t in &self.terms {
            let cofactor = roots.iter().fold(vec![t.coefficient], |acc, &(z, k)| {
                let k = if (z - t.root).norm() <= T::cluster_tol() {
                    k - t.multiplicity
                } else {
                    k
                };
                super::poly::cpoly_mul(&acc, &power(z, k))
            });
            if num_c.len() < cofactor.len() {
                num_c.resize(cofactor.len(), czero());
            }
            for (a, b) in num_c.iter_mut().zip(cofactor) {
                *a = *a + b;
            }
        }
        let real = |v: Vec<Complex<T>>| Polynomial::new(v.into_iter().map(|c| c.re).collect());
        (real(num_c), real(den_c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type R = RationalFn<f64>;
    type P = Polynomial<f64>;

    fn coeff_of(pf: &PartialFractions<f64>, root: Complex<f64>, m: usize) -> Complex<f64> {
        pf.terms
            .iter()
            .find(|t| (t.root - root).norm() < 1e-12 && t.multiplicity == m)
            .map(|t| t.coefficient)
            .unwrap_or_default()
    }

    #[test]
    fn example_one_split() {
        let r = R::new(P::new(vec![1.0, 1.0]), P::new(vec![0.0, -1.0, 0.0, 1.0])).unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert!(pf.quotient.is_zero());
        assert_eq!(pf.terms.len(), 2);
        assert!(
            (coeff_of(&pf, Complex::new(0.0, 0.0), 1) - Complex::new(-1.0, 0.0)).norm() < 1e-14
        );
        assert!((coeff_of(&pf, Complex::new(1.0, 0.0), 1) - Complex::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn hyperbolic_split() {
        let r = R::new(P::one(), P::new(vec![-1.0, 0.0, 1.0])).unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert!((coeff_of(&pf, Complex::new(1.0, 0.0), 1) - Complex::new(0.5, 0.0)).norm() < 1e-14);
        assert!(
            (coeff_of(&pf, Complex::new(-1.0, 0.0), 1) - Complex::new(-0.5, 0.0)).norm() < 1e-14
        );
    }

    #[test]
    fn improper_with_conjugate_pair() {
        // p^2/(p^2+1) = 1 - 1/(p^2+1);  -1/(p^2+1) = (i/2)/(p-i) + (-i/2)/(p+i)
        let r = R::new(P::monomial(1.0, 2), P::new(vec![1.0, 0.0, 1.0])).unwrap();
        let pf = partial_fractions(&r).unwrap();
        assert_eq!(pf.quotient, P::one());
        let i = Complex::new(0.0, 1.0);
        assert!((coeff_of(&pf, i, 1) - Complex::new(0.0, 0.5)).norm() < 1e-14);
        assert!((coeff_of(&pf, i.conj(), 1) - Complex::new(0.0, -0.5)).norm() < 1e-14);
    }

    #[test]
    fn repeated_pole() {
        // (p + 1)/p^3 = 1/p^2 + 1/p^3
        let r = R::new(P::new(vec![1.0, 1.0]), P::monomial(1.0, 3)).unwrap();
        let pf = partial_fractions(&r).unwrap();
        let z = Complex::new(0.0, 0.0);
        assert!((coeff_of(&pf, z, 3) - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!((coeff_of(&pf, z, 2) - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert!(coeff_of(&pf, z, 1).norm() < 1e-14);
    }

    #[test]
    fn recombination_reproduces_input() {
        let num = P::new(vec![3.0, -1.0, 2.0, 0.5, 1.0]);
        let den = &P::from_real_roots(&[1.0, 1.0, -2.0]) * &P::new(vec![5.0, 2.0, 1.0]);
        let r = R::new(num, den).unwrap();
        let pf = partial_fractions(&r).unwrap();
        let (n, d) = pf.recombine();
        assert!(n.approx_eq(r.num(), 1e-12));
        assert!(d.approx_eq(&r.den(), 1e-12));
    }
}
