use num_complex::Complex;

use super::pfd::partial_fractions;
use super::rational::{Pole, PoleFactor, RationalFn};
use super::{AlgebraError, Polynomial};
use crate::real::{binomial, factorial, Real};
use crate::timefun::{DeltaTerm, Osc, SmoothTerm, TimeExpr};

/// Transform of a single smooth term:
/// `tⁿe^{at} → n!/(p-a)^{n+1}`, and for `e^{(a+iω)t}` the real or imaginary
/// part of `n!·(p - a + iω)^{n+1} / ((p-a)² + ω²)^{n+1}`.
fn transform_term<T: Real>(s: &SmoothTerm<T>) -> RationalFn<T> {
    let n = s.power;
    let scale = s.coeff * factorial::<T>(n);
    let k = n + 1;
    let (pole, num) = match s.osc {
        Osc::None => (Pole::real(s.rate), Polynomial::constant(scale)),
        Osc::Cos(w) | Osc::Sin(w) => {
            // (p - a + iω)^k = Σ_j C(k,j) p^j (iω - a)^{k-j}
            let shift = Complex::new(-s.rate, w);
            let coeffs: Vec<Complex<T>> = (0..=k)
                .map(|j| shift.powu(k - j) * binomial::<T>(k, j))
                .collect();
            let part: Vec<T> = match s.osc {
                Osc::Cos(_) => coeffs.iter().map(|c| c.re * scale).collect(),
                _ => coeffs.iter().map(|c| c.im * scale).collect(),
            };
            (Pole::pair(s.rate, w), Polynomial::new(part))
        }
    };
    RationalFn::from_factors(
        num,
        vec![PoleFactor {
            pole,
            multiplicity: k as usize,
        }],
    )
}

/// Exact Laplace transform. `δ^{(k)}` maps to `p^k`. The region of
/// convergence (`Re p` beyond every rate) is implicit.
pub fn laplace_transform<T: Real>(e: &TimeExpr<T>) -> RationalFn<T> {
    let smooth = e
        .smooth_terms()
        .iter()
        .fold(RationalFn::zero(), |acc, s| acc.add(&transform_term(s)));
    let deltas = Polynomial::new({
        let top = e
            .delta_terms()
            .iter()
            .map(|d| d.order)
            .max()
            .map_or(0, |k| k as usize + 1);
        let mut c = vec![T::zero(); top];
        for d in e.delta_terms() {
            c[d.order as usize] += d.coeff;
        }
        c
    });
    smooth.add(&RationalFn::from_poly(deltas))
}

/// Inverse transform through partial fractions. Conjugate pole pairs become
/// real `tⁿe^{at}(c₁cos ωt + c₂sin ωt)` terms and the polynomial quotient
/// becomes delta terms.
pub fn inverse_laplace<T: Real>(r: &RationalFn<T>) -> Result<TimeExpr<T>, AlgebraError> {
    let pf = partial_fractions(r)?;
    let mut smooth = Vec::new();
    for term in &pf.terms {
        let alpha = term.root;
        let n = (term.multiplicity - 1) as u32;
        let c = term.coefficient / factorial::<T>(n);
        if alpha.im == T::zero() {
            if c.im.abs() > T::imag_tol() * T::one().max(c.re.abs()) {
                return Err(AlgebraError::ResidualImaginaryTooLarge(
                    c.im.to_f64().unwrap_or(f64::NAN),
                ));
            }
            smooth.push(SmoothTerm::new(c.re, n, alpha.re, Osc::None));
        } else if alpha.im > T::zero() {
            // c e^{αt} + conj = 2 e^{at}(Re c cos ωt - Im c sin ωt)
            let two = T::lit(2.0);
            smooth.push(SmoothTerm::new(two * c.re, n, alpha.re, Osc::Cos(alpha.im)));
            smooth.push(SmoothTerm::new(
                -two * c.im,
                n,
                alpha.re,
                Osc::Sin(alpha.im),
            ));
        }
    }
    let deltas = pf
        .quotient
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &coeff)| DeltaTerm {
            coeff,
            order: k as u32,
        })
        .collect();
    Ok(TimeExpr::new(smooth, deltas))
}
