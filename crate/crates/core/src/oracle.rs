//! Independent numerical cross-checks for closed-form solutions.
//!
//! [`numeric_solve`] integrates the classical endpoint system by explicit
//! Heun stepping with a trapezoidal convolution sum; [`residual_check`]
//! substitutes a closed form back into the equation, using the analytic
//! derivative and composite Simpson quadrature for the memory term.

use thiserror::Error;

use crate::real::Real;
use crate::solver::{End, EquationPairing, FcvideProblem, FuzzyFn, FuzzySolution};
use crate::timefun::TimeExpr;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("at least 16 steps are required, got {0}")]
    TooFewSteps(usize),
    #[error("membership level r = {0} outside [0, 1]")]
    LevelOutOfRange(f64),
    #[error("t_max must be positive, got {0}")]
    BadHorizon(f64),
}

/// Panels used by [`residual_check`].
pub const SIMPSON_PANELS: usize = 10_000;

/// Endpoint trajectories at a fixed level `r` on `t_i = i·h`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericTrajectory<T> {
    pub t_grid: Vec<T>,
    pub lower: Vec<T>,
    pub upper: Vec<T>,
    pub r: T,
}

impl<T: Real> NumericTrajectory<T> {
    pub fn step(&self) -> T {
        self.t_grid[1] - self.t_grid[0]
    }
}

/// Composite Simpson rule with `panels` (rounded up to even) subintervals.
pub fn simpson<T: Real>(f: impl Fn(T) -> T, a: T, b: T, panels: usize) -> T {
    let n = panels + panels % 2;
    if n == 0 || a == b {
        return T::zero();
    }
    let h = (b - a) / T::from_usize_lossy(n);
    let (two, four) = (T::lit(2.0), T::lit(4.0));
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let x = a + h * T::from_usize_lossy(i);
        sum += if i % 2 == 1 { four * f(x) } else { two * f(x) };
    }
    sum * h / T::lit(3.0)
}

fn which(end: End) -> usize {
    match end {
        End::Lower => 0,
        End::Upper => 1,
    }
}

/// Heun integration of the endpoint system at level `r` on `[0, t_max]`.
pub fn numeric_solve<T: Real>(
    prob: &FcvideProblem<T>,
    r: T,
    t_max: T,
    steps: usize,
) -> Result<NumericTrajectory<T>, OracleError> {
    if steps < 16 {
        return Err(OracleError::TooFewSteps(steps));
    }
    if !(r >= T::zero() && r <= T::one()) {
        return Err(OracleError::LevelOutOfRange(r.to_f64().unwrap_or(f64::NAN)));
    }
    if t_max.is_nan() || t_max <= T::zero() {
        return Err(OracleError::BadHorizon(t_max.to_f64().unwrap_or(f64::NAN)));
    }
    let h = t_max / T::from_usize_lossy(steps);
    let half = T::lit(0.5);
    let t_grid: Vec<T> = (0..=steps).map(|i| h * T::from_usize_lossy(i)).collect();

    let coupling = prob.coupling();
    let eqs: [EquationPairing; 2] = [coupling.lower, coupling.upper];
    let forcing: [TimeExpr<T>; 2] = [
        prob.forcing.end(eqs[0].forcing).at_level(r),
        prob.forcing.end(eqs[1].forcing).at_level(r),
    ];
    // kernel values at every lag, per equation
    let kernel: [Vec<T>; 2] = [
        t_grid
            .iter()
            .map(|&t| prob.kernel_end(eqs[0].kernel).eval_smooth(t))
            .collect(),
        t_grid
            .iter()
            .map(|&t| prob.kernel_end(eqs[1].kernel).eval_smooth(t))
            .collect(),
    ];
    let state = [which(eqs[0].state), which(eqs[1].state)];

    let (x0l, x0u) = prob.x0.cut(r);
    let mut y: [Vec<T>; 2] = [vec![x0l], vec![x0u]];

    // trapezoid ∫₀^{t_n} k(t_n - s) y(s) ds with y(t_n) replaced by `end`
    let conv = |y: &[Vec<T>; 2], eq: usize, n: usize, end: T| -> T {
        if n == 0 {
            return T::zero();
        }
        let k = &kernel[eq];
        let ys = &y[state[eq]];
        let mut s = half * k[n] * ys[0] + half * k[0] * end;
        for j in 1..n {
            s += k[n - j] * ys[j];
        }
        s * h
    };

    for n in 0..steps {
        let t = t_grid[n];
        let t1 = t_grid[n + 1];
        let slope: [T; 2] =
            std::array::from_fn(|eq| forcing[eq].eval_smooth(t) + conv(&y, eq, n, y[state[eq]][n]));
        let pred = [y[0][n] + h * slope[0], y[1][n] + h * slope[1]];
        let mut ext = y.clone();
        ext[0].push(pred[0]);
        ext[1].push(pred[1]);
        let slope1: [T; 2] = std::array::from_fn(|eq| {
            forcing[eq].eval_smooth(t1) + conv(&ext, eq, n + 1, pred[state[eq]])
        });
        for eq in 0..2 {
            let next = y[eq][n] + half * h * (slope[eq] + slope1[eq]);
            y[eq].push(next);
        }
    }

    let [lower, upper] = y;
    Ok(NumericTrajectory {
        t_grid,
        lower,
        upper,
        r,
    })
}

/// Max over `t_grid` and both endpoint equations of
/// `|x'(t) - f(t) - ∫₀ᵗ k(t-s) x(s) ds|` at level `r`, for the smooth part
/// of the solution.
pub fn residual_check<T: Real>(prob: &FcvideProblem<T>, x: &FuzzyFn<T>, r: T, t_grid: &[T]) -> T {
    let coupling = prob.coupling();
    let mut worst = T::zero();
    for (target, eq) in [(End::Lower, coupling.lower), (End::Upper, coupling.upper)] {
        let deriv = x.end(target).derivative().at_level(r);
        let forcing = prob.forcing.end(eq.forcing).at_level(r);
        let kernel = prob.kernel_end(eq.kernel);
        let state = x.end(eq.state).at_level(r);
        for &t in t_grid {
            let memory = simpson(
                |s| kernel.eval_smooth(t - s) * state.eval_smooth(s),
                T::zero(),
                t,
                SIMPSON_PANELS,
            );
            let res = deriv.eval_smooth(t) - forcing.eval_smooth(t) - memory;
            worst = worst.max(res.abs());
        }
    }
    worst
}

/// [`residual_check`] on a [`FuzzySolution`].
pub fn residual_of<T: Real>(
    prob: &FcvideProblem<T>,
    sol: &FuzzySolution<T>,
    r: T,
    t_grid: &[T],
) -> T {
    residual_check(prob, &sol.x, r, t_grid)
}

/// Max `|symbolic - numeric|` over the grid points with `t > 0`, both
/// endpoints.
pub fn compare<T: Real>(x: &FuzzyFn<T>, traj: &NumericTrajectory<T>) -> T {
    traj.t_grid
        .iter()
        .enumerate()
        .filter(|(_, t)| **t > T::zero())
        .map(|(i, &t)| {
            let dl = (x.lower.eval(t, traj.r) - traj.lower[i]).abs();
            let du = (x.upper.eval(t, traj.r) - traj.upper[i]).abs();
            dl.max(du)
        })
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::FuzzyNumber;
    use crate::solver::{solve_closed_form, EndpointFn, Mode, Sign};
    use crate::timefun::Osc;

    type E = TimeExpr<f64>;

    fn affine_forcing_positive() -> FcvideProblem<f64> {
        let one_plus_t = E::constant(1.0).add(&E::term(1.0, 1, 0.0, Osc::None));
        FcvideProblem {
            kernel: E::constant(1.0),
            forcing: FuzzyFn::times_fuzzy(
                &one_plus_t,
                &FuzzyNumber::from_coeffs(1.0, 1.0, -2.0, 1.0),
            ),
            x0: FuzzyNumber::zero(),
            mode: Mode::I,
            sign_x: Sign::Positive,
            sign_k: Sign::Positive,
        }
    }

    fn constant_forcing_negative() -> FcvideProblem<f64> {
        FcvideProblem {
            kernel: E::constant(1.0),
            forcing: FuzzyFn::times_fuzzy(
                &E::constant(1.0),
                &FuzzyNumber::from_coeffs(-1.0, 1.0, 1.0, -1.0),
            ),
            x0: FuzzyNumber::zero(),
            mode: Mode::II,
            sign_x: Sign::Negative,
            sign_k: Sign::Positive,
        }
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let v = simpson(|x: f64| x * x * x - 2.0 * x, 0.0, 2.0, 4);
        assert!((v - 0.0).abs() < 1e-14);
        let v = simpson(|x: f64| x.exp(), 0.0, 1.0, 1000);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn affine_forcing_numeric_value() {
        let traj = numeric_solve(&affine_forcing_positive(), 0.0, 1.0, 1024).unwrap();
        let e_minus_1 = 1f64.exp() - 1.0;
        assert!((traj.lower[1024] - e_minus_1).abs() < 1e-4);
        assert!((traj.upper[1024] + 2.0 * e_minus_1).abs() < 1e-4);
    }

    #[test]
    fn constant_forcing_numeric_value() {
        let traj = numeric_solve(&constant_forcing_negative(), 0.0, 1.0, 1024).unwrap();
        assert!((traj.lower[1024] - 1f64.sinh()).abs() < 1e-4);
    }

    #[test]
    fn zero_problem_stays_zero() {
        let prob = FcvideProblem {
            kernel: E::exp(-1.0),
            forcing: FuzzyFn::crisp(E::zero()),
            x0: FuzzyNumber::zero(),
            mode: Mode::II,
            sign_x: Sign::Negative,
            sign_k: Sign::Positive,
        };
        let traj = numeric_solve(&prob, 0.5, 1.0, 64).unwrap();
        assert!(traj.lower.iter().chain(&traj.upper).all(|v| *v == 0.0));
        let zero = FuzzyFn::crisp(E::zero());
        assert_eq!(residual_check(&prob, &zero, 0.5, &[0.25, 0.5, 1.0]), 0.0);
    }

    #[test]
    fn preconditions() {
        let p = affine_forcing_positive();
        assert_eq!(
            numeric_solve(&p, 0.0, 1.0, 8),
            Err(OracleError::TooFewSteps(8))
        );
        assert!(matches!(
            numeric_solve(&p, 1.5, 1.0, 32),
            Err(OracleError::LevelOutOfRange(_))
        ));
        assert!(matches!(
            numeric_solve(&p, 0.5, 0.0, 32),
            Err(OracleError::BadHorizon(_))
        ));
    }

    #[test]
    fn residual_of_exact_and_perturbed_solutions() {
        let prob = affine_forcing_positive();
        let x = solve_closed_form(&prob).unwrap();
        let grid = [0.25, 0.5, 1.0];
        assert!(residual_check(&prob, &x, 0.5, &grid) < 1e-6);

        let bump = E::term(0.1, 1, 0.0, Osc::None);
        let perturbed = FuzzyFn::new(
            EndpointFn::new(x.lower.base.add(&bump), x.lower.rpart.clone()),
            x.upper.clone(),
        );
        assert!(residual_check(&prob, &perturbed, 0.5, &grid) > 1e-2);
    }

    #[test]
    fn compare_and_convergence_order() {
        let prob = affine_forcing_positive();
        let x = solve_closed_form(&prob).unwrap();
        let e1 = compare(&x, &numeric_solve(&prob, 0.0, 1.0, 1024).unwrap());
        let e2 = compare(&x, &numeric_solve(&prob, 0.0, 1.0, 2048).unwrap());
        assert!(e1 < 1e-4, "{e1}");
        let ratio = e1 / e2;
        assert!((3.0..=5.0).contains(&ratio), "{ratio}");

        // a trajectory sampled from the closed form itself
        let mut traj = numeric_solve(&prob, 0.0, 1.0, 32).unwrap();
        traj.lower = traj.t_grid.iter().map(|&t| x.lower.eval(t, 0.0)).collect();
        traj.upper = traj.t_grid.iter().map(|&t| x.upper.eval(t, 0.0)).collect();
        assert_eq!(compare(&x, &traj), 0.0);
    }
}
