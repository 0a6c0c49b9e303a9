//! Laplace-domain solution of `x'(t) = f(t) + ∫₀ᵗ k(t-s) x(s) ds` with fuzzy
//! forcing and initial value.
//!
//! Each endpoint equation reads `p·L_i - x0_i = l[f_j] + l[k_s]·L_s`, where
//! the forcing endpoint `j` depends on the differentiability mode and the
//! kernel/state endpoints `s` depend on the declared signs of `x` and `k`.
//! The resulting 2×2 system over rational functions is solved by Cramer's
//! rule, once for the `r`-free part of the data and once for its `r`
//! coefficient, and every component is inverted back to the time domain.

use std::fmt;

use thiserror::Error;

use crate::fuzzy::FuzzyNumber;
use crate::laplace::{inverse_laplace, laplace_transform, AlgebraError, RationalFn};
use crate::real::Real;
use crate::timefun::TimeExpr;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("the Laplace-domain system is singular (determinant is identically zero)")]
    SingularSystem,
    #[error("problem data may not contain delta terms ({0})")]
    DeltaInInput(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Generalized Hukuhara differentiability case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// (i)-differentiable: endpoint derivatives pass straight through.
    I,
    /// (ii)-differentiable: endpoint derivatives swap.
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

/// Which endpoint of a fuzzy quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Lower,
    Upper,
}

/// The data entering one endpoint equation
/// `x_target' = f_forcing + k_kernel ∗ x_state`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquationPairing {
    pub forcing: End,
    pub kernel: End,
    pub state: End,
}

/// Pairings for the lower and upper equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coupling {
    pub lower: EquationPairing,
    pub upper: EquationPairing,
}

impl Coupling {
    /// Endpoint selection for every mode/sign combination.
    pub fn new(mode: Mode, sign_x: Sign, sign_k: Sign) -> Self {
        use End::{Lower as L, Upper as U};
        // (kernel, state) used by the lower and upper product l[k]·l[x]
        let (lower_product, upper_product) = match (sign_x, sign_k) {
            (Sign::Positive, Sign::Positive) => ((L, L), (U, U)),
            (Sign::Negative, Sign::Negative) => ((U, U), (L, L)),
            (Sign::Positive, Sign::Negative) => ((U, L), (L, U)),
            (Sign::Negative, Sign::Positive) => ((L, U), (U, L)),
        };
        let eq = |forcing, (kernel, state): (End, End)| EquationPairing {
            forcing,
            kernel,
            state,
        };
        match mode {
            Mode::I => Self {
                lower: eq(L, lower_product),
                upper: eq(U, upper_product),
            },
            Mode::II => Self {
                lower: eq(U, upper_product),
                upper: eq(L, lower_product),
            },
        }
    }
}

/// `base(t) + r·rpart(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointFn<T> {
    pub base: TimeExpr<T>,
    pub rpart: TimeExpr<T>,
}

impl<T: Real> EndpointFn<T> {
    pub fn new(base: TimeExpr<T>, rpart: TimeExpr<T>) -> Self {
        Self { base, rpart }
    }

    pub fn crisp(e: TimeExpr<T>) -> Self {
        Self::new(e, TimeExpr::zero())
    }

    /// `(a + b·r)·e`.
    pub fn affine_times(a: T, b: T, e: &TimeExpr<T>) -> Self {
        Self::new(e.scale(a), e.scale(b))
    }

    /// The time function at a fixed level `r`.
    pub fn at_level(&self, r: T) -> TimeExpr<T> {
        TimeExpr::linear_combine(T::one(), &self.base, r, &self.rpart)
    }

    /// Value of the smooth part at `(t, r)`.
    pub fn eval(&self, t: T, r: T) -> T {
        self.base.eval_smooth(t) + r * self.rpart.eval_smooth(t)
    }

    pub fn slice(&self, slice: Slice) -> &TimeExpr<T> {
        match slice {
            Slice::Base => &self.base,
            Slice::RPart => &self.rpart,
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.base.derivative(), self.rpart.derivative())
    }

    pub fn has_deltas(&self) -> bool {
        self.base.has_deltas() || self.rpart.has_deltas()
    }
}

/// A fuzzy-valued function of `t` in endpoint form.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyFn<T> {
    pub lower: EndpointFn<T>,
    pub upper: EndpointFn<T>,
}

impl<T: Real> FuzzyFn<T> {
    pub fn new(lower: EndpointFn<T>, upper: EndpointFn<T>) -> Self {
        Self { lower, upper }
    }

    /// A crisp function: both endpoints equal `e`.
    pub fn crisp(e: TimeExpr<T>) -> Self {
        Self::new(EndpointFn::crisp(e.clone()), EndpointFn::crisp(e))
    }

    /// `g(t)·u` for a crisp `g` and fuzzy constant `u`, endpointwise.
    pub fn times_fuzzy(g: &TimeExpr<T>, u: &FuzzyNumber<T>) -> Self {
        Self::new(
            EndpointFn::affine_times(u.lower.a, u.lower.b, g),
            EndpointFn::affine_times(u.upper.a, u.upper.b, g),
        )
    }

    pub fn end(&self, end: End) -> &EndpointFn<T> {
        match end {
            End::Lower => &self.lower,
            End::Upper => &self.upper,
        }
    }

    pub fn has_deltas(&self) -> bool {
        self.lower.has_deltas() || self.upper.has_deltas()
    }
}

/// `x'(t) = f(t) + ∫₀ᵗ k(t-s) x(s) ds`, `x(0) = x0`, with a crisp kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct FcvideProblem<T> {
    pub kernel: TimeExpr<T>,
    pub forcing: FuzzyFn<T>,
    pub x0: FuzzyNumber<T>,
    pub mode: Mode,
    pub sign_x: Sign,
    pub sign_k: Sign,
}

impl<T: Real> FcvideProblem<T> {
    pub fn coupling(&self) -> Coupling {
        Coupling::new(self.mode, self.sign_x, self.sign_k)
    }

    /// Kernel endpoint; both coincide for a crisp kernel.
    pub fn kernel_end(&self, _end: End) -> &TimeExpr<T> {
        &self.kernel
    }

    fn check_inputs(&self) -> Result<(), SolverError> {
        if self.kernel.has_deltas() {
            return Err(SolverError::DeltaInInput("kernel"));
        }
        if self.forcing.has_deltas() {
            return Err(SolverError::DeltaInInput("forcing"));
        }
        Ok(())
    }
}

/// Constant part or `r`-coefficient of the problem data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slice {
    Base,
    RPart,
}

/// `matrix · (l[x_lower], l[x_upper])ᵀ = rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceSystem<T> {
    pub matrix: [[RationalFn<T>; 2]; 2],
    pub rhs: [RationalFn<T>; 2],
}

impl<T: Real> LaplaceSystem<T> {
    pub fn determinant(&self) -> RationalFn<T> {
        let m = &self.matrix;
        m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]))
    }

    /// Cramer's rule.
    pub fn solve(&self) -> Result<[RationalFn<T>; 2], SolverError> {
        let det = self.determinant();
        if det.is_zero() {
            return Err(SolverError::SingularSystem);
        }
        let m = &self.matrix;
        let b = &self.rhs;
        let lower = b[0].mul(&m[1][1]).sub(&m[0][1].mul(&b[1]));
        let upper = m[0][0].mul(&b[1]).sub(&b[0].mul(&m[1][0]));
        Ok([lower.div(&det)?, upper.div(&det)?])
    }
}

fn index(end: End) -> usize {
    match end {
        End::Lower => 0,
        End::Upper => 1,
    }
}

/// Builds the Laplace-domain system for one slice of the data.
pub fn assemble_system<T: Real>(prob: &FcvideProblem<T>, slice: Slice) -> LaplaceSystem<T> {
    let coupling = prob.coupling();
    let x0 = |end: End| {
        let a = match end {
            End::Lower => prob.x0.lower,
            End::Upper => prob.x0.upper,
        };
        match slice {
            Slice::Base => a.a,
            Slice::RPart => a.b,
        }
    };
    let mut matrix = [
        [RationalFn::zero(), RationalFn::zero()],
        [RationalFn::zero(), RationalFn::zero()],
    ];
    let mut rhs = [RationalFn::zero(), RationalFn::zero()];
    for (row, target, pairing) in [
        (0, End::Lower, coupling.lower),
        (1, End::Upper, coupling.upper),
    ] {
        let kernel = laplace_transform(prob.kernel_end(pairing.kernel));
        let col = index(pairing.state);
        matrix[row][row] = matrix[row][row].add(&RationalFn::p());
        matrix[row][col] = matrix[row][col].sub(&kernel);
        let forcing = laplace_transform(prob.forcing.end(pairing.forcing).slice(slice));
        rhs[row] = forcing.add(&RationalFn::constant(x0(target)));
    }
    LaplaceSystem { matrix, rhs }
}

/// `(x0_i + l[f_j]) / (p - l[k])` for the decoupled sign cases (state of
/// each equation is its own endpoint), `None` when the system is coupled.
pub fn decoupled_transforms<T: Real>(
    prob: &FcvideProblem<T>,
    slice: Slice,
) -> Result<Option<[RationalFn<T>; 2]>, SolverError> {
    let coupling = prob.coupling();
    if coupling.lower.state != End::Lower || coupling.upper.state != End::Upper {
        return Ok(None);
    }
    let system = assemble_system(prob, slice);
    let lower = system.rhs[0].div(&system.matrix[0][0])?;
    let upper = system.rhs[1].div(&system.matrix[1][1])?;
    Ok(Some([lower, upper]))
}

/// Outcome of one diagnostic check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check<T> {
    pub passed: bool,
    /// `(t, r, message)` of the first failing grid point.
    pub first_violation: Option<(T, T, String)>,
}

impl<T: Real> Check<T> {
    fn pass() -> Self {
        Self {
            passed: true,
            first_violation: None,
        }
    }

    fn record(&mut self, t: T, r: T, msg: impl FnOnce() -> String) {
        if self.passed {
            self.passed = false;
            self.first_violation = Some((t, r, msg()));
        }
    }
}

impl<T: Real> fmt::Display for Check<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_violation {
            None => f.write_str("ok"),
            Some((t, r, msg)) => write!(f, "FAILED at t = {t}, r = {r}: {msg}"),
        }
    }
}

/// Post-hoc checks of a solution; none of them is fatal.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics<T> {
    /// Both endpoints carry the declared sign of `x`.
    pub sign: Check<T>,
    /// `x_lower ≤ x_upper`.
    pub stacking: Check<T>,
    /// Lower endpoint nondecreasing and upper nonincreasing in `r`.
    pub monotonicity: Check<T>,
    /// Smooth part at `t = 0` reproduces `x0`.
    pub initial_condition: Check<T>,
    /// Max residual of the equation, when the oracle was run.
    pub residual: Option<T>,
}

impl<T: Real> Diagnostics<T> {
    /// The solution is a fuzzy number on the whole grid.
    pub fn is_valid_fuzzy(&self) -> bool {
        self.stacking.passed && self.monotonicity.passed
    }

    pub fn all_passed(&self) -> bool {
        self.sign.passed && self.is_valid_fuzzy() && self.initial_condition.passed
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySolution<T> {
    pub x: FuzzyFn<T>,
    pub diagnostics: Diagnostics<T>,
}

/// Default diagnostic grids: 20 points in `(0, 2]` and five levels.
pub fn default_grids<T: Real>() -> (Vec<T>, Vec<T>) {
    let t = (1..=20)
        .map(|i| T::from_usize_lossy(i) / T::lit(10.0))
        .collect();
    let r = (0..=4)
        .map(|i| T::from_usize_lossy(i) / T::lit(4.0))
        .collect();
    (t, r)
}

/// Solves the problem in closed form and attaches diagnostics on the
/// default grids.
pub fn solve_fcvide<T: Real>(prob: &FcvideProblem<T>) -> Result<FuzzySolution<T>, SolverError> {
    let (t_grid, r_grid) = default_grids();
    solve_fcvide_on(prob, &t_grid, &r_grid)
}

/// [`solve_fcvide`] with explicit diagnostic grids.
pub fn solve_fcvide_on<T: Real>(
    prob: &FcvideProblem<T>,
    t_grid: &[T],
    r_grid: &[T],
) -> Result<FuzzySolution<T>, SolverError> {
    let x = solve_closed_form(prob)?;
    let diagnostics = verify_solution(prob, &x, t_grid, r_grid);
    Ok(FuzzySolution { x, diagnostics })
}

/// The closed-form solution without diagnostics.
pub fn solve_closed_form<T: Real>(prob: &FcvideProblem<T>) -> Result<FuzzyFn<T>, SolverError> {
    prob.check_inputs()?;
    let [base_l, base_u] = assemble_system(prob, Slice::Base).solve()?;
    let [r_l, r_u] = assemble_system(prob, Slice::RPart).solve()?;
    Ok(FuzzyFn::new(
        EndpointFn::new(inverse_laplace(&base_l)?, inverse_laplace(&r_l)?),
        EndpointFn::new(inverse_laplace(&base_u)?, inverse_laplace(&r_u)?),
    ))
}

/// Sign, stacking, monotonicity and initial-condition checks on a grid.
pub fn verify_solution<T: Real>(
    prob: &FcvideProblem<T>,
    x: &FuzzyFn<T>,
    t_grid: &[T],
    r_grid: &[T],
) -> Diagnostics<T> {
    let tol = T::lit(1e-9);
    let slack = |v: T| tol * T::one().max(v.abs());
    let mut sign = Check::pass();
    let mut stacking = Check::pass();
    let mut monotonicity = Check::pass();
    let mut initial_condition = Check::pass();

    for &t in t_grid {
        let slope_l = x.lower.rpart.eval_smooth(t);
        let slope_u = x.upper.rpart.eval_smooth(t);
        if slope_l < -slack(slope_l) {
            monotonicity.record(t, T::zero(), || {
                format!("lower endpoint decreasing in r (slope {slope_l})")
            });
        }
        if slope_u > slack(slope_u) {
            monotonicity.record(t, T::zero(), || {
                format!("upper endpoint increasing in r (slope {slope_u})")
            });
        }
        for &r in r_grid {
            let lo = x.lower.eval(t, r);
            let up = x.upper.eval(t, r);
            if lo > up + slack(up) {
                stacking.record(t, r, || format!("x_lower = {lo} > x_upper = {up}"));
            }
            for (name, v) in [("x_lower", lo), ("x_upper", up)] {
                let wrong = match prob.sign_x {
                    Sign::Positive => v < -slack(v),
                    Sign::Negative => v > slack(v),
                };
                if wrong {
                    let declared = match prob.sign_x {
                        Sign::Positive => "positive",
                        Sign::Negative => "negative",
                    };
                    sign.record(t, r, || {
                        format!("{name} = {v} contradicts declared sign {declared}")
                    });
                }
            }
        }
    }

    let half = T::lit(0.5);
    for r in [T::zero(), half, T::one()] {
        let (want_l, want_u) = prob.x0.cut(r);
        let got_l = x.lower.eval(T::zero(), r);
        let got_u = x.upper.eval(T::zero(), r);
        if (got_l - want_l).abs() > slack(want_l) || (got_u - want_u).abs() > slack(want_u) {
            initial_condition.record(T::zero(), r, || {
                format!("x(0) = ({got_l}, {got_u}) but x0 = ({want_l}, {want_u})")
            });
        }
    }

    Diagnostics {
        sign,
        stacking,
        monotonicity,
        initial_condition,
        residual: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laplace::Polynomial;
    use crate::timefun::Osc;

    type E = TimeExpr<f64>;
    type R = RationalFn<f64>;
    type P = Polynomial<f64>;

    fn one_plus_t() -> E {
        E::constant(1.0).add(&E::term(1.0, 1, 0.0, Osc::None))
    }

    fn affine_forcing(sign_x: Sign) -> FcvideProblem<f64> {
        FcvideProblem {
            kernel: E::constant(1.0),
            forcing: FuzzyFn::times_fuzzy(
                &one_plus_t(),
                &FuzzyNumber::from_coeffs(1.0, 1.0, -2.0, 1.0),
            ),
            x0: FuzzyNumber::zero(),
            mode: Mode::I,
            sign_x,
            sign_k: Sign::Positive,
        }
    }

    fn constant_forcing(sign_x: Sign) -> FcvideProblem<f64> {
        FcvideProblem {
            kernel: E::constant(1.0),
            forcing: FuzzyFn::times_fuzzy(
                &E::constant(1.0),
                &FuzzyNumber::from_coeffs(-1.0, 1.0, 1.0, -1.0),
            ),
            x0: FuzzyNumber::zero(),
            mode: Mode::II,
            sign_x,
            sign_k: Sign::Positive,
        }
    }

    fn inv_p() -> R {
        R::new(P::one(), P::monomial(1.0, 1)).unwrap()
    }

    fn sinh() -> E {
        E::linear_combine(0.5, &E::exp(1.0), -0.5, &E::exp(-1.0))
    }

    #[test]
    fn coupling_table() {
        let c = Coupling::new(Mode::I, Sign::Negative, Sign::Positive);
        assert_eq!(
            c.lower,
            EquationPairing {
                forcing: End::Lower,
                kernel: End::Lower,
                state: End::Upper
            }
        );
        assert_eq!(
            c.upper,
            EquationPairing {
                forcing: End::Upper,
                kernel: End::Upper,
                state: End::Lower
            }
        );
        let c = Coupling::new(Mode::II, Sign::Positive, Sign::Positive);
        assert_eq!(
            c.lower,
            EquationPairing {
                forcing: End::Upper,
                kernel: End::Upper,
                state: End::Upper
            }
        );
        let c = Coupling::new(Mode::I, Sign::Positive, Sign::Negative);
        assert_eq!(
            c.lower,
            EquationPairing {
                forcing: End::Lower,
                kernel: End::Upper,
                state: End::Lower
            }
        );
        let c = Coupling::new(Mode::I, Sign::Negative, Sign::Negative);
        assert_eq!(
            c.upper,
            EquationPairing {
                forcing: End::Upper,
                kernel: End::Lower,
                state: End::Lower
            }
        );
    }

    #[test]
    fn assemble_affine_forcing_positive() {
        let sys = assemble_system(&affine_forcing(Sign::Positive), Slice::Base);
        let diag = R::p().sub(&inv_p());
        assert!(sys.matrix[0][0].approx_eq(&diag, 1e-14));
        assert!(sys.matrix[1][1].approx_eq(&diag, 1e-14));
        assert!(sys.matrix[0][1].is_zero() && sys.matrix[1][0].is_zero());
        let l = laplace_transform(&one_plus_t());
        assert!(sys.rhs[0].approx_eq(&l, 1e-14));
        assert!(sys.rhs[1].approx_eq(&l.scale(-2.0), 1e-14));
    }

    #[test]
    fn assemble_affine_forcing_negative_is_coupled() {
        let sys = assemble_system(&affine_forcing(Sign::Negative), Slice::Base);
        assert!(sys.matrix[0][0].approx_eq(&R::p(), 0.0));
        assert!(sys.matrix[1][1].approx_eq(&R::p(), 0.0));
        assert!(sys.matrix[0][1].approx_eq(&inv_p().neg(), 1e-14));
        assert!(sys.matrix[1][0].approx_eq(&inv_p().neg(), 1e-14));
    }

    #[test]
    fn assemble_constant_forcing_negative_is_decoupled() {
        let sys = assemble_system(&constant_forcing(Sign::Negative), Slice::Base);
        let diag = R::p().sub(&inv_p());
        assert!(sys.matrix[0][0].approx_eq(&diag, 1e-14));
        assert!(sys.matrix[1][1].approx_eq(&diag, 1e-14));
        assert!(sys.matrix[0][1].is_zero() && sys.matrix[1][0].is_zero());
    }

    #[test]
    fn solve_affine_forcing_positive() {
        let x = solve_fcvide(&affine_forcing(Sign::Positive)).unwrap().x;
        let g = E::exp(1.0).sub(&E::constant(1.0));
        assert!(x.lower.base.approx_eq(&g, 1e-9));
        assert!(x.lower.rpart.approx_eq(&g, 1e-9));
        assert!(x.upper.base.approx_eq(&g.scale(-2.0), 1e-9));
        assert!(x.upper.rpart.approx_eq(&g, 1e-9));
    }

    #[test]
    fn solve_constant_forcing_both_signs() {
        let x = solve_fcvide(&constant_forcing(Sign::Negative)).unwrap().x;
        assert!(x.lower.base.approx_eq(&sinh(), 1e-9));
        assert!(x.lower.rpart.approx_eq(&sinh().scale(-1.0), 1e-9));
        assert!(x.upper.base.approx_eq(&sinh().scale(-1.0), 1e-9));
        assert!(x.upper.rpart.approx_eq(&sinh(), 1e-9));

        let x = solve_fcvide(&constant_forcing(Sign::Positive)).unwrap().x;
        let sin = E::term(1.0, 0, 0.0, Osc::Sin(1.0));
        assert!(x.lower.base.approx_eq(&sin, 1e-9), "{}", x.lower.base);
        assert!(x.lower.rpart.approx_eq(&sin.scale(-1.0), 1e-9));
    }

    #[test]
    fn diagnostics_flag_invalid_fuzzy_data() {
        let sol = solve_fcvide(&constant_forcing(Sign::Negative)).unwrap();
        assert!(!sol.diagnostics.sign.passed);
        let (_, r, _) = sol.diagnostics.sign.first_violation.clone().unwrap();
        assert!(r < 1.0);
        assert!(sol.diagnostics.initial_condition.passed);

        let sol = solve_fcvide(&affine_forcing(Sign::Positive)).unwrap();
        assert!(!sol.diagnostics.stacking.passed);
        let x = &sol.x;
        assert!(x.lower.eval(1.0, 1.0) > x.upper.eval(1.0, 1.0));
    }

    #[test]
    fn crisp_problem_passes_all_checks() {
        let prob = FcvideProblem {
            kernel: E::exp(-2.0),
            forcing: FuzzyFn::crisp(E::constant(1.0)),
            x0: FuzzyNumber::crisp(1.0),
            mode: Mode::I,
            sign_x: Sign::Positive,
            sign_k: Sign::Positive,
        };
        let sol = solve_fcvide(&prob).unwrap();
        assert!(sol.diagnostics.all_passed(), "{:?}", sol.diagnostics);
        assert!(sol.x.lower.base.approx_eq(&sol.x.upper.base, 1e-12));
    }

    #[test]
    fn deltas_rejected_and_singular_detected() {
        let mut prob = affine_forcing(Sign::Positive);
        prob.kernel = E::delta(1.0, 0);
        assert_eq!(
            solve_fcvide(&prob),
            Err(SolverError::DeltaInInput("kernel"))
        );

        // k = δ' would give p - p = 0; emulate via a singular matrix directly
        let sys = LaplaceSystem {
            matrix: [[R::p(), R::p()], [R::p(), R::p()]],
            rhs: [R::one(), R::one()],
        };
        assert_eq!(sys.solve(), Err(SolverError::SingularSystem));
    }

    #[test]
    fn decoupled_formula_agrees_with_cramer() {
        for prob in [
            affine_forcing(Sign::Positive),
            constant_forcing(Sign::Negative),
        ] {
            for slice in [Slice::Base, Slice::RPart] {
                let direct = decoupled_transforms(&prob, slice).unwrap().unwrap();
                let cramer = assemble_system(&prob, slice).solve().unwrap();
                assert!(direct[0].approx_eq(&cramer[0], 1e-9));
                assert!(direct[1].approx_eq(&cramer[1], 1e-9));
            }
        }
        assert!(
            decoupled_transforms(&affine_forcing(Sign::Negative), Slice::Base)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn generic_f32_solve() {
        let prob = FcvideProblem::<f32> {
            kernel: TimeExpr::constant(1.0),
            forcing: FuzzyFn::crisp(TimeExpr::constant(1.0)),
            x0: FuzzyNumber::zero(),
            mode: Mode::I,
            sign_x: Sign::Positive,
            sign_k: Sign::Positive,
        };
        let x = solve_closed_form(&prob).unwrap();
        // x' = 1 + ∫x, x(0)=0  =>  x = sinh t
        assert!((x.lower.eval(1.0, 0.0) - 1.175_201_2).abs() < 1e-4);
    }
}
