//! Closed-form solutions of fuzzy convolution Volterra integro-differential
//! equations `x'(t) = f(t) + ∫₀ᵗ k(t-s) x(s) ds` via the fuzzy Laplace
//! transform under generalized Hukuhara differentiability, with an
//! independent time-stepping oracle for cross-validation.
//!
//! All math is generic over a [`Real`] scalar; the `*64` aliases below fix it
//! to `f64`.

pub mod cli;
pub mod fuzzy;
pub mod laplace;
pub mod oracle;
pub mod real;
pub mod solver;
pub mod timefun;

pub use fuzzy::{AffineR, FuzzyError, FuzzyNumber, Validity, Violation};
pub use laplace::{
    inverse_laplace, laplace_transform, partial_fractions, poly_roots, rat_arith, AlgebraError,
    PartialFractions, PfdTerm, Polynomial, RatOp, RationalFn, Root,
};
pub use oracle::{compare, numeric_solve, residual_check, NumericTrajectory, OracleError};
pub use real::Real;
pub use solver::{
    assemble_system, solve_fcvide, verify_solution, Diagnostics, EndpointFn, FcvideProblem,
    FuzzyFn, FuzzySolution, LaplaceSystem, Mode, Sign, Slice, SolverError,
};
pub use timefun::{expr_distance, DeltaTerm, Osc, SmoothTerm, TimeError, TimeExpr};

pub type AffineR64 = AffineR<f64>;
pub type FuzzyNumber64 = FuzzyNumber<f64>;
pub type TimeExpr64 = TimeExpr<f64>;
pub type Polynomial64 = Polynomial<f64>;
pub type RationalFn64 = RationalFn<f64>;
pub type FuzzyFn64 = FuzzyFn<f64>;
pub type FcvideProblem64 = FcvideProblem<f64>;
pub type FuzzySolution64 = FuzzySolution<f64>;
