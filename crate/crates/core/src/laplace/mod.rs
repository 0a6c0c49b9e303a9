//! Laplace-domain algebra: polynomials and rational functions in `p`, root
//! finding, partial fractions, and the forward/inverse transforms between
//! [`TimeExpr`](crate::timefun::TimeExpr) and [`RationalFn`].

mod pfd;
mod poly;
mod rational;
mod roots;
mod transform;

use thiserror::Error;

pub use pfd::{partial_fractions, PartialFractions, PfdTerm};
pub use poly::Polynomial;
pub use rational::{rat_arith, Pole, PoleFactor, RatOp, RationalFn};
pub use roots::{poly_roots, Root};
pub use transform::{inverse_laplace, laplace_transform};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum AlgebraError {
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("division by the zero rational function")]
    DivisionByZeroRational,
    #[error("root finding did not converge")]
    RootFinding,
    #[error("residue at a real pole has imaginary part {0:e}; roots were not clustered correctly")]
    ResidualImaginaryTooLarge(f64),
}
