//! Zeros of polynomial eigenfunctions of `-(p y')' + q y' = lambda y` with
//! `deg p <= 2` and `deg q <= 1`, computed three ways:
//!
//! * [`flow`] integrates the particle system `dx_i/dt = R_i(x)` whose unique
//!   stationary point is the zero set;
//! * [`equilibrium`] solves `R(x) = 0` directly with Newton's method;
//! * [`spectral`] builds the eigenpolynomial by triangular back-substitution
//!   and isolates its real roots.
//!
//! Here `R_i = p(x_i) sum_{k != i} 2/(x_i - x_k) + p'(x_i) - q(x_i)` is the
//! electrostatic residual. The [`cli`] module wraps the solvers in a
//! command-line tool that writes JSON results and CSV trajectories.

pub mod cli;
pub mod config;
pub mod equilibrium;
pub mod error;
pub mod flow;
pub mod operator;
pub mod spectral;

pub use config::Configuration;
pub use error::{Error, Result};
pub use operator::{
    check_simple_spectrum, eigenvalue, eigenvalue_gap, make_classical, operator_matrix,
    ClassicalFamily, Domain, EquationSpec, OperatorMatrix,
};
