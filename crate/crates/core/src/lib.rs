//! Inner asymptotics of the viscous scalar conservation law `u_t + phi(u)_x = eps u_xx`
//! near singular points of its inviscid limit, with reference solvers to check them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod flux;
pub mod fold;
pub mod initial;
pub mod large_gradient;
pub mod limit;
pub mod par;
pub mod problem;
pub mod quadrature;
pub mod riemann;
pub mod scaling;
pub mod viscous;
pub mod weakshock;

pub use error::{Error, Result};
pub use flux::{make_flux, FluxFunction, FluxKind, FluxSpec};
pub use initial::{InitialData, Profile, Side, TailExpansion};
pub use par::ExecMode;
pub use problem::ProblemConfig;
pub use scaling::InnerScaling;
