//! Nonlinear two-velocity relaxation model for traffic flow.
//!
//! The hyperbolic part is a Temple-class system in the conserved variables
//! `(rho, z)` with `z = H q / (1 - rho)^H`. Its first field carries the
//! Riemann invariant `z`, the second field is a contact at unit speed
//! carrying `f1 = rho - q`. As the relaxation time goes to zero the model
//! collapses to the scalar Lighthill-Whitham-Richards law
//! `rho_t + F(rho)_x = 0`.
//!
//! Layout:
//! - [`model`]: fundamental diagrams, states, conversions, eigenstructure, audits.
//! - [`riemann`]: exact Riemann solvers (system, scalar limit, `H = 0` cluster limit).
//! - [`boundary`]: kinetic layer analysis and the derived macroscopic boundary values.
//! - [`schemes`]: finite-volume steppers and the time loop.
//! - [`harness`]: built-in scenarios, error metrics, CSV/manifest output and the CLI.

pub mod boundary;
pub mod error;
pub mod harness;
pub mod model;
pub mod riemann;
pub mod roots;
pub mod schemes;
pub mod spline;

pub use error::{Error, Result};
pub use model::{
    ConservativeState, DiagramKind, EigenStructure, FundamentalDiagram, MacroState, ModelParams,
};
