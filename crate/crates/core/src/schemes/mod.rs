//! Finite-volume schemes on a uniform grid.
//!
//! The kinetic splitting scheme advances `(rho, z)` with the exact Godunov
//! flux of the homogeneous system and then relaxes `z` towards equilibrium
//! with an implicit Euler step. The scalar schemes (relaxed, Lax-Friedrichs,
//! Godunov) solve the equilibrium law directly.

mod grid;
mod kinetic;
mod run;
mod scalar;

pub use grid::{BoundarySpec, GridSolution, LeftBoundary, RightBoundary};
pub use kinetic::{apply_boundary, godunov_flux_system, implicit_relaxation, kinetic_dt_limit, step_relaxation};
pub use run::{run_simulation, scalar_boundary, Scheme, StepLog, MAX_STEPS};
pub use scalar::{
    godunov_flux, lax_friedrichs_flux, max_char_speed, relaxed_flux, step_godunov_lwr, step_godunov_lwr_bc,
    step_lax_friedrichs, step_lax_friedrichs_bc, step_relaxed, step_relaxed_bc, LinearAdvection, ScalarBc,
    ScalarBoundary,
};
