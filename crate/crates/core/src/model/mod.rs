//! Fundamental diagrams, state representations and the audits gating the other modules.

mod audit;
mod diagram;
mod state;

pub use audit::{check_subcharacteristic, linear_model_middle_state, SubcharReport, AUDIT_TOL};
pub use diagram::{
    make_diagram, CustomFlux, DiagramKind, FundamentalDiagram, ScalarFlux, ScalarFn,
    VALIDATION_SAMPLES,
};
pub use state::{
    eigenstructure, equilibrium, from_conservative, genuine_nonlinearity_indicator,
    to_conservative, ConservativeState, EigenStructure, MacroState, ModelParams, DEFAULT_DELTA,
    TRIANGLE_TOL,
};
