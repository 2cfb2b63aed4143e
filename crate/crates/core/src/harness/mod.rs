//! Scenario registry, error metrics, file output and the command line front end.

mod cli;
mod metrics;
mod output;
mod runner;
mod scenarios;

pub use cli::{run_cli, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
pub use metrics::{front_position, front_position_in, interior_trace, l1_distance, l1_error, linf_error, Profile, Reference};
pub use output::{epsilon_label, format_value, output_stem, read_profile_csv, write_profile_csv, Manifest};
pub use runner::{
    case_reference, emit_run, initial_grid, load_diagram_csv, run_case, scenario_configs, DiagramSource,
    RunConfig, RunOutcome, RunReport,
};
pub use scenarios::{
    builtin_scenarios, find_scenario, Case, ReferenceKind, Scenario, DEFAULT_CELLS, DEFAULT_CFL, DEFAULT_EPSILON,
    DEFAULT_H,
};
