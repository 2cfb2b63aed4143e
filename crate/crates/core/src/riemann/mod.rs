//! Exact Riemann solvers: the homogeneous `H > 0` system, the scalar LWR limit
//! and the constrained `H = 0` cluster model. Every solution exposes a
//! self-similar sampler in `xi = x / t`.

mod cluster;
mod lwr;
mod system;

pub use cluster::{solve_riemann_cluster, ClusterFan, ClusterRegime};
pub use lwr::{lwr_shock_speed, solve_riemann_lwr, LwrFan, LwrWave};
pub use system::{
    intermediate_state, intermediate_state_bisection, intermediate_state_h1, shock_speed_1,
    solve_riemann_system, RiemannFan, Wave1, WAVE2_SPEED,
};

pub(crate) use system::{classify_wave1, h1_interface_flux, state_on_invariants};
