//! Kinetic boundary layers and the macroscopic boundary values they induce.
//!
//! The left boundary prescribes the 2-invariant `g2 = z`, the right boundary
//! the 1-invariant `g1 = rho - q`. The stationary layer connecting the wall to
//! the interior selects the value `rho_K` seen by the scalar limit.

mod closed_form;
mod layer;
mod resolve;

pub use closed_form::{lw_classify, lw_closed_form, lw_resolve};
pub use layer::{default_layer_window, integrate_layer, layer_fixed_points, LayerFixedPoints, Side};
pub use resolve::{resolve_left_boundary, resolve_right_boundary, BoundaryCase, BoundaryResolution};
