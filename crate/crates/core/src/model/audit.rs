//! Sampling audits of the subcharacteristic condition, plus the linear
//! two-velocity model kept only as a counter-example.

use serde::Serialize;

use super::diagram::FundamentalDiagram;
use super::state::{MacroState, ModelParams};
use crate::error::{Error, Result};

/// Slack below which a sample counts as a violation.
pub const AUDIT_TOL: f64 = 1e-12;

/// Outcome of [`check_subcharacteristic`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubcharReport {
    pub passed: bool,
    /// Smallest slack over both inequalities and all samples.
    pub margin: f64,
    /// Density where the smallest slack occurred.
    pub worst_rho: f64,
    /// First (lowest) violating sample, if any.
    pub first_violation: Option<f64>,
    pub n_samples: usize,
}

/// Checks `-H F(rho) / (1 - rho) <= F'(rho) <= 1` on a uniform grid over `[0, 1 - delta]`.
pub fn check_subcharacteristic(
    diagram: &FundamentalDiagram,
    params: &ModelParams,
    n_samples: usize,
) -> Result<SubcharReport> {
    if n_samples < 10 {
        return Err(Error::InvalidParameter(format!("need at least 10 samples, got {n_samples}")));
    }
    let top = 1.0 - params.delta;
    let mut margin = f64::INFINITY;
    let mut worst_rho = 0.0;
    let mut first_violation = None;
    for i in 0..n_samples {
        let rho = top * i as f64 / (n_samples - 1) as f64;
        let slope = diagram.deriv(rho);
        let lower = slope + params.h * diagram.eval(rho) / (1.0 - rho);
        let upper = 1.0 - slope;
        let slack = lower.min(upper);
        if slack < margin {
            margin = slack;
            worst_rho = rho;
        }
        if slack < -AUDIT_TOL && first_violation.is_none() {
            first_violation = Some(rho);
        }
    }
    Ok(SubcharReport { passed: first_violation.is_none(), margin, worst_rho, first_violation, n_samples })
}

/// Intermediate state of the linear two-velocity model with `v1 = 0`, `v2 = 1`.
///
/// `f1` travels at speed 0 and `f2` at speed 1, so the middle state is
/// `(f1_R, f2_L)`. Its density `f1_R + f2_L` can reach 2, which is why the
/// triangle is not invariant for the linear model.
pub fn linear_model_middle_state(left: MacroState, right: MacroState) -> MacroState {
    let f1 = right.f1();
    let f2 = left.f2();
    MacroState { rho: f1 + f2, q: f2 }
}
