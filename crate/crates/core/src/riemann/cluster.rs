use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::MacroState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterRegime {
    /// Waves at speeds 0 and 1 with middle state `(rho_R + q_L - q_R, q_L)`.
    Linear,
    /// Jam plateau at `rho = 1` behind a backward shock, then a unit-speed contact.
    Constrained,
}

/// Riemann solution of the `H -> 0` constrained model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusterFan {
    pub left: MacroState,
    pub right: MacroState,
    pub regime: ClusterRegime,
    pub middle: MacroState,
    /// Shock speed (`<= 0`), constrained regime only.
    pub shock_speed: Option<f64>,
}

impl ClusterFan {
    /// Speed of the wave separating the left and middle states.
    pub fn first_speed(&self) -> f64 {
        self.shock_speed.unwrap_or(0.0)
    }

    pub fn sample(&self, xi: f64) -> MacroState {
        if xi < self.first_speed() {
            self.left
        } else if xi < 1.0 {
            self.middle
        } else {
            self.right
        }
    }
}

pub fn solve_riemann_cluster(left: MacroState, right: MacroState) -> Result<ClusterFan> {
    for s in [left, right] {
        MacroState::new(s.rho, s.q)?;
    }
    if right.f1() <= 1.0 - left.q {
        let middle = MacroState { rho: right.rho + left.q - right.q, q: left.q };
        return Ok(ClusterFan { left, right, regime: ClusterRegime::Linear, middle, shock_speed: None });
    }
    if left.rho >= 1.0 {
        return Err(Error::Degenerate(
            "constrained cluster regime with rho_L = 1 has no shock speed (1 - rho_L = 0)".into(),
        ));
    }
    // rho_R = 1 reduces to middle (1, q_R) and s = (q_R - q_L) / (1 - rho_L).
    let middle = MacroState { rho: 1.0, q: 1.0 + right.q - right.rho };
    let s = (1.0 - left.q + right.q - right.rho) / (1.0 - left.rho);
    Ok(ClusterFan { left, right, regime: ClusterRegime::Constrained, middle, shock_speed: Some(s) })
}
