use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FundamentalDiagram, ModelParams};
use crate::roots::{bisect, ROOT_TOL};

const MERGE_TOL: f64 = 1e-12;
const CONVERGED_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Fixed points of the layer ODE for flux constant `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LayerFixedPoints {
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
    pub c: f64,
    pub merged: bool,
}

impl LayerFixedPoints {
    /// Attracting fixed points of the layer equation on `side`.
    pub fn stable(&self, side: Side) -> Vec<f64> {
        match side {
            Side::Left => vec![self.rho2],
            Side::Right => vec![self.rho1, self.rho3],
        }
    }
}

pub fn layer_fixed_points(diagram: &FundamentalDiagram, c: f64) -> Result<LayerFixedPoints> {
    let f_max = diagram.max_flux();
    if !(c >= 0.0) || c > f_max + MERGE_TOL {
        return Err(Error::InvalidParameter(format!("layer flux C = {c} outside [0, F(rho*) = {f_max}]")));
    }
    let rs = diagram.rho_star();
    if (c - f_max).abs() <= MERGE_TOL {
        return Ok(LayerFixedPoints { rho1: rs, rho2: rs, rho3: 1.0, c, merged: true });
    }
    let rho1 = if c == 0.0 { 0.0 } else { bisect(|r| diagram.eval(r) - c, 0.0, rs, ROOT_TOL)? };
    Ok(LayerFixedPoints { rho1, rho2: diagram.tau(rho1), rho3: 1.0, c, merged: false })
}

/// Right-hand side of the layer equation, `+-(1 - rho)(F(rho) - C) / (H C)`.
fn layer_rhs(diagram: &FundamentalDiagram, h: f64, c: f64, side: Side, rho: f64) -> f64 {
    let v = (1.0 - rho) * (diagram.eval(rho) - c) / (h * c);
    match side {
        Side::Left => v,
        Side::Right => -v,
    }
}

/// Default integration window `x_max = 20 H max(C, 0.01)` and step count.
pub fn default_layer_window(h: f64, c: f64) -> (f64, usize) {
    (20.0 * h * c.max(0.01), 2000)
}

/// Fixed-step RK4 integration of the layer profile from `rho(0) = rho0`.
///
/// Stops early once the profile is within `1e-10` of an attracting fixed point.
pub fn integrate_layer(
    diagram: &FundamentalDiagram,
    params: &ModelParams,
    c: f64,
    rho0: f64,
    side: Side,
    x_max: f64,
    n_steps: usize,
) -> Result<Vec<(f64, f64)>> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("layer flux C must be > 0, got {c}")));
    }
    let top = 1.0 - params.delta;
    if !(0.0..=top).contains(&rho0) {
        return Err(Error::InvalidParameter(format!("rho0 = {rho0} outside [0, 1 - delta]")));
    }
    if !(x_max > 0.0) || n_steps == 0 {
        return Err(Error::InvalidParameter("layer window must be positive".into()));
    }
    let fixed = layer_fixed_points(diagram, c)?;
    let stable = fixed.stable(side);
    let near_stable = |rho: f64| stable.iter().any(|s| (rho - s).abs() < CONVERGED_TOL);

    let h = params.h;
    let f = |rho: f64| layer_rhs(diagram, h, c, side, rho);
    let dx = x_max / n_steps as f64;

    let mut profile = Vec::with_capacity(n_steps + 1);
    let mut rho = rho0;
    profile.push((0.0, rho));
    if near_stable(rho) {
        return Ok(profile);
    }
    for i in 1..=n_steps {
        let k1 = f(rho);
        let k2 = f(rho + 0.5 * dx * k1);
        let k3 = f(rho + 0.5 * dx * k2);
        let k4 = f(rho + dx * k3);
        rho += dx / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let x = i as f64 * dx;
        if near_stable(rho) {
            profile.push((x, rho));
            break;
        }
        if !(0.0..=top).contains(&rho) {
            return Err(Error::LayerBlowUp { x, rho });
        }
        profile.push((x, rho));
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lw() -> FundamentalDiagram {
        FundamentalDiagram::lighthill_whitham()
    }

    fn p1() -> ModelParams {
        ModelParams::new(1.0, 0.1).unwrap()
    }

    #[test]
    fn fixed_point_examples() {
        let fp = layer_fixed_points(&lw(), 0.21).unwrap();
        assert!((fp.rho1 - 0.3).abs() < 1e-11 && (fp.rho2 - 0.7).abs() < 1e-11);
        assert_eq!(fp.rho3, 1.0);
        assert!(!fp.merged);

        let fp = layer_fixed_points(&lw(), 0.25).unwrap();
        assert!(fp.merged && fp.rho1 == 0.5 && fp.rho2 == 0.5);

        let fp = layer_fixed_points(&lw(), 0.0).unwrap();
        assert_eq!((fp.rho1, fp.rho2, fp.rho3), (0.0, 1.0, 1.0));

        assert!(layer_fixed_points(&lw(), 0.3).is_err());
    }

    #[test]
    fn fixed_points_match_closed_form() {
        for i in 1..50 {
            let c = 0.25 * i as f64 / 50.0;
            let fp = layer_fixed_points(&lw(), c).unwrap();
            let disc = (1.0 - 4.0 * c).sqrt();
            assert!((fp.rho1 - 0.5 * (1.0 - disc)).abs() < 1e-10);
            assert!((fp.rho2 - 0.5 * (1.0 + disc)).abs() < 1e-10);
        }
    }

    #[test]
    fn start_at_stable_point_is_constant() {
        let prof = integrate_layer(&lw(), &p1(), 0.21, 0.7, Side::Left, 10.0, 100).unwrap();
        assert!(prof.iter().all(|&(_, r)| r == 0.7));
    }

    #[test]
    fn left_layer_approaches_rho2() {
        let prof = integrate_layer(&lw(), &p1(), 0.21, 0.5, Side::Left, 60.0, 6000).unwrap();
        assert!(prof.windows(2).all(|w| w[1].1 >= w[0].1));
        let last = prof.last().unwrap().1;
        assert!((last - 0.7).abs() < 1e-8, "{last}");
    }

    #[test]
    fn right_layer_approaches_rho1() {
        let prof = integrate_layer(&lw(), &p1(), 0.21, 0.5, Side::Right, 60.0, 6000).unwrap();
        assert!(prof.windows(2).all(|w| w[1].1 <= w[0].1));
        let last = prof.last().unwrap().1;
        assert!((last - 0.3).abs() < 1e-8, "{last}");
    }

    #[test]
    fn left_layer_below_rho1_blows_up() {
        let err = integrate_layer(&lw(), &p1(), 0.21, 0.2, Side::Left, 200.0, 20000).unwrap_err();
        assert!(matches!(err, Error::LayerBlowUp { rho, .. } if rho < 0.0));
    }

    #[test]
    fn default_window() {
        assert_eq!(default_layer_window(1.0, 0.21), (20.0 * 0.21, 2000));
        assert_eq!(default_layer_window(2.0, 0.001), (0.4, 2000));
    }
}
