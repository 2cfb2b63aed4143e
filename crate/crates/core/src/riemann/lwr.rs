use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::FundamentalDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LwrWave {
    Constant,
    Shock { speed: f64 },
    Rarefaction { head: f64, tail: f64 },
}

/// Entropy solution of `rho_t + F(rho)_x = 0` for concave `F` and Riemann data.
#[derive(Debug, Clone)]
pub struct LwrFan {
    pub diagram: FundamentalDiagram,
    pub rho_left: f64,
    pub rho_right: f64,
    pub wave: LwrWave,
}

impl LwrFan {
    /// Density at `xi = x / t`.
    pub fn sample(&self, xi: f64) -> f64 {
        match self.wave {
            LwrWave::Constant => self.rho_left,
            LwrWave::Shock { speed } => {
                if xi < speed {
                    self.rho_left
                } else {
                    self.rho_right
                }
            }
            LwrWave::Rarefaction { head, tail } => {
                if xi <= head {
                    self.rho_left
                } else if xi >= tail {
                    self.rho_right
                } else {
                    self.diagram.inverse_deriv(xi)
                }
            }
        }
    }
}

/// Rankine-Hugoniot speed of the scalar law.
pub fn lwr_shock_speed(diagram: &FundamentalDiagram, rho_l: f64, rho_r: f64) -> f64 {
    (diagram.eval(rho_r) - diagram.eval(rho_l)) / (rho_r - rho_l)
}

pub fn solve_riemann_lwr(diagram: &FundamentalDiagram, rho_l: f64, rho_r: f64) -> Result<LwrFan> {
    diagram.require_concave()?;
    for rho in [rho_l, rho_r] {
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::InvalidParameter(format!("density {rho} outside [0, 1]")));
        }
    }
    let wave = if rho_l == rho_r {
        LwrWave::Constant
    } else if rho_l < rho_r {
        LwrWave::Shock { speed: lwr_shock_speed(diagram, rho_l, rho_r) }
    } else {
        LwrWave::Rarefaction { head: diagram.deriv(rho_l), tail: diagram.deriv(rho_r) }
    };
    Ok(LwrFan { diagram: diagram.clone(), rho_left: rho_l, rho_right: rho_r, wave })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CustomFlux;

    #[test]
    fn shock_example() {
        let d = FundamentalDiagram::lighthill_whitham();
        let fan = solve_riemann_lwr(&d, 0.3, 0.99).unwrap();
        let LwrWave::Shock { speed } = fan.wave else { panic!() };
        assert!((speed + 0.29).abs() < 1e-14);
        let x_front = 0.5 + speed * 0.4;
        assert!((x_front - 0.384).abs() < 1e-12);
        assert_eq!(fan.sample(-0.3), 0.3);
        assert_eq!(fan.sample(-0.28), 0.99);
    }

    #[test]
    fn constant_example() {
        let fan = solve_riemann_lwr(&FundamentalDiagram::lighthill_whitham(), 0.4, 0.4).unwrap();
        assert_eq!(fan.wave, LwrWave::Constant);
        assert_eq!(fan.sample(-10.0), 0.4);
        assert_eq!(fan.sample(10.0), 0.4);
    }

    #[test]
    fn rarefaction_example() {
        let fan = solve_riemann_lwr(&FundamentalDiagram::lighthill_whitham(), 0.99, 0.0).unwrap();
        let LwrWave::Rarefaction { head, tail } = fan.wave else { panic!() };
        assert!((head + 0.98).abs() < 1e-14);
        assert_eq!(tail, 1.0);
        for xi in [-0.9, -0.2, 0.0, 0.4, 0.95] {
            assert!((fan.sample(xi) - (1.0 - xi) / 2.0).abs() < 1e-15);
        }
        assert_eq!(fan.sample(-1.0), 0.99);
        assert_eq!(fan.sample(1.5), 0.0);
    }

    #[test]
    fn rejects_nonconcave() {
        // F = 1/4 - 1.5 u^2 + 2 u^4 with u = r - 1/2: unimodal, convex near both ends.
        let f = CustomFlux::new(
            |r| {
                let u = r - 0.5;
                0.25 - 1.5 * u * u + 2.0 * u.powi(4)
            },
            |r| {
                let u = r - 0.5;
                -3.0 * u + 8.0 * u.powi(3)
            },
        );
        let d = FundamentalDiagram::custom(f).unwrap();
        assert!(!d.is_concave());
        assert!(matches!(solve_riemann_lwr(&d, 0.2, 0.8), Err(Error::NonConcave { .. })));
    }
}
