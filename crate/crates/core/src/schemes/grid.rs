use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FundamentalDiagram, MacroState, ModelParams, TRIANGLE_TOL};

/// Cell averages on a uniform grid over `[x_lo, x_hi]`.
#[derive(Debug, Clone)]
pub struct GridSolution {
    pub x_lo: f64,
    pub x_hi: f64,
    pub rho: Vec<f64>,
    pub q: Vec<f64>,
    pub t: f64,
    pub params: ModelParams,
    pub diagram: FundamentalDiagram,
}

impl GridSolution {
    /// Validated constructor; every cell must lie in the triangle.
    pub fn new(
        x_lo: f64,
        x_hi: f64,
        rho: Vec<f64>,
        q: Vec<f64>,
        params: ModelParams,
        diagram: FundamentalDiagram,
    ) -> Result<Self> {
        if !(x_hi > x_lo) || !x_lo.is_finite() || !x_hi.is_finite() {
            return Err(Error::InvalidParameter(format!("empty domain [{x_lo}, {x_hi}]")));
        }
        if rho.is_empty() || rho.len() != q.len() {
            return Err(Error::InvalidParameter(format!(
                "need matching nonempty rho/q arrays, got {} and {}",
                rho.len(),
                q.len()
            )));
        }
        for (&r, &qq) in rho.iter().zip(&q) {
            if !(MacroState { rho: r, q: qq }).in_triangle(TRIANGLE_TOL) || r < -TRIANGLE_TOL {
                return Err(Error::OutsideTriangle { rho: r, q: qq });
            }
        }
        Ok(Self { x_lo, x_hi, rho, q, t: 0.0, params, diagram })
    }

    /// Grid initialised from `profile(x) -> (rho, q)` evaluated at cell centers.
    pub fn from_fn<P>(
        x_lo: f64,
        x_hi: f64,
        n_cells: usize,
        params: ModelParams,
        diagram: FundamentalDiagram,
        profile: P,
    ) -> Result<Self>
    where
        P: Fn(f64) -> (f64, f64),
    {
        if n_cells == 0 {
            return Err(Error::InvalidParameter("n_cells must be positive".into()));
        }
        let dx = (x_hi - x_lo) / n_cells as f64;
        let (rho, q) = (0..n_cells).map(|i| profile(x_lo + (i as f64 + 0.5) * dx)).unzip();
        Self::new(x_lo, x_hi, rho, q, params, diagram)
    }

    pub fn n_cells(&self) -> usize {
        self.rho.len()
    }

    pub fn dx(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.n_cells() as f64
    }

    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_lo + (i as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells()).map(|i| self.cell_center(i)).collect()
    }

    pub fn state(&self, i: usize) -> MacroState {
        MacroState { rho: self.rho[i], q: self.q[i] }
    }

    /// `z = H q / (1 - rho)^H` per cell.
    pub fn z(&self) -> Vec<f64> {
        let h = self.params.h;
        self.rho.iter().zip(&self.q).map(|(&r, &q)| h * q / (1.0 - r).powf(h)).collect()
    }

    /// `sum(rho) dx`.
    pub fn total_mass(&self) -> f64 {
        self.rho.iter().sum::<f64>() * self.dx()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum LeftBoundary {
    /// Incoming 2-invariant `z`.
    PrescribedG2(f64),
    Outflow,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum RightBoundary {
    /// Incoming 1-invariant `rho - q`.
    PrescribedG1(f64),
    Outflow,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub left: LeftBoundary,
    pub right: RightBoundary,
}

impl BoundarySpec {
    pub const OUTFLOW: Self = Self { left: LeftBoundary::Outflow, right: RightBoundary::Outflow };
    pub const PERIODIC: Self = Self { left: LeftBoundary::Periodic, right: RightBoundary::Periodic };

    pub fn new(left: LeftBoundary, right: RightBoundary) -> Result<Self> {
        let bc = Self { left, right };
        bc.validate()?;
        Ok(bc)
    }

    /// Periodic on both sides or neither; prescribed data in range.
    pub fn validate(&self) -> Result<()> {
        let lp = matches!(self.left, LeftBoundary::Periodic);
        let rp = matches!(self.right, RightBoundary::Periodic);
        if lp != rp {
            return Err(Error::InvalidParameter("periodic boundary must be set on both sides".into()));
        }
        if let LeftBoundary::PrescribedG2(g2) = self.left {
            if !(g2 >= 0.0 && g2.is_finite()) {
                return Err(Error::InvalidParameter(format!("g2 must be finite and >= 0, got {g2}")));
            }
        }
        if let RightBoundary::PrescribedG1(g1) = self.right {
            if !(0.0..=1.0).contains(&g1) {
                return Err(Error::InvalidParameter(format!("g1 = {g1} outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.left, LeftBoundary::Periodic)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 0.1).unwrap()
    }

    #[test]
    fn geometry() {
        let g = GridSolution::from_fn(0.0, 1.0, 4, params(), FundamentalDiagram::lighthill_whitham(), |x| {
            (x, 0.0)
        })
        .unwrap();
        assert_eq!(g.dx(), 0.25);
        assert_eq!(g.centers(), vec![0.125, 0.375, 0.625, 0.875]);
        assert_eq!(g.rho, g.centers());
        assert!((g.total_mass() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_cells() {
        let d = FundamentalDiagram::lighthill_whitham();
        assert!(GridSolution::new(0.0, 1.0, vec![0.5], vec![0.6], params(), d.clone()).is_err());
        assert!(GridSolution::new(0.0, 1.0, vec![0.5, 0.5], vec![0.1], params(), d.clone()).is_err());
        assert!(GridSolution::new(1.0, 1.0, vec![0.5], vec![0.1], params(), d).is_err());
    }

    #[test]
    fn periodic_pairing() {
        assert!(BoundarySpec::new(LeftBoundary::Periodic, RightBoundary::Outflow).is_err());
        assert!(BoundarySpec::new(LeftBoundary::Outflow, RightBoundary::Periodic).is_err());
        assert!(BoundarySpec::PERIODIC.validate().is_ok());
        assert!(BoundarySpec::new(LeftBoundary::PrescribedG2(-1.0), RightBoundary::Outflow).is_err());
    }

    #[test]
    fn serde_shape() {
        let bc = BoundarySpec { left: LeftBoundary::PrescribedG2(0.75), right: RightBoundary::Outflow };
        let s = serde_json::to_string(&bc).unwrap();
        assert_eq!(s, r#"{"left":{"kind":"prescribed_g2","value":0.75},"right":{"kind":"outflow"}}"#);
        let back: BoundarySpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, bc);
    }
}
