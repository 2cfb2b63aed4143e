use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{bisect, ROOT_TOL};
use crate::spline::MonotoneSpline;

/// Number of grid points used to validate custom diagrams.
pub const VALIDATION_SAMPLES: usize = 10_000;

const ENDPOINT_TOL: f64 = 1e-12;
const SIGN_TOL: f64 = 1e-12;
const CURVATURE_TOL: f64 = 1e-9;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagramKind {
    LighthillWhitham,
    Custom,
}

/// User-supplied flux law for [`make_diagram`].
#[derive(Clone)]
pub struct CustomFlux {
    pub eval: ScalarFn,
    pub deriv: ScalarFn,
    /// Optional claimed critical density, checked against the bisection result.
    pub rho_star: Option<f64>,
}

impl CustomFlux {
    pub fn new<F, D>(eval: F, deriv: D) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { eval: Arc::new(eval), deriv: Arc::new(deriv), rho_star: None }
    }

    pub fn with_rho_star(mut self, rho_star: f64) -> Self {
        self.rho_star = Some(rho_star);
        self
    }
}

/// Anything that provides a scalar flux and its derivative.
pub trait ScalarFlux {
    fn flux(&self, rho: f64) -> f64;
    fn flux_deriv(&self, rho: f64) -> f64;
}

/// Equilibrium flux-density relation `F(rho)` on `[0, 1]`.
///
/// `F(0) = F(1) = 0` and `F` increases up to the critical density `rho_star`
/// and decreases after it. Cloning is cheap.
#[derive(Clone)]
pub struct FundamentalDiagram {
    kind: DiagramKind,
    custom: Option<(ScalarFn, ScalarFn)>,
    rho_star: f64,
    max_flux: f64,
    concavity_defect: Option<(f64, f64)>,
}

impl fmt::Debug for FundamentalDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FundamentalDiagram")
            .field("kind", &self.kind)
            .field("rho_star", &self.rho_star)
            .field("max_flux", &self.max_flux)
            .field("concave", &self.is_concave())
            .finish()
    }
}

/// Builds a diagram of the requested kind; custom flux laws are validated on a sample grid.
pub fn make_diagram(kind: DiagramKind, custom: Option<CustomFlux>) -> Result<FundamentalDiagram> {
    match (kind, custom) {
        (DiagramKind::LighthillWhitham, None) => Ok(FundamentalDiagram::lighthill_whitham()),
        (DiagramKind::LighthillWhitham, Some(_)) => Err(Error::InvalidDiagram(
            "the Lighthill-Whitham diagram takes no custom flux".into(),
        )),
        (DiagramKind::Custom, Some(c)) => FundamentalDiagram::custom(c),
        (DiagramKind::Custom, None) => {
            Err(Error::InvalidDiagram("a custom diagram needs eval and deriv".into()))
        }
    }
}

impl FundamentalDiagram {
    /// `F(rho) = rho (1 - rho)` with `rho_star = 1/2`.
    pub fn lighthill_whitham() -> Self {
        Self {
            kind: DiagramKind::LighthillWhitham,
            custom: None,
            rho_star: 0.5,
            max_flux: 0.25,
            concavity_defect: None,
        }
    }

    pub fn custom(flux: CustomFlux) -> Result<Self> {
        let CustomFlux { eval, deriv, rho_star: claimed } = flux;

        let f0 = eval(0.0);
        let f1 = eval(1.0);
        if !(f0.abs() <= ENDPOINT_TOL) {
            return Err(Error::InvalidDiagram(format!("F(0) = {f0}, expected 0")));
        }
        if !(f1.abs() <= ENDPOINT_TOL) {
            return Err(Error::InvalidDiagram(format!("F(1) = {f1}, expected 0")));
        }

        let n = VALIDATION_SAMPLES;
        let grid: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let slopes: Vec<f64> = grid.iter().map(|&r| deriv(r)).collect();
        if slopes.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidDiagram("F' is not finite on [0, 1]".into()));
        }

        // First sign change of F' on the grid brackets rho_star.
        let idx = slopes
            .windows(2)
            .position(|w| w[0] > 0.0 && w[1] <= 0.0)
            .ok_or_else(|| Error::InvalidDiagram("F' has no sign change from + to - on [0, 1]".into()))?;
        let (lo, hi) = (grid[idx], grid[idx + 1]);
        let rho_star = if slopes[idx + 1] == 0.0 {
            hi
        } else {
            let d = deriv.clone();
            bisect(move |r| d(r), lo, hi, ROOT_TOL)?
        };
        if !(rho_star > 0.0 && rho_star < 1.0) {
            return Err(Error::InvalidDiagram(format!("rho_star = {rho_star} not in (0, 1)")));
        }

        for (&r, &s) in grid.iter().zip(&slopes) {
            if (r - rho_star).abs() <= 1e-9 {
                continue;
            }
            if r < rho_star && s < -SIGN_TOL {
                return Err(Error::InvalidDiagram(format!(
                    "F' = {s} < 0 at rho = {r} below rho_star = {rho_star} (not unimodal)"
                )));
            }
            if r > rho_star && s > SIGN_TOL {
                return Err(Error::InvalidDiagram(format!(
                    "F' = {s} > 0 at rho = {r} above rho_star = {rho_star} (not unimodal)"
                )));
            }
        }

        if let Some(c) = claimed {
            if (c - rho_star).abs() > 1e-10 {
                return Err(Error::InvalidDiagram(format!(
                    "claimed rho_star = {c} but F' changes sign at {rho_star}"
                )));
            }
        }

        let h = 1.0 / n as f64;
        let concavity_defect = slopes
            .windows(2)
            .enumerate()
            .map(|(i, w)| (grid[i], (w[1] - w[0]) / h))
            .find(|&(_, curv)| curv > CURVATURE_TOL);

        let max_flux = eval(rho_star);
        Ok(Self {
            kind: DiagramKind::Custom,
            custom: Some((eval, deriv)),
            rho_star,
            max_flux,
            concavity_defect,
        })
    }

    /// Diagram interpolated from tabulated `(rho, F)` samples with a monotone cubic.
    pub fn from_samples(rho: Vec<f64>, flux: Vec<f64>) -> Result<Self> {
        let spline = Arc::new(MonotoneSpline::new(rho, flux)?);
        let s2 = spline.clone();
        Self::custom(CustomFlux::new(move |r| spline.eval(r), move |r| s2.deriv(r)))
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn eval(&self, rho: f64) -> f64 {
        match &self.custom {
            None => rho * (1.0 - rho),
            Some((f, _)) => f(rho),
        }
    }

    pub fn deriv(&self, rho: f64) -> f64 {
        match &self.custom {
            None => 1.0 - 2.0 * rho,
            Some((_, d)) => d(rho),
        }
    }

    pub fn rho_star(&self) -> f64 {
        self.rho_star
    }

    /// `F(rho_star)`.
    pub fn max_flux(&self) -> f64 {
        self.max_flux
    }

    /// Whether sampled `F''` stayed below `1e-9` everywhere.
    pub fn is_concave(&self) -> bool {
        self.concavity_defect.is_none()
    }

    pub(crate) fn require_concave(&self) -> Result<()> {
        match self.concavity_defect {
            None => Ok(()),
            Some((rho, curvature)) => Err(Error::NonConcave { rho, curvature }),
        }
    }

    /// The density on the other side of `rho_star` carrying the same flux.
    pub fn tau(&self, rho: f64) -> f64 {
        if self.custom.is_none() {
            return 1.0 - rho;
        }
        let rs = self.rho_star;
        if rho <= 0.0 {
            return 1.0;
        }
        if rho >= 1.0 {
            return 0.0;
        }
        if rho == rs {
            return rs;
        }
        let target = self.eval(rho);
        let (lo, hi) = if rho < rs { (rs, 1.0) } else { (0.0, rs) };
        bisect(|r| self.eval(r) - target, lo, hi, ROOT_TOL)
            .unwrap_or(if rho < rs { 1.0 } else { 0.0 })
    }

    /// Inverse of `F'` for a concave diagram, clamped to `[0, 1]`.
    pub fn inverse_deriv(&self, xi: f64) -> f64 {
        if self.custom.is_none() {
            return ((1.0 - xi) / 2.0).clamp(0.0, 1.0);
        }
        if xi >= self.deriv(0.0) {
            return 0.0;
        }
        if xi <= self.deriv(1.0) {
            return 1.0;
        }
        bisect(|r| self.deriv(r) - xi, 0.0, 1.0, ROOT_TOL).unwrap_or(self.rho_star)
    }
}

impl ScalarFlux for FundamentalDiagram {
    fn flux(&self, rho: f64) -> f64 {
        self.eval(rho)
    }

    fn flux_deriv(&self, rho: f64) -> f64 {
        self.deriv(rho)
    }
}
