use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schemes::GridSolution;

const DOMAIN_TOL: f64 = 1e-12;

/// Cell-centred snapshot of a solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub x_lo: f64,
    pub x_hi: f64,
    pub t: f64,
    pub x: Vec<f64>,
    pub rho: Vec<f64>,
    pub q: Vec<f64>,
    /// Present only for kinetic runs.
    pub z: Option<Vec<f64>>,
}

impl Profile {
    pub fn from_grid(sol: &GridSolution, with_z: bool) -> Self {
        Self {
            x_lo: sol.x_lo,
            x_hi: sol.x_hi,
            t: sol.t,
            x: sol.centers(),
            rho: sol.rho.clone(),
            q: sol.q.clone(),
            z: with_z.then(|| sol.z()),
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn dx(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.len() as f64
    }
}

/// Density reference `rho(x)` at a fixed time on `[x_lo, x_hi]`.
pub struct Reference<'a> {
    pub x_lo: f64,
    pub x_hi: f64,
    pub rho: Box<dyn Fn(f64) -> f64 + 'a>,
}

impl<'a> Reference<'a> {
    pub fn new<F: Fn(f64) -> f64 + 'a>(x_lo: f64, x_hi: f64, rho: F) -> Self {
        Self { x_lo, x_hi, rho: Box::new(rho) }
    }
}

fn check_domain(profile: &Profile, x_lo: f64, x_hi: f64) -> Result<()> {
    if profile.is_empty() {
        return Err(Error::DomainMismatch("empty profile".into()));
    }
    if (profile.x_lo - x_lo).abs() > DOMAIN_TOL || (profile.x_hi - x_hi).abs() > DOMAIN_TOL {
        return Err(Error::DomainMismatch(format!(
            "profile on [{}, {}], reference on [{x_lo}, {x_hi}]",
            profile.x_lo, profile.x_hi
        )));
    }
    Ok(())
}

/// `sum |rho_i - ref(x_i)| dx` over cell centers.
pub fn l1_error(profile: &Profile, reference: &Reference<'_>) -> Result<f64> {
    check_domain(profile, reference.x_lo, reference.x_hi)?;
    let sum: f64 = profile.x.iter().zip(&profile.rho).map(|(&x, &r)| (r - (reference.rho)(x)).abs()).sum();
    Ok(sum * profile.dx())
}

/// `max |rho_i - ref(x_i)|` over cell centers.
pub fn linf_error(profile: &Profile, reference: &Reference<'_>) -> Result<f64> {
    check_domain(profile, reference.x_lo, reference.x_hi)?;
    Ok(profile.x.iter().zip(&profile.rho).fold(0.0, |m, (&x, &r)| m.max((r - (reference.rho)(x)).abs())))
}

/// L1 distance between two densities on the same grid.
pub fn l1_distance(a: &Profile, b: &Profile) -> Result<f64> {
    check_domain(a, b.x_lo, b.x_hi)?;
    if a.len() != b.len() {
        return Err(Error::DomainMismatch(format!("{} cells vs {} cells", a.len(), b.len())));
    }
    Ok(a.rho.iter().zip(&b.rho).map(|(x, y)| (x - y).abs()).sum::<f64>() * a.dx())
}

/// Crossing of `level` by the density, linearly interpolated between cell centers.
///
/// Exactly one crossing is required.
pub fn front_position(profile: &Profile, level: f64) -> Result<f64> {
    front_position_in(profile, level, profile.x_lo, profile.x_hi)
}

/// As [`front_position`], restricted to cell centers in `[a, b]`.
pub fn front_position_in(profile: &Profile, level: f64, a: f64, b: f64) -> Result<f64> {
    let idx: Vec<usize> = (0..profile.len()).filter(|&i| profile.x[i] >= a && profile.x[i] <= b).collect();
    let mut found = None;
    let mut count = 0;
    for w in idx.windows(2) {
        let (i, j) = (w[0], w[1]);
        let (ri, rj) = (profile.rho[i], profile.rho[j]);
        if (ri >= level) != (rj >= level) {
            count += 1;
            let x = profile.x[i] + (level - ri) / (rj - ri) * (profile.x[j] - profile.x[i]);
            found = Some(x);
        }
    }
    match (count, found) {
        (1, Some(x)) => Ok(x),
        (0, _) => Err(Error::Front(format!("density never crosses level {level}"))),
        (n, _) => Err(Error::Front(format!("density crosses level {level} {n} times"))),
    }
}

/// Least-squares line through the cells with centers in `[a, b]`, evaluated at `x_eval`.
pub fn interior_trace(profile: &Profile, a: f64, b: f64, x_eval: f64) -> Result<f64> {
    let pts: Vec<(f64, f64)> = profile
        .x
        .iter()
        .zip(&profile.rho)
        .filter(|(&x, _)| x >= a && x <= b)
        .map(|(&x, &r)| (x, r))
        .collect();
    if pts.len() < 2 {
        return Err(Error::DomainMismatch(format!("fewer than two cells in [{a}, {b}]")));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Ok(my + sxy / sxx * (x_eval - mx))
}
