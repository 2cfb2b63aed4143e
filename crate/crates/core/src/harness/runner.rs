use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use super::metrics::{front_position, l1_error, linf_error, Profile, Reference};
use super::output::{output_stem, write_profile_csv, Manifest};
use super::scenarios::{find_scenario, Case, ReferenceKind, Scenario};
use crate::error::{Error, Result};
use crate::model::{FundamentalDiagram, ModelParams};
use crate::riemann::{solve_riemann_cluster, solve_riemann_lwr};
use crate::schemes::{run_simulation, GridSolution, Scheme, StepLog};

/// Where the fundamental diagram comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum DiagramSource {
    LighthillWhitham,
    /// Two-column `rho,F` CSV, interpolated with a monotone cubic.
    Samples(PathBuf),
}

impl DiagramSource {
    pub fn parse(s: &str) -> Self {
        if s.eq_ignore_ascii_case("lw") {
            DiagramSource::LighthillWhitham
        } else {
            DiagramSource::Samples(PathBuf::from(s))
        }
    }

    pub fn label(&self) -> String {
        match self {
            DiagramSource::LighthillWhitham => "lw".into(),
            DiagramSource::Samples(p) => p.display().to_string(),
        }
    }

    pub fn load(&self) -> Result<FundamentalDiagram> {
        match self {
            DiagramSource::LighthillWhitham => Ok(FundamentalDiagram::lighthill_whitham()),
            DiagramSource::Samples(path) => load_diagram_csv(path),
        }
    }
}

/// Reads `(rho, F)` pairs; a non-numeric first line is treated as a header.
pub fn load_diagram_csv(path: &Path) -> Result<FundamentalDiagram> {
    let text = fs::read_to_string(path)?;
    let mut rho = Vec::new();
    let mut flux = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = (parts.len() == 2)
            .then(|| Some((parts[0].parse::<f64>().ok()?, parts[1].parse::<f64>().ok()?)))
            .flatten();
        match parsed {
            Some((r, f)) => {
                rho.push(r);
                flux.push(f);
            }
            None if k == 0 => continue,
            None => {
                return Err(Error::InvalidDiagram(format!("{}:{}: expected two numbers", path.display(), k + 1)))
            }
        }
    }
    FundamentalDiagram::from_samples(rho, flux)
}

/// One simulation: a case of a scenario with fixed scheme and parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: String,
    pub case: Case,
    pub scheme: Scheme,
    pub h: f64,
    pub epsilon: f64,
    pub cells: usize,
    pub cfl: f64,
    pub t_end: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub diagram: DiagramSource,
}

impl RunConfig {
    /// Configuration for the named case with the scenario defaults.
    pub fn from_scenario(scenario: &Scenario, case: &str, scheme: Scheme, h: f64, epsilon: f64) -> Result<Self> {
        let case = *scenario
            .case(case)
            .ok_or_else(|| Error::InvalidParameter(format!("scenario '{}' has no case '{case}'", scenario.name)))?;
        Ok(Self {
            scenario: scenario.name.into(),
            case,
            scheme,
            h,
            epsilon,
            cells: scenario.n_cells,
            cfl: scenario.cfl,
            t_end: scenario.t_end,
            x_lo: scenario.x_lo,
            x_hi: scenario.x_hi,
            diagram: DiagramSource::LighthillWhitham,
        })
    }

    pub fn from_manifest(m: &Manifest) -> Result<Self> {
        let scenario = find_scenario(&m.scenario)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown scenario '{}'", m.scenario)))?;
        let mut cfg = Self::from_scenario(&scenario, &m.case, m.scheme, m.h, m.epsilon_value())?;
        cfg.case.bc = m.bc;
        cfg.cells = m.cells;
        cfg.cfl = m.cfl;
        cfg.t_end = m.t_end;
        cfg.diagram = DiagramSource::parse(&m.diagram);
        Ok(cfg)
    }

    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.h, self.epsilon)
    }

    pub fn stem(&self) -> String {
        output_stem(&self.scenario, self.case.name, self.scheme, self.h, self.epsilon)
    }

    pub fn manifest(&self, outputs: Vec<String>) -> Manifest {
        Manifest {
            scenario: self.scenario.clone(),
            case: self.case.name.into(),
            scheme: self.scheme,
            h: self.h,
            epsilon: self.epsilon.is_finite().then_some(self.epsilon),
            cells: self.cells,
            cfl: self.cfl,
            t_end: self.t_end,
            bc: self.case.bc,
            seed: None,
            outputs,
            diagram: self.diagram.label(),
        }
    }
}

/// Summary of one run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub case: String,
    pub scheme: Scheme,
    #[serde(rename = "H")]
    pub h: f64,
    pub epsilon: Option<f64>,
    pub cells: usize,
    pub t_end: f64,
    pub l1_error: Option<f64>,
    pub linf_error: Option<f64>,
    pub front: Option<f64>,
    pub n_steps: usize,
    pub dt_min: f64,
    pub dt_max: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    pub elapsed_s: f64,
}

impl RunReport {
    pub fn summary_line(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.6e}"));
        format!(
            "{} {} scheme={} H={} eps={} cells={} t={} steps={} l1={} linf={} front={} rho=[{:.6}, {:.6}] {:.3}s",
            self.scenario,
            self.case,
            self.scheme,
            self.h,
            self.epsilon.map_or("inf".into(), |e| e.to_string()),
            self.cells,
            self.t_end,
            self.n_steps,
            opt(self.l1_error),
            opt(self.linf_error),
            opt(self.front),
            self.rho_min,
            self.rho_max,
            self.elapsed_s
        )
    }
}

pub struct RunOutcome {
    pub solution: GridSolution,
    pub log: StepLog,
    pub profile: Profile,
    pub report: RunReport,
}

/// Piecewise-constant grid for a case.
pub fn initial_grid(cfg: &RunConfig, diagram: FundamentalDiagram) -> Result<GridSolution> {
    let c = cfg.case;
    GridSolution::from_fn(cfg.x_lo, cfg.x_hi, cfg.cells, cfg.params()?, diagram, |x| {
        let s = if x < c.x0 { c.left } else { c.right };
        (s.rho, s.q)
    })
}

/// Exact density of the case at time `t`, if one is available.
pub fn case_reference<'a>(
    case: &Case,
    diagram: &FundamentalDiagram,
    x_lo: f64,
    x_hi: f64,
    t: f64,
) -> Result<Option<Reference<'a>>> {
    let x0 = case.x0;
    let xi = move |x: f64| if t > 0.0 { (x - x0) / t } else if x < x0 { f64::NEG_INFINITY } else { f64::INFINITY };
    match case.reference {
        ReferenceKind::None => Ok(None),
        ReferenceKind::Lwr => {
            if !diagram.is_concave() {
                return Ok(None);
            }
            let fan = solve_riemann_lwr(diagram, case.left.rho, case.right.rho)?;
            Ok(Some(Reference::new(x_lo, x_hi, move |x| fan.sample(xi(x)))))
        }
        ReferenceKind::Cluster => {
            let fan = solve_riemann_cluster(case.left, case.right)?;
            Ok(Some(Reference::new(x_lo, x_hi, move |x| fan.sample(xi(x)).rho)))
        }
    }
}

pub fn run_case(cfg: &RunConfig) -> Result<RunOutcome> {
    let diagram = cfg.diagram.load()?;
    let start = Instant::now();
    let initial = initial_grid(cfg, diagram.clone())?;
    let (solution, log) = run_simulation(&initial, &cfg.case.bc, cfg.scheme, cfg.t_end, cfg.cfl)?;
    let elapsed_s = start.elapsed().as_secs_f64();
    let profile = Profile::from_grid(&solution, cfg.scheme.is_kinetic());
    let reference = case_reference(&cfg.case, &diagram, cfg.x_lo, cfg.x_hi, solution.t)?;
    let (l1, linf) = match &reference {
        Some(r) => (Some(l1_error(&profile, r)?), Some(linf_error(&profile, r)?)),
        None => (None, None),
    };
    let front = cfg.case.front_level.and_then(|lvl| front_position(&profile, lvl).ok());
    let report = RunReport {
        scenario: cfg.scenario.clone(),
        case: cfg.case.name.into(),
        scheme: cfg.scheme,
        h: cfg.h,
        epsilon: cfg.epsilon.is_finite().then_some(cfg.epsilon),
        cells: cfg.cells,
        t_end: cfg.t_end,
        l1_error: l1,
        linf_error: linf,
        front,
        n_steps: log.n_steps,
        dt_min: log.dt_min(),
        dt_max: log.dt_max(),
        rho_min: log.rho_min,
        rho_max: log.rho_max,
        elapsed_s,
    };
    Ok(RunOutcome { solution, log, profile, report })
}

/// Writes `<stem>.csv` and `<stem>.json` into `dir`; returns their paths.
pub fn emit_run(cfg: &RunConfig, outcome: &RunOutcome, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir)?;
    let stem = cfg.stem();
    let csv = dir.join(format!("{stem}.csv"));
    let json = dir.join(format!("{stem}.json"));
    write_profile_csv(&csv, &outcome.profile)?;
    cfg.manifest(vec![format!("{stem}.csv")]).write(&json)?;
    Ok((csv, json))
}

/// All runs of a scenario: cases x schemes x H x epsilon.
pub fn scenario_configs(scenario: &Scenario) -> Vec<RunConfig> {
    let mut out = Vec::new();
    for case in &scenario.cases {
        for &scheme in &scenario.schemes {
            for &h in &scenario.h_values {
                for &eps in &scenario.eps_values {
                    if let Ok(cfg) = RunConfig::from_scenario(scenario, case.name, scheme, h, eps) {
                        out.push(cfg);
                    }
                }
            }
        }
    }
    out
}
