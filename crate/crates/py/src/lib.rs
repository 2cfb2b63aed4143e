//! Python bindings: the `relaxflow` extension module.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use relaxflow_core::boundary::{self, BoundaryResolution, Side};
use relaxflow_core::harness::{self, RunConfig};
use relaxflow_core::model::{self, FundamentalDiagram, MacroState, ModelParams};
use relaxflow_core::riemann::{self, ClusterFan, ClusterRegime, LwrFan, RiemannFan, Wave1};
use relaxflow_core::schemes::{self, BoundarySpec, GridSolution, LeftBoundary, RightBoundary, Scheme};
use relaxflow_core::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Cfl { .. } | Error::Singularity { .. } | Error::LayerBlowUp { .. } | Error::NoBracket { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Diagram", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDiagram {
    inner: FundamentalDiagram,
}

#[pymethods]
impl PyDiagram {
    /// `F(rho) = rho (1 - rho)`.
    #[staticmethod]
    fn lighthill_whitham() -> Self {
        Self { inner: FundamentalDiagram::lighthill_whitham() }
    }

    /// Monotone cubic interpolant through sampled `(rho, F)` pairs.
    #[staticmethod]
    fn from_samples(rho: Vec<f64>, flux: Vec<f64>) -> PyResult<Self> {
        FundamentalDiagram::from_samples(rho, flux).map(|inner| Self { inner }).map_err(py_err)
    }

    fn eval(&self, rho: f64) -> f64 {
        self.inner.eval(rho)
    }

    fn deriv(&self, rho: f64) -> f64 {
        self.inner.deriv(rho)
    }

    fn tau(&self, rho: f64) -> f64 {
        self.inner.tau(rho)
    }

    #[getter]
    fn rho_star(&self) -> f64 {
        self.inner.rho_star()
    }

    #[getter]
    fn max_flux(&self) -> f64 {
        self.inner.max_flux()
    }

    #[getter]
    fn is_concave(&self) -> bool {
        self.inner.is_concave()
    }

    fn __repr__(&self) -> String {
        format!("Diagram(kind={:?}, rho_star={})", self.inner.kind(), self.inner.rho_star())
    }
}

#[pyclass(name = "State", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyState {
    #[pyo3(get)]
    rho: f64,
    #[pyo3(get)]
    q: f64,
}

impl From<MacroState> for PyState {
    fn from(s: MacroState) -> Self {
        Self { rho: s.rho, q: s.q }
    }
}

impl PyState {
    fn inner(&self) -> MacroState {
        MacroState { rho: self.rho, q: self.q }
    }
}

#[pymethods]
impl PyState {
    /// Validated state with `0 <= q <= rho <= 1`.
    #[new]
    fn new(rho: f64, q: f64) -> PyResult<Self> {
        MacroState::new(rho, q).map(Self::from).map_err(py_err)
    }

    #[getter]
    fn f1(&self) -> f64 {
        self.inner().f1()
    }

    #[getter]
    fn f2(&self) -> f64 {
        self.inner().f2()
    }

    fn __repr__(&self) -> String {
        format!("State(rho={}, q={})", self.rho, self.q)
    }
}

#[pyclass(name = "Params", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyParams {
    inner: ModelParams,
}

#[pymethods]
impl PyParams {
    /// `epsilon = 0` is the equilibrium limit, `epsilon = inf` disables relaxation.
    #[new]
    #[pyo3(signature = (h, epsilon = 0.1, delta = model::DEFAULT_DELTA))]
    fn new(h: f64, epsilon: f64, delta: f64) -> PyResult<Self> {
        ModelParams::with_delta(h, epsilon, delta).map(|inner| Self { inner }).map_err(py_err)
    }

    #[getter]
    fn h(&self) -> f64 {
        self.inner.h
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.epsilon
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.inner.delta
    }

    fn __repr__(&self) -> String {
        format!("Params(h={}, epsilon={}, delta={})", self.inner.h, self.inner.epsilon, self.inner.delta)
    }
}

#[pyclass(name = "RiemannFan", frozen)]
struct PyRiemannFan {
    inner: RiemannFan,
}

#[pymethods]
impl PyRiemannFan {
    fn sample(&self, xi: f64) -> PyState {
        self.inner.sample(xi).into()
    }

    #[getter]
    fn middle(&self) -> PyState {
        self.inner.middle.into()
    }

    /// `"none"`, `"contact"`, `"shock"` or `"rarefaction"`.
    #[getter]
    fn wave1_kind(&self) -> &'static str {
        match self.inner.wave1 {
            Wave1::None => "none",
            Wave1::Contact { .. } => "contact",
            Wave1::Shock { .. } => "shock",
            Wave1::Rarefaction { .. } => "rarefaction",
        }
    }

    /// `(slowest, fastest)` speed of the first wave.
    #[getter]
    fn wave1_speeds(&self) -> (f64, f64) {
        match self.inner.wave1 {
            Wave1::None => (0.0, 0.0),
            Wave1::Contact { speed } | Wave1::Shock { speed } => (speed, speed),
            Wave1::Rarefaction { head, tail } => (head, tail),
        }
    }

    #[getter]
    fn wave2_speed(&self) -> f64 {
        self.inner.wave2_speed()
    }
}

#[pyclass(name = "ClusterFan", frozen)]
struct PyClusterFan {
    inner: ClusterFan,
}

#[pymethods]
impl PyClusterFan {
    fn sample(&self, xi: f64) -> PyState {
        self.inner.sample(xi).into()
    }

    #[getter]
    fn middle(&self) -> PyState {
        self.inner.middle.into()
    }

    #[getter]
    fn regime(&self) -> &'static str {
        match self.inner.regime {
            ClusterRegime::Linear => "linear",
            ClusterRegime::Constrained => "constrained",
        }
    }

    #[getter]
    fn shock_speed(&self) -> Option<f64> {
        self.inner.shock_speed
    }
}

#[pyclass(name = "LwrFan", frozen)]
struct PyLwrFan {
    inner: LwrFan,
}

#[pymethods]
impl PyLwrFan {
    fn sample(&self, xi: f64) -> f64 {
        self.inner.sample(xi)
    }
}

#[pyclass(name = "Grid", frozen)]
struct PyGrid {
    inner: GridSolution,
}

#[pymethods]
impl PyGrid {
    #[new]
    fn new(x_lo: f64, x_hi: f64, rho: Vec<f64>, q: Vec<f64>, params: &PyParams, diagram: &PyDiagram) -> PyResult<Self> {
        GridSolution::new(x_lo, x_hi, rho, q, params.inner, diagram.inner.clone())
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[getter]
    fn rho(&self) -> Vec<f64> {
        self.inner.rho.clone()
    }

    #[getter]
    fn q(&self) -> Vec<f64> {
        self.inner.q.clone()
    }

    #[getter]
    fn z(&self) -> Vec<f64> {
        self.inner.z()
    }

    #[getter]
    fn t(&self) -> f64 {
        self.inner.t
    }

    #[getter]
    fn dx(&self) -> f64 {
        self.inner.dx()
    }

    #[getter]
    fn centers(&self) -> Vec<f64> {
        self.inner.centers()
    }

    fn total_mass(&self) -> f64 {
        self.inner.total_mass()
    }

    fn __len__(&self) -> usize {
        self.inner.n_cells()
    }
}

fn left_boundary(value: &Bound<'_, PyAny>) -> PyResult<LeftBoundary> {
    if let Ok(g2) = value.extract::<f64>() {
        return Ok(LeftBoundary::PrescribedG2(g2));
    }
    match value.extract::<String>()?.to_ascii_lowercase().as_str() {
        "outflow" => Ok(LeftBoundary::Outflow),
        "periodic" => Ok(LeftBoundary::Periodic),
        other => Err(PyValueError::new_err(format!("unknown boundary '{other}'"))),
    }
}

fn right_boundary(value: &Bound<'_, PyAny>) -> PyResult<RightBoundary> {
    if let Ok(g1) = value.extract::<f64>() {
        return Ok(RightBoundary::PrescribedG1(g1));
    }
    match value.extract::<String>()?.to_ascii_lowercase().as_str() {
        "outflow" => Ok(RightBoundary::Outflow),
        "periodic" => Ok(RightBoundary::Periodic),
        other => Err(PyValueError::new_err(format!("unknown boundary '{other}'"))),
    }
}

fn parse_scheme(name: &str) -> PyResult<Scheme> {
    name.parse().map_err(py_err)
}

/// `(rho, z)` with `z = H q / (1 - rho)^H`.
#[pyfunction]
fn to_conservative(state: &PyState, params: &PyParams) -> PyResult<(f64, f64)> {
    let c = model::to_conservative(state.inner(), &params.inner).map_err(py_err)?;
    Ok((c.rho, c.z))
}

#[pyfunction]
fn from_conservative(rho: f64, z: f64, params: &PyParams) -> PyResult<PyState> {
    model::from_conservative(model::ConservativeState { rho, z }, &params.inner).map(PyState::from).map_err(py_err)
}

/// `(lambda1, lambda2)`.
#[pyfunction]
fn eigenvalues(state: &PyState, params: &PyParams) -> PyResult<(f64, f64)> {
    let e = model::eigenstructure(state.inner(), &params.inner).map_err(py_err)?;
    Ok((e.lambda1, e.lambda2))
}

#[pyfunction]
#[pyo3(signature = (diagram, h, samples = model::VALIDATION_SAMPLES))]
fn check_subcharacteristic<'py>(py: Python<'py>, diagram: &PyDiagram, h: f64, samples: usize) -> PyResult<Bound<'py, PyDict>> {
    let params = ModelParams::new(h, 0.0).map_err(py_err)?;
    let r = model::check_subcharacteristic(&diagram.inner, &params, samples).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("passed", r.passed)?;
    d.set_item("margin", r.margin)?;
    d.set_item("worst_rho", r.worst_rho)?;
    d.set_item("first_violation", r.first_violation)?;
    d.set_item("n_samples", r.n_samples)?;
    Ok(d)
}

#[pyfunction]
fn intermediate_state(left: &PyState, right: &PyState, params: &PyParams) -> PyResult<PyState> {
    riemann::intermediate_state(left.inner(), right.inner(), &params.inner).map(PyState::from).map_err(py_err)
}

#[pyfunction]
fn solve_riemann(left: &PyState, right: &PyState, params: &PyParams) -> PyResult<PyRiemannFan> {
    riemann::solve_riemann_system(left.inner(), right.inner(), &params.inner)
        .map(|inner| PyRiemannFan { inner })
        .map_err(py_err)
}

#[pyfunction]
fn solve_riemann_cluster(left: &PyState, right: &PyState) -> PyResult<PyClusterFan> {
    riemann::solve_riemann_cluster(left.inner(), right.inner()).map(|inner| PyClusterFan { inner }).map_err(py_err)
}

#[pyfunction]
fn solve_riemann_lwr(diagram: &PyDiagram, rho_left: f64, rho_right: f64) -> PyResult<PyLwrFan> {
    riemann::solve_riemann_lwr(&diagram.inner, rho_left, rho_right).map(|inner| PyLwrFan { inner }).map_err(py_err)
}

fn resolution_dict<'py>(py: Python<'py>, r: &BoundaryResolution) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("side", format!("{:?}", r.side).to_ascii_lowercase())?;
    d.set_item("case", format!("{:?}", r.case).to_ascii_lowercase())?;
    d.set_item("rho_wall", r.rho_wall)?;
    d.set_item("rho_k", r.rho_k)?;
    d.set_item("c", r.c)?;
    Ok(d)
}

/// Boundary value seen by the interior for kinetic datum `g` on `side` (`"left"` or `"right"`).
#[pyfunction]
fn resolve_boundary<'py>(
    py: Python<'py>,
    diagram: &PyDiagram,
    params: &PyParams,
    side: &str,
    g: f64,
    rho_b: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = match side.to_ascii_lowercase().as_str() {
        "left" => boundary::resolve_left_boundary(&diagram.inner, &params.inner, g, rho_b),
        "right" => boundary::resolve_right_boundary(&diagram.inner, &params.inner, g, rho_b),
        other => return Err(PyValueError::new_err(format!("side must be 'left' or 'right', got '{other}'"))),
    }
    .map_err(py_err)?;
    resolution_dict(py, &r)
}

/// Stationary layer profile as a list of `(x, rho)` pairs.
#[pyfunction]
#[pyo3(signature = (diagram, h, c, rho0, side, x_max = None, steps = None))]
fn integrate_layer(
    diagram: &PyDiagram,
    h: f64,
    c: f64,
    rho0: f64,
    side: &str,
    x_max: Option<f64>,
    steps: Option<usize>,
) -> PyResult<Vec<(f64, f64)>> {
    let side = match side.to_ascii_lowercase().as_str() {
        "left" => Side::Left,
        "right" => Side::Right,
        other => return Err(PyValueError::new_err(format!("side must be 'left' or 'right', got '{other}'"))),
    };
    let params = ModelParams::new(h, 0.0).map_err(py_err)?;
    let (dx, dn) = boundary::default_layer_window(h, c);
    boundary::integrate_layer(&diagram.inner, &params, c, rho0, side, x_max.unwrap_or(dx), steps.unwrap_or(dn))
        .map_err(py_err)
}

/// One step of the relaxation scheme; `left`/`right` are `"outflow"`, `"periodic"` or a kinetic datum.
#[pyfunction]
#[pyo3(signature = (grid, dt, left = None, right = None))]
fn step_relaxation(
    grid: &PyGrid,
    dt: f64,
    left: Option<&Bound<'_, PyAny>>,
    right: Option<&Bound<'_, PyAny>>,
) -> PyResult<PyGrid> {
    let bc = bc_or_outflow(left, right)?;
    schemes::step_relaxation(&grid.inner, &bc, dt).map(|inner| PyGrid { inner }).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (grid, left = None, right = None))]
fn kinetic_dt_limit(grid: &PyGrid, left: Option<&Bound<'_, PyAny>>, right: Option<&Bound<'_, PyAny>>) -> PyResult<f64> {
    let bc = bc_or_outflow(left, right)?;
    schemes::kinetic_dt_limit(&grid.inner, &bc).map_err(py_err)
}

fn bc_or_outflow(left: Option<&Bound<'_, PyAny>>, right: Option<&Bound<'_, PyAny>>) -> PyResult<BoundarySpec> {
    let l = left.map(left_boundary).transpose()?.unwrap_or(LeftBoundary::Outflow);
    let r = right.map(right_boundary).transpose()?.unwrap_or(RightBoundary::Outflow);
    BoundarySpec::new(l, r).map_err(py_err)
}

/// Runs `scheme` to `t_end` and returns the final grid and the number of steps.
#[pyfunction]
#[pyo3(signature = (grid, scheme, t_end, cfl = 1.0, left = None, right = None))]
fn run_simulation(
    grid: &PyGrid,
    scheme: &str,
    t_end: f64,
    cfl: f64,
    left: Option<&Bound<'_, PyAny>>,
    right: Option<&Bound<'_, PyAny>>,
) -> PyResult<(PyGrid, usize)> {
    let bc = bc_or_outflow(left, right)?;
    let (sol, log) = schemes::run_simulation(&grid.inner, &bc, parse_scheme(scheme)?, t_end, cfl).map_err(py_err)?;
    Ok((PyGrid { inner: sol }, log.n_steps))
}

/// Names of the built-in scenarios.
#[pyfunction]
fn scenarios() -> Vec<&'static str> {
    harness::builtin_scenarios().iter().map(|s| s.name).collect()
}

/// Runs one case of a built-in scenario; returns the profile and error metrics.
#[pyfunction]
#[pyo3(signature = (scenario, case, scheme = "relaxation", h = harness::DEFAULT_H, epsilon = harness::DEFAULT_EPSILON, cells = None))]
fn run_scenario<'py>(
    py: Python<'py>,
    scenario: &str,
    case: &str,
    scheme: &str,
    h: f64,
    epsilon: f64,
    cells: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let s = harness::find_scenario(scenario).ok_or_else(|| PyValueError::new_err(format!("unknown scenario '{scenario}'")))?;
    let mut cfg = RunConfig::from_scenario(&s, case, parse_scheme(scheme)?, h, epsilon).map_err(py_err)?;
    if let Some(n) = cells {
        cfg.cells = n;
    }
    let out = harness::run_case(&cfg).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("x", out.profile.x)?;
    d.set_item("rho", out.profile.rho)?;
    d.set_item("q", out.profile.q)?;
    d.set_item("t", out.solution.t)?;
    d.set_item("n_steps", out.report.n_steps)?;
    d.set_item("l1_error", out.report.l1_error)?;
    d.set_item("linf_error", out.report.linf_error)?;
    d.set_item("front", out.report.front)?;
    Ok(d)
}

#[pymodule]
fn relaxflow(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PyParams>()?;
    m.add_class::<PyRiemannFan>()?;
    m.add_class::<PyClusterFan>()?;
    m.add_class::<PyLwrFan>()?;
    m.add_class::<PyGrid>()?;
    m.add_function(wrap_pyfunction!(to_conservative, m)?)?;
    m.add_function(wrap_pyfunction!(from_conservative, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(check_subcharacteristic, m)?)?;
    m.add_function(wrap_pyfunction!(intermediate_state, m)?)?;
    m.add_function(wrap_pyfunction!(solve_riemann, m)?)?;
    m.add_function(wrap_pyfunction!(solve_riemann_cluster, m)?)?;
    m.add_function(wrap_pyfunction!(solve_riemann_lwr, m)?)?;
    m.add_function(wrap_pyfunction!(resolve_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_layer, m)?)?;
    m.add_function(wrap_pyfunction!(step_relaxation, m)?)?;
    m.add_function(wrap_pyfunction!(kinetic_dt_limit, m)?)?;
    m.add_function(wrap_pyfunction!(run_simulation, m)?)?;
    m.add_function(wrap_pyfunction!(scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    Ok(())
}
