use serde::Serialize;

use crate::model::MacroState;
use crate::schemes::{BoundarySpec, LeftBoundary, RightBoundary, Scheme};

/// Exact solution used as the error reference for a case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceKind {
    /// Scalar LWR Riemann solution of the two densities.
    Lwr,
    /// `H = 0` constrained Riemann solution of the two states.
    Cluster,
    /// No closed-form reference.
    None,
}

/// Piecewise-constant initial data with a jump at `x0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Case {
    pub name: &'static str,
    pub x0: f64,
    pub left: MacroState,
    pub right: MacroState,
    pub bc: BoundarySpec,
    pub reference: ReferenceKind,
    /// Density level tracked as the front, if the case has a single shock.
    pub front_level: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    pub cases: Vec<Case>,
    pub h_values: Vec<f64>,
    /// `inf` switches relaxation off.
    pub eps_values: Vec<f64>,
    pub schemes: Vec<Scheme>,
    pub x_lo: f64,
    pub x_hi: f64,
    pub n_cells: usize,
    pub cfl: f64,
    pub t_end: f64,
}

impl Scenario {
    pub fn case(&self, name: &str) -> Option<&Case> {
        self.cases.iter().find(|c| c.name.eq_ignore_ascii_case(name))
    }
}

pub const DEFAULT_CELLS: usize = 1000;
pub const DEFAULT_CFL: f64 = 1.0;
pub const DEFAULT_H: f64 = 1.0;
pub const DEFAULT_EPSILON: f64 = 0.1;

const LW_SHOCK_LEFT: f64 = 0.3;
const LW_SHOCK_RIGHT: f64 = 0.99;

fn st(rho: f64, q: f64) -> MacroState {
    MacroState { rho, q }
}

fn lw(rho: f64) -> f64 {
    rho * (1.0 - rho)
}

fn rarefaction_case() -> Case {
    Case {
        name: "rarefaction",
        x0: 0.5,
        left: st(0.99, 0.0),
        right: st(0.0, 0.0),
        bc: BoundarySpec::OUTFLOW,
        reference: ReferenceKind::Lwr,
        front_level: None,
    }
}

fn shock_case() -> Case {
    Case {
        name: "shock",
        x0: 0.5,
        left: st(LW_SHOCK_LEFT, 0.0),
        right: st(LW_SHOCK_RIGHT, 0.0),
        bc: BoundarySpec::OUTFLOW,
        reference: ReferenceKind::Lwr,
        front_level: Some(0.5 * (LW_SHOCK_LEFT + LW_SHOCK_RIGHT)),
    }
}

fn riemann_scenario(name: &'static str, description: &'static str, cases: Vec<Case>) -> Scenario {
    Scenario {
        name,
        description,
        cases,
        h_values: vec![DEFAULT_H],
        eps_values: vec![DEFAULT_EPSILON],
        schemes: vec![Scheme::Relaxation],
        x_lo: 0.0,
        x_hi: 1.0,
        n_cells: DEFAULT_CELLS,
        cfl: DEFAULT_CFL,
        t_end: 0.4,
    }
}

/// The built-in scenario registry.
pub fn builtin_scenarios() -> Vec<Scenario> {
    let both = || vec![rarefaction_case(), shock_case()];
    let mut eps_sweep = riemann_scenario("eps-sweep", "relaxation time sweep on both Riemann problems", both());
    eps_sweep.eps_values = vec![0.5, 0.1, 0.01, 0.001];
    let mut h_sweep = riemann_scenario("h-sweep", "look-ahead exponent sweep on both Riemann problems", both());
    h_sweep.h_values = vec![1.0, 1.5, 2.0, 5.0];
    let mut compare = riemann_scenario("scheme-compare", "Godunov, relaxed and Lax-Friedrichs on the LWR limit", both());
    compare.schemes = vec![Scheme::Godunov, Scheme::Relaxed, Scheme::LaxFriedrichs];

    let mut bvp = riemann_scenario(
        "bvp-layers",
        "kinetic boundary data with layers at both ends",
        vec![
            Case {
                name: "outgoing",
                x0: 0.5,
                left: st(0.9, lw(0.9)),
                right: st(0.2, lw(0.2)),
                bc: BoundarySpec { left: LeftBoundary::PrescribedG2(0.5), right: RightBoundary::PrescribedG1(0.3) },
                reference: ReferenceKind::None,
                front_level: None,
            },
            Case {
                name: "transonic",
                x0: 0.5,
                left: st(0.2, lw(0.2)),
                right: st(0.9, lw(0.9)),
                bc: BoundarySpec { left: LeftBoundary::PrescribedG2(0.75), right: RightBoundary::PrescribedG1(0.8) },
                reference: ReferenceKind::None,
                front_level: None,
            },
        ],
    );
    bvp.eps_values = vec![0.1, 0.01, 0.001];

    let cluster_case = |name, q_left| Case {
        name,
        x0: 0.5,
        left: st(0.7, q_left),
        right: st(0.7, 0.2),
        bc: BoundarySpec::OUTFLOW,
        reference: ReferenceKind::Cluster,
        front_level: None,
    };
    let mut cluster = riemann_scenario(
        "cluster",
        "small-H runs against the H = 0 constrained solution",
        vec![cluster_case("constrained", 0.7), cluster_case("linear", 0.3)],
    );
    cluster.h_values = vec![1.0, 0.5, 0.1];
    cluster.eps_values = vec![f64::INFINITY];
    cluster.t_end = 0.2;

    let mut eq_shock = riemann_scenario(
        "shock-equilibrium",
        "shock problem with equilibrium states on both sides",
        vec![Case {
            left: st(LW_SHOCK_LEFT, lw(LW_SHOCK_LEFT)),
            right: st(LW_SHOCK_RIGHT, lw(LW_SHOCK_RIGHT)),
            name: "shock",
            ..shock_case()
        }],
    );
    eq_shock.eps_values = vec![0.5, 0.001];

    vec![
        riemann_scenario("riemann-rarefaction", "rho_L = 0.99, rho_R = 0, q = 0", vec![rarefaction_case()]),
        riemann_scenario("riemann-shock", "rho_L = 0.3, rho_R = 0.99, q = 0", vec![shock_case()]),
        eps_sweep,
        h_sweep,
        bvp,
        compare,
        cluster,
        eq_shock,
    ]
}

/// Case-insensitive lookup by name.
pub fn find_scenario(name: &str) -> Option<Scenario> {
    builtin_scenarios().into_iter().find(|s| s.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let s = find_scenario("riemann-shock").unwrap();
        assert_eq!((s.cases[0].left.rho, s.cases[0].right.rho), (0.3, 0.99));
        assert!((s.cases[0].front_level.unwrap() - 0.645).abs() < 1e-15);

        let b = find_scenario("bvp-layers").unwrap();
        let c = b.case("transonic").unwrap();
        assert_eq!(c.bc.left, LeftBoundary::PrescribedG2(0.75));
        assert_eq!(c.bc.right, RightBoundary::PrescribedG1(0.8));

        let cl = find_scenario("cluster").unwrap();
        assert_eq!(cl.cases[1].left.q, 0.3);
        assert_eq!(cl.t_end, 0.2);

        assert!(find_scenario("H-SWEEP").is_some());
        assert!(find_scenario("nope").is_none());
    }

    #[test]
    fn defaults() {
        for s in builtin_scenarios() {
            assert_eq!(s.n_cells, 1000);
            assert_eq!(s.cfl, 1.0);
            assert!(!s.cases.is_empty());
            for c in &s.cases {
                assert!(c.left.in_triangle(0.0) && c.right.in_triangle(0.0));
                c.bc.validate().unwrap();
            }
        }
        let names: Vec<_> = builtin_scenarios().iter().map(|s| s.name).collect();
        for n in ["riemann-rarefaction", "riemann-shock", "eps-sweep", "h-sweep", "bvp-layers", "scheme-compare", "cluster"] {
            assert!(names.contains(&n));
        }
    }
}
