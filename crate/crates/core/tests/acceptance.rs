//! Acceptance checks, one line per criterion. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relaxflow_core::harness::{
    find_scenario, front_position, front_position_in, interior_trace, l1_distance, l1_error, run_case,
    case_reference, Profile, RunConfig,
};
use relaxflow_core::model::{check_subcharacteristic, FundamentalDiagram, MacroState, ModelParams, DEFAULT_DELTA};
use relaxflow_core::riemann::{intermediate_state, intermediate_state_bisection, solve_riemann_cluster, ClusterRegime};
use relaxflow_core::schemes::{
    kinetic_dt_limit, step_relaxation, step_relaxed, BoundarySpec, GridSolution, Scheme,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn run(scenario: &str, case: &str, scheme: Scheme, h: f64, eps: f64) -> relaxflow_core::Result<relaxflow_core::harness::RunOutcome> {
    let s = find_scenario(scenario).expect("builtin scenario");
    run_case(&RunConfig::from_scenario(&s, case, scheme, h, eps).expect("builtin case"))
}

fn lwr_error(outcome: &relaxflow_core::harness::RunOutcome, scenario: &str, case: &str) -> f64 {
    let s = find_scenario(scenario).unwrap();
    let c = s.case(case).unwrap();
    let r = case_reference(c, &FundamentalDiagram::lighthill_whitham(), s.x_lo, s.x_hi, outcome.solution.t)
        .unwrap()
        .unwrap();
    l1_error(&outcome.profile, &r).unwrap()
}

/// Shock front of the relaxed scheme.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = run("riemann-shock", "shock", Scheme::Relaxed, 1.0, 0.1).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let dx = out.profile.dx();
    let front = front_position(&out.profile, 0.645).map_err(|e| e.to_string())?;
    check(
        (front - 0.384).abs() <= 2.0 * dx && elapsed < 5.0,
        format!("front = {front:.6} (target 0.384 +- {:.4}), runtime {elapsed:.3}s", 2.0 * dx),
    )
}

/// L1 ordering Godunov <= relaxed <= LxF, relaxed at least 10% below LxF.
fn criterion_2() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for case in ["rarefaction", "shock"] {
        let mut e = Vec::new();
        for scheme in [Scheme::Godunov, Scheme::Relaxed, Scheme::LaxFriedrichs] {
            let out = run("scheme-compare", case, scheme, 1.0, 0.1).map_err(|e| e.to_string())?;
            e.push(lwr_error(&out, "scheme-compare", case));
        }
        let (g, r, l) = (e[0], e[1], e[2]);
        ok &= g <= r && r <= l && r <= 0.9 * l;
        details.push(format!("{case}: godunov {g:.3e} relaxed {r:.3e} lxf {l:.3e}"));
    }
    check(ok, details.join("; "))
}

/// Relaxation scheme converges to the LWR solution as epsilon decreases.
fn criterion_3() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for case in ["rarefaction", "shock"] {
        let mut errs = Vec::new();
        for eps in [0.5, 0.1, 0.01, 0.001] {
            let out = run("eps-sweep", case, Scheme::Relaxation, 1.0, eps).map_err(|e| e.to_string())?;
            errs.push(lwr_error(&out, "eps-sweep", case));
        }
        ok &= errs.windows(2).all(|w| w[1] < w[0]);
        details.push(format!("{case}: {}", errs.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>().join(" > ")));
    }
    check(ok, details.join("; "))
}

/// Shock speed on equilibrium data does not depend on epsilon.
fn criterion_4() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for eps in [0.5, 0.001] {
        let out = run("shock-equilibrium", "shock", Scheme::Relaxation, 1.0, eps).map_err(|e| e.to_string())?;
        let t = out.solution.t;
        let dx = out.profile.dx();
        let front = front_position(&out.profile, 0.645).map_err(|e| e.to_string())?;
        let speed = (front - 0.5) / t;
        ok &= (speed + 0.29).abs() <= 3.0 * dx / t;
        details.push(format!("eps {eps}: speed {speed:.5} (tol {:.4})", 3.0 * dx / t));
    }
    check(ok, details.join("; "))
}

/// Randomised invariant-domain suite for the relaxation scheme.
fn criterion_5() -> Outcome {
    const FIELDS: usize = 500;
    const STEPS: usize = 200;
    const CELLS: usize = 50;
    let top = 1.0 - DEFAULT_DELTA + 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let d = FundamentalDiagram::lighthill_whitham();
    let mut violations = 0usize;
    let mut first: Option<String> = None;
    let mut worst_f1 = f64::INFINITY;
    for h in [1.0, 2.0] {
        for field in 0..FIELDS {
            let eps = 10f64.powf(rng.gen_range(-4.0..2.0));
            let params = ModelParams::new(h, eps).unwrap();
            let rho: Vec<f64> = (0..CELLS).map(|_| rng.gen_range(0.0..0.999)).collect();
            let q: Vec<f64> = rho.iter().map(|&r| rng.gen_range(0.0..=r)).collect();
            let mut sol = GridSolution::new(0.0, 1.0, rho, q, params, d.clone()).unwrap();
            for step in 0..STEPS {
                let next = kinetic_dt_limit(&sol, &BoundarySpec::OUTFLOW)
                    .and_then(|dt| step_relaxation(&sol, &BoundarySpec::OUTFLOW, dt));
                let next = match next {
                    Ok(n) => n,
                    Err(e) => {
                        violations += 1;
                        first.get_or_insert_with(|| format!("H={h} field {field} step {step}: {e}"));
                        break;
                    }
                };
                let mut bad = false;
                for (&r, &qq) in next.rho.iter().zip(&next.q) {
                    worst_f1 = worst_f1.min(r - qq);
                    if !(qq >= 0.0 && qq <= r && r <= top) {
                        bad = true;
                        first.get_or_insert_with(|| format!("H={h} field {field} step {step}: rho={r:e} q={qq:e}"));
                    }
                }
                if bad {
                    violations += 1;
                    break;
                }
                sol = next;
            }
        }
    }
    check(
        violations == 0,
        format!(
            "{} fields x {STEPS} steps per H in {{1, 2}}: {violations} violating runs, min(rho - q) = {worst_f1:.3e}{}",
            FIELDS,
            first.map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

fn cluster_profile(left: MacroState, right: MacroState, like: &Profile) -> Profile {
    let fan = solve_riemann_cluster(left, right).unwrap();
    let t = like.t;
    let rho = like.x.iter().map(|&x| fan.sample((x - 0.5) / t).rho).collect();
    Profile { rho, z: None, ..like.clone() }
}

/// Cluster limit: exact constrained fan, monotone convergence in H, linear regime.
fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();

    let fan = solve_riemann_cluster(MacroState { rho: 0.7, q: 0.7 }, MacroState { rho: 0.7, q: 0.2 })
        .map_err(|e| e.to_string())?;
    let s = fan.shock_speed.unwrap_or(f64::NAN);
    let exact = fan.regime == ClusterRegime::Constrained
        && fan.middle.rho == 1.0
        && (fan.middle.q - 0.5).abs() <= 1e-15
        && (s + 2.0 / 3.0).abs() <= 1e-15;
    ok &= exact;
    details.push(format!("M = ({}, {}), s = {s}", fan.middle.rho, fan.middle.q));

    let mut dists = Vec::new();
    for h in [1.0, 0.5, 0.1] {
        let out = run("cluster", "constrained", Scheme::Relaxation, h, f64::INFINITY).map_err(|e| e.to_string())?;
        let reference = cluster_profile(fan.left, fan.right, &out.profile);
        dists.push(l1_distance(&out.profile, &reference).unwrap());
    }
    ok &= dists.windows(2).all(|w| w[1] < w[0]);
    details.push(format!(
        "L1 to H=0 (H = 1, 0.5, 0.1): {}",
        dists.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>().join(" > ")
    ));

    let left = MacroState { rho: 0.7, q: 0.3 };
    let right = MacroState { rho: 0.7, q: 0.2 };
    let lin = solve_riemann_cluster(left, right).map_err(|e| e.to_string())?;
    let middle_ok =
        lin.regime == ClusterRegime::Linear && (lin.middle.rho - 0.8).abs() <= 1e-15 && lin.middle.q == 0.3;
    let s = find_scenario("cluster").unwrap();
    let dx = (s.x_hi - s.x_lo) / s.n_cells as f64;
    let like = Profile {
        x_lo: s.x_lo,
        x_hi: s.x_hi,
        t: s.t_end,
        x: (0..s.n_cells).map(|i| s.x_lo + (i as f64 + 0.5) * dx).collect(),
        rho: vec![0.0; s.n_cells],
        q: vec![0.0; s.n_cells],
        z: None,
    };
    let sampled = cluster_profile(left, right, &like);
    let w0 = front_position_in(&sampled, 0.75, s.x_lo, 0.6).map_err(|e| e.to_string())?;
    let w1 = front_position_in(&sampled, 0.75, 0.6, s.x_hi).map_err(|e| e.to_string())?;
    let speeds_ok = (w0 - 0.5).abs() <= 2.0 * dx && (w1 - (0.5 + s.t_end)).abs() <= 2.0 * dx;
    ok &= middle_ok && speeds_ok;
    details.push(format!(
        "linear M = ({}, {}), waves at x = {w0:.4}, {w1:.4}",
        lin.middle.rho, lin.middle.q
    ));
    check(ok, details.join("; "))
}

/// Transonic left boundary layer.
fn criterion_7() -> Outcome {
    let out = run("bvp-layers", "transonic", Scheme::Relaxation, 1.0, 0.001).map_err(|e| e.to_string())?;
    let wall = out.profile.rho[0];
    let trace = interior_trace(&out.profile, 0.1, 0.2, 0.0).map_err(|e| e.to_string())?;
    check(
        (wall - 2.0 / 3.0).abs() <= 0.02 && (trace - 0.5).abs() <= 0.02,
        format!("first cell {wall:.5} (target 2/3), interior trace {trace:.5} (target 0.5)"),
    )
}

/// Closed form vs bisection at H = 1; relaxed scheme vs relaxation scheme at epsilon = 0.
fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let params = ModelParams::new(1.0, 0.0).unwrap();
    let top = 1.0 - DEFAULT_DELTA;
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let mut st = || {
            let rho = rng.gen_range(0.0..=top);
            MacroState { rho, q: rng.gen_range(0.0..=rho) }
        };
        let (l, r) = (st(), st());
        let a = intermediate_state(l, r, &params).map_err(|e| e.to_string())?;
        let b = intermediate_state_bisection(l, r, &params).map_err(|e| e.to_string())?;
        worst = worst.max((a.rho - b.rho).abs()).max((a.q - b.q).abs());
    }

    let d = FundamentalDiagram::lighthill_whitham();
    let mut worst_step: f64 = 0.0;
    for _ in 0..200 {
        let n = 40;
        let rho: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..0.999)).collect();
        let q: Vec<f64> = rho.iter().map(|&r| d.eval(r)).collect();
        let sol = GridSolution::new(0.0, 1.0, rho.clone(), q, params, d.clone()).unwrap();
        let dt = kinetic_dt_limit(&sol, &BoundarySpec::OUTFLOW).unwrap() * rng.gen_range(0.1..=1.0);
        let kinetic = step_relaxation(&sol, &BoundarySpec::OUTFLOW, dt).map_err(|e| e.to_string())?;
        let relaxed = step_relaxed(&rho, &d, dt, sol.dx()).map_err(|e| e.to_string())?;
        for (a, b) in kinetic.rho.iter().zip(&relaxed) {
            worst_step = worst_step.max((a - b).abs());
        }
    }
    check(
        worst <= 1e-10 && worst_step <= 1e-14,
        format!("max |closed form - bisection| = {worst:.3e}, max |relaxed - relaxation(eps=0)| = {worst_step:.3e}"),
    )
}

/// Subcharacteristic audit of the LW diagram.
fn criterion_9() -> Outcome {
    let d = FundamentalDiagram::lighthill_whitham();
    let mut ok = true;
    let mut details = Vec::new();
    for h in [1.0, 1.5, 2.0, 5.0] {
        let rep = check_subcharacteristic(&d, &ModelParams::new(h, 0.1).unwrap(), 10_000).unwrap();
        ok &= rep.passed;
        details.push(format!("H={h}: {}", if rep.passed { "pass" } else { "fail" }));
    }
    let rep = check_subcharacteristic(&d, &ModelParams::new(0.5, 0.1).unwrap(), 10_000).unwrap();
    let v = rep.first_violation;
    ok &= !rep.passed && v.is_some_and(|r| r > 0.5);
    details.push(format!("H=0.5: {} (violation at rho = {v:?})", if rep.passed { "pass" } else { "fail" }));
    check(ok, details.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("shock reproduction", criterion_1),
        ("scheme accuracy ordering", criterion_2),
        ("relaxation limit", criterion_3),
        ("epsilon-independent shock speed", criterion_4),
        ("invariant domain", criterion_5),
        ("cluster limit", criterion_6),
        ("boundary-layer consistency", criterion_7),
        ("oracle equivalence", criterion_8),
        ("subcharacteristic audit", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("criterion {}: PASS {name}: {d} [{secs:.2}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {d} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
