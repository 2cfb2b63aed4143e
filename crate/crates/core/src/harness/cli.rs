use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::output::{format_value, read_profile_csv, Manifest};
use super::runner::{emit_run, run_case, scenario_configs, DiagramSource, RunConfig};
use super::scenarios::{builtin_scenarios, find_scenario};
use crate::boundary::{default_layer_window, integrate_layer, Side};
use crate::error::Error;
use crate::model::{check_subcharacteristic, ModelParams, VALIDATION_SAMPLES};
use crate::schemes::Scheme;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "relaxflow", version, about = "Relaxation traffic-flow solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the built-in scenarios.
    List,
    /// Riemann problems (default scenario: riemann-shock).
    Riemann(RunArgs),
    /// Boundary value problems with kinetic boundary data (default: bvp-layers).
    Bvp(RunArgs),
    /// Scalar scheme comparison (default: scheme-compare).
    CompareSchemes(RunArgs),
    /// Small-H runs against the H = 0 limit (default: cluster).
    Cluster(RunArgs),
    /// Integrate one stationary boundary layer profile.
    Layer(LayerArgs),
    /// Audit the subcharacteristic condition; exits 1 on violation.
    CheckSubchar(SubcharArgs),
    /// Rerun a simulation from its manifest.
    Replay(ReplayArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    scenario: Option<String>,
    /// Run only this case of the scenario.
    #[arg(long)]
    case: Option<String>,
    #[arg(long, value_parser = parse_scheme)]
    scheme: Option<Scheme>,
    #[arg(long = "H")]
    h: Option<f64>,
    /// Relaxation time; `inf` disables relaxation.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    #[arg(long, default_value = "relaxflow-out")]
    out: PathBuf,
    /// `lw` or a two-column `rho,F` CSV file.
    #[arg(long, default_value = "lw")]
    diagram: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Left,
    Right,
}

#[derive(Args, Debug)]
struct LayerArgs {
    #[arg(long = "H", default_value_t = 1.0)]
    h: f64,
    /// Layer flux constant `C`.
    #[arg(long)]
    c: f64,
    #[arg(long)]
    rho0: f64,
    #[arg(long, value_enum)]
    side: SideArg,
    #[arg(long = "x-max")]
    x_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, default_value = "lw")]
    diagram: String,
    /// Output CSV file; the profile goes to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SubcharArgs {
    #[arg(long, default_value = "lw")]
    diagram: String,
    #[arg(long = "H")]
    h: f64,
    #[arg(long, default_value_t = VALIDATION_SAMPLES)]
    samples: usize,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Output directory; defaults to the manifest's directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Solver(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

type CliResult = std::result::Result<i32, Failure>;

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::List => cmd_list(),
        Command::Riemann(a) => cmd_run(a, "riemann-shock"),
        Command::Bvp(a) => cmd_run(a, "bvp-layers"),
        Command::CompareSchemes(a) => cmd_run(a, "scheme-compare"),
        Command::Cluster(a) => cmd_run(a, "cluster"),
        Command::Layer(a) => cmd_layer(a),
        Command::CheckSubchar(a) => cmd_subchar(a),
        Command::Replay(a) => cmd_replay(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Solver(e)) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

fn cmd_list() -> CliResult {
    for s in builtin_scenarios() {
        let cases: Vec<&str> = s.cases.iter().map(|c| c.name).collect();
        println!("{:<20} {} [cases: {}]", s.name, s.description, cases.join(", "));
    }
    Ok(EXIT_OK)
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn cmd_run(args: RunArgs, default_scenario: &str) -> CliResult {
    let name = args.scenario.as_deref().unwrap_or(default_scenario);
    let mut scenario = find_scenario(name).ok_or_else(|| Failure::Usage(format!("unknown scenario '{name}'")))?;
    if let Some(case) = &args.case {
        scenario.cases.retain(|c| c.name.eq_ignore_ascii_case(case));
        if scenario.cases.is_empty() {
            return Err(Failure::Usage(format!("scenario '{}' has no case '{case}'", scenario.name)));
        }
    }
    if let Some(s) = args.scheme {
        scenario.schemes = vec![s];
    }
    if let Some(h) = args.h {
        scenario.h_values = vec![h];
    }
    if let Some(e) = args.epsilon {
        scenario.eps_values = vec![e];
    }
    if let Some(n) = args.cells {
        if n == 0 {
            return Err(Failure::Usage("--cells must be positive".into()));
        }
        scenario.n_cells = n;
    }
    if let Some(c) = args.cfl {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Failure::Usage(format!("--cfl must lie in (0, 1], got {c}")));
        }
        scenario.cfl = c;
    }
    if let Some(t) = args.t_end {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--t-end must be finite and >= 0, got {t}")));
        }
        scenario.t_end = t;
    }
    let source = DiagramSource::parse(&args.diagram);
    source.load().map_err(usage)?;
    for &h in &scenario.h_values {
        for &e in &scenario.eps_values {
            ModelParams::new(h, e).map_err(usage)?;
        }
    }

    for mut cfg in scenario_configs(&scenario) {
        cfg.diagram = source.clone();
        let outcome = run_case(&cfg)?;
        let (csv, _) = emit_run(&cfg, &outcome, &args.out)?;
        println!("{} -> {}", outcome.report.summary_line(), csv.display());
    }
    Ok(EXIT_OK)
}

fn cmd_layer(args: LayerArgs) -> CliResult {
    let diagram = DiagramSource::parse(&args.diagram).load().map_err(usage)?;
    let params = ModelParams::new(args.h, 0.0).map_err(usage)?;
    let side = match args.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let (dx_max, dn) = default_layer_window(args.h, args.c);
    let profile = integrate_layer(
        &diagram,
        &params,
        args.c,
        args.rho0,
        side,
        args.x_max.unwrap_or(dx_max),
        args.steps.unwrap_or(dn),
    )?;
    let mut text = String::from("x,rho\n");
    for (x, r) in &profile {
        text.push_str(&format!("{},{}\n", format_value(*x), format_value(*r)));
    }
    match &args.out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(Error::from)?;
            }
            fs::write(path, text).map_err(Error::from)?;
            let (x, r) = profile[profile.len() - 1];
            println!("layer side={side:?} C={} rho(0)={} rho({x})={r} -> {}", args.c, args.rho0, path.display());
        }
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_subchar(args: SubcharArgs) -> CliResult {
    let diagram = DiagramSource::parse(&args.diagram).load().map_err(usage)?;
    let params = ModelParams::new(args.h, 0.0).map_err(usage)?;
    let report = check_subcharacteristic(&diagram, &params, args.samples).map_err(usage)?;
    println!("{}", serde_json::to_string(&report).map_err(|e| Error::Io(e.to_string()))?);
    if report.passed {
        println!("subcharacteristic condition holds for H = {}", args.h);
        Ok(EXIT_OK)
    } else {
        eprintln!(
            "subcharacteristic condition violated for H = {} (worst rho = {}, margin = {})",
            args.h, report.worst_rho, report.margin
        );
        Ok(EXIT_FAILURE)
    }
}

fn cmd_replay(args: ReplayArgs) -> CliResult {
    let manifest = Manifest::read(&args.manifest).map_err(usage)?;
    let cfg = RunConfig::from_manifest(&manifest).map_err(usage)?;
    let dir = match args.out {
        Some(d) => d,
        None => args.manifest.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let outcome = run_case(&cfg)?;
    let (csv, _) = emit_run(&cfg, &outcome, &dir)?;
    // sanity check that the written file parses
    read_profile_csv(&csv)?;
    println!("{} -> {}", outcome.report.summary_line(), csv.display());
    Ok(EXIT_OK)
}
