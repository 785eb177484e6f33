//! Command-line front end.
//!
//! Exit codes: `0` success; `1` axiom violations (`verify`); `2` usage,
//! parse or data errors; `3` a solver hypothesis failed; `4` the solver hit
//! its iteration budget or a cycle.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::axioms::check_axioms;
use crate::cone::Norm;
use crate::error::{Error, Result};
use crate::fixed_point::{
    estimate_contraction, partial_sums, picard_orbit, solve_banach, solve_banach_iterate_power, solve_hardy_rogers,
    solve_strict_compact, HardyRogers, SelfMap, SolveConfig, SolveStatus,
};
use crate::fixtures::{fixture_with, FixtureParams};
use crate::metric::{classify, derive_eta_metric, minimal_eta};
use crate::space::{EtaConeSpace, Point, SamplingPlan};
use crate::table::{parse_table, sampled_finite, write_table};

pub use output::{TraceReport, TraceRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "etacone",
    version,
    about = "Verify, classify and iterate on η-cone metric spaces"
)]
pub struct Cli {
    /// Tolerance for order tests and solver stopping
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Iteration budget for solvers and traces
    #[arg(long, global = true, default_value_t = 10_000)]
    pub max_iter: usize,
    /// Trailing iterates standing in for n, m → ∞
    #[arg(long, global = true, default_value_t = 16)]
    pub tail_window: usize,
    /// Seed for sampling grids on interval spaces
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample points per axis on interval spaces
    #[arg(long, global = true, default_value_t = 64)]
    pub points: usize,
    /// Output format (default: csv for `trace`, human otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub fixture: FixtureArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FixtureArgs {
    /// α of `three_point_cone` (distances along (1, α))
    #[arg(long, global = true, default_value_t = 0.0)]
    pub cone_alpha: f64,
    /// Norm of `three_point_cone`: max, sum or euclidean
    #[arg(long, global = true, default_value = "max")]
    pub norm: Norm,
    /// Truncation bound of `nat_infinity`
    #[arg(long, global = true, default_value_t = 64)]
    pub nat_bound: usize,
    /// Grid nodes of `function_space`
    #[arg(long, global = true, default_value_t = 33)]
    pub grid_nodes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Banach,
    Power,
    Strict,
    HardyRogers,
}

#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    /// Map: half | square | identity | affine A B | const C | reflect C | table L1 L2 ...
    #[arg(long)]
    pub map: Option<String>,
    /// Start point (number or label); defaults to the fixture's start
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check (d1)–(d3) exhaustively (finite) or on a sampled grid (interval)
    Verify {
        /// Fixture name or table path
        source: String,
        /// List every nondegenerate triple check, not only violations
        #[arg(long)]
        show_checks: bool,
    },
    /// Metric or metric-type, with the constant L and its witness triple
    Classify { source: String },
    /// Pointwise least η making the scaled triangle inequality hold
    MinEta { source: String },
    /// Run a fixed-point scheme and report every checked hypothesis
    Solve {
        source: String,
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_enum, default_value_t = Scheme::Banach)]
        scheme: Scheme,
        /// Power n for `--scheme power`
        #[arg(long, default_value_t = 2)]
        power: usize,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Emit the Picard orbit with step distances, tail η and partial sums
    Trace {
        source: String,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Write a fixture in the table format (interval fixtures on their grid)
    ExportFixture {
        name: String,
        /// Output file (default: stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A resolved fixture or table.
struct Source {
    space: EtaConeSpace,
    map: Option<SelfMap>,
    x0: Option<Point>,
    coefficients: Option<HardyRogers>,
}

impl Cli {
    fn params(&self) -> FixtureParams {
        FixtureParams {
            cone_alpha: self.fixture.cone_alpha,
            norm: self.fixture.norm,
            nat_bound: self.fixture.nat_bound,
            grid_nodes: self.fixture.grid_nodes,
            ..FixtureParams::default()
        }
    }

    fn plan(&self) -> SamplingPlan {
        SamplingPlan {
            points_per_axis: self.points,
            seed: self.seed,
            ..SamplingPlan::default()
        }
    }

    fn solve_config(&self) -> SolveConfig {
        SolveConfig {
            tol: self.tol,
            max_iter: self.max_iter,
            tail_window: self.tail_window,
            plan: self.plan(),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Contract(m.to_string()));
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("--tol must be positive");
        }
        if self.max_iter == 0 {
            return bad("--max-iter must be at least 1");
        }
        if self.tail_window < 2 {
            return bad("--tail-window must be at least 2");
        }
        if self.points < 2 {
            return bad("--points must be at least 2");
        }
        Ok(())
    }

    fn load(&self, source: &str) -> Result<Source> {
        match fixture_with(source, &self.params()) {
            Ok(e) => Ok(Source {
                space: e.space,
                map: e.map,
                x0: e.x0,
                coefficients: e.coefficients,
            }),
            Err(Error::UnknownFixture { valid, .. }) => {
                let path = Path::new(source);
                if !path.is_file() {
                    return Err(Error::Data(format!(
                        "`{source}` is neither a fixture ({}) nor a readable file",
                        valid.join(", ")
                    )));
                }
                let text =
                    std::fs::read_to_string(path).map_err(|e| Error::Data(format!("cannot read {source}: {e}")))?;
                let table = parse_table(&text)?;
                Ok(Source {
                    space: table.space,
                    map: table.map.map(SelfMap::table),
                    x0: None,
                    coefficients: None,
                })
            }
            Err(e) => Err(e),
        }
    }
}

/// Parses a `--map` specification against a space.
pub fn parse_map(space: &EtaConeSpace, spec: &str) -> Result<SelfMap> {
    let tokens: Vec<&str> = spec.split_whitespace().collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Data(format!("`{t}` in map `{spec}` is not a number")))
    };
    let arity = |n: usize| {
        if tokens.len() == n + 1 {
            Ok(())
        } else {
            Err(Error::Data(format!("map `{}` takes {n} argument(s)", tokens[0])))
        }
    };
    match tokens.first().copied() {
        Some("half") => arity(0).map(|_| SelfMap::half()),
        Some("square") => arity(0).map(|_| SelfMap::square()),
        Some("identity") => arity(0).map(|_| SelfMap::identity()),
        Some("affine") => {
            arity(2)?;
            Ok(SelfMap::affine(num(tokens[1])?, num(tokens[2])?))
        }
        Some("reflect") => {
            arity(1)?;
            Ok(SelfMap::reflect(num(tokens[1])?))
        }
        Some("const") => {
            arity(1)?;
            if space.is_finite() {
                Ok(SelfMap::constant_point(space.parse_point(tokens[1])?, tokens[1]))
            } else {
                Ok(SelfMap::constant_real(num(tokens[1])?))
            }
        }
        Some("table") => {
            let n = space
                .len()
                .ok_or_else(|| Error::Data("table maps need a finite space".into()))?;
            if tokens.len() != n + 1 {
                return Err(Error::Data(format!("table map needs {n} images")));
            }
            let images = tokens[1..]
                .iter()
                .map(|t| match space.parse_point(t)? {
                    Point::Index(i) => Ok(i),
                    _ => unreachable!("finite spaces resolve to indices"),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SelfMap::table(images))
        }
        _ => Err(Error::Data(format!(
            "unknown map `{spec}`; expected half, square, identity, affine A B, const C, reflect C or table ..."
        ))),
    }
}

/// Exit status of a solve, a function of the report status alone.
pub fn solve_exit_code(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Converged => 0,
        SolveStatus::PreconditionFailed => 3,
        SolveStatus::MaxIter | SolveStatus::CycleDetected => 4,
    }
}

/// Parses `std::env::args` and runs against the real stdout and stderr.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one command, writing the report to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{}", rendered.ansi())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        // A closed reader (e.g. `| head`) is not an error of the command.
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: write failed: {e}");
            2
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Failures of one command: library errors, or the output stream going away.
enum Failure {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Io(e)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    cli.validate()?;
    let format = cli.format;
    match &cli.command {
        Command::Verify { source, show_checks } => {
            let src = cli.load(source)?;
            let plan = SamplingPlan {
                record_checks: *show_checks,
                ..cli.plan()
            };
            let report = check_axioms(&src.space, cli.tol, &plan)?;
            output::verify(out, format.unwrap_or(Format::Human), &report).map_err(io)?;
            Ok(if report.all_ok() { 0 } else { 1 })
        }
        Command::Classify { source } => {
            let src = cli.load(source)?;
            let table = finite_real_table(&src.space)?;
            let c = classify(&table)?;
            output::classification(out, format.unwrap_or(Format::Human), &c).map_err(io)?;
            Ok(0)
        }
        Command::MinEta { source } => {
            let src = cli.load(source)?;
            let table = minimal_eta(&finite_real_table(&src.space)?)?;
            output::real_table(out, format.unwrap_or(Format::Human), &table).map_err(io)?;
            Ok(0)
        }
        Command::Solve {
            source,
            map,
            scheme,
            power,
            alpha,
            beta,
            gamma,
            delta,
        } => {
            let src = cli.load(source)?;
            let (t, x0) = resolve_map(&src, map)?;
            let config = cli.solve_config();
            let report = match scheme {
                Scheme::Banach => solve_banach(&src.space, &t, x0, &config)?,
                Scheme::Power => solve_banach_iterate_power(&src.space, &t, *power, x0, &config)?,
                Scheme::Strict => solve_strict_compact(&src.space, &t, x0, &config)?,
                Scheme::HardyRogers => {
                    let given = [alpha, beta, gamma, delta];
                    let coefficients = if given.iter().any(|c| c.is_some()) {
                        let v = |c: &Option<f64>| c.unwrap_or(0.0);
                        HardyRogers::constant(v(alpha), v(beta), v(gamma), v(delta))
                    } else {
                        src.coefficients
                            .clone()
                            .ok_or_else(|| Error::Data("hardy-rogers needs --alpha/--beta/--gamma/--delta".into()))?
                    };
                    solve_hardy_rogers(&src.space, &t, &coefficients, x0, &config)?
                }
            };
            output::solve(out, format.unwrap_or(Format::Human), &report).map_err(io)?;
            Ok(solve_exit_code(report.status))
        }
        Command::Trace { source, map } => {
            let src = cli.load(source)?;
            let (t, x0) = resolve_map(&src, map)?;
            let report = build_trace(&src.space, &t, x0, cli)?;
            output::trace(out, format.unwrap_or(Format::Csv), &report).map_err(io)?;
            Ok(0)
        }
        Command::ExportFixture { name, output } => {
            let entry = fixture_with(name, &cli.params())?;
            let space = sampled_finite(&entry.space, &cli.plan())?;
            let mut comment = format!("fixture {name}: {}", entry.description);
            if !entry.space.is_finite() {
                comment.push_str(&format!("\nsampled on {} grid points (seed {})", cli.points, cli.seed));
            }
            let text = write_table(&space, None, &comment)?;
            match output {
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| Error::Data(format!("cannot write {}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(0)
        }
    }
}

fn finite_real_table(space: &EtaConeSpace) -> Result<crate::metric::RealTable> {
    if !space.is_finite() {
        return Err(Error::Data(
            "classification needs a finite space; export the fixture to a table first".into(),
        ));
    }
    derive_eta_metric(space).table()
}

fn resolve_map(src: &Source, args: &MapArgs) -> Result<(SelfMap, Point)> {
    let map = match &args.map {
        Some(spec) => parse_map(&src.space, spec)?,
        None => src
            .map
            .clone()
            .ok_or_else(|| Error::Data("no map for this source; pass --map".into()))?,
    };
    let x0 = match &args.x0 {
        Some(text) => src.space.parse_point(text)?,
        None => src
            .x0
            .ok_or_else(|| Error::Data("no start point for this source; pass --x0".into()))?,
    };
    Ok((map, x0))
}

fn window_max<F>(points: &[Point], mut f: F) -> Result<f64>
where
    F: FnMut(Point, Point) -> Result<f64>,
{
    let mut best: f64 = 0.0;
    for (i, &a) in points.iter().enumerate() {
        for (j, &b) in points.iter().enumerate() {
            if i != j {
                best = best.max(f(a, b)?);
            }
        }
    }
    Ok(best)
}

/// One row per step `n = 0..N−1` of the orbit `x_0..x_N`; the final iterate
/// stands in for the limit and for the witness index of the partial sums.
pub fn build_trace(space: &EtaConeSpace, map: &SelfMap, x0: Point, cli: &Cli) -> Result<TraceReport> {
    let trace = picard_orbit(space, map, x0, cli.max_iter, cli.tol, cli.tail_window)?;
    let k_hat = estimate_contraction(space, map, &cli.plan()).ok();
    let m = trace.len();
    let sums = match &k_hat {
        Some(est) if est.k < 1.0 => Some(partial_sums(space, &trace, est.k, m)?),
        _ => None,
    };
    let limit = trace.last();
    let w = cli.tail_window;
    let mut rows = Vec::with_capacity(m);
    for n in 0..m {
        let eta_window = &trace.iterates[(n + 2).saturating_sub(w)..=n + 1];
        let pair_window = &trace.iterates[(n + 1).saturating_sub(w)..=n];
        rows.push(TraceRow {
            n,
            x_n: space.value(trace.iterates[n]),
            d_n: trace.step_distances[n],
            eta_tail_max: window_max(eta_window, |a, b| space.eta(a, b))?,
            s_n: sums.as_ref().map(|s| s[n]),
            d_to_limit: space.dist(trace.iterates[n], limit)?,
            pairwise_sup: window_max(pair_window, |a, b| space.dist(a, b))?,
        });
    }
    Ok(TraceReport {
        map: map.description().to_string(),
        start: space.value(x0),
        k_hat: k_hat.as_ref().map(|e| e.k),
        k_exact: k_hat.as_ref().is_some_and(|e| e.exact),
        witness_m: m,
        tail_window: w,
        stop: trace.stop,
        limit: space.value(limit),
        rows,
    })
}
