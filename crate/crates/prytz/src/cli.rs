//! The `prytz` command line.
//!
//! Exit codes: 0 success, 2 usage, 3 input error, 4 numeric failure.

use std::io::Write as _;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use prytz_core::estimator::hill_predict_for;
use prytz_core::menzin::{
    circle_closed_tractrix, menzin_minimum_check, menzin_minimum_closed_form, simulate_circle_attractor,
    CircleSimulation,
};
use prytz_core::PlanarPath;

use crate::config::{CommonArgs, FileConfig, OutputFormat, RunConfig};
use crate::error::{exit, AppError, AppResult};
use crate::json::{
    point, to_pretty, CircleJson, CircleSimulationJson, MinimumJson, PathJson, PredictionJson, ScanRowJson,
    TraceJson, XY,
};
use crate::scan::{parallel_scan, FamilySpec};
use crate::{export, ops, service};

#[derive(Debug, Parser)]
#[command(name = "prytz", version, about = "Virtual Prytz (hatchet) planimeter")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace a straight line or a path file and emit the tractrix samples.
    Tractrix(TractrixArgs),
    /// Trace a path; with --loop, report the area identity.
    Trace(TraceArgs),
    /// Holonomy of a closed path.
    Holonomy(HolonomyArgs),
    /// Parallelogram holonomy, region scans and the circle attractor.
    Menzin(MenzinArgs),
    /// Moment-series predictions and error-order studies.
    Hill(HillArgs),
    /// Run the local JSON service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct TractrixArgs {
    /// Length of a straight run along the x-axis from the origin.
    #[arg(long, conflicts_with = "path")]
    pub line: Option<f64>,
    /// Path JSON file.
    #[arg(long)]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub path: Option<PathBuf>,
    /// Trace the closed path once round from --base-index.
    #[arg(long = "loop")]
    pub as_loop: bool,
    #[arg(long)]
    pub base_index: Option<usize>,
}

#[derive(Debug, Args)]
pub struct HolonomyArgs {
    #[arg(long)]
    pub path: Option<PathBuf>,
    #[arg(long)]
    pub base_index: Option<usize>,
    /// Integrate the transport ODE instead of multiplying edge transports.
    #[arg(long)]
    pub ode: bool,
}

#[derive(Debug, Args)]
pub struct MenzinArgs {
    /// Numerically minimize Im(conj(b) d) over parallelograms of area ≥ πℓ².
    #[arg(long)]
    pub min_check: bool,
    #[command(subcommand)]
    pub action: Option<MenzinCommand>,
}

#[derive(Debug, Subcommand)]
pub enum MenzinCommand {
    /// Closed-form report for the parallelogram spanned by v and w.
    Parallelogram {
        #[arg(long, value_parser = parse_xy, allow_hyphen_values = true)]
        v: XY,
        #[arg(long, value_parser = parse_xy, allow_hyphen_values = true)]
        w: XY,
    },
    /// Scan a family of regions (CSV by default).
    Scan {
        /// JSON file holding a family object.
        #[arg(long, conflicts_with = "square_sweep")]
        family_file: Option<PathBuf>,
        /// `FROM,TO,COUNT` squares.
        #[arg(long, value_delimiter = ',')]
        square_sweep: Option<Vec<f64>>,
    },
    /// Closed tractrix of a circle, optionally simulated to convergence.
    Circle {
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        simulate: bool,
    },
    /// Same as --min-check.
    MinCheck,
}

#[derive(Debug, Args)]
pub struct HillArgs {
    #[command(subcommand)]
    pub action: HillCommand,
}

#[derive(Debug, Subcommand)]
pub enum HillCommand {
    /// Series prediction of the reading for one base vertex and direction.
    Predict(HillPathArgs),
    /// Readings from θ₀ and θ₀ + π with predictions.
    Measure(HillPathArgs),
    /// Error-order study over shrinking copies of the region.
    Study {
        #[command(flatten)]
        target: HillPathArgs,
        /// Decreasing scales in (0, 1), comma separated.
        #[arg(long, value_delimiter = ',')]
        scales: Option<Vec<f64>>,
    },
}

#[derive(Debug, Args)]
pub struct HillPathArgs {
    #[arg(long)]
    pub path: Option<PathBuf>,
    #[arg(long)]
    pub base_index: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Address to listen on.
    #[arg(long)]
    pub bind: Option<String>,
}

pub const DEFAULT_SCALES: [f64; 3] = [0.08, 0.04, 0.02];

fn parse_xy(s: &str) -> Result<XY, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected X,Y, got {s:?}"));
    }
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok([f(parts[0])?, f(parts[1])?])
}

pub fn read_path(file: &Path) -> AppResult<PlanarPath> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| AppError::Input(format!("cannot read path file {}: {e}", file.display())))?;
    let json: PathJson = serde_json::from_str(&text)
        .map_err(|e| AppError::Input(format!("invalid path file {}: {e}", file.display())))?;
    Ok(json.to_path()?)
}

struct Ctx {
    common: CommonArgs,
    file: FileConfig,
}

impl Ctx {
    fn config(&self, default_format: OutputFormat) -> AppResult<RunConfig> {
        self.common.resolve(&self.file, default_format)
    }

    fn path(&self, flag: &Option<PathBuf>) -> AppResult<PlanarPath> {
        let file = flag
            .as_ref()
            .or(self.file.path.as_ref())
            .ok_or_else(|| AppError::Usage("missing --path".into()))?;
        read_path(file)
    }

    fn base_index(&self, flag: Option<usize>) -> usize {
        flag.or(self.file.base_index).unwrap_or(0)
    }

    fn emit(&self, text: &str) -> AppResult<()> {
        match &self.common.output {
            Some(p) => std::fs::write(p, text)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }
}

fn only_json(cfg: &RunConfig, what: &str) -> AppResult<()> {
    match cfg.output_format {
        OutputFormat::Json => Ok(()),
        f => Err(AppError::Usage(format!("{what} supports --format json only, got {f:?}"))),
    }
}

fn render_trace(cfg: &RunConfig, t: &TraceJson) -> AppResult<String> {
    Ok(match cfg.output_format {
        OutputFormat::Json => to_pretty(t),
        OutputFormat::Csv => export::trace_csv(&t.states)?,
        OutputFormat::Svg => {
            let tracer: Vec<XY> = t.states.iter().map(|s| [s.x, s.y]).collect();
            export::trace_svg(&tracer, &t.chisel_path.vertices, t.ell)
        }
    })
}

fn tractrix(ctx: &Ctx, a: &TractrixArgs) -> AppResult<()> {
    let cfg = ctx.config(OutputFormat::Json)?;
    let t = match (a.line, &a.path, &ctx.file.path) {
        (Some(len), _, _) => ops::tractrix_line(len, cfg.theta0, cfg.ell, cfg.step, cfg.samples)?,
        (None, Some(_), _) | (None, None, Some(_)) => {
            let path = ctx.path(&a.path)?;
            ops::trace(&path, cfg.theta0, cfg.ell, cfg.step, cfg.samples, None)?
        }
        (None, None, None) => return Err(AppError::Usage("tractrix needs --line or --path".into())),
    };
    ctx.emit(&render_trace(&cfg, &t)?)
}

fn trace(ctx: &Ctx, a: &TraceArgs) -> AppResult<()> {
    let cfg = ctx.config(OutputFormat::Json)?;
    let path = ctx.path(&a.path)?;
    if a.as_loop && !path.is_closed() {
        return Err(prytz_core::Error::OpenPath.into());
    }
    let base = a.as_loop.then(|| ctx.base_index(a.base_index));
    let t = ops::trace(&path, cfg.theta0, cfg.ell, cfg.step, cfg.samples, base)?;
    if let Some(id) = &t.area_identity {
        eprintln!(
            "A_region = {}\nell*sigma = {}\nA_gamma = {}\nresidual = {:e}",
            id.a_region, id.ell_sigma, id.a_gamma, id.residual
        );
    }
    ctx.emit(&render_trace(&cfg, &t)?)
}

fn holonomy(ctx: &Ctx, a: &HolonomyArgs) -> AppResult<()> {
    let cfg = ctx.config(OutputFormat::Json)?;
    only_json(&cfg, "holonomy")?;
    let path = ctx.path(&a.path)?;
    let h = ops::holonomy(&path, ctx.base_index(a.base_index), cfg.ell, cfg.step, a.ode)?;
    ctx.emit(&to_pretty(&h))
}

fn min_check(ctx: &Ctx) -> AppResult<()> {
    let m = menzin_minimum_check();
    ctx.emit(&to_pretty(&MinimumJson::new(&m, menzin_minimum_closed_form())))
}

fn menzin(ctx: &Ctx, a: &MenzinArgs) -> AppResult<()> {
    let action = match (&a.action, a.min_check) {
        (None, true) | (Some(MenzinCommand::MinCheck), _) => return min_check(ctx),
        (None, false) => return Err(AppError::Usage("menzin needs a subcommand or --min-check".into())),
        (Some(action), _) => action,
    };
    match action {
        MenzinCommand::Parallelogram { v, w } => {
            let cfg = ctx.config(OutputFormat::Json)?;
            only_json(&cfg, "menzin parallelogram")?;
            ctx.emit(&to_pretty(&ops::parallelogram(point(*v), point(*w), cfg.ell)?))
        }
        MenzinCommand::Scan {
            family_file,
            square_sweep,
        } => {
            let cfg = ctx.config(OutputFormat::Csv)?;
            let family = match (family_file, square_sweep, &ctx.file.family) {
                (Some(f), _, _) => {
                    let text = std::fs::read_to_string(f)
                        .map_err(|e| AppError::Input(format!("cannot read family {}: {e}", f.display())))?;
                    serde_json::from_str::<FamilySpec>(&text)?
                }
                (None, Some(s), _) => {
                    if s.len() != 3 || s[2] < 1.0 || s[2].fract() != 0.0 {
                        return Err(AppError::Usage("--square-sweep takes FROM,TO,COUNT with integer COUNT".into()));
                    }
                    FamilySpec::SquareSweep {
                        from: s[0],
                        to: s[1],
                        count: s[2] as usize,
                    }
                }
                (None, None, Some(f)) => f.clone(),
                (None, None, None) => {
                    return Err(AppError::Usage("scan needs --family-file, --square-sweep or a config family".into()))
                }
            };
            let regions = family.regions(cfg.seed)?;
            let rows = parallel_scan(&regions, cfg.ell, cfg.step);
            for (id, e) in rows.iter().filter_map(|r| r.as_ref().err()) {
                log::warn!("region {id}: {e}");
            }
            match cfg.output_format {
                OutputFormat::Csv => ctx.emit(&export::scan_csv(&rows)?),
                OutputFormat::Json => {
                    let ok: Vec<ScanRowJson> = rows.iter().filter_map(|r| r.as_ref().ok()).map(Into::into).collect();
                    ctx.emit(&to_pretty(&ok))
                }
                OutputFormat::Svg => Err(AppError::Usage("scan supports csv or json".into())),
            }
        }
        MenzinCommand::Circle { radius, simulate } => {
            let cfg = ctx.config(OutputFormat::Json)?;
            only_json(&cfg, "menzin circle")?;
            let predicted = circle_closed_tractrix(*radius, cfg.ell)?;
            let simulation = if *simulate {
                let sim = simulate_circle_attractor(&CircleSimulation::new(*radius, cfg.ell))?;
                Some(CircleSimulationJson::from(&sim))
            } else {
                None
            };
            ctx.emit(&to_pretty(&CircleJson {
                radius: *radius,
                ell: cfg.ell,
                predicted_radius: predicted,
                simulation,
            }))
        }
        MenzinCommand::MinCheck => unreachable!(),
    }
}

fn hill(ctx: &Ctx, a: &HillArgs) -> AppResult<()> {
    match &a.action {
        HillCommand::Predict(t) => {
            let cfg = ctx.config(OutputFormat::Json)?;
            only_json(&cfg, "hill predict")?;
            let path = ctx.path(&t.path)?;
            let p = hill_predict_for(&path, ctx.base_index(t.base_index), cfg.theta0, cfg.ell)?;
            ctx.emit(&to_pretty(&PredictionJson::from(&p)))
        }
        HillCommand::Measure(t) => {
            let cfg = ctx.config(OutputFormat::Json)?;
            only_json(&cfg, "hill measure")?;
            let path = ctx.path(&t.path)?;
            let e = ops::estimate(&path, ctx.base_index(t.base_index), cfg.theta0, cfg.ell, cfg.step)?;
            ctx.emit(&to_pretty(&e))
        }
        HillCommand::Study { target, scales } => {
            let cfg = ctx.config(OutputFormat::Json)?;
            let path = ctx.path(&target.path)?;
            let scales = scales
                .clone()
                .or_else(|| ctx.file.scales.clone())
                .unwrap_or_else(|| DEFAULT_SCALES.to_vec());
            let s = ops::study(&path, ctx.base_index(target.base_index), cfg.theta0, cfg.ell, &scales, cfg.step)?;
            match cfg.output_format {
                OutputFormat::Json => ctx.emit(&to_pretty(&s)),
                OutputFormat::Csv => ctx.emit(&export::study_csv(&s.rows)?),
                OutputFormat::Svg => Err(AppError::Usage("hill study supports csv or json".into())),
            }
        }
    }
}

fn serve(ctx: &Ctx, a: &ServeArgs) -> AppResult<()> {
    let bind = a
        .bind
        .clone()
        .or_else(|| ctx.file.bind.clone())
        .unwrap_or_else(|| service::DEFAULT_BIND.to_string());
    let addr: SocketAddr = bind
        .parse()
        .map_err(|e| AppError::Usage(format!("invalid --bind {bind:?}: {e}")))?;
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(service::serve(addr))?;
    Ok(())
}

pub fn run(cli: Cli) -> AppResult<()> {
    let file = cli.common.file()?;
    let ctx = Ctx {
        common: cli.common,
        file,
    };
    match &cli.command {
        Command::Tractrix(a) => tractrix(&ctx, a),
        Command::Trace(a) => trace(&ctx, a),
        Command::Holonomy(a) => holonomy(&ctx, a),
        Command::Menzin(a) => menzin(&ctx, a),
        Command::Hill(a) => hill(&ctx, a),
        Command::Serve(a) => serve(&ctx, a),
    }
}

/// Parses arguments, runs, and maps errors to exit codes.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::SUCCESS });
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();
    match run(cli) {
        Ok(()) => ExitCode::from(exit::SUCCESS),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
