//! `chirality`: compute asymmetry and chirality measures of convex polygons,
//! dump reflection profiles, render phase diagrams and fuzz the bounds.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chiral_core::bounds_lab::{
    check_main_bounds, make_asymmetry_witness, run_campaign, write_report_csv, BoundCheck, BoundReport,
    CampaignConfig, DISK_SIDES,
};
use chiral_core::chirality::sample_profile;
use chiral_core::io::{fmt_sig, read_polygon, write_polygon, write_profile_csv};
use chiral_core::phase_atlas::{phase_grid, write_grid_csv, write_grid_svg, RegionTag};
use chiral_core::{
    alpha1_numeric, alpha2, asymmetry_alpha0, parallelogram_alpha1, shape_from_vertices, triangle_alpha1,
    ConvexPolygon, Error, Family, Shape, SweepOptions,
};
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_SOLVER: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "chirality", version, about = "Asymmetry and chirality of convex polygons")]
struct Cli {
    /// Angular samples in the axis sweep.
    #[arg(long, global = true, default_value_t = 2048, value_parser = parse_grid)]
    grid: usize,

    /// Golden-section tolerance in radians, in (0, 1e-4].
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = parse_tol)]
    tol: f64,

    /// Seed for random campaigns.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Worker threads; 0 picks one per core.
    #[arg(long, env = "CHIRALITY_THREADS", default_value_t = 0, hide_env_values = true)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report α₀, α₁, α₂ and the optimal reflection axis of a polygon file.
    Alpha { input: PathBuf },
    /// Sample θ ↦ R(K, reflection of K in the axis at angle θ).
    Profile { input: PathBuf },
    /// Classify a parameter grid by its optimal axis.
    Phase {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[arg(default_value_t = 200, value_parser = clap::value_parser!(u64).range(16..))]
        resolution: u64,
        /// Also write the SVG rendering here when the main output is CSV.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Fuzz the inequalities between the measures over random polygons.
    Bounds {
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Add the asymmetry witness with this β to the campaign.
        #[arg(long)]
        witness: Option<f64>,
    },
    /// Build the disk-plus-triangle body whose asymmetry is β.
    Witness {
        beta: f64,
        #[arg(long, default_value_t = DISK_SIDES)]
        sides: usize,
        /// Write the witness vertices here, in the polygon file format.
        #[arg(long)]
        polygon: Option<PathBuf>,
    },
}

fn parse_grid(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 64 {
        return Err(format!("grid must be at least 64, got {n}"));
    }
    Ok(n)
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(t > 0.0 && t <= 1e-4) {
        return Err(format!("tolerance must lie in (0, 1e-4], got {s}"));
    }
    Ok(t)
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

/// An error together with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::OutOfRange { .. } | Error::OutOfDomain(..) => EXIT_USAGE,
            Error::DegenerateInput(_)
            | Error::DegenerateShape(_)
            | Error::ZeroDirection
            | Error::OriginNotInterior
            | Error::NotATriangleOrParallelogram(_)
            | Error::NotAParallelogram => EXIT_DEGENERATE,
            // A closed downstream pipe (e.g. `| head`) is not a failure.
            Error::Io(io) if io.kind() == io::ErrorKind::BrokenPipe => 0,
            Error::Io(_) => EXIT_IO,
            Error::SolverFailure(_) => EXIT_SOLVER,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn reject_svg(cli: &Cli, command: &str) -> Result<(), Failure> {
    if cli.format == Format::Svg {
        return Err(usage(format!("{command} has no svg output")));
    }
    Ok(())
}

type CmdResult = Result<u8, Failure>;

fn load(path: &Path) -> Result<ConvexPolygon, Failure> {
    let file = File::open(path).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    })?;
    read_polygon(BufReader::new(file)).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn with_output(out: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> Result<(), Failure>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure {
                code: EXIT_IO,
                message: format!("{}: {e}", path.display()),
            })?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_alpha(cli: &Cli, input: &Path, opts: &SweepOptions) -> CmdResult {
    reject_svg(cli, "alpha")?;
    let k = load(input)?;
    let a0 = asymmetry_alpha0(&k)?.value;
    let a1 = alpha1_numeric(&k, opts)?;
    let a2 = alpha2(&k).value;
    let closed = match shape_from_vertices(&k) {
        Ok(Shape::Triangle(t)) => Some(triangle_alpha1(&t).value),
        Ok(Shape::Parallelogram(p)) => Some(parallelogram_alpha1(&p).value),
        Err(_) => None,
    };
    let theta = a1.axis.map(|a| a.theta());
    let theta_str = theta.map(|t| fmt_sig(t, 12)).unwrap_or_default();
    let ties: Vec<&str> = a1.ties.iter().map(|k| k.as_str()).collect();
    with_output(cli.out.as_deref(), |w| {
        match cli.format {
            Format::Text => {
                writeln!(w, "alpha0={a0:.6}")?;
                writeln!(w, "alpha1={:.6}, axis={}", a1.value, a1.classification)?;
                writeln!(w, "alpha2={a2:.6}")?;
                if let Some(t) = theta {
                    writeln!(w, "theta={}", fmt_sig(t, 12))?;
                }
                if ties.len() > 1 {
                    writeln!(w, "ties={}", ties.join(","))?;
                }
                if let Some(c) = closed {
                    writeln!(w, "alpha1_closed_form={c:.6}")?;
                }
            }
            Format::Csv => {
                writeln!(w, "alpha0,alpha1,alpha2,theta,axis,ties,alpha1_closed_form")?;
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    fmt_sig(a0, 12),
                    fmt_sig(a1.value, 12),
                    fmt_sig(a2, 12),
                    theta_str,
                    a1.classification,
                    ties.join(";"),
                    closed.map(|c| fmt_sig(c, 12)).unwrap_or_default()
                )?;
            }
            Format::Svg => unreachable!("rejected before writing"),
        }
        Ok(())
    })?;
    Ok(0)
}

fn cmd_profile(cli: &Cli, input: &Path, opts: &SweepOptions) -> CmdResult {
    reject_svg(cli, "profile")?;
    let k = load(input)?;
    let profile = sample_profile(&k, opts.grid)?;
    with_output(cli.out.as_deref(), |w| {
        match cli.format {
            Format::Csv => write_profile_csv(&profile, &mut *w)?,
            Format::Text => {
                for &(t, r) in &profile {
                    writeln!(w, "{} {}", fmt_sig(t, 12), fmt_sig(r, 12))?;
                }
            }
            Format::Svg => unreachable!("rejected before writing"),
        }
        Ok(())
    })?;
    Ok(0)
}

fn cmd_phase(cli: &Cli, family: Family, resolution: usize, svg: Option<&Path>) -> CmdResult {
    let cells = phase_grid(family, resolution)?;
    with_output(cli.out.as_deref(), |w| {
        match cli.format {
            Format::Csv => write_grid_csv(&cells, &mut *w)?,
            Format::Svg => write_grid_svg(family, &cells, resolution, &mut *w)?,
            Format::Text => {
                writeln!(w, "family={family} resolution={resolution} cells={}", cells.len())?;
                for tag in [RegionTag::B, RegionTag::D, RegionTag::J, RegionTag::L, RegionTag::S, RegionTag::P] {
                    let count = cells.iter().filter(|c| c.region.tag == tag).count();
                    if count > 0 {
                        let edge = cells.iter().filter(|c| c.region.tag == tag && c.region.on_boundary).count();
                        writeln!(w, "{tag}={count} boundary={edge}")?;
                    }
                }
            }
        }
        Ok(())
    })?;
    if let Some(path) = svg {
        with_output(Some(path), |w| Ok(write_grid_svg(family, &cells, resolution, w)?))?;
    }
    Ok(0)
}

/// Main bounds on the witness plus `|α₀ - β| <= 0.01`.
fn witness_report(beta: f64, sides: usize, opts: &SweepOptions) -> Result<BoundReport, Failure> {
    let k = make_asymmetry_witness(beta, sides)?;
    let mut r = check_main_bounds(&k, opts)?;
    r.body_id = "witness".into();
    r.checks.push(BoundCheck::le("|alpha0-beta|<=0.01", (r.alpha0 - beta).abs(), 0.01));
    Ok(r)
}

fn cmd_bounds(cli: &Cli, count: usize, witness: Option<f64>, opts: &SweepOptions) -> CmdResult {
    reject_svg(cli, "bounds")?;
    let mut reports = run_campaign(&CampaignConfig::with_count(count, cli.seed, *opts))?;
    if let Some(beta) = witness {
        reports.push(witness_report(beta, DISK_SIDES, opts)?);
    }
    let failed: Vec<&BoundReport> = reports.iter().filter(|r| !r.passed()).collect();
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let min_margin = reports.iter().map(|r| r.min_margin()).fold(f64::INFINITY, f64::min);
    with_output(cli.out.as_deref(), |w| {
        match cli.format {
            Format::Text => {
                writeln!(w, "bodies={} checks={checks} failed={}", reports.len(), failed.len())?;
                writeln!(w, "min_margin={}", fmt_sig(min_margin, 12))?;
                for r in &failed {
                    for c in r.checks.iter().filter(|c| !c.pass) {
                        writeln!(w, "FAIL {} {} lhs={} rhs={}", r.body_id, c.name, fmt_sig(c.lhs, 12), fmt_sig(c.rhs, 12))?;
                    }
                }
            }
            _ => write_report_csv(&reports, &mut *w)?,
        }
        Ok(())
    })?;
    if failed.is_empty() {
        Ok(0)
    } else {
        eprintln!("{} of {} bodies failed a check", failed.len(), reports.len());
        Ok(EXIT_FAILED_CHECK)
    }
}

fn cmd_witness(cli: &Cli, beta: f64, sides: usize, polygon: Option<&Path>, opts: &SweepOptions) -> CmdResult {
    reject_svg(cli, "witness")?;
    let r = witness_report(beta, sides, opts)?;
    let k = make_asymmetry_witness(beta, sides)?;
    if let Some(path) = polygon {
        with_output(Some(path), |w| Ok(write_polygon(&k, w)?))?;
    }
    with_output(cli.out.as_deref(), |w| {
        match cli.format {
            Format::Text => {
                writeln!(w, "beta={beta:.6}, alpha0={:.6}, alpha1={:.6}", r.alpha0, r.alpha1)?;
            }
            Format::Csv => {
                writeln!(w, "beta,alpha0,alpha1,vertices")?;
                writeln!(w, "{},{},{},{}", fmt_sig(beta, 12), fmt_sig(r.alpha0, 12), fmt_sig(r.alpha1, 12), k.len())?;
            }
            Format::Svg => unreachable!("rejected before writing"),
        }
        Ok(())
    })?;
    Ok(if r.passed() { 0 } else { EXIT_FAILED_CHECK })
}

fn run(cli: &Cli) -> CmdResult {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| usage(format!("thread pool: {e}")))?;
    }
    let opts = SweepOptions { grid: cli.grid, refine_tol: cli.tol, ..SweepOptions::default() };
    match &cli.command {
        Command::Alpha { input } => cmd_alpha(cli, input, &opts),
        Command::Profile { input } => cmd_profile(cli, input, &opts),
        Command::Phase { family, resolution, svg } => cmd_phase(cli, *family, *resolution as usize, svg.as_deref()),
        Command::Bounds { count, witness } => cmd_bounds(cli, *count, *witness, &opts),
        Command::Witness { beta, sides, polygon } => cmd_witness(cli, *beta, *sides, polygon.as_deref(), &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if f.code != 0 {
                eprintln!("chirality: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
