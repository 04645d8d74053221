//! Command-line front end. `run` returns the process exit code:
//! 0 on success, 1 when verification fails, 2 on usage or domain errors.

mod mesh;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub use mesh::MeshExport;

use crate::calculus::{curvatures, forms, Interval, SurfaceChart};
use crate::curves::{sample_curve, CLASSIFY_TOL};
use crate::error::{GeometryError, Result};
use crate::families::{
    constant_h_profile, constant_k_profile, flat_helicoidal_profile, helicoidal_chart, minimal_profile,
    parabolic_i_sphere, HelicoidalParams, HelicoidalType, ScalarFn,
};
use crate::verify::{run_theorem_suite, sampling_range, GridSpec, Selection, Status, SuiteConfig, DEFAULT_DRAWS, SEED_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "isokit", version, about = "Surfaces and curves in isotropic 3-space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a surface family on a grid; writes <out>.obj and <out>.csv.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Output prefix.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run the theorem suite and write a JSON report.
    Verify(VerifyArgs),
    /// Curvatures along a curve on a helicoidal surface, as CSV.
    Curve {
        #[command(flatten)]
        family: FamilyArgs,
        /// `u-const:U0`, `v-const:V0`, or `linear:U0,DU,V0,DV` (u = U0 + DU t, v = V0 + DV t).
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        /// Parameter range `lo:hi`.
        #[arg(long, allow_hyphen_values = true, default_value = "0:1")]
        t: String,
        #[arg(long, default_value_t = 21)]
        samples: usize,
        /// Output file (stdout if absent).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Both fundamental forms and the curvatures at one point, as JSON.
    Forms {
        #[command(flatten)]
        family: FamilyArgs,
        /// `U,V`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    FlatHelicoidal,
    #[value(name = "constant-k", alias = "constantK")]
    ConstantK,
    #[value(name = "constant-h", alias = "constantH")]
    ConstantH,
    Minimal,
    ParabolicSphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TypeArg {
    First,
    Second,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(value_enum)]
    pub kind: FamilyKind,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Pitch.
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<f64>,
    #[arg(long = "K0", allow_hyphen_values = true)]
    pub k0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long = "H0", allow_hyphen_values = true)]
    pub h0: Option<f64>,
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long = "C", allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long = "D", allow_hyphen_values = true)]
    pub d: Option<f64>,
    #[arg(long = "type", value_enum, default_value = "first")]
    pub kind_of_helicoid: TypeArg,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// `lo:hi`; defaults to a compact part of the family's range.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// `NxM` nodes.
    #[arg(long, default_value = "51x51")]
    pub n: String,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Run every claim (the default when `--only` is absent).
    #[arg(long, conflicts_with = "only")]
    pub all: bool,
    /// Claim ids, repeatable or comma separated.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_DRAWS)]
    pub draws: usize,
    #[arg(long = "K0", allow_hyphen_values = true)]
    pub k0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<f64>,
    /// Report path (stdout if absent).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Family { family, grid, out } => cmd_family(&family, &grid, out),
        Command::Verify(args) => cmd_verify(&args),
        Command::Curve { family, curve, t, samples, out } => cmd_curve(&family, &curve, &t, samples, out),
        Command::Forms { family, at } => cmd_forms(&family, &at),
    }
}

pub fn parse_range(s: &str) -> Result<(f64, f64)> {
    let bad = || GeometryError::InvalidGrid(format!("expected lo:hi, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok((lo, hi))
    } else {
        Err(bad())
    }
}

pub fn parse_counts(s: &str) -> Result<(usize, usize)> {
    let bad = || GeometryError::InvalidGrid(format!("expected NxM, got {s:?}"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let bad = || GeometryError::InvalidConstant(format!("expected U,V, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// The chart together with default sampling ranges.
pub struct BuiltFamily {
    pub chart: SurfaceChart,
    pub u_default: (f64, f64),
    pub v_default: (f64, f64),
}

pub fn build_family(f: &FamilyArgs) -> Result<BuiltFamily> {
    let tau = 2.0 * std::f64::consts::PI;
    let profile = match f.kind {
        FamilyKind::FlatHelicoidal => flat_helicoidal_profile(f.alpha.unwrap_or(1.0), f.h.unwrap_or(1.0))?,
        FamilyKind::ConstantK => constant_k_profile(f.k0.unwrap_or(0.5), f.gamma.unwrap_or(1.0), f.h.unwrap_or(1.0))?,
        FamilyKind::ConstantH => {
            constant_h_profile(f.h0.unwrap_or(-1.0), f.alpha.unwrap_or(1.0), f.beta.unwrap_or(0.0))?
        }
        FamilyKind::Minimal => minimal_profile(f.alpha.unwrap_or(1.0), f.beta.unwrap_or(0.0))?,
        FamilyKind::ParabolicSphere => {
            let chart = parabolic_i_sphere(
                f.a.unwrap_or(1.0),
                f.b.unwrap_or(0.0),
                f.c.unwrap_or(0.0),
                f.d.unwrap_or(0.0),
            )?;
            return Ok(BuiltFamily { chart, u_default: (-2.0, 2.0), v_default: (-2.0, 2.0) });
        }
    };
    let pitch = match f.kind {
        FamilyKind::ConstantH => f.h.unwrap_or(1.5),
        FamilyKind::Minimal => f.h.unwrap_or(0.0),
        _ => f.h.unwrap_or(1.0),
    };
    let kind = match f.kind_of_helicoid {
        TypeArg::First => HelicoidalType::First,
        TypeArg::Second => HelicoidalType::Second,
    };
    let range = profile.valid_range().intersect(&Interval::open(0.0, f64::INFINITY));
    let u_default = sampling_range(&range, 4.0);
    let chart = helicoidal_chart(&HelicoidalParams::new(profile, pitch).with_kind(kind))?;
    Ok(BuiltFamily { chart, u_default, v_default: (0.0, tau) })
}

fn create(path: &PathBuf) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))
}

fn cmd_family(f: &FamilyArgs, g: &GridArgs, out: Option<PathBuf>) -> CliResult<i32> {
    let built = build_family(f)?;
    let u = g.u.as_deref().map(parse_range).transpose()?.unwrap_or(built.u_default);
    let v = g.v.as_deref().map(parse_range).transpose()?.unwrap_or(built.v_default);
    let (nu, nv) = parse_counts(&g.n)?;
    let grid = GridSpec::new(u, v, nu, nv)?;
    let mesh = MeshExport::from_grid(&built.chart, &grid)?;
    let prefix = out.unwrap_or_else(|| PathBuf::from(format!("isokit_{}", kind_name(f.kind))));
    let obj_path = prefix.with_extension("obj");
    let csv_path = prefix.with_extension("csv");
    let mut obj = create(&obj_path)?;
    mesh.write_obj(&mut obj, built.chart.label())?;
    obj.flush()?;
    let mut csv = create(&csv_path)?;
    mesh.write_csv(&mut csv)?;
    csv.flush()?;
    println!("{}", obj_path.display());
    println!("{}", csv_path.display());
    Ok(EXIT_OK)
}

fn kind_name(k: FamilyKind) -> String {
    k.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<i32> {
    let selection = if a.only.is_empty() { Selection::All } else { Selection::Only(a.only.clone()) };
    let config = SuiteConfig { seed: a.seed, draws: a.draws, k0: a.k0, gamma: a.gamma, h: a.h, ..SuiteConfig::default() };
    let report = run_theorem_suite(&selection, &config)?;
    let json = report.to_json();
    match &a.out {
        Some(path) => {
            let mut w = create(path)?;
            writeln!(w, "{json}")?;
            w.flush()?;
        }
        None => println!("{json}"),
    }
    for c in &report.claims {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::DiscrepancyDocumented => "discrepancy-documented",
        };
        eprintln!("{:<12} {:<24} max_abs_error={:.3e}", c.id, status, c.max_abs_error);
    }
    Ok(if report.has_failures() { EXIT_VERIFY_FAILED } else { EXIT_OK })
}

fn parse_curve(spec: &str) -> Result<(ScalarFn, ScalarFn)> {
    let bad = || GeometryError::InvalidConstant(format!("unknown curve {spec:?}"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    let nums: Vec<f64> = rest
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    match (kind, nums.as_slice()) {
        ("u-const", [u0]) => Ok((ScalarFn::constant(*u0), ScalarFn::identity())),
        ("v-const", [v0]) => Ok((ScalarFn::identity(), ScalarFn::constant(*v0))),
        ("linear", [u0, du, v0, dv]) => Ok((ScalarFn::linear(*du, *u0), ScalarFn::linear(*dv, *v0))),
        _ => Err(bad()),
    }
}

fn cmd_curve(f: &FamilyArgs, curve: &str, t: &str, samples: usize, out: Option<PathBuf>) -> CliResult<i32> {
    if samples < 2 {
        return Err(CliError::Usage(format!("need at least 2 samples, got {samples}")));
    }
    let built = build_family(f)?;
    let (u_of, v_of) = parse_curve(curve)?;
    let (lo, hi) = parse_range(t)?;
    let grid: Vec<f64> = (0..samples)
        .map(|k| if k + 1 == samples { hi } else { lo + (hi - lo) * k as f64 / (samples - 1) as f64 })
        .collect();
    let rows = sample_curve(&built.chart, &u_of, &v_of, &grid, CLASSIFY_TOL)?;
    let mut buf = Vec::new();
    writeln!(buf, "t,s,u,v,kappa_g,kappa_n,tau_g_numerator,is_geodesic,is_asymptotic,is_line_of_curvature")?;
    for r in &rows {
        let c = &r.classification;
        writeln!(
            buf,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{},{}",
            r.t, r.s, r.u, r.v, c.kappa_g, c.kappa_n, c.tau_g_numerator, c.is_geodesic, c.is_asymptotic, c.is_line_of_curvature
        )?;
    }
    match out {
        Some(path) => {
            let mut w = create(&path)?;
            w.write_all(&buf)?;
            w.flush()?;
        }
        None => io::stdout().write_all(&buf)?,
    }
    Ok(EXIT_OK)
}

fn cmd_forms(f: &FamilyArgs, at: &str) -> CliResult<i32> {
    let built = build_family(f)?;
    let (u, v) = parse_pair(at)?;
    let (g, h) = forms(&built.chart, u, v)?;
    let c = curvatures(&g, &h)?;
    let out = json!({
        "chart": built.chart.label(),
        "u": u,
        "v": v,
        "g": g,
        "h": h,
        "det_g": c.det_g,
        "K": c.k,
        "H_def": c.h,
        "H_s3": 2.0 * c.h,
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("plain data"));
    Ok(EXIT_OK)
}
