//! Command-line front end.
//!
//! Every command writes one table (CSV with a single header row, or a JSON
//! object carrying `schema_version`) to standard output or `--output`.
//! Exit codes: 0 on success, 1 for invalid arguments or inputs, 2 when a
//! verification or table comparison fails.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::calculus::Alpha;
use crate::error::{Error, Result};
use crate::hydrogen::tables::{compare_psi, compare_radial, TableComparison};
use crate::hydrogen::{
    full_wavefunction, probability_density_radial, scaled_problem, ModelParams, QuantumNumbers,
};
use crate::verification::{self, geometric_grid, Fault, Level};

pub use output::{format_float, round_float, Cell, Table};

pub const SCHEMA_VERSION: u32 = 1;
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

/// Orders used when `--alpha-list` is omitted.
pub const DEFAULT_ALPHAS: &str = "0.5,0.6,0.7,0.8,0.9,1.0";
/// Table comparisons must agree to this maximum deviation.
pub const TABLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "conformable-hydrogen",
    version,
    about = "Conformable fractional hydrogen atom: energies, densities, tables and self-verification"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// α-energy levels in eV.
    Energy(EnergyArgs),
    /// α-probability density curves r^{2α}|R|².
    Density(DensityArgs),
    /// General formulas against the tabulated closed forms.
    Table(TableArgs),
    /// Run the verification suite; exit 2 on any failed check.
    Verify(VerifyArgs),
    /// |ψ|² on a planar slice through the nucleus.
    Slice(SliceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format (default: csv, or json for verify).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EnergyArgs {
    /// Highest principal quantum number.
    #[arg(long, default_value_t = 5)]
    n_max: u32,
    /// Comma-separated conformable orders.
    #[arg(long, value_delimiter = ',', default_value = DEFAULT_ALPHAS)]
    alpha_list: Vec<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct DensityArgs {
    /// Principal quantum number.
    #[arg(long)]
    n: u32,
    /// Orbital quantum number.
    #[arg(long)]
    l: u32,
    /// Comma-separated conformable orders.
    #[arg(long, value_delimiter = ',', default_value = DEFAULT_ALPHAS)]
    alpha_list: Vec<f64>,
    /// Largest radius; by default far enough out for every listed order.
    #[arg(long)]
    r_max: Option<f64>,
    /// Number of evenly spaced radii.
    #[arg(long, default_value_t = 2000)]
    points: usize,
    /// α-Bohr radius r_b^α (physical mode); natural units when omitted.
    #[arg(long)]
    r_b: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    /// Radial functions R for n ≤ 3.
    Radial,
    /// Full wavefunctions ψ for n ≤ 2.
    Psi,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Which table to reproduce.
    #[arg(long, value_enum)]
    which: Which,
    /// Comma-separated conformable orders.
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.75,1.0")]
    alpha_list: Vec<f64>,
    /// Size of the radial comparison grid.
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// α-Bohr radius r_b^α (physical mode); natural units when omitted.
    #[arg(long)]
    r_b: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    PerturbedRadial,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Quick: n ≤ 2 at α ∈ {0.5, 1}. Full: n ≤ 5 at six orders.
    #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
    level: LevelArg,
    /// Shorthand for `--level full`.
    #[arg(long, conflicts_with = "level")]
    full: bool,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Plane {
    /// The meridian plane φ^α ∈ {0, π}; `y` runs along the polar axis.
    Xz,
    /// The equatorial plane θ^α = π/2.
    Xy,
}

#[derive(Debug, Args)]
struct SliceArgs {
    /// Principal quantum number.
    #[arg(long)]
    n: u32,
    /// Orbital quantum number.
    #[arg(long)]
    l: u32,
    /// Magnetic quantum number.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    m: i32,
    /// Conformable order.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = Plane::Xz)]
    plane: Plane,
    /// Half-width of the square slice.
    #[arg(long, default_value_t = 20.0)]
    extent: f64,
    /// Samples per side.
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// α-Bohr radius r_b^α (physical mode); natural units when omitted.
    #[arg(long)]
    r_b: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(Outcome { text, path, code }) => {
            let written = match path {
                Some(p) => std::fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write output: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

struct Outcome {
    text: String,
    path: Option<PathBuf>,
    code: i32,
}

fn render(table: &Table, out: OutputArgs, code: i32) -> Outcome {
    let text = match out.format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    Outcome {
        text,
        path: out.output,
        code,
    }
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Energy(args) => {
            let table = energy_table(args.n_max, &args.alpha_list)?;
            Ok(render(&table, args.out, EXIT_OK))
        }
        Command::Density(args) => {
            let qn = QuantumNumbers::radial(args.n, args.l)?;
            let table = density_table(qn, &args.alpha_list, args.r_max, args.points, args.r_b)?;
            Ok(render(&table, args.out, EXIT_OK))
        }
        Command::Table(args) => {
            let (table, worst) =
                comparison_table(args.which, &args.alpha_list, args.points, args.r_b)?;
            let code = if worst <= TABLE_TOLERANCE {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            };
            Ok(render(&table, args.out, code))
        }
        Command::Verify(args) => {
            let level = match (args.full, args.level) {
                (true, _) | (false, LevelArg::Full) => Level::Full,
                (false, LevelArg::Quick) => Level::Quick,
            };
            let fault = args.inject_fault.map(|f| match f {
                FaultArg::PerturbedRadial => Fault::PerturbedRadial,
            });
            let report = verification::run(level, fault);
            let code = if report.passed {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            };
            let text = match args.out.format.unwrap_or(Format::Json) {
                Format::Json => output::to_json_text(&report),
                Format::Csv => {
                    let mut t = Table::new(
                        "verify",
                        &["name", "measured", "threshold", "bound", "passed"],
                    );
                    for c in &report.checks {
                        let bound = serde_json::to_value(c.bound).expect("bound serializes");
                        t.push(vec![
                            c.name.as_str().into(),
                            c.measured.into(),
                            c.threshold.into(),
                            bound.as_str().unwrap_or_default().into(),
                            c.passed.into(),
                        ]);
                    }
                    t.to_csv()
                }
            };
            Ok(Outcome {
                text,
                path: args.out.output,
                code,
            })
        }
        Command::Slice(args) => {
            let qn = QuantumNumbers::new(args.n, args.l, args.m)?;
            let alpha = Alpha::new(args.alpha)?;
            let table = slice_table(qn, alpha, args.plane, args.extent, args.points, args.r_b)?;
            Ok(render(&table, args.out, EXIT_OK))
        }
    }
}

fn alphas(list: &[f64]) -> Result<Vec<Alpha>> {
    if list.is_empty() {
        return Err(Error::InvalidInput("alpha list is empty".into()));
    }
    list.iter().map(|&a| Alpha::new(a)).collect()
}

fn params(alpha: Alpha, r_b: Option<f64>) -> Result<ModelParams> {
    match r_b {
        Some(r_b) => ModelParams::physical(alpha, r_b),
        None => Ok(ModelParams::natural(alpha)),
    }
}

fn energy_table(n_max: u32, list: &[f64]) -> Result<Table> {
    if n_max == 0 {
        return Err(Error::InvalidInput("--n-max must be at least 1".into()));
    }
    let mut table = Table::new("energy", &["alpha", "n", "energy_eV"]);
    for alpha in alphas(list)? {
        for n in 1..=n_max {
            let e = crate::hydrogen::energy_level(n, alpha)?;
            table.push(vec![alpha.value().into(), n.into(), e.into()]);
        }
    }
    Ok(table)
}

/// Radius beyond which `r^{2α}|R|²` has decayed by about `e^{-40}`:
/// `2k u = 40` on the substituted axis.
fn density_extent(qn: QuantumNumbers, p: &ModelParams) -> f64 {
    let k = scaled_problem(qn, p).k;
    p.alpha.root(p.alpha.value() * 20.0 / k)
}

fn density_table(
    qn: QuantumNumbers,
    list: &[f64],
    r_max: Option<f64>,
    points: usize,
    r_b: Option<f64>,
) -> Result<Table> {
    let orders = alphas(list)?;
    if points < 2 {
        return Err(Error::InvalidInput("--points must be at least 2".into()));
    }
    let all: Vec<ModelParams> = orders
        .iter()
        .map(|&a| params(a, r_b))
        .collect::<Result<_>>()?;
    let r_max = match r_max {
        Some(r) if r.is_finite() && r > 0.0 => r,
        Some(r) => return Err(Error::domain("r_max", r, "r_max > 0")),
        None => all
            .iter()
            .map(|p| density_extent(qn, p))
            .fold(0.0, f64::max),
    };
    let grid: Vec<f64> = (1..=points)
        .map(|i| r_max * i as f64 / points as f64)
        .collect();
    let mut table = Table::new("density", &["alpha", "n", "l", "r", "density"]);
    for p in &all {
        let curve = probability_density_radial(qn, p, &grid)?;
        for (r, v) in curve.r.iter().zip(&curve.values) {
            table.push(vec![
                curve.alpha.into(),
                qn.n().into(),
                qn.l().into(),
                (*r).into(),
                (*v).into(),
            ]);
        }
    }
    Ok(table)
}

fn comparison_table(
    which: Which,
    list: &[f64],
    points: usize,
    r_b: Option<f64>,
) -> Result<(Table, f64)> {
    let grid = geometric_grid(1e-2, 20.0, points)?;
    let mut table = match which {
        Which::Radial => Table::new(
            "table",
            &[
                "alpha",
                "n",
                "l",
                "r",
                "general",
                "closed_form",
                "max_deviation",
            ],
        ),
        Which::Psi => Table::new(
            "table",
            &[
                "alpha",
                "n",
                "l",
                "m",
                "r",
                "theta",
                "phi",
                "general_re",
                "general_im",
                "closed_re",
                "closed_im",
                "max_deviation",
            ],
        ),
    };
    let mut worst = 0.0f64;
    for alpha in alphas(list)? {
        let p = params(alpha, r_b)?;
        let rows: Vec<TableComparison> = match which {
            Which::Radial => compare_radial(&p, &grid)?,
            Which::Psi => compare_psi(&p, &grid)?,
        };
        for c in rows {
            worst = worst.max(c.max_deviation);
            let a = alpha.value().into();
            let (n, l) = (c.qn.n().into(), c.qn.l().into());
            table.push(match which {
                Which::Radial => vec![
                    a,
                    n,
                    l,
                    c.r.into(),
                    c.general.re.into(),
                    c.closed_form.re.into(),
                    c.max_deviation.into(),
                ],
                Which::Psi => vec![
                    a,
                    n,
                    l,
                    c.qn.m().into(),
                    c.r.into(),
                    c.theta.into(),
                    c.phi.into(),
                    c.general.re.into(),
                    c.general.im.into(),
                    c.closed_form.re.into(),
                    c.closed_form.im.into(),
                    c.max_deviation.into(),
                ],
            });
        }
    }
    Ok((table, worst))
}

/// `|ψ|²` at cell centres of a `points × points` grid on `[-extent, extent]²`.
///
/// In the meridian plane the half `x ≥ 0` lies at `φ^α = 0` and the half
/// `x < 0` at `φ^α = π`; the polar angle is measured from the `y` axis. A
/// sample exactly at the nucleus is evaluated as the limit `r → 0⁺`.
fn slice_table(
    qn: QuantumNumbers,
    alpha: Alpha,
    plane: Plane,
    extent: f64,
    points: usize,
    r_b: Option<f64>,
) -> Result<Table> {
    if !(extent.is_finite() && extent > 0.0) {
        return Err(Error::domain("extent", extent, "extent > 0"));
    }
    if points == 0 {
        return Err(Error::InvalidInput("--points must be at least 1".into()));
    }
    let p = params(alpha, r_b)?;
    let step = 2.0 * extent / points as f64;
    let half = points as f64 / 2.0;
    let coords: Vec<f64> = (0..points)
        .map(|i| (i as f64 + 0.5 - half) * step)
        .collect();
    let mut table = Table::new("slice", &["x", "y", "psi_sq"]);
    for &y in &coords {
        for &x in &coords {
            let r = x.hypot(y).max(f64::MIN_POSITIVE);
            let (polar, azimuth) = match plane {
                Plane::Xz => (
                    x.abs().atan2(y),
                    if x < 0.0 { std::f64::consts::PI } else { 0.0 },
                ),
                Plane::Xy => (
                    std::f64::consts::FRAC_PI_2,
                    y.atan2(x).rem_euclid(std::f64::consts::TAU),
                ),
            };
            let psi = full_wavefunction(qn, &p, r, alpha.root(polar), alpha.root(azimuth))?;
            table.push(vec![x.into(), y.into(), psi.norm_sqr().into()]);
        }
    }
    Ok(table)
}
