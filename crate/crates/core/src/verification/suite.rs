//! The verification suite behind the `verify` command.

use serde::Serialize;

use super::{
    angular_function, angular_ode_residual_of, classical_limit_report, classical_limit_report_at,
    default_grid, laguerre_adjacent_constant, laguerre_function, laguerre_integral,
    laguerre_ode_residual_of, normalization_of, perturbed, polar_grid, radial_function,
    radial_ode_residual_of, radial_overlap, u_function_analytic, u_ode_residual_of, DerivativeMode,
    PERTURBATION, TEXTBOOK_MAX_N,
};
use crate::calculus::{Alpha, Differentiable};
use crate::error::Result;
use crate::hydrogen::tables::{compare_psi, compare_radial};
use crate::hydrogen::{
    energy_level, probability_density_radial, scaled_problem, ModelParams, QuantumNumbers,
    RYDBERG_EV,
};
use crate::special::{
    conf_laguerre, conf_laguerre_rodrigues_oracle, laguerre_orthogonality_constant, LaguerreParams,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Residual ceiling for the radial, reduced and Laguerre equations.
pub const RADIAL_RESIDUAL_MAX: f64 = 1e-6;
pub const ANGULAR_RESIDUAL_MAX: f64 = 1e-5;
/// Negative controls must exceed the matching ceiling by this factor.
pub const CONTROL_FACTOR: f64 = 100.0;
pub const NORMALIZATION_TOL: f64 = 1e-8;
pub const ORTHOGONALITY_TOL: f64 = 1e-7;
pub const INTEGRAL_IDENTITY_TOL: f64 = 1e-8;
pub const ORACLE_TOL: f64 = 1e-5;
pub const TABLE_TOL: f64 = 1e-12;
pub const CLASSICAL_TOL: f64 = 1e-12;
pub const CLASSICAL_SENSITIVITY_MIN: f64 = 1e-4;
pub const CONSISTENCY_TOL: f64 = 1e-12;

/// States whose density curves are checked for convergence as `α → 1`.
pub const DENSITY_STATES: [(u32, u32); 3] = [(1, 0), (2, 1), (3, 2)];
/// Orders along which the density distance to `α = 1` must shrink.
pub const DENSITY_ALPHAS: [f64; 3] = [0.6, 0.8, 0.9];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// `n ≤ 2`, `α ∈ {0.5, 1}`.
    Quick,
    /// `n ≤ 5`, `α ∈ {0.5, 0.6, 0.7, 0.8, 0.9, 1}`.
    Full,
}

impl Level {
    pub fn n_max(self) -> u32 {
        match self {
            Level::Quick => 2,
            Level::Full => 5,
        }
    }

    pub fn alphas(self) -> &'static [f64] {
        match self {
            Level::Quick => &[0.5, 1.0],
            Level::Full => &[0.5, 0.6, 0.7, 0.8, 0.9, 1.0],
        }
    }
}

/// Deliberate defects used to confirm that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Replaces `R` by `(1 + 0.01 r) R` wherever the suite consumes it.
    PerturbedRadial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// `measured ≤ threshold`.
    AtMost,
    /// `measured ≥ threshold`.
    AtLeast,
    /// `measured < threshold`.
    Below,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    fn new(name: String, measured: Result<f64>, threshold: f64, bound: Bound) -> Self {
        match measured {
            Ok(value) => {
                let passed = match bound {
                    Bound::AtMost => value <= threshold,
                    Bound::AtLeast => value >= threshold,
                    Bound::Below => value < threshold,
                };
                Check {
                    name,
                    measured: value,
                    threshold,
                    bound,
                    passed,
                    error: None,
                }
            }
            Err(e) => Check {
                name,
                measured: f64::NAN,
                threshold,
                bound,
                passed: false,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub level: Level,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
    pub passed: bool,
    pub checks_run: usize,
    pub checks_failed: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs every check of `level`, in a fixed order.
pub fn run(level: Level, fault: Option<Fault>) -> SuiteReport {
    let mut checks = Vec::new();
    energy_checks(level, &mut checks);
    for &a in level.alphas() {
        let alpha = Alpha::new(a).expect("suite orders are valid");
        radial_checks(level, alpha, fault, &mut checks);
        angular_checks(level, alpha, &mut checks);
        special_function_checks(alpha, &mut checks);
        table_checks(alpha, &mut checks);
    }
    classical_checks(level, &mut checks);
    density_checks(level, &mut checks);

    let checks_failed = checks.iter().filter(|c| !c.passed).count();
    SuiteReport {
        schema_version: SCHEMA_VERSION,
        level,
        fault,
        passed: checks_failed == 0,
        checks_run: checks.len(),
        checks_failed,
        checks,
    }
}

fn energy_checks(level: Level, checks: &mut Vec<Check>) {
    let classical = (1..=10u32)
        .map(|n| Ok((energy_level(n, Alpha::ONE)? + RYDBERG_EV / (n * n) as f64).abs()))
        .try_fold(0.0f64, |acc, d: Result<f64>| Ok(acc.max(d?)));
    checks.push(Check::new(
        "energy classical n<=10".into(),
        classical,
        1e-12,
        Bound::AtMost,
    ));
    for &a in level.alphas() {
        let alpha = Alpha::new(a).expect("suite orders are valid");
        // largest E(n) - E(n+1); negative when the levels increase with n
        let step = (1..=10u32).try_fold(f64::NEG_INFINITY, |acc, n| {
            Ok::<_, crate::error::Error>(
                acc.max(energy_level(n, alpha)? - energy_level(n + 1, alpha)?),
            )
        });
        checks.push(Check::new(
            format!("energy increasing alpha={a}"),
            step,
            0.0,
            Bound::Below,
        ));
    }
}

fn radial_checks(level: Level, alpha: Alpha, fault: Option<Fault>, checks: &mut Vec<Check>) {
    let a = alpha.value();
    let params = ModelParams::natural(alpha);
    let grid = default_grid();
    let ceiling = RADIAL_RESIDUAL_MAX;
    let floor = CONTROL_FACTOR * ceiling;
    let analytic = DerivativeMode::Analytic;
    for n in 1..=level.n_max() {
        for l in 0..n {
            let qn = QuantumNumbers::radial(n, l).expect("valid state");
            let tag = format!("n={n} l={l} alpha={a}");
            let exact = radial_function(qn, &params);
            let faulty = perturbed(&exact, PERTURBATION);
            let radial: &(dyn Differentiable + Sync) = match fault {
                Some(Fault::PerturbedRadial) => &faulty,
                None => &exact,
            };

            let residual = radial_ode_residual_of(radial, qn, &params, &grid, analytic);
            checks.push(Check::new(
                format!("radial_ode {tag}"),
                residual.map(|r| r.max_rel_residual),
                ceiling,
                Bound::AtMost,
            ));
            let control = radial_ode_residual_of(&faulty, qn, &params, &grid, analytic);
            checks.push(Check::new(
                format!("radial_ode control {tag}"),
                control.map(|r| r.max_rel_residual),
                floor,
                Bound::AtLeast,
            ));

            let u = u_function_analytic(qn, &params);
            let residual = u_ode_residual_of(&u, qn, &params, &grid, analytic);
            checks.push(Check::new(
                format!("u_ode {tag}"),
                residual.map(|r| r.max_rel_residual),
                ceiling,
                Bound::AtMost,
            ));
            let control =
                u_ode_residual_of(&perturbed(&u, PERTURBATION), qn, &params, &grid, analytic);
            checks.push(Check::new(
                format!("u_ode control {tag}"),
                control.map(|r| r.max_rel_residual),
                floor,
                Bound::AtLeast,
            ));

            let v = laguerre_function(qn, alpha);
            let residual = laguerre_ode_residual_of(&v, qn, &params, &grid, analytic);
            checks.push(Check::new(
                format!("laguerre_ode {tag}"),
                residual.map(|r| r.max_rel_residual),
                ceiling,
                Bound::AtMost,
            ));
            let control = laguerre_ode_residual_of(
                &perturbed(&v, PERTURBATION),
                qn,
                &params,
                &grid,
                analytic,
            );
            checks.push(Check::new(
                format!("laguerre_ode control {tag}"),
                control.map(|r| r.max_rel_residual),
                floor,
                Bound::AtLeast,
            ));

            let norm = normalization_of(radial, qn, &params).map(|v| (v - 1.0).abs());
            checks.push(Check::new(
                format!("normalization {tag}"),
                norm,
                NORMALIZATION_TOL,
                Bound::AtMost,
            ));

            checks.push(Check::new(
                format!("r_u_consistency {tag}"),
                consistency(qn, &params, radial, &grid),
                CONSISTENCY_TOL,
                Bound::AtMost,
            ));

            for other in n + 1..=level.n_max() {
                let second = QuantumNumbers::radial(other, l).expect("valid state");
                checks.push(Check::new(
                    format!("orthogonality n={n} n2={other} l={l} alpha={a}"),
                    radial_overlap(qn, second, &params).map(f64::abs),
                    ORTHOGONALITY_TOL,
                    Bound::AtMost,
                ));
            }
        }
    }
}

/// Largest `|R - 2k u/ρ^α|` relative to the largest `|R|` on the grid.
fn consistency(
    qn: QuantumNumbers,
    params: &ModelParams,
    radial: &(dyn Differentiable + Sync),
    grid: &[f64],
) -> Result<f64> {
    let sp = scaled_problem(qn, params);
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for &r in grid {
        let rho = sp.rho_from_r(r);
        let u = crate::hydrogen::u_function(qn, params, rho)?;
        let from_u = 2.0 * sp.k * u / params.alpha.pow(rho);
        let value = radial.eval(r);
        worst = worst.max((value - from_u).abs());
        scale = scale.max(value.abs());
    }
    Ok(worst / scale)
}

fn angular_checks(level: Level, alpha: Alpha, checks: &mut Vec<Check>) {
    let a = alpha.value();
    let grid = polar_grid(alpha, 60).expect("valid polar grid");
    let analytic = DerivativeMode::Analytic;
    for l in 0..level.n_max() {
        for m in -(l as i32)..=l as i32 {
            let tag = format!("l={l} m={m} alpha={a}");
            let f = angular_function(l, m, alpha);
            let residual = angular_ode_residual_of(&f, l, m, alpha, &grid, analytic);
            checks.push(Check::new(
                format!("angular_ode {tag}"),
                residual.map(|r| r.max_rel_residual),
                ANGULAR_RESIDUAL_MAX,
                Bound::AtMost,
            ));
            let control =
                angular_ode_residual_of(&perturbed(&f, PERTURBATION), l, m, alpha, &grid, analytic);
            checks.push(Check::new(
                format!("angular_ode control {tag}"),
                control.map(|r| r.max_rel_residual),
                CONTROL_FACTOR * ANGULAR_RESIDUAL_MAX,
                Bound::AtLeast,
            ));
        }
    }
}

fn relative_error(got: f64, expected: f64) -> f64 {
    (got - expected).abs() / expected.abs()
}

fn special_function_checks(alpha: Alpha, checks: &mut Vec<Check>) {
    let a = alpha.value();
    let mut diagonal: Result<f64> = Ok(0.0);
    let mut adjacent: Result<f64> = Ok(0.0);
    let mut distant: Result<f64> = Ok(0.0);
    let mut oracle: Result<f64> = Ok(0.0);
    for s in 0..=3u32 {
        for m in 0..=5u32 {
            let lp = LaguerreParams::new(s, m);
            diagonal = diagonal.and_then(|w| {
                let v = laguerre_integral(lp, s, alpha)?;
                Ok(w.max(relative_error(
                    v,
                    laguerre_orthogonality_constant(lp, alpha),
                )))
            });
            adjacent = adjacent.and_then(|w| {
                let v = laguerre_integral(lp, s + 1, alpha)?;
                Ok(w.max(relative_error(v, laguerre_adjacent_constant(lp, alpha))))
            });
            distant = distant.and_then(|w| Ok(w.max(laguerre_integral(lp, s + 2, alpha)?.abs())));
            oracle = oracle.and_then(|w| {
                [0.5, 1.0, 2.0, 5.0].iter().try_fold(w, |w, &x| {
                    let direct = conf_laguerre(lp, alpha, x)?;
                    let rodrigues = conf_laguerre_rodrigues_oracle(lp, alpha, x)?;
                    Ok(w.max((direct - rodrigues).abs()))
                })
            });
        }
    }
    let tol = INTEGRAL_IDENTITY_TOL;
    checks.push(Check::new(
        format!("laguerre_integral diagonal alpha={a}"),
        diagonal,
        tol,
        Bound::AtMost,
    ));
    checks.push(Check::new(
        format!("laguerre_integral adjacent alpha={a}"),
        adjacent,
        tol,
        Bound::AtMost,
    ));
    checks.push(Check::new(
        format!("laguerre_integral distant alpha={a}"),
        distant,
        tol,
        Bound::AtMost,
    ));
    checks.push(Check::new(
        format!("rodrigues_oracle alpha={a}"),
        oracle,
        ORACLE_TOL,
        Bound::AtMost,
    ));
}

fn table_checks(alpha: Alpha, checks: &mut Vec<Check>) {
    let a = alpha.value();
    let params = ModelParams::natural(alpha);
    let grid = super::geometric_grid(1e-2, 20.0, 50).expect("valid grid");
    let worst = |rows: Result<Vec<crate::hydrogen::tables::TableComparison>>| {
        rows.map(|rows| rows.iter().fold(0.0f64, |w, c| w.max(c.max_deviation)))
    };
    checks.push(Check::new(
        format!("table radial alpha={a}"),
        worst(compare_radial(&params, &grid)),
        TABLE_TOL,
        Bound::AtMost,
    ));
    checks.push(Check::new(
        format!("table psi alpha={a}"),
        worst(compare_psi(&params, &grid)),
        TABLE_TOL,
        Bound::AtMost,
    ));
}

fn classical_checks(level: Level, checks: &mut Vec<Check>) {
    let n_max = level.n_max().min(TEXTBOOK_MAX_N);
    checks.push(Check::new(
        format!("classical_limit n<={n_max}"),
        classical_limit_report(n_max),
        CLASSICAL_TOL,
        Bound::AtMost,
    ));
    let shifted = Alpha::new(0.999).expect("valid order");
    checks.push(Check::new(
        format!("classical_limit control alpha=0.999 n<={n_max}"),
        classical_limit_report_at(n_max, shifted),
        CLASSICAL_SENSITIVITY_MIN,
        Bound::AtLeast,
    ));
}

/// Grid on which density curves are compared: 400 evenly spaced radii on
/// `(0, 40]`.
pub fn density_grid() -> Vec<f64> {
    (1..=400).map(|i| i as f64 * 0.1).collect()
}

/// Max-norm distance between the density curves at `alpha` and at `α = 1`.
pub fn density_distance(qn: QuantumNumbers, alpha: Alpha, grid: &[f64]) -> Result<f64> {
    let curve = probability_density_radial(qn, &ModelParams::natural(alpha), grid)?;
    let reference = probability_density_radial(qn, &ModelParams::natural(Alpha::ONE), grid)?;
    Ok(curve
        .values
        .iter()
        .zip(&reference.values)
        .fold(0.0f64, |w, (x, y)| w.max((x - y).abs())))
}

fn density_checks(level: Level, checks: &mut Vec<Check>) {
    let grid = density_grid();
    for (n, l) in DENSITY_STATES {
        if n > level.n_max() {
            continue;
        }
        let qn = QuantumNumbers::radial(n, l).expect("valid state");
        // largest ratio of consecutive distances; below one when they shrink
        let ratio = DENSITY_ALPHAS
            .iter()
            .map(|&a| density_distance(qn, Alpha::new(a).expect("valid order"), &grid))
            .collect::<Result<Vec<f64>>>()
            .map(|d| d.windows(2).fold(0.0f64, |w, p| w.max(p[1] / p[0])));
        checks.push(Check::new(
            format!("density_convergence n={n} l={l}"),
            ratio,
            1.0,
            Bound::Below,
        ));
    }
}
