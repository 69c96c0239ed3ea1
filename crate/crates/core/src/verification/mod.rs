//! Numerical certification of the hydrogen solution.
//!
//! Every residual is evaluated with the conformable operators of
//! [`crate::calculus`]. In [`DerivativeMode::Analytic`] the functions carry
//! their closed-form classical derivatives; in
//! [`DerivativeMode::FiniteDifference`] those are hidden and the operators
//! difference the values.
//!
//! The relative residual at a point is the absolute residual divided by the
//! largest magnitude among the individual terms of the equation there, since
//! the terms cancel to near zero and the absolute residual alone says little
//! in the exponential tail.

mod suite;
mod textbook;

use serde::Serialize;

use crate::calculus::{
    conf_derivative, conf_integral, conf_second_derivative, Alpha, Differentiable, Function,
    QuadratureSpec, ValueOnly,
};
use crate::error::{Error, Result};
use crate::hydrogen::{
    radial_normalization, scaled_problem, u_normalization, validate_grid, ModelParams,
    QuantumNumbers,
};
use crate::special::{
    conf_laguerre, laguerre_derivatives, legendre_polar_derivative,
    legendre_polar_second_derivative, legendre_value, LaguerreParams,
};

pub use suite::{
    density_distance, density_grid, run, Bound, Check, Fault, Level, SuiteReport, DENSITY_ALPHAS,
    DENSITY_STATES, SCHEMA_VERSION,
};
pub use textbook::{
    classical_limit_report, classical_limit_report_at, textbook_angular, textbook_radial,
    TEXTBOOK_MAX_N,
};

/// Lower end of the default radial grid.
pub const GRID_MIN: f64 = 1e-3;
/// Upper end of the default radial grid.
pub const GRID_MAX: f64 = 30.0;
pub const DEFAULT_GRID_POINTS: usize = 200;
/// Minimum `sin θ^α` accepted by [`angular_ode_residual`].
pub const POLE_MARGIN: f64 = 1e-3;
/// Relative size of the multiplicative perturbation used by negative controls.
pub const PERTURBATION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference,
}

/// Worst-case residual of an equation over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    /// Grid point with the largest relative residual.
    pub worst_point: f64,
    pub grid_size: usize,
    pub derivative_mode: DerivativeMode,
}

struct Accumulator {
    report: ResidualReport,
}

impl Accumulator {
    fn new(grid: &[f64], mode: DerivativeMode) -> Self {
        Accumulator {
            report: ResidualReport {
                max_abs_residual: 0.0,
                max_rel_residual: 0.0,
                worst_point: grid[0],
                grid_size: grid.len(),
                derivative_mode: mode,
            },
        }
    }

    fn push(&mut self, t: f64, terms: &[f64]) {
        let residual: f64 = terms.iter().sum();
        let scale = terms.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let abs = residual.abs();
        let rel = if abs == 0.0 { 0.0 } else { abs / scale };
        let r = &mut self.report;
        r.max_abs_residual = r.max_abs_residual.max(abs);
        if rel > r.max_rel_residual {
            r.max_rel_residual = rel;
            r.worst_point = t;
        }
    }
}

/// `points` log-spaced values from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && lo > 0.0 && hi.is_finite() && hi > lo) {
        return Err(Error::InvalidInput(format!("bad grid bounds [{lo}, {hi}]")));
    }
    if points < 2 {
        return Err(Error::InvalidInput(
            "a grid needs at least two points".into(),
        ));
    }
    let ratio = (hi / lo).ln() / (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points).map(|i| lo * (ratio * i as f64).exp()).collect();
    grid[points - 1] = hi;
    Ok(grid)
}

/// The default radial grid: 200 log-spaced points on `[1e-3, 30]`.
pub fn default_grid() -> Vec<f64> {
    geometric_grid(GRID_MIN, GRID_MAX, DEFAULT_GRID_POINTS).expect("valid default bounds")
}

/// Polar grid whose `θ^α` values are evenly spaced on `[δ, π-δ]` with
/// `δ = 0.05`.
pub fn polar_grid(alpha: Alpha, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::InvalidInput(
            "a grid needs at least two points".into(),
        ));
    }
    let margin = 0.05;
    let span = std::f64::consts::PI - 2.0 * margin;
    Ok((0..points)
        .map(|i| alpha.root(margin + span * i as f64 / (points - 1) as f64))
        .collect())
}

/// `t ↦ c·g(s t^α/α)` with classical derivatives assembled by the chain rule
/// from `g`, `g'`, `g''`.
fn on_power_axis<'a>(
    alpha: Alpha,
    c: f64,
    s: f64,
    g: impl Fn(f64) -> (f64, f64, f64) + Copy + Send + Sync + 'a,
) -> Function<'a> {
    let a = alpha.value();
    let y = move |t: f64| s * alpha.pow(t) / a;
    let dy = move |t: f64| s * alpha.pow(t) / t;
    Function::new(move |t| c * g(y(t)).0)
        .with_first(move |t| c * g(y(t)).1 * dy(t))
        .with_second(move |t| {
            let (_, g1, g2) = g(y(t));
            let d = dy(t);
            c * (g2 * d * d + g1 * (a - 1.0) * d / t)
        })
}

/// `y^p e^{-y/2} L_s^m(y)` and its first two derivatives.
fn laguerre_envelope(p: i32, params: LaguerreParams, y: f64) -> (f64, f64, f64) {
    let (l0, l1, l2) = laguerre_derivatives(params, y);
    let pf = p as f64;
    let e0 = y.powi(p) * (-y / 2.0).exp();
    let g = pf / y - 0.5;
    let e1 = g * e0;
    let e2 = (g * g - pf / (y * y)) * e0;
    (
        e0 * l0,
        e1 * l0 + e0 * l1,
        e2 * l0 + 2.0 * e1 * l1 + e0 * l2,
    )
}

fn radial_laguerre(qn: QuantumNumbers) -> LaguerreParams {
    LaguerreParams::new(qn.laguerre_degree(), qn.laguerre_order())
}

/// `R_{nℓα}` as a function of `r` with analytic derivatives.
pub fn radial_function(qn: QuantumNumbers, params: &ModelParams) -> Function<'static> {
    let sp = scaled_problem(qn, params);
    let a = params.alpha.value();
    let c = radial_normalization(qn, params) * a.powi(qn.l() as i32);
    let lp = radial_laguerre(qn);
    let p = qn.l() as i32;
    on_power_axis(params.alpha, c, 2.0 * sp.k, move |y| {
        laguerre_envelope(p, lp, y)
    })
}

/// `u_α` as a function of `ρ` with analytic derivatives.
pub fn u_function_analytic(qn: QuantumNumbers, params: &ModelParams) -> Function<'static> {
    let a = params.alpha.value();
    let c = u_normalization(qn, params) * a.powi(qn.l() as i32 + 1);
    let lp = radial_laguerre(qn);
    let p = qn.l() as i32 + 1;
    on_power_axis(params.alpha, c, 1.0, move |y| laguerre_envelope(p, lp, y))
}

/// `v_α(ρ) = L^{2ℓ+1}_{(n-ℓ-1)α}(ρ^α/α)` with analytic derivatives.
pub fn laguerre_function(qn: QuantumNumbers, alpha: Alpha) -> Function<'static> {
    let lp = radial_laguerre(qn);
    on_power_axis(alpha, 1.0, 1.0, move |y| laguerre_derivatives(lp, y))
}

/// `Θ(θ) = P^{mα}_{ℓα}(cos θ^α)` with analytic derivatives.
pub fn angular_function(l: u32, m: i32, alpha: Alpha) -> Function<'static> {
    let scale = alpha.value().powi(m);
    on_power_axis(alpha, scale, alpha.value(), move |t| {
        (
            legendre_value(l, m, t.cos()),
            legendre_polar_derivative(l, m, t),
            legendre_polar_second_derivative(l, m, t),
        )
    })
}

/// `(1 + εt) f(t)`, the negative-control perturbation.
pub fn perturbed<'a, D>(f: &'a D, epsilon: f64) -> Function<'a>
where
    D: Differentiable + Send + Sync + ?Sized,
{
    let first = move |t: f64| f.first(t).unwrap_or(f64::NAN);
    let second = move |t: f64| f.second(t).unwrap_or(f64::NAN);
    Function::new(move |t| (1.0 + epsilon * t) * f.eval(t))
        .with_first(move |t| epsilon * f.eval(t) + (1.0 + epsilon * t) * first(t))
        .with_second(move |t| 2.0 * epsilon * first(t) + (1.0 + epsilon * t) * second(t))
}

/// Value, first and second conformable derivative at `t`.
fn conformable_triple<D: Differentiable + ?Sized>(
    f: &D,
    alpha: Alpha,
    t: f64,
    mode: DerivativeMode,
) -> Result<(f64, f64, f64)> {
    let value = f.eval(t);
    if !value.is_finite() {
        return Err(Error::Evaluation { at: t });
    }
    match mode {
        DerivativeMode::Analytic => Ok((
            value,
            conf_derivative(f, alpha, t)?,
            conf_second_derivative(f, alpha, t)?,
        )),
        DerivativeMode::FiniteDifference => {
            let hidden = ValueOnly(f);
            Ok((
                value,
                conf_derivative(&hidden, alpha, t)?,
                conf_second_derivative(&hidden, alpha, t)?,
            ))
        }
    }
}

/// Residual of the radial equation
/// `T[r^{2α} T R] + [-k² r^{2α} + 2λ_α k r^α - α²ℓ(ℓ+1)] R = 0`.
pub fn radial_ode_residual(
    qn: QuantumNumbers,
    params: &ModelParams,
    grid: &[f64],
) -> Result<ResidualReport> {
    radial_ode_residual_of(
        &radial_function(qn, params),
        qn,
        params,
        grid,
        DerivativeMode::Analytic,
    )
}

/// [`radial_ode_residual`] for an arbitrary candidate `R`.
pub fn radial_ode_residual_of<D: Differentiable + ?Sized>(
    f: &D,
    qn: QuantumNumbers,
    params: &ModelParams,
    grid: &[f64],
    mode: DerivativeMode,
) -> Result<ResidualReport> {
    validate_grid(grid)?;
    let alpha = params.alpha;
    let a = alpha.value();
    let sp = scaled_problem(qn, params);
    let centrifugal = a * a * (qn.l() * (qn.l() + 1)) as f64;
    let mut acc = Accumulator::new(grid, mode);
    for &r in grid {
        let (v, d1, d2) = conformable_triple(f, alpha, r, mode)?;
        let ra = alpha.pow(r);
        // T[r^{2α} g] = 2α r^α g + r^{2α} T g
        acc.push(
            r,
            &[
                2.0 * a * ra * d1,
                ra * ra * d2,
                -sp.k * sp.k * ra * ra * v,
                2.0 * sp.lambda_alpha * sp.k * ra * v,
                -centrifugal * v,
            ],
        );
    }
    Ok(acc.report)
}

/// Residual of `T T u + [-1/4 + λ_α/ρ^α - α²ℓ(ℓ+1)/ρ^{2α}] u = 0` on a grid
/// of `ρ` values.
pub fn u_ode_residual(
    qn: QuantumNumbers,
    params: &ModelParams,
    grid: &[f64],
) -> Result<ResidualReport> {
    u_ode_residual_of(
        &u_function_analytic(qn, params),
        qn,
        params,
        grid,
        DerivativeMode::Analytic,
    )
}

pub fn u_ode_residual_of<D: Differentiable + ?Sized>(
    f: &D,
    qn: QuantumNumbers,
    params: &ModelParams,
    grid: &[f64],
    mode: DerivativeMode,
) -> Result<ResidualReport> {
    validate_grid(grid)?;
    let alpha = params.alpha;
    let a = alpha.value();
    let lambda = scaled_problem(qn, params).lambda_alpha;
    let centrifugal = a * a * (qn.l() * (qn.l() + 1)) as f64;
    let mut acc = Accumulator::new(grid, mode);
    for &rho in grid {
        let (v, _, d2) = conformable_triple(f, alpha, rho, mode)?;
        let x = alpha.pow(rho);
        acc.push(
            rho,
            &[d2, -0.25 * v, lambda * v / x, -centrifugal * v / (x * x)],
        );
    }
    Ok(acc.report)
}

/// Residual of the conformable associated Laguerre equation
/// `ρ^α T T v + [2αℓ + 2α - ρ^α] T v + [λ_α - α(ℓ+1)] v = 0`.
pub fn laguerre_ode_residual(
    qn: QuantumNumbers,
    params: &ModelParams,
    grid: &[f64],
) -> Result<ResidualReport> {
    laguerre_ode_residual_of(
        &laguerre_function(qn, params.alpha),
        qn,
        params,
        grid,
        DerivativeMode::Analytic,
    )
}

pub fn laguerre_ode_residual_of<D: Differentiable + ?Sized>(
    f: &D,
    qn: QuantumNumbers,
    params: &ModelParams,
    grid: &[f64],
    mode: DerivativeMode,
) -> Result<ResidualReport> {
    validate_grid(grid)?;
    let alpha = params.alpha;
    let a = alpha.value();
    let lambda = scaled_problem(qn, params).lambda_alpha;
    let lf = qn.l() as f64;
    let shift = lambda - a * (lf + 1.0);
    let mut acc = Accumulator::new(grid, mode);
    for &rho in grid {
        let (v, d1, d2) = conformable_triple(f, alpha, rho, mode)?;
        let x = alpha.pow(rho);
        acc.push(
            rho,
            &[x * d2, (2.0 * a * lf + 2.0 * a) * d1, -x * d1, shift * v],
        );
    }
    Ok(acc.report)
}

/// Residual of the conformable angular equation after separating
/// `e^{imφ^α}`, multiplied through by `Θ sin²θ^α`:
/// `sin θ^α T[sin θ^α T Θ] - α²m² Θ + α²ℓ(ℓ+1) sin²θ^α Θ = 0`.
///
/// The azimuthal term is the twice-iterated conformable derivative of
/// `e^{imφ^α}`, which equals `-α²m²` times the function.
pub fn angular_ode_residual(
    l: u32,
    m: i32,
    alpha: Alpha,
    theta_grid: &[f64],
) -> Result<ResidualReport> {
    angular_ode_residual_of(
        &angular_function(l, m, alpha),
        l,
        m,
        alpha,
        theta_grid,
        DerivativeMode::Analytic,
    )
}

pub fn angular_ode_residual_of<D: Differentiable + ?Sized>(
    f: &D,
    l: u32,
    m: i32,
    alpha: Alpha,
    theta_grid: &[f64],
    mode: DerivativeMode,
) -> Result<ResidualReport> {
    if m.unsigned_abs() > l {
        return Err(Error::InvalidInput(format!(
            "|m| = {} exceeds l = {l}",
            m.unsigned_abs()
        )));
    }
    validate_grid(theta_grid)?;
    let a = alpha.value();
    let azimuthal = a * a * (m * m) as f64;
    let polar = a * a * (l * (l + 1)) as f64;
    let mut acc = Accumulator::new(theta_grid, mode);
    for &theta in theta_grid {
        let t = alpha.pow(theta);
        let (s, c) = t.sin_cos();
        if t > std::f64::consts::PI || s < POLE_MARGIN {
            return Err(Error::domain(
                "sin(theta^alpha)",
                s,
                "sin(theta^alpha) >= 1e-3",
            ));
        }
        let (v, d1, d2) = conformable_triple(f, alpha, theta, mode)?;
        acc.push(
            theta,
            &[
                a * s * c * d1,
                s * s * d2,
                -azimuthal * v,
                polar * s * s * v,
            ],
        );
    }
    Ok(acc.report)
}

/// Quadrature matched to `R_{n₁ℓ} R_{n₂ℓ}`, whose decay on the substituted
/// axis is `e^{-(k₁+k₂)u}`.
fn radial_quadrature(k: f64) -> QuadratureSpec {
    QuadratureSpec::laguerre(32).with_decay_rate(k)
}

/// `∫_0^∞ r^{2α} |R|² d^α r`, which should equal one.
pub fn normalization_report(qn: QuantumNumbers, params: &ModelParams) -> Result<f64> {
    normalization_of(&radial_function(qn, params), qn, params)
}

/// [`normalization_report`] for an arbitrary candidate `R`.
pub fn normalization_of<D: Differentiable + ?Sized>(
    f: &D,
    qn: QuantumNumbers,
    params: &ModelParams,
) -> Result<f64> {
    let alpha = params.alpha;
    let k = scaled_problem(qn, params).k;
    conf_integral(
        |r| {
            let ra = alpha.pow(r);
            let v = f.eval(r);
            ra * ra * v * v
        },
        alpha,
        0.0,
        f64::INFINITY,
        &radial_quadrature(2.0 * k),
    )
}

/// `∫_0^∞ r^{2α} R_{n₁ℓα} R_{n₂ℓα} d^α r`; zero for `n₁ ≠ n₂`.
pub fn radial_overlap(
    first: QuantumNumbers,
    second: QuantumNumbers,
    params: &ModelParams,
) -> Result<f64> {
    let alpha = params.alpha;
    let rate = scaled_problem(first, params).k + scaled_problem(second, params).k;
    let (f, g) = (
        radial_function(first, params),
        radial_function(second, params),
    );
    conf_integral(
        |r| {
            let ra = alpha.pow(r);
            ra * ra * f.eval(r) * g.eval(r)
        },
        alpha,
        0.0,
        f64::INFINITY,
        &radial_quadrature(rate),
    )
}

/// `∫_0^∞ e^{-x^α/α} x^{mα+α} L^m_{sα} L^m_{kα} d^α x` by quadrature, for the
/// common order `m` of `first` and degree `second_degree`.
pub fn laguerre_integral(first: LaguerreParams, second_degree: u32, alpha: Alpha) -> Result<f64> {
    let second = LaguerreParams::new(second_degree, first.order);
    let a = alpha.value();
    let power = first.order as i32 + 1;
    // A failed evaluation propagates as NaN, which the quadrature reports.
    conf_integral(
        |x| {
            let xa = alpha.pow(x);
            let p = conf_laguerre(first, alpha, x).unwrap_or(f64::NAN)
                * conf_laguerre(second, alpha, x).unwrap_or(f64::NAN);
            (-xa / a).exp() * xa.powi(power) * p
        },
        alpha,
        0.0,
        f64::INFINITY,
        &QuadratureSpec::laguerre(32),
    )
}

/// Closed form of [`laguerre_integral`] for adjacent degrees `s` and `s+1`:
/// `-α^{m+1} (s+m+1)!/s!`.
pub fn laguerre_adjacent_constant(params: LaguerreParams, alpha: Alpha) -> f64 {
    let s = params.degree;
    let m = params.order;
    let ratio: f64 = (s + 1..=s + m + 1).map(f64::from).product();
    -alpha.value().powi(m as i32 + 1) * ratio
}
