//! Bound states of the conformable hydrogen atom.
//!
//! Coordinates are always accepted in plain form `(r, θ, φ)` and raised to
//! the power `α` internally. Lengths are measured in units where the α-Bohr
//! radius `r_b^α` is [`ModelParams::r_b_alpha`] (one in natural mode), and
//! energies in eV through the combined constant `(13.6 eV)^α`.
//!
//! With `k = 1/(α r_b^α n)` the scaled coordinate is `ρ^α = 2k r^α`, the
//! radial equation reduces to the conformable Laguerre equation, and the
//! quantization conditions are `λ_α = nα`, `s = n-ℓ-1`, Laguerre order `2ℓ+1`.

pub mod tables;

use num_complex::Complex64;
use serde::Serialize;

use crate::calculus::Alpha;
use crate::error::{Error, Result};
use crate::special::{conf_legendre, laguerre_poly, LegendreParams};

/// Energy scale `13.6 eV` entering as `(13.6 eV)^α`.
pub const RYDBERG_EV: f64 = 13.6;

/// Principal, orbital, and magnetic quantum numbers `(n, ℓ, m_ℓ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumNumbers {
    n: u32,
    l: u32,
    m: i32,
}

impl QuantumNumbers {
    /// Enforces `n ≥ 1`, `ℓ ≤ n-1`, `|m_ℓ| ≤ ℓ`.
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n == 0 || l >= n || m.unsigned_abs() > l {
            return Err(Error::InvalidQuantumNumbers { n, l, m });
        }
        Ok(QuantumNumbers { n, l, m })
    }

    /// `(n, ℓ, 0)`, for quantities that do not depend on `m_ℓ`.
    pub fn radial(n: u32, l: u32) -> Result<Self> {
        Self::new(n, l, 0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Laguerre degree `s = n - ℓ - 1`.
    pub fn laguerre_degree(&self) -> u32 {
        self.n - self.l - 1
    }

    /// Laguerre order `2ℓ + 1`.
    pub fn laguerre_order(&self) -> u32 {
        2 * self.l + 1
    }
}

impl std::fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, l={}, m={})", self.n, self.l, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitMode {
    /// `r_b^α = 1`.
    Natural,
    /// `r_b^α` supplied by the caller.
    Physical,
}

/// Conformable order together with the unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub alpha: Alpha,
    r_b_alpha: f64,
    energy_scale_ev: f64,
    mode: UnitMode,
}

impl ModelParams {
    pub fn natural(alpha: Alpha) -> Self {
        ModelParams {
            alpha,
            r_b_alpha: 1.0,
            energy_scale_ev: RYDBERG_EV,
            mode: UnitMode::Natural,
        }
    }

    /// Physical mode with an explicit α-Bohr radius `r_b^α > 0`.
    pub fn physical(alpha: Alpha, r_b_alpha: f64) -> Result<Self> {
        if !(r_b_alpha.is_finite() && r_b_alpha > 0.0) {
            return Err(Error::domain("r_b_alpha", r_b_alpha, "r_b_alpha > 0"));
        }
        Ok(ModelParams {
            alpha,
            r_b_alpha,
            energy_scale_ev: RYDBERG_EV,
            mode: UnitMode::Physical,
        })
    }

    pub fn with_alpha(self, alpha: Alpha) -> Self {
        ModelParams { alpha, ..self }
    }

    pub fn r_b_alpha(&self) -> f64 {
        self.r_b_alpha
    }

    pub fn energy_scale_ev(&self) -> f64 {
        self.energy_scale_ev
    }

    pub fn mode(&self) -> UnitMode {
        self.mode
    }

    /// α-energy level for this parameter set, in eV.
    pub fn energy_level(&self, n: u32) -> Result<f64> {
        energy_with_scale(n, self.alpha, self.energy_scale_ev)
    }
}

/// Scaled radial problem: `k`, `λ_α`, and the map `ρ^α = 2k r^α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledRadialProblem {
    pub k: f64,
    pub lambda_alpha: f64,
    pub n: u32,
    pub l: u32,
    #[serde(skip)]
    alpha: Alpha,
}

impl ScaledRadialProblem {
    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    /// `ρ^α = 2k r^α`.
    pub fn rho_alpha_at(&self, r: f64) -> f64 {
        2.0 * self.k * self.alpha.pow(r)
    }

    /// `ρ = (2k)^{1/α} r`.
    pub fn rho_from_r(&self, r: f64) -> f64 {
        self.alpha.root(2.0 * self.k) * r
    }

    pub fn r_from_rho(&self, rho: f64) -> f64 {
        rho / self.alpha.root(2.0 * self.k)
    }
}

pub fn scaled_problem(qn: QuantumNumbers, params: &ModelParams) -> ScaledRadialProblem {
    let a = params.alpha.value();
    let n = qn.n as f64;
    ScaledRadialProblem {
        k: 1.0 / (a * params.r_b_alpha * n),
        lambda_alpha: n * a,
        n: qn.n,
        l: qn.l,
        alpha: params.alpha,
    }
}

/// `E^α = -(13.6 eV)^α / (2^{1-α} α² n²)`.
pub fn energy_level(n: u32, alpha: Alpha) -> Result<f64> {
    energy_with_scale(n, alpha, RYDBERG_EV)
}

fn energy_with_scale(n: u32, alpha: Alpha, scale: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "principal quantum number must be >= 1".into(),
        ));
    }
    let a = alpha.value();
    let nf = n as f64;
    Ok(-alpha.pow(scale) / (2f64.powf(1.0 - a) * a * a * nf * nf))
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `(n-ℓ-1)! / (n+ℓ)!`
fn radial_factorial_ratio(qn: QuantumNumbers) -> f64 {
    1.0 / (qn.n - qn.l..=qn.n + qn.l).map(f64::from).product::<f64>()
}

/// Prefactor `√[(2/(α n r_b^α))³ (n-ℓ-1)! / (2n α^{2ℓ+2} (n+ℓ)!)]` of `R`.
pub fn radial_normalization(qn: QuantumNumbers, params: &ModelParams) -> f64 {
    let a = params.alpha.value();
    let n = qn.n as f64;
    let scale = 2.0 / (a * n * params.r_b_alpha);
    (scale.powi(3) * radial_factorial_ratio(qn) / (2.0 * n * a.powi(2 * qn.l as i32 + 2))).sqrt()
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("r", r, "r > 0"))
    }
}

/// Radial wavefunction `R_{nℓα}(r^α)`.
///
/// ```text
/// R = N [2r^α/(α r_b^α n)]^ℓ exp(-r^α/(α² r_b^α n)) L^{2ℓ+1}_{(n-ℓ-1)α}(2r^α/(α² r_b^α n))
/// ```
pub fn radial_wavefunction(qn: QuantumNumbers, params: &ModelParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(radial_value(qn, params, params.alpha.pow(r)))
}

/// `R` as a function of `r^α`.
pub(crate) fn radial_value(qn: QuantumNumbers, params: &ModelParams, r_alpha: f64) -> f64 {
    let a = params.alpha.value();
    let n = qn.n as f64;
    let rb = params.r_b_alpha;
    let rho_alpha = 2.0 * r_alpha / (a * rb * n);
    let decay = (-r_alpha / (a * a * rb * n)).exp();
    let laguerre = laguerre_poly(
        qn.laguerre_degree() as i64,
        qn.laguerre_order() as f64,
        rho_alpha / a,
    );
    radial_normalization(qn, params) * rho_alpha.powi(qn.l as i32) * decay * laguerre
}

/// Normalization constant `A = √[k (n-ℓ-1)! / (n α^{2ℓ+2} (n+ℓ)!)]` of `u`.
pub fn u_normalization(qn: QuantumNumbers, params: &ModelParams) -> f64 {
    let a = params.alpha.value();
    let k = scaled_problem(qn, params).k;
    (k * radial_factorial_ratio(qn) / (qn.n as f64 * a.powi(2 * qn.l as i32 + 2))).sqrt()
}

/// Reduced radial function
/// `u_α(ρ^α) = A ρ^{α(ℓ+1)} exp(-ρ^α/(2α)) L^{2ℓ+1}_{(n-ℓ-1)α}(ρ^α/α)`.
pub fn u_function(qn: QuantumNumbers, params: &ModelParams, rho: f64) -> Result<f64> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::domain("rho", rho, "rho > 0"));
    }
    let a = params.alpha.value();
    let x = params.alpha.pow(rho);
    let laguerre = laguerre_poly(
        qn.laguerre_degree() as i64,
        qn.laguerre_order() as f64,
        x / a,
    );
    Ok(u_normalization(qn, params) * x.powi(qn.l as i32 + 1) * (-x / (2.0 * a)).exp() * laguerre)
}

/// `φ^α`, checked to lie in `[0, 2π]`.
pub(crate) fn azimuth_angle(alpha: Alpha, phi: f64) -> Result<f64> {
    if !(phi.is_finite() && phi >= 0.0) {
        return Err(Error::domain("phi", phi, "phi >= 0"));
    }
    let p = alpha.pow(phi);
    if p > std::f64::consts::TAU * (1.0 + 4.0 * f64::EPSILON) {
        return Err(Error::domain("phi^alpha", p, "0 <= phi^alpha <= 2 pi"));
    }
    Ok(p)
}

/// Prefactor `√[(2ℓ+1)(ℓ-m)! / (α^{2m-2} · 2 (ℓ+m)! (2π)^α)]` of `Y`.
pub fn angular_normalization(l: u32, m: i32, alpha: Alpha) -> f64 {
    let lm_minus = factorial((l as i32 - m) as u32);
    let lm_plus = factorial((l as i32 + m) as u32);
    let a = alpha.value();
    let two_pi_alpha = alpha.pow(std::f64::consts::TAU);
    ((2 * l + 1) as f64 * lm_minus / (a.powi(2 * m - 2) * 2.0 * lm_plus * two_pi_alpha)).sqrt()
}

/// Conformable spherical harmonic `Y^{mα}_{ℓα}(θ^α, φ^α)`.
///
/// Admissible angles are `θ ∈ [0, π^{1/α}]` and `φ ∈ [0, (2π)^{1/α}]`, so
/// that `θ^α` and `φ^α` cover the classical ranges.
pub fn angular_y(qn: QuantumNumbers, alpha: Alpha, theta: f64, phi: f64) -> Result<Complex64> {
    let p = azimuth_angle(alpha, phi)?;
    let legendre = conf_legendre(LegendreParams::new(qn.l, qn.m)?, alpha, theta)?;
    let norm = angular_normalization(qn.l, qn.m, alpha);
    Ok(Complex64::from_polar(norm * legendre, 0.0) * Complex64::from_polar(1.0, qn.m as f64 * p))
}

/// `ψ_{nℓmα} = R_{nℓα}(r^α) Y^{mα}_{ℓα}(θ^α, φ^α)`.
pub fn full_wavefunction(
    qn: QuantumNumbers,
    params: &ModelParams,
    r: f64,
    theta: f64,
    phi: f64,
) -> Result<Complex64> {
    let radial = radial_wavefunction(qn, params, r)?;
    Ok(angular_y(qn, params.alpha, theta, phi)? * radial)
}

/// α-probability density `r^{2α} |R_α(r^α)|²` sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityCurve {
    pub quantum_numbers: QuantumNumbers,
    pub alpha: f64,
    pub r: Vec<f64>,
    pub values: Vec<f64>,
}

impl DensityCurve {
    /// Grid point with the largest density.
    pub fn peak(&self) -> Option<(f64, f64)> {
        self.r
            .iter()
            .zip(&self.values)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(&r, &v)| (r, v))
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }
}

/// Evaluates `r^{2α} |R|²` on a strictly increasing positive grid.
pub fn probability_density_radial(
    qn: QuantumNumbers,
    params: &ModelParams,
    grid: &[f64],
) -> Result<DensityCurve> {
    validate_grid(grid)?;
    let values = grid
        .iter()
        .map(|&r| {
            let ra = params.alpha.pow(r);
            let radial = radial_value(qn, params, ra);
            ra * ra * radial * radial
        })
        .collect();
    Ok(DensityCurve {
        quantum_numbers: qn,
        alpha: params.alpha.value(),
        r: grid.to_vec(),
        values,
    })
}

pub(crate) fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("grid is empty".into()));
    }
    if let Some(&bad) = grid.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(Error::InvalidInput(format!(
            "grid point {bad} is not positive"
        )));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput(
            "grid is not strictly increasing".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    fn qn(n: u32, l: u32, m: i32) -> QuantumNumbers {
        QuantumNumbers::new(n, l, m).unwrap()
    }

    #[test]
    fn selection_rules() {
        assert!(QuantumNumbers::new(0, 0, 0).is_err());
        assert!(QuantumNumbers::new(2, 2, 0).is_err());
        assert!(QuantumNumbers::new(3, 1, 2).is_err());
        assert!(QuantumNumbers::new(3, 2, -2).is_ok());
        let q = qn(4, 1, 0);
        assert_eq!((q.laguerre_degree(), q.laguerre_order()), (2, 3));
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy_level(1, Alpha::ONE).unwrap(), -13.6);
        assert_relative_eq!(
            energy_level(2, Alpha::ONE).unwrap(),
            -3.4,
            max_relative = 1e-15
        );
        // 13.6^0.5 / (2^0.5 · 0.25) evaluated independently
        let expected = -(13.6f64.sqrt()) / (std::f64::consts::SQRT_2 * 0.25);
        assert_relative_eq!(
            energy_level(1, a(0.5)).unwrap(),
            expected,
            max_relative = 1e-15
        );
        assert!((energy_level(1, a(0.5)).unwrap() + 10.4307).abs() < 1e-4);
        assert!(energy_level(0, Alpha::ONE).is_err());
    }

    #[test]
    fn radial_examples() {
        let p = ModelParams::natural(Alpha::ONE);
        let r0 = radial_wavefunction(qn(1, 0, 0), &p, 1e-12).unwrap();
        assert_relative_eq!(r0, 2.0, max_relative = 1e-11);
        let v = radial_wavefunction(qn(2, 1, 0), &p, 2.0).unwrap();
        assert_relative_eq!(
            v,
            2.0 * (-1.0f64).exp() / 24f64.sqrt(),
            max_relative = 1e-14
        );
        assert!((v - 0.150).abs() < 1e-3);
        let small = radial_wavefunction(qn(3, 2, 0), &ModelParams::natural(a(0.6)), 1e-10).unwrap();
        assert!(small.abs() < 1e-10);
        assert!(radial_wavefunction(qn(1, 0, 0), &p, 0.0).is_err());
        assert!(radial_wavefunction(qn(1, 0, 0), &p, -1.0).is_err());
        let far = radial_wavefunction(qn(3, 1, 0), &ModelParams::natural(a(0.5)), 1e6).unwrap();
        assert!(far.abs() < 1e-100);
    }

    #[test]
    fn scaled_problem_examples() {
        let s = scaled_problem(qn(1, 0, 0), &ModelParams::natural(Alpha::ONE));
        assert_eq!((s.k, s.lambda_alpha), (1.0, 1.0));
        let s = scaled_problem(qn(2, 0, 0), &ModelParams::natural(a(0.5)));
        assert_eq!((s.k, s.lambda_alpha), (1.0, 1.0));
        for alpha in [0.3, 0.55, 0.9] {
            for n in 1..6 {
                let p = ModelParams::physical(a(alpha), 1.7).unwrap();
                let s = scaled_problem(qn(n, 0, 0), &p);
                assert_relative_eq!(s.lambda_alpha / alpha, n as f64, max_relative = 1e-15);
                assert_relative_eq!(s.k * n as f64 * alpha * 1.7, 1.0, max_relative = 1e-15);
                let r = 2.3;
                let rho = s.rho_from_r(r);
                assert_relative_eq!(a(alpha).pow(rho), s.rho_alpha_at(r), max_relative = 1e-13);
                assert_relative_eq!(s.r_from_rho(rho), r, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn u_and_radial_agree_pointwise() {
        for alpha in [0.5, 0.8, 1.0] {
            let p = ModelParams::physical(a(alpha), 1.3).unwrap();
            for (n, l) in [(1, 0), (2, 1), (3, 0), (4, 2)] {
                let q = qn(n, l, 0);
                let s = scaled_problem(q, &p);
                for r in [0.01, 0.7, 3.0, 12.0] {
                    let rho = s.rho_from_r(r);
                    let u = u_function(q, &p, rho).unwrap();
                    let via_u = 2.0 * s.k * u / a(alpha).pow(rho);
                    let direct = radial_wavefunction(q, &p, r).unwrap();
                    assert!((via_u - direct).abs() <= 1e-12 * direct.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn u_boundary_forms() {
        let p = ModelParams::natural(a(0.7));
        let q = qn(3, 1, 0);
        let alpha = a(0.7);
        let near = |rho: f64| u_function(q, &p, rho).unwrap() / alpha.pow(rho).powi(2);
        let ratio = near(1e-14) / u_normalization(q, &p);
        // L^{3}_{1}(0) = 4
        assert_relative_eq!(ratio, 4.0, max_relative = 1e-6);
        let tail = |rho: f64| {
            let x = alpha.pow(rho);
            u_function(q, &p, rho).unwrap() * (x / 1.4).exp() / x.powi(3)
        };
        // u e^{ρ^α/2α} is a cubic in ρ^α, leading coefficient -A/α
        let (t1, t2) = (tail(alpha.root(200.0)), tail(alpha.root(400.0)));
        let limit = -u_normalization(q, &p) / 0.7;
        assert_relative_eq!(t1, limit, max_relative = 2e-2);
        assert_relative_eq!(t2, limit, max_relative = 1e-2);
    }

    #[test]
    fn angular_examples() {
        let y = angular_y(qn(1, 0, 0), Alpha::ONE, 0.4, 1.0).unwrap();
        assert_relative_eq!(
            y.re,
            1.0 / (4.0 * std::f64::consts::PI).sqrt(),
            max_relative = 1e-15
        );
        assert_eq!(y.im, 0.0);
        let y = angular_y(qn(2, 1, 0), Alpha::ONE, 0.0, 0.0).unwrap();
        assert_relative_eq!(
            y.re,
            (3.0 / (4.0 * std::f64::consts::PI)).sqrt(),
            max_relative = 1e-15
        );
        // Y_ℓ^{-m} = (-1)^m conj(Y_ℓ^m) at α = 1
        for (l, m) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            let plus = angular_y(qn(4, l, m), Alpha::ONE, 0.9, 2.1).unwrap();
            let minus = angular_y(qn(4, l, -m), Alpha::ONE, 0.9, 2.1).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert!((minus - plus.conj() * sign).norm() < 1e-14);
        }
        assert!(angular_y(qn(1, 0, 0), a(0.5), 10.0, 1.0).is_err());
        assert!(angular_y(qn(1, 0, 0), a(0.5), 1.0, 40.0).is_err());
    }

    #[test]
    fn density_grid_validation() {
        let p = ModelParams::natural(Alpha::ONE);
        let q = qn(1, 0, 0);
        assert!(probability_density_radial(q, &p, &[]).is_err());
        assert!(probability_density_radial(q, &p, &[1.0, 0.5]).is_err());
        assert!(probability_density_radial(q, &p, &[0.0, 0.5]).is_err());
        assert!(probability_density_radial(q, &p, &[1.0, 1.0]).is_err());
        let grid: Vec<f64> = (1..=400).map(|i| i as f64 * 0.01).collect();
        let curve = probability_density_radial(q, &p, &grid).unwrap();
        let (peak, _) = curve.peak().unwrap();
        assert!((peak - 1.0).abs() < 1e-9, "{peak}");
        assert!(curve.values.iter().all(|v| *v >= 0.0));
    }
}
