//! Closed forms for the lowest states.
//!
//! Each entry is written out explicitly in terms of `r^α`, `r_b^α`, `θ^α` and
//! `φ^α`, independently of the general formulas in the parent module. They serve as regression targets
//! for [`radial_wavefunction`](super::radial_wavefunction) and
//! [`full_wavefunction`](super::full_wavefunction).

use num_complex::Complex64;

use super::{azimuth_angle, full_wavefunction, radial_wavefunction, ModelParams, QuantumNumbers};
use crate::error::Result;
use crate::special::polar_angle;

/// `(n, ℓ)` pairs of the radial table.
pub const RADIAL_ENTRIES: [(u32, u32); 6] = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];

/// `(n, ℓ, m)` triples of the wavefunction table.
pub const PSI_ENTRIES: [(u32, u32, i32); 4] = [(1, 0, 0), (2, 0, 0), (2, 1, 0), (2, 1, 1)];

/// Closed-form `R_α(r^α)`; `None` for states not in the table.
pub fn radial_closed_form(n: u32, l: u32, params: &ModelParams, r: f64) -> Option<f64> {
    let a = params.alpha.value();
    let rb = params.r_b_alpha();
    let ra = params.alpha.pow(r);
    let a2rb = a * a * rb;
    let value = match (n, l) {
        (1, 0) => (4.0 / (a.powi(5) * rb.powi(3))).sqrt() * (-ra / a2rb).exp(),
        (2, 0) => {
            (1.0 / (8.0 * a.powi(5) * rb.powi(3))).sqrt()
                * (2.0 - ra / a2rb)
                * (-ra / (2.0 * a2rb)).exp()
        }
        (2, 1) => {
            (1.0 / (6.0 * a.powi(9) * rb.powi(5))).sqrt() * (ra / 2.0) * (-ra / (2.0 * a2rb)).exp()
        }
        (3, 0) => {
            let y = ra / (3.0 * a2rb);
            (4.0 / (27.0 * a.powi(5) * rb.powi(3))).sqrt()
                * (2.0 / 3.0 * y * y - 2.0 * ra / (3.0 * a2rb) + 1.0)
                * (-ra / (3.0 * a2rb)).exp()
        }
        (3, 1) => {
            (8.0 / (2187.0 * a.powi(9) * rb.powi(5))).sqrt()
                * ra
                * (2.0 - ra / (3.0 * a2rb))
                * (-ra / (3.0 * a2rb)).exp()
        }
        (3, 2) => {
            let bracket = 2.0 * ra / (a * rb * 3.0);
            (1.0 / (10.0 * a.powi(9) * 243.0 * rb.powi(3))).sqrt()
                * bracket
                * bracket
                * (-ra / (3.0 * a2rb)).exp()
        }
        _ => return None,
    };
    Some(value)
}

/// Closed-form `ψ_{nℓmα}(r^α, θ^α, φ^α)`; `Ok(None)` for states not in the
/// table, `Err` for angles outside the admissible ranges.
pub fn psi_closed_form(
    qn: QuantumNumbers,
    params: &ModelParams,
    r: f64,
    theta: f64,
    phi: f64,
) -> Result<Option<Complex64>> {
    let a = params.alpha.value();
    let rb = params.r_b_alpha();
    let ra = params.alpha.pow(r);
    let a2rb = a * a * rb;
    let t = polar_angle(params.alpha, theta)?;
    let p = azimuth_angle(params.alpha, phi)?;
    let two_pi_a = params.alpha.pow(std::f64::consts::TAU);
    let value = match (qn.n(), qn.l(), qn.m()) {
        (1, 0, 0) => {
            let v = (2.0 / (a.powi(3) * rb.powi(3) * two_pi_a)).sqrt() * (-ra / a2rb).exp();
            Complex64::new(v, 0.0)
        }
        (2, 0, 0) => {
            let v = (1.0 / (16.0 * two_pi_a * a.powi(3) * rb.powi(3))).sqrt()
                * (2.0 - ra / a2rb)
                * (-ra / (2.0 * a2rb)).exp();
            Complex64::new(v, 0.0)
        }
        (2, 1, 0) => {
            let v = (1.0 / (4.0 * a.powi(7) * rb.powi(5) * two_pi_a)).sqrt()
                * (ra / 2.0)
                * (-ra / (2.0 * a2rb)).exp()
                * t.cos();
            Complex64::new(v, 0.0)
        }
        (2, 1, 1) => {
            let v = -(1.0 / (8.0 * a.powi(7) * rb.powi(5) * two_pi_a)).sqrt()
                * (ra / 2.0)
                * (-ra / (2.0 * a2rb)).exp()
                * t.sin();
            Complex64::from_polar(1.0, p) * v
        }
        _ => return Ok(None),
    };
    Ok(Some(value))
}

/// `θ^α` values at which the wavefunction table is compared.
pub const POLAR_SAMPLES: [f64; 3] = [0.4, 1.3, 2.7];
/// `φ^α` values at which the wavefunction table is compared.
pub const AZIMUTH_SAMPLES: [f64; 3] = [0.5, 3.0, 5.5];

/// General formula against closed form for one table entry, at the sample
/// point where they differ most.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableComparison {
    pub qn: QuantumNumbers,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub general: Complex64,
    pub closed_form: Complex64,
    /// Largest `|general - closed| / max(1, |closed|)` over the samples.
    pub max_deviation: f64,
}

struct Worst(Option<TableComparison>);

impl Worst {
    fn offer(&mut self, candidate: TableComparison) {
        let deviation = (candidate.general - candidate.closed_form).norm()
            / candidate.closed_form.norm().max(1.0);
        let candidate = TableComparison {
            max_deviation: deviation,
            ..candidate
        };
        match &self.0 {
            Some(best) if best.max_deviation >= deviation => {}
            _ => self.0 = Some(candidate),
        }
    }
}

/// Compares every radial entry over `grid`.
pub fn compare_radial(params: &ModelParams, grid: &[f64]) -> Result<Vec<TableComparison>> {
    super::validate_grid(grid)?;
    RADIAL_ENTRIES
        .iter()
        .map(|&(n, l)| {
            let qn = QuantumNumbers::radial(n, l)?;
            let mut worst = Worst(None);
            for &r in grid {
                let closed = radial_closed_form(n, l, params, r).expect("tabulated entry");
                worst.offer(TableComparison {
                    qn,
                    r,
                    theta: 0.0,
                    phi: 0.0,
                    general: radial_wavefunction(qn, params, r)?.into(),
                    closed_form: closed.into(),
                    max_deviation: 0.0,
                });
            }
            Ok(worst.0.expect("non-empty grid"))
        })
        .collect()
}

/// Compares every wavefunction entry over `grid` and the angular samples.
pub fn compare_psi(params: &ModelParams, grid: &[f64]) -> Result<Vec<TableComparison>> {
    super::validate_grid(grid)?;
    let alpha = params.alpha;
    PSI_ENTRIES
        .iter()
        .map(|&(n, l, m)| {
            let qn = QuantumNumbers::new(n, l, m)?;
            let mut worst = Worst(None);
            for &r in grid {
                for &t in &POLAR_SAMPLES {
                    for &p in &AZIMUTH_SAMPLES {
                        let (theta, phi) = (alpha.root(t), alpha.root(p));
                        let closed =
                            psi_closed_form(qn, params, r, theta, phi)?.expect("tabulated entry");
                        worst.offer(TableComparison {
                            qn,
                            r,
                            theta,
                            phi,
                            general: full_wavefunction(qn, params, r, theta, phi)?,
                            closed_form: closed,
                            max_deviation: 0.0,
                        });
                    }
                }
            }
            Ok(worst.0.expect("non-empty grid"))
        })
        .collect()
}
