//! Textbook hydrogen wavefunctions in Bohr units with the Condon–Shortley
//! phase, written out term by term.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::geometric_grid;
use crate::calculus::Alpha;
use crate::error::{Error, Result};
use crate::hydrogen::{full_wavefunction, radial_wavefunction, ModelParams, QuantumNumbers};

/// Largest principal quantum number with a hard-coded form.
pub const TEXTBOOK_MAX_N: u32 = 3;

const ANGLES: [(f64, f64); 6] = [
    (0.3, 0.4),
    (0.9, 2.5),
    (1.4, 5.1),
    (2.0, 1.2),
    (2.6, 3.3),
    (2.9, 6.0),
];

/// Classical `R_{nℓ}(r)`.
pub fn textbook_radial(n: u32, l: u32, r: f64) -> Option<f64> {
    let value = match (n, l) {
        (1, 0) => 2.0 * (-r).exp(),
        (2, 0) => (1.0 / 2f64.sqrt()) * (1.0 - r / 2.0) * (-r / 2.0).exp(),
        (2, 1) => (1.0 / 24f64.sqrt()) * r * (-r / 2.0).exp(),
        (3, 0) => {
            (2.0 / 27f64.sqrt()) * (1.0 - 2.0 * r / 3.0 + 2.0 * r * r / 27.0) * (-r / 3.0).exp()
        }
        (3, 1) => (8.0 / (27.0 * 6f64.sqrt())) * r * (1.0 - r / 6.0) * (-r / 3.0).exp(),
        (3, 2) => (4.0 / (81.0 * 30f64.sqrt())) * r * r * (-r / 3.0).exp(),
        _ => return None,
    };
    Some(value)
}

/// Classical `Y_ℓ^m(θ, φ)` for `ℓ ≤ 2`.
pub fn textbook_angular(l: u32, m: i32, theta: f64, phi: f64) -> Option<Complex64> {
    let (s, c) = theta.sin_cos();
    let phase = Complex64::from_polar(1.0, m as f64 * phi);
    let value = match (l, m) {
        (0, 0) => 1.0 / (4.0 * PI).sqrt(),
        (1, 0) => (3.0 / (4.0 * PI)).sqrt() * c,
        (1, 1) => -(3.0 / (8.0 * PI)).sqrt() * s,
        (1, -1) => (3.0 / (8.0 * PI)).sqrt() * s,
        (2, 0) => (5.0 / (16.0 * PI)).sqrt() * (3.0 * c * c - 1.0),
        (2, 1) => -(15.0 / (8.0 * PI)).sqrt() * s * c,
        (2, -1) => (15.0 / (8.0 * PI)).sqrt() * s * c,
        (2, 2) | (2, -2) => (15.0 / (32.0 * PI)).sqrt() * s * s,
        _ => return None,
    };
    Some(phase * value)
}

/// Largest absolute deviation between the `α = 1` radial and full
/// wavefunctions and the textbook forms, over `n ≤ n_max`, every `ℓ` and
/// `m_ℓ`, 200 log-spaced radii in `[1e-3, 20]` and a fixed set of angles.
pub fn classical_limit_report(n_max: u32) -> Result<f64> {
    classical_limit_report_at(n_max, Alpha::ONE)
}

/// [`classical_limit_report`] with the general formulas evaluated at
/// `alpha` instead of one; a sensitivity control for `alpha ≠ 1`.
pub fn classical_limit_report_at(n_max: u32, alpha: Alpha) -> Result<f64> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    if n_max > TEXTBOOK_MAX_N {
        return Err(Error::UnsupportedDegree {
            degree: n_max,
            max: TEXTBOOK_MAX_N,
        });
    }
    let params = ModelParams::natural(alpha);
    let grid = geometric_grid(1e-3, 20.0, 200)?;
    let mut worst = 0.0f64;
    for n in 1..=n_max {
        for l in 0..n {
            let radial = QuantumNumbers::radial(n, l)?;
            for &r in &grid {
                let expected = textbook_radial(n, l, r).expect("tabulated state");
                worst = worst.max((radial_wavefunction(radial, &params, r)? - expected).abs());
            }
            for m in -(l as i32)..=l as i32 {
                let qn = QuantumNumbers::new(n, l, m)?;
                for &(theta, phi) in &ANGLES {
                    let y = textbook_angular(l, m, theta, phi).expect("tabulated harmonic");
                    for &r in grid.iter().step_by(10) {
                        let expected = y * textbook_radial(n, l, r).expect("tabulated state");
                        let got = full_wavefunction(qn, &params, r, theta, phi)?;
                        worst = worst.max((got - expected).norm());
                    }
                }
            }
        }
    }
    Ok(worst)
}
