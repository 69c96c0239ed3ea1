//! Associated Laguerre and Legendre functions, classical and conformable.
//!
//! The conformable associated Laguerre function is defined by the Rodrigues
//! formula
//!
//! ```text
//! L^m_{sα}(x^α/α) = x^{-mα} e^{x^α/α} / (α^s s!) · T_α^s [ x^{(s+m)α} e^{-x^α/α} ]
//! ```
//!
//! and coincides with the classical generalized Laguerre polynomial
//! evaluated at `u = x^α/α`. [`conf_laguerre`] takes the substitution route;
//! [`conf_laguerre_rodrigues_oracle`] applies the conformable derivative `s`
//! times through the power and product rules and serves as the independent
//! check. For `s = 1, m = 1` both reduce to `2 - u`: the Rodrigues form is
//! `u^{-1} e^u d/du(u² e^{-u}) = 2 - u`, the recurrence gives `1 + m - u`.

use crate::calculus::{conf_derivative, Alpha, Function};
use crate::error::{Error, Result};

/// Degree `s` and order `m` of an associated Laguerre function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LaguerreParams {
    pub degree: u32,
    pub order: u32,
}

impl LaguerreParams {
    pub fn new(degree: u32, order: u32) -> Self {
        LaguerreParams { degree, order }
    }
}

/// Degree `ℓ` and (signed) order `m` with `|m| ≤ ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LegendreParams {
    degree: u32,
    order: i32,
}

impl LegendreParams {
    pub fn new(degree: u32, order: i32) -> Result<Self> {
        if order.unsigned_abs() > degree {
            return Err(Error::InvalidInput(format!(
                "Legendre order |m| = {} exceeds degree {degree}",
                order.unsigned_abs()
            )));
        }
        Ok(LegendreParams { degree, order })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> i32 {
        self.order
    }
}

/// Generalized Laguerre polynomial `L_s^m(u)` by upward recurrence in `s`.
/// Zero for negative degree, so that derivative identities need no special
/// cases.
pub(crate) fn laguerre_poly(degree: i64, order: f64, u: f64) -> f64 {
    if degree < 0 {
        return 0.0;
    }
    let mut prev = 1.0;
    if degree == 0 {
        return prev;
    }
    let mut cur = 1.0 + order - u;
    for k in 1..degree {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + order - u) * cur - (kf + order) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Classical associated Laguerre function `L_s^m(u)`, `u ≥ 0`.
pub fn laguerre_assoc(params: LaguerreParams, u: f64) -> Result<f64> {
    if !(u.is_finite() && u >= 0.0) {
        return Err(Error::domain("u", u, "u >= 0"));
    }
    Ok(laguerre_poly(params.degree as i64, params.order as f64, u))
}

/// First and second derivatives of `L_s^m` with respect to its argument:
/// `-L_{s-1}^{m+1}(u)` and `L_{s-2}^{m+2}(u)`.
pub(crate) fn laguerre_derivatives(params: LaguerreParams, u: f64) -> (f64, f64, f64) {
    let s = params.degree as i64;
    let m = params.order as f64;
    (
        laguerre_poly(s, m, u),
        -laguerre_poly(s - 1, m + 1.0, u),
        laguerre_poly(s - 2, m + 2.0, u),
    )
}

/// Conformable associated Laguerre function `L^m_{sα}(x^α/α)` for `x > 0`.
pub fn conf_laguerre(params: LaguerreParams, alpha: Alpha, x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain("x", x, "x > 0"));
    }
    laguerre_assoc(params, alpha.pow(x) / alpha.value())
}

/// Highest degree accepted by the Rodrigues oracle.
pub const RODRIGUES_MAX_DEGREE: u32 = 4;

/// One term `c · x^p · e^{-x^α/α}` of an iterated Rodrigues derivative.
#[derive(Debug, Clone, Copy)]
struct ExpTerm {
    coef: f64,
    power: f64,
}

fn eval_terms(terms: &[ExpTerm], alpha: Alpha, x: f64) -> f64 {
    let damping = (-alpha.pow(x) / alpha.value()).exp();
    terms.iter().map(|t| t.coef * x.powf(t.power)).sum::<f64>() * damping
}

/// Classical derivative of `Σ c x^p e^{-x^α/α}`:
/// `Σ c (p x^{p-1} - x^{p+α-1}) e^{-x^α/α}`.
fn classical_derivative_terms(terms: &[ExpTerm], alpha: Alpha, x: f64) -> f64 {
    let a = alpha.value();
    let damping = (-alpha.pow(x) / a).exp();
    terms
        .iter()
        .map(|t| t.coef * (t.power * x.powf(t.power - 1.0) - x.powf(t.power + a - 1.0)))
        .sum::<f64>()
        * damping
}

/// `T_α` of a term list via the power rule `T_α x^p = p x^{p-α}` and the
/// product rule with `T_α e^{-x^α/α} = -e^{-x^α/α}`.
fn conformable_derivative_terms(terms: &[ExpTerm], alpha: Alpha) -> Vec<ExpTerm> {
    let a = alpha.value();
    let mut out = Vec::with_capacity(2 * terms.len());
    for t in terms {
        if t.power != 0.0 {
            out.push(ExpTerm {
                coef: t.coef * t.power,
                power: t.power - a,
            });
        }
        out.push(ExpTerm {
            coef: -t.coef,
            power: t.power,
        });
    }
    merge_terms(out)
}

fn merge_terms(mut terms: Vec<ExpTerm>) -> Vec<ExpTerm> {
    terms.sort_by(|x, y| x.power.total_cmp(&y.power));
    let mut merged: Vec<ExpTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match merged.last_mut() {
            Some(last) if (last.power - t.power).abs() <= 1e-12 * t.power.abs().max(1.0) => {
                last.coef += t.coef
            }
            _ => merged.push(t),
        }
    }
    merged
}

/// Direct evaluation of the conformable Rodrigues formula.
///
/// The first `s - 1` conformable derivatives are carried out symbolically on
/// terms `c x^p e^{-x^α/α}` with the power and product rules; the final one
/// is applied through [`conf_derivative`] with the analytic classical
/// derivative of the remaining term list. Degrees above
/// [`RODRIGUES_MAX_DEGREE`] are rejected.
pub fn conf_laguerre_rodrigues_oracle(params: LaguerreParams, alpha: Alpha, x: f64) -> Result<f64> {
    if params.degree > RODRIGUES_MAX_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: params.degree,
            max: RODRIGUES_MAX_DEGREE,
        });
    }
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain("x", x, "x > 0"));
    }
    let a = alpha.value();
    let s = params.degree;
    let m = params.order as f64;

    let mut terms = vec![ExpTerm {
        coef: 1.0,
        power: (s as f64 + m) * a,
    }];
    let derived = if s == 0 {
        eval_terms(&terms, alpha, x)
    } else {
        for _ in 1..s {
            terms = conformable_derivative_terms(&terms, alpha);
        }
        let last = &terms;
        let f = Function::new(move |t| eval_terms(last, alpha, t))
            .with_first(move |t| classical_derivative_terms(last, alpha, t));
        conf_derivative(&f, alpha, x)?
    };

    let factorial: f64 = (1..=s).map(f64::from).product();
    let prefactor = x.powf(-m * a) * (alpha.pow(x) / a).exp() / (a.powi(s as i32) * factorial);
    Ok(prefactor * derived)
}

/// Closed form `α^{m+1} (m+s)!/s! · (2s+m+1)` of
/// `∫_0^∞ e^{-x^α/α} x^{(m+1)α} [L^m_{sα}(x^α/α)]² d^α x`.
pub fn laguerre_orthogonality_constant(params: LaguerreParams, alpha: Alpha) -> f64 {
    let s = params.degree as u64;
    let m = params.order as u64;
    let ratio: f64 = (s + 1..=s + m).map(|k| k as f64).product();
    alpha.value().powi(m as i32 + 1) * ratio * (2 * s + m + 1) as f64
}

/// Associated Legendre function `P_ℓ^m(z)` with the Condon–Shortley phase.
pub fn legendre_assoc(params: LegendreParams, z: f64) -> Result<f64> {
    if !(z.is_finite() && (-1.0..=1.0).contains(&z)) {
        return Err(Error::domain("z", z, "-1 <= z <= 1"));
    }
    Ok(legendre_value(params.degree, params.order, z))
}

/// `P_ℓ^m(z)`; zero whenever `|m| > ℓ`.
pub(crate) fn legendre_value(l: u32, m: i32, z: f64) -> f64 {
    let am = m.unsigned_abs();
    if am > l {
        return 0.0;
    }
    let positive = legendre_nonneg(l, am, z);
    if m >= 0 {
        positive
    } else {
        // P_ℓ^{-m} = (-1)^m (ℓ-m)!/(ℓ+m)! P_ℓ^m
        let ratio: f64 = (l - am + 1..=l + am).map(f64::from).product();
        let sign = if am.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * positive / ratio
    }
}

fn legendre_nonneg(l: u32, m: u32, z: f64) -> f64 {
    let sin = ((1.0 - z) * (1.0 + z)).max(0.0).sqrt();
    // P_m^m = (-1)^m (2m-1)!! (1-z²)^{m/2}
    let mut pmm = 1.0;
    let mut odd = 1.0;
    for _ in 0..m {
        pmm *= -odd * sin;
        odd += 2.0;
    }
    if l == m {
        return pmm;
    }
    let mut prev = pmm;
    let mut cur = z * (2 * m + 1) as f64 * pmm;
    for k in m + 2..=l {
        let kf = k as f64;
        let mf = m as f64;
        let next = ((2.0 * kf - 1.0) * z * cur - (kf + mf - 1.0) * prev) / (kf - mf);
        prev = cur;
        cur = next;
    }
    cur
}

/// Derivative of `P_ℓ^m(cos t)` with respect to `t` (Condon–Shortley):
/// `½ [P_ℓ^{m+1} - (ℓ+m)(ℓ-m+1) P_ℓ^{m-1}]`.
pub(crate) fn legendre_polar_derivative(l: u32, m: i32, t: f64) -> f64 {
    let z = t.cos();
    let (lf, mf) = (l as f64, m as f64);
    0.5 * (legendre_value(l, m + 1, z) - (lf + mf) * (lf - mf + 1.0) * legendre_value(l, m - 1, z))
}

/// Second derivative of `P_ℓ^m(cos t)` with respect to `t`.
pub(crate) fn legendre_polar_second_derivative(l: u32, m: i32, t: f64) -> f64 {
    let (lf, mf) = (l as f64, m as f64);
    0.5 * (legendre_polar_derivative(l, m + 1, t)
        - (lf + mf) * (lf - mf + 1.0) * legendre_polar_derivative(l, m - 1, t))
}

/// Conformable associated Legendre function `P^{mα}_{ℓα}(cos θ^α)`.
///
/// Evaluated as `α^m P_ℓ^m(cos θ^α)`, the classical function at `α = 1`.
/// Requires `θ ≥ 0` with `θ^α ≤ π`.
pub fn conf_legendre(params: LegendreParams, alpha: Alpha, theta: f64) -> Result<f64> {
    let t = polar_angle(alpha, theta)?;
    let scale = alpha.value().powi(params.order);
    Ok(scale * legendre_value(params.degree, params.order, t.cos()))
}

/// `θ^α`, checked to lie in `[0, π]`.
pub(crate) fn polar_angle(alpha: Alpha, theta: f64) -> Result<f64> {
    if !(theta.is_finite() && theta >= 0.0) {
        return Err(Error::domain("theta", theta, "theta >= 0"));
    }
    let t = alpha.pow(theta);
    if t > std::f64::consts::PI * (1.0 + 4.0 * f64::EPSILON) {
        return Err(Error::domain("theta^alpha", t, "0 <= theta^alpha <= pi"));
    }
    Ok(t.min(std::f64::consts::PI))
}
