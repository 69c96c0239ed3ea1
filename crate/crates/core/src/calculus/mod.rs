//! Conformable derivative and conformable integral.
//!
//! For a differentiable `f` the conformable derivative of order `α` is
//! `T_α f(t) = t^{1-α} f'(t)`; the limit quotient
//! `(f(t + ε t^{1-α}) - f(t)) / ε` is exposed separately so that it can serve
//! as an independent cross-check. The conformable integral integrates against
//! the measure `d^α x = x^{α-1} dx`.
//!
//! All operators are restricted to `t > 0`.

pub mod quadrature;

use crate::error::{Error, Result};

pub use quadrature::{GaussLaguerre, GaussLegendre, QuadratureScheme, QuadratureSpec};

/// Conformable order, `0 < α ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub const ONE: Alpha = Alpha(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value <= 1.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }

    /// `x^α` for `x ≥ 0`, exact at `α = 1`.
    #[inline]
    pub fn pow(self, x: f64) -> f64 {
        if self.is_classical() {
            x
        } else {
            x.powf(self.0)
        }
    }

    /// `t^{1-α}`, exactly one at `α = 1`.
    #[inline]
    fn pow_one_minus(self, t: f64) -> f64 {
        if self.is_classical() {
            1.0
        } else {
            t.powf(1.0 - self.0)
        }
    }

    /// Inverse of [`Alpha::pow`]: `y^{1/α}`.
    #[inline]
    pub fn root(self, y: f64) -> f64 {
        if self.is_classical() {
            y
        } else {
            y.powf(1.0 / self.0)
        }
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Alpha::new(value)
    }
}

/// A real function of one positive variable, optionally carrying its analytic
/// first and second classical derivatives.
///
/// Operators fall back to central finite differences for any derivative that
/// is not supplied.
pub trait Differentiable {
    fn eval(&self, t: f64) -> f64;

    fn first(&self, _t: f64) -> Option<f64> {
        None
    }

    fn second(&self, _t: f64) -> Option<f64> {
        None
    }
}

impl<F: Fn(f64) -> f64> Differentiable for F {
    fn eval(&self, t: f64) -> f64 {
        self(t)
    }
}

type RealFn<'a> = Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>;

/// Closure-backed [`Differentiable`].
///
/// ```
/// use conformable_hydrogen::calculus::{conf_derivative, Alpha, Function};
///
/// let f = Function::new(|t: f64| t * t).with_first(|t| 2.0 * t);
/// let d = conf_derivative(&f, Alpha::new(0.5).unwrap(), 4.0).unwrap();
/// assert!((d - 16.0).abs() < 1e-12);
/// ```
pub struct Function<'a> {
    value: RealFn<'a>,
    first: Option<RealFn<'a>>,
    second: Option<RealFn<'a>>,
}

impl<'a> Function<'a> {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'a) -> Self {
        Function {
            value: Box::new(f),
            first: None,
            second: None,
        }
    }

    pub fn with_first(mut self, df: impl Fn(f64) -> f64 + Send + Sync + 'a) -> Self {
        self.first = Some(Box::new(df));
        self
    }

    pub fn with_second(mut self, d2f: impl Fn(f64) -> f64 + Send + Sync + 'a) -> Self {
        self.second = Some(Box::new(d2f));
        self
    }
}

impl Differentiable for Function<'_> {
    fn eval(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    fn first(&self, t: f64) -> Option<f64> {
        self.first.as_ref().map(|df| df(t))
    }

    fn second(&self, t: f64) -> Option<f64> {
        self.second.as_ref().map(|d2f| d2f(t))
    }
}

/// Hides any analytic derivatives of the wrapped function so that every
/// operator takes the finite-difference path.
pub struct ValueOnly<'a, D: ?Sized>(pub &'a D);

impl<D: Differentiable + ?Sized> Differentiable for ValueOnly<'_, D> {
    fn eval(&self, t: f64) -> f64 {
        self.0.eval(t)
    }
}

fn check_positive(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("t", t, "t > 0"))
    }
}

fn finite(value: f64, at: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Evaluation { at })
    }
}

fn probe<D: Differentiable + ?Sized>(f: &D, t: f64) -> Result<f64> {
    finite(f.eval(t), t)
}

/// Central-difference first derivative with relative step `t·ε^{1/3}`.
pub fn finite_difference_first<D: Differentiable + ?Sized>(f: &D, t: f64) -> Result<f64> {
    check_positive(t)?;
    let step = t * f64::EPSILON.cbrt();
    let (lo, hi) = (t - step, t + step);
    let h = (hi - lo) / 2.0;
    Ok((probe(f, hi)? - probe(f, lo)?) / (2.0 * h))
}

/// Central-difference second derivative with relative step `t·ε^{1/4}`.
pub fn finite_difference_second<D: Differentiable + ?Sized>(f: &D, t: f64) -> Result<f64> {
    check_positive(t)?;
    let step = t * f64::EPSILON.powf(0.25);
    let (lo, hi) = (t - step, t + step);
    let h = (hi - lo) / 2.0;
    Ok((probe(f, hi)? - 2.0 * probe(f, t)? + probe(f, lo)?) / (h * h))
}

fn classical_first<D: Differentiable + ?Sized>(f: &D, t: f64) -> Result<f64> {
    match f.first(t) {
        Some(d) => finite(d, t),
        None => finite_difference_first(f, t),
    }
}

fn classical_second<D: Differentiable + ?Sized>(f: &D, t: f64) -> Result<f64> {
    match f.second(t) {
        Some(d) => finite(d, t),
        None => finite_difference_second(f, t),
    }
}

/// Conformable derivative `t^{1-α} f'(t)`.
pub fn conf_derivative<D: Differentiable + ?Sized>(f: &D, alpha: Alpha, t: f64) -> Result<f64> {
    check_positive(t)?;
    let d1 = classical_first(f, t)?;
    Ok(alpha.pow_one_minus(t) * d1)
}

/// Difference quotient `(f(t + ε t^{1-α}) - f(t)) / ε` of the limit definition.
pub fn conf_derivative_limit<D: Differentiable + ?Sized>(
    f: &D,
    alpha: Alpha,
    t: f64,
    epsilon: f64,
) -> Result<f64> {
    check_positive(t)?;
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain("epsilon", epsilon, "epsilon > 0"));
    }
    let shifted = t + epsilon * alpha.pow_one_minus(t);
    Ok((probe(f, shifted)? - probe(f, t)?) / epsilon)
}

/// Iterated conformable derivative `T_α T_α f(t)`, expanded as
/// `(1-α) t^{1-2α} f'(t) + t^{2-2α} f''(t)`.
pub fn conf_second_derivative<D: Differentiable + ?Sized>(
    f: &D,
    alpha: Alpha,
    t: f64,
) -> Result<f64> {
    check_positive(t)?;
    let a = alpha.value();
    let d2 = classical_second(f, t)?;
    if alpha.is_classical() {
        return Ok(d2);
    }
    let d1 = classical_first(f, t)?;
    Ok((1.0 - a) * t.powf(1.0 - 2.0 * a) * d1 + t.powf(2.0 - 2.0 * a) * d2)
}

/// Conformable integral `∫_a^b f(x) x^{α-1} dx`; `b` may be `f64::INFINITY`.
///
/// The integral is evaluated on the substituted axis `u = x^α/α`, where the
/// measure becomes `du` and the endpoint singularity at zero disappears.
/// Each call evaluates the rule at `node_count` and `2·node_count` nodes and
/// returns the refined estimate; a disagreement larger than
/// `quad.rel_tolerance` is reported as [`Error::Convergence`].
///
/// Improper integrals use Gauss–Laguerre on `u ∈ [u_a, ∞)` scaled by
/// `quad.decay_rate`, or Gauss–Legendre up to `truncation_radius` when that
/// scheme is selected. The truncated variant ignores the tail beyond the
/// radius: for an integrand bounded by `C e^{-β u}` the neglected part is at
/// most `C e^{-β u_R}/β`.
pub fn conf_integral<F>(f: F, alpha: Alpha, a: f64, b: f64, quad: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::domain("a", a, "a >= 0"));
    }
    if b.is_nan() || b <= a {
        return Err(Error::domain("b", b, "b > a"));
    }
    quad.validate()?;

    let lower = substituted(alpha, a);
    let integrand = |u: f64| f(alpha.root(alpha.value() * u));

    let estimate =
        |nodes: usize| -> Result<(f64, f64)> {
            if b.is_infinite() {
                match quad.scheme {
                    QuadratureScheme::GaussLaguerre => Ok(GaussLaguerre::cached(nodes)
                        .integrate_from(lower, quad.decay_rate, &integrand)),
                    QuadratureScheme::GaussLegendre => {
                        let radius = quad.truncation_radius.ok_or_else(|| {
                            Error::InvalidInput(
                                "Gauss-Legendre on an infinite interval needs a truncation radius"
                                    .into(),
                            )
                        })?;
                        let upper = substituted(alpha, radius);
                        if upper <= lower {
                            return Err(Error::domain("truncation_radius", radius, "radius > a"));
                        }
                        Ok(GaussLegendre::cached(nodes).integrate(lower, upper, &integrand))
                    }
                }
            } else {
                let upper = substituted(alpha, b);
                Ok(GaussLegendre::cached(nodes).integrate(lower, upper, &integrand))
            }
        };

    let (coarse, _) = estimate(quad.node_count)?;
    let (refined, magnitude) = estimate(2 * quad.node_count)?;
    if !coarse.is_finite() || !refined.is_finite() {
        return Err(Error::Evaluation { at: f64::NAN });
    }
    let scale = magnitude.max(f64::MIN_POSITIVE);
    if (coarse - refined).abs() > quad.rel_tolerance * scale {
        return Err(Error::Convergence { coarse, refined });
    }
    Ok(refined)
}

#[inline]
fn substituted(alpha: Alpha, x: f64) -> f64 {
    alpha.pow(x) / alpha.value()
}
