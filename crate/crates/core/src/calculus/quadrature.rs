//! Gauss–Legendre and Gauss–Laguerre rules.
//!
//! Gauss–Legendre rules come from `gauss-quad`. Gauss–Laguerre nodes are located by Sturm-sequence bisection on the
//! Jacobi matrix and polished by Newton steps; the weights are stored
//! pre-multiplied by `e^{x_i}` and computed in log space, so that rules with
//! hundreds of nodes keep full relative accuracy in the far tail.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureScheme {
    /// Gauss–Legendre on the substituted axis `u = x^α/α`.
    GaussLegendre,
    /// Gauss–Laguerre on the substituted axis `u = x^α/α`.
    GaussLaguerre,
}

/// Quadrature configuration for [`conf_integral`](super::conf_integral).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub node_count: usize,
    pub scheme: QuadratureScheme,
    /// Upper cutoff for Gauss–Legendre on an infinite interval, in the
    /// original variable `x`.
    pub truncation_radius: Option<f64>,
    /// Exponential rate `β` of the integrand in `u`; Gauss–Laguerre is applied
    /// to `t = β (u - u_a)`. Matching `β` to the integrand makes the rule
    /// exact for polynomial-times-exponential integrands.
    pub decay_rate: f64,
    /// Maximum disagreement between the `N` and `2N` node estimates, relative
    /// to `∫|f| d^α x`.
    pub rel_tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::laguerre(128)
    }
}

impl QuadratureSpec {
    pub const DEFAULT_TOLERANCE: f64 = 1e-9;

    pub fn laguerre(node_count: usize) -> Self {
        QuadratureSpec {
            node_count,
            scheme: QuadratureScheme::GaussLaguerre,
            truncation_radius: None,
            decay_rate: 1.0,
            rel_tolerance: Self::DEFAULT_TOLERANCE,
        }
    }

    pub fn legendre(node_count: usize) -> Self {
        QuadratureSpec {
            node_count,
            scheme: QuadratureScheme::GaussLegendre,
            truncation_radius: None,
            decay_rate: 1.0,
            rel_tolerance: Self::DEFAULT_TOLERANCE,
        }
    }

    pub fn with_truncation_radius(mut self, radius: f64) -> Self {
        self.truncation_radius = Some(radius);
        self
    }

    pub fn with_decay_rate(mut self, rate: f64) -> Self {
        self.decay_rate = rate;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.rel_tolerance = tol;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.node_count < 2 {
            return Err(Error::InvalidInput(format!(
                "node_count must be at least 2, got {}",
                self.node_count
            )));
        }
        if let Some(r) = self.truncation_radius {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::domain("truncation_radius", r, "radius > 0"));
            }
        }
        if !(self.decay_rate.is_finite() && self.decay_rate > 0.0) {
            return Err(Error::domain("decay_rate", self.decay_rate, "rate > 0"));
        }
        if self.rel_tolerance.is_nan() || self.rel_tolerance < 0.0 {
            return Err(Error::domain(
                "rel_tolerance",
                self.rel_tolerance,
                "tol >= 0",
            ));
        }
        Ok(())
    }
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let degree = NonZeroUsize::new(n).expect("Gauss-Legendre needs at least one node");
        let mut pairs: Vec<(f64, f64)> = gauss_quad::GaussLegendre::new(degree)
            .iter()
            .copied()
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        GaussLegendre { nodes, weights }
    }

    /// Shared instance for `n` nodes.
    pub fn cached(n: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(GaussLegendre::new(n)))
            .clone()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Returns `(∫_a^b f, ∫_a^b |f|)`.
    pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(&self, a: f64, b: f64, f: &F) -> (f64, f64) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let term = w * f(mid + half * x);
            sum += term;
            abs += term.abs();
        }
        (sum * half, abs * half.abs())
    }
}

/// Gauss–Laguerre rule for `∫_0^∞ e^{-x} g(x) dx`, stored with scaled weights
/// `w_i e^{x_i}` so that `∫_0^∞ f(x) dx ≈ Σ_i (w_i e^{x_i}) f(x_i)`.
#[derive(Debug, Clone)]
pub struct GaussLaguerre {
    nodes: Vec<f64>,
    scaled_weights: Vec<f64>,
}

impl GaussLaguerre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Laguerre needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut scaled_weights = Vec::with_capacity(n);
        let upper = 4.0 * n as f64 + 2.0;
        for k in 0..n {
            let mut x = laguerre_eigenvalue(n, k, upper);
            for _ in 0..3 {
                let (ln, ln1, _) = scaled_laguerre(n, x);
                let denom = n as f64 * (ln.0 - ln1.0);
                if denom == 0.0 || !denom.is_finite() {
                    break;
                }
                let dx = x * ln.0 / denom;
                if !dx.is_finite() || dx.abs() > 1e-6 * x {
                    break;
                }
                x -= dx;
            }
            // w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2)
            let (_, _, next) = scaled_laguerre(n, x);
            let log_next = next.0.abs().ln() + next.1;
            let log_w = x.ln() - 2.0 * ((n + 1) as f64).ln() - 2.0 * log_next;
            nodes.push(x);
            scaled_weights.push((log_w + x).exp());
        }
        GaussLaguerre {
            nodes,
            scaled_weights,
        }
    }

    pub fn cached(n: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLaguerre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(GaussLaguerre::new(n)))
            .clone()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights `w_i` of the rule against `e^{-x}`; underflows to zero for the
    /// outermost nodes of large rules.
    pub fn weights(&self) -> Vec<f64> {
        self.nodes
            .iter()
            .zip(&self.scaled_weights)
            .map(|(&x, &w)| w * (-x).exp())
            .collect()
    }

    pub fn scaled_weights(&self) -> &[f64] {
        &self.scaled_weights
    }

    /// Returns `(∫_a^∞ f, ∫_a^∞ |f|)` using the substitution `t = rate·(u - a)`.
    pub fn integrate_from<F: Fn(f64) -> f64 + ?Sized>(
        &self,
        a: f64,
        rate: f64,
        f: &F,
    ) -> (f64, f64) {
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.scaled_weights) {
            let value = f(a + x / rate);
            // far-tail nodes of decaying integrands
            if value == 0.0 {
                continue;
            }
            let term = w * value;
            sum += term;
            abs += term.abs();
        }
        (sum / rate, abs / rate)
    }
}

/// k-th smallest eigenvalue of the Laguerre Jacobi matrix
/// (diagonal `2j+1`, off-diagonal `j`), by Sturm-count bisection.
fn laguerre_eigenvalue(n: usize, k: usize, upper: f64) -> f64 {
    let count_below = |x: f64| -> usize {
        let mut count = 0;
        let mut d = 1.0 - x;
        if d < 0.0 {
            count += 1;
        }
        for j in 1..n {
            let b = j as f64;
            let denom = if d == 0.0 {
                f64::EPSILON * (b + 1.0)
            } else {
                d
            };
            d = (2.0 * j as f64 + 1.0 - x) - b * b / denom;
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    let (mut lo, mut hi) = (0.0, upper);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `(L_n, L_{n-1}, L_{n+1})` at `x`, each as `(mantissa, log_scale)` with
/// value `mantissa · e^{log_scale}`.
fn scaled_laguerre(n: usize, x: f64) -> ((f64, f64), (f64, f64), (f64, f64)) {
    const LIMIT: f64 = 1e150;
    let mut prev = 1.0; // L_0
    let mut cur = 1.0 - x; // L_1
    let mut log_scale = 0.0;
    if n == 0 {
        return ((1.0, 0.0), (0.0, 0.0), (cur, 0.0));
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        let m = cur.abs().max(prev.abs());
        if m > LIMIT {
            prev /= m;
            cur /= m;
            log_scale += m.ln();
        }
    }
    let nf = n as f64;
    let next = ((2.0 * nf + 1.0 - x) * cur - nf * prev) / (nf + 1.0);
    ((cur, log_scale), (prev, log_scale), (next, log_scale))
}
