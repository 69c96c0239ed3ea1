//! Conformable-derivative Schrödinger equation for the hydrogen atom.
//!
//! The crate evaluates the closed-form bound states of the hydrogen atom when
//! the ordinary derivative is replaced by the conformable derivative
//! `T_α f(t) = t^{1-α} f'(t)`, and certifies every step numerically:
//!
//! * [`calculus`]: conformable derivative, its limit quotient, the iterated
//!   derivative, and the conformable integral `∫ f(x) x^{α-1} dx`.
//! * [`special`]: classical and conformable associated Laguerre and Legendre
//!   functions, including a Rodrigues-formula oracle.
//! * [`hydrogen`]: radial and angular wavefunctions, α-energy levels,
//!   α-probability densities, and the closed-form tables for low-lying states.
//! * [`verification`]: ODE residuals, normalization, integral identities and
//!   the classical (α = 1) limit, bundled into a pass/fail suite.
//! * [`cli`]: the table/CSV/JSON emitters behind the `conformable-hydrogen`
//!   binary.
//!
//! ```
//! use conformable_hydrogen::{Alpha, ModelParams, QuantumNumbers};
//! use conformable_hydrogen::hydrogen::radial_wavefunction;
//!
//! let params = ModelParams::natural(Alpha::new(1.0).unwrap());
//! let qn = QuantumNumbers::new(1, 0, 0).unwrap();
//! let r = 0.5;
//! let value = radial_wavefunction(qn, &params, r).unwrap();
//! assert!((value - 2.0 * (-r).exp()).abs() < 1e-14);
//! ```

pub mod calculus;
pub mod cli;
pub mod error;
pub mod hydrogen;
pub mod special;
pub mod verification;

pub use calculus::{Alpha, Differentiable, Function, QuadratureScheme, QuadratureSpec};
pub use error::{Error, Result};
pub use hydrogen::{DensityCurve, ModelParams, QuantumNumbers, ScaledRadialProblem, UnitMode};
pub use special::{LaguerreParams, LegendreParams};
