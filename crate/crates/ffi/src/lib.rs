//! C interface to `conformable-hydrogen`.
//!
//! Every function returns a [`ChStatus`] and delivers results through
//! out-pointers, which are written only on success. Model parameters live
//! behind an opaque [`ChModel`] handle created by [`ch_model_new_natural`] or
//! [`ch_model_new_physical`] and released with [`ch_model_free`].
//!
//! After a failure, [`ch_last_error_message`] returns a description that
//! stays valid until the next failing call on the same thread. Panics never
//! cross the boundary; they are reported as [`ChStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use conformable_hydrogen::calculus::Alpha;
use conformable_hydrogen::hydrogen::{
    energy_level, full_wavefunction, probability_density_radial, radial_wavefunction,
};
use conformable_hydrogen::special::{conf_laguerre, conf_legendre};
use conformable_hydrogen::verification::{self, normalization_report, Level};
use conformable_hydrogen::{Error, LaguerreParams, LegendreParams, ModelParams, QuantumNumbers};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// An argument lies outside the domain of the function.
    Domain = 3,
    /// Non-finite evaluation or unconverged quadrature.
    Numerical = 4,
    /// The verification suite ran and at least one check failed.
    VerificationFailed = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChLevel {
    Quick = 0,
    Full = 1,
}

/// Opaque model parameters: conformable order and α-Bohr radius.
pub struct ChModel {
    params: ModelParams,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure {
    status: ChStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain { .. } => ChStatus::Domain,
            Error::Evaluation { .. } | Error::Convergence { .. } => ChStatus::Numerical,
            Error::UnsupportedDegree { .. }
            | Error::InvalidAlpha(_)
            | Error::InvalidQuantumNumbers { .. }
            | Error::InvalidInput(_) => ChStatus::InvalidArgument,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn null(what: &str) -> Failure {
    Failure {
        status: ChStatus::NullPointer,
        message: format!("{what} is null"),
    }
}

fn remember(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ChStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ChStatus::Ok,
        Ok(Err(f)) => {
            remember(&f.message);
            f.status
        }
        Err(payload) => {
            let detail = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            remember(&format!("internal panic: {detail}"));
            ChStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn model<'a>(handle: *const ChModel) -> Result<&'a ChModel, Failure> {
    handle.as_ref().ok_or_else(|| null("model"))
}

/// Message describing the most recent failure on this thread; empty if none.
#[no_mangle]
pub extern "C" fn ch_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ch_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a natural-unit model (`r_b^α = 1`).
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn ch_model_new_natural(alpha: f64, out: *mut *mut ChModel) -> ChStatus {
    guard(|| {
        let params = ModelParams::natural(Alpha::new(alpha)?);
        if out.is_null() {
            return Err(null("out"));
        }
        write(out, Box::into_raw(Box::new(ChModel { params })), "out")
    })
}

/// Creates a physical-unit model with α-Bohr radius `r_b_alpha`.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn ch_model_new_physical(
    alpha: f64,
    r_b_alpha: f64,
    out: *mut *mut ChModel,
) -> ChStatus {
    guard(|| {
        let params = ModelParams::physical(Alpha::new(alpha)?, r_b_alpha)?;
        if out.is_null() {
            return Err(null("out"));
        }
        write(out, Box::into_raw(Box::new(ChModel { params })), "out")
    })
}

/// Releases a model; null is ignored.
///
/// # Safety
/// `model` must be null or a handle from a `ch_model_new_*` function that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn ch_model_free(model: *mut ChModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// `model` must be a live handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ch_model_alpha(model: *const ChModel, out: *mut f64) -> ChStatus {
    guard(|| write(out, self::model(model)?.params.alpha.value(), "out"))
}

/// α-energy level `E^α` in eV.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ch_energy_level(n: u32, alpha: f64, out: *mut f64) -> ChStatus {
    guard(|| write(out, energy_level(n, Alpha::new(alpha)?)?, "out"))
}

/// Radial wavefunction `R_{nℓα}(r^α)`.
///
/// # Safety
/// `model` must be a live handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ch_radial(
    model: *const ChModel,
    n: u32,
    l: u32,
    r: f64,
    out: *mut f64,
) -> ChStatus {
    guard(|| {
        let m = self::model(model)?;
        let qn = QuantumNumbers::radial(n, l)?;
        write(out, radial_wavefunction(qn, &m.params, r)?, "out")
    })
}

/// Full wavefunction `ψ_{nℓmα}(r, θ, φ)` as real and imaginary parts.
///
/// # Safety
/// `model` must be a live handle; `out_re` and `out_im` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ch_wavefunction(
    model: *const ChModel,
    n: u32,
    l: u32,
    m: i32,
    r: f64,
    theta: f64,
    phi: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ChStatus {
    guard(|| {
        let handle = self::model(model)?;
        if out_re.is_null() || out_im.is_null() {
            return Err(null("output"));
        }
        let qn = QuantumNumbers::new(n, l, m)?;
        let psi = full_wavefunction(qn, &handle.params, r, theta, phi)?;
        write(out_re, psi.re, "out_re")?;
        write(out_im, psi.im, "out_im")
    })
}

/// α-probability density `r^{2α}|R|²` at `len` strictly increasing radii.
///
/// # Safety
/// `model` must be a live handle; `grid` readable and `out` writable for
/// `len` values.
#[no_mangle]
pub unsafe extern "C" fn ch_density(
    model: *const ChModel,
    n: u32,
    l: u32,
    grid: *const f64,
    len: usize,
    out: *mut f64,
) -> ChStatus {
    guard(|| {
        let handle = self::model(model)?;
        if grid.is_null() {
            return Err(null("grid"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let qn = QuantumNumbers::radial(n, l)?;
        let radii = std::slice::from_raw_parts(grid, len);
        let curve = probability_density_radial(qn, &handle.params, radii)?;
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(&curve.values);
        Ok(())
    })
}

/// Conformable associated Laguerre function `L^m_{sα}(x^α/α)`.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ch_conf_laguerre(
    degree: u32,
    order: u32,
    alpha: f64,
    x: f64,
    out: *mut f64,
) -> ChStatus {
    guard(|| {
        let value = conf_laguerre(LaguerreParams::new(degree, order), Alpha::new(alpha)?, x)?;
        write(out, value, "out")
    })
}

/// Conformable associated Legendre function `P^{mα}_{ℓα}(cos θ^α)`.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ch_conf_legendre(
    l: u32,
    m: i32,
    alpha: f64,
    theta: f64,
    out: *mut f64,
) -> ChStatus {
    guard(|| {
        let value = conf_legendre(LegendreParams::new(l, m)?, Alpha::new(alpha)?, theta)?;
        write(out, value, "out")
    })
}

/// Normalization integral `∫ r^{2α}|R|² d^α r` (one for a correct state).
///
/// # Safety
/// `model` must be a live handle; `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ch_normalization(
    model: *const ChModel,
    n: u32,
    l: u32,
    out: *mut f64,
) -> ChStatus {
    guard(|| {
        let handle = self::model(model)?;
        let qn = QuantumNumbers::radial(n, l)?;
        write(out, normalization_report(qn, &handle.params)?, "out")
    })
}

/// Runs the verification suite. Returns [`ChStatus::VerificationFailed`]
/// when any check fails; the counts are written in either case.
///
/// # Safety
/// `checks_run` and `checks_failed` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn ch_verify(
    level: ChLevel,
    checks_run: *mut usize,
    checks_failed: *mut usize,
) -> ChStatus {
    guard(|| {
        if checks_run.is_null() || checks_failed.is_null() {
            return Err(null("output"));
        }
        let level = match level {
            ChLevel::Quick => Level::Quick,
            ChLevel::Full => Level::Full,
        };
        let report = verification::run(level, None);
        write(checks_run, report.checks_run, "checks_run")?;
        write(checks_failed, report.checks_failed, "checks_failed")?;
        let first = report.failures().next().map(|c| c.name.clone());
        match first {
            None => Ok(()),
            Some(name) => Err(Failure {
                status: ChStatus::VerificationFailed,
                message: format!("{} checks failed, first: {name}", report.checks_failed),
            }),
        }
    })
}
