//! C ABI over the `extremal` crate.
//!
//! Every function returns an [`ExtStatus`]. On failure a message is kept per
//! thread and can be read with [`ext_last_error_message`]. Handles are opaque
//! and must be released with their `_free` function; strings returned by the
//! library are released with [`ext_string_free`]. Panics never cross the
//! boundary: they are reported as `EXT_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use extremal::burgers::{drifted_potential, hopf_cole_potential};
use extremal::harness::{parse_configs, report::report_json, run_experiment};
use extremal::hull::extremal::{extremal_inferior_times, extremal_superior_times};
use extremal::hull::hausdorff::hausdorff_distance;
use extremal::hull::{concave_majorant_of_path, MajorantPL, Side};
use extremal::path::diffusion::simulate_brownian;
use extremal::path::levy::{simulate_bv_levy, simulate_compound_poisson, LevyMeasureSpec};
use extremal::path::{Grid, Horizon, Path};
use extremal::sticky::oracle::verify_discrete_theorem;
use extremal::{Error, RngStream};

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidSpec = 3,
    InvalidParameter = 4,
    ContractViolation = 5,
    OutOfHorizon = 6,
    SimulationFailure = 7,
    UndefinedDistance = 8,
    DegenerateInput = 9,
    StaleEvent = 10,
    UnknownExperiment = 11,
    MalformedConfig = 12,
    Io = 13,
    BufferTooSmall = 14,
    Panic = 15,
}

/// Side of a majorant slope query, passed as `int`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtSide {
    Left = 0,
    Right = 1,
}

/// Opaque path handle.
pub struct ExtPath(Path);

/// Opaque concave-majorant handle.
pub struct ExtMajorant(MajorantPL);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ExtStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidSpec(_) => ExtStatus::InvalidSpec,
            Error::InvalidParameter(_) => ExtStatus::InvalidParameter,
            Error::ContractViolation(_) => ExtStatus::ContractViolation,
            Error::OutOfHorizon { .. } => ExtStatus::OutOfHorizon,
            Error::SimulationFailure { .. } => ExtStatus::SimulationFailure,
            Error::UndefinedDistance(_) => ExtStatus::UndefinedDistance,
            Error::DegenerateInput(_) => ExtStatus::DegenerateInput,
            Error::StaleEvent(_) => ExtStatus::StaleEvent,
            Error::UnknownExperiment(_) => ExtStatus::UnknownExperiment,
            Error::MalformedConfig(_) => ExtStatus::MalformedConfig,
            Error::Io(_) => ExtStatus::Io,
        };
        Failure(code, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(ExtStatus::MalformedConfig, e.to_string())
    }
}

type FfiResult<T = ()> = Result<T, Failure>;

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> FfiResult) -> ExtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ExtStatus::Ok,
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            ExtStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ExtStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(ExtStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice_arg<'a>(p: *const f64, n: usize, what: &str) -> FfiResult<&'a [f64]> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or_else(|| null(what))
}

fn to_c_string(s: String) -> FfiResult<*mut c_char> {
    CString::new(s).map(CString::into_raw).map_err(|e| Failure(ExtStatus::InvalidUtf8, e.to_string()))
}

/// Copies `src` into `dst[..cap]`; `len` always receives `src.len()`.
unsafe fn fill(src: &[f64], dst: *mut f64, cap: usize, len: *mut usize) -> FfiResult {
    *out_arg(len, "len")? = src.len();
    if src.len() > cap {
        return Err(Failure(ExtStatus::BufferTooSmall, format!("need {} slots, got {cap}", src.len())));
    }
    if !src.is_empty() {
        if dst.is_null() {
            return Err(null("output buffer"));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), dst, src.len());
    }
    Ok(())
}

fn box_path(p: Path, out: *mut *mut ExtPath) -> FfiResult {
    let out = unsafe { out_arg(out, "out")? };
    *out = Box::into_raw(Box::new(ExtPath(p)));
    Ok(())
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn ext_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ext_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a path from its JSON form (`{"kind": "jump" | "grid" | "sampled", ...}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ext_path_from_json(json: *const c_char, out: *mut *mut ExtPath) -> ExtStatus {
    guard(|| {
        let p: Path = serde_json::from_str(str_arg(json, "json")?)?;
        box_path(p, out)
    })
}

/// Serializes a path to JSON; free the result with [`ext_string_free`].
///
/// # Safety
/// `path` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ext_path_to_json(path: *const ExtPath, out: *mut *mut c_char) -> ExtStatus {
    guard(|| {
        let p = ref_arg(path, "path")?;
        let s = serde_json::to_string(&p.0)?;
        *out_arg(out, "out")? = to_c_string(s)?;
        Ok(())
    })
}

/// # Safety
/// `path` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ext_path_free(path: *mut ExtPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Lévy path on `[t0, t1]` from a JSON measure. `epsilon > 0` truncates jumps
/// below `epsilon`; `epsilon <= 0` requires a finite measure.
///
/// # Safety
/// `measure_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ext_simulate_levy(
    measure_json: *const c_char,
    epsilon: f64,
    t0: f64,
    t1: f64,
    seed: u64,
    out: *mut *mut ExtPath,
) -> ExtStatus {
    guard(|| {
        let spec: LevyMeasureSpec = serde_json::from_str(str_arg(measure_json, "measure_json")?)?;
        let h = Horizon::new(t0, t1)?;
        let rng = RngStream::new(seed, 0);
        let p = if epsilon > 0.0 {
            simulate_bv_levy(&spec, epsilon, h, rng)?.path
        } else {
            simulate_compound_poisson(&spec, h, rng)?
        };
        box_path(Path::Jump(p), out)
    })
}

/// Brownian path on `steps` equal steps of `[t0, t1]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ext_simulate_brownian(t0: f64, t1: f64, steps: usize, seed: u64, out: *mut *mut ExtPath) -> ExtStatus {
    guard(|| {
        let g = Grid::over(Horizon::new(t0, t1)?, steps)?;
        box_path(Path::Grid(simulate_brownian(g, RngStream::new(seed, 0))), out)
    })
}

/// Concave majorant of `X*`.
///
/// # Safety
/// `path` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ext_majorant_of_path(path: *const ExtPath, out: *mut *mut ExtMajorant) -> ExtStatus {
    guard(|| {
        let p = ref_arg(path, "path")?;
        let (m, _) = concave_majorant_of_path(&p.0);
        *out_arg(out, "out")? = Box::into_raw(Box::new(ExtMajorant(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ext_majorant_free(m: *mut ExtMajorant) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Vertex abscissae and values. `len` receives the vertex count; when it
/// exceeds `cap` nothing is copied and `EXT_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `times` and `values` must hold `cap` doubles; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ext_majorant_vertices(
    m: *const ExtMajorant,
    times: *mut f64,
    values: *mut f64,
    cap: usize,
    len: *mut usize,
) -> ExtStatus {
    guard(|| {
        let m = &ref_arg(m, "majorant")?.0;
        fill(m.xs(), times, cap, len)?;
        fill(m.ys(), values, cap, len)
    })
}

/// One-sided slope of the majorant at `a`; `side` is an [`ExtSide`] value.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ext_majorant_slope(m: *const ExtMajorant, a: f64, side: c_int, out: *mut f64) -> ExtStatus {
    guard(|| {
        let m = &ref_arg(m, "majorant")?.0;
        let side = match side {
            s if s == ExtSide::Left as c_int => Side::Left,
            s if s == ExtSide::Right as c_int => Side::Right,
            s => return Err(Failure(ExtStatus::InvalidParameter, format!("unknown side {s}"))),
        };
        *out_arg(out, "out")? = m.slope_at(a, side)?;
        Ok(())
    })
}

/// Extremal superior times (`inferior == 0`) or inferior times (otherwise).
/// Buffer protocol as in [`ext_majorant_vertices`].
///
/// # Safety
/// `times` must hold `cap` doubles; `path` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ext_extremal_times(
    path: *const ExtPath,
    inferior: c_int,
    times: *mut f64,
    cap: usize,
    len: *mut usize,
) -> ExtStatus {
    guard(|| {
        let p = &ref_arg(path, "path")?.0;
        let e = if inferior == 0 { extremal_superior_times(p) } else { extremal_inferior_times(p) };
        fill(&e.times(), times, cap, len)
    })
}

/// Hausdorff distance between two sorted sets of reals.
///
/// # Safety
/// `a` and `b` must hold `na` and `nb` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ext_hausdorff(a: *const f64, na: usize, b: *const f64, nb: usize, out: *mut f64) -> ExtStatus {
    guard(|| {
        let d = hausdorff_distance(slice_arg(a, na, "a")?, slice_arg(b, nb, "b")?)?;
        *out_arg(out, "out")? = d;
        Ok(())
    })
}

/// Hopf–Cole potential `ψ(x, t)` for the initial potential `psi0` on a sorted x-grid.
///
/// # Safety
/// `xs` and `out` must hold `n` doubles; `psi0` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ext_hopf_cole(psi0: *const ExtPath, t: f64, xs: *const f64, n: usize, out: *mut f64) -> ExtStatus {
    guard(|| {
        let p = &ref_arg(psi0, "psi0")?.0;
        let xs = slice_arg(xs, n, "xs")?;
        let field = drifted_potential(p, t)?;
        let v = hopf_cole_potential(&field, xs)?;
        let mut len = 0;
        fill(&v, out, n, &mut len)
    })
}

/// Runs `n` unit-spaced sticky particles and sets `agrees` to 1 when the final
/// clumps match the majorant prediction.
///
/// # Safety
/// `velocities` must hold `n` doubles; `agrees` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ext_sticky_verify(velocities: *const f64, n: usize, agrees: *mut c_int) -> ExtStatus {
    guard(|| {
        let c = verify_discrete_theorem(slice_arg(velocities, n, "velocities")?)?;
        *out_arg(agrees, "agrees")? = c.agrees as c_int;
        Ok(())
    })
}

/// Runs one experiment config and returns its JSON report (free with
/// [`ext_string_free`]). `passed` receives 1 when every verdict passes.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ext_run_experiment_json(
    config_json: *const c_char,
    report_json_out: *mut *mut c_char,
    passed: *mut c_int,
) -> ExtStatus {
    guard(|| {
        let configs = parse_configs(str_arg(config_json, "config_json")?)?;
        let [config] = configs.as_slice() else {
            return Err(Failure(ExtStatus::MalformedConfig, "expected exactly one experiment config".into()));
        };
        let out = out_arg(report_json_out, "report_json_out")?;
        let passed = out_arg(passed, "passed")?;
        let r = run_experiment(config)?;
        *out = to_c_string(report_json(&r)?)?;
        *passed = r.passed as c_int;
        Ok(())
    })
}
