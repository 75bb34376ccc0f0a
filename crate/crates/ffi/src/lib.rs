//! C ABI over `qlattice`.
//!
//! Every fallible entry point returns a [`QlStatus`]. On anything other than
//! `QL_STATUS_OK` a message is stored for the calling thread and can be read with
//! [`ql_last_error`]. Objects are handed out as opaque pointers and must be released
//! with their matching `*_free` function. Strings returned through `char **` are owned
//! by the caller and released with [`ql_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qlattice::cli;
use qlattice::equilibration::{heisenberg_chain, SpectralSystem};
use qlattice::fermions::{jordan_wigner, FermionPolynomial, ModeOrdering};
use qlattice::spectral::{find_doublers, quasi_energy, DEFAULT_THRESHOLD};
use qlattice::walk::{build_preset, CoinedWalk, Preset, PresetParams};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ComputationFailed = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

/// A coined quantum walk.
pub struct QlWalk(CoinedWalk);

/// A diagonalized Hamiltonian.
pub struct QlSystem(SpectralSystem);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(QlStatus, String);

impl Failure {
    fn invalid(msg: impl ToString) -> Self {
        Failure(QlStatus::InvalidArgument, msg.to_string())
    }

    fn failed(msg: impl ToString) -> Self {
        Failure(QlStatus::ComputationFailed, msg.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QlStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(QlStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    non_null(p, name)?;
    CStr::from_ptr(p).to_str().map_err(|_| Failure::invalid(format!("{name} is not UTF-8")))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| Failure::failed("output contains a NUL byte"))
}

unsafe fn write_slice(values: &[f64], out: *mut f64, capacity: usize) -> Result<(), Failure> {
    if values.len() > capacity {
        return Err(Failure(
            QlStatus::BufferTooSmall,
            format!("{} values do not fit in a buffer of {capacity}", values.len()),
        ));
    }
    non_null(out, "out")?;
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn ql_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ql_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ql_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a preset walk by name (`dirac1d`, `weyl3d_right`, ...).
/// `extents` may be null for the preset's default lattice.
///
/// # Safety
/// `name` must be a NUL-terminated string, `extents` must point to `n_extents`
/// values when non-null, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_walk_preset(
    name: *const c_char,
    mass: f64,
    spacing: f64,
    extents: *const usize,
    n_extents: usize,
    out: *mut *mut QlWalk,
) -> QlStatus {
    guard(|| {
        non_null(out, "out")?;
        let preset: Preset = text(name, "name")?.parse().map_err(Failure::invalid)?;
        let mut params = PresetParams::new(mass, spacing);
        if !extents.is_null() {
            params = params.with_extents(std::slice::from_raw_parts(extents, n_extents).to_vec());
        }
        let walk = build_preset(preset, &params).map_err(Failure::invalid)?;
        *out = Box::into_raw(Box::new(QlWalk(walk)));
        Ok(())
    })
}

/// Releases a walk. Null is ignored.
///
/// # Safety
/// `walk` must come from [`ql_walk_preset`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ql_walk_free(walk: *mut QlWalk) {
    if !walk.is_null() {
        drop(Box::from_raw(walk));
    }
}

/// Spatial dimension of the walk, or 0 for null.
///
/// # Safety
/// `walk` must be null or a live walk.
#[no_mangle]
pub unsafe extern "C" fn ql_walk_dims(walk: *const QlWalk) -> usize {
    walk.as_ref().map_or(0, |w| w.0.dims())
}

/// Coin dimension of the walk, or 0 for null.
///
/// # Safety
/// `walk` must be null or a live walk.
#[no_mangle]
pub unsafe extern "C" fn ql_walk_coin_dim(walk: *const QlWalk) -> usize {
    walk.as_ref().map_or(0, |w| w.0.coin_dim())
}

/// Quasi-energies at momentum `p` (length `dims`), written ascending into `out`.
/// `capacity` must be at least the coin dimension.
///
/// # Safety
/// `walk` must be live, `p` must point to `n_p` values and `out` to `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn ql_walk_quasi_energy(
    walk: *const QlWalk,
    p: *const f64,
    n_p: usize,
    out: *mut f64,
    capacity: usize,
) -> QlStatus {
    guard(|| {
        non_null(walk, "walk")?;
        non_null(p, "p")?;
        let w = &(*walk).0;
        if n_p != w.dims() {
            return Err(Failure::invalid(format!("momentum has {n_p} components, walk has {} dims", w.dims())));
        }
        let mut e = quasi_energy(w, std::slice::from_raw_parts(p, n_p));
        e.sort_by(f64::total_cmp);
        write_slice(&e, out, capacity)
    })
}

/// Number of doublers on a `grid`-point-per-axis scan. A non-positive threshold
/// selects the default of `0.05 / a`.
///
/// # Safety
/// `walk` must be live and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_walk_count_doublers(
    walk: *const QlWalk,
    threshold: f64,
    grid: usize,
    count: *mut usize,
) -> QlStatus {
    guard(|| {
        non_null(walk, "walk")?;
        non_null(count, "count")?;
        let w = &(*walk).0;
        let threshold = if threshold > 0.0 { threshold } else { DEFAULT_THRESHOLD / w.spacing() };
        *count = find_doublers(w, threshold, grid).map_err(Failure::invalid)?.count();
        Ok(())
    })
}

/// Random-coupling Heisenberg chain of `spins` spins.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_heisenberg_chain(spins: usize, seed: u64, out: *mut *mut QlSystem) -> QlStatus {
    guard(|| {
        non_null(out, "out")?;
        let sys = heisenberg_chain(spins, seed).map_err(Failure::invalid)?;
        *out = Box::into_raw(Box::new(QlSystem(sys)));
        Ok(())
    })
}

/// Releases a system. Null is ignored.
///
/// # Safety
/// `sys` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ql_system_free(sys: *mut QlSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Hilbert-space dimension, or 0 for null.
///
/// # Safety
/// `sys` must be null or a live system.
#[no_mangle]
pub unsafe extern "C" fn ql_system_dimension(sys: *const QlSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.0.dimension())
}

/// Ascending eigenvalues, with multiplicity.
///
/// # Safety
/// `sys` must be live and `out` must hold `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn ql_system_energies(sys: *const QlSystem, out: *mut f64, capacity: usize) -> QlStatus {
    guard(|| {
        non_null(sys, "sys")?;
        write_slice((*sys).0.energies(), out, capacity)
    })
}

/// Jordan–Wigner image of a fermion polynomial under the linear ordering of `modes`
/// modes (0 means just enough for the expression). The result is one `re,im,paulis`
/// line per term.
///
/// # Safety
/// `expr` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_jordan_wigner(expr: *const c_char, modes: usize, out: *mut *mut c_char) -> QlStatus {
    guard(|| {
        non_null(out, "out")?;
        let poly: FermionPolynomial = text(expr, "expr")?.parse().map_err(Failure::invalid)?;
        let needed = poly.modes().last().map_or(1, |m| m + 1);
        let image = jordan_wigner(&poly, &ModeOrdering::linear(modes.max(needed))).map_err(Failure::invalid)?;
        *out = to_c_string(image.to_string())?;
        Ok(())
    })
}

/// Runs a command-line invocation (`argv[0]` is the program name) and returns its
/// full report. Invalid arguments give `QL_STATUS_INVALID_ARGUMENT`; a report whose
/// checks fail is still written to `out` and gives `QL_STATUS_COMPUTATION_FAILED`.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_run(argc: usize, argv: *const *const c_char, out: *mut *mut c_char) -> QlStatus {
    guard(|| {
        non_null(out, "out")?;
        non_null(argv, "argv")?;
        *out = ptr::null_mut();
        let args = std::slice::from_raw_parts(argv, argc)
            .iter()
            .map(|&a| text(a, "argv").map(str::to_owned))
            .collect::<Result<Vec<_>, _>>()?;
        let inv = cli::parse(args).map_err(Failure::invalid)?;
        let (report, failures) = cli::execute(&inv.config).map_err(Failure::failed)?;
        *out = to_c_string(report)?;
        if failures.is_empty() {
            Ok(())
        } else {
            Err(Failure::failed(failures.join("; ")))
        }
    })
}
