//! C ABI over the billiards library.
//!
//! Partitions are opaque handles. Every function returns a
//! [`BilliardsStatus`]; on failure a message is available from
//! [`billiards_last_error`] on the same thread. Strings returned through out
//! parameters are owned by the caller and released with
//! [`billiards_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use billiards::minkowski::phi_exact;
use billiards::partition::{load_partition, UnimodularPartition};
use billiards::spectral::{jsr_bounds, sigma_from_partition};
use billiards::symbolic::SymbolicWord;
use billiards::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BilliardsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    InvalidPartition = 4,
    IterationCap = 5,
    PrecisionLoss = 6,
    Arithmetic = 7,
    Internal = 8,
    Panic = 9,
}

/// Opaque partition handle.
pub struct BilliardsPartition(UnimodularPartition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BilliardsStatus {
    match e {
        Error::Parse(_)
        | Error::InvalidWord(_)
        | Error::InvalidParameter(_)
        | Error::UnknownPartition(_)
        | Error::NotAdmissible
        | Error::NotCyclicallyReduced
        | Error::Io(_)
        | Error::IndexOutOfRange(..)
        | Error::OutOfRange(..) => BilliardsStatus::InvalidInput,
        Error::TooFewVertices(_)
        | Error::DuplicateVertex(_)
        | Error::CyclicOrder(_)
        | Error::NonUnimodularGap { .. }
        | Error::NotUnimodularPair(..)
        | Error::NotIsotropic(_)
        | Error::ZeroVector => BilliardsStatus::InvalidPartition,
        Error::IterationCap(_) => BilliardsStatus::IterationCap,
        Error::PrecisionLoss { .. } => BilliardsStatus::PrecisionLoss,
        Error::Internal(_) => BilliardsStatus::Internal,
        _ => BilliardsStatus::Arithmetic,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), BilliardsStatus>) -> BilliardsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BilliardsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside the billiards library".into());
            BilliardsStatus::Panic
        }
    }
}

fn fail(e: Error) -> BilliardsStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> BilliardsStatus {
    set_error(format!("{what} is null"));
    BilliardsStatus::NullPointer
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, BilliardsStatus> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        BilliardsStatus::InvalidUtf8
    })
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_opt_str<'a>(s: *const c_char, what: &str) -> Result<Option<&'a str>, BilliardsStatus> {
    if s.is_null() {
        Ok(None)
    } else {
        read_str(s, what).map(Some)
    }
}

/// # Safety
/// `p` must be null or a handle from [`billiards_partition_load`].
unsafe fn handle<'a>(p: *const BilliardsPartition) -> Result<&'a UnimodularPartition, BilliardsStatus> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null("partition"))
}

/// # Safety
/// `out` must be null or valid for a write.
unsafe fn write<T>(out: *mut T, v: T, what: &str) -> Result<(), BilliardsStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

/// # Safety
/// `out` must be null or valid for a write.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), BilliardsStatus> {
    let c = CString::new(s).map_err(|_| {
        set_error("output contains a NUL byte".into());
        BilliardsStatus::Internal
    })?;
    write(out, c.into_raw(), "out")
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn billiards_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Loads a built-in partition by name or a partition JSON file by path.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn billiards_partition_load(
    source: *const c_char,
    out: *mut *mut BilliardsPartition,
) -> BilliardsStatus {
    guard(|| {
        let s = read_str(source, "source")?;
        let p = load_partition(s).map_err(fail)?;
        write(out, Box::into_raw(Box::new(BilliardsPartition(p))), "out")
    })
}

/// Releases a partition handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn billiards_partition_free(p: *mut BilliardsPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of vertices.
///
/// # Safety
/// `p` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn billiards_partition_size(p: *const BilliardsPartition, out: *mut usize) -> BilliardsStatus {
    guard(|| write(out, handle(p)?.size(), "out"))
}

/// Exact `Φ` of an admissible word `prefix:cycle` on `m` letters, written as
/// `num/den`.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn billiards_phi_exact(word: *const c_char, m: usize, out: *mut *mut c_char) -> BilliardsStatus {
    guard(|| {
        let w = SymbolicWord::parse(read_str(word, "word")?).map_err(fail)?;
        let q = phi_exact(&w, m).map_err(fail)?;
        write_string(out, billiards::arith::fmt_rational(&q))
    })
}

/// Orbit of a rational point (`triple`), a quadratic form (`form`) or a
/// carrier (`carrier`) as JSON. Exactly one of the three must be non-null;
/// each is three comma-separated integers.
///
/// # Safety
/// `p` must be a live handle, the strings null or NUL-terminated and `out`
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn billiards_orbit_json(
    p: *const BilliardsPartition,
    triple: *const c_char,
    form: *const c_char,
    carrier: *const c_char,
    max_steps: usize,
    out: *mut *mut c_char,
) -> BilliardsStatus {
    guard(|| {
        let p = handle(p)?;
        let starts = [read_opt_str(triple, "triple")?, read_opt_str(form, "form")?, read_opt_str(carrier, "carrier")?];
        if starts.iter().filter(|s| s.is_some()).count() != 1 {
            set_error("exactly one of triple, form, carrier must be given".into());
            return Err(BilliardsStatus::InvalidInput);
        }
        let v = billiards::cli::orbit_json(p, starts[0], starts[1], starts[2], max_steps).map_err(fail)?;
        write_string(out, v.to_string())
    })
}

/// Joint spectral radius bracket of the reflection family using words of
/// length at most `max_len`.
///
/// # Safety
/// `p` must be a live handle and the outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn billiards_jsr(
    p: *const BilliardsPartition,
    max_len: usize,
    tolerance: f64,
    lower: *mut f64,
    upper: *mut f64,
    certified: *mut bool,
) -> BilliardsStatus {
    guard(|| {
        let p = handle(p)?;
        let f = sigma_from_partition(p).map_err(fail)?;
        let r = jsr_bounds(&f, max_len, tolerance).map_err(fail)?;
        write(lower, r.lower, "lower")?;
        write(upper, r.upper, "upper")?;
        write(certified, r.certified, "certified")
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn billiards_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
