//! C ABI over the `kneading` library.
//!
//! Every entry point returns a [`KnStatus`]. On failure a message is kept per
//! thread and can be read with [`kn_last_error`]. Strings handed out by the
//! library are owned by the caller and must be released with
//! [`kn_string_free`]; pools with [`kn_pool_free`]. Angles are passed as
//! `"p/q"` strings.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use kneading::components::{conspicuous_components, pair_periodic_angles, return_times, ComponentPool};
use kneading::verify::{check_component, disc_entry, MarkerParser};
use kneading::{Angle, Error, HyperbolicComponent};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidComponent = 4,
    PoolTooSmall = 5,
    Violation = 6,
    Io = 7,
    Precondition = 8,
    Panic = 9,
}

/// Opaque handle to a component pool.
pub struct KnPool {
    pool: ComponentPool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> KnStatus {
    match err {
        Error::Parse(_) | Error::Json(_) => KnStatus::Parse,
        Error::DegenerateArc(_) | Error::ArcTooLong(_) | Error::InvalidPartition(_) | Error::NoSuchPiece { .. } => {
            KnStatus::Precondition
        }
        Error::InvalidComponent(_) => KnStatus::InvalidComponent,
        Error::PoolTooSmall { .. } => KnStatus::PoolTooSmall,
        Error::Precondition(_) => KnStatus::Precondition,
        Error::Violation(_) => KnStatus::Violation,
        Error::Io(_) => KnStatus::Io,
    }
}

struct Failure(KnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(status_of(&e), e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure(KnStatus::Parse, e.to_string())
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            KnStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            KnStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(KnStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(KnStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn angle(p: *const c_char, what: &str) -> Result<Angle, Failure> {
    Ok(text(p, what)?.parse::<Angle>()?)
}

unsafe fn pool_ref<'a>(p: *const KnPool) -> Result<&'a ComponentPool, Failure> {
    p.as_ref()
        .map(|h| &h.pool)
        .ok_or_else(|| Failure(KnStatus::NullPointer, "pool is null".into()))
}

unsafe fn component(pool: &ComponentPool, tm: *const c_char, tp: *const c_char) -> Result<HyperbolicComponent, Failure> {
    let (m, p) = (angle(tm, "theta_minus")?, angle(tp, "theta_plus")?);
    Ok(pool.check_pair(&m, &p)?)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(KnStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure(KnStatus::Parse, "interior NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn out_ptr<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(KnStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn kn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Enumerates all components of period `2..=max_period`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kn_pool_new(max_period: u32, out: *mut *mut KnPool) -> KnStatus {
    guard(|| {
        out_ptr(out)?;
        let pool = pair_periodic_angles(max_period as usize)?;
        *out = Box::into_raw(Box::new(KnPool { pool }));
        Ok(())
    })
}

/// Loads a pool JSON file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kn_pool_load(path: *const c_char, out: *mut *mut KnPool) -> KnStatus {
    guard(|| {
        out_ptr(out)?;
        let pool = ComponentPool::load(Path::new(text(path, "path")?))?;
        *out = Box::into_raw(Box::new(KnPool { pool }));
        Ok(())
    })
}

/// # Safety
/// `pool` must come from `kn_pool_new`/`kn_pool_load` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kn_pool_free(pool: *mut KnPool) {
    if !pool.is_null() {
        drop(Box::from_raw(pool));
    }
}

/// # Safety
/// `pool` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kn_pool_len(pool: *const KnPool, out: *mut usize) -> KnStatus {
    guard(|| {
        out_ptr(out)?;
        *out = pool_ref(pool)?.len();
        Ok(())
    })
}

/// # Safety
/// `pool` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kn_pool_max_period(pool: *const KnPool, out: *mut u32) -> KnStatus {
    guard(|| {
        out_ptr(out)?;
        *out = pool_ref(pool)?.max_period() as u32;
        Ok(())
    })
}

/// The pool as JSON.
///
/// # Safety
/// `pool` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kn_pool_to_json(pool: *const KnPool, out: *mut *mut c_char) -> KnStatus {
    guard(|| put_string(out, pool_ref(pool)?.to_json()?))
}

/// `K(H)` of the pair, e.g. `"BABBA"`. The pair is validated locally only.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kn_kneading(theta_minus: *const c_char, theta_plus: *const c_char, out: *mut *mut c_char) -> KnStatus {
    guard(|| {
        let h = HyperbolicComponent::new(angle(theta_minus, "theta_minus")?, angle(theta_plus, "theta_plus")?)?;
        put_string(out, kneading::coding::symbols_to_string(h.kneading()))
    })
}

/// Conspicuous components and return times as JSON.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn kn_conspicuous_json(
    pool: *const KnPool,
    theta_minus: *const c_char,
    theta_plus: *const c_char,
    out: *mut *mut c_char,
) -> KnStatus {
    guard(|| {
        let pool = pool_ref(pool)?;
        let h = component(pool, theta_minus, theta_plus)?;
        let value = serde_json::json!({
            "component": h,
            "conspicuous": conspicuous_components(&h, pool)?,
            "return_times": return_times(&h, pool)?,
        });
        put_string(out, serde_json::to_string(&value)?)
    })
}

/// Covering report and structural checks as JSON; `*passed` is 1 when
/// everything holds.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn kn_verify_json(
    pool: *const KnPool,
    theta_minus: *const c_char,
    theta_plus: *const c_char,
    out: *mut *mut c_char,
    passed: *mut c_int,
) -> KnStatus {
    guard(|| {
        out_ptr(passed)?;
        let pool = pool_ref(pool)?;
        let h = component(pool, theta_minus, theta_plus)?;
        let outcome = check_component(&h, pool)?;
        *passed = outcome.passed() as c_int;
        put_string(out, serde_json::to_string(&outcome)?)
    })
}

/// First `m >= 1` with `σ^m(angle) ∈ Π₁(H)`, or `-1` when the angle is not in
/// Disc(H).
///
/// # Safety
/// String arguments must be NUL-terminated; `first_entry` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kn_disc_entry(
    theta_minus: *const c_char,
    theta_plus: *const c_char,
    angle_str: *const c_char,
    first_entry: *mut i64,
) -> KnStatus {
    guard(|| {
        out_ptr(first_entry)?;
        let h = HyperbolicComponent::new(angle(theta_minus, "theta_minus")?, angle(theta_plus, "theta_plus")?)?;
        let theta = angle(angle_str, "angle")?;
        *first_entry = disc_entry(&h, &theta).map_or(-1, |m| m as i64);
        Ok(())
    })
}

/// Marker chain of the angle as JSON (`null` off Disc(H)).
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn kn_marker_json(
    pool: *const KnPool,
    theta_minus: *const c_char,
    theta_plus: *const c_char,
    angle_str: *const c_char,
    out: *mut *mut c_char,
) -> KnStatus {
    guard(|| {
        let pool = pool_ref(pool)?;
        let h = component(pool, theta_minus, theta_plus)?;
        let theta = angle(angle_str, "angle")?;
        let parser = MarkerParser::new(&h, pool)?;
        let chain = parser.decompose(&theta)?;
        let value = serde_json::json!({
            "itinerary": parser.itinerary(&theta),
            "chain": chain,
            "marker": chain.as_ref().map(|c| c.to_string()),
        });
        put_string(out, serde_json::to_string(&value)?)
    })
}

/// The four worked examples as text; the pool must reach period 6.
///
/// # Safety
/// `pool` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kn_report_text(pool: *const KnPool, out: *mut *mut c_char) -> KnStatus {
    guard(|| put_string(out, kneading::report::appendix_a(pool_ref(pool)?)?.to_text()))
}
