//! C ABI over `affhecke`.
//!
//! Every function returns an `int32_t` status and writes results through
//! out-parameters. Groups are opaque handles; strings returned to the caller
//! are NUL-terminated UTF-8 and must be released with
//! [`affhecke_string_free`]. After a nonzero status,
//! [`affhecke_last_error`] describes the failure on the calling thread.
//!
//! A group handle may be shared between threads: the KL memo inside it is
//! behind a mutex.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Mutex;

use affhecke::expr::{parse_coweight, parse_element};
use affhecke::{hecke, nearby, AffineWeylGroup, DatumConfig, Error, KlTable, RootDatum};

pub const AFFHECKE_OK: i32 = 0;
/// The call succeeded but a verification did not pass.
pub const AFFHECKE_CHECK_FAILED: i32 = 1;
pub const AFFHECKE_INVALID_ARGUMENT: i32 = 2;
pub const AFFHECKE_PARSE_ERROR: i32 = 3;
pub const AFFHECKE_CONFIG_ERROR: i32 = 4;
pub const AFFHECKE_NULL_POINTER: i32 = 5;
/// The caller's buffer is too small; the required length was written.
pub const AFFHECKE_BUFFER_TOO_SMALL: i32 = 6;
pub const AFFHECKE_PANIC: i32 = 7;

/// Opaque group handle.
pub struct AffheckeGroup {
    group: AffineWeylGroup,
    kl: Mutex<KlTable>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => AFFHECKE_PARSE_ERROR,
            Error::InvalidDatum(_) | Error::NoHighestRoot(_) | Error::Config(_) | Error::Io(_) => AFFHECKE_CONFIG_ERROR,
            Error::NotExpressible(_) => AFFHECKE_CHECK_FAILED,
            Error::RankMismatch { .. } | Error::NotDominant(_) | Error::DatumMismatch => AFFHECKE_INVALID_ARGUMENT,
        };
        Failure(code, e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Outcome) -> i32 {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(code)) => code,
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            AFFHECKE_PANIC
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(AFFHECKE_NULL_POINTER, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(AFFHECKE_INVALID_ARGUMENT, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(g: *const AffheckeGroup) -> Result<&'a AffheckeGroup, Failure> {
    g.as_ref().ok_or_else(|| Failure(AFFHECKE_NULL_POINTER, "group handle is null".into()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(AFFHECKE_NULL_POINTER, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), Failure> {
    let s = serde_json::to_string(value).expect("values serialize");
    write(out, CString::new(s).expect("JSON has no NUL").into_raw())
}

fn boxed(group: AffineWeylGroup) -> *mut AffheckeGroup {
    Box::into_raw(Box::new(AffheckeGroup { group, kl: Mutex::new(KlTable::new()) }))
}

/// Creates a group from a preset name such as `GL3`, `SL2affine` or `Sp4`.
#[no_mangle]
pub unsafe extern "C" fn affhecke_group_new(preset: *const c_char, out: *mut *mut AffheckeGroup) -> i32 {
    guard(|| {
        let name = text(preset, "preset")?;
        let g = AffineWeylGroup::new(RootDatum::from_preset_name(name)?);
        write(out, boxed(g))?;
        Ok(AFFHECKE_OK)
    })
}

/// Creates a group from the TOML text of a root-datum description.
#[no_mangle]
pub unsafe extern "C" fn affhecke_group_from_toml(toml: *const c_char, out: *mut *mut AffheckeGroup) -> i32 {
    guard(|| {
        let src = text(toml, "toml")?;
        let g = AffineWeylGroup::new(DatumConfig::from_toml(src)?.build()?);
        write(out, boxed(g))?;
        Ok(AFFHECKE_OK)
    })
}

/// Releases a group handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn affhecke_group_free(g: *mut AffheckeGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Rank of the coweight lattice.
#[no_mangle]
pub unsafe extern "C" fn affhecke_group_rank(g: *const AffheckeGroup, out: *mut usize) -> i32 {
    guard(|| {
        write(out, handle(g)?.group.rank())?;
        Ok(AFFHECKE_OK)
    })
}

/// Length of an element given in text form, e.g. `t[1,0] * s1`.
#[no_mangle]
pub unsafe extern "C" fn affhecke_length(g: *const AffheckeGroup, x: *const c_char, out: *mut usize) -> i32 {
    guard(|| {
        let h = handle(g)?;
        let x = parse_element(&h.group, text(x, "x")?)?;
        write(out, h.group.length(&x))?;
        Ok(AFFHECKE_OK)
    })
}

/// Canonical text form of an element.
#[no_mangle]
pub unsafe extern "C" fn affhecke_canonical_form(g: *const AffheckeGroup, x: *const c_char, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let h = handle(g)?;
        let x = parse_element(&h.group, text(x, "x")?)?;
        write(out, CString::new(h.group.format(&x)).expect("no NUL").into_raw())?;
        Ok(AFFHECKE_OK)
    })
}

/// Whether `x <= y` in the Bruhat order.
#[no_mangle]
pub unsafe extern "C" fn affhecke_bruhat_leq(
    g: *const AffheckeGroup,
    x: *const c_char,
    y: *const c_char,
    out: *mut bool,
) -> i32 {
    guard(|| {
        let h = handle(g)?;
        let x = parse_element(&h.group, text(x, "x")?)?;
        let y = parse_element(&h.group, text(y, "y")?)?;
        write(out, h.group.bruhat_leq(&x, &y))?;
        Ok(AFFHECKE_OK)
    })
}

/// Coefficients of `P_{x,w}(q)`, constant term first. `len` receives the
/// number of coefficients; if it exceeds `cap`, nothing is copied and
/// `AFFHECKE_BUFFER_TOO_SMALL` is returned. `coeffs` may be null when `cap` is 0.
#[no_mangle]
pub unsafe extern "C" fn affhecke_kl_polynomial(
    g: *const AffheckeGroup,
    x: *const c_char,
    w: *const c_char,
    coeffs: *mut i64,
    cap: usize,
    len: *mut usize,
) -> i32 {
    guard(|| {
        let h = handle(g)?;
        let x = parse_element(&h.group, text(x, "x")?)?;
        let w = parse_element(&h.group, text(w, "w")?)?;
        let p = h.kl.lock().unwrap_or_else(|e| e.into_inner()).polynomial(&h.group, &x, &w);
        let c = p.q_coeffs().expect("KL polynomials are polynomials in q");
        write(len, c.len())?;
        if c.len() > cap {
            return Err(Failure(AFFHECKE_BUFFER_TOO_SMALL, format!("{} coefficients needed", c.len())));
        }
        if !c.is_empty() {
            if coeffs.is_null() {
                return Err(Failure(AFFHECKE_NULL_POINTER, "coeffs is null".into()));
            }
            ptr::copy_nonoverlapping(c.as_ptr(), coeffs, c.len());
        }
        Ok(AFFHECKE_OK)
    })
}

/// The mu-admissible set as a JSON array of canonical element strings.
#[no_mangle]
pub unsafe extern "C" fn affhecke_admissible_set_json(
    g: *const AffheckeGroup,
    mu: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let h = handle(g)?;
        let mu = parse_coweight(&h.group, text(mu, "mu")?)?;
        let mut xs: Vec<_> = h.group.admissible_set(&mu)?.into_iter().collect();
        h.group.sort_canonical(&mut xs);
        let names: Vec<String> = xs.iter().map(|x| h.group.format(x)).collect();
        write_json(out, &serde_json::json!(names))?;
        Ok(AFFHECKE_OK)
    })
}

/// Terms of the Wakimoto function of `(u, v)` as JSON, each coefficient
/// given in `v` and as a polynomial in `Q`.
#[no_mangle]
pub unsafe extern "C" fn affhecke_wakimoto_json(
    g: *const AffheckeGroup,
    u: *const c_char,
    v: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let h = handle(g)?;
        let u = parse_element(&h.group, text(u, "u")?)?;
        let v = parse_element(&h.group, text(v, "v")?)?;
        let d = h.group.length(&h.group.mul(&u, &v)) as i64;
        let terms = hecke::to_json(&h.group, &hecke::wakimoto(&h.group, &u, &v), Some(d));
        write_json(out, &serde_json::to_value(terms).expect("terms serialize"))?;
        Ok(AFFHECKE_OK)
    })
}

fn verdict(pass: bool) -> i32 {
    if pass {
        AFFHECKE_OK
    } else {
        AFFHECKE_CHECK_FAILED
    }
}

/// Verification report for the Kottwitz function of `mu`, as JSON.
/// Returns `AFFHECKE_CHECK_FAILED` (with the report written) if a check fails.
#[no_mangle]
pub unsafe extern "C" fn affhecke_verify_theorem1_json(
    g: *const AffheckeGroup,
    mu: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let h = handle(g)?;
        let mu = parse_coweight(&h.group, text(mu, "mu")?)?;
        let mut kl = h.kl.lock().unwrap_or_else(|e| e.into_inner());
        let report = nearby::verify_theorem_1(&h.group, &mut kl, &mu)?;
        write_json(out, &serde_json::to_value(&report).expect("reports serialize"))?;
        Ok(verdict(report.pass))
    })
}

/// Verification report for the Wakimoto function of `(u, v)`, as JSON.
#[no_mangle]
pub unsafe extern "C" fn affhecke_verify_theorem2_json(
    g: *const AffheckeGroup,
    u: *const c_char,
    v: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let h = handle(g)?;
        let u = parse_element(&h.group, text(u, "u")?)?;
        let v = parse_element(&h.group, text(v, "v")?)?;
        let mut kl = h.kl.lock().unwrap_or_else(|e| e.into_inner());
        let report = nearby::verify_theorem_2(&h.group, &mut kl, &u, &v);
        write_json(out, &serde_json::to_value(&report).expect("reports serialize"))?;
        Ok(verdict(report.pass))
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn affhecke_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn affhecke_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
