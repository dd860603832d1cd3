//! C ABI over `burnside-kit`.
//!
//! Every function returns a [`BkStatus`]; on anything but `BK_STATUS_OK` a message is available
//! from [`bk_last_error_message`] on the calling thread. Problems are opaque handles released
//! with [`bk_problem_free`]; strings returned through out-pointers are released with
//! [`bk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use burnside_kit::cli::{hull_result, verify_result, Theorem};
use burnside_kit::doc::{fixture_document, problem_from_str, problem_from_value, Problem};
use burnside_kit::exactla::Field;
use burnside_kit::homolog::{BarComplex, ExtData};
use burnside_kit::observ::Verdict;
use burnside_kit::Error;

pub const BK_THEOREM_BURNSIDE: u32 = 0;
pub const BK_THEOREM_GBT: u32 = 1;
pub const BK_THEOREM_CLOSURE: u32 = 2;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BkStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Malformed document, unknown fixture, bad field descriptor, invalid algebra or module.
    InvalidInput = 3,
    /// Index or degree out of range.
    OutOfRange = 4,
    /// A hypothesis does not hold or the hull is not stable at the requested degree.
    Refused = 5,
    /// The computation itself reported an error.
    ComputationFailed = 6,
    /// A panic was caught at the boundary.
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BkVerdict {
    Pass = 0,
    Fail = 1,
    Refused = 2,
}

/// A parsed algebra with its module family. Opaque to C.
pub struct BkProblem {
    problem: Problem,
    ext: OnceLock<ExtData>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BkStatus {
    match e {
        Error::InvalidInput(_)
        | Error::DimensionMismatch(_)
        | Error::AssociativityViolation(..)
        | Error::UnitViolation(_)
        | Error::CharPUnsupported
        | Error::NotSplit(_)
        | Error::InvalidModule(_)
        | Error::Json(_)
        | Error::Io(_) => BkStatus::InvalidInput,
        Error::HypothesisViolated(_) | Error::HullNotStable(_) => BkStatus::Refused,
        _ => BkStatus::ComputationFailed,
    }
}

fn fail(status: BkStatus, msg: impl Into<String>) -> BkStatus {
    set_error(msg.into());
    status
}

fn guard(f: impl FnOnce() -> BkStatus) -> BkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(BkStatus::Internal, "panic inside burnside-kit"),
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, BkStatus> {
    if s.is_null() {
        return Err(fail(BkStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(BkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn field_arg(field: *const c_char) -> Result<Option<Field>, BkStatus> {
    if field.is_null() {
        return Ok(None);
    }
    let s = text(field, "field")?;
    Field::parse(s).map(Some).map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> BkStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            BkStatus::Ok
        }
        Err(_) => fail(BkStatus::Internal, "output contains a NUL byte"),
    }
}

unsafe fn problem_ref<'a>(p: *const BkProblem) -> Result<&'a BkProblem, BkStatus> {
    p.as_ref().ok_or_else(|| fail(BkStatus::NullArgument, "problem handle is null"))
}

fn boxed(problem: Problem) -> *mut BkProblem {
    Box::into_raw(Box::new(BkProblem { problem, ext: OnceLock::new() }))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! lib {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return fail(status_of(&e), e.to_string()),
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn bk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a poset, algebra or family document. `field` may be null for the document's own field.
///
/// # Safety
/// `json` and a non-null `field` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_problem_from_json(
    json: *const c_char,
    field: *const c_char,
    out: *mut *mut BkProblem,
) -> BkStatus {
    guard(|| {
        if out.is_null() {
            return fail(BkStatus::NullArgument, "out is null");
        }
        let s = tri!(text(json, "json"));
        let f = tri!(field_arg(field));
        let p = lib!(problem_from_str(s, f));
        *out = boxed(p);
        BkStatus::Ok
    })
}

/// Loads a built-in fixture by name, with its family of simple modules.
///
/// # Safety
/// `name` and a non-null `field` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_problem_from_fixture(
    name: *const c_char,
    field: *const c_char,
    out: *mut *mut BkProblem,
) -> BkStatus {
    guard(|| {
        if out.is_null() {
            return fail(BkStatus::NullArgument, "out is null");
        }
        let n = tri!(text(name, "name"));
        let f = tri!(field_arg(field));
        let p = lib!(problem_from_value(&serde_json::Value::String(format!("fixture:{n}")), f));
        *out = boxed(p);
        BkStatus::Ok
    })
}

/// Restricts a problem to the given 0-based family members, producing a new handle.
///
/// # Safety
/// `p` must be a live handle, `members` must point to `len` values, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_problem_select(
    p: *const BkProblem,
    members: *const usize,
    len: usize,
    out: *mut *mut BkProblem,
) -> BkStatus {
    guard(|| {
        let p = tri!(problem_ref(p));
        if out.is_null() || (members.is_null() && len > 0) {
            return fail(BkStatus::NullArgument, "members or out is null");
        }
        let idx: &[usize] = if len == 0 { &[] } else { std::slice::from_raw_parts(members, len) };
        let r = p.problem.family.len();
        if let Some(&m) = idx.iter().find(|&&m| m >= r) {
            return fail(BkStatus::OutOfRange, format!("member {m} out of range 0..{r}"));
        }
        let family = lib!(p.problem.family.subfamily(idx));
        *out = boxed(Problem { algebra: p.problem.algebra.clone(), family, poset: p.problem.poset.clone() });
        BkStatus::Ok
    })
}

/// Releases a problem handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bk_problem_free(p: *mut BkProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Dimension of the algebra.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bk_problem_algebra_dim(p: *const BkProblem, out: *mut usize) -> BkStatus {
    guard(|| {
        let p = tri!(problem_ref(p));
        if out.is_null() {
            return fail(BkStatus::NullArgument, "out is null");
        }
        *out = p.problem.algebra.dim();
        BkStatus::Ok
    })
}

/// Number of modules in the family.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bk_problem_family_size(p: *const BkProblem, out: *mut usize) -> BkStatus {
    guard(|| {
        let p = tri!(problem_ref(p));
        if out.is_null() {
            return fail(BkStatus::NullArgument, "out is null");
        }
        *out = p.problem.family.len();
        BkStatus::Ok
    })
}

/// `dim Ext^degree(M_i, M_j)` for `degree` 1 or 2 and 0-based `i`, `j`. Ext data is computed
/// on first use and cached in the handle.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bk_ext_dim(p: *const BkProblem, degree: u32, i: usize, j: usize, out: *mut usize) -> BkStatus {
    guard(|| {
        let p = tri!(problem_ref(p));
        if out.is_null() {
            return fail(BkStatus::NullArgument, "out is null");
        }
        let r = p.problem.family.len();
        if !(1..=2).contains(&degree) || i >= r || j >= r {
            return fail(BkStatus::OutOfRange, format!("Ext^{degree}({i}, {j}) with {r} members"));
        }
        let data = p.ext.get_or_init(|| ExtData::compute(&BarComplex::new(&p.problem.algebra, &p.problem.family)));
        *out = if degree == 1 { data.ext1(i, j).dim() } else { data.ext2(i, j).dim() };
        BkStatus::Ok
    })
}

/// The truncated hull as a JSON object. `max_degree = 0` selects the default degree.
///
/// # Safety
/// `p` must be a live handle and `out` writable; free the string with `bk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn bk_hull_json(p: *const BkProblem, max_degree: usize, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        let p = tri!(problem_ref(p));
        if out.is_null() {
            return fail(BkStatus::NullArgument, "out is null");
        }
        let n = (max_degree > 0).then_some(max_degree);
        let (_, result) = lib!(hull_result(&p.problem, n));
        write_string(out, result.to_string())
    })
}

/// Verifies a theorem (`BK_THEOREM_*`) on the problem. A violated hypothesis or an unstable
/// hull is reported as verdict `Refused` with status `Ok`. `out_json` may be null; otherwise it
/// receives the report object. `max_degree = 0` selects the default.
///
/// # Safety
/// `p` must be a live handle, `verdict` writable, `out_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bk_verify(
    p: *const BkProblem,
    theorem: u32,
    max_degree: usize,
    verdict: *mut BkVerdict,
    out_json: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        let p = tri!(problem_ref(p));
        if verdict.is_null() {
            return fail(BkStatus::NullArgument, "verdict is null");
        }
        let t = match theorem {
            BK_THEOREM_BURNSIDE => Theorem::Burnside,
            BK_THEOREM_GBT => Theorem::Gbt,
            BK_THEOREM_CLOSURE => Theorem::Closure,
            _ => return fail(BkStatus::OutOfRange, format!("unknown theorem {theorem}")),
        };
        let n = (max_degree > 0).then_some(max_degree);
        let (v, result) = match verify_result(&p.problem, t, n) {
            Ok(x) => x,
            Err(e) if status_of(&e) == BkStatus::Refused => {
                (Verdict::Refused, serde_json::json!({ "reason": e.to_string() }))
            }
            Err(e) => return fail(status_of(&e), e.to_string()),
        };
        *verdict = match v {
            Verdict::Pass => BkVerdict::Pass,
            Verdict::Fail => BkVerdict::Fail,
            Verdict::Refused => BkVerdict::Refused,
        };
        if out_json.is_null() {
            BkStatus::Ok
        } else {
            write_string(out_json, result.to_string())
        }
    })
}

/// The JSON document of a built-in fixture. `field` may be null for `Q`.
///
/// # Safety
/// `name` and a non-null `field` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_fixture_json(name: *const c_char, field: *const c_char, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        if out.is_null() {
            return fail(BkStatus::NullArgument, "out is null");
        }
        let n = tri!(text(name, "name"));
        let f = tri!(field_arg(field)).unwrap_or(Field::Rational);
        let doc = lib!(fixture_document(n, f));
        write_string(out, doc.to_string())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
