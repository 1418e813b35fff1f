//! C ABI over `lpod-lab`.
//!
//! Programs are opaque `LpodProgram` handles owned by the caller and released
//! with `lpod_program_free`. Results come back as NUL-terminated JSON strings
//! in the same schema as the command-line `--json` output; release them with
//! `lpod_string_free`. Every entry point returns an `LpodStatus`; on failure
//! `lpod_last_error_message` describes the most recent error on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lpod_lab::report::{to_json, Report};
use lpod_lab::{equivalence, parse_dimacs, parse_program, reductions, semantics, Error, Limits, Mode, Program};

/// Opaque parsed program.
pub struct LpodProgram {
    inner: Program,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpodStatus {
    Ok = 0,
    /// The programs are not strongly equivalent (the call itself succeeded).
    NotEquivalent = 1,
    ParseError = 2,
    CapExceeded = 3,
    InvalidArgument = 4,
    /// A constructed context failed its own verification.
    VerificationFailed = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpodMode {
    MostPreferred = 0,
    AllAnswerSets = 1,
    Normal = 2,
}

impl From<LpodMode> for Mode {
    fn from(m: LpodMode) -> Mode {
        match m {
            LpodMode::MostPreferred => Mode::MostPreferred,
            LpodMode::AllAnswerSets => Mode::AllAnswerSets,
            LpodMode::Normal => Mode::Normal,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: LpodStatus, msg: impl Into<String>) -> LpodStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> LpodStatus {
    match e {
        Error::Syntax { .. } | Error::Dimacs { .. } | Error::EmptyHead | Error::MalformedClause(_) => {
            LpodStatus::ParseError
        }
        Error::CapExceeded { .. } | Error::SatCapExceeded { .. } => LpodStatus::CapExceeded,
        Error::ContextVerification(_) => LpodStatus::VerificationFailed,
        _ => LpodStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> Result<LpodStatus, LpodStatus>) -> LpodStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) | Ok(Err(s)) => s,
        Err(_) => fail(LpodStatus::Internal, "internal panic"),
    }
}

fn lib_error(e: Error) -> LpodStatus {
    fail(status_of(&e), e.to_string())
}

unsafe fn input_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, LpodStatus> {
    if s.is_null() {
        return Err(fail(LpodStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(LpodStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn program<'a>(p: *const LpodProgram, what: &str) -> Result<&'a Program, LpodStatus> {
    p.as_ref()
        .map(|p| &p.inner)
        .ok_or_else(|| fail(LpodStatus::InvalidArgument, format!("{what} is null")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, LpodStatus> {
    p.as_mut()
        .ok_or_else(|| fail(LpodStatus::InvalidArgument, format!("{what} is null")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

fn json_string(report: &Report) -> *mut c_char {
    into_c_string(to_json(report).to_string())
}

fn limits(cap: usize) -> Limits {
    if cap == 0 {
        Limits::default()
    } else {
        Limits::with_cap(cap)
    }
}

/// Parses program text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lpod_program_parse(text: *const c_char, out: *mut *mut LpodProgram) -> LpodStatus {
    guarded(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let text = input_str(text, "text")?;
        let p = parse_program(text).map_err(lib_error)?;
        *out = Box::into_raw(Box::new(LpodProgram { inner: p }));
        Ok(LpodStatus::Ok)
    })
}

/// # Safety
/// `program` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lpod_program_free(program: *mut LpodProgram) {
    if !program.is_null() {
        drop(Box::from_raw(program));
    }
}

/// Program text, one rule per line; null if `program` is null.
///
/// # Safety
/// `program` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn lpod_program_to_string(program: *const LpodProgram) -> *mut c_char {
    match program.as_ref() {
        Some(p) => into_c_string(p.inner.to_string()),
        None => ptr::null_mut(),
    }
}

/// Number of atoms of the program, 0 for null.
///
/// # Safety
/// `program` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn lpod_program_atom_count(program: *const LpodProgram) -> usize {
    program.as_ref().map_or(0, |p| p.inner.atoms().len())
}

type Query = fn(&Program, &Limits) -> Result<Report, Error>;

unsafe fn run_query(program: *const LpodProgram, cap: usize, out_json: *mut *mut c_char, query: Query) -> LpodStatus {
    guarded(|| {
        let out = out_ptr(out_json, "out_json")?;
        *out = ptr::null_mut();
        let p = self::program(program, "program")?;
        let report = query(p, &limits(cap)).map_err(lib_error)?;
        *out = json_string(&report);
        Ok(LpodStatus::Ok)
    })
}

/// All four-valued models (only those without `F*` when `three_valued`).
/// A `cap` of 0 selects the default.
///
/// # Safety
/// `program` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lpod_models_json(
    program: *const LpodProgram,
    cap: usize,
    three_valued: bool,
    out_json: *mut *mut c_char,
) -> LpodStatus {
    let query: Query = if three_valued {
        |p, l| {
            let set = semantics::three_valued_models(p, l)?;
            let models: Vec<_> = set.iter().collect();
            Ok(Report::Models {
                atoms: p.atoms().to_vec(),
                three_valued: true,
                count: models.len(),
                models,
            })
        }
    } else {
        |p, l| {
            let set = semantics::enumerate_models(p, l)?;
            let models: Vec<_> = set.iter().collect();
            Ok(Report::Models {
                atoms: p.atoms().to_vec(),
                three_valued: false,
                count: models.len(),
                models,
            })
        }
    };
    run_query(program, cap, out_json, query)
}

/// # Safety
/// `program` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lpod_answer_sets_json(
    program: *const LpodProgram,
    cap: usize,
    out_json: *mut *mut c_char,
) -> LpodStatus {
    run_query(program, cap, out_json, |p, l| {
        let sets = semantics::answer_sets(p, l)?;
        Ok(Report::AnswerSets {
            atoms: p.atoms().to_vec(),
            count: sets.len(),
            answer_sets: sets,
        })
    })
}

/// # Safety
/// `program` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lpod_most_preferred_json(
    program: *const LpodProgram,
    cap: usize,
    out_json: *mut *mut c_char,
) -> LpodStatus {
    run_query(program, cap, out_json, |p, l| {
        let sets = semantics::most_preferred(p, l)?;
        Ok(Report::MostPreferred {
            atoms: p.atoms().to_vec(),
            count: sets.len(),
            answer_sets: sets,
        })
    })
}

/// Stable models of a normal program; `LPOD_STATUS_INVALID_ARGUMENT` otherwise.
///
/// # Safety
/// `program` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lpod_stable_models_json(
    program: *const LpodProgram,
    cap: usize,
    out_json: *mut *mut c_char,
) -> LpodStatus {
    run_query(program, cap, out_json, |p, l| {
        let models = semantics::gl_stable_models(p, l)?;
        Ok(Report::StableModels {
            atoms: p.atoms().to_vec(),
            count: models.len(),
            stable_models: models,
        })
    })
}

unsafe fn run_eq(
    first: *const LpodProgram,
    second: *const LpodProgram,
    mode: Mode,
    cap: usize,
    out_equivalent: *mut bool,
    out_json: *mut *mut c_char,
) -> LpodStatus {
    guarded(|| {
        let eq_out = out_ptr(out_equivalent, "out_equivalent")?;
        let p1 = program(first, "first")?;
        let p2 = program(second, "second")?;
        let verdict = equivalence::strong_eq(p1, p2, mode, &limits(cap)).map_err(lib_error)?;
        *eq_out = verdict.equivalent;
        let equivalent = verdict.equivalent;
        if let Some(out) = out_json.as_mut() {
            *out = json_string(&Report::Equivalence {
                atoms: p1.joint_atoms(p2),
                verdict,
            });
        }
        Ok(if equivalent {
            LpodStatus::Ok
        } else {
            LpodStatus::NotEquivalent
        })
    })
}

/// Strong equivalence. Writes the verdict to `*out_equivalent` and, when
/// `out_json` is non-null, the full verdict with witness and context.
/// Returns `LPOD_STATUS_OK` or `LPOD_STATUS_NOT_EQUIVALENT` on success.
///
/// # Safety
/// Handles must be live; `out_equivalent` must be valid; `out_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn lpod_strong_eq(
    first: *const LpodProgram,
    second: *const LpodProgram,
    mode: LpodMode,
    cap: usize,
    out_equivalent: *mut bool,
    out_json: *mut *mut c_char,
) -> LpodStatus {
    run_eq(first, second, mode.into(), cap, out_equivalent, out_json)
}

/// Strong equivalence of normal programs under standard answer sets.
///
/// # Safety
/// As for `lpod_strong_eq`.
#[no_mangle]
pub unsafe extern "C" fn lpod_normal_strong_eq(
    first: *const LpodProgram,
    second: *const LpodProgram,
    cap: usize,
    out_equivalent: *mut bool,
    out_json: *mut *mut c_char,
) -> LpodStatus {
    run_eq(first, second, Mode::Normal, cap, out_equivalent, out_json)
}

/// Builds the reduction programs from DIMACS text into two new handles.
///
/// # Safety
/// `dimacs` must be a NUL-terminated string; `out_p1`, `out_p2` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lpod_reduce_3sat(
    dimacs: *const c_char,
    pad: bool,
    out_p1: *mut *mut LpodProgram,
    out_p2: *mut *mut LpodProgram,
) -> LpodStatus {
    guarded(|| {
        let o1 = out_ptr(out_p1, "out_p1")?;
        let o2 = out_ptr(out_p2, "out_p2")?;
        *o1 = ptr::null_mut();
        *o2 = ptr::null_mut();
        let text = input_str(dimacs, "dimacs")?;
        let phi = parse_dimacs(text, pad).map_err(lib_error)?;
        let out = reductions::reduce_3sat(&phi).map_err(lib_error)?;
        *o1 = Box::into_raw(Box::new(LpodProgram { inner: out.p1 }));
        *o2 = Box::into_raw(Box::new(LpodProgram { inner: out.p2 }));
        Ok(LpodStatus::Ok)
    })
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lpod_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn lpod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
