//! C interface.
//!
//! Objects cross the boundary as opaque handles created from JSON spec
//! documents and released with the matching `*_free` function. Every
//! fallible call returns a [`MoconadStatus`]; on failure the message is
//! available from [`moconad_last_error_message`] on the same thread.
//! Strings handed out by the library are released with
//! [`moconad_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use moconad_core::composition::compose_transductions;
use moconad_core::json::{elem_from_json, elem_to_json, to_canonical_string};
use moconad_core::lawcheck::{check_all_laws, default_term_alphabet, Bounds, Strategy};
use moconad_core::mealy::{phi, MealyMachine, UnambiguousMealy};
use moconad_core::spec::SpecDocument;
use moconad_core::transduction::Transduction;
use moconad_core::{Error, FunctorKind, MVal, Moconad};
use serde_json::{json, Value};

/// Result of every fallible call.
#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoconadStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed JSON, an invalid document, or a string that is not UTF-8.
    Schema = 2,
    /// A well-formed input outside the operation's domain.
    Domain = 3,
    /// An internal error; the library caught a panic.
    Panic = 5,
}

/// A transduction handle.
pub struct MoconadTransduction {
    inner: Transduction,
}

/// A Mealy machine handle, deterministic or unambiguous.
pub struct MoconadMealy {
    inner: Machine,
}

enum Machine {
    Deterministic(MealyMachine),
    Unambiguous(UnambiguousMealy),
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(MoconadStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let status = if e.is_schema() { MoconadStatus::Schema } else { MoconadStatus::Domain };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(MoconadStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording failures and catching panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MoconadStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MoconadStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("internal error: {msg}"));
            MoconadStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(MoconadStatus::Schema, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(MoconadStatus::Panic, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn parse_json(text: &str) -> Result<Value, Fail> {
    serde_json::from_str(text).map_err(|e| Fail(MoconadStatus::Schema, format!("invalid JSON: {e}")))
}

/// Parses a transduction document.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moconad_transduction_from_json(
    json: *const c_char,
    out: *mut *mut MoconadTransduction,
) -> MoconadStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        match SpecDocument::parse(text)? {
            SpecDocument::Transduction(t) => {
                write_out(out, MoconadTransduction { inner: t });
                Ok(())
            }
            other => {
                Err(Fail(MoconadStatus::Schema, format!("expected a transduction, got a {} document", other.kind())))
            }
        }
    })
}

/// Writes the canonical document of a transduction.
///
/// # Safety
/// `t` must come from this library; `out` must be a valid pointer. The
/// string is released with [`moconad_string_free`].
#[no_mangle]
pub unsafe extern "C" fn moconad_transduction_to_json(
    t: *const MoconadTransduction,
    out: *mut *mut c_char,
) -> MoconadStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("transduction"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, SpecDocument::Transduction(t.inner.clone()).to_canonical().trim_end().to_string())
    })
}

fn input_value(v: &Value) -> Result<Result<MVal, Vec<moconad_core::Elem>>, Fail> {
    match v {
        Value::Array(xs) => Ok(Err(xs.iter().map(elem_from_json).collect::<Result<_, _>>()?)),
        _ => match SpecDocument::from_json(v)? {
            SpecDocument::Word(w) => Ok(Err(w)),
            SpecDocument::PointedWord(m) | SpecDocument::Term(m) => Ok(Ok(m)),
            other => Err(Fail(MoconadStatus::Schema, format!("a {} document is not an input value", other.kind()))),
        },
    }
}

/// Applies a transduction.
///
/// The input is a JSON array of letters or a `word`, `pointed-word` or
/// `term` document. Words given to a pointed-list transduction produce
/// words. The output is the canonical document of the result.
///
/// # Safety
/// `t` must come from this library, `input_json` must be nul-terminated and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moconad_transduction_apply(
    t: *const MoconadTransduction,
    input_json: *const c_char,
    out: *mut *mut c_char,
) -> MoconadStatus {
    guard(|| {
        let t = &t.as_ref().ok_or_else(|| null("transduction"))?.inner;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = parse_json(read_str(input_json, "input")?)?;
        let inst = t.instance();
        let result = match input_value(&v)? {
            Ok(m) => SpecDocument::from_value(&t.apply(&m)?),
            Err(w) => match inst.kind() {
                FunctorKind::PrefixList | FunctorKind::SuffixList => {
                    SpecDocument::from_value(&t.apply(&inst.make_list(w).map_err(Fail::from)?)?)
                }
                FunctorKind::PointedList => SpecDocument::Word(phi(|m| t.apply(m))(&w)?),
                FunctorKind::PointedTerm => {
                    return Err(Fail(MoconadStatus::Schema, "pointed-term transductions read term documents".into()))
                }
            },
        };
        write_string(out, result.to_canonical().trim_end().to_string())
    })
}

/// Composes two transductions, `first` applied first.
///
/// # Safety
/// Both handles must come from this library; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moconad_transduction_compose(
    first: *const MoconadTransduction,
    second: *const MoconadTransduction,
    out: *mut *mut MoconadTransduction,
) -> MoconadStatus {
    guard(|| {
        let f = first.as_ref().ok_or_else(|| null("first"))?;
        let g = second.as_ref().ok_or_else(|| null("second"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let composed = compose_transductions(&f.inner, &g.inner)?;
        write_out(out, MoconadTransduction { inner: composed });
        Ok(())
    })
}

/// Releases a transduction. Null is ignored.
///
/// # Safety
/// `t` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn moconad_transduction_free(t: *mut MoconadTransduction) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Parses a `mealy` or `unambiguous-mealy` document.
///
/// # Safety
/// `json` must be nul-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moconad_mealy_from_json(json: *const c_char, out: *mut *mut MoconadMealy) -> MoconadStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = match SpecDocument::parse(read_str(json, "json")?)? {
            SpecDocument::Mealy(m) => Machine::Deterministic(m),
            SpecDocument::UnambiguousMealy(u) => Machine::Unambiguous(u),
            other => {
                return Err(Fail(MoconadStatus::Schema, format!("expected a machine, got a {} document", other.kind())))
            }
        };
        write_out(out, MoconadMealy { inner });
        Ok(())
    })
}

/// Runs a machine on a word given as a JSON array of letters and writes
/// the output word as a JSON array.
///
/// # Safety
/// `m` must come from this library, `word_json` must be nul-terminated and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moconad_mealy_run(
    m: *const MoconadMealy,
    word_json: *const c_char,
    out: *mut *mut c_char,
) -> MoconadStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(|| null("machine"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = parse_json(read_str(word_json, "word")?)?;
        let letters =
            v.as_array().ok_or_else(|| Fail(MoconadStatus::Schema, "the word must be a JSON array".into()))?;
        let w: Vec<_> = letters.iter().map(elem_from_json).collect::<Result<_, _>>()?;
        let output = match &m.inner {
            Machine::Deterministic(d) => d.run(&w)?,
            Machine::Unambiguous(u) => u.run(&w)?,
        };
        let arr = Value::Array(output.iter().map(elem_to_json).collect());
        write_string(out, to_canonical_string(&arr))
    })
}

/// Releases a machine. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn moconad_mealy_free(m: *mut MoconadMealy) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Checks every law for a functor exhaustively. A zero `bound` or
/// `domain_size` selects the default. `all_passed` receives 1 or 0; when
/// `report_json` is not null it receives the JSON report.
///
/// # Safety
/// `functor` must be nul-terminated; `all_passed` must be valid;
/// `report_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn moconad_check_laws(
    functor: *const c_char,
    bound: u32,
    domain_size: u32,
    all_passed: *mut i32,
    report_json: *mut *mut c_char,
) -> MoconadStatus {
    guard(|| {
        let name = read_str(functor, "functor")?;
        if all_passed.is_null() {
            return Err(null("all_passed"));
        }
        let kind = FunctorKind::from_name(name)
            .ok_or_else(|| Fail(MoconadStatus::Schema, format!("unknown functor {name:?}")))?;
        let inst = Moconad::new(kind, (kind == FunctorKind::PointedTerm).then(default_term_alphabet))?;
        let mut bounds = if bound == 0 { Bounds::default_for(kind) } else { Bounds::uniform(bound as usize, 2) };
        if domain_size != 0 {
            bounds.domain_size = domain_size as usize;
        }
        let reports = check_all_laws(&inst, Strategy::Exhaustive(bounds))?;
        let passed = reports.iter().all(|r| r.passed());
        *all_passed = i32::from(passed);
        if !report_json.is_null() {
            let doc = json!({
                "functor": kind.name(),
                "passed": passed,
                "laws": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            write_string(report_json, to_canonical_string(&doc))?;
        }
        Ok(())
    })
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn moconad_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn moconad_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
