//! C ABI over the `okubo` crate.
//!
//! Every function returns an [`OkuboStatus`]; on failure a message for the
//! calling thread is available from [`okubo_last_error`]. Algebras and elements
//! are opaque handles released with their `_free` function. Strings returned
//! through out-pointers are owned by the caller and released with
//! [`okubo_string_free`]. Handles may be shared between threads for reading.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicU64, Ordering};

use clap::ValueEnum;
use okubo::cli::suites::{run_suite, Suite, SuiteOptions};
use okubo::cli::{parse_element, AnyAlgebra, CliError};
use okubo::field::{Field, FiniteField, RationalFunctionField};
use okubo::graphs::{export_report, GraphError, OrthGraph, EXACT_LIMIT};
use okubo::linalg::Vec8;
use okubo::okubo::{AlgebraError, ZeroDivisorClass};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OkuboStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidField = 3,
    ParseError = 4,
    InvalidAlgebra = 5,
    MixedAlgebras = 6,
    NotZeroDivisor = 7,
    InfiniteField = 8,
    IncompatibleSuite = 9,
    GraphTooLarge = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OkuboClass {
    TypeA = 0,
    TypeB = 1,
    TypeC = 2,
}

/// An Okubo algebra over a finite or rational function field.
pub struct OkuboAlgebraHandle {
    id: u64,
    alg: AnyAlgebra,
}

/// An element, tied to the algebra it was created in.
pub struct OkuboElementHandle {
    algebra_id: u64,
    coords: Coords,
}

#[allow(clippy::large_enum_variant)] // handles already live on the heap
enum Coords {
    Finite(Vec8<<FiniteField as Field>::Elem>),
    Rational(Vec8<<RationalFunctionField as Field>::Elem>),
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(OkuboStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match &e {
            CliError::Field(_) => OkuboStatus::InvalidField,
            CliError::Parse(_) => OkuboStatus::ParseError,
            CliError::Algebra(AlgebraError::NotZeroDivisor) => OkuboStatus::NotZeroDivisor,
            CliError::Algebra(AlgebraError::MixedAlgebras) => OkuboStatus::MixedAlgebras,
            CliError::Algebra(_) => OkuboStatus::InvalidAlgebra,
            CliError::Graph(GraphError::InfiniteField) => OkuboStatus::InfiniteField,
            CliError::Graph(GraphError::TooLarge(_)) => OkuboStatus::GraphTooLarge,
            CliError::Graph(_) => OkuboStatus::InvalidAlgebra,
            CliError::IncompatibleSuite { .. } => OkuboStatus::IncompatibleSuite,
            CliError::Threads | CliError::Io(_) => OkuboStatus::InvalidAlgebra,
        };
        Failure(status, e.to_string())
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        CliError::from(e).into()
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `body`, records any error message, and converts panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> OkuboStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            OkuboStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            OkuboStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(OkuboStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(OkuboStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s)
        .map_err(|_| Failure(OkuboStatus::Panic, "string with interior nul".into()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

fn same_algebra(alg: &OkuboAlgebraHandle, elems: &[&OkuboElementHandle]) -> Result<(), Failure> {
    if elems.iter().all(|e| e.algebra_id == alg.id) {
        Ok(())
    } else {
        Err(AlgebraError::MixedAlgebras.into())
    }
}

/// Evaluates `$body` with the concrete algebra and the coordinates of each element.
macro_rules! with_coords {
    ($alg:expr, [$($e:ident),*], $a:ident => $body:expr) => {
        match &$alg.alg {
            AnyAlgebra::Finite($a) => {
                $(let Coords::Finite($e) = &$e.coords else { return Err(AlgebraError::MixedAlgebras.into()) };)*
                $body
            }
            AnyAlgebra::Rational($a) => {
                $(let Coords::Rational($e) = &$e.coords else { return Err(AlgebraError::MixedAlgebras.into()) };)*
                $body
            }
        }
    };
}

fn new_element(alg: &OkuboAlgebraHandle, coords: Coords) -> *mut OkuboElementHandle {
    Box::into_raw(Box::new(OkuboElementHandle {
        algebra_id: alg.id,
        coords,
    }))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn okubo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn okubo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn okubo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates `O_{α,β}` over `field` (same syntax as the command line, e.g. "gf4", "3(t)").
///
/// # Safety
/// String arguments must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_algebra_new(
    field: *const c_char,
    alpha: *const c_char,
    beta: *const c_char,
    out: *mut *mut OkuboAlgebraHandle,
) -> OkuboStatus {
    guard(|| {
        let (field, alpha, beta) = (
            read_str(field, "field")?,
            read_str(alpha, "alpha")?,
            read_str(beta, "beta")?,
        );
        let alg = AnyAlgebra::from_strings(field, alpha, beta, false)?;
        let handle = Box::new(OkuboAlgebraHandle {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            alg,
        });
        write_out(out, Box::into_raw(handle))
    })
}

/// Releases an algebra. Elements created from it stay valid but can only be freed.
///
/// # Safety
/// `alg` must come from [`okubo_algebra_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn okubo_algebra_free(alg: *mut OkuboAlgebraHandle) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Field, parameters, splitness and related facts, one `key: value` per line.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_algebra_info(
    alg: *const OkuboAlgebraHandle,
    out: *mut *mut c_char,
) -> OkuboStatus {
    guard(|| write_string(out, deref(alg, "algebra")?.alg.info()))
}

/// Parses an element such as "z01 - z11" or "(z01 - z11)*(z01 - z11)".
///
/// # Safety
/// `alg` must be a live handle, `src` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_element_parse(
    alg: *const OkuboAlgebraHandle,
    src: *const c_char,
    out: *mut *mut OkuboElementHandle,
) -> OkuboStatus {
    guard(|| {
        let alg = deref(alg, "algebra")?;
        let src = read_str(src, "element")?;
        let coords = match &alg.alg {
            AnyAlgebra::Finite(a) => Coords::Finite(parse_element(a, src).map_err(CliError::from)?),
            AnyAlgebra::Rational(a) => {
                Coords::Rational(parse_element(a, src).map_err(CliError::from)?)
            }
        };
        write_out(out, new_element(alg, coords))
    })
}

/// # Safety
/// `x` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn okubo_element_free(x: *mut OkuboElementHandle) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// The element in the form accepted by [`okubo_element_parse`].
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_element_to_string(
    alg: *const OkuboAlgebraHandle,
    x: *const OkuboElementHandle,
    out: *mut *mut c_char,
) -> OkuboStatus {
    guard(|| {
        let (alg, x) = (deref(alg, "algebra")?, deref(x, "x")?);
        same_algebra(alg, &[x])?;
        let s = with_coords!(alg, [x], a => a.format_element(x));
        write_string(out, s)
    })
}

/// Coordinates as `{c10, c20, c01, c02, c11, c22, c12, c21}`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_element_coordinates(
    alg: *const OkuboAlgebraHandle,
    x: *const OkuboElementHandle,
    out: *mut *mut c_char,
) -> OkuboStatus {
    guard(|| {
        let (alg, x) = (deref(alg, "algebra")?, deref(x, "x")?);
        same_algebra(alg, &[x])?;
        let s = with_coords!(alg, [x], a => a.format_vector(x));
        write_string(out, s)
    })
}

/// `x * y`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_mul(
    alg: *const OkuboAlgebraHandle,
    x: *const OkuboElementHandle,
    y: *const OkuboElementHandle,
    out: *mut *mut OkuboElementHandle,
) -> OkuboStatus {
    guard(|| {
        let (alg, x, y) = (deref(alg, "algebra")?, deref(x, "x")?, deref(y, "y")?);
        same_algebra(alg, &[x, y])?;
        let z = match (&alg.alg, &x.coords, &y.coords) {
            (AnyAlgebra::Finite(a), Coords::Finite(x), Coords::Finite(y)) => {
                Coords::Finite(a.mul(x, y))
            }
            (AnyAlgebra::Rational(a), Coords::Rational(x), Coords::Rational(y)) => {
                Coords::Rational(a.mul(x, y))
            }
            _ => return Err(AlgebraError::MixedAlgebras.into()),
        };
        write_out(out, new_element(alg, z))
    })
}

/// The polar form `n(x, y)`, printed in the field's syntax.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_bilin(
    alg: *const OkuboAlgebraHandle,
    x: *const OkuboElementHandle,
    y: *const OkuboElementHandle,
    out: *mut *mut c_char,
) -> OkuboStatus {
    guard(|| {
        let (alg, x, y) = (deref(alg, "algebra")?, deref(x, "x")?, deref(y, "y")?);
        same_algebra(alg, &[x, y])?;
        let s = with_coords!(alg, [x, y], a => a.field().format(&a.bilin(x, y)));
        write_string(out, s)
    })
}

/// The quadratic norm `n(x)`, printed in the field's syntax.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_qnorm(
    alg: *const OkuboAlgebraHandle,
    x: *const OkuboElementHandle,
    out: *mut *mut c_char,
) -> OkuboStatus {
    guard(|| {
        let (alg, x) = (deref(alg, "algebra")?, deref(x, "x")?);
        same_algebra(alg, &[x])?;
        let s = with_coords!(alg, [x], a => a.field().format(&a.qnorm(x)));
        write_string(out, s)
    })
}

/// Class of a zero divisor; `NotZeroDivisor` otherwise.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_classify(
    alg: *const OkuboAlgebraHandle,
    x: *const OkuboElementHandle,
    out: *mut OkuboClass,
) -> OkuboStatus {
    guard(|| {
        let (alg, x) = (deref(alg, "algebra")?, deref(x, "x")?);
        same_algebra(alg, &[x])?;
        let class = with_coords!(alg, [x], a => a.classify(x));
        let class = match class? {
            ZeroDivisorClass::TypeA => OkuboClass::TypeA,
            ZeroDivisorClass::TypeB => OkuboClass::TypeB,
            ZeroDivisorClass::TypeC => OkuboClass::TypeC,
        };
        write_out(out, class)
    })
}

/// Runs a verification suite by its command-line name ("identities", "all", ...).
/// `passed` receives the verdict and `report` the text the command line prints.
/// `exact_limit` 0 selects the default.
///
/// # Safety
/// `alg` must be live, `suite` nul-terminated, `passed` and `report` writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_verify(
    alg: *const OkuboAlgebraHandle,
    suite: *const c_char,
    seed: u64,
    exact_limit: usize,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> OkuboStatus {
    guard(|| {
        let alg = deref(alg, "algebra")?;
        let name = read_str(suite, "suite")?;
        let suite = Suite::from_str(name, true)
            .map_err(|_| Failure(OkuboStatus::ParseError, format!("unknown suite {name:?}")))?;
        let exact_limit = if exact_limit == 0 {
            EXACT_LIMIT
        } else {
            exact_limit
        };
        let results = run_suite(&alg.alg, suite, &SuiteOptions { seed, exact_limit })?;
        let ok = results.iter().all(|r| r.passed);
        let text: String = results.iter().map(|r| r.render()).collect();
        write_out(passed, ok)?;
        write_string(report, text)
    })
}

/// The JSON report of the orthogonality graph (finite fields only).
/// `exact_limit` 0 selects the default.
///
/// # Safety
/// `alg` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn okubo_graph_report(
    alg: *const OkuboAlgebraHandle,
    seed: u64,
    exact_limit: usize,
    out: *mut *mut c_char,
) -> OkuboStatus {
    guard(|| {
        let alg = deref(alg, "algebra")?;
        let a = alg
            .alg
            .finite()
            .ok_or_else(|| CliError::from(GraphError::InfiniteField))?;
        let exact_limit = if exact_limit == 0 {
            EXACT_LIMIT
        } else {
            exact_limit
        };
        let g = OrthGraph::build(a);
        write_string(out, export_report(a, &g, exact_limit, seed).to_json())
    })
}
