//! C ABI over `qheis`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_parse`/`qheis_rmatrix`
//! and released with the matching `*_free`. Every fallible call returns a [`QheisStatus`];
//! the message of the last failure on the calling thread is available from
//! [`qheis_last_error`]. Panics are caught and reported as `QHEIS_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qheis::braid::{link_invariant, parse_braid, BraidWord};
use qheis::fock::{rinv_formula_matrix, rmatrix_formula_matrix, CMat, Reading, RepParams, C};
use qheis::hopf_verify::{self as hv, CheckReport};
use qheis::pbw::Preset;
use qheis::{rtt, Error, Truncation};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QheisStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    OutOfRange = 4,
    Internal = 5,
}

/// Exact verification suites available through [`qheis_verify`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QheisCheck {
    HopfAxioms = 0,
    Quasitriangular = 1,
    Qybe = 2,
    TwistConditions = 3,
    VElement = 4,
    Casimir = 5,
    URibbon = 6,
    Rtt = 7,
    RttMutations = 8,
    GroupHopf = 9,
    RttReductions = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QheisPreset {
    StandardH = 0,
    NonstandardW = 1,
    TwoParameter = 2,
}

/// A complex number as two doubles.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct QheisComplex {
    pub re: f64,
    pub im: f64,
}

/// Outcome of a verification suite.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct QheisCheckResult {
    pub pass: bool,
    pub residual_terms: u64,
}

/// Value of the link invariant at a cutoff, with its tail `|P_D - P_{D-2}|`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct QheisInvariant {
    pub value: QheisComplex,
    pub tail: f64,
    pub converged: bool,
    pub writhe: i64,
    pub strands: u64,
}

/// Parameters of a truncated Fock module (opaque).
pub struct QheisParams(RepParams);

/// A parsed braid word (opaque).
pub struct QheisBraid(BraidWord);

/// A dense complex matrix (opaque).
pub struct QheisMatrix(CMat);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(err: &Error) -> QheisStatus {
    match err {
        Error::BraidParse { .. } | Error::Expr { .. } => QheisStatus::ParseError,
        _ => QheisStatus::InvalidArgument,
    }
}

/// Runs `f`, recording failures and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (QheisStatus, String)>) -> QheisStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QheisStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QheisStatus::Internal
        }
    }
}

fn fail(err: Error) -> (QheisStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (QheisStatus, String) {
    (QheisStatus::NullPointer, format!("{what} is null"))
}

fn c(z: QheisComplex) -> C {
    C::new(z.re, z.im)
}

/// Copies the last error message of this thread into `buf` (NUL-terminated, truncated to
/// `len`). Returns the full message length in bytes, excluding the terminator.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn qheis_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Creates Fock-module parameters; `cutoff` is the number of states and must be at least 2.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn qheis_params_new(
    h: QheisComplex,
    w: QheisComplex,
    e: QheisComplex,
    n: QheisComplex,
    cutoff: u64,
    out: *mut *mut QheisParams,
) -> QheisStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = RepParams::new(c(h), c(w), c(e), c(n), cutoff as usize).map_err(fail)?;
        *out = Box::into_raw(Box::new(QheisParams(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from [`qheis_params_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qheis_params_free(p: *mut QheisParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses a braid word such as `"B3: s1 s2^-1 s1"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn qheis_braid_parse(text: *const c_char, out: *mut *mut QheisBraid) -> QheisStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (QheisStatus::ParseError, "braid text is not UTF-8".to_string()))?;
        let word = parse_braid(s).map_err(fail)?;
        *out = Box::into_raw(Box::new(QheisBraid(word)));
        Ok(())
    })
}

/// # Safety
/// `b` must be null or a handle from [`qheis_braid_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qheis_braid_free(b: *mut QheisBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Number of strands, or 0 for a null handle.
///
/// # Safety
/// `b` must be null or a live braid handle.
#[no_mangle]
pub unsafe extern "C" fn qheis_braid_strands(b: *const QheisBraid) -> u64 {
    b.as_ref().map_or(0, |b| b.0.strands as u64)
}

/// Writhe (exponent sum), or 0 for a null handle.
///
/// # Safety
/// `b` must be null or a live braid handle.
#[no_mangle]
pub unsafe extern "C" fn qheis_braid_writhe(b: *const QheisBraid) -> i64 {
    b.as_ref().map_or(0, |b| b.0.writhe())
}

/// The R-matrix (or its inverse) between two Fock modules of equal cutoff, `D² × D²`.
///
/// # Safety
/// `p1`, `p2` must be live parameter handles and `out` a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn qheis_rmatrix(
    p1: *const QheisParams,
    p2: *const QheisParams,
    inverse: bool,
    out: *mut *mut QheisMatrix,
) -> QheisStatus {
    guard(|| {
        let p1 = &p1.as_ref().ok_or_else(|| null("p1"))?.0;
        let p2 = &p2.as_ref().ok_or_else(|| null("p2"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        if p1.cutoff != p2.cutoff || p1.h != p2.h || p1.w != p2.w {
            return Err((QheisStatus::InvalidArgument, "p1 and p2 must share h, w and the cutoff".into()));
        }
        let m = if inverse {
            rinv_formula_matrix(p1, p2, Reading::Corrected)
        } else {
            rmatrix_formula_matrix(p1, p2, Reading::Corrected)
        };
        *out = Box::into_raw(Box::new(QheisMatrix(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from [`qheis_rmatrix`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qheis_matrix_free(m: *mut QheisMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn qheis_matrix_rows(m: *const QheisMatrix) -> u64 {
    m.as_ref().map_or(0, |m| m.0.nrows() as u64)
}

/// Number of columns, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn qheis_matrix_cols(m: *const QheisMatrix) -> u64 {
    m.as_ref().map_or(0, |m| m.0.ncols() as u64)
}

/// Reads entry `(row, col)`.
///
/// # Safety
/// `m` must be a live matrix handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qheis_matrix_get(
    m: *const QheisMatrix,
    row: u64,
    col: u64,
    out: *mut QheisComplex,
) -> QheisStatus {
    guard(|| {
        let m = &m.as_ref().ok_or_else(|| null("m"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let (r, k) = (row as usize, col as usize);
        if r >= m.nrows() || k >= m.ncols() {
            return Err((QheisStatus::OutOfRange, format!("({row}, {col}) outside {}×{}", m.nrows(), m.ncols())));
        }
        let z = m[(r, k)];
        *out = QheisComplex { re: z.re, im: z.im };
        Ok(())
    })
}

/// `P(x)` at the parameters' cutoff on every strand. `converged` compares the tail with `tol`.
///
/// # Safety
/// `b`, `p` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qheis_link_invariant(
    b: *const QheisBraid,
    p: *const QheisParams,
    tol: f64,
    out: *mut QheisInvariant,
) -> QheisStatus {
    guard(|| {
        let b = &b.as_ref().ok_or_else(|| null("b"))?.0;
        let p = &p.as_ref().ok_or_else(|| null("p"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if tol.is_nan() || tol <= 0.0 {
            return Err((QheisStatus::InvalidArgument, "tol must be positive".into()));
        }
        let r = link_invariant(b, p, tol);
        *out = QheisInvariant {
            value: QheisComplex { re: r.value[0], im: r.value[1] },
            tail: r.tail,
            converged: r.converged,
            writhe: r.writhe,
            strands: r.m as u64,
        };
        Ok(())
    })
}

fn run_check(check: QheisCheck, preset: Preset, trunc: Truncation) -> qheis::Result<CheckReport> {
    let alg = || hv::algebra_for(preset, trunc);
    let twisted = || hv::algebra_for(Preset::TwoParameter, trunc);
    match check {
        QheisCheck::HopfAxioms => hv::check_hopf_axioms(&alg(), preset),
        QheisCheck::Quasitriangular => hv::check_quasitriangular(&alg(), preset),
        QheisCheck::Qybe => hv::check_qybe(&alg(), preset),
        QheisCheck::TwistConditions => hv::check_twist_conditions(&twisted()),
        QheisCheck::VElement => hv::check_v_element(&twisted()),
        QheisCheck::Casimir => hv::check_casimir(&alg(), preset),
        QheisCheck::URibbon => hv::check_u_ribbon(&alg(), preset),
        QheisCheck::Rtt => rtt::check_rtt(trunc),
        QheisCheck::RttMutations => rtt::check_mutations(trunc),
        QheisCheck::GroupHopf => rtt::check_group_hopf(trunc),
        QheisCheck::RttReductions => rtt::check_reductions(trunc),
    }
}

/// Runs an exact verification suite at truncation orders `kh`, `kw` (both at least 1). The
/// twist suites always use the two-parameter algebra and the RTT suites ignore `preset`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qheis_verify(
    check: QheisCheck,
    preset: QheisPreset,
    kh: u32,
    kw: u32,
    out: *mut QheisCheckResult,
) -> QheisStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if kh == 0 || kw == 0 {
            return Err((QheisStatus::InvalidArgument, "truncation orders must be at least 1".into()));
        }
        let preset = match preset {
            QheisPreset::StandardH => Preset::StandardH,
            QheisPreset::NonstandardW => Preset::NonstandardW,
            QheisPreset::TwoParameter => Preset::TwoParameter,
        };
        let report = run_check(check, preset, Truncation::new(kh, kw)).map_err(fail)?;
        *out = QheisCheckResult { pass: report.pass, residual_terms: report.residual_terms as u64 };
        Ok(())
    })
}
