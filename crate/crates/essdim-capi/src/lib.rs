//! C ABI for the essdim library.
//!
//! Conventions:
//!
//! * Matrices and certificates are opaque handles created and freed by
//!   this library (`essdim_matrix_free`, `essdim_certificate_free`);
//!   strings returned by `*_to_text` functions are freed with
//!   `essdim_string_free`.
//! * Every fallible function returns an [`EssdimStatus`] and writes its
//!   result through out-pointers, which are left untouched on failure.
//! * On failure, `essdim_last_error_message` returns a thread-local,
//!   NUL-terminated description valid until the next call on the same
//!   thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use num_bigint::BigInt;

use essdim::ed::{self, TorusActionSpec};
use essdim::intmat::IntMatrix;
use essdim::laurent;

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EssdimStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Text input could not be parsed.
    ParseError = 2,
    /// A precondition on the inputs was violated.
    DomainError = 3,
    /// A value does not fit the requested fixed-width type or buffer.
    RangeError = 4,
}

/// Opaque arbitrary-precision integer matrix.
pub struct EssdimMatrix(IntMatrix);

/// Opaque transcendence-independence certificate.
pub struct EssdimCertificate(ed::IndependenceCertificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl AsRef<str>) {
    let sanitized = message.as_ref().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("NUL bytes removed");
    });
}

fn fail(status: EssdimStatus, message: impl AsRef<str>) -> EssdimStatus {
    set_error(message);
    status
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next essdim call on the same thread.
#[no_mangle]
pub extern "C" fn essdim_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn matrix_ref<'a>(handle: *const EssdimMatrix) -> Option<&'a IntMatrix> {
    handle.as_ref().map(|m| &m.0)
}

fn give_matrix(out: *mut *mut EssdimMatrix, matrix: IntMatrix) -> EssdimStatus {
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    unsafe { *out = Box::into_raw(Box::new(EssdimMatrix(matrix))) };
    EssdimStatus::Ok
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, EssdimStatus> {
    if ptr.is_null() {
        return Err(fail(EssdimStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(EssdimStatus::ParseError, "string argument is not UTF-8"))
}

/// Parses matrix text (rows split by `;` or newlines, entries by
/// whitespace) into a new handle.
#[no_mangle]
pub unsafe extern "C" fn essdim_matrix_parse(
    text: *const c_char,
    out: *mut *mut EssdimMatrix,
) -> EssdimStatus {
    let text = match read_str(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match text.parse::<IntMatrix>() {
        Ok(matrix) => give_matrix(out, matrix),
        Err(e) => fail(EssdimStatus::ParseError, e.to_string()),
    }
}

/// Builds a matrix from a dense row-major `i64` buffer of length
/// `rows * cols`.
#[no_mangle]
pub unsafe extern "C" fn essdim_matrix_from_i64(
    rows: usize,
    cols: usize,
    entries: *const i64,
    out: *mut *mut EssdimMatrix,
) -> EssdimStatus {
    if entries.is_null() && rows * cols > 0 {
        return fail(EssdimStatus::NullPointer, "entry buffer is null");
    }
    let matrix = IntMatrix::from_fn(rows, cols, |r, c| {
        BigInt::from(unsafe { *entries.add(r * cols + c) })
    });
    give_matrix(out, matrix)
}

#[no_mangle]
pub unsafe extern "C" fn essdim_matrix_free(matrix: *mut EssdimMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

#[no_mangle]
pub unsafe extern "C" fn essdim_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Number of rows; zero for a null handle.
#[no_mangle]
pub unsafe extern "C" fn essdim_matrix_rows(matrix: *const EssdimMatrix) -> usize {
    matrix_ref(matrix).map_or(0, IntMatrix::rows)
}

/// Number of columns; zero for a null handle.
#[no_mangle]
pub unsafe extern "C" fn essdim_matrix_cols(matrix: *const EssdimMatrix) -> usize {
    matrix_ref(matrix).map_or(0, IntMatrix::cols)
}

/// Reads one entry, failing with `RangeError` when it does not fit `i64`.
#[no_mangle]
pub unsafe extern "C" fn essdim_matrix_entry_i64(
    matrix: *const EssdimMatrix,
    row: usize,
    col: usize,
    out: *mut i64,
) -> EssdimStatus {
    let Some(m) = matrix_ref(matrix) else {
        return fail(EssdimStatus::NullPointer, "matrix handle is null");
    };
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    if row >= m.rows() || col >= m.cols() {
        return fail(
            EssdimStatus::RangeError,
            format!(
                "index ({row}, {col}) out of bounds for {}x{}",
                m.rows(),
                m.cols()
            ),
        );
    }
    match i64::try_from(&m[(row, col)]) {
        Ok(value) => {
            *out = value;
            EssdimStatus::Ok
        }
        Err(_) => fail(EssdimStatus::RangeError, "entry does not fit in i64"),
    }
}

/// Renders the matrix in the text format accepted by
/// `essdim_matrix_parse`. Free with `essdim_string_free`.
#[no_mangle]
pub unsafe extern "C" fn essdim_matrix_to_text(matrix: *const EssdimMatrix) -> *mut c_char {
    match matrix_ref(matrix) {
        Some(m) => CString::new(m.to_string())
            .expect("matrix text has no NUL bytes")
            .into_raw(),
        None => std::ptr::null_mut(),
    }
}

/// Rank over the rationals.
#[no_mangle]
pub unsafe extern "C" fn essdim_matrix_rank(
    matrix: *const EssdimMatrix,
    out: *mut usize,
) -> EssdimStatus {
    let Some(m) = matrix_ref(matrix) else {
        return fail(EssdimStatus::NullPointer, "matrix handle is null");
    };
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    *out = m.rank_rational();
    EssdimStatus::Ok
}

/// Determinantal rank modulo `modulus` (absolute value at least 2).
#[no_mangle]
pub unsafe extern "C" fn essdim_matrix_rank_mod(
    matrix: *const EssdimMatrix,
    modulus: i64,
    out: *mut usize,
) -> EssdimStatus {
    let Some(m) = matrix_ref(matrix) else {
        return fail(EssdimStatus::NullPointer, "matrix handle is null");
    };
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    match m.rank_mod(&BigInt::from(modulus)) {
        Ok(rank) => {
            *out = rank;
            EssdimStatus::Ok
        }
        Err(e) => fail(EssdimStatus::DomainError, e.to_string()),
    }
}

/// Smith normal form `p * a * q = d`; writes three new matrix handles.
#[no_mangle]
pub unsafe extern "C" fn essdim_smith_normal_form(
    matrix: *const EssdimMatrix,
    p_out: *mut *mut EssdimMatrix,
    d_out: *mut *mut EssdimMatrix,
    q_out: *mut *mut EssdimMatrix,
) -> EssdimStatus {
    let Some(m) = matrix_ref(matrix) else {
        return fail(EssdimStatus::NullPointer, "matrix handle is null");
    };
    if p_out.is_null() || d_out.is_null() || q_out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    let snf = m.smith_normal_form();
    give_matrix(p_out, snf.p().clone());
    give_matrix(d_out, snf.d().clone());
    give_matrix(q_out, snf.q().clone())
}

/// Elementary divisors as a `1 x r` matrix handle (entries can exceed
/// `i64`, so they are returned with full precision).
#[no_mangle]
pub unsafe extern "C" fn essdim_elementary_divisors(
    matrix: *const EssdimMatrix,
    out: *mut *mut EssdimMatrix,
) -> EssdimStatus {
    let Some(m) = matrix_ref(matrix) else {
        return fail(EssdimStatus::NullPointer, "matrix handle is null");
    };
    let divisors = m.elementary_divisors();
    let row = IntMatrix::from_fn(1, divisors.len(), |_, c| divisors[c].clone());
    give_matrix(out, row)
}

/// Essential dimension of the torus orbit functor of the exponent matrix.
#[no_mangle]
pub unsafe extern "C" fn essdim_ed_torus(
    exponents: *const EssdimMatrix,
    out: *mut usize,
) -> EssdimStatus {
    let Some(e) = matrix_ref(exponents) else {
        return fail(EssdimStatus::NullPointer, "matrix handle is null");
    };
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    *out = ed::ed_torus(&TorusActionSpec::new(e.clone()));
    EssdimStatus::Ok
}

/// Essential dimension of the induced action on projective space.
#[no_mangle]
pub unsafe extern "C" fn essdim_ed_projective(
    exponents: *const EssdimMatrix,
    out: *mut usize,
) -> EssdimStatus {
    let Some(e) = matrix_ref(exponents) else {
        return fail(EssdimStatus::NullPointer, "matrix handle is null");
    };
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    if e.rows() == 0 {
        return fail(
            EssdimStatus::DomainError,
            "projective action needs at least one coordinate",
        );
    }
    *out = ed::ed_projective(&TorusActionSpec::new(e.clone()));
    EssdimStatus::Ok
}

/// Canonical dimension of the torus action.
#[no_mangle]
pub unsafe extern "C" fn essdim_cd_torus(
    exponents: *const EssdimMatrix,
    out: *mut usize,
) -> EssdimStatus {
    let Some(e) = matrix_ref(exponents) else {
        return fail(EssdimStatus::NullPointer, "matrix handle is null");
    };
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    *out = ed::cd_torus(&TorusActionSpec::new(e.clone()));
    EssdimStatus::Ok
}

/// Essential dimension of rigid `degree`-forms on a `dimension`-space.
#[no_mangle]
pub unsafe extern "C" fn essdim_ed_forms(
    dimension: usize,
    degree: usize,
    out: *mut usize,
) -> EssdimStatus {
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    match ed::ed_forms(dimension, degree) {
        Ok(value) => {
            *out = value;
            EssdimStatus::Ok
        }
        Err(e) => fail(EssdimStatus::DomainError, e.to_string()),
    }
}

/// Essential dimension of rigid degree-`degree` hypersurfaces.
#[no_mangle]
pub unsafe extern "C" fn essdim_ed_hypersurface(
    dimension: usize,
    degree: usize,
    out: *mut usize,
) -> EssdimStatus {
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    match ed::ed_hypersurface(dimension, degree) {
        Ok(value) => {
            *out = value;
            EssdimStatus::Ok
        }
        Err(e) => fail(EssdimStatus::DomainError, e.to_string()),
    }
}

/// Essential dimension (rank) of the finite abelian group with the given
/// cyclic moduli.
#[no_mangle]
pub unsafe extern "C" fn essdim_ed_abelian(
    moduli: *const i64,
    len: usize,
    out: *mut usize,
) -> EssdimStatus {
    if (moduli.is_null() && len > 0) || out.is_null() {
        return fail(EssdimStatus::NullPointer, "pointer argument is null");
    }
    let values: Vec<BigInt> = (0..len).map(|i| BigInt::from(*moduli.add(i))).collect();
    match ed::ed_abelian(&values) {
        Ok(value) => {
            *out = value;
            EssdimStatus::Ok
        }
        Err(e) => fail(EssdimStatus::DomainError, e.to_string()),
    }
}

/// Minimum of `rank(I + E*U)` over all `U` with entries bounded by
/// `bound`; writes the minimum and the lexicographically smallest witness.
#[no_mangle]
pub unsafe extern "C" fn essdim_compression_search(
    exponents: *const EssdimMatrix,
    bound: usize,
    min_rank: *mut usize,
    witness: *mut *mut EssdimMatrix,
) -> EssdimStatus {
    let Some(e) = matrix_ref(exponents) else {
        return fail(EssdimStatus::NullPointer, "matrix handle is null");
    };
    if min_rank.is_null() || witness.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    let result = ed::compression_search(&TorusActionSpec::new(e.clone()), bound);
    *min_rank = result.achieved_rank();
    give_matrix(witness, result.parameter_valuations().clone())
}

/// Builds the independence certificate for the rows of `valuations`.
#[no_mangle]
pub unsafe extern "C" fn essdim_independence_certificate(
    valuations: *const EssdimMatrix,
    out: *mut *mut EssdimCertificate,
) -> EssdimStatus {
    let Some(v) = matrix_ref(valuations) else {
        return fail(EssdimStatus::NullPointer, "matrix handle is null");
    };
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    match ed::construct_independent(v) {
        Ok(cert) => {
            *out = Box::into_raw(Box::new(EssdimCertificate(cert)));
            EssdimStatus::Ok
        }
        Err(e) => fail(EssdimStatus::DomainError, e.to_string()),
    }
}

#[no_mangle]
pub unsafe extern "C" fn essdim_certificate_free(cert: *mut EssdimCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Number of independent elements the certificate witnesses.
#[no_mangle]
pub unsafe extern "C" fn essdim_certificate_rank(cert: *const EssdimCertificate) -> usize {
    cert.as_ref().map_or(0, |c| c.0.rank())
}

/// The positive scale factor, failing with `RangeError` if it exceeds
/// `i64`.
#[no_mangle]
pub unsafe extern "C" fn essdim_certificate_lambda_i64(
    cert: *const EssdimCertificate,
    out: *mut i64,
) -> EssdimStatus {
    let Some(c) = cert.as_ref() else {
        return fail(EssdimStatus::NullPointer, "certificate handle is null");
    };
    if out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    match i64::try_from(c.0.lambda()) {
        Ok(value) => {
            *out = value;
            EssdimStatus::Ok
        }
        Err(_) => fail(EssdimStatus::RangeError, "lambda does not fit in i64"),
    }
}

/// The multiplier matrix as a new handle.
#[no_mangle]
pub unsafe extern "C" fn essdim_certificate_multipliers(
    cert: *const EssdimCertificate,
    out: *mut *mut EssdimMatrix,
) -> EssdimStatus {
    let Some(c) = cert.as_ref() else {
        return fail(EssdimStatus::NullPointer, "certificate handle is null");
    };
    give_matrix(out, c.0.lambda_matrix().clone())
}

/// The certified valuation rows as a new handle.
#[no_mangle]
pub unsafe extern "C" fn essdim_certificate_g_exponents(
    cert: *const EssdimCertificate,
    out: *mut *mut EssdimMatrix,
) -> EssdimStatus {
    let Some(c) = cert.as_ref() else {
        return fail(EssdimStatus::NullPointer, "certificate handle is null");
    };
    give_matrix(out, c.0.g_exponents().clone())
}

/// Copies the selected row and column indices into caller buffers of
/// length `essdim_certificate_rank`.
#[no_mangle]
pub unsafe extern "C" fn essdim_certificate_selection(
    cert: *const EssdimCertificate,
    rows_out: *mut usize,
    cols_out: *mut usize,
    len: usize,
) -> EssdimStatus {
    let Some(c) = cert.as_ref() else {
        return fail(EssdimStatus::NullPointer, "certificate handle is null");
    };
    if rows_out.is_null() || cols_out.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    if len != c.0.rank() {
        return fail(
            EssdimStatus::RangeError,
            format!(
                "buffer length {len} does not match certificate rank {}",
                c.0.rank()
            ),
        );
    }
    for (i, &r) in c.0.row_select().iter().enumerate() {
        *rows_out.add(i) = r;
    }
    for (i, &col) in c.0.col_select().iter().enumerate() {
        *cols_out.add(i) = col;
    }
    EssdimStatus::Ok
}

unsafe fn exponent_of(
    vars: *const c_char,
    expr: *const c_char,
    out_coords: *mut i64,
    len: usize,
    initial: bool,
) -> EssdimStatus {
    let vars = match read_str(vars) {
        Ok(v) => v,
        Err(status) => return status,
    };
    let expr = match read_str(expr) {
        Ok(v) => v,
        Err(status) => return status,
    };
    if out_coords.is_null() {
        return fail(EssdimStatus::NullPointer, "output pointer is null");
    }
    let names: Vec<&str> = vars.split(',').map(str::trim).collect();
    if names.len() != len {
        return fail(
            EssdimStatus::RangeError,
            format!(
                "buffer length {len} does not match {} variables",
                names.len()
            ),
        );
    }
    let poly = match laurent::parse_laurent(expr, &names) {
        Ok(p) => p,
        Err(e) => return fail(EssdimStatus::ParseError, e.to_string()),
    };
    let value = if initial {
        poly.initial_exponent()
    } else {
        poly.valuation()
    };
    match value {
        Ok(v) => {
            for (i, &coord) in v.coords().iter().enumerate() {
                *out_coords.add(i) = coord;
            }
            EssdimStatus::Ok
        }
        Err(e) => fail(EssdimStatus::DomainError, e.to_string()),
    }
}

/// Valuation (lexicographically smallest exponent) of an expression over
/// comma-separated variable names; writes `len` coordinates.
#[no_mangle]
pub unsafe extern "C" fn essdim_valuation(
    vars: *const c_char,
    expr: *const c_char,
    out_coords: *mut i64,
    len: usize,
) -> EssdimStatus {
    exponent_of(vars, expr, out_coords, len, false)
}

/// Initial exponent (lexicographically largest) of an expression.
#[no_mangle]
pub unsafe extern "C" fn essdim_initial_exponent(
    vars: *const c_char,
    expr: *const c_char,
    out_coords: *mut i64,
    len: usize,
) -> EssdimStatus {
    exponent_of(vars, expr, out_coords, len, true)
}
