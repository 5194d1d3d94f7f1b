//! C interface to qpkit.
//!
//! Graphs and certificates are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible function
//! returns a [`QpStatus`]; on failure [`qp_last_error_message`] describes
//! the problem. Strings returned by the library are freed with
//! [`qp_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qpkit::constructions::{odd_cycle_family, remark_counterexample, FamilySpec};
use qpkit::{
    chromatic_number, clique_number, independence_number, parse_graph6, verify_certificate, Graph, Mode,
    PerfectionChecker, RecognitionConfig, Recognizer,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidGraph = 4,
    LimitExceeded = 5,
    InvalidCertificate = 6,
    ConstructionError = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpMode {
    Pure = 0,
    Accelerated = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QpInvariants {
    pub omega: u32,
    pub alpha: u32,
    pub chi: u32,
}

/// Opaque graph handle.
pub struct QpGraph(Graph);

/// Opaque decomposition certificate handle.
pub struct QpCert(qpkit::QpCertificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes were replaced"));
}

type Outcome = Result<(), (QpStatus, String)>;

fn guard(body: impl FnOnce() -> Outcome) -> QpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            QpStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QpStatus::Panic
        }
    }
}

fn null() -> (QpStatus, String) {
    (QpStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (QpStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|e| (QpStatus::InvalidUtf8, e.to_string()))
}

unsafe fn graph<'a>(g: *const QpGraph) -> Result<&'a Graph, (QpStatus, String)> {
    g.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn new_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings contain no nul").into_raw()
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn qp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph6 string.
///
/// # Safety
/// `graph6` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_graph_from_graph6(graph6: *const c_char, out: *mut *mut QpGraph) -> QpStatus {
    guard(|| {
        let g = parse_graph6(text(graph6)?).map_err(|e| (QpStatus::ParseError, e.to_string()))?;
        put(out, Box::into_raw(Box::new(QpGraph(g))))
    })
}

/// Builds a graph from `edge_count` pairs stored flat in `edges`
/// (`u0, v0, u1, v1, ...`).
///
/// # Safety
/// `edges` must point to `2 * edge_count` values (may be null when zero).
#[no_mangle]
pub unsafe extern "C" fn qp_graph_from_edges(
    n: u32,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut QpGraph,
) -> QpStatus {
    guard(|| {
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0] as usize, p[1] as usize));
        let g = Graph::from_edges(n as usize, pairs).map_err(|e| (QpStatus::InvalidGraph, e.to_string()))?;
        put(out, Box::into_raw(Box::new(QpGraph(g))))
    })
}

/// # Safety
/// `g` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn qp_graph_free(g: *mut QpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices; 0 for null.
///
/// # Safety
/// `g` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn qp_graph_order(g: *const QpGraph) -> u32 {
    g.as_ref().map_or(0, |h| h.0.order() as u32)
}

/// Number of edges; 0 for null.
///
/// # Safety
/// `g` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn qp_graph_size(g: *const QpGraph) -> u32 {
    g.as_ref().map_or(0, |h| h.0.size() as u32)
}

/// graph6 encoding; free with [`qp_string_free`].
///
/// # Safety
/// `g` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_graph_to_graph6(g: *const QpGraph, out: *mut *mut c_char) -> QpStatus {
    guard(|| put(out, new_string(graph(g)?.to_graph6())))
}

/// # Safety
/// `g` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_graph_invariants(g: *const QpGraph, out: *mut QpInvariants) -> QpStatus {
    guard(|| {
        let g = graph(g)?;
        let inv = QpInvariants {
            omega: clique_number(g) as u32,
            alpha: independence_number(g) as u32,
            chi: chromatic_number(g) as u32,
        };
        put(out, inv)
    })
}

/// Exact perfection test; `limit` caps the order (0 selects the default).
///
/// # Safety
/// `g` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_graph_is_perfect(g: *const QpGraph, limit: u32, out: *mut bool) -> QpStatus {
    guard(|| {
        let checker = if limit == 0 { PerfectionChecker::default() } else { PerfectionChecker::new(limit as usize) };
        let p = checker.is_perfect(graph(g)?).map_err(|e| (QpStatus::LimitExceeded, e.to_string()))?;
        put(out, p)
    })
}

/// Decides quasiperfection. When `cert_out` is non-null it receives a
/// certificate for accepted graphs and null otherwise. `limit` caps the
/// order (0 selects the default).
///
/// # Safety
/// `g` must be a valid handle; `out` must be writable; `cert_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn qp_graph_is_quasiperfect(
    g: *const QpGraph,
    mode: QpMode,
    limit: u32,
    out: *mut bool,
    cert_out: *mut *mut QpCert,
) -> QpStatus {
    guard(|| {
        let g = graph(g)?;
        let mode = match mode {
            QpMode::Pure => Mode::Pure,
            QpMode::Accelerated => Mode::Accelerated,
        };
        let mut config = RecognitionConfig { mode, ..RecognitionConfig::default() };
        if limit != 0 {
            config.limit = limit as usize;
        }
        let outcome = Recognizer::new(config)
            .recognize(g)
            .map_err(|e| (QpStatus::LimitExceeded, e.to_string()))?;
        put(out, outcome.quasiperfect)?;
        if !cert_out.is_null() {
            let handle = outcome.certificate.map_or(ptr::null_mut(), |c| Box::into_raw(Box::new(QpCert(c))));
            cert_out.write(handle);
        }
        Ok(())
    })
}

/// JSON (`qpcert-v1`); free with [`qp_string_free`].
///
/// # Safety
/// `c` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_certificate_to_json(c: *const QpCert, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(null)?;
        put(out, new_string(c.0.to_json()))
    })
}

/// Parses certificate JSON. Parsing does not verify; use
/// [`qp_certificate_verify`].
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_certificate_from_json(json: *const c_char, out: *mut *mut QpCert) -> QpStatus {
    guard(|| {
        let cert = qpkit::QpCertificate::from_json(text(json)?)
            .map_err(|e| (QpStatus::InvalidCertificate, e.to_string()))?;
        put(out, Box::into_raw(Box::new(QpCert(cert))))
    })
}

/// `QP_STATUS_OK` iff `c` is a valid certificate for `g`.
///
/// # Safety
/// Both handles must be valid.
#[no_mangle]
pub unsafe extern "C" fn qp_certificate_verify(g: *const QpGraph, c: *const QpCert) -> QpStatus {
    guard(|| {
        let g = graph(g)?;
        let c = c.as_ref().ok_or_else(null)?;
        verify_certificate(g, &c.0).map_err(|e| (QpStatus::InvalidCertificate, e.to_string()))
    })
}

/// # Safety
/// `c` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn qp_certificate_free(c: *mut QpCert) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Odd cycle `C_n` with a triangle attached at each 1-based position.
///
/// # Safety
/// `positions` must point to `count` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_family_graph(
    n: u32,
    positions: *const u32,
    count: usize,
    out: *mut *mut QpGraph,
) -> QpStatus {
    guard(|| {
        let ks: Vec<usize> = if count == 0 {
            Vec::new()
        } else if positions.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(positions, count).iter().map(|&k| k as usize).collect()
        };
        let spec = FamilySpec::new(n as usize, ks).map_err(|e| (QpStatus::ConstructionError, e.to_string()))?;
        put(out, Box::into_raw(Box::new(QpGraph(odd_cycle_family(&spec).graph))))
    })
}

/// `C_5` blown up by `t` plus one vertex joined to two adjacent cliques.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_counterexample_graph(t: u32, out: *mut *mut QpGraph) -> QpStatus {
    guard(|| {
        let g = remark_counterexample(t as usize).map_err(|e| (QpStatus::ConstructionError, e.to_string()))?;
        put(out, Box::into_raw(Box::new(QpGraph(g))))
    })
}
