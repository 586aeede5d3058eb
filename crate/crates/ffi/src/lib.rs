//! C interface to `bidim`.
//!
//! Objects are opaque handles created by `*_from_json` or derived calls and
//! released with the matching `*_free`. Every call returns a
//! [`BidimStatus`]; on failure, [`bidim_last_error`] gives the message for
//! the calling thread. Strings handed out must be released with
//! [`bidim_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bidim::geometry::{xi, Arrangement};
use bidim::graph::Multigraph;
use bidim::intersect::{check_bundle, intersection_graph, planarize};
use bidim::solver::winwin_vc;
use bidim::treewidth::{treewidth_exact, treewidth_lower, treewidth_upper};
use bidim::{Error, Limits};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BidimStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    CapExceeded = 5,
    Panic = 6,
}

/// A validated arrangement of polysegments.
pub struct BidimArrangement(Arrangement);

/// A graph with stable vertex and edge ids.
pub struct BidimGraph(Multigraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> BidimStatus {
    match e {
        Error::Json(_) => BidimStatus::Parse,
        Error::CapExceeded { .. } => BidimStatus::CapExceeded,
        _ => BidimStatus::Invalid,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), (BidimStatus, String)>) -> BidimStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BidimStatus::Ok,
        Ok(Err((status, msg))) => {
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
            BidimStatus::Panic
        }
    }
}

fn lift(e: Error) -> (BidimStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (BidimStatus, String) {
    (BidimStatus::NullArgument, "null argument".into())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (BidimStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (BidimStatus::InvalidUtf8, e.to_string()))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, (BidimStatus, String)> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), (BidimStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("json has no nul").into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bidim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn bidim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates an arrangement from `{"polysegments": [...]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bidim_arrangement_from_json(
    json: *const c_char,
    out: *mut *mut BidimArrangement,
) -> BidimStatus {
    guard(|| {
        let text = read_str(json)?;
        let arr: Arrangement = serde_json::from_str(text).map_err(|e| lift(e.into()))?;
        put(out, Box::into_raw(Box::new(BidimArrangement(arr))))
    })
}

/// # Safety
/// `a` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn bidim_arrangement_free(a: *mut BidimArrangement) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bidim_arrangement_len(a: *const BidimArrangement, out: *mut usize) -> BidimStatus {
    guard(|| put(out, get(a)?.0.len()))
}

/// Largest number of crossings on one polysegment.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bidim_arrangement_xi(a: *const BidimArrangement, out: *mut usize) -> BidimStatus {
    guard(|| put(out, xi(&get(a)?.0)))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bidim_intersection_graph(
    a: *const BidimArrangement,
    out: *mut *mut BidimGraph,
) -> BidimStatus {
    guard(|| {
        let g = intersection_graph(&get(a)?.0);
        put(out, Box::into_raw(Box::new(BidimGraph(g))))
    })
}

/// Planarizes the arrangement and runs every bundle check; `passed` is set
/// when all hold.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bidim_planarize_check(a: *const BidimArrangement, passed: *mut bool) -> BidimStatus {
    guard(|| {
        let arr = &get(a)?.0;
        let bundle = planarize(arr).map_err(lift)?;
        let check = check_bundle(&bundle, arr).map_err(lift)?;
        put(passed, check.passed())
    })
}

/// Parses a graph from `{"vertices": [...], "edges": [[id, u, v], ...]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bidim_graph_from_json(json: *const c_char, out: *mut *mut BidimGraph) -> BidimStatus {
    guard(|| {
        let text = read_str(json)?;
        let g: Multigraph = serde_json::from_str(text).map_err(|e| lift(e.into()))?;
        put(out, Box::into_raw(Box::new(BidimGraph(g))))
    })
}

/// # Safety
/// `g` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn bidim_graph_free(g: *mut BidimGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bidim_graph_counts(
    g: *const BidimGraph,
    vertices: *mut usize,
    edges: *mut usize,
) -> BidimStatus {
    guard(|| {
        let g = &get(g)?.0;
        put(vertices, g.vertex_count())?;
        put(edges, g.edge_count())
    })
}

/// # Safety
/// Pointers must be valid. The string is released with
/// [`bidim_string_free`].
#[no_mangle]
pub unsafe extern "C" fn bidim_graph_to_json(g: *const BidimGraph, out: *mut *mut c_char) -> BidimStatus {
    guard(|| {
        let text = serde_json::to_string(&get(g)?.0).map_err(|e| lift(e.into()))?;
        put(out, into_c_string(text))
    })
}

/// Exact treewidth for graphs of at most `cap` vertices.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bidim_treewidth_exact(g: *const BidimGraph, cap: usize, out: *mut usize) -> BidimStatus {
    guard(|| {
        let (w, _) = treewidth_exact(&get(g)?.0, cap).map_err(lift)?;
        put(out, w)
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bidim_treewidth_bounds(
    g: *const BidimGraph,
    lower: *mut usize,
    upper: *mut usize,
) -> BidimStatus {
    guard(|| {
        let g = &get(g)?.0;
        put(lower, treewidth_lower(g))?;
        put(upper, treewidth_upper(g).0)
    })
}

/// Decides whether `g` has a vertex cover of at most `k` vertices. The full
/// outcome is written as JSON to `report` when it is not null.
///
/// # Safety
/// Pointers must be valid; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn bidim_solve_vc(
    g: *const BidimGraph,
    xi: usize,
    k: usize,
    yes: *mut bool,
    report: *mut *mut c_char,
) -> BidimStatus {
    guard(|| {
        let outcome = winwin_vc(&get(g)?.0, xi, k, &Limits::default()).map_err(lift)?;
        put(yes, outcome.is_yes())?;
        if !report.is_null() {
            let text = serde_json::to_string(&outcome).map_err(|e| lift(e.into()))?;
            put(report, into_c_string(text))?;
        }
        Ok(())
    })
}
