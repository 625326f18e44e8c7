//! C interface to `digraph-pfd`.
//!
//! Graphs and factorizations are opaque heap handles released with their
//! `_free` function. Every fallible call returns a [`DpfdStatus`] and
//! writes its result through an out-pointer; on failure a message is kept
//! per thread and can be read with [`dpfd_last_error_message`]. Strings
//! returned by the library are released with [`dpfd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use digraph_pfd::cartesian::cartesian_pfd;
use digraph_pfd::io::{parse_edge_list, serialize_edge_list};
use digraph_pfd::products::{cartesian_product, strong_product};
use digraph_pfd::relations::quotient;
use digraph_pfd::skeleton::cartesian_skeleton;
use digraph_pfd::strong::strong_pfd;
use digraph_pfd::{is_isomorphic, Digraph, Error, Factorization};

/// Result codes. `DPFD_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpfdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    NotConnected = 4,
    NotThin = 5,
    SizeLimitExceeded = 6,
    TimeBudgetExceeded = 7,
    BufferTooSmall = 8,
    Internal = 9,
    Panic = 10,
}

pub struct DpfdGraph(Digraph);

pub struct DpfdFactorization(Factorization);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> DpfdStatus {
    match err {
        Error::NotConnected => DpfdStatus::NotConnected,
        Error::NotThin => DpfdStatus::NotThin,
        Error::SizeLimitExceeded { .. } => DpfdStatus::SizeLimitExceeded,
        Error::TimeBudgetExceeded => DpfdStatus::TimeBudgetExceeded,
        Error::Format(_) => DpfdStatus::ParseError,
        Error::Internal(_) => DpfdStatus::Internal,
        _ => DpfdStatus::InvalidArgument,
    }
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), (DpfdStatus, String)>) -> DpfdStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DpfdStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("panic inside digraph-pfd");
            DpfdStatus::Panic
        }
    }
}

fn lib_err(err: Error) -> (DpfdStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (DpfdStatus, String) {
    (DpfdStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const DpfdGraph, what: &str) -> Result<&'a Digraph, (DpfdStatus, String)> {
    g.as_ref().map(|h| &h.0).ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), (DpfdStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn boxed_graph(g: Digraph) -> *mut DpfdGraph {
    Box::into_raw(Box::new(DpfdGraph(g)))
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dpfd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn dpfd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a digraph on `n` vertices from `arc_count` pairs stored flat in
/// `arcs` as `u0, v0, u1, v1, ...`.
///
/// # Safety
/// `arcs` must point to `2 * arc_count` readable values (or be null when
/// `arc_count` is zero); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_graph_new(
    n: usize,
    arcs: *const usize,
    arc_count: usize,
    out: *mut *mut DpfdGraph,
) -> DpfdStatus {
    guard(|| {
        let flat: &[usize] = if arc_count == 0 {
            &[]
        } else if arcs.is_null() {
            return Err(null("arcs"));
        } else {
            std::slice::from_raw_parts(arcs, 2 * arc_count)
        };
        let g = Digraph::new(n, flat.chunks_exact(2).map(|p| (p[0], p[1]))).map_err(lib_err)?;
        write_out(out, boxed_graph(g))
    })
}

/// Parses the edge-list text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_graph_parse(text: *const c_char, out: *mut *mut DpfdGraph) -> DpfdStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (DpfdStatus::ParseError, "text is not valid UTF-8".to_string()))?;
        let g = parse_edge_list(text).map_err(|e| lib_err(e.into()))?;
        write_out(out, boxed_graph(g))
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpfd_graph_free(g: *mut DpfdGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dpfd_graph_vertex_count(g: *const DpfdGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.vertex_count())
}

/// Arc count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dpfd_graph_arc_count(g: *const DpfdGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.arc_count())
}

/// Copies the arcs, sorted, as flat pairs into `buf`, which must hold
/// `2 * dpfd_graph_arc_count(g)` values.
///
/// # Safety
/// `g` must be a live handle and `buf` writable for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn dpfd_graph_arcs(g: *const DpfdGraph, buf: *mut usize, capacity: usize) -> DpfdStatus {
    guard(|| {
        let g = graph_ref(g, "graph")?;
        let needed = 2 * g.arc_count();
        if needed > capacity {
            return Err((DpfdStatus::BufferTooSmall, format!("need {needed} values, have {capacity}")));
        }
        if needed > 0 && buf.is_null() {
            return Err(null("buffer"));
        }
        for (i, (u, v)) in g.arcs().enumerate() {
            buf.add(2 * i).write(u);
            buf.add(2 * i + 1).write(v);
        }
        Ok(())
    })
}

/// Edge-list text of `g`; release with [`dpfd_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_graph_to_edge_list(g: *const DpfdGraph, out: *mut *mut c_char) -> DpfdStatus {
    guard(|| {
        let text = serialize_edge_list(graph_ref(g, "graph")?);
        write_out(out, CString::new(text).expect("edge lists contain no NUL").into_raw())
    })
}

unsafe fn collect_graphs(graphs: *const *const DpfdGraph, count: usize) -> Result<Vec<Digraph>, (DpfdStatus, String)> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if graphs.is_null() {
        return Err(null("graph array"));
    }
    std::slice::from_raw_parts(graphs, count).iter().map(|&g| graph_ref(g, "graph").cloned()).collect()
}

/// Strong product of `count` graphs; vertex ids are row-major over the
/// factor coordinates, first factor most significant.
///
/// # Safety
/// `graphs` must point to `count` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_strong_product(
    graphs: *const *const DpfdGraph,
    count: usize,
    out: *mut *mut DpfdGraph,
) -> DpfdStatus {
    guard(|| {
        let factors = collect_graphs(graphs, count)?;
        let product = strong_product(&factors).map_err(lib_err)?;
        write_out(out, boxed_graph(product.into_graph()))
    })
}

/// Cartesian product, same vertex numbering as [`dpfd_strong_product`].
///
/// # Safety
/// `graphs` must point to `count` live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_cartesian_product(
    graphs: *const *const DpfdGraph,
    count: usize,
    out: *mut *mut DpfdGraph,
) -> DpfdStatus {
    guard(|| {
        let factors = collect_graphs(graphs, count)?;
        let product = cartesian_product(&factors).map_err(lib_err)?;
        write_out(out, boxed_graph(product.into_graph()))
    })
}

/// Cartesian skeleton of a connected thin digraph.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_cartesian_skeleton(g: *const DpfdGraph, out: *mut *mut DpfdGraph) -> DpfdStatus {
    guard(|| {
        let result = cartesian_skeleton(graph_ref(g, "graph")?).map_err(lib_err)?;
        write_out(out, boxed_graph(result.skeleton))
    })
}

/// Quotient by the `S` relation. When `mult` is non-null it receives the
/// class sizes and must hold `dpfd_graph_vertex_count(g)` values.
///
/// # Safety
/// `g` must be a live handle; `mult` null or writable for `capacity`
/// values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_quotient(
    g: *const DpfdGraph,
    mult: *mut usize,
    capacity: usize,
    out: *mut *mut DpfdGraph,
) -> DpfdStatus {
    guard(|| {
        let q = quotient(graph_ref(g, "graph")?);
        if !mult.is_null() {
            if q.mult.len() > capacity {
                return Err((DpfdStatus::BufferTooSmall, format!("need {} values, have {capacity}", q.mult.len())));
            }
            ptr::copy_nonoverlapping(q.mult.as_ptr(), mult, q.mult.len());
        }
        write_out(out, boxed_graph(q.quotient))
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_is_isomorphic(a: *const DpfdGraph, b: *const DpfdGraph, out: *mut bool) -> DpfdStatus {
    guard(|| {
        let same = is_isomorphic(graph_ref(a, "first graph")?, graph_ref(b, "second graph")?).map_err(lib_err)?;
        write_out(out, same)
    })
}

/// Prime factors with respect to the strong product.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_strong_pfd(g: *const DpfdGraph, out: *mut *mut DpfdFactorization) -> DpfdStatus {
    guard(|| {
        let f = strong_pfd(graph_ref(g, "graph")?).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(DpfdFactorization(f))))
    })
}

/// Prime factors with respect to the Cartesian product.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_cartesian_pfd(g: *const DpfdGraph, out: *mut *mut DpfdFactorization) -> DpfdStatus {
    guard(|| {
        let f = cartesian_pfd(graph_ref(g, "graph")?).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(DpfdFactorization(f))))
    })
}

/// # Safety
/// `f` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpfd_factorization_free(f: *mut DpfdFactorization) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of factors, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dpfd_factorization_factor_count(f: *const DpfdFactorization) -> usize {
    f.as_ref().map_or(0, |h| h.0.factors.len())
}

/// A new graph handle holding a copy of factor `index`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpfd_factorization_factor(
    f: *const DpfdFactorization,
    index: usize,
    out: *mut *mut DpfdGraph,
) -> DpfdStatus {
    guard(|| {
        let f = &f.as_ref().ok_or_else(|| null("factorization"))?.0;
        let factor =
            f.factors.get(index).ok_or_else(|| lib_err(Error::IndexOutOfRange { index, len: f.factors.len() }))?;
        write_out(out, boxed_graph(factor.clone()))
    })
}

/// Copies the coordinates of `vertex`, one per factor, into `buf`.
///
/// # Safety
/// `f` must be a live handle and `buf` writable for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn dpfd_factorization_coords(
    f: *const DpfdFactorization,
    vertex: usize,
    buf: *mut usize,
    capacity: usize,
) -> DpfdStatus {
    guard(|| {
        let f = &f.as_ref().ok_or_else(|| null("factorization"))?.0;
        let coords =
            f.coords.get(vertex).ok_or_else(|| lib_err(Error::VertexOutOfRange { vertex, n: f.coords.len() }))?;
        if coords.len() > capacity {
            return Err((DpfdStatus::BufferTooSmall, format!("need {} values, have {capacity}", coords.len())));
        }
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(coords.as_ptr(), buf, coords.len());
        Ok(())
    })
}
