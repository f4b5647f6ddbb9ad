//! C ABI for the decomposition engine.
//!
//! Graphs and decompositions live behind opaque handles created and freed
//! here. Every fallible call returns a [`P4Status`]; on failure a
//! description is kept in thread-local storage and can be read with
//! [`p4_last_error`] until the next failing call on the same thread.
//! The build script renders this interface to `include/p4decomp.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use p4decomp::graph::generate_random_regular;
use p4decomp::graph::named_instance;
use p4decomp::verify::VerifyError;
use p4decomp::{brute_force_decompose, decompose, verify_decomposition, Graph};

/// Result of every fallible call in this interface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P4Status {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The instance name was not recognized.
    BadInstance = 3,
    /// The edge list did not describe a usable graph.
    BadGraph = 4,
    /// The engine could not decompose the graph.
    DecomposeFailed = 5,
    /// The decomposition does not check out against the graph.
    VerifyFailed = 6,
    /// The graph exceeds the brute-force search limit.
    TooLarge = 7,
    /// Exhaustive search proved no balanced decomposition exists.
    NoDecomposition = 8,
    /// An index argument was out of bounds.
    OutOfRange = 9,
    /// The engine panicked; the handle is still valid but the call did nothing.
    Panic = 10,
}

/// An undirected simple graph. Opaque; create with one of the
/// `p4_graph_*` constructors and release with [`p4_graph_free`].
pub struct P4Graph(Graph);

/// A set of 5-vertex paths. Opaque; produced by [`p4_decompose`] or
/// [`p4_oracle`] and released with [`p4_decomposition_free`].
pub struct P4Decomposition(Vec<Vec<usize>>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: P4Status, message: impl Display) -> P4Status {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(text).expect("nul stripped above"));
    });
    status
}

/// Message describing the most recent failure on this thread, or null if
/// none has happened yet. The pointer stays valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn p4_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |message| message.as_ptr())
    })
}

/// Static name of a status code, e.g. `"ok"` or `"too-large"`.
#[no_mangle]
pub extern "C" fn p4_status_name(status: P4Status) -> *const c_char {
    let name: &CStr = match status {
        P4Status::Ok => c"ok",
        P4Status::NullArgument => c"null-argument",
        P4Status::InvalidUtf8 => c"invalid-utf8",
        P4Status::BadInstance => c"bad-instance",
        P4Status::BadGraph => c"bad-graph",
        P4Status::DecomposeFailed => c"decompose-failed",
        P4Status::VerifyFailed => c"verify-failed",
        P4Status::TooLarge => c"too-large",
        P4Status::NoDecomposition => c"no-decomposition",
        P4Status::OutOfRange => c"out-of-range",
        P4Status::Panic => c"panic",
    };
    name.as_ptr()
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn p4_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

fn deliver(graph: Graph, out: *mut *mut P4Graph) -> P4Status {
    unsafe { *out = Box::into_raw(Box::new(P4Graph(graph))) };
    P4Status::Ok
}

/// Builds a named instance: `K9`, `K8,8`, or `CIRC(n;1,2,3,4)`.
///
/// # Safety
///
/// `name` must point to a NUL-terminated string and `out` must be valid
/// for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn p4_graph_named(name: *const c_char, out: *mut *mut P4Graph) -> P4Status {
    if name.is_null() || out.is_null() {
        return fail(P4Status::NullArgument, "name and out must be non-null");
    }
    let name = match unsafe { CStr::from_ptr(name) }.to_str() {
        Ok(name) => name,
        Err(e) => return fail(P4Status::InvalidUtf8, e),
    };
    match named_instance(name) {
        Ok(g) => deliver(g, out),
        Err(e) => fail(P4Status::BadInstance, e),
    }
}

/// Builds a random 8-regular graph on `vertices` vertices, deterministic
/// in `seed`.
///
/// # Safety
///
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn p4_graph_random(
    vertices: u32,
    seed: u64,
    out: *mut *mut P4Graph,
) -> P4Status {
    if out.is_null() {
        return fail(P4Status::NullArgument, "out must be non-null");
    }
    match generate_random_regular(vertices as usize, 8, seed) {
        Ok(g) => deliver(g, out),
        Err(e) => fail(P4Status::BadGraph, e),
    }
}

/// Builds a graph on `vertices` vertices from `pairs` edges given as
/// flattened endpoint pairs: `endpoints[2*i]` and `endpoints[2*i + 1]`.
///
/// # Safety
///
/// `endpoints` must point to `2 * pairs` readable values and `out` must be
/// valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn p4_graph_from_edges(
    vertices: u32,
    endpoints: *const u32,
    pairs: usize,
    out: *mut *mut P4Graph,
) -> P4Status {
    if out.is_null() || (endpoints.is_null() && pairs > 0) {
        return fail(P4Status::NullArgument, "endpoints and out must be non-null");
    }
    let flat = unsafe { std::slice::from_raw_parts(endpoints, 2 * pairs) };
    let list: Vec<(usize, usize)> = flat
        .chunks_exact(2)
        .map(|pair| (pair[0] as usize, pair[1] as usize))
        .collect();
    match Graph::from_edges(vertices as usize, &list) {
        Ok(g) => deliver(g, out),
        Err(e) => fail(P4Status::BadGraph, e),
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
///
/// `g` must be null or a live handle from a `p4_graph_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn p4_graph_vertex_count(g: *const P4Graph) -> usize {
    if g.is_null() {
        return 0;
    }
    unsafe { &*g }.0.vertex_count()
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
///
/// `g` must be null or a live handle from a `p4_graph_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn p4_graph_edge_count(g: *const P4Graph) -> usize {
    if g.is_null() {
        return 0;
    }
    unsafe { &*g }.0.edge_count()
}

/// Releases a graph handle. Null is allowed.
///
/// # Safety
///
/// `g` must be null or a live handle from a `p4_graph_*` constructor;
/// it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn p4_graph_free(g: *mut P4Graph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Decomposes an 8-regular graph into edge-disjoint 4-edge paths in which
/// every vertex is an end of exactly two paths.
///
/// # Safety
///
/// `g` must be a live graph handle and `out` must be valid for a pointer
/// write.
#[no_mangle]
pub unsafe extern "C" fn p4_decompose(
    g: *const P4Graph,
    out: *mut *mut P4Decomposition,
) -> P4Status {
    if g.is_null() || out.is_null() {
        return fail(P4Status::NullArgument, "graph and out must be non-null");
    }
    let graph = &unsafe { &*g }.0;
    match catch_unwind(AssertUnwindSafe(|| decompose(graph))) {
        Ok(Ok(b)) => {
            let rows = b.trackings.iter().map(|t| t.v.to_vec()).collect();
            unsafe { *out = Box::into_raw(Box::new(P4Decomposition(rows))) };
            P4Status::Ok
        }
        Ok(Err(e)) => fail(P4Status::DecomposeFailed, e),
        Err(_) => fail(P4Status::Panic, "decompose panicked"),
    }
}

/// Exhaustively searches a graph of at most `limit` vertices for a balanced
/// decomposition into 4-edge paths. Finding none is reported as
/// `NoDecomposition` with `*out` left null.
///
/// # Safety
///
/// `g` must be a live graph handle and `out` must be valid for a pointer
/// write.
#[no_mangle]
pub unsafe extern "C" fn p4_oracle(
    g: *const P4Graph,
    limit: usize,
    out: *mut *mut P4Decomposition,
) -> P4Status {
    if g.is_null() || out.is_null() {
        return fail(P4Status::NullArgument, "graph and out must be non-null");
    }
    unsafe { *out = ptr::null_mut() };
    let graph = &unsafe { &*g }.0;
    match catch_unwind(AssertUnwindSafe(|| brute_force_decompose(graph, limit))) {
        Ok(Ok(Some(paths))) => {
            let rows = paths.iter().map(|p| p.to_vec()).collect();
            unsafe { *out = Box::into_raw(Box::new(P4Decomposition(rows))) };
            P4Status::Ok
        }
        Ok(Ok(None)) => fail(P4Status::NoDecomposition, "no balanced decomposition"),
        Ok(Err(e @ VerifyError::TooLarge { .. })) => fail(P4Status::TooLarge, e),
        Err(_) => fail(P4Status::Panic, "oracle panicked"),
    }
}

/// Number of paths, or 0 for a null handle.
///
/// # Safety
///
/// `d` must be null or a live decomposition handle.
#[no_mangle]
pub unsafe extern "C" fn p4_decomposition_len(d: *const P4Decomposition) -> usize {
    if d.is_null() {
        return 0;
    }
    unsafe { &*d }.0.len()
}

/// Copies the five vertices of path `index` into `out`.
///
/// # Safety
///
/// `d` must be a live decomposition handle and `out` must be valid for
/// five writes.
#[no_mangle]
pub unsafe extern "C" fn p4_decomposition_path(
    d: *const P4Decomposition,
    index: usize,
    out: *mut u32,
) -> P4Status {
    if d.is_null() || out.is_null() {
        return fail(
            P4Status::NullArgument,
            "decomposition and out must be non-null",
        );
    }
    let rows = &unsafe { &*d }.0;
    let Some(row) = rows.get(index) else {
        return fail(
            P4Status::OutOfRange,
            format!("path {index} of {}", rows.len()),
        );
    };
    let out = unsafe { std::slice::from_raw_parts_mut(out, row.len()) };
    for (slot, &v) in out.iter_mut().zip(row) {
        *slot = v as u32;
    }
    P4Status::Ok
}

/// Releases a decomposition handle. Null is allowed.
///
/// # Safety
///
/// `d` must be null or a live decomposition handle; it must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn p4_decomposition_free(d: *mut P4Decomposition) {
    if !d.is_null() {
        drop(unsafe { Box::from_raw(d) });
    }
}

/// Checks a decomposition against a graph: full edge cover, edge-disjoint
/// 4-edge paths, every vertex an end of exactly two. On failure the flaw
/// descriptions are joined into the error message.
///
/// # Safety
///
/// `g` and `d` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn p4_verify(g: *const P4Graph, d: *const P4Decomposition) -> P4Status {
    if g.is_null() || d.is_null() {
        return fail(
            P4Status::NullArgument,
            "graph and decomposition must be non-null",
        );
    }
    let graph = &unsafe { &*g }.0;
    let rows = &unsafe { &*d }.0;
    let report = verify_decomposition(graph, rows);
    if report.ok() {
        P4Status::Ok
    } else {
        let flaws: Vec<String> = report.failures.iter().map(|f| f.to_string()).collect();
        fail(P4Status::VerifyFailed, flaws.join("; "))
    }
}
