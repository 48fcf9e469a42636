//! C interface to resolvekit.
//!
//! Objects cross the boundary as opaque handles created by `rk_*_new` style
//! functions and released with the matching `rk_*_free`. Every fallible call
//! returns an [`RkStatus`]; on failure [`rk_last_error`] describes the most
//! recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use resolvekit::graph::{all_pairs_distances, build_graph};
use resolvekit::resolve::{ich, is_resolving, random_baseline, NodeSet, ResolvingTarget};
use resolvekit::sbm::{er_any_set_size, er_beta_upper, presets, sample, scale_communities};
use resolvekit::{mine, Error, Graph, SbmParams};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RkStatus {
    Ok = 0,
    NullPointer = 1,
    MalformedInput = 2,
    InvalidParams = 3,
    Domain = 4,
    Infeasible = 5,
    NoResolvingSet = 6,
    SizeCap = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RkTarget {
    Adjacency = 0,
    ModifiedAdjacency = 1,
    Distance = 2,
}

/// Block model parameters.
pub struct RkParams(SbmParams);

/// A simple undirected graph.
pub struct RkGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RkStatus {
    match e {
        Error::MalformedInput(_) | Error::Io(_) | Error::Json(_) | Error::Csv(_) => RkStatus::MalformedInput,
        Error::InvalidParams(_) | Error::DegenerateCommunity { .. } => RkStatus::InvalidParams,
        Error::Domain(_) | Error::UnreachableArithmetic => RkStatus::Domain,
        Error::Infeasible { .. } => RkStatus::Infeasible,
        Error::NoResolvingSet(_) => RkStatus::NoResolvingSet,
        Error::SizeCap(_) | Error::OracleExhausted(_) => RkStatus::SizeCap,
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), RkStatusError>) -> RkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RkStatus::Ok,
        Ok(Err(RkStatusError(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RkStatus::Internal
        }
    }
}

struct RkStatusError(RkStatus, String);

impl From<Error> for RkStatusError {
    fn from(e: Error) -> Self {
        RkStatusError(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> RkStatusError {
    RkStatusError(RkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn non_null<'a, T>(p: *const T, what: &str) -> Result<&'a T, RkStatusError> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn input_slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], RkStatusError> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), RkStatusError> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_set(set: &NodeSet, out: *mut u32, capacity: usize, out_len: *mut usize) -> Result<(), RkStatusError> {
    write_out(out_len, set.len(), "out_len")?;
    if set.len() > capacity {
        return Err(RkStatusError(
            RkStatus::BufferTooSmall,
            format!("set has {} members, buffer holds {capacity}", set.len()),
        ));
    }
    if !set.is_empty() {
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(set.members().as_ptr(), out, set.len());
    }
    Ok(())
}

/// Message for the last failed call on this thread. Valid until the next
/// call into the library from the same thread.
#[no_mangle]
pub extern "C" fn rk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds parameters from `c` community sizes and a row-major `c × c`
/// probability matrix.
///
/// # Safety
/// `sizes` must point to `c` values and `p` to `c * c` values.
#[no_mangle]
pub unsafe extern "C" fn rk_params_new(
    sizes: *const usize,
    c: usize,
    p: *const f64,
    out: *mut *mut RkParams,
) -> RkStatus {
    guard(|| {
        let sizes = input_slice(sizes, c, "sizes")?;
        let p = input_slice(p, c * c, "p")?;
        let rows = p.chunks(c.max(1)).map(<[f64]>::to_vec).collect();
        let params = SbmParams::new(sizes.to_vec(), rows)?;
        write_out(out, Box::into_raw(Box::new(RkParams(params))), "out")
    })
}

/// Parameters of a bundled preset such as `"karate"`.
///
/// # Safety
/// `key` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rk_params_preset(key: *const c_char, out: *mut *mut RkParams) -> RkStatus {
    guard(|| {
        let key = CStr::from_ptr(non_null(key, "key")?).to_string_lossy();
        let params = presets::preset(&key)
            .ok_or_else(|| RkStatusError(RkStatus::InvalidParams, format!("unknown preset {key:?}")))?;
        write_out(out, Box::into_raw(Box::new(RkParams(params))), "out")
    })
}

/// Parameters from a JSON document with `community_sizes` and `P`.
///
/// # Safety
/// `json` must be a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn rk_params_from_json(json: *const c_char, out: *mut *mut RkParams) -> RkStatus {
    guard(|| {
        let text = CStr::from_ptr(non_null(json, "json")?)
            .to_str()
            .map_err(|e| RkStatusError(RkStatus::MalformedInput, e.to_string()))?;
        let params = SbmParams::from_json(text)?;
        write_out(out, Box::into_raw(Box::new(RkParams(params))), "out")
    })
}

/// Copy of `params` with community sizes rescaled to total `n_target`.
///
/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_params_scale(
    params: *const RkParams,
    n_target: usize,
    out: *mut *mut RkParams,
) -> RkStatus {
    guard(|| {
        let scaled = scale_communities(&non_null(params, "params")?.0, n_target)?;
        write_out(out, Box::into_raw(Box::new(RkParams(scaled))), "out")
    })
}

/// Number of communities, or 0 for a null handle.
///
/// # Safety
/// `params` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_params_communities(params: *const RkParams) -> usize {
    params.as_ref().map_or(0, |p| p.0.c())
}

/// Total vertex count, or 0 for a null handle.
///
/// # Safety
/// `params` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_params_vertices(params: *const RkParams) -> usize {
    params.as_ref().map_or(0, |p| p.0.n())
}

/// # Safety
/// `params` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rk_params_free(params: *mut RkParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Smallest per-community allocation whose collision bound is at most
/// `alpha`. Writes one count per community to `allocation`.
///
/// # Safety
/// `allocation` must hold `rk_params_communities(params)` values; `f_value`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn rk_mine(
    params: *const RkParams,
    alpha: f64,
    allocation: *mut u32,
    f_value: *mut f64,
) -> RkStatus {
    guard(|| {
        let params = &non_null(params, "params")?.0;
        let sol = mine(params, alpha)?;
        if allocation.is_null() {
            return Err(null("allocation"));
        }
        ptr::copy_nonoverlapping(sol.allocation.as_ptr(), allocation, sol.allocation.len());
        if !f_value.is_null() {
            f_value.write(sol.f_value);
        }
        Ok(())
    })
}

/// Samples a graph with contiguous community labels.
///
/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_sample(params: *const RkParams, seed: u64, out: *mut *mut RkGraph) -> RkStatus {
    guard(|| {
        let g = sample(&non_null(params, "params")?.0, seed);
        write_out(out, Box::into_raw(Box::new(RkGraph(g))), "out")
    })
}

/// Graph on `n` vertices from `m` edges stored as `u0 v0 u1 v1 …`.
/// Self-loops and repeated edges are dropped.
///
/// # Safety
/// `edges` must point to `2 * m` values.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_from_edges(
    n: usize,
    edges: *const u32,
    m: usize,
    out: *mut *mut RkGraph,
) -> RkStatus {
    guard(|| {
        let flat = input_slice(edges, 2 * m, "edges")?;
        let pairs: Vec<(usize, usize)> = flat.chunks(2).map(|e| (e[0] as usize, e[1] as usize)).collect();
        let (g, _) = build_graph(n, &pairs)?;
        write_out(out, Box::into_raw(Box::new(RkGraph(g))), "out")
    })
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_vertices(graph: *const RkGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_edges(graph: *const RkGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rk_graph_free(graph: *mut RkGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

fn with_target<T>(g: &Graph, target: RkTarget, f: impl FnOnce(&ResolvingTarget<'_>) -> T) -> T {
    match target {
        RkTarget::Adjacency => f(&ResolvingTarget::Adjacency(g)),
        RkTarget::ModifiedAdjacency => f(&ResolvingTarget::ModifiedAdjacency(g)),
        RkTarget::Distance => {
            let d = all_pairs_distances(g);
            f(&ResolvingTarget::Distance(&d))
        }
    }
}

/// Whether the `len` vertices in `set` resolve the chosen matrix.
///
/// # Safety
/// `set` must point to `len` values and `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_is_resolving(
    graph: *const RkGraph,
    target: RkTarget,
    set: *const u32,
    len: usize,
    out: *mut bool,
) -> RkStatus {
    guard(|| {
        let g = &non_null(graph, "graph")?.0;
        let set = NodeSet::new(input_slice(set, len, "set")?.to_vec(), g.n())?;
        write_out(out, with_target(g, target, |t| is_resolving(t, &set)), "out")
    })
}

/// Entropy-greedy resolving set. `out_len` always receives the set size;
/// when it exceeds `capacity` the call fails with `BufferTooSmall`.
///
/// # Safety
/// `out` must hold `capacity` values and `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_ich(
    graph: *const RkGraph,
    target: RkTarget,
    out: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> RkStatus {
    guard(|| {
        let g = &non_null(graph, "graph")?.0;
        let set = with_target(g, target, ich)?;
        write_set(&set, out, capacity, out_len)
    })
}

/// Random vertices, drawn without replacement, until A* is resolved.
///
/// # Safety
/// `out` must hold `capacity` values and `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rk_random_baseline(
    graph: *const RkGraph,
    seed: u64,
    out: *mut u32,
    capacity: usize,
    out_len: *mut usize,
) -> RkStatus {
    guard(|| {
        let set = random_baseline(&non_null(graph, "graph")?.0, seed)?;
        write_set(&set, out, capacity, out_len)
    })
}

/// Resolving-set size bound for G(n, p).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rk_er_beta_upper(n: u64, p: f64, out: *mut u64) -> RkStatus {
    guard(|| write_out(out, er_beta_upper(n, p)?, "out"))
}

/// Size at which any vertex set resolves G(n, p) with high probability.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rk_er_any_set_size(n: u64, p: f64, out: *mut u64) -> RkStatus {
    guard(|| write_out(out, er_any_set_size(n, p)?, "out"))
}
