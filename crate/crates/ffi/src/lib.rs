//! C ABI over `fiedler-core`.
//!
//! Graphs live behind an opaque `FiedlerGraph*`. Every fallible call returns
//! a `FiedlerStatus`; on failure the message is available from
//! `fiedler_last_error_message` until the next failing call on the same
//! thread. Strings returned through `char**` must be released with
//! `fiedler_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fiedler_core::bounds::{bound_certificate, ClassDescriptor};
use fiedler_core::separators::{four_point_solve, sep_upper_bound, Strategy};
use fiedler_core::shallow::{grad_report, SearchBudget};
use fiedler_core::spectra::{join_lambda2, laplacian_spectrum, lambda2_or_infinite};
use fiedler_core::{fmt, io, Error, Family, Graph};

/// Opaque graph handle.
pub struct FiedlerGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiedlerStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    InvalidGraph = 4,
    NoConvergence = 5,
    NoSplit = 6,
    Precondition = 7,
    BudgetExceeded = 8,
    BufferTooSmall = 9,
    Invariant = 10,
    Panic = 11,
}

/// Result of `fiedler_sep_upper_bound`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FiedlerSepBound {
    pub bound: f64,
    pub rayleigh: f64,
    pub lambda2: f64,
    pub cut: usize,
    pub separator_size: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FiedlerStatus {
    match e {
        Error::Parse { .. } => FiedlerStatus::Parse,
        Error::InvalidGraph(_) | Error::Overlap(_) => FiedlerStatus::InvalidGraph,
        Error::OutOfRange(_) | Error::TooFewVertices(_) | Error::TooLarge(_) => FiedlerStatus::InvalidArgument,
        Error::NoConvergence { .. } | Error::NotZeroSum(_) | Error::ZeroNorm => FiedlerStatus::NoConvergence,
        Error::NoSplit(_) => FiedlerStatus::NoSplit,
        Error::Precondition(_) => FiedlerStatus::Precondition,
        Error::BudgetExceeded => FiedlerStatus::BudgetExceeded,
        Error::Invariant(_) => FiedlerStatus::Invariant,
    }
}

fn fail(status: FiedlerStatus, msg: impl Into<String>) -> FiedlerStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), FiedlerStatus>) -> FiedlerStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FiedlerStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(FiedlerStatus::Panic, msg)
        }
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, FiedlerStatus>;
}

impl<T> OrStatus<T> for fiedler_core::Result<T> {
    fn or_status(self) -> Result<T, FiedlerStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, FiedlerStatus> {
    if p.is_null() {
        return Err(fail(FiedlerStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(FiedlerStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn graph_arg<'a>(g: *const FiedlerGraph) -> Result<&'a Graph, FiedlerStatus> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| fail(FiedlerStatus::NullPointer, "graph is null"))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, FiedlerStatus> {
    p.as_mut().ok_or_else(|| fail(FiedlerStatus::NullPointer, "output pointer is null"))
}

fn boxed(g: Graph) -> *mut FiedlerGraph {
    Box::into_raw(Box::new(FiedlerGraph { inner: g }))
}

fn json_string(v: &impl serde::Serialize) -> Result<*mut c_char, FiedlerStatus> {
    let mut value = serde_json::to_value(v).map_err(|e| fail(FiedlerStatus::Invariant, e.to_string()))?;
    fmt::round_json(&mut value);
    let text = serde_json::to_string(&value).map_err(|e| fail(FiedlerStatus::Invariant, e.to_string()))?;
    Ok(CString::new(text).expect("JSON has no nul bytes").into_raw())
}

/// Message of the last failing call on this thread, or NULL. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn fiedler_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a graph on `n` vertices from `m` edges stored as `2m` endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (or be NULL when `m == 0`);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_new(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut FiedlerGraph,
) -> FiedlerStatus {
    guard(|| {
        let out = out_arg(out)?;
        let pairs: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(fail(FiedlerStatus::NullPointer, "edges is null"));
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let g = Graph::from_edges(n, pairs.chunks_exact(2).map(|c| (c[0], c[1]))).or_status()?;
        *out = boxed(g);
        Ok(())
    })
}

/// Generates a named family, e.g. `"grid:10,10"` or `"random-planar:200,7"`.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_generate(spec: *const c_char, out: *mut *mut FiedlerGraph) -> FiedlerStatus {
    guard(|| {
        let out = out_arg(out)?;
        let family: Family = str_arg(spec, "spec")?.parse().or_status()?;
        *out = boxed(family.generate().or_status()?);
        Ok(())
    })
}

/// Parses the edge-list text format (`n m` header, then `u v` lines).
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_from_edge_list(
    text: *const c_char,
    out: *mut *mut FiedlerGraph,
) -> FiedlerStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = boxed(io::parse_edge_list(str_arg(text, "text")?).or_status()?);
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_free(g: *mut FiedlerGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_vertex_count(g: *const FiedlerGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.order())
}

/// # Safety
/// `g` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn fiedler_graph_edge_count(g: *const FiedlerGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.size())
}

/// Algebraic connectivity. A single vertex gives `+inf`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fiedler_lambda2(g: *const FiedlerGraph, out: *mut f64) -> FiedlerStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let out = out_arg(out)?;
        *out = lambda2_or_infinite(g).or_status()?;
        Ok(())
    })
}

/// Writes the `n` Laplacian eigenvalues in ascending order.
///
/// # Safety
/// `g` must be a live handle; `buf` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn fiedler_spectrum(g: *const FiedlerGraph, buf: *mut f64, len: usize) -> FiedlerStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let n = g.order();
        if len < n {
            return Err(fail(FiedlerStatus::BufferTooSmall, format!("need {n} slots, got {len}")));
        }
        if n == 0 {
            return Ok(());
        }
        if buf.is_null() {
            return Err(fail(FiedlerStatus::NullPointer, "buf is null"));
        }
        let spec = laplacian_spectrum(g, false).or_status()?;
        std::slice::from_raw_parts_mut(buf, n).copy_from_slice(&spec.eigenvalues);
        Ok(())
    })
}

/// Separator upper bound on `λ₂`. `strategy` is one of `exhaustive`,
/// `bfs-level`, `degeneracy-coloring`, `fiedler-sweep`; NULL means
/// `fiedler-sweep`.
///
/// # Safety
/// `g` must be a live handle; `strategy` NULL or nul-terminated; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn fiedler_sep_upper_bound(
    g: *const FiedlerGraph,
    strategy: *const c_char,
    out: *mut FiedlerSepBound,
) -> FiedlerStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let out = out_arg(out)?;
        let strategy: Strategy =
            if strategy.is_null() { Strategy::FiedlerSweep } else { str_arg(strategy, "strategy")?.parse().or_status()? };
        let sb = sep_upper_bound(g, strategy).or_status()?;
        *out = FiedlerSepBound {
            bound: sb.bound,
            rayleigh: sb.rayleigh,
            lambda2: sb.lambda2,
            cut: sb.cut,
            separator_size: sb.separator_size,
        };
        Ok(())
    })
}

/// Unit-modulus points `z` with `Σ w·z = 0` for weights in slot order
/// `(1,1), (1,2), (2,1), (2,2)`.
///
/// # Safety
/// `re` and `im` must each have room for 4 values.
#[no_mangle]
pub unsafe extern "C" fn fiedler_four_point_solve(
    n11: u64,
    n12: u64,
    n21: u64,
    n22: u64,
    re: *mut f64,
    im: *mut f64,
) -> FiedlerStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(fail(FiedlerStatus::NullPointer, "output array is null"));
        }
        let sol = four_point_solve(n11, n12, n21, n22).or_status()?;
        let re = std::slice::from_raw_parts_mut(re, 4);
        let im = std::slice::from_raw_parts_mut(im, 4);
        for (i, z) in sol.points.iter().enumerate() {
            re[i] = z.re;
            im[i] = z.im;
        }
        Ok(())
    })
}

/// `λ₂` of a join from the parts. Pass `+inf` for a single vertex.
#[no_mangle]
pub extern "C" fn fiedler_join_lambda2(l1: f64, n1: usize, l2: f64, n2: usize) -> f64 {
    join_lambda2(l1, n1, l2, n2)
}

/// Grad report (`∇̃₀`, `∇̃½` bounds, `ω` of depth-½ minors) as JSON.
/// `budget_nodes == 0` selects the default budget.
///
/// # Safety
/// `g` must be a live handle; `out` writable. Free the result with
/// `fiedler_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fiedler_grad_report_json(
    g: *const FiedlerGraph,
    budget_nodes: u64,
    out: *mut *mut c_char,
) -> FiedlerStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let out = out_arg(out)?;
        let budget = if budget_nodes == 0 { fiedler_core::shallow::DEFAULT_NODE_BUDGET } else { budget_nodes };
        let report = grad_report(g, SearchBudget::from(budget)).or_status()?;
        *out = json_string(&report)?;
        Ok(())
    })
}

/// Full bound report for a class such as `"genus:0"` or `"minor-free:5"`
/// as JSON. `strategy` NULL means `fiedler-sweep`.
///
/// # Safety
/// `g` must be a live handle; strings nul-terminated; `out` writable. Free
/// the result with `fiedler_string_free`.
#[no_mangle]
pub unsafe extern "C" fn fiedler_bound_report_json(
    g: *const FiedlerGraph,
    class: *const c_char,
    strategy: *const c_char,
    out: *mut *mut c_char,
) -> FiedlerStatus {
    guard(|| {
        let g = graph_arg(g)?;
        let out = out_arg(out)?;
        let class: ClassDescriptor = str_arg(class, "class")?.parse().or_status()?;
        let strategy: Strategy =
            if strategy.is_null() { Strategy::FiedlerSweep } else { str_arg(strategy, "strategy")?.parse().or_status()? };
        let report = bound_certificate(
            g,
            "ffi",
            class,
            strategy,
            SearchBudget::from(fiedler_core::shallow::DEFAULT_NODE_BUDGET),
        )
        .or_status()?;
        *out = json_string(&report)?;
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn fiedler_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
