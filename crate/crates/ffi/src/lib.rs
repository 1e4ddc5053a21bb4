//! C interface to the `hoffman` library.
//!
//! Graphs and families are opaque handles owned by the caller and released
//! with `hg_graph_free` / `hg_family_free`. Every fallible call returns an
//! `HgStatus`; on failure `hg_last_error` describes the most recent error on
//! the calling thread. Strings returned through out-parameters are freed
//! with `hg_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hoffman::{Catalog, Error, FamilySpec, HoffmanGraph, SlimGraph, Verdict};

/// A Hoffman graph.
pub struct HgGraph(HoffmanGraph);

/// A family of Hoffman graphs.
pub struct HgFamily(FamilySpec);

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed HGF or graph6 text.
    Parse = 3,
    /// The edges do not describe a valid Hoffman graph.
    InvalidGraph = 4,
    /// A sum, partition or addend condition failed.
    InvalidSum = 5,
    /// The family violates a precondition of the operation.
    InvalidFamily = 6,
    /// The graph is too large for the operation.
    TooLarge = 7,
    /// Two covers have different slim subgraphs.
    SlimMismatch = 8,
    /// A result does not fit the output type.
    Overflow = 9,
    /// An unknown catalog name.
    UnknownName = 10,
    /// The operation needs a graph without fat vertices.
    NotSlimGraph = 11,
    /// An internal panic was caught.
    Panic = 99,
}

/// Outcome of `hg_verify_order`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HgVerdict {
    UniqueCovers = 0,
    Inconclusive = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(HgStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => HgStatus::Parse,
            Error::FatFatEdge(..)
            | Error::IsolatedFat(..)
            | Error::MalformedEdge(..)
            | Error::VertexOutOfRange(..)
            | Error::InvalidInduced(..)
            | Error::SameVertex(..)
            | Error::NotSlim(..)
            | Error::EmptyGraph => HgStatus::InvalidGraph,
            Error::NotAPartition(..)
            | Error::SumConditionViolated(..)
            | Error::InvalidAssignment(..)
            | Error::AddendOutsideScope(..) => HgStatus::InvalidSum,
            Error::MemberOutsideO(..)
            | Error::FamilyOutsideO
            | Error::FamilyNotClosed
            | Error::MissingH2
            | Error::DuplicateMember(..) => HgStatus::InvalidFamily,
            Error::GraphTooLarge(..) => HgStatus::TooLarge,
            Error::SlimMismatch => HgStatus::SlimMismatch,
        };
        Fail(status, format!("{}: {e}", e.name()))
    }
}

fn fail(status: HgStatus, msg: &str) -> Fail {
    Fail(status, msg.to_string())
}

fn set_last_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("nul bytes removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            HgStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(Some(msg));
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(Some(format!("panic: {msg}")));
            HgStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| fail(HgStatus::NullPointer, "null pointer argument"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(HgStatus::NullPointer, "null output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(fail(HgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(HgStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("library output has no nul bytes").into_raw()
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// The message for the last failed call on this thread, or null. Valid
/// until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a graph with slims `0..slim_count` and fats after them. `edges`
/// holds `edge_count` pairs as `2 * edge_count` vertex indices.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_new(
    slim_count: usize,
    fat_count: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut HgGraph,
) -> HgStatus {
    guard(|| {
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(get(edges)?, 2 * edge_count)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = HoffmanGraph::new(slim_count, fat_count, &pairs)?;
        put(out, boxed(HgGraph(g)))
    })
}

/// Parses HGF text.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_from_hgf(hgf: *const c_char, out: *mut *mut HgGraph) -> HgStatus {
    guard(|| {
        let g = hoffman::io::read_hgf(text(hgf)?)?;
        put(out, boxed(HgGraph(g)))
    })
}

/// Parses a graph6 string into a graph without fat vertices.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_from_graph6(g6: *const c_char, out: *mut *mut HgGraph) -> HgStatus {
    guard(|| {
        let g = hoffman::io::read_graph6(text(g6)?)?;
        put(out, boxed(HgGraph(g.into_hoffman())))
    })
}

/// Catalog graph by name: h1, h2, h3, h5 or h5p.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_catalog(name: *const c_char, out: *mut *mut HgGraph) -> HgStatus {
    guard(|| {
        let c: Catalog = text(name)?.parse().map_err(|m: String| Fail(HgStatus::UnknownName, m))?;
        put(out, boxed(HgGraph(c.graph())))
    })
}

/// Releases a graph. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_free(g: *mut HgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of slim vertices, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_slim_count(g: *const HgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.slim_count())
}

/// Number of fat vertices, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_fat_count(g: *const HgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.fat_count())
}

/// Writes the graph as HGF text.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_to_hgf(g: *const HgGraph, out: *mut *mut c_char) -> HgStatus {
    guard(|| put(out, owned_string(hoffman::io::write_hgf(&get(g)?.0))))
}

/// Writes a graph without fat vertices as graph6.
#[no_mangle]
pub unsafe extern "C" fn hg_graph_to_graph6(g: *const HgGraph, out: *mut *mut c_char) -> HgStatus {
    guard(|| {
        let s = SlimGraph::try_from(get(g)?.0.clone())
            .map_err(|_| fail(HgStatus::NotSlimGraph, "graph has fat vertices"))?;
        put(out, owned_string(hoffman::io::write_graph6(&s)))
    })
}

/// Decomposes into indecomposable addends. Stores the addend count and,
/// when `part_of` is non-null, the addend index of each slim vertex into
/// `part_of[0..slim_count]`. Addends are ordered by their least slim.
#[no_mangle]
pub unsafe extern "C" fn hg_decompose(g: *const HgGraph, addend_count: *mut usize, part_of: *mut usize) -> HgStatus {
    guard(|| {
        let g = &get(g)?.0;
        let d = hoffman::decompose(g)?;
        put(addend_count, d.len())?;
        if !part_of.is_null() {
            for x in g.slim_vertices() {
                part_of.add(x).write(d.part_of(x).expect("every slim lies in a part"));
            }
        }
        Ok(())
    })
}

/// Replaces every h1 addend by h2.
#[no_mangle]
pub unsafe extern "C" fn hg_tilde(g: *const HgGraph, out: *mut *mut HgGraph) -> HgStatus {
    guard(|| {
        let t = hoffman::tilde(&get(g)?.0)?;
        put(out, boxed(HgGraph(t)))
    })
}

/// Canonical certificate as lowercase hex.
#[no_mangle]
pub unsafe extern "C" fn hg_canonical_hex(g: *const HgGraph, out: *mut *mut c_char) -> HgStatus {
    guard(|| put(out, owned_string(hoffman::canonical_form(&get(g)?.0).hex())))
}

/// Whether two graphs are isomorphic by a map preserving slim and fat.
#[no_mangle]
pub unsafe extern "C" fn hg_is_isomorphic(a: *const HgGraph, b: *const HgGraph, out: *mut bool) -> HgStatus {
    guard(|| put(out, hoffman::is_isomorphic(&get(a)?.0, &get(b)?.0)))
}

fn narrow(order: u128) -> Result<u64, Fail> {
    u64::try_from(order).map_err(|_| Fail(HgStatus::Overflow, format!("group order {order} exceeds 64 bits")))
}

/// Order of the automorphism group.
#[no_mangle]
pub unsafe extern "C" fn hg_automorphism_order(g: *const HgGraph, out: *mut u64) -> HgStatus {
    guard(|| put(out, narrow(hoffman::automorphism_group(&get(g)?.0).order())?))
}

/// Order of the group of automorphisms fixing every slim vertex.
#[no_mangle]
pub unsafe extern "C" fn hg_slim_fixing_order(g: *const HgGraph, out: *mut u64) -> HgStatus {
    guard(|| put(out, narrow(hoffman::slim_fixing_automorphisms(&get(g)?.0).order())?))
}

/// Whether two covers of the same slim graph are equivalent, with slim
/// vertices identified by index.
#[no_mangle]
pub unsafe extern "C" fn hg_cover_equivalent(a: *const HgGraph, b: *const HgGraph, out: *mut bool) -> HgStatus {
    guard(|| {
        let a = &get(a)?.0;
        let id: Vec<usize> = a.slim_vertices().collect();
        put(out, hoffman::cover_equivalent(a, &get(b)?.0, &id)?)
    })
}

/// Builds a family from comma-separated catalog names, e.g. `"h2,h5"`.
#[no_mangle]
pub unsafe extern "C" fn hg_family_from_names(names: *const c_char, out: *mut *mut HgFamily) -> HgStatus {
    guard(|| {
        let mut cs = Vec::new();
        for t in text(names)?.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            cs.push(t.parse::<Catalog>().map_err(|m| Fail(HgStatus::UnknownName, m))?);
        }
        put(out, boxed(HgFamily(FamilySpec::from_catalog(&cs)?)))
    })
}

/// Builds a family from `count` graphs. The graphs are copied.
#[no_mangle]
pub unsafe extern "C" fn hg_family_from_graphs(
    members: *const *const HgGraph,
    count: usize,
    out: *mut *mut HgFamily,
) -> HgStatus {
    guard(|| {
        let ptrs: &[*const HgGraph] = if count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(get(members)?, count)
        };
        let gs = ptrs.iter().map(|&p| get(p).map(|g| g.0.clone())).collect::<Result<Vec<_>, _>>()?;
        put(out, boxed(HgFamily(FamilySpec::new(gs)?)))
    })
}

/// Releases a family. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hg_family_free(f: *mut HgFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of members, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn hg_family_len(f: *const HgFamily) -> usize {
    f.as_ref().map_or(0, |f| f.0.len())
}

/// Whether the family contains a graph isomorphic to `g`.
#[no_mangle]
pub unsafe extern "C" fn hg_family_contains(f: *const HgFamily, g: *const HgGraph, out: *mut bool) -> HgStatus {
    guard(|| put(out, get(f)?.0.contains(&get(g)?.0)))
}

/// The smallest family containing `f` that is closed under the bar
/// operation.
#[no_mangle]
pub unsafe extern "C" fn hg_family_closure(f: *const HgFamily, out: *mut *mut HgFamily) -> HgStatus {
    guard(|| put(out, boxed(HgFamily(hoffman::bar_closure(&get(f)?.0)?))))
}

/// Lower bound on N_H.
#[no_mangle]
pub unsafe extern "C" fn hg_lower_bound(f: *const HgFamily, out: *mut usize) -> HgStatus {
    guard(|| put(out, hoffman::lower_bound(&get(f)?.0)?))
}

/// Runs the uniqueness certificate at one order. `x_count` and `y_count`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn hg_verify_order(
    f: *const HgFamily,
    order: usize,
    verdict: *mut HgVerdict,
    x_count: *mut usize,
    y_count: *mut usize,
) -> HgStatus {
    guard(|| {
        let r = hoffman::verify_order(&get(f)?.0, order)?;
        put(
            verdict,
            match r.verdict {
                Verdict::UniqueCovers => HgVerdict::UniqueCovers,
                Verdict::Inconclusive => HgVerdict::Inconclusive,
            },
        )?;
        if !x_count.is_null() {
            x_count.write(r.x_count);
        }
        if !y_count.is_null() {
            y_count.write(r.y_count);
        }
        Ok(())
    })
}

/// Searches for N_H up to `max_order`. `found` reports whether an order was
/// certified; `n_h` is set only then. `exact` may be null.
#[no_mangle]
pub unsafe extern "C" fn hg_search_nh(
    f: *const HgFamily,
    max_order: usize,
    found: *mut bool,
    n_h: *mut usize,
    exact: *mut bool,
) -> HgStatus {
    guard(|| {
        let s = hoffman::search_nh(&get(f)?.0, max_order)?;
        put(found, s.n_h.is_some())?;
        if let Some(n) = s.n_h {
            put(n_h, n)?;
        }
        if !exact.is_null() {
            exact.write(s.exact);
        }
        Ok(())
    })
}

/// Number of strict covers of `g` by members of `f`, up to equivalence.
#[no_mangle]
pub unsafe extern "C" fn hg_cover_count(f: *const HgFamily, g: *const HgGraph, out: *mut usize) -> HgStatus {
    guard(|| {
        let s = SlimGraph::try_from(get(g)?.0.clone())
            .map_err(|_| fail(HgStatus::NotSlimGraph, "graph has fat vertices"))?;
        put(out, hoffman::find_covers(&s, &get(f)?.0)?.len())
    })
}
