// SPDX-License-Identifier: Apache-2.0

//! C ABI for `adamesh`.
//!
//! Meshes are passed as opaque [`AdmMesh`] handles created by the library
//! and released with [`adm_mesh_free`]. Every fallible function returns an
//! [`AdmStatus`]; on failure a message is available from
//! [`adm_last_error_message`] on the same thread. Node and element indices
//! are 0-based and of type `size_t`. Operations never modify their input
//! mesh: results are returned as new handles.
//!
//! The generated header is `include/adamesh.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use adamesh::io::{load_mesh, save_mesh, FormatError};
use adamesh::mesh::{check_1_irregular, check_conforming};
use adamesh::{MarkPolicy, Mesh, MeshError, Strategy};

/// Result code of every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// An argument is out of its domain (unknown enum value, non-UTF-8
    /// path, inconsistent lengths).
    InvalidArgument = 2,
    /// A marked element id is not an element of the mesh.
    MarkOutOfRange = 3,
    /// The mesh violates a structural invariant.
    InvalidMesh = 4,
    /// The mesh was not produced by the requested strategy.
    StrategyMismatch = 5,
    /// A caller-provided buffer is too small.
    BufferTooSmall = 6,
    /// A file could not be read or written.
    Io = 7,
    /// A mesh file is malformed.
    Parse = 8,
    /// An internal error; please report it.
    Internal = 9,
}

/// Refinement/coarsening strategy.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmStrategy {
    TR = 0,
    TRG = 1,
    TRGB = 2,
    TNVB = 3,
    QR = 4,
    QRG = 5,
    QRB = 6,
}

/// How element marks are transferred in a coarsening step.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmPolicy {
    /// A group is coarsened if any of its elements is marked.
    AnyOf = 0,
    /// A group is coarsened only if all of its elements are marked.
    AllOf = 1,
}

/// Opaque mesh handle.
pub struct AdmMesh {
    mesh: Mesh,
}

impl From<Strategy> for AdmStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::TR => AdmStrategy::TR,
            Strategy::TRG => AdmStrategy::TRG,
            Strategy::TRGB => AdmStrategy::TRGB,
            Strategy::TNVB => AdmStrategy::TNVB,
            Strategy::QR => AdmStrategy::QR,
            Strategy::QRG => AdmStrategy::QRG,
            Strategy::QRB => AdmStrategy::QRB,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|e| {
        let mut v = e.into_vec();
        v.retain(|&b| b != 0);
        CString::new(v).expect("NUL bytes removed")
    });
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(AdmStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn fail<T>(status: AdmStatus, msg: impl Into<String>) -> FfiResult<T> {
    Err(Failure(status, msg.into()))
}

impl From<MeshError> for Failure {
    fn from(e: MeshError) -> Self {
        let status = match e {
            MeshError::MarkOutOfRange { .. } => AdmStatus::MarkOutOfRange,
            MeshError::WrongKind { .. } | MeshError::BlockCounter { .. } | MeshError::MalformedBlock { .. } => {
                AdmStatus::StrategyMismatch
            }
            _ => AdmStatus::InvalidMesh,
        };
        Failure(status, e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let status = match e {
            FormatError::Io { .. } => AdmStatus::Io,
            FormatError::Parse { .. } => AdmStatus::Parse,
            FormatError::Invalid(_) => AdmStatus::InvalidMesh,
        };
        Failure(status, e.to_string())
    }
}

/// Strategy from its `AdmStrategy` value. Enum arguments are passed as
/// plain integers so that out-of-range values from C are reported instead
/// of being undefined behavior.
fn strategy_arg(value: i32) -> FfiResult<Strategy> {
    Strategy::ALL
        .into_iter()
        .find(|&s| AdmStrategy::from(s) as i32 == value)
        .map_or_else(
            || fail(AdmStatus::InvalidArgument, format!("unknown strategy value {value}")),
            Ok,
        )
}

fn policy_arg(value: i32) -> FfiResult<MarkPolicy> {
    match value {
        v if v == AdmPolicy::AnyOf as i32 => Ok(MarkPolicy::AnyOf),
        v if v == AdmPolicy::AllOf as i32 => Ok(MarkPolicy::AllOf),
        v => fail(AdmStatus::InvalidArgument, format!("unknown policy value {v}")),
    }
}

/// Run `f`, converting errors and panics into a status code and message.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> AdmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AdmStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            AdmStatus::Internal
        }
    }
}

unsafe fn mesh_ref<'a>(mesh: *const AdmMesh) -> FfiResult<&'a Mesh> {
    match mesh.as_ref() {
        Some(m) => Ok(&m.mesh),
        None => fail(AdmStatus::NullPointer, "mesh handle is NULL"),
    }
}

unsafe fn slice<'a, T>(data: *const T, len: usize, what: &str) -> FfiResult<&'a [T]> {
    if len == 0 {
        Ok(&[])
    } else if data.is_null() {
        fail(
            AdmStatus::NullPointer,
            format!("{what} is NULL but its length is {len}"),
        )
    } else {
        Ok(std::slice::from_raw_parts(data, len))
    }
}

unsafe fn emit(out: *mut *mut AdmMesh, mesh: Mesh) -> FfiResult<()> {
    if out.is_null() {
        return fail(AdmStatus::NullPointer, "output handle pointer is NULL");
    }
    *out = Box::into_raw(Box::new(AdmMesh { mesh }));
    Ok(())
}

unsafe fn path_arg(path: *const c_char) -> FfiResult<String> {
    if path.is_null() {
        return fail(AdmStatus::NullPointer, "path is NULL");
    }
    match CStr::from_ptr(path).to_str() {
        Ok(s) => Ok(s.to_owned()),
        Err(_) => fail(AdmStatus::InvalidArgument, "path is not valid UTF-8"),
    }
}

/// Copy `src` into the caller's buffer of capacity `cap`, or report the
/// required size.
unsafe fn copy_out<T: Copy>(src: &[T], out: *mut T, cap: usize, what: &str) -> FfiResult<()> {
    if cap < src.len() {
        return fail(
            AdmStatus::BufferTooSmall,
            format!("{what} needs {} values, buffer holds {cap}", src.len()),
        );
    }
    if !src.is_empty() {
        if out.is_null() {
            return fail(AdmStatus::NullPointer, format!("{what} buffer is NULL"));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    }
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn adm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a NUL-terminated string with static lifetime.
#[no_mangle]
pub extern "C" fn adm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The initial mesh of a strategy (an `AdmStrategy` value): the unit square as two triangles or one
/// quadrilateral.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_initial(strategy: i32, out: *mut *mut AdmMesh) -> AdmStatus {
    guard(|| emit(out, strategy_arg(strategy)?.initial_mesh()))
}

/// Build a mesh from raw tables. `coordinates` holds `2 * num_nodes`
/// values (x, y per node); `triangles` holds `3 * num_triangles` and
/// `quads` `4 * num_quads` 0-based node indices, counterclockwise. All
/// nodes are treated as initial nodes and the boundary is not stored.
///
/// # Safety
/// Each array must be valid for reads of the stated length (or may be NULL
/// when that length is 0); `out` must be valid for one handle write.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_new(
    coordinates: *const f64,
    num_nodes: usize,
    triangles: *const usize,
    num_triangles: usize,
    quads: *const usize,
    num_quads: usize,
    out: *mut *mut AdmMesh,
) -> AdmStatus {
    guard(|| {
        let c = slice(coordinates, 2 * num_nodes, "coordinates")?;
        let t = slice(triangles, 3 * num_triangles, "triangles")?;
        let q = slice(quads, 4 * num_quads, "quads")?;
        let mesh = Mesh::new(
            c.chunks_exact(2).map(|p| [p[0], p[1]]).collect(),
            t.chunks_exact(3).map(|e| [e[0], e[1], e[2]]).collect(),
            q.chunks_exact(4).map(|e| [e[0], e[1], e[2], e[3]]).collect(),
            None,
        );
        mesh.validate()?;
        emit(out, mesh)
    })
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `mesh` must be NULL or a handle returned by this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_free(mesh: *mut AdmMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// Deep copy of a mesh.
///
/// # Safety
/// `mesh` must be a valid handle and `out` valid for one handle write.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_clone(mesh: *const AdmMesh, out: *mut *mut AdmMesh) -> AdmStatus {
    guard(|| emit(out, mesh_ref(mesh)?.clone()))
}

/// Number of nodes; 0 for NULL.
///
/// # Safety
/// `mesh` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_num_nodes(mesh: *const AdmMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.mesh.num_nodes())
}

/// Number of initial nodes (the first `n0` nodes); 0 for NULL.
///
/// # Safety
/// `mesh` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_num_initial_nodes(mesh: *const AdmMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.mesh.n0)
}

/// Number of triangles; 0 for NULL.
///
/// # Safety
/// `mesh` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_num_triangles(mesh: *const AdmMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.mesh.elements3.len())
}

/// Number of quadrilaterals; 0 for NULL.
///
/// # Safety
/// `mesh` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_num_quads(mesh: *const AdmMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.mesh.elements4.len())
}

/// Number of hanging nodes; 0 for NULL.
///
/// # Safety
/// `mesh` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_num_hanging_nodes(mesh: *const AdmMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.mesh.irregular.len())
}

/// Total area; 0 for NULL.
///
/// # Safety
/// `mesh` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_area(mesh: *const AdmMesh) -> f64 {
    mesh.as_ref().map_or(0.0, |m| m.mesh.area())
}

/// Copy node coordinates (x, y per node) into `out`, which holds `cap`
/// doubles; at least `2 * adm_mesh_num_nodes(mesh)` are needed.
///
/// # Safety
/// `mesh` must be a valid handle and `out` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_coordinates(mesh: *const AdmMesh, out: *mut f64, cap: usize) -> AdmStatus {
    guard(|| {
        let flat: Vec<f64> = mesh_ref(mesh)?.coordinates.iter().flatten().copied().collect();
        copy_out(&flat, out, cap, "coordinates")
    })
}

/// Copy triangles (3 node indices each) into `out` of capacity `cap`.
/// Triangles have element ids `0..num_triangles`.
///
/// # Safety
/// `mesh` must be a valid handle and `out` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_triangles(mesh: *const AdmMesh, out: *mut usize, cap: usize) -> AdmStatus {
    guard(|| {
        let flat: Vec<usize> = mesh_ref(mesh)?.elements3.iter().flatten().copied().collect();
        copy_out(&flat, out, cap, "triangles")
    })
}

/// Copy quadrilaterals (4 node indices each) into `out` of capacity `cap`.
/// Quadrilaterals have element ids `num_triangles..num_triangles +
/// num_quads`.
///
/// # Safety
/// `mesh` must be a valid handle and `out` valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_quads(mesh: *const AdmMesh, out: *mut usize, cap: usize) -> AdmStatus {
    guard(|| {
        let flat: Vec<usize> = mesh_ref(mesh)?.elements4.iter().flatten().copied().collect();
        copy_out(&flat, out, cap, "quadrilaterals")
    })
}

/// Refine the marked elements (unified 0-based element ids) with
/// `strategy`, an `AdmStrategy` value.
///
/// # Safety
/// `mesh` must be a valid handle, `marked` valid for `num_marked` reads
/// (or NULL if it is 0) and `out` valid for one handle write.
#[no_mangle]
pub unsafe extern "C" fn adm_refine(
    strategy: i32,
    mesh: *const AdmMesh,
    marked: *const usize,
    num_marked: usize,
    out: *mut *mut AdmMesh,
) -> AdmStatus {
    guard(|| {
        let m = mesh_ref(mesh)?;
        let marks = slice(marked, num_marked, "marked")?;
        emit(out, strategy_arg(strategy)?.refine(m, marks)?)
    })
}

/// One coarsening step around the marked elements; `policy` is an
/// `AdmPolicy` value.
///
/// # Safety
/// As for `adm_refine`.
#[no_mangle]
pub unsafe extern "C" fn adm_coarsen(
    strategy: i32,
    mesh: *const AdmMesh,
    marked: *const usize,
    num_marked: usize,
    policy: i32,
    out: *mut *mut AdmMesh,
) -> AdmStatus {
    guard(|| {
        let m = mesh_ref(mesh)?;
        let marks = slice(marked, num_marked, "marked")?;
        emit(out, strategy_arg(strategy)?.coarsen(m, marks, policy_arg(policy)?)?)
    })
}

/// Whether the mesh has no hanging nodes.
///
/// # Safety
/// `mesh` must be a valid handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_is_conforming(mesh: *const AdmMesh, out: *mut bool) -> AdmStatus {
    guard(|| {
        let m = mesh_ref(mesh)?;
        if out.is_null() {
            return fail(AdmStatus::NullPointer, "output pointer is NULL");
        }
        *out = check_conforming(m);
        Ok(())
    })
}

/// Whether every edge carries at most one hanging node, each recorded.
///
/// # Safety
/// `mesh` must be a valid handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_is_1_irregular(mesh: *const AdmMesh, out: *mut bool) -> AdmStatus {
    guard(|| {
        let m = mesh_ref(mesh)?;
        if out.is_null() {
            return fail(AdmStatus::NullPointer, "output pointer is NULL");
        }
        *out = check_1_irregular(m).is_ok();
        Ok(())
    })
}

/// Write a mesh file, recording `strategy` in its metadata.
///
/// # Safety
/// `mesh` must be a valid handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_save(mesh: *const AdmMesh, strategy: i32, path: *const c_char) -> AdmStatus {
    guard(|| {
        let m = mesh_ref(mesh)?;
        let path = path_arg(path)?;
        Ok(save_mesh(m, Some(strategy_arg(strategy)?), path)?)
    })
}

/// Read a mesh file. If `strategy` is not NULL it receives the recorded
/// strategy, and `has_strategy` (if not NULL) whether one was recorded.
///
/// # Safety
/// `path` must be a NUL-terminated string, `out` valid for one handle
/// write, and the optional pointers NULL or valid for one write.
#[no_mangle]
pub unsafe extern "C" fn adm_mesh_load(
    path: *const c_char,
    out: *mut *mut AdmMesh,
    strategy: *mut AdmStrategy,
    has_strategy: *mut bool,
) -> AdmStatus {
    guard(|| {
        let path = path_arg(path)?;
        let file = load_mesh(path)?;
        if let (Some(s), false) = (file.strategy, strategy.is_null()) {
            *strategy = s.into();
        }
        if !has_strategy.is_null() {
            *has_strategy = file.strategy.is_some();
        }
        emit(out, file.mesh)
    })
}
