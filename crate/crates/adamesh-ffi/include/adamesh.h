/* SPDX-License-Identifier: Apache-2.0 */

#ifndef ADAMESH_H
#define ADAMESH_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// How element marks are transferred in a coarsening step.
typedef enum AdmPolicy {
  // A group is coarsened if any of its elements is marked.
  ADM_POLICY_ANY_OF = 0,
  // A group is coarsened only if all of its elements are marked.
  ADM_POLICY_ALL_OF = 1,
} AdmPolicy;

// Result code of every fallible function.
typedef enum AdmStatus {
  ADM_STATUS_OK = 0,
  // A required pointer argument was NULL.
  ADM_STATUS_NULL_POINTER = 1,
  // An argument is out of its domain (unknown enum value, non-UTF-8
  // path, inconsistent lengths).
  ADM_STATUS_INVALID_ARGUMENT = 2,
  // A marked element id is not an element of the mesh.
  ADM_STATUS_MARK_OUT_OF_RANGE = 3,
  // The mesh violates a structural invariant.
  ADM_STATUS_INVALID_MESH = 4,
  // The mesh was not produced by the requested strategy.
  ADM_STATUS_STRATEGY_MISMATCH = 5,
  // A caller-provided buffer is too small.
  ADM_STATUS_BUFFER_TOO_SMALL = 6,
  // A file could not be read or written.
  ADM_STATUS_IO = 7,
  // A mesh file is malformed.
  ADM_STATUS_PARSE = 8,
  // An internal error; please report it.
  ADM_STATUS_INTERNAL = 9,
} AdmStatus;

// Refinement/coarsening strategy.
typedef enum AdmStrategy {
  ADM_STRATEGY_TR = 0,
  ADM_STRATEGY_TRG = 1,
  ADM_STRATEGY_TRGB = 2,
  ADM_STRATEGY_TNVB = 3,
  ADM_STRATEGY_QR = 4,
  ADM_STRATEGY_QRG = 5,
  ADM_STRATEGY_QRB = 6,
} AdmStrategy;

// Opaque mesh handle.
typedef struct AdmMesh AdmMesh;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *adm_last_error_message(void);

// Library version as a NUL-terminated string with static lifetime.
const char *adm_version(void);

// The initial mesh of a strategy (an `AdmStrategy` value): the unit square as two triangles or one
// quadrilateral.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum AdmStatus adm_mesh_initial(int32_t strategy, struct AdmMesh **out);

// Build a mesh from raw tables. `coordinates` holds `2 * num_nodes`
// values (x, y per node); `triangles` holds `3 * num_triangles` and
// `quads` `4 * num_quads` 0-based node indices, counterclockwise. All
// nodes are treated as initial nodes and the boundary is not stored.
//
// # Safety
// Each array must be valid for reads of the stated length (or may be NULL
// when that length is 0); `out` must be valid for one handle write.
enum AdmStatus adm_mesh_new(const double *coordinates,
                            size_t num_nodes,
                            const size_t *triangles,
                            size_t num_triangles,
                            const size_t *quads,
                            size_t num_quads,
                            struct AdmMesh **out);

// Release a handle. NULL is ignored.
//
// # Safety
// `mesh` must be NULL or a handle returned by this library that has not
// been freed yet.
void adm_mesh_free(struct AdmMesh *mesh);

// Deep copy of a mesh.
//
// # Safety
// `mesh` must be a valid handle and `out` valid for one handle write.
enum AdmStatus adm_mesh_clone(const struct AdmMesh *mesh, struct AdmMesh **out);

// Number of nodes; 0 for NULL.
//
// # Safety
// `mesh` must be NULL or a valid handle.
size_t adm_mesh_num_nodes(const struct AdmMesh *mesh);

// Number of initial nodes (the first `n0` nodes); 0 for NULL.
//
// # Safety
// `mesh` must be NULL or a valid handle.
size_t adm_mesh_num_initial_nodes(const struct AdmMesh *mesh);

// Number of triangles; 0 for NULL.
//
// # Safety
// `mesh` must be NULL or a valid handle.
size_t adm_mesh_num_triangles(const struct AdmMesh *mesh);

// Number of quadrilaterals; 0 for NULL.
//
// # Safety
// `mesh` must be NULL or a valid handle.
size_t adm_mesh_num_quads(const struct AdmMesh *mesh);

// Number of hanging nodes; 0 for NULL.
//
// # Safety
// `mesh` must be NULL or a valid handle.
size_t adm_mesh_num_hanging_nodes(const struct AdmMesh *mesh);

// Total area; 0 for NULL.
//
// # Safety
// `mesh` must be NULL or a valid handle.
double adm_mesh_area(const struct AdmMesh *mesh);

// Copy node coordinates (x, y per node) into `out`, which holds `cap`
// doubles; at least `2 * adm_mesh_num_nodes(mesh)` are needed.
//
// # Safety
// `mesh` must be a valid handle and `out` valid for `cap` writes.
enum AdmStatus adm_mesh_coordinates(const struct AdmMesh *mesh, double *out, size_t cap);

// Copy triangles (3 node indices each) into `out` of capacity `cap`.
// Triangles have element ids `0..num_triangles`.
//
// # Safety
// `mesh` must be a valid handle and `out` valid for `cap` writes.
enum AdmStatus adm_mesh_triangles(const struct AdmMesh *mesh, size_t *out, size_t cap);

// Copy quadrilaterals (4 node indices each) into `out` of capacity `cap`.
// Quadrilaterals have element ids `num_triangles..num_triangles +
// num_quads`.
//
// # Safety
// `mesh` must be a valid handle and `out` valid for `cap` writes.
enum AdmStatus adm_mesh_quads(const struct AdmMesh *mesh, size_t *out, size_t cap);

// Refine the marked elements (unified 0-based element ids) with
// `strategy`, an `AdmStrategy` value.
//
// # Safety
// `mesh` must be a valid handle, `marked` valid for `num_marked` reads
// (or NULL if it is 0) and `out` valid for one handle write.
enum AdmStatus adm_refine(int32_t strategy,
                          const struct AdmMesh *mesh,
                          const size_t *marked,
                          size_t num_marked,
                          struct AdmMesh **out);

// One coarsening step around the marked elements; `policy` is an
// `AdmPolicy` value.
//
// # Safety
// As for `adm_refine`.
enum AdmStatus adm_coarsen(int32_t strategy,
                           const struct AdmMesh *mesh,
                           const size_t *marked,
                           size_t num_marked,
                           int32_t policy,
                           struct AdmMesh **out);

// Whether the mesh has no hanging nodes.
//
// # Safety
// `mesh` must be a valid handle and `out` valid for one write.
enum AdmStatus adm_mesh_is_conforming(const struct AdmMesh *mesh, bool *out);

// Whether every edge carries at most one hanging node, each recorded.
//
// # Safety
// `mesh` must be a valid handle and `out` valid for one write.
enum AdmStatus adm_mesh_is_1_irregular(const struct AdmMesh *mesh, bool *out);

// Write a mesh file, recording `strategy` in its metadata.
//
// # Safety
// `mesh` must be a valid handle and `path` a NUL-terminated string.
enum AdmStatus adm_mesh_save(const struct AdmMesh *mesh, int32_t strategy, const char *path);

// Read a mesh file. If `strategy` is not NULL it receives the recorded
// strategy, and `has_strategy` (if not NULL) whether one was recorded.
//
// # Safety
// `path` must be a NUL-terminated string, `out` valid for one handle
// write, and the optional pointers NULL or valid for one write.
enum AdmStatus adm_mesh_load(const char *path,
                             struct AdmMesh **out,
                             enum AdmStrategy *strategy,
                             bool *has_strategy);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADAMESH_H */
