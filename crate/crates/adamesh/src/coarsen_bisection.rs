// SPDX-License-Identifier: Apache-2.0

//! Coarsening of newest-vertex-bisection and red-green-blue triangulations.
//!
//! A node `v` can be removed when it is not an initial node, is the newest
//! vertex (position three) of every element touching it, and is touched by
//! exactly two or four elements. Bisection places the two children of a
//! parent `(a, b, c)` as `(c, a, v)`, `(b, c, v)` in consecutive slots, so
//! each pair merges back to `(a, b, c)` in the first slot.
//!
//! For red-green-blue meshes, each red quartet is first rewritten as the
//! equivalent bisection configuration (the middle element is split along
//! its own edges), the bisection criterion is applied, and quartets that
//! none of the merges touched are restored to their red form.

use crate::coarsen_red::MarkPolicy;
use crate::error::{MeshError, Result};
use crate::mesh::{Mesh, MeshKind};
use crate::util::{is_midpoint, length_scale, MIDPOINT_TOL};

/// What happened to an input element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Fate {
    Kept(usize),
    Merged(usize),
    Removed,
}

/// Node marks derived from element marks: with [`MarkPolicy::AnyOf`] a node
/// is marked if any adjacent element is marked, with
/// [`MarkPolicy::AllOf`] only if all adjacent elements are.
fn node_marks(mesh: &Mesh, flags: &[bool], policy: MarkPolicy) -> Vec<bool> {
    let n = mesh.num_nodes();
    match policy {
        MarkPolicy::AnyOf => {
            let mut m = vec![false; n];
            for (e, &f) in mesh.elements3.iter().zip(flags) {
                if f {
                    e.iter().for_each(|&v| m[v] = true);
                }
            }
            m
        }
        MarkPolicy::AllOf => {
            let mut m = vec![true; n];
            for (e, &f) in mesh.elements3.iter().zip(flags) {
                if !f {
                    e.iter().for_each(|&v| m[v] = false);
                }
            }
            m
        }
    }
}

/// Merge bisection pairs around every removable marked node. Returns the
/// elements (node indices unchanged) and the fate of every input element.
fn nvb_merge(mesh: &Mesh, node_marked: &[bool]) -> (Vec<[usize; 3]>, Vec<Fate>) {
    let n = mesh.num_nodes();
    let e3 = &mesh.elements3;
    let mut touch = vec![0u32; n];
    let mut newest = vec![0u32; n];
    for e in e3 {
        for &v in e {
            touch[v] += 1;
        }
        newest[e[2]] += 1;
    }
    let removable =
        |v: usize| v >= mesh.n0 && node_marked[v] && touch[v] == newest[v] && (touch[v] == 2 || touch[v] == 4);
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, e) in e3.iter().enumerate() {
        if removable(e[2]) {
            around[e[2]].push(id);
        }
    }
    let tol = MIDPOINT_TOL * length_scale(&mesh.coordinates);
    let mut parent: Vec<Option<[usize; 3]>> = vec![None; e3.len()];
    let mut gone = vec![false; e3.len()];
    for (v, list) in around.iter().enumerate() {
        if list.is_empty() {
            continue;
        }
        // `list` is ascending; children of one parent occupy slots i, i + 1.
        let mut parents = Vec::with_capacity(2);
        for pair in list.chunks(2) {
            let (l0, l1) = (pair[0], pair[1]);
            let (c0, c1) = (e3[l0], e3[l1]);
            let p = [c0[1], c1[0], c0[0]];
            let ok = l1 == l0 + 1
                && c0[0] == c1[1]
                && is_midpoint(mesh.coordinates[p[0]], mesh.coordinates[p[1]], mesh.coordinates[v], tol);
            if !ok {
                parents.clear();
                break;
            }
            parents.push((l0, l1, p));
        }
        if parents.len() == 2 {
            let (p, q) = (parents[0].2, parents[1].2);
            if p[0] != q[1] || p[1] != q[0] {
                parents.clear();
            }
        }
        for (l0, l1, p) in parents {
            parent[l0] = Some(p);
            gone[l1] = true;
        }
    }
    let mut out = Vec::with_capacity(e3.len());
    let mut fates = Vec::with_capacity(e3.len());
    for (id, &e) in e3.iter().enumerate() {
        if gone[id] {
            fates.push(Fate::Removed);
        } else if let Some(p) = parent[id] {
            fates.push(Fate::Merged(out.len()));
            out.push(p);
        } else {
            fates.push(Fate::Kept(out.len()));
            out.push(e);
        }
    }
    (out, fates)
}

fn expect_triangular(mesh: &Mesh) -> Result<bool> {
    match mesh.kind() {
        MeshKind::Empty => Ok(false),
        MeshKind::Triangular => Ok(true),
        _ => Err(MeshError::WrongKind {
            expected: "a triangular mesh",
        }),
    }
}

fn finish(mesh: &Mesh, elements3: Vec<[usize; 3]>) -> Result<Mesh> {
    let mut out = mesh.clone();
    out.elements3 = elements3;
    out.irregular.clear();
    out.compact_nodes()?;
    Ok(out)
}

/// One newest-vertex-bisection coarsening step.
pub fn coarsen_nvb(mesh: &Mesh, marked: &[usize], policy: MarkPolicy) -> Result<Mesh> {
    let flags = mesh.check_marks(marked)?;
    if !expect_triangular(mesh)? {
        return Ok(mesh.clone());
    }
    let (elements, _) = nvb_merge(mesh, &node_marks(mesh, &flags, policy));
    finish(mesh, elements)
}

/// Red quartets stored as `(a, x, z)`, `(x, b, y)`, `(z, y, c)`, `(y, z, x)`
/// in consecutive slots, with `x`, `y`, `z` the midpoints of `ab`, `bc`,
/// `ca`. Returns the first slot of each.
fn red_quartets(mesh: &Mesh) -> Vec<usize> {
    let e3 = &mesh.elements3;
    let tol = MIDPOINT_TOL * length_scale(&mesh.coordinates);
    let mut out = Vec::new();
    let mut i = 0;
    while i + 4 <= e3.len() {
        let [a, x, z] = e3[i];
        let [x1, b, y] = e3[i + 1];
        let [z1, y1, c] = e3[i + 2];
        let is_red = x1 == x
            && z1 == z
            && y1 == y
            && e3[i + 3] == [y, z, x]
            && x > a.max(b).max(c)
            && y > a.max(b).max(c)
            && z > a.max(b).max(c)
            && is_midpoint(mesh.coordinates[a], mesh.coordinates[b], mesh.coordinates[x], tol)
            && is_midpoint(mesh.coordinates[b], mesh.coordinates[c], mesh.coordinates[y], tol)
            && is_midpoint(mesh.coordinates[c], mesh.coordinates[a], mesh.coordinates[z], tol);
        if is_red {
            out.push(i);
            i += 4;
        } else {
            i += 1;
        }
    }
    out
}

/// One red-green-blue coarsening step. Red quartets are coarsened through
/// their bisection equivalent, so a red quartet becomes its parent or, if
/// only part of the bisection merges apply, a green or blue pattern.
pub fn coarsen_rgb(mesh: &Mesh, marked: &[usize], policy: MarkPolicy) -> Result<Mesh> {
    let flags = mesh.check_marks(marked)?;
    if !expect_triangular(mesh)? {
        return Ok(mesh.clone());
    }
    let node_marked = node_marks(mesh, &flags, policy);
    let quartets = red_quartets(mesh);
    let mut flipped = mesh.clone();
    for &i in &quartets {
        let [a, x, z] = mesh.elements3[i];
        let [_, b, y] = mesh.elements3[i + 1];
        let c = mesh.elements3[i + 2][2];
        // Bisection form: parent (a, b, c) bisected at x, then (c, a, x) at z
        // and (b, c, x) at y.
        flipped.elements3[i..i + 4].copy_from_slice(&[[x, c, z], [a, x, z], [x, b, y], [c, x, y]]);
    }
    let (mut elements, fates) = nvb_merge(&flipped, &node_marked);
    for &i in &quartets {
        if let [Fate::Kept(j0), Fate::Kept(_), Fate::Kept(_), Fate::Kept(_)] = fates[i..i + 4] {
            elements[j0..j0 + 4].copy_from_slice(&mesh.elements3[i..i + 4]);
        }
    }
    finish(mesh, elements)
}
