// SPDX-License-Identifier: Apache-2.0

//! Invariant checkers: 1-irregularity, conformity, and the d-neighbor rule.

use std::collections::{HashMap, HashSet};

use super::Mesh;
use crate::util::{ekey, is_midpoint, length_scale, midpoint, NodeLocator, MIDPOINT_TOL};

/// Outcome of [`check_1_irregular`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IrregularityReport {
    /// Element edges (as stored in an element) that violate the rule: more
    /// than one hanging node, an unrecorded hanging node, or an invalid
    /// irregular-table entry.
    pub violations: Vec<[usize; 2]>,
}

impl IrregularityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Max recursion when collecting nodes along an edge; far beyond any
/// meaningful level difference.
const MAX_SPLIT_DEPTH: usize = 48;

fn edge_counts(mesh: &Mesh) -> HashMap<(usize, usize), u32> {
    let mut count: HashMap<(usize, usize), u32> = HashMap::with_capacity(2 * mesh.num_elements());
    for e in mesh.elements() {
        for k in 0..e.len() {
            *count.entry(ekey(e[k], e[(k + 1) % e.len()])).or_default() += 1;
        }
    }
    count
}

fn locator(mesh: &Mesh) -> NodeLocator<'_> {
    let mut used = vec![false; mesh.num_nodes()];
    for e in mesh.elements() {
        for &v in e {
            used[v] = true;
        }
    }
    let tol = MIDPOINT_TOL * length_scale(&mesh.coordinates);
    NodeLocator::new(&mesh.coordinates, (0..mesh.num_nodes()).filter(|&v| used[v]), tol)
}

/// Nodes found strictly inside segment `a`–`b` by recursive bisection.
fn interior_nodes(mesh: &Mesh, loc: &NodeLocator<'_>, a: usize, b: usize, depth: usize, out: &mut Vec<usize>) {
    if depth >= MAX_SPLIT_DEPTH {
        return;
    }
    if let Some(m) = loc.find(midpoint(mesh.coordinates[a], mesh.coordinates[b])) {
        if m == a || m == b {
            return;
        }
        interior_nodes(mesh, loc, a, m, depth + 1, out);
        out.push(m);
        interior_nodes(mesh, loc, m, b, depth + 1, out);
    }
}

/// Check that every element edge carries at most one hanging node and that
/// every hanging node is recorded in the irregular table.
///
/// Hanging nodes are found geometrically: a node used by some element that
/// sits at the midpoint of an unshared element edge (recursively, to catch
/// several nodes on one edge).
pub fn check_1_irregular(mesh: &Mesh) -> IrregularityReport {
    let count = edge_counts(mesh);
    let loc = locator(mesh);
    let tol = MIDPOINT_TOL * length_scale(&mesh.coordinates);
    let mut recorded: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut violations = Vec::new();
    let mut reported: HashSet<(usize, usize)> = HashSet::new();
    let mut report = |a: usize, b: usize, v: &mut Vec<[usize; 2]>| {
        if reported.insert(ekey(a, b)) {
            v.push([a, b]);
        }
    };
    for &[i, j, k] in &mesh.irregular {
        recorded.entry(ekey(i, j)).or_default().push(k);
        let valid = i < mesh.num_nodes()
            && j < mesh.num_nodes()
            && k < mesh.num_nodes()
            && count.get(&ekey(i, j)) == Some(&1)
            && is_midpoint(mesh.coordinates[i], mesh.coordinates[j], mesh.coordinates[k], tol);
        if !valid {
            report(i, j, &mut violations);
        }
    }
    for list in recorded.iter().filter(|(_, l)| l.len() > 1) {
        report(list.0 .0, list.0 .1, &mut violations);
    }
    let mut inner = Vec::new();
    for e in mesh.elements() {
        for k in 0..e.len() {
            let (a, b) = (e[k], e[(k + 1) % e.len()]);
            if count[&ekey(a, b)] != 1 {
                continue;
            }
            inner.clear();
            interior_nodes(mesh, &loc, a, b, 0, &mut inner);
            match inner.len() {
                0 => {}
                1 => {
                    let ok = recorded.get(&ekey(a, b)).is_some_and(|l| l.contains(&inner[0]));
                    if !ok {
                        report(a, b, &mut violations);
                    }
                }
                _ => report(a, b, &mut violations),
            }
        }
    }
    IrregularityReport { violations }
}

/// True iff the mesh has no hanging nodes: the irregular table is empty and
/// no unshared element edge has a used node at its midpoint.
pub fn check_conforming(mesh: &Mesh) -> bool {
    if !mesh.irregular.is_empty() {
        return false;
    }
    let count = edge_counts(mesh);
    let loc = locator(mesh);
    for e in mesh.elements() {
        for k in 0..e.len() {
            let (a, b) = (e[k], e[(k + 1) % e.len()]);
            if count[&ekey(a, b)] == 1 && loc.find(midpoint(mesh.coordinates[a], mesh.coordinates[b])).is_some() {
                return false;
            }
        }
    }
    true
}

/// Per element, the number of its edges that carry a hanging node
/// according to the irregular table.
pub fn hanging_edge_counts(mesh: &Mesh) -> Vec<usize> {
    let irr: HashSet<(usize, usize)> = mesh.irregular.iter().map(|&[i, j, _]| ekey(i, j)).collect();
    mesh.elements()
        .map(|e| {
            (0..e.len())
                .filter(|&k| irr.contains(&ekey(e[k], e[(k + 1) % e.len()])))
                .count()
        })
        .collect()
}

/// Elements violating the d-neighbor rule, i.e. with at least `d` edges that
/// carry hanging nodes.
pub fn check_d_neighbor(mesh: &Mesh, d: usize) -> Vec<usize> {
    hanging_edge_counts(mesh)
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c >= d)
        .map(|(e, _)| e)
        .collect()
}
