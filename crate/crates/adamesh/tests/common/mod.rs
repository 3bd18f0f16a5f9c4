// SPDX-License-Identifier: Apache-2.0

//! Helpers shared by the integration tests: canonical mesh forms,
//! geometry-only checks that do not use the library's own bookkeeping, and a
//! refinement-history oracle.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use adamesh::{Mesh, Point, Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each element with probability `p`, never empty on a nonempty mesh.
pub fn random_marks(rng: &mut ChaCha8Rng, mesh: &Mesh, p: f64) -> Vec<usize> {
    let n = mesh.num_elements();
    let mut m: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
    if m.is_empty() && n > 0 {
        m.push(rng.gen_range(0..n));
    }
    m
}

pub fn all(mesh: &Mesh) -> Vec<usize> {
    (0..mesh.num_elements()).collect()
}

/// Exact coordinate key.
pub type PKey = (u64, u64);

pub fn pkey(p: Point) -> PKey {
    (p[0].to_bits(), p[1].to_bits())
}

/// An element as the sorted set of its corner coordinates.
pub type EKey = Vec<PKey>;

pub fn element_key(mesh: &Mesh, id: usize) -> EKey {
    let mut k: Vec<PKey> = mesh.element(id).iter().map(|&v| pkey(mesh.coordinates[v])).collect();
    k.sort_unstable();
    k
}

/// Mesh as a sorted list of elements, each a cyclic sequence of coordinates
/// rotated to start at its smallest coordinate. Independent of node
/// numbering and element order.
pub fn canonical(mesh: &Mesh) -> Vec<Vec<PKey>> {
    let mut out: Vec<Vec<PKey>> = mesh
        .elements()
        .map(|e| {
            let mut c: Vec<PKey> = e.iter().map(|&v| pkey(mesh.coordinates[v])).collect();
            let k = (0..c.len()).min_by_key(|&k| c[k]).unwrap();
            c.rotate_left(k);
            c
        })
        .collect();
    out.sort();
    out
}

pub fn centroid(p: &[Point]) -> Point {
    let n = p.len() as f64;
    [
        p.iter().map(|q| q[0]).sum::<f64>() / n,
        p.iter().map(|q| q[1]).sum::<f64>() / n,
    ]
}

/// Strictly inside a counterclockwise convex polygon.
pub fn strictly_inside(poly: &[Point], q: Point) -> bool {
    let n = poly.len();
    (0..n).all(|k| {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]) > 0.0
    })
}

/// For every element edge, the number of mesh nodes lying on it at one of
/// the dyadic positions `k / 8`. Every node of a mesh built by edge
/// bisection from the same initial mesh sits at such a position of any edge
/// it lies on. Returned per element, per local edge.
pub fn dyadic_edge_nodes(mesh: &Mesh) -> Vec<Vec<usize>> {
    let used: HashSet<PKey> = mesh.elements().flatten().map(|&v| pkey(mesh.coordinates[v])).collect();
    mesh.elements()
        .map(|e| {
            (0..e.len())
                .map(|k| {
                    let (a, b) = (mesh.coordinates[e[k]], mesh.coordinates[e[(k + 1) % e.len()]]);
                    (1..8)
                        .filter(|&j| {
                            let t = j as f64 / 8.0;
                            let p = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
                            used.contains(&pkey(p))
                        })
                        .count()
                })
                .collect()
        })
        .collect()
}

pub fn geo_conforming(mesh: &Mesh) -> bool {
    dyadic_edge_nodes(mesh).iter().flatten().all(|&c| c == 0)
}

pub fn geo_1_irregular(mesh: &Mesh) -> bool {
    dyadic_edge_nodes(mesh).iter().flatten().all(|&c| c <= 1)
}

/// Elements with `d` or more edges carrying a hanging node.
pub fn geo_d_neighbor_violations(mesh: &Mesh, d: usize) -> Vec<usize> {
    dyadic_edge_nodes(mesh)
        .iter()
        .enumerate()
        .filter(|(_, edges)| edges.iter().filter(|&&c| c > 0).count() >= d)
        .map(|(id, _)| id)
        .collect()
}

/// Area, node-count and initial-coordinate conservation relative to `t0`.
pub fn conservation_error(t0: &Mesh, mesh: &Mesh) -> Option<String> {
    let (a0, a) = (t0.area(), mesh.area());
    if ((a - a0) / a0).abs() > 1e-12 {
        return Some(format!("area {a} differs from {a0}"));
    }
    if mesh.num_nodes() < t0.num_nodes() {
        return Some(format!(
            "{} nodes, fewer than the {} initial ones",
            mesh.num_nodes(),
            t0.num_nodes()
        ));
    }
    let same = t0
        .coordinates
        .iter()
        .zip(&mesh.coordinates)
        .all(|(p, q)| p[0].to_bits() == q[0].to_bits() && p[1].to_bits() == q[1].to_bits());
    if !same {
        return Some("initial coordinates changed".into());
    }
    None
}

/// Explicit refinement history for red refinement: every element created
/// by a refinement call is linked to the element of the previous mesh that
/// contains it. Elements are identified by their corner coordinates, which
/// is stable across renumbering and coarsening.
#[derive(Debug, Default, Clone)]
pub struct History {
    parent: HashMap<EKey, EKey>,
}

impl History {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record the parent of every element of `after` that is not in `before`.
    pub fn record(&mut self, before: &Mesh, after: &Mesh) {
        let old: HashSet<EKey> = (0..before.num_elements()).map(|id| element_key(before, id)).collect();
        let now: HashSet<EKey> = (0..after.num_elements()).map(|id| element_key(after, id)).collect();
        let refined: Vec<(EKey, Vec<Point>)> = (0..before.num_elements())
            .map(|id| (element_key(before, id), before.element_points(id)))
            .filter(|(k, _)| !now.contains(k))
            .collect();
        for id in 0..after.num_elements() {
            let k = element_key(after, id);
            if old.contains(&k) {
                continue;
            }
            let g = centroid(&after.element_points(id));
            let parents: Vec<&EKey> = refined
                .iter()
                .filter(|(_, poly)| strictly_inside(poly, g))
                .map(|(pk, _)| pk)
                .collect();
            assert_eq!(parents.len(), 1, "new element must lie in exactly one refined element");
            self.parent.insert(k, parents[0].clone());
        }
    }

    /// Sibling groups of four whose members are all elements of `mesh` and
    /// whose parent was created by refinement or is an initial element.
    /// Elements without a recorded parent (initial elements) form no group.
    pub fn leaf_quartets(&self, mesh: &Mesh) -> BTreeSet<BTreeSet<EKey>> {
        let mut groups: HashMap<&EKey, BTreeSet<EKey>> = HashMap::new();
        for id in 0..mesh.num_elements() {
            let k = element_key(mesh, id);
            if let Some(p) = self.parent.get(&k) {
                groups.entry(p).or_default().insert(k);
            }
        }
        groups.into_values().filter(|g| g.len() == 4).collect()
    }
}

/// The element-key set of each quartet of an admissible set.
pub fn quartet_keys(mesh: &Mesh, adm: &adamesh::AdmissibleSet) -> BTreeSet<BTreeSet<EKey>> {
    adm.quartets
        .iter()
        .map(|q| q.elements.iter().map(|&e| element_key(mesh, e)).collect())
        .collect()
}

/// Node whose coordinates equal `p` exactly.
pub fn node_at(mesh: &Mesh, p: Point) -> usize {
    mesh.coordinates
        .iter()
        .position(|&q| q == p)
        .unwrap_or_else(|| panic!("no node at {p:?}"))
}

/// Elements whose closure contains `p` strictly inside.
pub fn elements_containing(mesh: &Mesh, p: Point) -> Vec<usize> {
    (0..mesh.num_elements())
        .filter(|&id| strictly_inside(&mesh.element_points(id), p))
        .collect()
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Refine with random marks `rounds` times and return every intermediate
/// mesh, starting with the initial one.
pub fn random_refinements(s: Strategy, seed: u64, rounds: usize, p: f64) -> Vec<Mesh> {
    let mut r = rng(seed);
    let mut out = vec![s.initial_mesh()];
    for _ in 0..rounds {
        let m = out.last().unwrap();
        let marks = random_marks(&mut r, m, p);
        out.push(s.refine(m, &marks).expect("refine"));
    }
    out
}

/// Equal node numbering, coordinates and element rows; the order in which
/// elements are listed is ignored.
pub fn same_mesh(a: &Mesh, b: &Mesh) -> bool {
    let sorted = |m: &Mesh| {
        let mut t = m.elements3.clone();
        let mut q = m.elements4.clone();
        t.sort_unstable();
        q.sort_unstable();
        (t, q)
    };
    a.coordinates == b.coordinates
        && a.n0 == b.n0
        && a.irregular.is_empty() == b.irregular.is_empty()
        && sorted(a) == sorted(b)
}
