// SPDX-License-Identifier: Apache-2.0

//! The mesh data model.
//!
//! A [`Mesh`] stores plain arrays: node coordinates, triangle and
//! quadrilateral connectivity (counterclockwise), the table of irregular
//! edges with their hanging nodes, an optional boundary, the number of
//! initial nodes, and counters for trailing green/blue blocks. Node age is
//! index order: a smaller index is an older node. Nothing else about the
//! refinement history is stored.
//!
//! The same struct serves triangular, quadrilateral and mixed meshes; which
//! blocks are populated depends on the strategy that produced it.

mod checks;
mod geometry;
mod normalize;
mod quality;

pub use checks::{check_1_irregular, check_conforming, check_d_neighbor, hanging_edge_counts, IrregularityReport};
pub use geometry::{create_edge2elements, create_edge2elements_adv, provide_geometric_data, GeomData};
pub use normalize::{normalize_oldest_first, normalize_oldest_first_in_place, rotate_oldest_first};
pub use quality::{quality_metrics, similarity_classes, triangle_angles, QualityReport};

use std::collections::{HashMap, HashSet};

use crate::error::{MeshError, Result};
use crate::util::{ekey, is_midpoint, length_scale, MIDPOINT_TOL};

/// A point in the plane.
pub type Point = [f64; 2];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Mesh {
    pub coordinates: Vec<Point>,
    /// Triangles, counterclockwise.
    pub elements3: Vec<[usize; 3]>,
    /// Quadrilaterals, counterclockwise.
    pub elements4: Vec<[usize; 4]>,
    /// `(i, j, k)`: the element edge `(i, j)` carries the hanging node `k`.
    pub irregular: Vec<[usize; 3]>,
    /// Boundary segments, if known.
    pub boundary: Option<Vec<[usize; 2]>>,
    /// Number of nodes of the initial mesh; these are never removed.
    pub n0: usize,
    /// Trailing green triangles in `elements3`.
    pub n_green: usize,
    /// Trailing green quadrilaterals in `elements4`.
    pub n_green4: usize,
    /// Trailing blue quadrilaterals in `elements4`.
    pub n_blue: usize,
}

/// Which element blocks a mesh populates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshKind {
    Empty,
    Triangular,
    Quadrilateral,
    Mixed,
}

impl Mesh {
    /// Build a mesh whose current nodes are all initial nodes.
    pub fn new(
        coordinates: Vec<Point>,
        elements3: Vec<[usize; 3]>,
        elements4: Vec<[usize; 4]>,
        boundary: Option<Vec<[usize; 2]>>,
    ) -> Self {
        let n0 = coordinates.len();
        Mesh {
            coordinates,
            elements3,
            elements4,
            irregular: Vec::new(),
            boundary,
            n0,
            n_green: 0,
            n_green4: 0,
            n_blue: 0,
        }
    }

    /// Unit square split along the diagonal `(0,0)`–`(1,1)` into two
    /// triangles whose first edges (the reference edges) are that diagonal.
    pub fn unit_square_triangles() -> Self {
        Mesh::new(
            vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            vec![[2, 0, 1], [0, 2, 3]],
            Vec::new(),
            Some(vec![[0, 1], [1, 2], [2, 3], [3, 0]]),
        )
    }

    /// The unit square as a single quadrilateral.
    pub fn unit_square_quad() -> Self {
        Mesh::new(
            vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            Vec::new(),
            vec![[0, 1, 2, 3]],
            Some(vec![[0, 1], [1, 2], [2, 3], [3, 0]]),
        )
    }

    /// Tensor grid of `nx × ny` quadrilaterals on `[0, w] × [0, h]`, node
    /// rows ordered bottom to top.
    pub fn quad_grid(nx: usize, ny: usize, w: f64, h: f64) -> Self {
        let id = |i: usize, j: usize| j * (nx + 1) + i;
        let mut coordinates = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            for i in 0..=nx {
                coordinates.push([w * i as f64 / nx as f64, h * j as f64 / ny as f64]);
            }
        }
        let mut elements4 = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                elements4.push([id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
            }
        }
        let mut boundary = Vec::new();
        for i in 0..nx {
            boundary.push([id(i, 0), id(i + 1, 0)]);
        }
        for j in 0..ny {
            boundary.push([id(nx, j), id(nx, j + 1)]);
        }
        for i in (0..nx).rev() {
            boundary.push([id(i + 1, ny), id(i, ny)]);
        }
        for j in (0..ny).rev() {
            boundary.push([id(0, j + 1), id(0, j)]);
        }
        Mesh::new(coordinates, Vec::new(), elements4, Some(boundary))
    }

    pub fn num_nodes(&self) -> usize {
        self.coordinates.len()
    }

    pub fn num_elements(&self) -> usize {
        self.elements3.len() + self.elements4.len()
    }

    pub fn kind(&self) -> MeshKind {
        match (self.elements3.is_empty(), self.elements4.is_empty()) {
            (true, true) => MeshKind::Empty,
            (false, true) => MeshKind::Triangular,
            (true, false) => MeshKind::Quadrilateral,
            (false, false) => MeshKind::Mixed,
        }
    }

    /// Node indices of a unified element id.
    pub fn element(&self, id: usize) -> &[usize] {
        let n3 = self.elements3.len();
        if id < n3 {
            &self.elements3[id]
        } else {
            &self.elements4[id - n3]
        }
    }

    /// Iterate over all elements (triangles first) as node slices.
    pub fn elements(&self) -> impl Iterator<Item = &[usize]> + Clone + '_ {
        self.elements3
            .iter()
            .map(|e| &e[..])
            .chain(self.elements4.iter().map(|e| &e[..]))
    }

    pub fn element_points(&self, id: usize) -> Vec<Point> {
        self.element(id).iter().map(|&n| self.coordinates[n]).collect()
    }

    pub fn element_area(&self, id: usize) -> f64 {
        signed_area(&self.element_points(id))
    }

    /// Total area of all elements.
    pub fn area(&self) -> f64 {
        (0..self.num_elements()).map(|e| self.element_area(e)).sum()
    }

    /// Boundary segments: the stored ones, or else element edges that no
    /// other element or irregular-edge record shares.
    pub fn boundary_segments(&self) -> Vec<[usize; 2]> {
        if let Some(b) = &self.boundary {
            return b.clone();
        }
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for e in self.elements() {
            for k in 0..e.len() {
                *count.entry(ekey(e[k], e[(k + 1) % e.len()])).or_default() += 1;
            }
        }
        for &[i, j, k] in &self.irregular {
            for (a, b) in [(i, j), (j, k), (k, i)] {
                *count.entry(ekey(a, b)).or_default() += 1;
            }
        }
        let mut out = Vec::new();
        for e in self.elements() {
            for k in 0..e.len() {
                let (a, b) = (e[k], e[(k + 1) % e.len()]);
                if count[&ekey(a, b)] == 1 {
                    out.push([a, b]);
                }
            }
        }
        out
    }

    /// Check every type invariant that can be verified locally.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_nodes();
        if self.n0 > n {
            return Err(MeshError::InitialNodeCount { n0: self.n0, len: n });
        }
        for (counter, value, len) in [
            ("n_green", self.n_green, self.elements3.len()),
            ("n_green4 + n_blue", self.n_green4 + self.n_blue, self.elements4.len()),
        ] {
            if value > len {
                return Err(MeshError::BlockCounter { counter, value, len });
            }
        }
        for id in 0..self.num_elements() {
            let e = self.element(id);
            for &v in e {
                if v >= n {
                    return Err(MeshError::NodeOutOfRange {
                        element: id,
                        node: v,
                        len: n,
                    });
                }
            }
            for a in 0..e.len() {
                for b in a + 1..e.len() {
                    if e[a] == e[b] {
                        return Err(MeshError::RepeatedNode { element: id });
                    }
                }
            }
            let area = self.element_area(id);
            if !(area > 0.0) {
                return Err(MeshError::NotCounterclockwise { element: id, area });
            }
        }
        let tol = MIDPOINT_TOL * length_scale(&self.coordinates);
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        for e in self.elements() {
            for k in 0..e.len() {
                edges.insert(ekey(e[k], e[(k + 1) % e.len()]));
            }
        }
        for (entry, &[i, j, k]) in self.irregular.iter().enumerate() {
            for v in [i, j, k] {
                if v >= n {
                    return Err(MeshError::EntryOutOfRange {
                        table: "irregular",
                        entry,
                        node: v,
                        len: n,
                    });
                }
            }
            if !is_midpoint(self.coordinates[i], self.coordinates[j], self.coordinates[k], tol) {
                return Err(MeshError::InvalidIrregular {
                    entry,
                    reason: "hanging node is not the edge midpoint",
                });
            }
            if !edges.contains(&ekey(i, j)) {
                return Err(MeshError::InvalidIrregular {
                    entry,
                    reason: "edge is not an element edge",
                });
            }
        }
        if let Some(boundary) = &self.boundary {
            for (entry, &[a, b]) in boundary.iter().enumerate() {
                for v in [a, b] {
                    if v >= n {
                        return Err(MeshError::EntryOutOfRange {
                            table: "boundary",
                            entry,
                            node: v,
                            len: n,
                        });
                    }
                }
                if !edges.contains(&ekey(a, b)) {
                    return Err(MeshError::BoundaryNotEdge { a, b });
                }
            }
        }
        Ok(())
    }

    /// Validate a list of marked element ids against this mesh.
    pub(crate) fn check_marks(&self, marked: &[usize]) -> Result<Vec<bool>> {
        let len = self.num_elements();
        let mut flags = vec![false; len];
        for &m in marked {
            if m >= len {
                return Err(MeshError::MarkOutOfRange { index: m, len });
            }
            flags[m] = true;
        }
        Ok(flags)
    }

    /// Remove nodes that no element references (initial nodes are always
    /// kept), merging boundary segments across removed nodes and compacting
    /// all indices while preserving node order.
    pub(crate) fn compact_nodes(&mut self) -> Result<()> {
        let n = self.num_nodes();
        let mut used = vec![false; n];
        used[..self.n0].iter_mut().for_each(|u| *u = true);
        for e in self
            .elements3
            .iter()
            .map(|e| &e[..])
            .chain(self.elements4.iter().map(|e| &e[..]))
        {
            for &v in e {
                used[v] = true;
            }
        }
        for &[_, _, k] in &self.irregular {
            if !used[k] {
                return Err(MeshError::DanglingHangingNode { node: k });
            }
        }
        if used.iter().all(|&u| u) {
            return Ok(());
        }
        if let Some(boundary) = self.boundary.take() {
            self.boundary = Some(merge_boundary(boundary, &used));
        }
        let mut map = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if used[v] {
                map[v] = next;
                next += 1;
            }
        }
        let mut k = 0;
        self.coordinates.retain(|_| {
            k += 1;
            used[k - 1]
        });
        for e in &mut self.elements3 {
            e.iter_mut().for_each(|v| *v = map[*v]);
        }
        for e in &mut self.elements4 {
            e.iter_mut().for_each(|v| *v = map[*v]);
        }
        for e in &mut self.irregular {
            e.iter_mut().for_each(|v| *v = map[*v]);
        }
        if let Some(b) = &mut self.boundary {
            for s in b.iter_mut() {
                s.iter_mut().for_each(|v| *v = map[*v]);
            }
        }
        Ok(())
    }
}

/// Shoelace signed area of a polygon.
pub fn signed_area(p: &[Point]) -> f64 {
    let n = p.len();
    let mut s = 0.0;
    for k in 0..n {
        let a = p[k];
        let b = p[(k + 1) % n];
        s += a[0] * b[1] - a[1] * b[0];
    }
    0.5 * s
}

/// Merge consecutive boundary segments `(x, m), (m, y)` into `(x, y)` for
/// every node `m` that is about to be deleted.
fn merge_boundary(boundary: Vec<[usize; 2]>, keep: &[bool]) -> Vec<[usize; 2]> {
    let mut from: HashMap<usize, usize> = HashMap::with_capacity(boundary.len());
    for (i, s) in boundary.iter().enumerate() {
        from.insert(s[0], i);
    }
    let mut out = Vec::with_capacity(boundary.len());
    for s in &boundary {
        if !keep[s[0]] {
            continue;
        }
        let mut end = s[1];
        let mut guard = 0;
        while !keep[end] {
            match from.get(&end) {
                Some(&i) => end = boundary[i][1],
                None => break,
            }
            guard += 1;
            if guard > boundary.len() {
                break;
            }
        }
        out.push([s[0], end]);
    }
    out
}

/// Split every boundary segment whose undirected edge appears in `mids`.
pub(crate) fn split_boundary(
    boundary: &Option<Vec<[usize; 2]>>,
    mids: &HashMap<(usize, usize), usize>,
) -> Option<Vec<[usize; 2]>> {
    boundary.as_ref().map(|b| {
        let mut out = Vec::with_capacity(b.len());
        for &[a, c] in b {
            match mids.get(&ekey(a, c)) {
                Some(&m) => {
                    out.push([a, m]);
                    out.push([m, c]);
                }
                None => out.push([a, c]),
            }
        }
        out
    })
}

/// Recompute the irregular table from scratch: an element edge `(a, b)` that
/// no other element shares, whose midpoint `m` is recorded in `registry` and
/// used by some element, carries the hanging node `m`.
pub(crate) fn rebuild_irregular<'a, I>(
    elements: I,
    registry: &HashMap<(usize, usize), usize>,
    n_nodes: usize,
) -> Vec<[usize; 3]>
where
    I: Iterator<Item = &'a [usize]> + Clone,
{
    if registry.is_empty() {
        return Vec::new();
    }
    let mut count: HashMap<(usize, usize), u8> = HashMap::new();
    let mut used = vec![false; n_nodes];
    for e in elements.clone() {
        for k in 0..e.len() {
            used[e[k]] = true;
            let c = count.entry(ekey(e[k], e[(k + 1) % e.len()])).or_default();
            *c = c.saturating_add(1);
        }
    }
    let mut out = Vec::new();
    for e in elements {
        for k in 0..e.len() {
            let (a, b) = (e[k], e[(k + 1) % e.len()]);
            let key = ekey(a, b);
            if count[&key] != 1 {
                continue;
            }
            if let Some(&m) = registry.get(&key) {
                if used[m] {
                    out.push([a, b, m]);
                }
            }
        }
    }
    out
}
