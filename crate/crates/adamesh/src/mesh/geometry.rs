// SPDX-License-Identifier: Apache-2.0

//! Derived edge numbering and element/edge adjacency.

use std::collections::HashMap;

use super::Mesh;
use crate::error::{MeshError, Result};
use crate::util::ekey;

/// Edge numbering derived from the element arrays.
///
/// Local edge `k` of an element runs from its node `k` to node `k + 1`
/// (cyclically). Edges are numbered in order of first appearance when
/// traversing the elements (triangles first), so the numbering is a pure
/// function of the input.
#[derive(Debug, Clone, PartialEq)]
pub struct GeomData {
    /// Endpoints of each undirected edge, oriented as first encountered.
    pub edge2nodes: Vec<[usize; 2]>,
    /// For each edge, its adjacent elements; the second slot is `None` on
    /// the boundary and across irregular edges.
    pub edge2elements: Vec<[Option<usize>; 2]>,
    /// For each edge, the local position of the edge within the adjacent
    /// elements (parallel to `edge2elements`).
    pub edge2local: Vec<[u8; 2]>,
    /// Edge index of each stored boundary segment (empty without boundary).
    pub boundary2edges: Vec<usize>,
    element2edges: Vec<usize>,
    n3: usize,
}

impl GeomData {
    /// Edge indices of a unified element id, in traversal order.
    pub fn element_edges(&self, element: usize) -> &[usize] {
        if element < self.n3 {
            &self.element2edges[3 * element..3 * element + 3]
        } else {
            let o = 3 * self.n3 + 4 * (element - self.n3);
            &self.element2edges[o..o + 4]
        }
    }

    pub fn num_edges(&self) -> usize {
        self.edge2nodes.len()
    }

    pub fn num_elements(&self) -> usize {
        self.n3 + (self.element2edges.len() - 3 * self.n3) / 4
    }

    /// The element across local edge `k` of `element`, if the edge is shared.
    pub fn neighbor(&self, element: usize, k: usize) -> Option<usize> {
        let edge = self.element_edges(element)[k];
        match self.edge2elements[edge] {
            [Some(a), Some(b)] => Some(if a == element { b } else { a }),
            _ => None,
        }
    }

    /// Iterate element edge lists (unified ids).
    pub fn element2edges(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.num_elements()).map(move |e| self.element_edges(e))
    }
}

/// Number all edges of `mesh` and derive element/edge adjacency.
pub fn provide_geometric_data(mesh: &Mesh) -> Result<GeomData> {
    let ne = mesh.num_elements();
    let mut index: HashMap<(usize, usize), usize> = HashMap::with_capacity(2 * ne + 4);
    let mut edge2nodes = Vec::with_capacity(2 * ne + 4);
    let mut element2edges = Vec::with_capacity(3 * mesh.elements3.len() + 4 * mesh.elements4.len());
    for (id, e) in mesh.elements().enumerate() {
        for a in 0..e.len() {
            for b in a + 1..e.len() {
                if e[a] == e[b] {
                    return Err(MeshError::RepeatedNode { element: id });
                }
            }
        }
        for k in 0..e.len() {
            let (a, b) = (e[k], e[(k + 1) % e.len()]);
            let next = edge2nodes.len();
            let idx = *index.entry(ekey(a, b)).or_insert(next);
            if idx == next {
                edge2nodes.push([a, b]);
            }
            element2edges.push(idx);
        }
    }
    let n3 = mesh.elements3.len();
    let lists = split_lists(&element2edges, n3, ne);
    let (edge2elements, edge2local) =
        create_edge2elements_adv(lists.iter().copied(), edge2nodes.len()).map_err(|edge| {
            let [a, b] = edge2nodes[edge];
            MeshError::NonManifoldEdge { a, b }
        })?;
    let mut boundary2edges = Vec::new();
    if let Some(boundary) = &mesh.boundary {
        for &[a, b] in boundary {
            match index.get(&ekey(a, b)) {
                Some(&i) => boundary2edges.push(i),
                None => return Err(MeshError::BoundaryNotEdge { a, b }),
            }
        }
    }
    Ok(GeomData {
        edge2nodes,
        edge2elements,
        edge2local,
        boundary2edges,
        element2edges,
        n3,
    })
}

fn split_lists(flat: &[usize], n3: usize, ne: usize) -> Vec<&[usize]> {
    let mut out = Vec::with_capacity(ne);
    for e in 0..ne {
        let (o, len) = if e < n3 { (3 * e, 3) } else { (3 * n3 + 4 * (e - n3), 4) };
        out.push(&flat[o..o + len]);
    }
    out
}

/// Edge → adjacent elements. Fails with the offending edge index if an edge
/// is referenced by more than two elements.
pub fn create_edge2elements<'a, I>(element2edges: I, n_edges: usize) -> Result<Vec<[Option<usize>; 2]>, usize>
where
    I: IntoIterator<Item = &'a [usize]>,
{
    create_edge2elements_adv(element2edges, n_edges).map(|(e2e, _)| e2e)
}

/// As [`create_edge2elements`], additionally returning, for each adjacency,
/// which local edge of the element it is.
#[allow(clippy::type_complexity)]
pub fn create_edge2elements_adv<'a, I>(
    element2edges: I,
    n_edges: usize,
) -> Result<(Vec<[Option<usize>; 2]>, Vec<[u8; 2]>), usize>
where
    I: IntoIterator<Item = &'a [usize]>,
{
    let mut e2e = vec![[None, None]; n_edges];
    let mut local = vec![[0u8; 2]; n_edges];
    for (el, edges) in element2edges.into_iter().enumerate() {
        for (k, &edge) in edges.iter().enumerate() {
            let slot = &mut e2e[edge];
            if slot[0].is_none() {
                slot[0] = Some(el);
                local[edge][0] = k as u8;
            } else if slot[1].is_none() {
                slot[1] = Some(el);
                local[edge][1] = k as u8;
            } else {
                return Err(edge);
            }
        }
    }
    Ok((e2e, local))
}
