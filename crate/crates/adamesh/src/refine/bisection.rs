// SPDX-License-Identifier: Apache-2.0

//! Newest-vertex bisection and red-green-blue refinement of conforming
//! triangulations.
//!
//! An element `(e1, e2, e3)` has reference edge `(e1, e2)`; `e3` is its
//! newest vertex. Marked elements get all three edges marked, and any element
//! with a marked edge also gets its reference edge marked, until nothing
//! changes. Children replace their parent in place, so siblings stay
//! adjacent in storage across levels.

use std::collections::HashMap;

use crate::error::{MeshError, Result};
use crate::mesh::{provide_geometric_data, split_boundary, Mesh, MeshKind};
use crate::util::{ekey, midpoint};

pub(crate) fn bisection_refine(mesh: &Mesh, marked: &[usize], red: bool) -> Result<Mesh> {
    match mesh.kind() {
        MeshKind::Empty => return Ok(mesh.clone()),
        MeshKind::Triangular => {}
        _ => {
            return Err(MeshError::WrongKind {
                expected: "a triangular mesh",
            })
        }
    }
    let flags = mesh.check_marks(marked)?;
    let geom = provide_geometric_data(mesh)?;
    let mut edge_marked = vec![false; geom.num_edges()];
    let mut stack = Vec::new();
    for (el, &f) in flags.iter().enumerate() {
        if f {
            for &edge in geom.element_edges(el) {
                if !edge_marked[edge] {
                    edge_marked[edge] = true;
                    stack.push(edge);
                }
            }
        }
    }
    while let Some(edge) = stack.pop() {
        for el in geom.edge2elements[edge].into_iter().flatten() {
            let reference = geom.element_edges(el)[0];
            if !edge_marked[reference] {
                edge_marked[reference] = true;
                stack.push(reference);
            }
        }
    }

    let mut coordinates = mesh.coordinates.clone();
    let mut edge_node = vec![usize::MAX; geom.num_edges()];
    let mut new_mid: HashMap<(usize, usize), usize> = HashMap::new();
    for (edge, &m) in edge_marked.iter().enumerate() {
        if m {
            let [a, b] = geom.edge2nodes[edge];
            edge_node[edge] = coordinates.len();
            new_mid.insert(ekey(a, b), coordinates.len());
            coordinates.push(midpoint(mesh.coordinates[a], mesh.coordinates[b]));
        }
    }

    let mut elements3 = Vec::with_capacity(mesh.elements3.len() + 3 * new_mid.len());
    for (el, &[e1, e2, e3]) in mesh.elements3.iter().enumerate() {
        let edges = geom.element_edges(el);
        let [r, s, t] = [0, 1, 2].map(|k| edge_marked[edges[k]]);
        let [n1, n2, n3] = [0, 1, 2].map(|k| edge_node[edges[k]]);
        match (r, s, t) {
            (false, _, _) => elements3.push([e1, e2, e3]),
            (true, false, false) => elements3.extend_from_slice(&[[e3, e1, n1], [e2, e3, n1]]),
            (true, true, false) => {
                elements3.extend_from_slice(&[[e3, e1, n1], [n1, e2, n2], [e3, n1, n2]]);
            }
            (true, false, true) => {
                elements3.extend_from_slice(&[[n1, e3, n3], [e1, n1, n3], [e2, e3, n1]]);
            }
            (true, true, true) if red => {
                elements3.extend_from_slice(&[[e1, n1, n3], [n1, e2, n2], [n3, n2, e3], [n2, n3, n1]]);
            }
            (true, true, true) => {
                elements3.extend_from_slice(&[[n1, e3, n3], [e1, n1, n3], [n1, e2, n2], [e3, n1, n2]]);
            }
        }
    }
    Ok(Mesh {
        coordinates,
        elements3,
        elements4: Vec::new(),
        irregular: Vec::new(),
        boundary: split_boundary(&mesh.boundary, &new_mid),
        n0: mesh.n0,
        n_green: 0,
        n_green4: 0,
        n_blue: 0,
    })
}
