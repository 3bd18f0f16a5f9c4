// SPDX-License-Identifier: Apache-2.0

//! Red refinement (quadrisection) of triangles or quadrilaterals with the
//! 1-irregular rule and an optional d-neighbor rule enforced by a worklist
//! closure.

use std::collections::HashMap;

use crate::error::{MeshError, Result};
use crate::mesh::{rebuild_irregular, split_boundary, Mesh, MeshKind};
use crate::util::{ekey, midpoint};

const NONE: usize = usize::MAX;

/// Red-refine every element flagged in `refine`, closing the marking so the
/// output stays 1-irregular and, if `d` is given, no unrefined element ends
/// up with `d` or more edges carrying hanging nodes.
///
/// New nodes are appended level by level, coarsest refined elements first;
/// within a level, edge midpoints (by element, then local edge) come before
/// quadrilateral centers. This keeps every element's corners older than any
/// node created on its edges or inside it, which coarsening relies on. Each
/// refined element is replaced in place by its four children.
pub(crate) fn red_refine(mesh: &Mesh, mut refine: Vec<bool>, d: Option<usize>) -> Result<Mesh> {
    let quads = match mesh.kind() {
        MeshKind::Empty => return Ok(mesh.clone()),
        MeshKind::Triangular => false,
        MeshKind::Quadrilateral => true,
        MeshKind::Mixed => {
            return Err(MeshError::WrongKind {
                expected: "a purely triangular or purely quadrilateral red mesh",
            })
        }
    };
    let ne = mesh.num_elements();
    debug_assert_eq!(refine.len(), ne);

    let mut edge_el: HashMap<(usize, usize), [usize; 2]> = HashMap::with_capacity(2 * ne);
    for (id, e) in mesh.elements().enumerate() {
        for k in 0..e.len() {
            let slot = edge_el.entry(ekey(e[k], e[(k + 1) % e.len()])).or_insert([NONE, NONE]);
            if slot[0] == NONE {
                slot[0] = id;
            } else if slot[1] == NONE {
                slot[1] = id;
            } else {
                return Err(MeshError::NonManifoldEdge {
                    a: e[k],
                    b: e[(k + 1) % e.len()],
                });
            }
        }
    }
    let mut coarse: HashMap<(usize, usize), usize> = HashMap::with_capacity(mesh.irregular.len());
    let mut half: HashMap<(usize, usize), (usize, usize)> = HashMap::with_capacity(2 * mesh.irregular.len());
    for &[i, j, k] in &mesh.irregular {
        coarse.insert(ekey(i, j), k);
        half.insert(ekey(i, k), ekey(i, j));
        half.insert(ekey(k, j), ekey(i, j));
    }
    let mut count = vec![0usize; ne];
    if d.is_some() && !coarse.is_empty() {
        for (id, e) in mesh.elements().enumerate() {
            count[id] = (0..e.len())
                .filter(|&k| coarse.contains_key(&ekey(e[k], e[(k + 1) % e.len()])))
                .count();
        }
    }

    let mut stack: Vec<usize> = (0..ne).filter(|&e| refine[e]).collect();
    stack.reverse();
    while let Some(el) = stack.pop() {
        let e = mesh.element(el);
        for k in 0..e.len() {
            let key = ekey(e[k], e[(k + 1) % e.len()]);
            if let Some(ck) = half.get(&key) {
                // Bisecting half of an irregular edge would put a second
                // hanging node on the coarse neighbor.
                let owner = edge_el[ck][0];
                if owner != NONE && !refine[owner] {
                    refine[owner] = true;
                    stack.push(owner);
                }
            } else if let Some(&[a, b]) = edge_el.get(&key) {
                if b == NONE {
                    continue;
                }
                let n = if a == el { b } else { a };
                if refine[n] {
                    continue;
                }
                count[n] += 1;
                if d.is_some_and(|d| count[n] >= d) {
                    refine[n] = true;
                    stack.push(n);
                }
            }
        }
    }

    // Midpoints of coarser elements are numbered first. A finer element can
    // force its coarse neighbor into the same call, and the coarse element's
    // new midpoints become corners of children whose edges may receive the
    // finer element's midpoints; those must be younger than the corners.
    let level = relative_levels(mesh, &edge_el, &coarse, &half);
    let mut order: Vec<usize> = (0..ne).filter(|&e| refine[e]).collect();
    order.sort_by_key(|&e| (level[e], e));

    let mut coordinates = mesh.coordinates.clone();
    let mut new_mid: HashMap<(usize, usize), usize> = HashMap::new();
    let mut center = vec![NONE; if quads { ne } else { 0 }];
    let mut i = 0;
    while i < order.len() {
        let lvl = level[order[i]];
        let j = i + order[i..].iter().take_while(|&&e| level[e] == lvl).count();
        for &id in &order[i..j] {
            let e = mesh.element(id);
            for k in 0..e.len() {
                let (a, b) = (e[k], e[(k + 1) % e.len()]);
                let key = ekey(a, b);
                if coarse.contains_key(&key) || new_mid.contains_key(&key) {
                    continue;
                }
                new_mid.insert(key, coordinates.len());
                coordinates.push(midpoint(mesh.coordinates[a], mesh.coordinates[b]));
            }
        }
        if quads {
            for &id in &order[i..j] {
                let p = mesh.elements4[id].map(|v| mesh.coordinates[v]);
                center[id] = coordinates.len();
                coordinates.push([
                    0.25 * (p[0][0] + p[1][0] + p[2][0] + p[3][0]),
                    0.25 * (p[0][1] + p[1][1] + p[2][1] + p[3][1]),
                ]);
            }
        }
        i = j;
    }
    let mid = |a: usize, b: usize| -> usize {
        let key = ekey(a, b);
        coarse
            .get(&key)
            .or_else(|| new_mid.get(&key))
            .copied()
            .expect("midpoint assigned")
    };

    let mut out = Mesh {
        coordinates: Vec::new(),
        elements3: Vec::new(),
        elements4: Vec::new(),
        irregular: Vec::new(),
        boundary: None,
        n0: mesh.n0,
        n_green: 0,
        n_green4: 0,
        n_blue: 0,
    };
    if quads {
        out.elements4.reserve(mesh.elements4.len() + 3 * order.len());
        for (id, &[v0, v1, v2, v3]) in mesh.elements4.iter().enumerate() {
            if !refine[id] {
                out.elements4.push([v0, v1, v2, v3]);
                continue;
            }
            let (m0, m1, m2, m3) = (mid(v0, v1), mid(v1, v2), mid(v2, v3), mid(v3, v0));
            let c = center[id];
            out.elements4
                .extend_from_slice(&[[v0, m0, c, m3], [v1, m1, c, m0], [v2, m2, c, m1], [v3, m3, c, m2]]);
        }
    } else {
        for (id, &[a, b, c]) in mesh.elements3.iter().enumerate() {
            if !refine[id] {
                out.elements3.push([a, b, c]);
                continue;
            }
            let (mab, mbc, mca) = (mid(a, b), mid(b, c), mid(c, a));
            out.elements3
                .extend_from_slice(&[[a, mab, mca], [mab, b, mbc], [mca, mbc, c], [mbc, mca, mab]]);
        }
    }
    out.coordinates = coordinates;

    let mut registry = coarse;
    registry.extend(new_mid.iter().map(|(&k, &v)| (k, v)));
    out.irregular = rebuild_irregular(out.elements(), &registry, out.coordinates.len());
    out.boundary = split_boundary(&mesh.boundary, &new_mid);
    Ok(out)
}

/// Refinement level of every element relative to its connected component:
/// elements sharing a full edge have the same level, elements on the fine
/// side of an irregular edge are one level finer than the edge's owner.
fn relative_levels(
    mesh: &Mesh,
    edge_el: &HashMap<(usize, usize), [usize; 2]>,
    coarse: &HashMap<(usize, usize), usize>,
    half: &HashMap<(usize, usize), (usize, usize)>,
) -> Vec<i64> {
    let ne = mesh.num_elements();
    let mut level = vec![i64::MIN; ne];
    let mut stack = Vec::new();
    for start in 0..ne {
        if level[start] != i64::MIN {
            continue;
        }
        level[start] = 0;
        stack.push(start);
        while let Some(el) = stack.pop() {
            let e = mesh.element(el);
            for k in 0..e.len() {
                let key = ekey(e[k], e[(k + 1) % e.len()]);
                let [a, b] = edge_el[&key];
                let mut visit = |other: usize, delta: i64| {
                    if other != NONE && level[other] == i64::MIN {
                        level[other] = level[el] + delta;
                        stack.push(other);
                    }
                };
                if b != NONE {
                    visit(if a == el { b } else { a }, 0);
                } else if let Some(ck) = half.get(&key) {
                    visit(edge_el[ck][0], -1);
                } else if let Some(&m) = coarse.get(&key) {
                    for h in [ekey(key.0, m), ekey(m, key.1)] {
                        if let Some(&[f, _]) = edge_el.get(&h) {
                            visit(f, 1);
                        }
                    }
                }
            }
        }
    }
    level
}
