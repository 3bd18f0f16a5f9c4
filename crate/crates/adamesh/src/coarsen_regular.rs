// SPDX-License-Identifier: Apache-2.0

//! Conforming red-green and red-blue strategies on top of red coarsening.
//!
//! A conforming mesh is turned into a 1-irregular red mesh by merging every
//! green or blue group back into its parent ("recoarsen"), red-coarsened
//! with [`coarsen_r`], and closed again with green or blue patterns
//! ("regularize").
//!
//! # Block layout
//!
//! Red elements come first in each element list; closing patterns follow as
//! trailing blocks:
//!
//! * T-RG: the last `n_green` triangles are pairs `(c, a, m)`, `(b, c, m)` for
//!   a parent `(a, b, c)` with hanging node `m` on edge `(a, b)`.
//! * Q-RG: all triangles are green. First come groups of three,
//!   `(m, q2, q3)`, `(m, q3, q4)`, `(m, q4, q1)` for a parent `(q1..q4)` with
//!   `m` on `(q1, q2)`; recognized by the first node of the first triangle
//!   being the newest of that triangle. Then groups of four,
//!   `(q2, m2, m1)`, `(m1, m2, q4)`, `(m1, q4, q1)`, `(m2, q3, q4)` with `m1`
//!   on `(q1, q2)` and `m2` on `(q2, q3)`. The last `n_green4`
//!   quadrilaterals are pairs `(q1, m1, m3, q4)`, `(m1, q2, q3, m3)` closing
//!   two opposite hanging nodes (stored oldest-first).
//! * Q-RB: the last `n_blue` quadrilaterals are triples
//!   `(v1, m12, c, v4)`, `(m12, v2, m23, c)`, `(c, m23, v3, v4)` (stored
//!   oldest-first), where `c` is the parent's center.
//!
//! Recoarsening does not rely on positions inside a group: the parent is
//! recovered as the oldest corners of the group's outline.

use std::collections::{HashMap, HashSet};

use crate::coarsen_red::{coarsen_r, MarkPolicy};
use crate::error::{MeshError, Result};
use crate::mesh::{
    normalize_oldest_first_in_place, rebuild_irregular, rotate_oldest_first, split_boundary, Mesh, MeshKind,
};
use crate::refine::red_refine;
use crate::util::{ekey, midpoint};

/// A group of elements (unified ids) forming one parent with `corners`
/// corners.
struct Group {
    members: Vec<usize>,
    corners: usize,
    /// Number of nodes strictly inside the parent.
    interior: usize,
    block: &'static str,
}

type ParentEdges = Vec<((usize, usize), usize)>;

/// Recover a group's parent from the outline of its elements.
fn group_parent(mesh: &Mesh, g: &Group) -> Result<(Vec<usize>, ParentEdges)> {
    let bad = || MeshError::MalformedBlock {
        block: g.block,
        element: g.members[0],
    };
    let mut directed: HashSet<(usize, usize)> = HashSet::new();
    let mut nodes: HashSet<usize> = HashSet::new();
    for &id in &g.members {
        let e = mesh.element(id);
        for k in 0..e.len() {
            directed.insert((e[k], e[(k + 1) % e.len()]));
            nodes.insert(e[k]);
        }
    }
    let mut next: HashMap<usize, usize> = HashMap::new();
    for &(a, b) in &directed {
        if !directed.contains(&(b, a)) && next.insert(a, b).is_some() {
            return Err(bad());
        }
    }
    let start = *next.keys().min().ok_or_else(bad)?;
    let mut cycle = vec![start];
    let mut v = next[&start];
    while v != start {
        if cycle.len() > next.len() {
            return Err(bad());
        }
        cycle.push(v);
        v = *next.get(&v).ok_or_else(bad)?;
    }
    if cycle.len() != next.len() || nodes.len() != cycle.len() + g.interior {
        return Err(bad());
    }
    let mut sorted = cycle.clone();
    sorted.sort_unstable();
    if sorted.len() < g.corners {
        return Err(bad());
    }
    let cutoff = sorted[g.corners - 1];
    let pos: Vec<usize> = (0..cycle.len()).filter(|&i| cycle[i] <= cutoff).collect();
    let parent: Vec<usize> = pos.iter().map(|&i| cycle[i]).collect();
    let mut mids = Vec::new();
    for c in 0..g.corners {
        let (i, j) = (
            pos[c],
            if c + 1 < g.corners {
                pos[c + 1]
            } else {
                pos[0] + cycle.len()
            },
        );
        match j - i {
            1 => {}
            2 => mids.push((
                ekey(parent[c], parent[(c + 1) % g.corners]),
                cycle[(i + 1) % cycle.len()],
            )),
            _ => return Err(bad()),
        }
    }
    Ok((parent, mids))
}

/// Replace every group by its parent. Red triangles `elements3[..red3]` and
/// red quadrilaterals `elements4[..red4]` are kept in order; triangle
/// parents follow the red triangles, quadrilateral parents the red
/// quadrilaterals. Marks on group members move to the parent.
fn recoarsen_groups(
    mesh: &Mesh,
    marked: &[usize],
    red3: usize,
    red4: usize,
    groups: &[Group],
) -> Result<(Mesh, Vec<usize>)> {
    let flags = mesh.check_marks(marked)?;
    let n3 = mesh.elements3.len();
    let mut registry: HashMap<(usize, usize), usize> =
        mesh.irregular.iter().map(|&[i, j, k]| (ekey(i, j), k)).collect();
    let mut tri_parents = Vec::new();
    let mut quad_parents = Vec::new();
    let mut group_slot = Vec::with_capacity(groups.len());
    for g in groups {
        let (parent, mids) = group_parent(mesh, g)?;
        registry.extend(mids);
        if g.corners == 3 {
            group_slot.push((3, tri_parents.len()));
            tri_parents.push([parent[0], parent[1], parent[2]]);
        } else {
            group_slot.push((4, quad_parents.len()));
            quad_parents.push(rotate_oldest_first([parent[0], parent[1], parent[2], parent[3]]));
        }
    }
    let new_n3 = red3 + tri_parents.len();
    let id_of = |slot: (usize, usize)| match slot {
        (3, j) => red3 + j,
        (_, j) => new_n3 + red4 + j,
    };
    let mut new_marks: Vec<usize> = Vec::new();
    for (id, &f) in flags.iter().enumerate() {
        if !f {
            continue;
        }
        if id < red3 {
            new_marks.push(id);
        } else if id >= n3 && id - n3 < red4 {
            new_marks.push(new_n3 + (id - n3));
        }
    }
    for (g, &slot) in groups.iter().zip(&group_slot) {
        if g.members.iter().any(|&m| flags[m]) {
            new_marks.push(id_of(slot));
        }
    }
    new_marks.sort_unstable();
    new_marks.dedup();

    let mut out = Mesh {
        coordinates: mesh.coordinates.clone(),
        elements3: mesh.elements3[..red3].to_vec(),
        elements4: mesh.elements4[..red4].to_vec(),
        irregular: Vec::new(),
        boundary: mesh.boundary.clone(),
        n0: mesh.n0,
        n_green: 0,
        n_green4: 0,
        n_blue: 0,
    };
    out.elements3.extend(tri_parents);
    out.elements4.extend(quad_parents);
    out.irregular = rebuild_irregular(out.elements(), &registry, out.num_nodes());
    out.compact_nodes()?;
    Ok((out, new_marks))
}

fn trailing_block(len: usize, count: usize, counter: &'static str) -> Result<usize> {
    if count > len {
        return Err(MeshError::BlockCounter {
            counter,
            value: count,
            len,
        });
    }
    Ok(len - count)
}

/// Merge every green pair of a T-RG mesh into its parent; the pair's shared
/// newest node becomes a hanging node. Returns the red mesh and the marks
/// mapped onto it (a parent is marked if one of its green children was).
pub fn recoarsen_green_tri(mesh: &Mesh, marked: &[usize]) -> Result<(Mesh, Vec<usize>)> {
    if !matches!(mesh.kind(), MeshKind::Triangular | MeshKind::Empty) {
        return Err(MeshError::WrongKind {
            expected: "a triangular mesh",
        });
    }
    let n3 = mesh.elements3.len();
    let red3 = trailing_block(n3, mesh.n_green, "n_green")?;
    if mesh.n_green % 2 != 0 {
        return Err(MeshError::MalformedBlock {
            block: "green pair",
            element: red3,
        });
    }
    let mut groups = Vec::with_capacity(mesh.n_green / 2);
    for i in (red3..n3).step_by(2) {
        let (p0, p1) = (mesh.elements3[i], mesh.elements3[i + 1]);
        if p0[0] != p1[1] || p0[2] != p1[2] {
            return Err(MeshError::MalformedBlock {
                block: "green pair",
                element: i,
            });
        }
        groups.push(Group {
            members: vec![i, i + 1],
            corners: 3,
            interior: 0,
            block: "green pair",
        });
    }
    recoarsen_groups(mesh, marked, red3, 0, &groups)
}

fn is_green3(t: &[[usize; 3]]) -> bool {
    let m = t[0][0];
    t[1][0] == m && t[2][0] == m && m > t[0][1] && m > t[0][2] && t[0][2] == t[1][1] && t[1][2] == t[2][1]
}

fn is_green4(t: &[[usize; 3]]) -> bool {
    let [q2, m2, m1] = t[0];
    let q4 = t[1][2];
    t[1][0] == m1 && t[1][1] == m2 && t[2][0] == m1 && t[2][1] == q4 && t[3][0] == m2 && t[3][2] == q4 && q2 != q4
}

/// Merge the green triangle groups and green quadrilateral pairs of a Q-RG
/// mesh into their parent quadrilaterals.
pub fn recoarsen_green_quad(mesh: &Mesh, marked: &[usize]) -> Result<(Mesh, Vec<usize>)> {
    let n3 = mesh.elements3.len();
    let n4 = mesh.elements4.len();
    let red3 = trailing_block(n3, mesh.n_green, "n_green")?;
    let red4 = trailing_block(n4, mesh.n_green4, "n_green4")?;
    if red3 != 0 {
        return Err(MeshError::WrongKind {
            expected: "a quadrilateral mesh whose triangles are all green",
        });
    }
    let tris = &mesh.elements3;
    let mut groups = Vec::new();
    let mut i = 0;
    while i + 3 <= n3 && is_green3(&tris[i..i + 3]) {
        groups.push(Group {
            members: vec![i, i + 1, i + 2],
            corners: 4,
            interior: 0,
            block: "green triangle group",
        });
        i += 3;
    }
    while i + 4 <= n3 && is_green4(&tris[i..i + 4]) {
        groups.push(Group {
            members: vec![i, i + 1, i + 2, i + 3],
            corners: 4,
            interior: 0,
            block: "green triangle group",
        });
        i += 4;
    }
    if i != n3 {
        return Err(MeshError::MalformedBlock {
            block: "green triangle group",
            element: i,
        });
    }
    if mesh.n_green4 % 2 != 0 {
        return Err(MeshError::MalformedBlock {
            block: "green quadrilateral pair",
            element: n3 + red4,
        });
    }
    for q in (red4..n4).step_by(2) {
        groups.push(Group {
            members: vec![n3 + q, n3 + q + 1],
            corners: 4,
            interior: 0,
            block: "green quadrilateral pair",
        });
    }
    recoarsen_groups(mesh, marked, 0, red4, &groups)
}

/// Merge every blue triple of a Q-RB mesh into its parent. The center is
/// deleted; an edge midpoint becomes a hanging node unless the neighbor
/// across that edge was merged too (or the edge is on the boundary), in
/// which case it is deleted.
pub fn recoarsen_blue(mesh: &Mesh, marked: &[usize]) -> Result<(Mesh, Vec<usize>)> {
    if !matches!(mesh.kind(), MeshKind::Quadrilateral | MeshKind::Empty) {
        return Err(MeshError::WrongKind {
            expected: "a quadrilateral mesh",
        });
    }
    let n4 = mesh.elements4.len();
    let red4 = trailing_block(n4, mesh.n_blue, "n_blue")?;
    if mesh.n_blue % 3 != 0 {
        return Err(MeshError::MalformedBlock {
            block: "blue triple",
            element: red4,
        });
    }
    let groups: Vec<Group> = (red4..n4)
        .step_by(3)
        .map(|q| Group {
            members: vec![q, q + 1, q + 2],
            corners: 4,
            interior: 1,
            block: "blue triple",
        })
        .collect();
    recoarsen_groups(mesh, marked, 0, red4, &groups)
}

/// Per element, bitmask of edges carrying a hanging node, plus the hanging
/// node of every irregular edge.
fn hanging_masks(mesh: &Mesh) -> (Vec<u8>, HashMap<(usize, usize), usize>) {
    let coarse: HashMap<(usize, usize), usize> = mesh.irregular.iter().map(|&[i, j, k]| (ekey(i, j), k)).collect();
    let masks = mesh
        .elements()
        .map(|e| {
            (0..e.len()).fold(0u8, |m, k| {
                if coarse.contains_key(&ekey(e[k], e[(k + 1) % e.len()])) {
                    m | (1 << k)
                } else {
                    m
                }
            })
        })
        .collect();
    (masks, coarse)
}

/// Close every hanging node of a 1-irregular red triangulation that obeys
/// the 2-neighbor rule with a green pair.
pub fn regularize_green_tri(mesh: &Mesh) -> Result<Mesh> {
    if !matches!(mesh.kind(), MeshKind::Triangular | MeshKind::Empty) || mesh.n_green != 0 {
        return Err(MeshError::WrongKind {
            expected: "a red triangular mesh",
        });
    }
    let (masks, coarse) = hanging_masks(mesh);
    let mut red = Vec::with_capacity(mesh.elements3.len());
    let mut green = Vec::new();
    for (id, (&e, &m)) in mesh.elements3.iter().zip(&masks).enumerate() {
        if m == 0 {
            red.push(e);
            continue;
        }
        if m.count_ones() != 1 {
            return Err(MeshError::UnmatchedPattern { element: id });
        }
        let k = m.trailing_zeros() as usize;
        let (a, b, c) = (e[k], e[(k + 1) % 3], e[(k + 2) % 3]);
        let h = coarse[&ekey(a, b)];
        green.push([c, a, h]);
        green.push([b, c, h]);
    }
    let n_green = green.len();
    red.extend(green);
    Ok(Mesh {
        coordinates: mesh.coordinates.clone(),
        elements3: red,
        elements4: Vec::new(),
        irregular: Vec::new(),
        boundary: mesh.boundary.clone(),
        n0: mesh.n0,
        n_green,
        n_green4: 0,
        n_blue: 0,
    })
}

/// Close every hanging node of a 1-irregular red quad mesh that obeys the
/// 3-neighbor rule with green triangles or green quadrilaterals.
pub fn regularize_green_quad(mesh: &Mesh) -> Result<Mesh> {
    if !matches!(mesh.kind(), MeshKind::Quadrilateral | MeshKind::Empty) || mesh.n_green4 + mesh.n_blue != 0 {
        return Err(MeshError::WrongKind {
            expected: "a red quadrilateral mesh",
        });
    }
    let (masks, coarse) = hanging_masks(mesh);
    let mut red = Vec::with_capacity(mesh.elements4.len());
    let mut g3 = Vec::new();
    let mut g4 = Vec::new();
    let mut gq = Vec::new();
    for (id, (&e, &m)) in mesh.elements4.iter().zip(&masks).enumerate() {
        let rot = |k: usize| [e[k % 4], e[(k + 1) % 4], e[(k + 2) % 4], e[(k + 3) % 4]];
        let mid = |a: usize, b: usize| coarse[&ekey(a, b)];
        match m.count_ones() {
            0 => red.push(e),
            1 => {
                let [q1, q2, q3, q4] = rot(m.trailing_zeros() as usize);
                let h = mid(q1, q2);
                g3.extend_from_slice(&[[h, q2, q3], [h, q3, q4], [h, q4, q1]]);
            }
            2 if m == 0b0101 || m == 0b1010 => {
                let [q1, q2, q3, q4] = rot(m.trailing_zeros() as usize);
                let (m1, m3) = (mid(q1, q2), mid(q3, q4));
                gq.push(rotate_oldest_first([q1, m1, m3, q4]));
                gq.push(rotate_oldest_first([m1, q2, q3, m3]));
            }
            2 => {
                let k = (0..4)
                    .find(|&k| m & (1 << k) != 0 && m & (1 << ((k + 1) % 4)) != 0)
                    .expect("adjacent");
                let [q1, q2, q3, q4] = rot(k);
                let (m1, m2) = (mid(q1, q2), mid(q2, q3));
                g4.extend_from_slice(&[[q2, m2, m1], [m1, m2, q4], [m1, q4, q1], [m2, q3, q4]]);
            }
            _ => return Err(MeshError::UnmatchedPattern { element: id }),
        }
    }
    let n_green4 = gq.len();
    g3.extend(g4);
    red.extend(gq);
    Ok(Mesh {
        coordinates: mesh.coordinates.clone(),
        n_green: g3.len(),
        elements3: g3,
        elements4: red,
        irregular: Vec::new(),
        boundary: mesh.boundary.clone(),
        n0: mesh.n0,
        n_green4,
        n_blue: 0,
    })
}

/// Outcome of one attempt to place blue patterns.
enum BluePlan {
    /// Per-element edge masks (each 0 or two adjacent edges) and the edges
    /// that receive a new midpoint.
    Done(Vec<u8>),
    /// Elements that must be red-refined before retrying.
    Refine(Vec<usize>),
}

fn adjacent_pair(m: u8) -> bool {
    m.count_ones() == 2 && m != 0b0101 && m != 0b1010
}

/// Greedy propagation of blue marks. An element with one marked edge needs
/// one more marked edge next to it; candidates are ranked boundary edge,
/// then an edge whose neighbor is completed by it, then an edge whose
/// neighbor is still unmarked, ties broken by the smaller node pair. Halves
/// of irregular edges cannot be split.
fn plan_blue(mesh: &Mesh) -> BluePlan {
    let (mut masks, coarse) = hanging_masks(mesh);
    let mut half: HashSet<(usize, usize)> = HashSet::with_capacity(2 * coarse.len());
    for &[i, j, k] in &mesh.irregular {
        half.insert(ekey(i, k));
        half.insert(ekey(k, j));
    }
    let mut edge_el: HashMap<(usize, usize), [(usize, u8); 2]> = HashMap::with_capacity(2 * mesh.elements4.len());
    const NONE: (usize, u8) = (usize::MAX, 0);
    for (id, e) in mesh.elements4.iter().enumerate() {
        for k in 0..4 {
            let slot = edge_el.entry(ekey(e[k], e[(k + 1) % 4])).or_insert([NONE, NONE]);
            let i = usize::from(slot[0] != NONE);
            slot[i] = (id, k as u8);
        }
    }
    let mut queue: std::collections::VecDeque<usize> =
        (0..masks.len()).filter(|&e| masks[e].count_ones() == 1).collect();
    while let Some(el) = queue.pop_front() {
        if masks[el].count_ones() != 1 {
            continue;
        }
        let e = mesh.elements4[el];
        let k0 = masks[el].trailing_zeros() as usize;
        let mut best: Option<((u8, (usize, usize)), usize, Option<(usize, u8)>)> = None;
        for c in [(k0 + 1) % 4, (k0 + 3) % 4] {
            let key = ekey(e[c], e[(c + 1) % 4]);
            if half.contains(&key) || coarse.contains_key(&key) {
                continue;
            }
            let slots = edge_el[&key];
            let other = slots.iter().copied().find(|&(id, _)| id != el && id != usize::MAX);
            let class = match other {
                None => 0,
                Some((n, kn)) => {
                    let nm = masks[n] | (1 << kn);
                    if adjacent_pair(nm) {
                        1
                    } else if nm.count_ones() == 1 {
                        2
                    } else {
                        continue;
                    }
                }
            };
            let rank = (class, key);
            if best.as_ref().map_or(true, |b| rank < b.0) {
                best = Some((rank, c, other));
            }
        }
        if let Some((_, c, other)) = best {
            masks[el] |= 1 << c;
            if let Some((n, kn)) = other {
                masks[n] |= 1 << kn;
                if masks[n].count_ones() == 1 {
                    queue.push_back(n);
                }
            }
        }
    }
    let bad: Vec<usize> = (0..masks.len())
        .filter(|&e| masks[e] != 0 && !adjacent_pair(masks[e]))
        .collect();
    if bad.is_empty() {
        BluePlan::Done(masks)
    } else {
        BluePlan::Refine(bad)
    }
}

/// Upper bound on closure rounds; each round refines at least one element
/// of a finite-level mesh, so this is never reached on valid input.
const MAX_BLUE_ROUNDS: usize = 1 << 16;

/// Close every hanging node of a 1-irregular red quad mesh that obeys the
/// 3-neighbor rule with blue patterns. Elements no blue pattern can serve
/// (two opposite hanging nodes, or a hanging node whose neighbors cannot
/// take a matching mark) are red-refined first, as often as needed.
pub fn regularize_blue(mesh: &Mesh) -> Result<Mesh> {
    if !matches!(mesh.kind(), MeshKind::Quadrilateral | MeshKind::Empty) || mesh.n_green4 + mesh.n_blue != 0 {
        return Err(MeshError::WrongKind {
            expected: "a red quadrilateral mesh",
        });
    }
    let mut red = mesh.clone();
    for _ in 0..MAX_BLUE_ROUNDS {
        match plan_blue(&red) {
            BluePlan::Done(masks) => return Ok(build_blue(&red, &masks)),
            BluePlan::Refine(bad) => {
                let mut flags = vec![false; red.num_elements()];
                for b in bad {
                    flags[b] = true;
                }
                red = red_refine(&red, flags, Some(3))?;
                normalize_oldest_first_in_place(&mut red);
            }
        }
    }
    Err(MeshError::UnmatchedPattern { element: 0 })
}

fn build_blue(mesh: &Mesh, masks: &[u8]) -> Mesh {
    let coarse: HashMap<(usize, usize), usize> = mesh.irregular.iter().map(|&[i, j, k]| (ekey(i, j), k)).collect();
    let mut coordinates = mesh.coordinates.clone();
    let mut new_mid: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, &m) in mesh.elements4.iter().zip(masks) {
        for k in 0..4 {
            let key = ekey(e[k], e[(k + 1) % 4]);
            if m & (1 << k) != 0 && !coarse.contains_key(&key) && !new_mid.contains_key(&key) {
                new_mid.insert(key, coordinates.len());
                coordinates.push(midpoint(mesh.coordinates[e[k]], mesh.coordinates[e[(k + 1) % 4]]));
            }
        }
    }
    let mut red = Vec::with_capacity(mesh.elements4.len());
    let mut blue = Vec::new();
    for (&e, &m) in mesh.elements4.iter().zip(masks) {
        if m == 0 {
            red.push(e);
            continue;
        }
        let k = (0..4)
            .find(|&k| m & (1 << k) != 0 && m & (1 << ((k + 1) % 4)) != 0)
            .expect("adjacent");
        let [v1, v2, v3, v4] = [0, 1, 2, 3].map(|i| e[(k + i) % 4]);
        let mid = |a: usize, b: usize| {
            let key = ekey(a, b);
            coarse
                .get(&key)
                .or_else(|| new_mid.get(&key))
                .copied()
                .expect("marked edge has a midpoint")
        };
        let (m12, m23) = (mid(v1, v2), mid(v2, v3));
        let c = coordinates.len();
        let p = [v1, v2, v3, v4].map(|v| mesh.coordinates[v]);
        coordinates.push([
            0.25 * (p[0][0] + p[1][0] + p[2][0] + p[3][0]),
            0.25 * (p[0][1] + p[1][1] + p[2][1] + p[3][1]),
        ]);
        blue.push(rotate_oldest_first([v1, m12, c, v4]));
        blue.push(rotate_oldest_first([m12, v2, m23, c]));
        blue.push(rotate_oldest_first([c, m23, v3, v4]));
    }
    let n_blue = blue.len();
    red.extend(blue);
    Mesh {
        coordinates,
        elements3: Vec::new(),
        elements4: red,
        irregular: Vec::new(),
        boundary: split_boundary(&mesh.boundary, &new_mid),
        n0: mesh.n0,
        n_green: 0,
        n_green4: 0,
        n_blue,
    }
}

/// One T-RG coarsening step (red coarsening with the 2-neighbor rule).
pub fn coarsen_rg_tri(mesh: &Mesh, marked: &[usize], policy: MarkPolicy) -> Result<Mesh> {
    let (red, marks) = recoarsen_green_tri(mesh, marked)?;
    let coarse = coarsen_r(&red, &marks, policy, true)?;
    regularize_green_tri(&coarse)
}

/// One Q-RG coarsening step.
pub fn coarsen_rg_quad(mesh: &Mesh, marked: &[usize], policy: MarkPolicy) -> Result<Mesh> {
    let (red, marks) = recoarsen_green_quad(mesh, marked)?;
    let coarse = coarsen_r(&red, &marks, policy, false)?;
    regularize_green_quad(&coarse)
}

/// One Q-RB coarsening step.
pub fn coarsen_rb(mesh: &Mesh, marked: &[usize], policy: MarkPolicy) -> Result<Mesh> {
    let (red, marks) = recoarsen_blue(mesh, marked)?;
    let coarse = coarsen_r(&red, &marks, policy, false)?;
    regularize_blue(&coarse)
}
