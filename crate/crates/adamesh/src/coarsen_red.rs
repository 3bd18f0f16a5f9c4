// SPDX-License-Identifier: Apache-2.0

//! Red coarsening of 1-irregular triangle and quadrilateral meshes.
//!
//! The pipeline has four steps, each exposed for testing:
//!
//! 1. [`q_admissible`] / [`t_admissible`] find quartets of sibling elements
//!    using only node ages (index order).
//! 2. [`mark_filter`] keeps the quartets selected by the caller's marks.
//! 3. [`q_closure`] / [`t_closure`] block quartets whose removal would break
//!    1-irregularity or the d-neighbor rule.
//! 4. [`update_mesh`] merges the surviving quartets into their parents.
//!
//! [`coarsen_r`] composes the four steps.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{MeshError, Result};
use crate::mesh::{
    normalize_oldest_first, normalize_oldest_first_in_place, provide_geometric_data, rebuild_irregular, GeomData, Mesh,
    MeshKind,
};
use crate::util::ekey;

/// How a quartet is selected from element marks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MarkPolicy {
    /// Keep a quartet if any of its elements is marked.
    #[default]
    AnyOf,
    /// Keep a quartet only if all of its elements are marked.
    AllOf,
}

/// Four sibling elements that may be merged into their parent.
///
/// For quadrilaterals `elements` runs counterclockwise around the middle
/// node, starting with the child at the parent's oldest corner, and `middle`
/// is the middle node. For triangles the first three entries are the corner
/// children (counterclockwise) and the last is the middle element, whose id
/// is also stored in `middle`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quartet {
    pub elements: [usize; 4],
    pub middle: usize,
}

/// Admissible quartets, sorted by `middle`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdmissibleSet {
    pub quartets: Vec<Quartet>,
}

impl AdmissibleSet {
    pub fn len(&self) -> usize {
        self.quartets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quartets.is_empty()
    }

    /// Middle nodes (quads) or middle elements (triangles).
    pub fn middles(&self) -> Vec<usize> {
        self.quartets.iter().map(|q| q.middle).collect()
    }
}

/// Per quartet, the weight of each stencil node as `(node, weight)`.
///
/// For quadrilaterals the stencil is the five nodes created by the parent's
/// refinement, the middle node first with weight 0; for triangles it is the
/// three nodes of the middle element.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StencilWeights {
    pub weights: Vec<Vec<(usize, u8)>>,
}

impl StencilWeights {
    pub fn sums(&self) -> Vec<u32> {
        self.weights
            .iter()
            .map(|w| w.iter().map(|&(_, x)| u32::from(x)).sum())
            .collect()
    }
}

/// Quartets around every non-initial node that sits at position three of
/// exactly four quadrilaterals. Expects an oldest-first normalized mesh.
pub fn q_admissible(mesh: &Mesh) -> AdmissibleSet {
    let n = mesh.num_nodes();
    let n3 = mesh.elements3.len();
    let mut count = vec![0u8; n];
    for e in &mesh.elements4 {
        count[e[2]] = count[e[2]].saturating_add(1);
    }
    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for (q, e) in mesh.elements4.iter().enumerate() {
        if count[e[2]] == 4 && e[2] >= mesh.n0 {
            members.entry(e[2]).or_default().push(q);
        }
    }
    let mut quartets = Vec::with_capacity(members.len());
    'outer: for (&v, list) in &members {
        // Each child's position-two node is the position-four node of its
        // counterclockwise successor.
        let start = *list
            .iter()
            .min_by_key(|&&q| mesh.elements4[q][0])
            .expect("four members");
        let mut order = [start; 4];
        for k in 1..4 {
            let prev = mesh.elements4[order[k - 1]];
            match list.iter().find(|&&q| mesh.elements4[q][3] == prev[1]) {
                Some(&q) => order[k] = q,
                None => continue 'outer,
            }
        }
        if mesh.elements4[order[3]][1] != mesh.elements4[order[0]][3] {
            continue;
        }
        quartets.push(Quartet {
            elements: order.map(|q| n3 + q),
            middle: v,
        });
    }
    quartets.sort_by_key(|q| q.middle);
    AdmissibleSet { quartets }
}

/// Quartets around every middle element of a red triangulation: an element
/// whose edges, each labeled by the oldest node of its adjacent elements,
/// do not all carry the same label, that contains no initial node, and that
/// has three neighbors. Expects `geom` to describe `mesh`.
pub fn t_admissible(mesh: &Mesh, geom: &GeomData) -> AdmissibleSet {
    let old = |e: usize| *mesh.elements3[e].iter().min().expect("triangle");
    let value: Vec<usize> = geom
        .edge2elements
        .iter()
        .map(|adj| match *adj {
            [Some(a), Some(b)] => old(a).min(old(b)),
            [Some(a), None] | [None, Some(a)] => old(a),
            [None, None] => usize::MAX,
        })
        .collect();
    let mut quartets = Vec::new();
    for (el, e) in mesh.elements3.iter().enumerate() {
        let edges = geom.element_edges(el);
        let v = [value[edges[0]], value[edges[1]], value[edges[2]]];
        if v[0] == v[1] && v[1] == v[2] {
            continue;
        }
        if e.iter().any(|&x| x < mesh.n0) {
            continue;
        }
        let outer = [0, 1, 2].map(|k| geom.neighbor(el, k));
        if let [Some(a), Some(b), Some(c)] = outer {
            quartets.push(Quartet {
                elements: [a, b, c, el],
                middle: el,
            });
        }
    }
    AdmissibleSet { quartets }
}

/// Keep the quartets selected by `marked` under `policy`.
pub fn mark_filter(adm: &AdmissibleSet, marked: &[usize], policy: MarkPolicy) -> AdmissibleSet {
    let marked: HashSet<usize> = marked.iter().copied().collect();
    let quartets = adm
        .quartets
        .iter()
        .filter(|q| match policy {
            MarkPolicy::AnyOf => q.elements.iter().any(|e| marked.contains(e)),
            MarkPolicy::AllOf => q.elements.iter().all(|e| marked.contains(e)),
        })
        .cloned()
        .collect();
    AdmissibleSet { quartets }
}

/// Drop quartets with an element that has an irregular edge. Merging such
/// a quartet would leave two hanging nodes on the neighbor's edge (or a
/// hanging node on a half edge).
fn block_irregular(mesh: &Mesh, adm: &AdmissibleSet) -> Vec<Quartet> {
    if mesh.irregular.is_empty() {
        return adm.quartets.clone();
    }
    let coarse: HashSet<(usize, usize)> = mesh.irregular.iter().map(|&[i, j, _]| ekey(i, j)).collect();
    adm.quartets
        .iter()
        .filter(|q| {
            !q.elements.iter().any(|&id| {
                let e = mesh.element(id);
                (0..e.len()).any(|k| coarse.contains(&ekey(e[k], e[(k + 1) % e.len()])))
            })
        })
        .cloned()
        .collect()
}

/// Hanging nodes and endpoints of boundary edges. Boundary edges are edges
/// that occur once after also counting the edges of the virtual triangles
/// recorded in the irregular table.
fn heavy_nodes(mesh: &Mesh) -> Vec<bool> {
    let mut heavy = vec![false; mesh.num_nodes()];
    let mut count: HashMap<(usize, usize), u8> = HashMap::with_capacity(2 * mesh.num_elements());
    let mut bump = |a: usize, b: usize| {
        let c = count.entry(ekey(a, b)).or_default();
        *c = c.saturating_add(1);
    };
    for e in mesh.elements() {
        for k in 0..e.len() {
            bump(e[k], e[(k + 1) % e.len()]);
        }
    }
    for &[i, j, k] in &mesh.irregular {
        bump(i, j);
        bump(j, k);
        bump(k, i);
        heavy[k] = true;
    }
    for (&(a, b), &c) in &count {
        if c == 1 {
            heavy[a] = true;
            heavy[b] = true;
        }
    }
    heavy
}

/// The weighted stencil nodes of a quartet (the quad middle node, which
/// always weighs 0, is omitted).
fn stencil(mesh: &Mesh, q: &Quartet, triangles: bool) -> Vec<usize> {
    if triangles {
        mesh.elements3[q.middle].to_vec()
    } else {
        q.elements.iter().map(|&id| mesh.element(id)[1]).collect()
    }
}

fn weights_of(stencils: &[Vec<usize>], heavy: &[bool], share: &HashMap<usize, u32>) -> Vec<Vec<u8>> {
    stencils
        .iter()
        .map(|s| {
            s.iter()
                .map(|v| {
                    if heavy[*v] || share.get(v).copied().unwrap_or(0) >= 2 {
                        2
                    } else {
                        1
                    }
                })
                .collect()
        })
        .collect()
}

fn share_counts(stencils: &[Vec<usize>]) -> HashMap<usize, u32> {
    let mut share: HashMap<usize, u32> = HashMap::new();
    for s in stencils {
        for &v in s {
            *share.entry(v).or_default() += 1;
        }
    }
    share
}

/// Stencil weights of every quartet in `adm`, computed once against the
/// whole set (no blocking applied).
pub fn q_stencil_weights(mesh: &Mesh, adm: &AdmissibleSet) -> StencilWeights {
    stencil_weights(mesh, adm, false)
}

/// Middle-element node weights of every quartet in `adm`.
pub fn t_stencil_weights(mesh: &Mesh, adm: &AdmissibleSet) -> StencilWeights {
    stencil_weights(mesh, adm, true)
}

fn stencil_weights(mesh: &Mesh, adm: &AdmissibleSet, triangles: bool) -> StencilWeights {
    let heavy = heavy_nodes(mesh);
    let stencils: Vec<Vec<usize>> = adm.quartets.iter().map(|q| stencil(mesh, q, triangles)).collect();
    let share = share_counts(&stencils);
    let w = weights_of(&stencils, &heavy, &share);
    let weights = adm
        .quartets
        .iter()
        .zip(stencils.iter().zip(w))
        .map(|(q, (s, w))| {
            let mut out: Vec<(usize, u8)> = if triangles { Vec::new() } else { vec![(q.middle, 0)] };
            out.extend(s.iter().copied().zip(w));
            out
        })
        .collect();
    StencilWeights { weights }
}

/// Remove quartets whose stencil weight sum is at most `threshold`, until
/// stable. Removing a quartet can only lower other quartets' weights, so a
/// worklist over quartets sharing a node whose share count dropped reaches
/// the same (largest) stable set as repeated full sweeps.
fn weight_filter(mesh: &Mesh, quartets: Vec<Quartet>, triangles: bool, threshold: u32) -> Vec<Quartet> {
    if quartets.is_empty() {
        return quartets;
    }
    let heavy = heavy_nodes(mesh);
    let stencils: Vec<Vec<usize>> = quartets.iter().map(|q| stencil(mesh, q, triangles)).collect();
    let mut share = share_counts(&stencils);
    let mut node2q: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, s) in stencils.iter().enumerate() {
        for &v in s {
            node2q.entry(v).or_default().push(i);
        }
    }
    let mut alive = vec![true; quartets.len()];
    let mut queued = vec![true; quartets.len()];
    let mut queue: VecDeque<usize> = (0..quartets.len()).collect();
    while let Some(i) = queue.pop_front() {
        queued[i] = false;
        if !alive[i] {
            continue;
        }
        let sum: u32 = stencils[i]
            .iter()
            .map(|v| if heavy[*v] || share[v] >= 2 { 2 } else { 1 })
            .sum();
        if sum > threshold {
            continue;
        }
        alive[i] = false;
        for &v in &stencils[i] {
            let s = share.get_mut(&v).expect("counted");
            *s -= 1;
            if *s == 1 && !heavy[v] {
                for &j in &node2q[&v] {
                    if alive[j] && !queued[j] {
                        queued[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    quartets
        .into_iter()
        .zip(alive)
        .filter_map(|(q, a)| a.then_some(q))
        .collect()
}

/// Block quartets that would break 1-irregularity (an element with an
/// irregular edge) or the 3-neighbor rule (stencil weight sum at most 5).
pub fn q_closure(mesh: &Mesh, adm: &AdmissibleSet) -> AdmissibleSet {
    let quartets = block_irregular(mesh, adm);
    AdmissibleSet {
        quartets: weight_filter(mesh, quartets, false, 5),
    }
}

/// Block quartets that would break 1-irregularity and, with
/// `two_neighbor_rule`, the 2-neighbor rule (middle-element weight sum at
/// most 4).
pub fn t_closure(mesh: &Mesh, adm: &AdmissibleSet, two_neighbor_rule: bool) -> AdmissibleSet {
    let quartets = block_irregular(mesh, adm);
    AdmissibleSet {
        quartets: if two_neighbor_rule {
            weight_filter(mesh, quartets, true, 4)
        } else {
            quartets
        },
    }
}

/// Parent element and parent-edge midpoints of a quartet.
fn parent_of(mesh: &Mesh, q: &Quartet) -> (Vec<usize>, Vec<((usize, usize), usize)>) {
    let k = if mesh.element(q.elements[0]).len() == 4 { 4 } else { 3 };
    if k == 4 {
        let c = q.elements.map(|id| mesh.element(id));
        let parent: Vec<usize> = c.iter().map(|e| e[0]).collect();
        let mids = (0..4)
            .map(|i| (ekey(parent[i], parent[(i + 1) % 4]), c[i][1]))
            .collect();
        (parent, mids)
    } else {
        let c = [0, 1, 2].map(|i| mesh.elements3[q.elements[i]]);
        let parent: Vec<usize> = c.iter().map(|e| *e.iter().min().expect("triangle")).collect();
        let mids = (0..3)
            .map(|i| {
                let next = c[(i + 1) % 3];
                let m = *c[i]
                    .iter()
                    .find(|v| next.contains(v))
                    .expect("corner children share a node");
                (ekey(parent[i], parent[(i + 1) % 3]), m)
            })
            .collect();
        (parent, mids)
    }
}

/// Merge every quartet of `adm` into its parent, placed where the quartet's
/// first element was. Recomputes the irregular table, deletes nodes no
/// element uses any more (keeping the order of the rest), updates the
/// boundary and normalizes oldest-first.
pub fn update_mesh(mesh: &Mesh, adm: &AdmissibleSet) -> Result<Mesh> {
    let ne = mesh.num_elements();
    let n3 = mesh.elements3.len();
    let mut role = vec![usize::MAX; ne];
    for (i, q) in adm.quartets.iter().enumerate() {
        for &id in &q.elements {
            if id >= ne || role[id] != usize::MAX {
                return Err(MeshError::MalformedBlock {
                    block: "quartet",
                    element: id,
                });
            }
            role[id] = i;
        }
    }
    let mut registry: HashMap<(usize, usize), usize> =
        mesh.irregular.iter().map(|&[i, j, k]| (ekey(i, j), k)).collect();
    let mut parents = Vec::with_capacity(adm.len());
    for q in &adm.quartets {
        let (p, mids) = parent_of(mesh, q);
        registry.extend(mids);
        parents.push(p);
    }
    let mut out = mesh.clone();
    out.elements3.clear();
    out.elements4.clear();
    for id in 0..ne {
        let r = role[id];
        let keep: Option<&[usize]> = if r == usize::MAX {
            Some(mesh.element(id))
        } else if adm.quartets[r].elements.iter().min() == Some(&id) {
            Some(&parents[r])
        } else {
            None
        };
        match keep {
            Some(e) if id < n3 => out.elements3.push([e[0], e[1], e[2]]),
            Some(e) => out.elements4.push([e[0], e[1], e[2], e[3]]),
            None => {}
        }
    }
    out.irregular = rebuild_irregular(out.elements(), &registry, out.num_nodes());
    out.compact_nodes()?;
    normalize_oldest_first_in_place(&mut out);
    Ok(out)
}

/// One red coarsening step on a 1-irregular red mesh (all triangles or all
/// quadrilaterals). Quadrilateral meshes always obey the 3-neighbor rule;
/// `two_neighbor_rule` applies to triangles.
pub fn coarsen_r(mesh: &Mesh, marked: &[usize], policy: MarkPolicy, two_neighbor_rule: bool) -> Result<Mesh> {
    let triangles = match mesh.kind() {
        MeshKind::Empty => return Ok(mesh.clone()),
        MeshKind::Triangular => true,
        MeshKind::Quadrilateral => false,
        MeshKind::Mixed => {
            return Err(MeshError::WrongKind {
                expected: "a purely triangular or purely quadrilateral red mesh",
            })
        }
    };
    mesh.check_marks(marked)?;
    let mesh = normalize_oldest_first(mesh);
    let adm = if triangles {
        let geom = provide_geometric_data(&mesh)?;
        t_admissible(&mesh, &geom)
    } else {
        q_admissible(&mesh)
    };
    let adm = mark_filter(&adm, marked, policy);
    let adm = if triangles {
        t_closure(&mesh, &adm, two_neighbor_rule)
    } else {
        q_closure(&mesh, &adm)
    };
    update_mesh(&mesh, &adm)
}
