// SPDX-License-Identifier: Apache-2.0

//! Small hand-checkable meshes with known admissible/blocked
//! classifications. Each fixture is stored as a mesh file and also rebuilt
//! here from its description, so a drifting fixture is caught.

mod common;

use std::collections::BTreeSet;

use adamesh::coarsen_red::{q_admissible, q_closure, q_stencil_weights, t_admissible, t_closure, update_mesh};
use adamesh::io::load_mesh;
use adamesh::mesh::{check_1_irregular, normalize_oldest_first, provide_geometric_data};
use adamesh::refine::qrefine_r;
use adamesh::{Mesh, Point};
use common::{canonical, elements_containing, fixture, node_at};

fn load(name: &str) -> Mesh {
    load_mesh(fixture(name)).expect("fixture loads").mesh
}

fn refine_at(mesh: &Mesh, points: &[Point]) -> Mesh {
    let marks: Vec<usize> = points.iter().flat_map(|&p| elements_containing(mesh, p)).collect();
    qrefine_r(mesh, &marks).unwrap()
}

fn middle_points(mesh: &Mesh, middles: &[usize]) -> BTreeSet<(u64, u64)> {
    middles.iter().map(|&v| common::pkey(mesh.coordinates[v])).collect()
}

fn points(p: &[Point]) -> BTreeSet<(u64, u64)> {
    p.iter().map(|&q| common::pkey(q)).collect()
}

// ---------------------------------------------------------------------------
// Middle node: a quartet is admissible only if its middle node is at
// position three of exactly four elements.

#[test]
fn middlenode_fixtures_match_construction() {
    let left = Mesh::unit_square_quad();
    let left = qrefine_r(&left, &[0]).unwrap();
    assert_eq!(load("middlenode_left.mesh"), left);
    let right = refine_at(&left, &[[0.75, 0.75]]);
    assert_eq!(load("middlenode_right.mesh"), right);
}

#[test]
fn middlenode_left_is_one_admissible_quartet() {
    let m = load("middlenode_left.mesh");
    let adm = q_admissible(&m);
    // Node 9 (1-based), the center of the unit square.
    assert_eq!(adm.middles(), vec![8]);
    assert_eq!(m.coordinates[8], [0.5, 0.5]);
    // Counterclockwise, starting at the child of the oldest corner.
    let firsts: Vec<usize> = adm.quartets[0].elements.iter().map(|&e| m.element(e)[0]).collect();
    assert_eq!(firsts, vec![0, 1, 2, 3]);
    for &e in &adm.quartets[0].elements {
        assert_eq!(m.element(e)[2], 8);
    }
}

#[test]
fn middlenode_right_blocks_old_center_and_admits_new_one() {
    let m = load("middlenode_right.mesh");
    let adm = q_admissible(&m);
    // Node 14 (1-based) at (0.75, 0.75) is the only middle node; node 9 is
    // now at position three of only three elements.
    assert_eq!(adm.middles(), vec![13]);
    assert_eq!(m.coordinates[13], [0.75, 0.75]);
    let at_three = m.elements4.iter().filter(|e| e[2] == 8).count();
    assert_eq!(at_three, 3);
}

// ---------------------------------------------------------------------------
// Middle element: two middle elements have three direct neighbors, one does
// not.

#[test]
fn middleelement_classification() {
    let m = normalize_oldest_first(&load("middleelement.mesh"));
    let geom = provide_geometric_data(&m).unwrap();
    let adm = t_admissible(&m, &geom);
    // Elements (11,10,12) and (9,7,6) (1-based ids 7 and 11).
    assert_eq!(adm.middles(), vec![6, 10]);
    // Element (8,6,5) is a middle element with only two direct neighbors.
    assert!(!adm.middles().contains(&2));
    for q in &adm.quartets {
        assert_eq!(q.elements[3], q.middle);
        let outer: BTreeSet<usize> = q.elements[..3].iter().copied().collect();
        assert_eq!(outer.len(), 3);
    }
    let q_upper = adm.quartets.iter().find(|q| q.middle == 10).unwrap();
    let outer: BTreeSet<usize> = q_upper.elements[..3].iter().copied().collect();
    assert_eq!(outer, BTreeSet::from([7, 8, 9]));
    // Closure: (6,3,9) carries the hanging node 10 on its edge 6-3, so the
    // upper quartet is blocked; the lower one has no irregular edge.
    let closed = t_closure(&m, &adm, false);
    assert_eq!(closed.middles(), vec![6]);
}

#[test]
fn middleelement_shared_oldest_node_edge() {
    let m = load("middleelement.mesh");
    let geom = provide_geometric_data(&m).unwrap();
    let e = geom
        .edge2nodes
        .iter()
        .position(|&[a, b]| (a.min(b), a.max(b)) == (0, 5))
        .expect("edge 1-6 exists");
    let mut adj: Vec<usize> = geom.edge2elements[e].iter().flatten().copied().collect();
    adj.sort();
    // (1,5,6) and (1,6,7).
    assert_eq!(adj, vec![0, 7]);
}

// ---------------------------------------------------------------------------
// Stencil weights on a 3x2 grid refined once, with some corners refined
// twice.

fn numbering_base() -> Mesh {
    let g = Mesh::quad_grid(3, 2, 4.5, 3.0);
    qrefine_r(&g, &(0..6).collect::<Vec<_>>()).unwrap()
}

const SMALL: [Point; 4] = [[0.375, 2.625], [0.375, 0.375], [2.625, 0.375], [4.125, 0.375]];
const TOP_RIGHT_SMALL: Point = [4.125, 2.625];

#[test]
fn numbering_fixtures_match_construction() {
    let base = numbering_base();
    let mut all = SMALL.to_vec();
    all.push(TOP_RIGHT_SMALL);
    assert_eq!(
        canonical(&load("numbering_left.mesh")),
        canonical(&refine_at(&base, &all))
    );
    assert_eq!(
        canonical(&load("numbering_right.mesh")),
        canonical(&refine_at(&base, &SMALL))
    );
}

fn weight_at(m: &Mesh, w: &[(usize, u8)], p: Point) -> u8 {
    let v = node_at(m, p);
    w.iter()
        .find(|&&(x, _)| x == v)
        .map(|&(_, x)| x)
        .expect("node in stencil")
}

#[test]
fn numbering_left_blocks_exactly_one_quartet() {
    let m = load("numbering_left.mesh");
    let adm = q_admissible(&m);
    let mut expected = SMALL.to_vec();
    expected.push(TOP_RIGHT_SMALL);
    let blocked: Point = [2.25, 2.25];
    let mut with_blocked = expected.clone();
    with_blocked.push(blocked);
    assert_eq!(middle_points(&m, &adm.middles()), points(&with_blocked));

    let w = q_stencil_weights(&m, &adm);
    let sums = w.sums();
    for (q, (ws, sum)) in adm.quartets.iter().zip(w.weights.iter().zip(&sums)) {
        assert_eq!(ws[0], (q.middle, 0));
        if m.coordinates[q.middle] == blocked {
            // Boundary node above, the other three weigh one each.
            assert_eq!(weight_at(&m, ws, [2.25, 3.0]), 2);
            assert_eq!(weight_at(&m, ws, [2.25, 1.5]), 1);
            assert_eq!(weight_at(&m, ws, [1.5, 2.25]), 1);
            assert_eq!(weight_at(&m, ws, [3.0, 2.25]), 1);
            assert_eq!(*sum, 5);
        } else {
            // Two boundary nodes and two hanging nodes.
            assert!(ws[1..].iter().all(|&(_, x)| x == 2));
            assert_eq!(*sum, 8);
        }
    }

    let closed = q_closure(&m, &adm);
    assert_eq!(closed.len(), adm.len() - 1);
    assert_eq!(middle_points(&m, &closed.middles()), points(&expected));
}

#[test]
fn numbering_right_shared_node_keeps_both_quartets() {
    let m = load("numbering_right.mesh");
    let adm = q_admissible(&m);
    let (left_big, right_big) = ([2.25, 2.25], [3.75, 2.25]);
    let mut expected = SMALL.to_vec();
    expected.extend([left_big, right_big]);
    assert_eq!(middle_points(&m, &adm.middles()), points(&expected));

    let w = q_stencil_weights(&m, &adm);
    for (q, (ws, sum)) in adm.quartets.iter().zip(w.weights.iter().zip(w.sums())) {
        let c = m.coordinates[q.middle];
        if c == left_big {
            assert_eq!(weight_at(&m, ws, [3.0, 2.25]), 2, "shared by two stencils");
            assert_eq!(sum, 6);
        } else if c == right_big {
            assert_eq!(weight_at(&m, ws, [3.75, 1.5]), 1);
            assert_eq!(weight_at(&m, ws, [4.5, 2.25]), 2);
            assert_eq!(weight_at(&m, ws, [3.75, 3.0]), 2);
            assert_eq!(sum, 7);
        } else {
            assert_eq!(sum, 8);
        }
    }
    assert_eq!(q_closure(&m, &adm), adm);
}

// ---------------------------------------------------------------------------
// Irregular-edge blocking on two unit-square quads side by side.

#[test]
fn irregular_fixture_matches_construction() {
    let g = Mesh::quad_grid(2, 1, 3.0, 1.5);
    let g = qrefine_r(&g, &[0, 1]).unwrap();
    let g = refine_at(&g, &[[1.875, 1.125], [2.625, 1.125]]);
    let g = refine_at(&g, &[[2.0625, 1.3125]]);
    assert_eq!(load("irregular.mesh"), g);
}

#[test]
fn irregular_blocking() {
    let m = load("irregular.mesh");
    assert!(check_1_irregular(&m).is_ok());
    let adm = q_admissible(&m);
    let red_left: Point = [0.75, 0.75];
    let red_right: Point = [2.625, 1.125];
    let black: Point = [2.0625, 1.3125];
    assert_eq!(middle_points(&m, &adm.middles()), points(&[red_left, red_right, black]));

    // Each blocked quartet has a member with an irregular edge.
    let irregular_edges: BTreeSet<(usize, usize)> = m.irregular.iter().map(|&[i, j, _]| (i.min(j), i.max(j))).collect();
    for q in &adm.quartets {
        let has_irregular = q.elements.iter().any(|&e| {
            let el = m.element(e);
            (0..4).any(|k| {
                let (a, b) = (el[k], el[(k + 1) % 4]);
                irregular_edges.contains(&(a.min(b), a.max(b)))
            })
        });
        assert_eq!(has_irregular, m.coordinates[q.middle] != black);
    }

    let closed = q_closure(&m, &adm);
    assert_eq!(middle_points(&m, &closed.middles()), points(&[black]));

    // Merging all three quartets leaves two hanging nodes on the edge
    // x = 1.5, y in [0, 1.5].
    let unblocked = update_mesh(&m, &adm).unwrap();
    let report = check_1_irregular(&unblocked);
    assert!(!report.is_ok());
    // Merging only the surviving one keeps the mesh 1-irregular.
    let blocked = update_mesh(&m, &closed).unwrap();
    assert!(check_1_irregular(&blocked).is_ok());
}
