// SPDX-License-Identifier: Apache-2.0

mod common;

use std::collections::HashSet;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use adamesh::coarsen_red::{q_admissible, update_mesh};
use adamesh::io::load_mesh;
use adamesh::mesh::{
    check_1_irregular, check_conforming, check_d_neighbor, create_edge2elements, create_edge2elements_adv,
    normalize_oldest_first, provide_geometric_data, quality_metrics, rotate_oldest_first, signed_area,
    similarity_classes,
};
use adamesh::refine::{qrefine_r, trefine_r};
use adamesh::{Mesh, MeshError, MeshKind, Strategy};
use common::*;
use proptest::prelude::*;

/// Brute-force edge census: undirected edges and how many elements use each.
fn edge_census(mesh: &Mesh) -> Vec<usize> {
    let mut count = std::collections::BTreeMap::new();
    for e in mesh.elements() {
        for k in 0..e.len() {
            let (a, b) = (e[k], e[(k + 1) % e.len()]);
            *count.entry((a.min(b), a.max(b))).or_insert(0usize) += 1;
        }
    }
    count.into_values().collect()
}

fn adjacency_sizes(mesh: &Mesh) -> (usize, usize) {
    let g = provide_geometric_data(mesh).unwrap();
    let two = g.edge2elements.iter().filter(|a| a[1].is_some()).count();
    (two, g.num_edges() - two)
}

#[test]
fn single_quad_has_four_boundary_edges() {
    let m = Mesh::unit_square_quad();
    let g = provide_geometric_data(&m).unwrap();
    assert_eq!(g.num_edges(), 4);
    assert!(g.edge2elements.iter().all(|a| a[0] == Some(0) && a[1].is_none()));
    assert_eq!(g.boundary2edges.len(), 4);
}

#[test]
fn two_triangles_share_one_edge() {
    let m = Strategy::TR.initial_mesh();
    assert_eq!(adjacency_sizes(&m), (1, 4));
}

#[test]
fn refined_square_edge_census() {
    let m = qrefine_r(&Mesh::unit_square_quad(), &[0]).unwrap();
    assert_eq!(m.num_nodes(), 9);
    let census = edge_census(&m);
    assert_eq!(census.len(), 12);
    assert_eq!(adjacency_sizes(&m), (census.iter().filter(|&&c| c == 2).count(), 8));
    assert_eq!(adjacency_sizes(&m).0, 4);
}

#[test]
fn grid_edge_census() {
    let m = Mesh::quad_grid(4, 4, 1.0, 1.0);
    let census = edge_census(&m);
    let two = census.iter().filter(|&&c| c == 2).count();
    assert_eq!((two, census.len() - two), (24, 16));
    assert_eq!(adjacency_sizes(&m), (24, 16));
}

#[test]
fn repeated_node_is_reported() {
    let mut m = Mesh::unit_square_quad();
    m.elements4[0] = [0, 1, 1, 3];
    assert_eq!(provide_geometric_data(&m), Err(MeshError::RepeatedNode { element: 0 }));
    assert!(m.validate().is_err());
}

#[test]
fn create_edge2elements_variants() {
    let one: Vec<&[usize]> = vec![&[0, 1, 2]];
    let e2e = create_edge2elements(one.iter().copied(), 3).unwrap();
    assert!(e2e.iter().all(|a| *a == [Some(0), None]));

    let m = Mesh::quad_grid(2, 2, 1.0, 1.0);
    let g = provide_geometric_data(&m).unwrap();
    let (e2e, local) = create_edge2elements_adv(g.element2edges(), g.num_edges()).unwrap();
    assert_eq!(e2e, g.edge2elements);
    for (edge, (adj, loc)) in e2e.iter().zip(&local).enumerate() {
        for (slot, el) in adj.iter().enumerate() {
            if let Some(el) = el {
                assert_eq!(g.element_edges(*el)[loc[slot] as usize], edge);
            }
        }
    }

    let three: Vec<&[usize]> = vec![&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]];
    assert_eq!(create_edge2elements(three.iter().copied(), 7), Err(0));
}

#[test]
fn geometric_data_round_trip() {
    for s in Strategy::ALL {
        let m = random_refinements(s, 11, 3, 0.4).pop().unwrap();
        let g = provide_geometric_data(&m).unwrap();
        let mut seen = HashSet::new();
        for (id, e) in m.elements().enumerate() {
            let edges = g.element_edges(id);
            assert_eq!(edges.len(), e.len());
            for k in 0..e.len() {
                let [a, b] = g.edge2nodes[edges[k]];
                let (x, y) = (e[k], e[(k + 1) % e.len()]);
                assert!((a, b) == (x, y) || (a, b) == (y, x), "{s}: edge {k} of element {id}");
                seen.insert(edges[k]);
            }
        }
        assert_eq!(seen.len(), g.num_edges(), "{s}: every edge is used");
        assert_eq!(provide_geometric_data(&m).unwrap(), g, "deterministic");
    }
}

#[test]
fn example_element_from_pattern_figure_has_two_adjacent_elements() {
    let m = load_mesh(fixture("middleelement.mesh")).unwrap().mesh;
    let g = provide_geometric_data(&m).unwrap();
    // Edges with two adjacent elements never exceed two; irregular edges
    // have one adjacent element in this table.
    for [i, j, _] in &m.irregular {
        let e = g
            .edge2nodes
            .iter()
            .position(|&[a, b]| (a, b) == (*i, *j) || (a, b) == (*j, *i))
            .unwrap();
        assert!(g.edge2elements[e][1].is_none());
    }
}

#[test]
fn conforming_and_irregular_checks() {
    let t0 = Mesh::unit_square_quad();
    assert!(check_conforming(&t0));
    assert!(check_1_irregular(&t0).is_ok());

    let g = Mesh::quad_grid(2, 2, 1.0, 1.0);
    let corner = qrefine_r(&g, &[0]).unwrap();
    assert!(!check_conforming(&corner));
    assert!(check_1_irregular(&corner).is_ok());
    assert_eq!(corner.irregular.len(), 2);
    assert!(check_d_neighbor(&corner, 2).is_empty());
}

#[test]
fn two_hanging_nodes_on_one_edge_are_reported() {
    let m = load_mesh(fixture("irregular.mesh")).unwrap().mesh;
    let bad = update_mesh(&m, &q_admissible(&m)).unwrap();
    let report = check_1_irregular(&bad);
    let edges: Vec<([f64; 2], [f64; 2])> = report
        .violations
        .iter()
        .map(|&[a, b]| (bad.coordinates[a], bad.coordinates[b]))
        .collect();
    assert!(edges
        .iter()
        .any(|&(p, q)| (p, q) == ([1.5, 0.0], [1.5, 1.5]) || (p, q) == ([1.5, 1.5], [1.5, 0.0])));
    assert!(!geo_1_irregular(&bad));
}

#[test]
fn unrecorded_hanging_node_is_a_violation() {
    let g = Mesh::quad_grid(2, 2, 1.0, 1.0);
    let mut corner = qrefine_r(&g, &[0]).unwrap();
    corner.irregular.pop();
    assert!(!check_1_irregular(&corner).is_ok());
    corner.irregular.clear();
    assert!(
        !check_conforming(&corner),
        "geometric fallback still sees the hanging nodes"
    );
}

#[test]
fn quality_of_simple_meshes() {
    let h = 3f64.sqrt() / 2.0;
    let eq = Mesh::new(vec![[0.0, 0.0], [1.0, 0.0], [0.5, h]], vec![[0, 1, 2]], vec![], None);
    let q = quality_metrics(&eq).unwrap();
    assert!((q.min_angle.unwrap() - FRAC_PI_3).abs() < 1e-12);
    // h / rho for an equilateral triangle is 2 sqrt(3).
    assert!((q.max_diam_inradius_ratio.unwrap() - 2.0 * 3f64.sqrt()).abs() < 1e-9);
    assert!(q.max_abs_cos.is_none());

    let sq = quality_metrics(&Mesh::unit_square_quad()).unwrap();
    assert!(sq.max_abs_cos.unwrap().abs() < 1e-15);
    assert_eq!(sq.max_edge_ratio, Some(1.0));
    assert!(sq.min_angle.is_none());

    let right = Mesh::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], vec![[0, 1, 2]], vec![], None);
    let red = trefine_r(&right, &[0], false).unwrap();
    let a = quality_metrics(&right).unwrap().min_angle.unwrap();
    assert!((a - FRAC_PI_4).abs() < 1e-12);
    assert_eq!(quality_metrics(&red).unwrap().min_angle.unwrap(), a);
    assert_eq!(similarity_classes(&red, 1e-9), 1);
}

#[test]
fn degenerate_element_is_an_error() {
    let m = Mesh::new(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]], vec![[0, 1, 2]], vec![], None);
    assert!(quality_metrics(&m).is_err());
}

#[test]
fn mesh_kinds() {
    assert_eq!(Mesh::unit_square_quad().kind(), MeshKind::Quadrilateral);
    assert_eq!(Strategy::TR.initial_mesh().kind(), MeshKind::Triangular);
    let mixed = Strategy::QRG.refine(&Mesh::quad_grid(2, 1, 2.0, 1.0), &[0]).unwrap();
    assert_eq!(mixed.kind(), MeshKind::Mixed);
}

#[test]
fn rotate_examples() {
    assert_eq!(rotate_oldest_first([7, 2, 5]), [2, 5, 7]);
    assert_eq!(rotate_oldest_first([0, 3, 8, 5]), [0, 3, 8, 5]);
    assert_eq!(rotate_oldest_first([9, 4, 6, 1]), [1, 9, 4, 6]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent_and_keeps_orientation(
        si in 0usize..7, seed in 0u64..5_000, shifts in proptest::collection::vec(0usize..4, 512),
    ) {
        let s = Strategy::ALL[si];
        let mut m = random_refinements(s, seed, 2, 0.5).pop().unwrap();
        for (i, e) in m.elements3.iter_mut().enumerate() {
            e.rotate_left(shifts[i % shifts.len()] % 3);
        }
        for (i, e) in m.elements4.iter_mut().enumerate() {
            e.rotate_left(shifts[(i + 7) % shifts.len()]);
        }
        let once = normalize_oldest_first(&m);
        prop_assert_eq!(normalize_oldest_first(&once), once.clone());
        for id in 0..m.num_elements() {
            let a = signed_area(&m.element_points(id));
            let b = signed_area(&once.element_points(id));
            prop_assert!((a - b).abs() <= 1e-15 * a.abs().max(1.0));
            let e = once.element(id);
            prop_assert_eq!(e[0], *e.iter().min().unwrap());
        }
        prop_assert_eq!(canonical(&once), canonical(&m));
    }
}

#[test]
fn validation_errors() {
    let mut m = Mesh::unit_square_quad();
    m.elements4[0] = [0, 3, 2, 1];
    assert!(matches!(m.validate(), Err(MeshError::NotCounterclockwise { .. })));
    let mut m = Mesh::unit_square_quad();
    m.elements4[0][2] = 9;
    assert!(matches!(m.validate(), Err(MeshError::NodeOutOfRange { .. })));
    let mut m = Mesh::unit_square_quad();
    m.n0 = 7;
    assert!(matches!(m.validate(), Err(MeshError::InitialNodeCount { .. })));
}
