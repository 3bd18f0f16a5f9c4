// SPDX-License-Identifier: Apache-2.0

mod common;

use std::collections::BTreeSet;

use adamesh::coarsen_regular::{
    coarsen_rb, coarsen_rg_quad, coarsen_rg_tri, recoarsen_blue, recoarsen_green_quad, recoarsen_green_tri,
    regularize_blue, regularize_green_quad, regularize_green_tri,
};
use adamesh::mesh::{check_1_irregular, check_conforming};
use adamesh::refine::{qrefine_r, qrefine_rb, qrefine_rg, trefine_r, trefine_rg};
use adamesh::{MarkPolicy, Mesh, Point, Strategy};
use common::*;
use proptest::prelude::*;

const REGULAR: [Strategy; 3] = [Strategy::TRG, Strategy::QRG, Strategy::QRB];

fn by_centroid(mesh: &Mesh, centroids: &[Point]) -> Vec<usize> {
    (0..mesh.num_elements())
        .filter(|&e| {
            let c = centroid(&mesh.element_points(e));
            centroids
                .iter()
                .any(|p| (p[0] - c[0]).abs() < 1e-12 && (p[1] - c[1]).abs() < 1e-12)
        })
        .collect()
}

fn hanging(mesh: &Mesh) -> BTreeSet<PKey> {
    mesh.irregular
        .iter()
        .map(|&[_, _, k]| pkey(mesh.coordinates[k]))
        .collect()
}

fn points(p: &[Point]) -> BTreeSet<PKey> {
    p.iter().map(|&q| pkey(q)).collect()
}

fn recoarsen(s: Strategy, m: &Mesh, marked: &[usize]) -> (Mesh, Vec<usize>) {
    match s {
        Strategy::TRG => recoarsen_green_tri(m, marked),
        Strategy::QRG => recoarsen_green_quad(m, marked),
        Strategy::QRB => recoarsen_blue(m, marked),
        _ => unreachable!(),
    }
    .unwrap()
}

fn regularize(s: Strategy, m: &Mesh) -> Mesh {
    match s {
        Strategy::TRG => regularize_green_tri(m),
        Strategy::QRG => regularize_green_quad(m),
        Strategy::QRB => regularize_blue(m),
        _ => unreachable!(),
    }
    .unwrap()
}

#[test]
fn recoarsening_a_red_mesh_changes_nothing() {
    let t = trefine_r(&Strategy::TRG.initial_mesh(), &[0, 1], true).unwrap();
    let q = qrefine_r(&Mesh::quad_grid(2, 2, 2.0, 2.0), &[0, 1, 2, 3]).unwrap();
    assert_eq!(recoarsen_green_tri(&t, &[1, 5]).unwrap(), (t.clone(), vec![1, 5]));
    assert_eq!(recoarsen_green_quad(&q, &[2]).unwrap(), (q.clone(), vec![2]));
    assert_eq!(recoarsen_blue(&q, &[2]).unwrap(), (q.clone(), vec![2]));
}

#[test]
fn green_pair_recoarsens_to_parent_and_hanging_node() {
    let t0 = Strategy::TRG.initial_mesh();
    let m = trefine_rg(&t0, &[0]).unwrap();
    assert_eq!(m.n_green, 2);
    // Mark one green child; the mark moves to the parent.
    let green_child = m.num_elements() - 1;
    let (red, marks) = recoarsen_green_tri(&m, &[green_child]).unwrap();
    assert_eq!((red.num_elements(), red.n_green), (5, 0));
    assert_eq!(red.irregular.len(), 1);
    assert_eq!(marks.len(), 1);
    let parent = red.element_points(marks[0]);
    assert!(strictly_inside(&parent, centroid(&m.element_points(green_child))));
    assert_eq!(parent.len(), 3);
    assert!((red.element_area(marks[0]) - 0.5 * t0.area()).abs() < 1e-15);
    assert!(check_1_irregular(&red).is_ok());
    assert_eq!(canonical(&regularize_green_tri(&red).unwrap()), canonical(&m));
}

#[test]
fn green_quad_layout_recoarsens_to_five_hanging_nodes() {
    let g = Mesh::quad_grid(4, 2, 4.0, 2.0);
    let marks = by_centroid(&g, &[[0.5, 0.5], [1.5, 0.5], [3.5, 0.5], [0.5, 1.5]]);
    let m = qrefine_rg(&g, &marks).unwrap();
    let (red, _) = recoarsen_green_quad(&m, &[]).unwrap();
    assert!(red.elements3.is_empty());
    assert_eq!(red.num_elements(), 16 + 4);
    assert_eq!(
        hanging(&red),
        points(&[[3.5, 1.0], [1.0, 1.5], [1.5, 1.0], [2.0, 0.5], [3.0, 0.5]])
    );
    assert_eq!(canonical(&regularize_green_quad(&red).unwrap()), canonical(&m));
}

#[test]
fn green_triangle_patterns_on_a_single_neighbor() {
    // One hanging node: three triangles. Two hanging nodes on adjacent
    // edges: four triangles.
    let g = Mesh::quad_grid(2, 1, 2.0, 1.0);
    let one = qrefine_rg(&g, &by_centroid(&g, &[[0.5, 0.5]])).unwrap();
    assert_eq!((one.elements3.len(), one.n_green), (3, 3));
    assert_eq!(recoarsen_green_quad(&one, &[]).unwrap().0.irregular.len(), 1);

    let g = Mesh::quad_grid(2, 2, 2.0, 2.0);
    let two = qrefine_rg(&g, &by_centroid(&g, &[[0.5, 0.5], [1.5, 1.5]])).unwrap();
    let (red, _) = recoarsen_green_quad(&two, &[]).unwrap();
    assert_eq!(red.irregular.len(), 4);
    // Each of the two unrefined squares sees two hanging nodes on adjacent
    // edges.
    assert_eq!((two.elements3.len(), two.n_green), (8, 8));
}

#[test]
fn blue_patterns_recoarsen_to_hanging_nodes() {
    let g = Mesh::quad_grid(3, 3, 3.0, 3.0);
    let m = qrefine_rb(&g, &by_centroid(&g, &[[0.5, 1.5], [2.5, 1.5]])).unwrap();
    assert!(m.n_blue > 0);
    let (red, _) = recoarsen_blue(&m, &[]).unwrap();
    assert_eq!(red.n_blue, 0);
    assert_eq!(red.num_elements(), m.num_elements() - m.n_blue + m.n_blue / 3);
    assert!(check_1_irregular(&red).is_ok() && geo_1_irregular(&red));
    // Every pattern's center is gone.
    let centers: BTreeSet<PKey> = (m.num_elements() - m.n_blue..m.num_elements())
        .map(|e| {
            let el = m.element(e);
            pkey(m.coordinates[*el.iter().max().unwrap()])
        })
        .collect();
    let remaining: BTreeSet<PKey> = red.coordinates.iter().map(|&p| pkey(p)).collect();
    assert!(centers.is_disjoint(&remaining));
    assert_eq!(canonical(&regularize_blue(&red).unwrap()), canonical(&m));
}

#[test]
fn neighboring_blue_patterns_delete_their_shared_midpoint() {
    // Refining one corner of a 2x2 grid: the two adjacent squares get one
    // hanging node each, and the diagonal square none; blue closure marks
    // the shared edges so the patterns pair up.
    let g = Mesh::quad_grid(2, 2, 2.0, 2.0);
    let m = qrefine_rb(&g, &by_centroid(&g, &[[0.5, 0.5]])).unwrap();
    assert!(check_conforming(&m) && geo_conforming(&m));
    let (red, _) = recoarsen_blue(&m, &[]).unwrap();
    // Only the two hanging nodes of the red corner remain; midpoints shared
    // by two blue patterns are deleted.
    assert_eq!(hanging(&red), points(&[[1.0, 0.5], [0.5, 1.0]]));
    assert_eq!(red.num_elements(), 4 + 3);
    // Grid nodes plus the corner's four midpoints and center.
    assert_eq!(red.num_nodes(), 9 + 5);
}

#[test]
fn regularizing_a_conforming_red_mesh_changes_nothing() {
    let t = trefine_r(&Strategy::TRG.initial_mesh(), &[0, 1], true).unwrap();
    assert_eq!(regularize_green_tri(&t).unwrap(), t);
    let q = qrefine_r(&Mesh::quad_grid(2, 1, 2.0, 1.0), &[0, 1]).unwrap();
    assert_eq!(regularize_green_quad(&q).unwrap(), q);
    assert_eq!(regularize_blue(&q).unwrap(), q);
}

#[test]
fn regularize_after_recoarsen_is_identity() {
    for s in REGULAR {
        for seed in 0..15 {
            for m in random_refinements(s, seed, 4, 0.3).iter().skip(1) {
                let (red, _) = recoarsen(s, m, &[]);
                assert!(check_1_irregular(&red).is_ok(), "{s} seed {seed}");
                assert_eq!(canonical(&regularize(s, &red)), canonical(m), "{s} seed {seed}");
            }
        }
    }
}

#[test]
fn mark_transfer_is_any_of_over_children() {
    for s in REGULAR {
        for seed in 0..10 {
            let m = random_refinements(s, seed, 3, 0.3).pop().unwrap();
            let mut r = rng(seed + 1000);
            let marks = random_marks(&mut r, &m, 0.2);
            let (red, moved) = recoarsen(s, &m, &marks);
            let expected: BTreeSet<usize> = marks
                .iter()
                .map(|&e| {
                    let g = centroid(&m.element_points(e));
                    let owners: Vec<usize> = (0..red.num_elements())
                        .filter(|&p| {
                            let poly = red.element_points(p);
                            strictly_inside(&poly, g)
                        })
                        .collect();
                    assert_eq!(owners.len(), 1, "{s} seed {seed}");
                    owners[0]
                })
                .collect();
            let got: BTreeSet<usize> = moved.iter().copied().collect();
            assert_eq!(got, expected, "{s} seed {seed}");
        }
    }
}

fn coarsen(s: Strategy, m: &Mesh, marked: &[usize]) -> Mesh {
    match s {
        Strategy::TRG => coarsen_rg_tri(m, marked, MarkPolicy::AnyOf),
        Strategy::QRG => coarsen_rg_quad(m, marked, MarkPolicy::AnyOf),
        Strategy::QRB => coarsen_rb(m, marked, MarkPolicy::AnyOf),
        _ => unreachable!(),
    }
    .unwrap()
}

#[test]
fn coarsening_without_marks_keeps_the_mesh() {
    for s in REGULAR {
        for seed in 0..10 {
            let m = random_refinements(s, seed, 3, 0.3).pop().unwrap();
            assert_eq!(canonical(&coarsen(s, &m, &[])), canonical(&m), "{s} seed {seed}");
        }
    }
}

#[test]
fn marking_everything_reaches_the_initial_mesh() {
    for s in REGULAR {
        let t0 = s.initial_mesh();
        for seed in 0..10 {
            let mut m = random_refinements(s, seed, 4, 0.3).pop().unwrap();
            for _ in 0..8 {
                m = coarsen(s, &m, &all(&m));
                assert!(check_conforming(&m) && geo_conforming(&m), "{s} seed {seed}");
                assert_eq!(conservation_error(&t0, &m), None, "{s} seed {seed}");
            }
            assert!(same_mesh(&m, &t0), "{s} seed {seed}");
        }
    }
}

#[test]
fn uniform_levels_take_as_many_steps() {
    for s in REGULAR {
        for k in 0..4 {
            let m = s.refine_uniform(&s.initial_mesh(), k).unwrap();
            let (c, steps) = s.coarsen_to_fixpoint(&m, 20).unwrap();
            assert_eq!(c, s.initial_mesh());
            assert_eq!(steps, k, "{s}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interleaved_coarsening_stays_conforming(si in 0usize..3, seed in 0u64..100_000) {
        let s = REGULAR[si];
        let t0 = s.initial_mesh();
        let mut r = rng(seed);
        let mut m = t0.clone();
        for round in 0..6 {
            let marks = random_marks(&mut r, &m, 0.3);
            let next = if round % 2 == 0 || round == 5 { s.refine(&m, &marks) } else { s.coarsen(&m, &marks, MarkPolicy::AnyOf) };
            let next = next.unwrap();
            if round % 2 == 1 && round != 5 {
                prop_assert!(next.num_elements() <= m.num_elements());
            }
            m = next;
            m.validate().unwrap();
            prop_assert!(check_conforming(&m) && geo_conforming(&m));
            prop_assert_eq!(conservation_error(&t0, &m), None);
        }
    }
}
