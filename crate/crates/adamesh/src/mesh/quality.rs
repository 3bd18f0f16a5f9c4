// SPDX-License-Identifier: Apache-2.0

//! Shape-regularity measures.

use super::{Mesh, Point};
use crate::error::{MeshError, Result};

/// Shape-regularity metrics. Triangle metrics are `None` for meshes without
/// triangles, quadrilateral metrics `None` without quadrilaterals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QualityReport {
    /// Smallest inner angle of any triangle, in radians.
    pub min_angle: Option<f64>,
    /// Largest diameter-to-inradius ratio `h_T / ρ_T` over triangles.
    pub max_diam_inradius_ratio: Option<f64>,
    /// Largest longest-to-shortest edge ratio over quadrilaterals.
    pub max_edge_ratio: Option<f64>,
    /// Largest `|cos φ|` over quadrilateral inner angles.
    pub max_abs_cos: Option<f64>,
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

fn cos_between(u: Point, v: Point) -> f64 {
    ((u[0] * v[0] + u[1] * v[1]) / (norm(u) * norm(v))).clamp(-1.0, 1.0)
}

/// Inner angles of a triangle, in vertex order.
pub fn triangle_angles(p: [Point; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for k in 0..3 {
        let u = sub(p[(k + 1) % 3], p[k]);
        let v = sub(p[(k + 2) % 3], p[k]);
        out[k] = cos_between(u, v).acos();
    }
    out
}

/// Compute the [`QualityReport`] of a mesh.
pub fn quality_metrics(mesh: &Mesh) -> Result<QualityReport> {
    let mut r = QualityReport::default();
    for (id, e) in mesh.elements3.iter().enumerate() {
        let p = [mesh.coordinates[e[0]], mesh.coordinates[e[1]], mesh.coordinates[e[2]]];
        let area = super::signed_area(&p);
        let lens = [norm(sub(p[1], p[0])), norm(sub(p[2], p[1])), norm(sub(p[0], p[2]))];
        if !(area > 0.0) || lens.contains(&0.0) {
            return Err(MeshError::Degenerate { element: id });
        }
        let h = lens.iter().cloned().fold(0.0, f64::max);
        let rho = 2.0 * area / lens.iter().sum::<f64>();
        let ratio = h / rho;
        let amin = triangle_angles(p).iter().cloned().fold(f64::INFINITY, f64::min);
        r.min_angle = Some(r.min_angle.map_or(amin, |m| m.min(amin)));
        r.max_diam_inradius_ratio = Some(r.max_diam_inradius_ratio.map_or(ratio, |m| m.max(ratio)));
    }
    let n3 = mesh.elements3.len();
    for (q, e) in mesh.elements4.iter().enumerate() {
        let p: Vec<Point> = e.iter().map(|&v| mesh.coordinates[v]).collect();
        if !(super::signed_area(&p) > 0.0) {
            return Err(MeshError::Degenerate { element: n3 + q });
        }
        let mut lmin = f64::INFINITY;
        let mut lmax: f64 = 0.0;
        let mut cmax: f64 = 0.0;
        for k in 0..4 {
            let l = norm(sub(p[(k + 1) % 4], p[k]));
            lmin = lmin.min(l);
            lmax = lmax.max(l);
            let c = cos_between(sub(p[(k + 1) % 4], p[k]), sub(p[(k + 3) % 4], p[k]));
            cmax = cmax.max(c.abs());
        }
        if lmin == 0.0 {
            return Err(MeshError::Degenerate { element: n3 + q });
        }
        let ratio = lmax / lmin;
        r.max_edge_ratio = Some(r.max_edge_ratio.map_or(ratio, |m| m.max(ratio)));
        r.max_abs_cos = Some(r.max_abs_cos.map_or(cmax, |m: f64| m.max(cmax)));
    }
    Ok(r)
}

/// Number of distinct triangle similarity classes, comparing sorted angle
/// triples up to `tol`.
pub fn similarity_classes(mesh: &Mesh, tol: f64) -> usize {
    let mut classes: Vec<[f64; 3]> = Vec::new();
    for e in &mesh.elements3 {
        let p = [mesh.coordinates[e[0]], mesh.coordinates[e[1]], mesh.coordinates[e[2]]];
        let mut a = triangle_angles(p);
        a.sort_by(|x, y| x.total_cmp(y));
        let known = classes.iter().any(|c| (0..3).all(|k| (c[k] - a[k]).abs() <= tol));
        if !known {
            classes.push(a);
        }
    }
    classes.len()
}
