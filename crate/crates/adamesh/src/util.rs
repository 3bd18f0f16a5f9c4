// SPDX-License-Identifier: Apache-2.0

//! Small shared helpers: undirected edge keys and a coordinate lookup used
//! to detect nodes sitting at edge midpoints.

use std::collections::HashMap;

use crate::mesh::Point;

/// Relative tolerance used when matching a node against an edge midpoint.
pub const MIDPOINT_TOL: f64 = 1e-12;

/// Undirected edge key.
#[inline]
pub fn ekey(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[inline]
pub fn midpoint(p: Point, q: Point) -> Point {
    [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])]
}

/// Length scale of a point cloud (bounding-box diagonal, at least 1).
pub fn length_scale(points: &[Point]) -> f64 {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    if points.is_empty() {
        return 1.0;
    }
    let d = ((hi[0] - lo[0]).powi(2) + (hi[1] - lo[1]).powi(2)).sqrt();
    d.max(1.0)
}

/// Whether `m` coincides with the midpoint of `p`–`q` up to `tol`.
#[inline]
pub fn is_midpoint(p: Point, q: Point, m: Point, tol: f64) -> bool {
    let c = midpoint(p, q);
    (c[0] - m[0]).abs() <= tol && (c[1] - m[1]).abs() <= tol
}

/// Hash grid over a subset of nodes, answering "which node sits at this
/// point?" within an absolute tolerance.
pub struct NodeLocator<'a> {
    coords: &'a [Point],
    cell: f64,
    tol: f64,
    grid: HashMap<(i64, i64), Vec<usize>>,
}

impl<'a> NodeLocator<'a> {
    pub fn new(coords: &'a [Point], nodes: impl IntoIterator<Item = usize>, tol: f64) -> Self {
        // Cells much larger than the tolerance keep the 3x3 probe exact while
        // avoiding precision issues in the quantization.
        let cell = (tol * 16.0).max(f64::MIN_POSITIVE);
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for n in nodes {
            grid.entry(Self::quantize(coords[n], cell)).or_default().push(n);
        }
        NodeLocator {
            coords,
            cell,
            tol,
            grid,
        }
    }

    fn quantize(p: Point, cell: f64) -> (i64, i64) {
        ((p[0] / cell).floor() as i64, (p[1] / cell).floor() as i64)
    }

    pub fn find(&self, p: Point) -> Option<usize> {
        let (cx, cy) = Self::quantize(p, self.cell);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(list) = self.grid.get(&(cx + dx, cy + dy)) {
                    for &n in list {
                        let q = self.coords[n];
                        if (q[0] - p[0]).abs() <= self.tol && (q[1] - p[1]).abs() <= self.tol {
                            return Some(n);
                        }
                    }
                }
            }
        }
        None
    }
}
