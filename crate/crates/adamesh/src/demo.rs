// SPDX-License-Identifier: Apache-2.0

//! Demo drivers: refinement along a circle followed by coarsening back to
//! the initial mesh, and local coarsening inside a disc.

use std::time::Instant;

use crate::coarsen_red::MarkPolicy;
use crate::error::Result;
use crate::mesh::{Mesh, Point};
use crate::strategy::Strategy;

/// A circle in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Default for Circle {
    /// Centered in the unit square, radius 0.3.
    fn default() -> Self {
        Circle {
            center: [0.5, 0.5],
            radius: 0.3,
        }
    }
}

fn dist(p: Point, q: Point) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

fn segment_dist(p: Point, a: Point, b: Point) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 > 0.0 {
        (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    dist(p, [a[0] + t * d[0], a[1] + t * d[1]])
}

/// Elements (convex, counterclockwise) crossed by the circle line.
pub fn circle_marks(mesh: &Mesh, circle: Circle) -> Vec<usize> {
    let c = circle.center;
    (0..mesh.num_elements())
        .filter(|&id| {
            let p = mesh.element_points(id);
            let n = p.len();
            let inside = (0..n).all(|k| {
                let (a, b) = (p[k], p[(k + 1) % n]);
                (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) >= 0.0
            });
            let near = if inside {
                0.0
            } else {
                (0..n)
                    .map(|k| segment_dist(c, p[k], p[(k + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            };
            let far = p.iter().map(|&q| dist(c, q)).fold(0.0, f64::max);
            near <= circle.radius && circle.radius <= far
        })
        .collect()
}

/// Elements whose centroid lies inside the closed disc.
pub fn disc_marks(mesh: &Mesh, circle: Circle) -> Vec<usize> {
    (0..mesh.num_elements())
        .filter(|&id| {
            let p = mesh.element_points(id);
            let n = p.len() as f64;
            let g = [
                p.iter().map(|q| q[0]).sum::<f64>() / n,
                p.iter().map(|q| q[1]).sum::<f64>() / n,
            ];
            dist(g, circle.center) <= circle.radius
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Initial,
    Refine,
    Coarsen,
}

/// One row of a demo log.
#[derive(Debug, Clone, PartialEq)]
pub struct DemoStep {
    pub phase: Phase,
    pub nodes: usize,
    pub elements: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemoRun {
    /// The mesh after every step, starting with the initial mesh.
    pub frames: Vec<Mesh>,
    pub log: Vec<DemoStep>,
    pub refine_steps: usize,
    pub coarsen_steps: usize,
}

fn record(run: &mut DemoRun, phase: Phase, mesh: Mesh, seconds: f64) {
    run.log.push(DemoStep {
        phase,
        nodes: mesh.num_nodes(),
        elements: mesh.num_elements(),
        seconds,
    });
    run.frames.push(mesh);
}

/// Refine `steps` times along `circle`, then coarsen with every element
/// marked until the mesh stops changing (at most `4 * steps + 8` steps).
pub fn demo_circle(strategy: Strategy, steps: usize, circle: Circle) -> Result<DemoRun> {
    let mut run = DemoRun {
        frames: Vec::new(),
        log: Vec::new(),
        refine_steps: 0,
        coarsen_steps: 0,
    };
    let mut mesh = strategy.initial_mesh();
    record(&mut run, Phase::Initial, mesh.clone(), 0.0);
    for _ in 0..steps {
        let marks = circle_marks(&mesh, circle);
        let t = Instant::now();
        mesh = strategy.refine(&mesh, &marks)?;
        let dt = t.elapsed().as_secs_f64();
        run.refine_steps += 1;
        record(&mut run, Phase::Refine, mesh.clone(), dt);
    }
    if steps == 0 {
        return Ok(run);
    }
    for _ in 0..4 * steps + 8 {
        let all: Vec<usize> = (0..mesh.num_elements()).collect();
        let t = Instant::now();
        let next = strategy.coarsen(&mesh, &all, MarkPolicy::AnyOf)?;
        let dt = t.elapsed().as_secs_f64();
        if next == mesh {
            break;
        }
        mesh = next;
        run.coarsen_steps += 1;
        record(&mut run, Phase::Coarsen, mesh.clone(), dt);
    }
    Ok(run)
}

/// Refine uniformly `levels` times, then apply `rounds` coarsening steps
/// marking only the elements whose centroid lies in `disc`. Returns the
/// uniform mesh and the locally coarsened one.
pub fn demo_local_coarsening(strategy: Strategy, levels: usize, rounds: usize, disc: Circle) -> Result<(Mesh, Mesh)> {
    let fine = strategy.refine_uniform(&strategy.initial_mesh(), levels)?;
    let mut mesh = fine.clone();
    for _ in 0..rounds {
        let marks = disc_marks(&mesh, disc);
        mesh = strategy.coarsen(&mesh, &marks, MarkPolicy::AnyOf)?;
    }
    Ok((fine, mesh))
}
