// SPDX-License-Identifier: Apache-2.0

//! Timing of all-marked coarsening steps, for checking linear scaling.

use std::fmt::Write as _;
use std::time::Instant;

use crate::coarsen_red::MarkPolicy;
use crate::error::Result;
use crate::strategy::Strategy;

/// One coarsening step: the size of its input mesh and the median time.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub step: usize,
    pub nodes: usize,
    pub elements: usize,
    pub median_seconds: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Refine uniformly `max_level` times, then coarsen with all elements marked
/// until the mesh stops changing. Every step is timed `reps` times (at least
/// one) on the same input and the median is reported; one row per step that
/// changed the mesh.
pub fn bench_scaling(strategy: Strategy, max_level: usize, reps: usize) -> Result<Vec<BenchRow>> {
    let mut mesh = strategy.refine_uniform(&strategy.initial_mesh(), max_level)?;
    let mut rows = Vec::new();
    for step in 1..=4 * max_level + 8 {
        let all: Vec<usize> = (0..mesh.num_elements()).collect();
        let mut times = Vec::with_capacity(reps.max(1));
        let mut next = None;
        for _ in 0..reps.max(1) {
            let t = Instant::now();
            let out = strategy.coarsen(&mesh, &all, MarkPolicy::AnyOf)?;
            times.push(t.elapsed().as_secs_f64());
            next = Some(out);
        }
        let next = next.expect("at least one repetition");
        if next == mesh {
            break;
        }
        rows.push(BenchRow {
            step,
            nodes: mesh.num_nodes(),
            elements: mesh.num_elements(),
            median_seconds: median(times),
        });
        mesh = next;
    }
    Ok(rows)
}

/// CSV with header `step,nodes,elements,median_seconds`.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from("step,nodes,elements,median_seconds\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{},{:.9}", r.step, r.nodes, r.elements, r.median_seconds);
    }
    s
}

/// Growth factor of the step time per doubling of the node count between
/// consecutive rows, `(t1 / t2)^(1 / log2(n1 / n2))` for rows ordered by
/// decreasing size. Pairs where either row has fewer than `min_nodes` nodes
/// are skipped. Returns `(smaller node count, factor)`.
pub fn doubling_factors(rows: &[BenchRow], min_nodes: usize) -> Vec<(usize, f64)> {
    let mut sorted: Vec<&BenchRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.nodes);
    sorted
        .windows(2)
        .filter(|w| w[0].nodes >= min_nodes && w[1].nodes > w[0].nodes)
        .map(|w| {
            let doublings = (w[1].nodes as f64 / w[0].nodes as f64).log2();
            let ratio = w[1].median_seconds / w[0].median_seconds.max(f64::MIN_POSITIVE);
            (w[0].nodes, ratio.powf(1.0 / doublings))
        })
        .collect()
}
