// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::mesh::Mesh;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Draw a dot (class `hanging`) at every hanging node.
    pub show_hanging: bool,
    /// Fill green and blue blocks in their colors; red elements otherwise.
    pub fill_blocks: bool,
    /// Image width in pixels; the height follows the aspect ratio.
    pub width: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            show_hanging: true,
            fill_blocks: true,
            width: 600.0,
        }
    }
}

const RED: &str = "#f6d5cf";
const GREEN: &str = "#cdebc5";
const BLUE: &str = "#c9dcf2";

/// Render the mesh as an SVG document: one `polygon` per element and one
/// `circle` per hanging node.
pub fn render_svg(mesh: &Mesh, opts: &SvgOptions) -> String {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for e in mesh.elements() {
        for &v in e {
            let p = mesh.coordinates[v];
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
    }
    if !lo[0].is_finite() {
        lo = [0.0, 0.0];
        hi = [1.0, 1.0];
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let margin = 0.02 * opts.width;
    let scale = (opts.width - 2.0 * margin) / span;
    let height = (hi[1] - lo[1]) * scale + 2.0 * margin;
    let tx = |p: [f64; 2]| {
        (
            margin + (p[0] - lo[0]) * scale,
            height - margin - (p[1] - lo[1]) * scale,
        )
    };
    let stroke = (opts.width / 600.0).max(0.5);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = opts.width,
        h = height
    );
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="{stroke:.3}" stroke-linejoin="round">"#
    );
    let n3 = mesh.elements3.len();
    let n4 = mesh.elements4.len();
    for (id, e) in mesh.elements().enumerate() {
        let (class, fill) = if id < n3 {
            if id >= n3.saturating_sub(mesh.n_green) {
                ("green", GREEN)
            } else {
                ("red", RED)
            }
        } else {
            let q = id - n3;
            if q >= n4.saturating_sub(mesh.n_blue) {
                ("blue", BLUE)
            } else if q >= n4.saturating_sub(mesh.n_blue + mesh.n_green4) {
                ("green", GREEN)
            } else {
                ("red", RED)
            }
        };
        let fill = if opts.fill_blocks { fill } else { "white" };
        let pts: Vec<String> = e
            .iter()
            .map(|&v| {
                let (x, y) = tx(mesh.coordinates[v]);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polygon class="{class}" fill="{fill}" points="{}"/>"#,
            pts.join(" ")
        );
    }
    s.push_str("</g>\n");
    if opts.show_hanging {
        let hanging: BTreeSet<usize> = mesh.irregular.iter().map(|r| r[2]).collect();
        let radius = 2.5 * stroke;
        for v in hanging {
            let (x, y) = tx(mesh.coordinates[v]);
            let _ = writeln!(
                s,
                r#"<circle class="hanging" cx="{x:.3}" cy="{y:.3}" r="{radius:.3}" fill="red"/>"#
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

pub fn save_svg(mesh: &Mesh, opts: &SvgOptions, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, render_svg(mesh, opts))
}
