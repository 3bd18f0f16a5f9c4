// SPDX-License-Identifier: Apache-2.0

//! Mesh files and SVG rendering.

mod format;
mod svg;

pub use format::{format_mesh, load_mesh, parse_mesh, save_mesh, FormatError, MeshFile};
pub use svg::{render_svg, save_svg, SvgOptions};
