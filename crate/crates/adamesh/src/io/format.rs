// SPDX-License-Identifier: Apache-2.0

//! A plain-text mesh format.
//!
//! ```text
//! # comment
//! META
//! n0 4
//! strategy q-r
//! n_green 0
//! n_green4 0
//! n_blue 0
//! COORDINATES
//! 0 0
//! 1 0
//! 1 1
//! 0 1
//! ELEMENTS4
//! 1 2 3 4
//! BOUNDARY
//! 1 2
//! ...
//! ```
//!
//! Sections (`META`, `COORDINATES`, `ELEMENTS3`, `ELEMENTS4`, `IRREGULAR`,
//! `BOUNDARY`) may appear in any order and may be omitted. Node indices are
//! 1-based. Without `n0`, every node counts as initial. A mesh without a
//! `BOUNDARY` section has no stored boundary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::MeshError;
use crate::mesh::Mesh;
use crate::strategy::Strategy;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid mesh: {0}")]
    Invalid(#[from] MeshError),
}

/// A mesh together with the strategy that produced it, if recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshFile {
    pub mesh: Mesh,
    pub strategy: Option<Strategy>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Meta,
    Coordinates,
    Elements3,
    Elements4,
    Irregular,
    Boundary,
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_row<const N: usize>(line: usize, text: &str) -> Result<[usize; N], FormatError> {
    let mut out = [0usize; N];
    let mut it = text.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line, format!("expected {N} node indices")))?;
        let v: usize = tok
            .parse()
            .map_err(|_| parse_err(line, format!("`{tok}` is not a node index")))?;
        if v == 0 {
            return Err(parse_err(line, "node indices are 1-based; found 0"));
        }
        *slot = v - 1;
    }
    if it.next().is_some() {
        return Err(parse_err(line, format!("expected exactly {N} node indices")));
    }
    Ok(out)
}

/// Parse the text format. Index ranges and all mesh invariants are checked.
pub fn parse_mesh(text: &str) -> Result<MeshFile, FormatError> {
    let mut section = Section::None;
    let mut mesh = Mesh::default();
    let mut n0: Option<usize> = None;
    let mut strategy = None;
    let mut has_boundary = false;
    let mut boundary = Vec::new();
    // Line numbers of every indexed row, for range errors.
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let header = match content {
            "META" => Some(Section::Meta),
            "COORDINATES" => Some(Section::Coordinates),
            "ELEMENTS3" => Some(Section::Elements3),
            "ELEMENTS4" => Some(Section::Elements4),
            "IRREGULAR" => Some(Section::Irregular),
            "BOUNDARY" => Some(Section::Boundary),
            _ => None,
        };
        if let Some(h) = header {
            section = h;
            has_boundary |= h == Section::Boundary;
            continue;
        }
        match section {
            Section::None => return Err(parse_err(line, "data before the first section header")),
            Section::Meta => {
                let mut it = content.split_whitespace();
                let key = it.next().unwrap_or("");
                let value = it
                    .next()
                    .ok_or_else(|| parse_err(line, format!("`{key}` needs a value")))?;
                if it.next().is_some() {
                    return Err(parse_err(line, "expected `key value`"));
                }
                let count = || -> Result<usize, FormatError> {
                    value
                        .parse()
                        .map_err(|_| parse_err(line, format!("`{value}` is not a count")))
                };
                match key {
                    "n0" => n0 = Some(count()?),
                    "n_green" => mesh.n_green = count()?,
                    "n_green4" => mesh.n_green4 = count()?,
                    "n_blue" => mesh.n_blue = count()?,
                    "strategy" => {
                        strategy = Some(value.parse::<Strategy>().map_err(|e| parse_err(line, e.to_string()))?)
                    }
                    _ => return Err(parse_err(line, format!("unknown META key `{key}`"))),
                }
            }
            Section::Coordinates => {
                let vals: Vec<&str> = content.split_whitespace().collect();
                if vals.len() != 2 {
                    return Err(parse_err(line, "expected two coordinates"));
                }
                let mut p = [0.0; 2];
                for (k, v) in vals.iter().enumerate() {
                    p[k] = v
                        .parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| parse_err(line, format!("`{v}` is not a finite number")))?;
                }
                mesh.coordinates.push(p);
            }
            Section::Elements3 => {
                let r = parse_row::<3>(line, content)?;
                rows.push((line, r.to_vec()));
                mesh.elements3.push(r);
            }
            Section::Elements4 => {
                let r = parse_row::<4>(line, content)?;
                rows.push((line, r.to_vec()));
                mesh.elements4.push(r);
            }
            Section::Irregular => {
                let r = parse_row::<3>(line, content)?;
                rows.push((line, r.to_vec()));
                mesh.irregular.push(r);
            }
            Section::Boundary => {
                let r = parse_row::<2>(line, content)?;
                rows.push((line, r.to_vec()));
                boundary.push(r);
            }
        }
    }
    let n = mesh.coordinates.len();
    for (line, r) in &rows {
        if let Some(&v) = r.iter().find(|&&v| v >= n) {
            return Err(parse_err(
                *line,
                format!("node {} is out of range (file has {n} nodes)", v + 1),
            ));
        }
    }
    mesh.n0 = n0.unwrap_or(n);
    if has_boundary {
        mesh.boundary = Some(boundary);
    }
    mesh.validate()?;
    Ok(MeshFile { mesh, strategy })
}

/// Render a mesh in the text format. Coordinates are written so that they
/// parse back bit-identically.
pub fn format_mesh(mesh: &Mesh, strategy: Option<Strategy>) -> String {
    let mut s = String::new();
    s.push_str("META\n");
    let _ = writeln!(s, "n0 {}", mesh.n0);
    if let Some(st) = strategy {
        let _ = writeln!(s, "strategy {st}");
    }
    let _ = writeln!(s, "n_green {}", mesh.n_green);
    let _ = writeln!(s, "n_green4 {}", mesh.n_green4);
    let _ = writeln!(s, "n_blue {}", mesh.n_blue);
    s.push_str("COORDINATES\n");
    for p in &mesh.coordinates {
        let _ = writeln!(s, "{:?} {:?}", p[0], p[1]);
    }
    let rows = |s: &mut String, name: &str, data: &mut dyn Iterator<Item = &[usize]>| {
        s.push_str(name);
        s.push('\n');
        for r in data {
            let line: Vec<String> = r.iter().map(|v| (v + 1).to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
    };
    if !mesh.elements3.is_empty() {
        rows(&mut s, "ELEMENTS3", &mut mesh.elements3.iter().map(|e| &e[..]));
    }
    if !mesh.elements4.is_empty() {
        rows(&mut s, "ELEMENTS4", &mut mesh.elements4.iter().map(|e| &e[..]));
    }
    if !mesh.irregular.is_empty() {
        rows(&mut s, "IRREGULAR", &mut mesh.irregular.iter().map(|e| &e[..]));
    }
    if let Some(b) = &mesh.boundary {
        rows(&mut s, "BOUNDARY", &mut b.iter().map(|e| &e[..]));
    }
    s
}

pub fn load_mesh(path: impl AsRef<Path>) -> Result<MeshFile, FormatError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_mesh(&text)
}

pub fn save_mesh(mesh: &Mesh, strategy: Option<Strategy>, path: impl AsRef<Path>) -> Result<(), FormatError> {
    let path = path.as_ref();
    std::fs::write(path, format_mesh(mesh, strategy)).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}
