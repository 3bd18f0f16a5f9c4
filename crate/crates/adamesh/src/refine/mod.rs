// SPDX-License-Identifier: Apache-2.0

//! Refinement for the seven strategies.
//!
//! Storage rules shared by all of them: new coordinates are appended, so the
//! input coordinates are a prefix of the output's; red children take their
//! parent's place in the element list; green and blue elements live in
//! trailing blocks counted by `n_green`, `n_green4` and `n_blue`.

mod bisection;
mod red;

pub(crate) use red::red_refine;

use crate::coarsen_regular::{
    recoarsen_blue, recoarsen_green_quad, recoarsen_green_tri, regularize_blue, regularize_green_quad,
    regularize_green_tri,
};
use crate::error::{MeshError, Result};
use crate::mesh::{normalize_oldest_first_in_place, Mesh, MeshKind};

fn expect_kind(mesh: &Mesh, kind: MeshKind, expected: &'static str) -> Result<()> {
    let k = mesh.kind();
    if k == kind || k == MeshKind::Empty {
        Ok(())
    } else {
        Err(MeshError::WrongKind { expected })
    }
}

/// Red-refine the marked triangles of a 1-irregular red triangulation.
///
/// The 1-irregular rule is always enforced; with `two_neighbor_rule`, any
/// unrefined triangle that would end up with two refined neighbors is
/// refined as well.
pub fn trefine_r(mesh: &Mesh, marked: &[usize], two_neighbor_rule: bool) -> Result<Mesh> {
    expect_kind(mesh, MeshKind::Triangular, "a triangular mesh")?;
    let flags = mesh.check_marks(marked)?;
    red_refine(mesh, flags, two_neighbor_rule.then_some(2))
}

/// Red-refine the marked quadrilaterals of a 1-irregular red quad mesh,
/// enforcing the 1-irregular and 3-neighbor rules. The output is
/// oldest-first normalized.
pub fn qrefine_r(mesh: &Mesh, marked: &[usize]) -> Result<Mesh> {
    expect_kind(mesh, MeshKind::Quadrilateral, "a quadrilateral mesh")?;
    let flags = mesh.check_marks(marked)?;
    let mut out = red_refine(mesh, flags, Some(3))?;
    normalize_oldest_first_in_place(&mut out);
    Ok(out)
}

/// Newest-vertex bisection of the marked triangles (reference edge = first
/// two positions). Marked elements are bisected three times.
pub fn trefine_nvb(mesh: &Mesh, marked: &[usize]) -> Result<Mesh> {
    bisection::bisection_refine(mesh, marked, false)
}

/// Red-green-blue refinement: like [`trefine_nvb`], but elements with all
/// three edges marked are red-refined instead of bisected three times.
pub fn trefine_rgb(mesh: &Mesh, marked: &[usize]) -> Result<Mesh> {
    bisection::bisection_refine(mesh, marked, true)
}

/// Red-green refinement of a conforming triangulation: undo the green
/// pairs, red-refine with the 2-neighbor rule, close hanging nodes with new
/// green pairs.
pub fn trefine_rg(mesh: &Mesh, marked: &[usize]) -> Result<Mesh> {
    let (red, marks) = recoarsen_green_tri(mesh, marked)?;
    let refined = trefine_r(&red, &marks, true)?;
    regularize_green_tri(&refined)
}

/// Red-green refinement of a conforming quad-dominant mesh (green
/// triangles and green quadrilaterals close the hanging nodes).
pub fn qrefine_rg(mesh: &Mesh, marked: &[usize]) -> Result<Mesh> {
    let (red, marks) = recoarsen_green_quad(mesh, marked)?;
    let refined = qrefine_r(&red, &marks)?;
    regularize_green_quad(&refined)
}

/// Red-blue refinement of a conforming quad mesh: hanging nodes are closed
/// by blue patterns, with extra red refinements where no pattern fits.
pub fn qrefine_rb(mesh: &Mesh, marked: &[usize]) -> Result<Mesh> {
    let (red, marks) = recoarsen_blue(mesh, marked)?;
    let refined = qrefine_r(&red, &marks)?;
    regularize_blue(&refined)
}
