// SPDX-License-Identifier: Apache-2.0

//! The seven refinement/coarsening strategy pairs behind one enum.

use std::fmt;
use std::str::FromStr;

use crate::coarsen_bisection::{coarsen_nvb, coarsen_rgb};
use crate::coarsen_red::{coarsen_r, MarkPolicy};
use crate::coarsen_regular::{coarsen_rb, coarsen_rg_quad, coarsen_rg_tri};
use crate::error::Result;
use crate::mesh::{normalize_oldest_first, Mesh};
use crate::refine::{qrefine_r, qrefine_rb, qrefine_rg, trefine_nvb, trefine_r, trefine_rg, trefine_rgb};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Red refinement of triangles, hanging nodes allowed.
    TR,
    /// Red refinement of triangles closed by green bisection.
    TRG,
    /// Red-green-blue refinement of triangles.
    TRGB,
    /// Newest-vertex bisection.
    TNVB,
    /// Red refinement of quadrilaterals, hanging nodes allowed.
    QR,
    /// Red refinement of quadrilaterals closed by green triangles/quads.
    QRG,
    /// Red refinement of quadrilaterals closed by blue quadrilaterals.
    QRB,
}

impl Strategy {
    pub const ALL: [Strategy; 7] = [
        Strategy::TR,
        Strategy::TRG,
        Strategy::TRGB,
        Strategy::TNVB,
        Strategy::QR,
        Strategy::QRG,
        Strategy::QRB,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Strategy::TR => "t-r",
            Strategy::TRG => "t-rg",
            Strategy::TRGB => "t-rgb",
            Strategy::TNVB => "t-nvb",
            Strategy::QR => "q-r",
            Strategy::QRG => "q-rg",
            Strategy::QRB => "q-rb",
        }
    }

    /// Whether the strategy starts from (and refines) triangles.
    pub fn is_triangular(self) -> bool {
        matches!(self, Strategy::TR | Strategy::TRG | Strategy::TRGB | Strategy::TNVB)
    }

    /// Whether the strategy produces meshes without hanging nodes.
    pub fn is_conforming(self) -> bool {
        !matches!(self, Strategy::TR | Strategy::QR)
    }

    /// Whether the strategy uses bisection (reference edges matter).
    pub fn is_bisection(self) -> bool {
        matches!(self, Strategy::TRGB | Strategy::TNVB)
    }

    /// The d of the d-neighbor rule the red part of the strategy obeys, if
    /// any.
    pub fn neighbor_rule(self) -> Option<usize> {
        match self {
            Strategy::TRG => Some(2),
            Strategy::QR | Strategy::QRG | Strategy::QRB => Some(3),
            _ => None,
        }
    }

    /// The unit square: two triangles sharing the diagonal (as reference
    /// edge for the bisection strategies, oldest-first otherwise), or one
    /// quadrilateral.
    pub fn initial_mesh(self) -> Mesh {
        if self.is_bisection() {
            Mesh::unit_square_triangles()
        } else if self.is_triangular() {
            normalize_oldest_first(&Mesh::unit_square_triangles())
        } else {
            Mesh::unit_square_quad()
        }
    }

    pub fn refine(self, mesh: &Mesh, marked: &[usize]) -> Result<Mesh> {
        match self {
            Strategy::TR => trefine_r(mesh, marked, false),
            Strategy::TRG => trefine_rg(mesh, marked),
            Strategy::TRGB => trefine_rgb(mesh, marked),
            Strategy::TNVB => trefine_nvb(mesh, marked),
            Strategy::QR => qrefine_r(mesh, marked),
            Strategy::QRG => qrefine_rg(mesh, marked),
            Strategy::QRB => qrefine_rb(mesh, marked),
        }
    }

    pub fn coarsen(self, mesh: &Mesh, marked: &[usize], policy: MarkPolicy) -> Result<Mesh> {
        match self {
            Strategy::TR => coarsen_r(mesh, marked, policy, false),
            Strategy::TRG => coarsen_rg_tri(mesh, marked, policy),
            Strategy::TRGB => coarsen_rgb(mesh, marked, policy),
            Strategy::TNVB => coarsen_nvb(mesh, marked, policy),
            Strategy::QR => coarsen_r(mesh, marked, policy, false),
            Strategy::QRG => coarsen_rg_quad(mesh, marked, policy),
            Strategy::QRB => coarsen_rb(mesh, marked, policy),
        }
    }

    /// Refine every element `steps` times.
    pub fn refine_uniform(self, mesh: &Mesh, steps: usize) -> Result<Mesh> {
        let mut m = mesh.clone();
        for _ in 0..steps {
            let all: Vec<usize> = (0..m.num_elements()).collect();
            m = self.refine(&m, &all)?;
        }
        Ok(m)
    }

    /// Coarsen with every element marked until nothing changes. Returns the
    /// final mesh and the number of steps that changed the mesh.
    pub fn coarsen_to_fixpoint(self, mesh: &Mesh, max_steps: usize) -> Result<(Mesh, usize)> {
        let mut m = mesh.clone();
        for step in 0..max_steps {
            let all: Vec<usize> = (0..m.num_elements()).collect();
            let next = self.coarsen(&m, &all, MarkPolicy::AnyOf)?;
            if next == m {
                return Ok((m, step));
            }
            m = next;
        }
        Ok((m, max_steps))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Error for an unknown strategy tag.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown strategy `{0}` (expected one of t-r, t-rg, t-rgb, t-nvb, q-r, q-rg, q-rb)")]
pub struct UnknownStrategy(pub String);

impl FromStr for Strategy {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        Strategy::ALL
            .into_iter()
            .find(|st| st.tag() == t)
            .ok_or(UnknownStrategy(s.to_string()))
    }
}
