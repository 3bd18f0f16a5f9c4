// SPDX-License-Identifier: Apache-2.0

//! Adaptive refinement and history-free coarsening of 2D triangle and
//! quadrilateral meshes.
//!
//! Seven strategies are supported (see [`Strategy`]): red refinement of
//! triangles (`t-r`), red-green (`t-rg`), red-green-blue (`t-rgb`) and
//! newest-vertex bisection (`t-nvb`) for triangles, and red (`q-r`),
//! red-green (`q-rg`) and red-blue (`q-rb`) for quadrilaterals.
//!
//! Coarsening needs no refinement tree. Parents are recovered from node
//! ages (index order) and from the way refinement stores its output, so a
//! mesh can be saved, reloaded, and still be coarsened.
//!
//! ```
//! use adamesh::{MarkPolicy, Strategy};
//!
//! let s = Strategy::QR;
//! let fine = s.refine_uniform(&s.initial_mesh(), 2).unwrap();
//! assert_eq!(fine.num_elements(), 16);
//! let (coarse, steps) = s.coarsen_to_fixpoint(&fine, 10).unwrap();
//! assert_eq!(coarse, s.initial_mesh());
//! assert_eq!(steps, 2);
//! # let _ = MarkPolicy::AnyOf;
//! ```

pub mod bench;
pub mod coarsen_bisection;
pub mod coarsen_red;
pub mod coarsen_regular;
pub mod demo;
pub mod error;
pub mod io;
pub mod mesh;
pub mod refine;
pub mod strategy;
pub mod util;

pub use coarsen_red::{AdmissibleSet, MarkPolicy, Quartet, StencilWeights};
pub use error::{MeshError, Result};
pub use mesh::{GeomData, Mesh, MeshKind, Point, QualityReport};
pub use strategy::{Strategy, UnknownStrategy};
