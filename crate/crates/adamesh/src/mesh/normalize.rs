// SPDX-License-Identifier: Apache-2.0

use super::Mesh;

/// Cyclically rotate an element so its oldest (smallest) node comes first.
pub fn rotate_oldest_first<const N: usize>(e: [usize; N]) -> [usize; N] {
    let k = (0..N).min_by_key(|&k| e[k]).unwrap_or(0);
    let mut out = e;
    for i in 0..N {
        out[i] = e[(k + i) % N];
    }
    out
}

/// Copy of `mesh` with every element rotated oldest-first.
///
/// Only a rotation: orientation and element order are preserved. Do not
/// apply this to meshes whose node positions carry meaning (reference edges
/// of bisection meshes, green triangle groups).
pub fn normalize_oldest_first(mesh: &Mesh) -> Mesh {
    let mut m = mesh.clone();
    normalize_oldest_first_in_place(&mut m);
    m
}

pub fn normalize_oldest_first_in_place(mesh: &mut Mesh) {
    for e in &mut mesh.elements3 {
        *e = rotate_oldest_first(*e);
    }
    for e in &mut mesh.elements4 {
        *e = rotate_oldest_first(*e);
    }
}
