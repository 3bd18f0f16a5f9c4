// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Structural and numerical errors raised by mesh operations.
///
/// Element identifiers are unified: triangles first (`0..elements3.len()`),
/// then quadrilaterals.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshError {
    #[error("element {element} references node {node}, but the mesh has {len} nodes")]
    NodeOutOfRange { element: usize, node: usize, len: usize },

    #[error("{table} entry {entry} references node {node}, but the mesh has {len} nodes")]
    EntryOutOfRange {
        table: &'static str,
        entry: usize,
        node: usize,
        len: usize,
    },

    #[error("element {element} repeats a node")]
    RepeatedNode { element: usize },

    #[error("element {element} is not counterclockwise (signed area {area:e})")]
    NotCounterclockwise { element: usize, area: f64 },

    #[error("edge ({a}, {b}) is shared by more than two elements")]
    NonManifoldEdge { a: usize, b: usize },

    #[error("n0 = {n0} exceeds the number of nodes ({len})")]
    InitialNodeCount { n0: usize, len: usize },

    #[error("irregular entry {entry} is invalid: {reason}")]
    InvalidIrregular { entry: usize, reason: &'static str },

    #[error("boundary segment ({a}, {b}) is not an element edge")]
    BoundaryNotEdge { a: usize, b: usize },

    #[error("marked element {index} is out of range (mesh has {len} elements)")]
    MarkOutOfRange { index: usize, len: usize },

    #[error("block counter {counter} = {value} exceeds the {len} stored elements")]
    BlockCounter {
        counter: &'static str,
        value: usize,
        len: usize,
    },

    #[error("malformed {block} block at element {element}")]
    MalformedBlock { block: &'static str, element: usize },

    #[error("no pattern closes the hanging nodes of element {element}")]
    UnmatchedPattern { element: usize },

    #[error("element {element} is degenerate")]
    Degenerate { element: usize },

    #[error("operation expects {expected}")]
    WrongKind { expected: &'static str },

    #[error("irregular table references node {node}, which no element uses")]
    DanglingHangingNode { node: usize },
}

pub type Result<T, E = MeshError> = std::result::Result<T, E>;
