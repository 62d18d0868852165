//! Geometry primitives shared by every spanner construction in the workspace.
//!
//! The central type is [`SpannerGraph`], an append-only weighted graph over input
//! and Steiner vertices. Edges are never removed; the only structural change an
//! edge can undergo is subdivision by a Steiner point, which replaces it with two
//! collinear parts and is recorded in the edge log.

mod error;
mod graph;
pub mod io;
mod metric;
mod mst;
mod paths;
mod point;
mod predicates;

pub use error::GeomError;
pub use graph::{Edge, EdgeId, LogEntry, SpannerGraph, VertexId, VertexKind};
pub use metric::{dist, distance, Metric};
pub use mst::{mst_weight, mst_weight_slices};
pub use paths::{
    dijkstra, shortest_path, shortest_path_weight, verify_stretch, Csr, PairSet, StretchReport,
    Witness,
};
pub use point::Point;
pub use predicates::{angle_between_lines, ellipse_contains, near_parallel_weight};

/// Relative tolerance used for every geometric comparison.
pub const REL_TOL: f64 = 1e-9;

/// `a <= b` up to the shared relative tolerance.
pub fn le_tol(a: f64, b: f64) -> bool {
    a <= b + REL_TOL * b.abs().max(a.abs()).max(1e-300)
}
