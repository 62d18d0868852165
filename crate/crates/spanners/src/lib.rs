//! Online spanner algorithms.
//!
//! * [`Spanner1D`]: points on a line, interval edges with the `eps/4` closeness rule.
//! * [`QuadtreeSpanner`]: representatives of a globally aligned grid hierarchy
//!   joined by the annulus rule.
//! * [`SteinerSpanner`]: the quadtree spanner as a primary layer, each of whose
//!   edges is realised in a second graph through per-bucket backbones.

pub mod one_d;
pub mod quadtree;
pub mod steiner;

pub use one_d::{check_intervals, opt_1d, Interval, Spanner1D, StructureReport};
pub use quadtree::{AnnulusRule, CellEntry, QuadtreeSpanner};
pub use steiner::{
    assign_buckets, build_direction_cover, build_slt, BackboneMode, BucketGeometry, BucketKey, BucketStats,
    DirectionCover, RouteStats, SltMode, SltTree, SteinerConfig, SteinerSpanner,
};

use spanlab_geometry::{EdgeId, GeomError, Point, SpannerGraph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpannerError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("vertices {0} and {1} are not connected")]
    Disconnected(u32, u32),
}

/// Common interface of the online algorithms.
pub trait OnlineSpanner {
    /// Inserts the next point of the stream and returns the edge ids created.
    fn insert(&mut self, p: &Point) -> Result<Vec<EdgeId>, SpannerError>;
    fn graph(&self) -> &SpannerGraph;
    fn eps(&self) -> f64;
    /// Stretch the construction promises between input points.
    fn stretch_bound(&self) -> f64;
    fn name(&self) -> &'static str;
}

pub(crate) fn check_eps(eps: f64) -> Result<(), SpannerError> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(SpannerError::Param(format!("eps must be positive, got {eps}")))
    }
}
