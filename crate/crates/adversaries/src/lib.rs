//! Inputs that force online spanners to pay.
//!
//! * [`one_d`]: the oblivious staged stream on `[0, 1]`.
//! * [`steiner`]: the adaptive planar adversary that watches the algorithm's
//!   graph and places each batch inside the lightest lenses around the
//!   current monotone path.
//! * [`l1`]: the L1 constructions whose cross pairs need a complete bipartite
//!   graph while a Manhattan network on the augmented set stays light.

pub mod l1;
pub mod lens;
pub mod one_d;
pub mod steiner;

pub use l1::{
    build_l1_2d, build_l1_2d_with, build_l1_highdim, build_manhattan_2d, build_manhattan_highdim,
    tree_weight_highdim, verify_bipartite_necessity, L1Construction,
};
pub use lens::{region_weight, Chord, Lens};
pub use one_d::{adv1d_points, forced_weight_1d, AdvItem, Adversary1D};
pub use steiner::{run_steiner_adversary, StageBatch, StageReport, SteinerAdversary, SteinerAdversaryConfig};

use spanlab_geometry::GeomError;
use spanlab_spanners::SpannerError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AdversaryError {
    #[error("invalid parameter: {0}")]
    Param(String),
    /// The geometry leaves no room for a batch with the required properties.
    #[error("geometric obstruction: {0}")]
    Obstruction(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Spanner(#[from] SpannerError),
}
