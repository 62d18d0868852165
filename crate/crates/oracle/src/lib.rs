//! Offline stand-ins for OPT.
//!
//! * [`greedy_spanner`]: path-greedy over pairs by increasing distance.
//! * [`opt_lower_bound`]: MST weight, a lower bound for any connected spanner.
//! * [`exact_opt_small`]: branch and bound over edge subsets for `n <= 9`.

mod exact;
mod greedy;

pub use exact::{exact_opt_small, EXACT_MAX_N};
pub use greedy::greedy_spanner;

use serde::{Deserialize, Serialize};
use spanlab_geometry::{dist, mst_weight, GeomError, Metric, Point, SpannerGraph};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("exact search supports at most {max} points, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Greedy,
    Mst,
    Exact,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Greedy => "greedy",
            Method::Mst => "mst",
            Method::Exact => "exact",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, OracleError> {
        match s {
            "greedy" => Ok(Method::Greedy),
            "mst" => Ok(Method::Mst),
            "exact" => Ok(Method::Exact),
            _ => Err(OracleError::Param(format!("unknown method '{s}' (greedy, mst, exact)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub weight: f64,
    /// Edges as pairs of point indices, `i < j`.
    pub edges: Vec<(usize, usize)>,
    pub method: Method,
    /// Set only by the exact search, whose optimality is proven.
    pub certified: bool,
}

impl OracleResult {
    /// The result as a graph whose inputs are `points` in order.
    pub fn to_graph(&self, points: &[Point], m: Metric) -> Result<SpannerGraph, OracleError> {
        let dim = points.first().map_or(1, Point::dim);
        let mut g = SpannerGraph::new(dim, m);
        let ids = points.iter().map(|p| g.add_input(p.coords()).map(|(v, _)| v)).collect::<Result<Vec<_>, _>>()?;
        for &(i, j) in &self.edges {
            if ids[i] != ids[j] {
                g.add_edge(ids[i], ids[j])?;
            }
        }
        Ok(g)
    }
}

/// Weight of a minimum spanning tree; every connected spanner weighs at least this.
pub fn opt_lower_bound(points: &[Point], m: Metric) -> f64 {
    mst_weight(points, m)
}

/// Minimum spanning tree with its edges (Prim, quadratic).
pub fn mst_oracle(points: &[Point], m: Metric) -> OracleResult {
    let n = points.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut weight = 0.0;
    if n > 0 {
        let mut best = vec![(f64::INFINITY, 0usize); n];
        let mut done = vec![false; n];
        let mut cur = 0;
        done[0] = true;
        for _ in 1..n {
            let mut next = usize::MAX;
            for j in 0..n {
                if done[j] {
                    continue;
                }
                let d = dist(points[cur].coords(), points[j].coords(), m);
                if d < best[j].0 {
                    best[j] = (d, cur);
                }
                if next == usize::MAX || best[j].0 < best[next].0 {
                    next = j;
                }
            }
            done[next] = true;
            weight += best[next].0;
            let (a, b) = (best[next].1, next);
            edges.push((a.min(b), a.max(b)));
            cur = next;
        }
    }
    OracleResult { weight, edges, method: Method::Mst, certified: false }
}

pub(crate) fn check_input(points: &[Point], t: f64) -> Result<(), OracleError> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(OracleError::Param(format!("stretch must be a finite value >= 1, got {t}")));
    }
    if let Some(p) = points.first() {
        if points.iter().any(|q| q.dim() != p.dim()) {
            return Err(OracleError::Param("points of mixed dimension".into()));
        }
    }
    Ok(())
}

/// All pairs `(i, j, |ij|)`, `i < j`, by increasing distance then index.
pub(crate) fn sorted_pairs(points: &[Point], m: Metric) -> Vec<(usize, usize, f64)> {
    let n = points.len();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j, dist(points[i].coords(), points[j].coords(), m)));
        }
    }
    pairs.sort_by(|a, b| a.2.total_cmp(&b.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    pairs
}
