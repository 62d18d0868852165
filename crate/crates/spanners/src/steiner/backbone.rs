//! Grid lines materialized on demand.
//!
//! A track is one lattice line of a bucket, parameterized by an integer
//! coordinate. It remembers which lattice points exist as vertices and which
//! consecutive pairs are joined; joining a pair whose gap already holds an
//! edge subdivides that edge instead of adding weight.

use spanlab_geometry::{EdgeId, SpannerGraph, VertexId};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum LineKey {
    /// Line along the bucket direction at the given cross coordinates.
    Row(Vec<i64>),
    /// Line along cross axis `axis` at along coordinate `u`; `rest` are the
    /// other cross coordinates.
    Col { axis: usize, u: i64, rest: Vec<i64> },
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Track {
    /// Parameter -> (vertex, edge to the next materialized point if joined).
    pts: BTreeMap<i64, (VertexId, Option<EdgeId>)>,
}

fn join(g: &mut SpannerGraph, a: VertexId, b: VertexId) -> Option<EdgeId> {
    if a == b {
        return None;
    }
    match g.add_edge(a, b).expect("track vertices exist") {
        Some(e) => Some(e),
        None => g.edge_between(a, b),
    }
}

impl Track {
    /// Vertex at parameter `t`, creating it (and splitting a spanning edge) if needed.
    pub fn point(&mut self, g: &mut SpannerGraph, t: i64, at: &dyn Fn(i64) -> Vec<f64>) -> VertexId {
        if let Some(&(v, _)) = self.pts.get(&t) {
            return v;
        }
        let c = at(t);
        let prev = self.pts.range(..t).next_back().map(|(&a, &x)| (a, x));
        if let Some((a, (va, Some(e)))) = prev {
            let (_, &(vb, _)) = self.pts.range(t..).next().expect("joined edge has an end");
            match g.subdivide(e, &c) {
                Ok((x, [e1, e2])) => {
                    self.pts.insert(a, (va, Some(e1)));
                    self.pts.insert(t, (x, Some(e2)));
                    return x;
                }
                Err(_) => {
                    // The point collides with structure the split would
                    // duplicate; keep the old edge and add the two halves.
                    let (x, _) = g.add_steiner(&c).expect("finite coordinates");
                    let e1 = join(g, va, x);
                    let e2 = join(g, x, vb);
                    self.pts.insert(a, (va, e1));
                    self.pts.insert(t, (x, e2));
                    return x;
                }
            }
        }
        let (x, _) = g.add_steiner(&c).expect("finite coordinates");
        self.pts.insert(t, (x, None));
        x
    }

    /// Makes `[t0, t1]` a connected path through the materialized points.
    pub fn span(&mut self, g: &mut SpannerGraph, t0: i64, t1: i64, at: &dyn Fn(i64) -> Vec<f64>) {
        let (t0, t1) = (t0.min(t1), t0.max(t1));
        self.point(g, t0, at);
        self.point(g, t1, at);
        self.link_range(g, t0, t1);
    }

    /// Materializes every integer point of `[t0, t1]` and joins them.
    pub fn unit_span(&mut self, g: &mut SpannerGraph, t0: i64, t1: i64, at: &dyn Fn(i64) -> Vec<f64>) {
        let (t0, t1) = (t0.min(t1), t0.max(t1));
        for t in t0..=t1 {
            self.point(g, t, at);
        }
        self.link_range(g, t0, t1);
    }

    fn link_range(&mut self, g: &mut SpannerGraph, t0: i64, t1: i64) {
        let keys: Vec<i64> = self.pts.range(t0..=t1).map(|(&k, _)| k).collect();
        for w in keys.windows(2) {
            let (va, next) = self.pts[&w[0]];
            if next.is_none() {
                let vb = self.pts[&w[1]].0;
                let e = join(g, va, vb);
                self.pts.get_mut(&w[0]).unwrap().1 = e;
            }
        }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.pts.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spanlab_geometry::Metric;

    #[test]
    fn spans_split_instead_of_overlapping() {
        let mut g = SpannerGraph::new(2, Metric::L2);
        let at = |t: i64| vec![t as f64, 0.0];
        let mut tr = Track::default();
        tr.span(&mut g, 0, 10, &at);
        assert_eq!(g.weight(), 10.0);
        tr.span(&mut g, 3, 12, &at);
        assert_eq!(g.weight(), 12.0);
        assert_eq!(tr.len(), 4);
        tr.unit_span(&mut g, 12, 0, &at);
        assert_eq!(g.weight(), 12.0);
        assert_eq!(g.num_live_edges(), 12);
        assert_eq!(g.replay_weight(), 12.0);
    }
}
