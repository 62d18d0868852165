//! Online spanner for points on a line.
//!
//! Every edge is an interval. A new point `x` strictly inside the current span
//! looks up the shortest edge `pq` containing it and its sorted neighbours
//! `a < x < b`. If `x` is far from both `p` and `q` (more than `eps/4 |pq|`)
//! both `ax` and `xb` are added, otherwise only the edge towards the closer of
//! `p`, `q`. The edges stay laminar, which makes the shortest containing edge
//! of a gap between consecutive points well defined; it is cached per gap.

use crate::{check_eps, OnlineSpanner, SpannerError};
use spanlab_geometry::{EdgeId, Metric, Point, SpannerGraph, VertexId, REL_TOL};
use std::cmp::Ordering;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.total_cmp(&o.0)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

fn key(x: f64) -> Key {
    Key(if x == 0.0 { 0.0 } else { x })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub left: f64,
    pub right: f64,
    /// Index (in the input sequence) of the point whose insertion created the edge.
    pub step: usize,
    pub edge: EdgeId,
}

impl Interval {
    pub fn len(&self) -> f64 {
        self.right - self.left
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct StructureReport {
    /// Edges whose interior held an earlier point when they were added.
    pub p1: Vec<EdgeId>,
    /// Crossing pairs.
    pub p2: Vec<(EdgeId, EdgeId)>,
    /// Nested pairs `(outer, inner)` violating `|inner| <= (1 - eps/4) |outer|`.
    pub p3: Vec<(EdgeId, EdgeId)>,
}

impl StructureReport {
    pub fn is_clean(&self) -> bool {
        self.p1.is_empty() && self.p2.is_empty() && self.p3.is_empty()
    }
}

/// Checks (P1)-(P3) on a set of interval edges. `points` holds every distinct
/// coordinate with the input index of its first occurrence.
pub fn check_intervals(intervals: &[Interval], points: &[(f64, usize)], eps: f64) -> StructureReport {
    let mut rep = StructureReport::default();

    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Sparse table of minimum insertion step over coordinate-sorted points.
    let n = pts.len();
    let mut table: Vec<Vec<usize>> = vec![pts.iter().map(|p| p.1).collect()];
    let mut k = 1;
    while 2 * k <= n {
        let prev = table.last().unwrap();
        let row: Vec<usize> = (0..=n - 2 * k).map(|i| prev[i].min(prev[i + k])).collect();
        table.push(row);
        k *= 2;
    }
    let range_min = |lo: usize, hi: usize| -> usize {
        let len = hi - lo;
        let lvl = (usize::BITS - 1 - len.leading_zeros()) as usize;
        table[lvl][lo].min(table[lvl][hi - (1 << lvl)])
    };
    for iv in intervals {
        let lo = pts.partition_point(|p| p.0 <= iv.left);
        let hi = pts.partition_point(|p| p.0 < iv.right);
        if lo < hi && range_min(lo, hi) < iv.step {
            rep.p1.push(iv.edge);
        }
    }

    let mut order: Vec<&Interval> = intervals.iter().collect();
    order.sort_by(|a, b| a.left.total_cmp(&b.left).then(b.right.total_cmp(&a.right)));
    let mut stack: Vec<&Interval> = Vec::new();
    for iv in order {
        while let Some(top) = stack.last() {
            if top.right <= iv.left {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(top) = stack.last() {
            if iv.right <= top.right {
                if iv.len() > (1.0 - eps / 4.0) * top.len() * (1.0 + REL_TOL) {
                    rep.p3.push((top.edge, iv.edge));
                }
            } else {
                rep.p2.push((top.edge, iv.edge));
                // A crossing interval cannot be a parent of later ones in a laminar
                // family; keep scanning from the enclosing chain.
                continue;
            }
        }
        stack.push(iv);
    }
    rep
}

/// Weight of the offline optimum on a line: the leftmost-to-rightmost path.
pub fn opt_1d(points: &[f64]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    hi - lo
}

#[derive(Clone, Debug)]
pub struct Spanner1D {
    eps: f64,
    graph: SpannerGraph,
    /// Distinct coordinates with their first vertex and input index.
    sorted: BTreeMap<Key, (VertexId, usize)>,
    /// Left end of every gap between consecutive points -> shortest edge containing it.
    gap_edge: BTreeMap<Key, EdgeId>,
    intervals: Vec<Interval>,
    inserted: usize,
}

impl Spanner1D {
    pub fn new(eps: f64) -> Result<Self, SpannerError> {
        check_eps(eps)?;
        Ok(Spanner1D {
            eps,
            graph: SpannerGraph::new(1, Metric::L2),
            sorted: BTreeMap::new(),
            gap_edge: BTreeMap::new(),
            intervals: Vec::new(),
            inserted: 0,
        })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Distinct coordinates with the input index of their first occurrence.
    pub fn points(&self) -> Vec<(f64, usize)> {
        self.sorted.iter().map(|(k, &(_, s))| (k.0, s)).collect()
    }

    /// Consecutive pairs of the sorted point set.
    pub fn monotone_path(&self) -> Vec<(f64, f64)> {
        let xs: Vec<f64> = self.sorted.keys().map(|k| k.0).collect();
        xs.windows(2).map(|w| (w[0], w[1])).collect()
    }

    pub fn check_structure(&self) -> StructureReport {
        check_intervals(&self.intervals, &self.points(), self.eps)
    }

    /// Shortest edge strictly containing `x`, by scanning every interval.
    pub fn containing_edge_scan(&self, x: f64) -> Option<Interval> {
        self.intervals
            .iter()
            .filter(|iv| iv.left < x && x < iv.right)
            .min_by(|a, b| a.len().total_cmp(&b.len()).then(a.step.cmp(&b.step)))
            .copied()
    }

    /// Shortest edge strictly containing `x`, via the gap index.
    pub fn containing_edge(&self, x: f64) -> Option<Interval> {
        let (l, _) = self.sorted.range(..key(x)).next_back()?;
        self.sorted.range((std::ops::Bound::Excluded(key(x)), std::ops::Bound::Unbounded)).next()?;
        let e = *self.gap_edge.get(l)?;
        // Intervals are pushed in edge-id order.
        let i = self.intervals.binary_search_by_key(&e, |iv| iv.edge).ok()?;
        Some(self.intervals[i])
    }

    fn add_interval(&mut self, u: VertexId, v: VertexId, step: usize) -> EdgeId {
        let e = self.graph.add_edge(u, v).expect("valid vertices").expect("interval edges are new");
        let (a, b) = (self.graph.coords(u)[0], self.graph.coords(v)[0]);
        self.intervals.push(Interval { left: a.min(b), right: a.max(b), step, edge: e });
        e
    }

    pub fn insert_1d(&mut self, x: f64) -> Result<Vec<EdgeId>, SpannerError> {
        let step = self.inserted;
        let (vx, link) = self.graph.add_input(&[x])?;
        self.inserted += 1;
        if let Some(e) = link {
            return Ok(vec![e]);
        }
        let kx = key(x);
        let left = self.sorted.range(..kx).next_back().map(|(k, &(v, _))| (*k, v));
        let right = self
            .sorted
            .range((std::ops::Bound::Excluded(kx), std::ops::Bound::Unbounded))
            .next()
            .map(|(k, &(v, _))| (*k, v));
        self.sorted.insert(kx, (vx, step));
        let mut new = Vec::new();
        match (left, right) {
            (None, None) => {}
            (Some((kl, vl)), None) => {
                let e = self.add_interval(vl, vx, step);
                self.gap_edge.insert(kl, e);
                new.push(e);
            }
            (None, Some((_, vr))) => {
                let e = self.add_interval(vx, vr, step);
                self.gap_edge.insert(kx, e);
                new.push(e);
            }
            (Some((kl, va)), Some((_, vb))) => {
                let pq = *self.gap_edge.get(&kl).expect("every gap inside the span is covered");
                let ed = self.graph.edge(pq);
                let (p, q) = {
                    let (s, t) = (self.graph.coords(ed.u)[0], self.graph.coords(ed.v)[0]);
                    (s.min(t), s.max(t))
                };
                let (px, xq) = (x - p, q - x);
                let (mut left_edge, mut right_edge) = (pq, pq);
                if px.min(xq) > self.eps / 4.0 * (q - p) {
                    left_edge = self.add_interval(va, vx, step);
                    right_edge = self.add_interval(vx, vb, step);
                    new.push(left_edge);
                    new.push(right_edge);
                } else if px <= xq {
                    left_edge = self.add_interval(va, vx, step);
                    new.push(left_edge);
                } else {
                    right_edge = self.add_interval(vx, vb, step);
                    new.push(right_edge);
                }
                self.gap_edge.insert(kl, left_edge);
                self.gap_edge.insert(kx, right_edge);
            }
        }
        Ok(new)
    }
}

impl OnlineSpanner for Spanner1D {
    fn insert(&mut self, p: &Point) -> Result<Vec<EdgeId>, SpannerError> {
        if p.dim() != 1 {
            return Err(spanlab_geometry::GeomError::DimensionMismatch { expected: 1, got: p.dim() }.into());
        }
        self.insert_1d(p.x())
    }

    fn graph(&self) -> &SpannerGraph {
        &self.graph
    }

    fn eps(&self) -> f64 {
        self.eps
    }

    fn stretch_bound(&self) -> f64 {
        1.0 + self.eps
    }

    fn name(&self) -> &'static str {
        "1d"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(eps: f64, xs: &[f64]) -> Spanner1D {
        let mut s = Spanner1D::new(eps).unwrap();
        for &x in xs {
            s.insert_1d(x).unwrap();
        }
        s
    }

    fn spans(s: &Spanner1D) -> Vec<(f64, f64)> {
        s.intervals().iter().map(|i| (i.left, i.right)).collect()
    }

    #[test]
    fn hand_executed_examples() {
        assert_eq!(spans(&run(1.0, &[0.0, 1.0])), vec![(0.0, 1.0)]);
        assert_eq!(spans(&run(1.0, &[0.0, 1.0, 0.5])), vec![(0.0, 1.0), (0.0, 0.5), (0.5, 1.0)]);
        assert_eq!(spans(&run(1.0, &[0.0, 1.0, 0.1])), vec![(0.0, 1.0), (0.0, 0.1)]);
        assert_eq!(spans(&run(1.0, &[0.0, 1.0, 0.9])), vec![(0.0, 1.0), (0.9, 1.0)]);
        // Exactly at the eps/4 boundary the single-edge branch is taken.
        assert_eq!(spans(&run(1.0, &[0.0, 1.0, 0.25])), vec![(0.0, 1.0), (0.0, 0.25)]);
    }

    #[test]
    fn outside_points_join_nearest() {
        let s = run(0.5, &[0.0, 1.0, 3.0, -2.0]);
        assert_eq!(spans(&s), vec![(0.0, 1.0), (1.0, 3.0), (-2.0, 0.0)]);
    }

    #[test]
    fn duplicates_only_link() {
        let mut s = run(0.5, &[0.0, 1.0]);
        let e = s.insert_1d(1.0).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(s.graph().edge(e[0]).weight, 0.0);
        assert_eq!(s.intervals().len(), 1);
    }

    #[test]
    fn injected_violations_are_reported() {
        let pts = [(0.0, 0), (1.0, 1), (0.4, 2), (0.6, 3)];
        let cross = [
            Interval { left: 0.0, right: 0.6, step: 3, edge: 0 },
            Interval { left: 0.4, right: 1.0, step: 3, edge: 1 },
        ];
        let r = check_intervals(&cross, &pts, 1.0);
        assert_eq!(r.p2, vec![(0, 1)]);
        // (0, 0.6) was added at step 3 while 0.4 (step 2) sat inside it.
        assert_eq!(r.p1, vec![0]);

        let nested = [
            Interval { left: 0.0, right: 1.0, step: 1, edge: 0 },
            Interval { left: 0.05, right: 0.95, step: 3, edge: 1 },
        ];
        let pts = [(0.0, 0), (1.0, 1), (0.05, 2), (0.95, 3)];
        let r = check_intervals(&nested, &pts, 1.0);
        assert_eq!(r.p3, vec![(0, 1)]);
        assert!(r.p1.is_empty() && r.p2.is_empty());
        assert!(run(1.0, &[0.0, 1.0, 0.5]).check_structure().is_clean());
    }

    #[test]
    fn opt_1d_examples() {
        assert_eq!(opt_1d(&[0.0, 1.0]), 1.0);
        assert_eq!(opt_1d(&[0.0, 0.5, 1.0]), 1.0);
        assert_eq!(opt_1d(&[-2.0, 3.0, 5.0]), 7.0);
        assert_eq!(opt_1d(&[4.0]), 0.0);
    }
}
