//! Online spanner in R^d over a globally aligned grid hierarchy.
//!
//! Level `l` partitions space into cubes of side `u 2^-l` anchored at the
//! origin. The first point that lands in a cell is its representative for
//! good. When a point becomes the representative of a cell at some level, it
//! is joined to every representative of that level whose distance lies in the
//! annulus `[c1 a / eps, c2 a / eps]`, `a` being the side. Levels are
//! instantiated lazily as the diameter grows and the closest pair shrinks; a
//! freshly instantiated level replays the earlier points in insertion order.

use crate::{check_eps, OnlineSpanner, SpannerError};
use spanlab_geometry::{dist, EdgeId, GeomError, Metric, Point, SpannerGraph, VertexId};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusRule {
    pub c1: f64,
    pub c2: f64,
}

impl Default for AnnulusRule {
    fn default() -> Self {
        AnnulusRule { c1: 1.0, c2: 6.0 }
    }
}

impl AnnulusRule {
    /// Rejects `c2 < 2 c1`: consecutive levels would then leave distance gaps
    /// that no annulus covers.
    pub fn new(c1: f64, c2: f64) -> Result<Self, SpannerError> {
        if !(c1 > 0.0 && c2 > c1 && c2.is_finite()) {
            return Err(SpannerError::Param(format!("need 0 < c1 < c2, got c1={c1}, c2={c2}")));
        }
        if c2 < 2.0 * c1 {
            return Err(SpannerError::Param(format!("annulus rule leaves gaps: c2={c2} < 2*c1={}", 2.0 * c1)));
        }
        Ok(AnnulusRule { c1, c2 })
    }

    pub fn bounds(&self, side: f64, eps: f64) -> (f64, f64) {
        (self.c1 * side / eps, self.c2 * side / eps)
    }

    pub fn contains(&self, d: f64, side: f64, eps: f64) -> bool {
        let (lo, hi) = self.bounds(side, eps);
        lo <= d && d <= hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellEntry {
    pub representative: VertexId,
    pub occupants: u32,
}

#[derive(Clone, Debug, Default)]
struct Level {
    cells: HashMap<Vec<i64>, CellEntry>,
    /// Representatives in registration order.
    reps: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

#[derive(Clone, Debug)]
pub struct QuadtreeSpanner {
    eps: f64,
    dim: usize,
    base: f64,
    rule: AnnulusRule,
    graph: SpannerGraph,
    levels: BTreeMap<i32, Level>,
    /// Distinct input vertices in insertion order.
    points: Vec<VertexId>,
    diam: f64,
    dmin: f64,
}

impl QuadtreeSpanner {
    pub fn new(eps: f64, dim: usize) -> Result<Self, SpannerError> {
        Self::with_rule(eps, dim, AnnulusRule::default(), Metric::L2)
    }

    pub fn with_rule(eps: f64, dim: usize, rule: AnnulusRule, metric: Metric) -> Result<Self, SpannerError> {
        check_eps(eps)?;
        let rule = AnnulusRule::new(rule.c1, rule.c2)?;
        if dim == 0 {
            return Err(SpannerError::Param("dimension must be positive".into()));
        }
        Ok(QuadtreeSpanner {
            eps,
            dim,
            base: 1.0,
            rule,
            graph: SpannerGraph::new(dim, metric),
            levels: BTreeMap::new(),
            points: Vec::new(),
            diam: 0.0,
            dmin: f64::INFINITY,
        })
    }

    pub fn rule(&self) -> AnnulusRule {
        self.rule
    }

    pub fn side(&self, level: i32) -> f64 {
        self.base * (-level as f64).exp2()
    }

    pub fn instantiated_levels(&self) -> Vec<i32> {
        self.levels.keys().copied().collect()
    }

    /// Edges recorded at level `l` (empty for an uninstantiated level).
    pub fn level_edges(&self, l: i32) -> &[EdgeId] {
        self.levels.get(&l).map_or(&[], |lv| &lv.edges)
    }

    pub fn cell_entry(&self, l: i32, p: &[f64]) -> Option<CellEntry> {
        self.levels.get(&l)?.cells.get(&self.cell_of(p, l)).copied()
    }

    fn cell_of(&self, p: &[f64], l: i32) -> Vec<i64> {
        let a = self.side(l);
        p.iter().map(|x| (x / a).floor() as i64).collect()
    }

    /// Levels whose annulus can contain some current pairwise distance.
    fn needed_levels(&self) -> Option<(i32, i32)> {
        if self.points.len() < 2 {
            return None;
        }
        let (c1, c2, e) = (self.rule.c1, self.rule.c2, self.eps);
        // Coarsest level: c1 a / eps <= diam.
        let mut top = (c1 / (e * self.diam / self.base)).log2().ceil() as i32;
        while c1 * self.side(top - 1) / e <= self.diam {
            top -= 1;
        }
        while c1 * self.side(top) / e > self.diam {
            top += 1;
        }
        // Finest level: c2 a / eps >= dmin.
        let mut bot = (c2 / (e * self.dmin / self.base)).log2().floor() as i32;
        while c2 * self.side(bot + 1) / e >= self.dmin {
            bot += 1;
        }
        while c2 * self.side(bot) / e < self.dmin {
            bot -= 1;
        }
        Some((top, bot))
    }

    /// Joins the new representative `r` to the annulus representatives at level `l`.
    fn connect(&mut self, l: i32, r: VertexId, cell: &[i64], new: &mut Vec<EdgeId>) {
        let side = self.side(l);
        let (_, hi) = self.rule.bounds(side, self.eps);
        let lv = &self.levels[&l];
        let reach = (hi / side).ceil() as i64 + 1;
        let window = (2 * reach + 1) as f64;
        let mut cands: Vec<VertexId> = if window.powi(self.dim as i32) < lv.reps.len() as f64 {
            let mut out = Vec::new();
            let mut off = vec![-reach; self.dim];
            loop {
                let c: Vec<i64> = cell.iter().zip(&off).map(|(a, b)| a + b).collect();
                if let Some(ent) = lv.cells.get(&c) {
                    out.push(ent.representative);
                }
                let mut k = 0;
                while k < self.dim {
                    off[k] += 1;
                    if off[k] <= reach {
                        break;
                    }
                    off[k] = -reach;
                    k += 1;
                }
                if k == self.dim {
                    break;
                }
            }
            out.sort_unstable();
            out
        } else {
            lv.reps.clone()
        };
        cands.retain(|&s| s != r);
        let pr = self.graph.coords(r).to_vec();
        let mut recorded = Vec::new();
        for s in cands {
            let d = dist(&pr, self.graph.coords(s), self.graph.metric());
            if !self.rule.contains(d, side, self.eps) {
                continue;
            }
            let e = match self.graph.add_edge(s, r).expect("known vertices") {
                Some(e) => {
                    new.push(e);
                    e
                }
                None => self.graph.edge_between(s, r).expect("existing edge"),
            };
            recorded.push(e);
        }
        self.levels.get_mut(&l).unwrap().edges.extend(recorded);
    }

    /// Registers `v` at level `l`, connecting it if it opens a new cell.
    fn register(&mut self, l: i32, v: VertexId, new: &mut Vec<EdgeId>) {
        let cell = self.cell_of(self.graph.coords(v), l);
        let lv = self.levels.get_mut(&l).unwrap();
        match lv.cells.get_mut(&cell) {
            Some(ent) => ent.occupants += 1,
            None => {
                lv.cells.insert(cell.clone(), CellEntry { representative: v, occupants: 1 });
                self.connect(l, v, &cell, new);
                self.levels.get_mut(&l).unwrap().reps.push(v);
            }
        }
    }

    fn instantiate(&mut self, l: i32, new: &mut Vec<EdgeId>) {
        self.levels.insert(l, Level::default());
        for i in 0..self.points.len() - 1 {
            let v = self.points[i];
            self.register(l, v, new);
        }
    }

    pub fn qt_insert(&mut self, p: &[f64]) -> Result<Vec<EdgeId>, SpannerError> {
        if p.len() != self.dim {
            return Err(GeomError::DimensionMismatch { expected: self.dim, got: p.len() }.into());
        }
        let (v, link) = self.graph.add_input(p)?;
        if let Some(e) = link {
            return Ok(vec![e]);
        }
        for &q in &self.points {
            let d = self.graph.distance(q, v);
            self.diam = self.diam.max(d);
            self.dmin = self.dmin.min(d);
        }
        self.points.push(v);
        let mut new = Vec::new();
        if let Some((top, bot)) = self.needed_levels() {
            for l in top..=bot {
                if !self.levels.contains_key(&l) {
                    self.instantiate(l, &mut new);
                }
            }
        }
        let levels: Vec<i32> = self.levels.keys().copied().collect();
        for l in levels {
            self.register(l, v, &mut new);
        }
        Ok(new)
    }

    /// Rows `(level, |E_l|, weight of E_l)` for every instantiated level.
    pub fn level_table(&self) -> Vec<(i32, usize, f64)> {
        self.levels
            .iter()
            .map(|(&l, lv)| (l, lv.edges.len(), lv.edges.iter().map(|&e| self.graph.edge(e).weight).sum()))
            .collect()
    }
}

impl OnlineSpanner for QuadtreeSpanner {
    fn insert(&mut self, p: &Point) -> Result<Vec<EdgeId>, SpannerError> {
        self.qt_insert(p.coords())
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
        "quadtree"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_validation() {
        assert!(AnnulusRule::new(1.0, 6.0).is_ok());
        assert!(AnnulusRule::new(2.0, 1.0).is_err());
        assert!(AnnulusRule::new(1.0, 1.5).is_err());
        assert!(QuadtreeSpanner::with_rule(0.5, 2, AnnulusRule { c1: 1.0, c2: 1.9 }, Metric::L2).is_err());
    }

    #[test]
    fn single_point_has_no_edges() {
        let mut q = QuadtreeSpanner::new(0.5, 2).unwrap();
        assert!(q.qt_insert(&[0.3, 0.3]).unwrap().is_empty());
        assert!(q.instantiated_levels().is_empty());
        assert!(q.level_edges(3).is_empty());
    }

    #[test]
    fn two_points_meet_in_every_covering_annulus() {
        let mut q = QuadtreeSpanner::new(0.5, 2).unwrap();
        q.qt_insert(&[0.0, 0.0]).unwrap();
        let new = q.qt_insert(&[1.0, 0.0]).unwrap();
        assert_eq!(new.len(), 1);
        // side 1/2: annulus [1, 6] (closed, so 1 is inside); side 1/4: [0.5, 3];
        // side 1/8: [0.25, 1.5]; side 1: [2, 12] and side 1/16: [0.125, 0.75] miss.
        for l in 1..=3 {
            assert_eq!(q.level_edges(l), &[new[0]]);
        }
        assert_eq!(q.instantiated_levels(), vec![1, 2, 3]);
    }

    #[test]
    fn duplicate_point_only_links() {
        let mut q = QuadtreeSpanner::new(0.5, 2).unwrap();
        q.qt_insert(&[0.0, 0.0]).unwrap();
        q.qt_insert(&[1.0, 0.0]).unwrap();
        let new = q.qt_insert(&[1.0, 0.0]).unwrap();
        assert_eq!(new.len(), 1);
        assert_eq!(q.graph().edge(new[0]).weight, 0.0);
        assert_eq!(q.cell_entry(2, &[1.0, 0.0]).unwrap().occupants, 1);
    }
}
