//! Two-layer online Steiner spanner.
//!
//! The quadtree spanner runs unchanged as the primary layer G1. Every G1
//! edge `ab` is realised in the output graph G2: it is assigned to buckets
//! (length class, cover direction, rectangle), and inside a bucket the route
//! runs `a -> cell corner -> grid row -> tree to the median -> median ->
//! tree -> grid row -> cell corner -> b`. A route is used only if its length
//! is at most `(1 + eps) |ab|`; otherwise `ab` itself goes into G2. Either
//! way every G1 edge is `(1 + eps)`-approximated, so G2 has stretch
//! `(1 + eps)^2 < 1 + 3 eps`.
//!
//! In lazy mode only the pieces of a chosen route are materialized. Full
//! mode builds the whole backbone of every assigned bucket (all grid lines,
//! both trees of every square) and connects endpoints to all `2^d` corners.

mod backbone;
pub mod bucket;
pub mod cover;
pub mod slt;

pub use bucket::{assign_buckets, length_class, BucketGeometry, BucketKey, Frame};
pub use cover::{build_direction_cover, line_angle, DirectionCover};
pub use slt::{build_slt, build_slt_with, SltMode, SltTree, DEFAULT_KAPPA0};

use crate::{check_eps, AnnulusRule, OnlineSpanner, QuadtreeSpanner, SpannerError};
use backbone::{LineKey, Track};
use spanlab_geometry::{shortest_path, EdgeId, GeomError, Metric, Point, SpannerGraph, VertexId};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BackboneMode {
    #[default]
    Lazy,
    Full,
}

impl std::str::FromStr for BackboneMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lazy" => Ok(BackboneMode::Lazy),
            "full" => Ok(BackboneMode::Full),
            _ => Err(format!("unknown backbone mode '{s}' (expected lazy or full)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SteinerConfig {
    pub eps: f64,
    pub dim: usize,
    pub slt: SltMode,
    pub backbone: BackboneMode,
    pub rule: AnnulusRule,
    /// Lengths of a class span `[scale/eps, 2 scale/eps)` grid units.
    pub scale: f64,
    /// Cover radius as a multiple of `eps^(1/2)`.
    pub cone: f64,
    /// Root offset as a multiple of the shortest length of a class.
    pub beta: f64,
    /// Tree root-stretch as a fraction of `eps`.
    pub slt_eps: f64,
    pub kappa0: f64,
}

impl SteinerConfig {
    pub fn new(eps: f64, dim: usize) -> Self {
        SteinerConfig {
            eps,
            dim,
            slt: SltMode::Dyadic,
            backbone: BackboneMode::Lazy,
            rule: AnnulusRule::default(),
            scale: 24.0,
            cone: 0.125,
            beta: 0.25,
            slt_eps: 0.5,
            kappa0: DEFAULT_KAPPA0,
        }
    }
}

/// Per-bucket accounting. Weights are world lengths.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BucketStats {
    pub backbone_weight: f64,
    pub connector_weight: f64,
    /// Live edges added on behalf of this bucket.
    pub edges: usize,
    /// G1 edges routed through this bucket.
    pub primary_edges: usize,
    pub built: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RouteStats {
    pub primary_edges: u64,
    /// Realised through a backbone.
    pub routed: u64,
    /// Realised by the edge itself because no certified route existed.
    pub direct: u64,
    /// Subset of `direct` with no bucket at all.
    pub unbucketed: u64,
}

#[derive(Clone, Debug)]
struct End {
    corner: Vec<i64>,
    side_u: i64,
    root_u: i64,
    square: i64,
    right: bool,
}

#[derive(Clone, Debug)]
struct Route {
    key: BucketKey,
    /// Ends for the first and second endpoint as passed to `plan`.
    ends: [End; 2],
    len: f64,
}

#[derive(Clone, Debug)]
pub struct SteinerSpanner {
    cfg: SteinerConfig,
    g1: QuadtreeSpanner,
    g2: SpannerGraph,
    to_g2: Vec<VertexId>,
    cover: DirectionCover,
    frames: Vec<Frame>,
    geo: BucketGeometry,
    template: SltTree,
    buckets: HashMap<BucketKey, u32>,
    bucket_list: Vec<(BucketKey, BucketStats)>,
    tracks: HashMap<(u32, LineKey), Track>,
    /// Materialized tree nodes: (bucket, square, right side, template node)
    /// -> (vertex, edge to parent added).
    tree_nodes: HashMap<(u32, i64, bool, u32), (VertexId, bool)>,
    point_connectors: HashMap<(u32, VertexId), f64>,
    stats: RouteStats,
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Integer vectors in `[lo_k, lo_k + n)` per axis, odometer order.
fn lattice_box(lo: &[i64], n: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &l in lo {
        out = out
            .into_iter()
            .flat_map(|v| {
                (l..l + n).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Floor/ceil corners of the unit cell containing `x`.
fn cell_corners(x: &[f64]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &c in x {
        let (f, g) = (c.floor() as i64, c.ceil() as i64);
        out = out
            .into_iter()
            .flat_map(|v| {
                let opts = if f == g { vec![f] } else { vec![f, g] };
                opts.into_iter().map(move |o| {
                    let mut v = v.clone();
                    v.push(o);
                    v
                })
            })
            .collect();
    }
    out
}

impl SteinerSpanner {
    pub fn new(cfg: SteinerConfig) -> Result<Self, SpannerError> {
        check_eps(cfg.eps)?;
        if cfg.eps >= 1.0 {
            return Err(SpannerError::Param(format!("steiner spanner needs eps < 1, got {}", cfg.eps)));
        }
        if cfg.dim < 2 {
            return Err(SpannerError::Param("steiner spanner needs d >= 2".into()));
        }
        let positive = [cfg.scale, cfg.cone, cfg.beta, cfg.slt_eps, cfg.kappa0];
        if positive.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(SpannerError::Param("scale, cone, beta, slt_eps and kappa0 must be positive".into()));
        }
        let g1 = QuadtreeSpanner::with_rule(cfg.eps, cfg.dim, cfg.rule, Metric::L2)?;
        let cover = cover::cover_with_radius(cfg.dim, cfg.cone * cfg.eps.sqrt());
        // Lattice covers are audited by sampling; leave slack for the gaps.
        let rho = if cfg.dim == 2 { cover.radius } else { cover.radius * 1.25 };
        let geo = BucketGeometry::new(cfg.eps, cfg.scale, rho, cfg.beta);
        let frames = cover.directions.iter().map(|d| Frame::new(d)).collect();
        let w = geo.w;
        let lateral: Vec<Vec<f64>> = lattice_box(&vec![-w; cfg.dim - 1], 2 * w + 1)
            .into_iter()
            .map(|v| v.into_iter().map(|x| x as f64).collect())
            .collect();
        let template = slt::build_local(&lateral, geo.h as f64, cfg.eps * cfg.slt_eps, cfg.slt, cfg.kappa0);
        Ok(SteinerSpanner {
            g1,
            g2: SpannerGraph::new(cfg.dim, Metric::L2),
            to_g2: Vec::new(),
            cover,
            frames,
            geo,
            template,
            buckets: HashMap::new(),
            bucket_list: Vec::new(),
            tracks: HashMap::new(),
            tree_nodes: HashMap::new(),
            point_connectors: HashMap::new(),
            stats: RouteStats::default(),
            cfg,
        })
    }

    pub fn config(&self) -> &SteinerConfig {
        &self.cfg
    }

    pub fn primary(&self) -> &QuadtreeSpanner {
        &self.g1
    }

    pub fn cover(&self) -> &DirectionCover {
        &self.cover
    }

    pub fn geometry(&self) -> &BucketGeometry {
        &self.geo
    }

    /// Tree shape shared by every square, in grid units, root at the origin.
    pub fn tree_template(&self) -> &SltTree {
        &self.template
    }

    pub fn route_stats(&self) -> RouteStats {
        self.stats
    }

    /// Buckets in creation order.
    pub fn buckets(&self) -> &[(BucketKey, BucketStats)] {
        &self.bucket_list
    }

    /// Connector weight added for input vertex `v` in each bucket it touched.
    pub fn point_connector_weights(&self) -> impl Iterator<Item = (&BucketKey, VertexId, f64)> + '_ {
        self.point_connectors.iter().map(|(&(b, v), &w)| (&self.bucket_list[b as usize].0, v, w))
    }

    /// Per-bucket CSV: key, backbone weight, connector weight, edge count, G1 edges.
    pub fn bucket_csv(&self) -> String {
        let mut s = String::from("key,backbone_weight,connector_weight,edges,primary_edges\n");
        let mut rows: Vec<&(BucketKey, BucketStats)> = self.bucket_list.iter().collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        for (k, st) in rows {
            s.push_str(&format!(
                "{k},{},{},{},{}\n",
                st.backbone_weight, st.connector_weight, st.edges, st.primary_edges
            ));
        }
        s
    }

    /// Closed-form weight of a fully built backbone of length class `level`:
    /// `(grid, trees)` where the grid holds every row over the rectangle (the
    /// median row extended by `h` past both ends) and every cross line.
    pub fn backbone_closed_form(&self, level: i32) -> (f64, f64) {
        let g = &self.geo;
        let m = (self.cfg.dim - 1) as i32;
        let (two_t, two_w) = (2 * g.t_along, 2 * g.w);
        let rows = (two_w + 1).pow(m as u32) as f64 * two_t as f64 + 2.0 * g.h as f64;
        let cols = m as f64 * (two_t + 1) as f64 * (two_w + 1).pow((m - 1) as u32) as f64 * two_w as f64;
        let trees = 2.0 * g.squares() as f64 * self.template.weight();
        let unit = g.unit(level);
        ((rows + cols) * unit, trees * unit)
    }

    fn bucket_id(&mut self, key: &BucketKey) -> u32 {
        if let Some(&id) = self.buckets.get(key) {
            return id;
        }
        let id = self.bucket_list.len() as u32;
        self.buckets.insert(key.clone(), id);
        self.bucket_list.push((key.clone(), BucketStats::default()));
        id
    }

    fn leaf_index(&self, off: &[i64]) -> Option<usize> {
        let w = self.geo.w;
        let mut idx = 0usize;
        for &o in off {
            if o < -w || o > w {
                return None;
            }
            idx = idx * (2 * w + 1) as usize + (o + w) as usize;
        }
        Some(idx)
    }

    /// Best certified-length candidate route inside bucket `key`.
    fn plan(&self, key: &BucketKey, a: &[f64], b: &[f64]) -> Option<Route> {
        let g = &self.geo;
        let frame = &self.frames[key.dir as usize];
        let unit = g.unit(key.level);
        let (la, lb) = (frame.to_local(a, unit), frame.to_local(b, unit));
        let swap = la[0] > lb[0];
        let (lo, hi) = if swap { (&lb, &la) } else { (&la, &lb) };
        let u0 = g.u0(key);
        let med = g.median(key);
        let nsq = g.squares();
        let sq = |u: f64| (((u - u0 as f64) / g.s as f64).floor() as i64).clamp(0, nsq - 1);
        let (q_lo, q_hi) = (sq(lo[0]), sq(hi[0]));
        if q_lo >= q_hi {
            return None;
        }
        let side_lo = u0 + (q_lo + 1) * g.s;
        let side_hi = u0 + q_hi * g.s;
        let (root_lo, root_hi) = (side_lo + g.h, side_hi - g.h);
        if root_lo > root_hi {
            return None;
        }
        let best = |x: &[f64], side: i64| -> Option<(f64, Vec<i64>)> {
            let mut best: Option<(f64, Vec<i64>)> = None;
            for c in cell_corners(x) {
                let off: Vec<i64> = c[1..].iter().zip(&med).map(|(v, m)| v - m).collect();
                let Some(leaf) = self.leaf_index(&off) else { continue };
                let cf: Vec<f64> = c.iter().map(|&v| v as f64).collect();
                let cost = dist2(x, &cf)
                    + (side - c[0]).abs() as f64
                    + self.template.path_len(self.template.first_leaf + leaf);
                if best.as_ref().is_none_or(|b| cost < b.0) {
                    best = Some((cost, c));
                }
            }
            best
        };
        let (c_lo, k_lo) = best(lo, side_lo)?;
        let (c_hi, k_hi) = best(hi, side_hi)?;
        let end_lo = End { corner: k_lo, side_u: side_lo, root_u: root_lo, square: q_lo, right: true };
        let end_hi = End { corner: k_hi, side_u: side_hi, root_u: root_hi, square: q_hi, right: false };
        let len = (c_lo + (root_hi - root_lo) as f64 + c_hi) * unit;
        let ends = if swap { [end_hi, end_lo] } else { [end_lo, end_hi] };
        Some(Route { key: key.clone(), ends, len })
    }

    fn track_point(&mut self, bid: u32, line: LineKey, t: i64) -> VertexId {
        let at = self.line_coords(bid, &line);
        self.tracks.entry((bid, line)).or_default().point(&mut self.g2, t, &at)
    }

    fn track_span(&mut self, bid: u32, line: LineKey, t0: i64, t1: i64, unit_steps: bool) {
        let at = self.line_coords(bid, &line);
        let tr = self.tracks.entry((bid, line)).or_default();
        if unit_steps {
            tr.unit_span(&mut self.g2, t0, t1, &at);
        } else {
            tr.span(&mut self.g2, t0, t1, &at);
        }
    }

    /// World coordinates of the points of a grid line.
    fn line_coords(&self, bid: u32, line: &LineKey) -> Box<dyn Fn(i64) -> Vec<f64>> {
        let key = &self.bucket_list[bid as usize].0;
        let frame = self.frames[key.dir as usize].clone();
        let unit = self.geo.unit(key.level);
        match line.clone() {
            LineKey::Row(v) => Box::new(move |t| {
                let mut loc = vec![t as f64];
                loc.extend(v.iter().map(|&x| x as f64));
                frame.to_world(&loc, unit)
            }),
            LineKey::Col { axis, u, rest } => Box::new(move |t| {
                let mut cross: Vec<f64> = rest.iter().map(|&x| x as f64).collect();
                cross.insert(axis, t as f64);
                let mut loc = vec![u as f64];
                loc.extend(cross);
                frame.to_world(&loc, unit)
            }),
        }
    }

    fn tree_root_u(&self, key: &BucketKey, square: i64, right: bool) -> (i64, i64) {
        let g = &self.geo;
        let u0 = g.u0(key);
        if right {
            let side = u0 + (square + 1) * g.s;
            (side + g.h, side)
        } else {
            let side = u0 + square * g.s;
            (side - g.h, side)
        }
    }

    /// Materializes the tree path from leaf `leaf` to the root.
    fn ensure_tree_path(&mut self, bid: u32, square: i64, right: bool, leaf: usize) {
        let key = self.bucket_list[bid as usize].0.clone();
        let (root_u, side_u) = self.tree_root_u(&key, square, right);
        let med = self.geo.median(&key);
        let path = self.template.path_to_root(self.template.first_leaf + leaf);
        let mut verts = Vec::with_capacity(path.len());
        for &node in &path {
            let id = (bid, square, right, node as u32);
            if let Some(&(v, linked)) = self.tree_nodes.get(&id) {
                verts.push(v);
                // Everything above a linked node is in place.
                if linked || node == 0 {
                    break;
                }
                continue;
            }
            let loc = self.template.nodes[node].clone();
            let v = if node == 0 {
                self.track_point(bid, LineKey::Row(med.clone()), root_u)
            } else if node >= self.template.first_leaf {
                let row: Vec<i64> = loc[1..].iter().zip(&med).map(|(o, m)| m + *o as i64).collect();
                self.track_point(bid, LineKey::Row(row), side_u)
            } else {
                let sign = if right { -1.0 } else { 1.0 };
                let mut u = vec![root_u as f64 + sign * loc[0]];
                u.extend(loc[1..].iter().zip(&med).map(|(o, &m)| m as f64 + o));
                let frame = &self.frames[key.dir as usize];
                let w = frame.to_world(&u, self.geo.unit(key.level));
                self.g2.add_steiner(&w).expect("finite coordinates").0
            };
            self.tree_nodes.insert(id, (v, false));
            verts.push(v);
        }
        for i in 0..verts.len() - 1 {
            let id = (bid, square, right, path[i] as u32);
            let ent = self.tree_nodes.get_mut(&id).unwrap();
            if ent.1 {
                break;
            }
            ent.1 = true;
            if verts[i] != verts[i + 1] && self.g2.edge_between(verts[i], verts[i + 1]).is_none() {
                self.g2.add_edge(verts[i], verts[i + 1]).expect("known vertices");
            }
        }
    }

    fn charge<R>(&mut self, bid: u32, connector: bool, f: impl FnOnce(&mut Self) -> R) -> R {
        let (w0, e0) = (self.g2.weight(), self.g2.num_live_edges());
        let r = f(self);
        let (dw, de) = (self.g2.weight() - w0, self.g2.num_live_edges() - e0);
        let st = &mut self.bucket_list[bid as usize].1;
        if connector {
            st.connector_weight += dw;
        } else {
            st.backbone_weight += dw;
        }
        st.edges += de;
        r
    }

    fn connect(&mut self, bid: u32, p: VertexId, corner: &[i64]) {
        let w0 = self.g2.weight();
        self.charge(bid, true, |s| {
            let c = s.track_point(bid, LineKey::Row(corner[1..].to_vec()), corner[0]);
            if c != p && s.g2.edge_between(p, c).is_none() {
                s.g2.add_edge(p, c).expect("known vertices");
            }
        });
        let dw = self.g2.weight() - w0;
        *self.point_connectors.entry((bid, p)).or_insert(0.0) += dw;
    }

    fn materialize(&mut self, r: &Route, pts: [VertexId; 2]) {
        let bid = self.bucket_id(&r.key);
        let med = self.geo.median(&r.key);
        let full = self.cfg.backbone == BackboneMode::Full;
        self.charge(bid, false, |s| {
            let (a, b) = (r.ends[0].root_u, r.ends[1].root_u);
            s.track_span(bid, LineKey::Row(med.clone()), a, b, full);
            for e in &r.ends {
                s.track_span(bid, LineKey::Row(e.corner[1..].to_vec()), e.corner[0], e.side_u, full);
                let off: Vec<i64> = e.corner[1..].iter().zip(&med).map(|(v, m)| v - m).collect();
                let leaf = s.leaf_index(&off).expect("planned corner inside the rectangle");
                s.ensure_tree_path(bid, e.square, e.right, leaf);
            }
        });
        for (e, &p) in r.ends.iter().zip(&pts) {
            self.connect(bid, p, &e.corner);
        }
        self.bucket_list[bid as usize].1.primary_edges += 1;
    }

    /// Builds the complete backbone of `key`; returns the live edges created
    /// (empty when it was already built).
    pub fn ensure_backbone(&mut self, key: &BucketKey) -> Vec<EdgeId> {
        let bid = self.bucket_id(key);
        if self.bucket_list[bid as usize].1.built {
            return Vec::new();
        }
        let first = self.g2.num_edge_records();
        let g = self.geo;
        let u0 = g.u0(key);
        let m = self.cfg.dim - 1;
        let lo: Vec<i64> = key.tile[1..].iter().map(|t| t * g.w).collect();
        let med = g.median(key);
        self.charge(bid, false, |s| {
            for row in lattice_box(&lo, 2 * g.w + 1) {
                let (a, b) = if row == med { (u0 - g.h, u0 + 2 * g.t_along + g.h) } else { (u0, u0 + 2 * g.t_along) };
                s.track_span(bid, LineKey::Row(row), a, b, true);
            }
            for axis in 0..m {
                let rest_lo: Vec<i64> = lo.iter().enumerate().filter(|&(k, _)| k != axis).map(|(_, &x)| x).collect();
                for u in u0..=u0 + 2 * g.t_along {
                    for rest in lattice_box(&rest_lo, 2 * g.w + 1) {
                        s.track_span(bid, LineKey::Col { axis, u, rest }, lo[axis], lo[axis] + 2 * g.w, true);
                    }
                }
            }
            let leaves = s.template.num_leaves();
            for q in 0..g.squares() {
                for right in [false, true] {
                    for leaf in 0..leaves {
                        s.ensure_tree_path(bid, q, right, leaf);
                    }
                }
            }
        });
        self.bucket_list[bid as usize].1.built = true;
        (first as EdgeId..self.g2.num_edge_records() as EdgeId).filter(|&e| self.g2.edge(e).is_live()).collect()
    }

    fn full_connectors(&mut self, key: &BucketKey, p: VertexId) {
        let bid = self.bucket_id(key);
        let frame = &self.frames[key.dir as usize];
        let x = frame.to_local(self.g2.coords(p), self.geo.unit(key.level));
        for c in cell_corners(&x) {
            self.connect(bid, p, &c);
        }
    }

    /// Realises the primary edge `ab` (G2 vertex ids) in G2.
    fn realise(&mut self, a: VertexId, b: VertexId) {
        self.stats.primary_edges += 1;
        let (pa, pb) = (self.g2.coords(a).to_vec(), self.g2.coords(b).to_vec());
        let keys = assign_buckets(&pa, &pb, &self.cover, &self.geo);
        if self.cfg.backbone == BackboneMode::Full {
            for k in &keys {
                self.ensure_backbone(k);
                self.full_connectors(k, a);
                self.full_connectors(k, b);
            }
        }
        let limit = (1.0 + self.cfg.eps) * dist2(&pa, &pb);
        let mut best: Option<(bool, f64, Route)> = None;
        for k in &keys {
            if let Some(r) = self.plan(k, &pa, &pb) {
                if r.len > limit {
                    continue;
                }
                let fresh = !self.buckets.contains_key(k);
                let better = match &best {
                    None => true,
                    Some((bf, bl, _)) => (fresh, r.len) < (*bf, *bl),
                };
                if better {
                    best = Some((fresh, r.len, r));
                }
            }
        }
        match best {
            Some((_, _, r)) => {
                self.materialize(&r, [a, b]);
                self.stats.routed += 1;
            }
            None => {
                if keys.is_empty() {
                    self.stats.unbucketed += 1;
                }
                self.stats.direct += 1;
                if self.g2.edge_between(a, b).is_none() {
                    self.g2.add_edge(a, b).expect("known vertices");
                }
            }
        }
    }

    pub fn steiner_insert(&mut self, p: &[f64]) -> Result<Vec<EdgeId>, SpannerError> {
        if p.len() != self.cfg.dim {
            return Err(GeomError::DimensionMismatch { expected: self.cfg.dim, got: p.len() }.into());
        }
        Point::checked(p.to_vec())?;
        let first = self.g2.num_edge_records();
        let new1 = self.g1.qt_insert(p)?;
        let (v, _) = self.g2.add_input(p)?;
        self.to_g2.push(v);
        for e in new1 {
            let ed = self.g1.graph().edge(e).clone();
            // Zero-weight duplicate links are mirrored by `add_input`.
            if ed.weight > 0.0 {
                self.realise(self.to_g2[ed.u as usize], self.to_g2[ed.v as usize]);
            }
        }
        Ok((first as EdgeId..self.g2.num_edge_records() as EdgeId).filter(|&e| self.g2.edge(e).is_live()).collect())
    }

    /// Lightest G2 path between the `i`-th and `j`-th inserted points.
    pub fn query_path(&self, i: usize, j: usize) -> Result<(f64, Vec<VertexId>), SpannerError> {
        let n = self.to_g2.len();
        if i >= n || j >= n {
            return Err(GeomError::UnknownVertex(i.max(j) as u32).into());
        }
        let (a, b) = (self.to_g2[i], self.to_g2[j]);
        shortest_path(&self.g2, a, b)?.ok_or(SpannerError::Disconnected(a, b))
    }
}

impl OnlineSpanner for SteinerSpanner {
    fn insert(&mut self, p: &Point) -> Result<Vec<EdgeId>, SpannerError> {
        self.steiner_insert(p.coords())
    }

    fn graph(&self) -> &SpannerGraph {
        &self.g2
    }

    fn eps(&self) -> f64 {
        self.cfg.eps
    }

    fn stretch_bound(&self) -> f64 {
        1.0 + 3.0 * self.cfg.eps
    }

    fn name(&self) -> &'static str {
        "steiner"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spanlab_geometry::{verify_stretch, PairSet};

    #[test]
    fn first_point_has_no_edges() {
        let mut s = SteinerSpanner::new(SteinerConfig::new(0.25, 2)).unwrap();
        assert!(s.steiner_insert(&[0.2, 0.3]).unwrap().is_empty());
    }

    #[test]
    fn two_points_within_three_eps() {
        for mode in [BackboneMode::Lazy, BackboneMode::Full] {
            let mut cfg = SteinerConfig::new(0.25, 2);
            cfg.backbone = mode;
            let mut s = SteinerSpanner::new(cfg).unwrap();
            s.steiner_insert(&[0.1, 0.2]).unwrap();
            s.steiner_insert(&[0.9, 0.45]).unwrap();
            let (w, _) = s.query_path(0, 1).unwrap();
            let d = dist2(&[0.1, 0.2], &[0.9, 0.45]);
            assert!(w <= 1.75 * d, "{mode:?}: {w} vs {d}");
            assert_eq!(s.query_path(1, 1).unwrap().0, 0.0);
        }
    }

    #[test]
    fn small_random_suite_certifies() {
        let mut st: u64 = 7;
        let mut s = SteinerSpanner::new(SteinerConfig::new(0.25, 2)).unwrap();
        for _ in 0..50 {
            let p: Vec<f64> = (0..2)
                .map(|_| {
                    st = st.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (st >> 11) as f64 / (1u64 << 53) as f64
                })
                .collect();
            s.steiner_insert(&p).unwrap();
        }
        let r = verify_stretch(s.graph(), &PairSet::AllInputs, 1.75);
        assert!(r.passed(), "{:?}", r);
        assert!(s.route_stats().routed > 0);
    }
}

