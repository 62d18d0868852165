//! Circular arcs over a chord and the lens-shaped regions between them.
//!
//! Every point `x` off the chord line (or on the open chord) lies on exactly
//! one circular arc from `a` to `b`; its *sagitta* `h(x)` is the signed height
//! of that arc above the chord midpoint, positive to the left of `a -> b`.
//! A lens is the open set `{x : lo < h(x) < hi}`; graph edges lying on a
//! boundary arc belong to neither neighbour.

use spanlab_geometry::SpannerGraph;

pub type P2 = [f64; 2];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chord {
    pub a: P2,
    pub b: P2,
}

impl Chord {
    pub fn new(a: P2, b: P2) -> Chord {
        Chord { a, b }
    }

    pub fn len(&self) -> f64 {
        (self.b[0] - self.a[0]).hypot(self.b[1] - self.a[1])
    }

    fn frame(&self) -> (P2, P2, P2) {
        let c = self.len();
        let ux = [(self.b[0] - self.a[0]) / c, (self.b[1] - self.a[1]) / c];
        let vx = [-ux[1], ux[0]];
        let m = [(self.a[0] + self.b[0]) / 2.0, (self.a[1] + self.b[1]) / 2.0];
        (m, ux, vx)
    }

    /// Coordinates `(u, v)` relative to the chord midpoint.
    pub fn to_local(&self, x: P2) -> (f64, f64) {
        let (m, ux, vx) = self.frame();
        let d = [x[0] - m[0], x[1] - m[1]];
        (d[0] * ux[0] + d[1] * ux[1], d[0] * vx[0] + d[1] * vx[1])
    }

    pub fn to_world(&self, u: f64, v: f64) -> P2 {
        let (m, ux, vx) = self.frame();
        [m[0] + u * ux[0] + v * vx[0], m[1] + u * ux[1] + v * vx[1]]
    }

    /// Sagitta of the arc through `x`; `None` on the chord line outside `[a, b]`.
    pub fn sagitta_of(&self, x: P2) -> Option<f64> {
        let (u, v) = self.to_local(x);
        let q = self.len() * self.len() / 4.0;
        if v == 0.0 {
            return if u * u <= q { Some(0.0) } else { None };
        }
        let s = v.signum();
        let y0 = (u * u + v * v - q) / (2.0 * v);
        let r = (q + y0 * y0).sqrt();
        // Two algebraically equal forms; pick the one without cancellation.
        Some(if s * y0 <= 0.0 { q / (s * r - y0) } else { y0 + s * r })
    }

    /// Centre and radius of the circle carrying the arc of sagitta `h`;
    /// `None` for `h = 0`.
    pub fn circle(&self, h: f64) -> Option<(P2, f64)> {
        if h == 0.0 {
            return None;
        }
        let q = self.len() * self.len() / 4.0;
        let yc = (h * h - q) / (2.0 * h);
        Some((self.to_world(0.0, yc), (h - yc).abs()))
    }

    /// Point of the arc with sagitta `h` above chord coordinate `u`, for
    /// minor arcs (`|h| <= |ab| / 2`).
    pub fn arc_point(&self, h: f64, u: f64) -> P2 {
        if h == 0.0 {
            return self.to_world(u, 0.0);
        }
        let q = self.len() * self.len() / 4.0;
        let yc = (h * h - q) / (2.0 * h);
        let r = (h - yc).abs();
        let v = yc + h.signum() * (r * r - u * u).max(0.0).sqrt();
        self.to_world(u, v)
    }

    /// Length of the arc with sagitta `h`.
    pub fn arc_len(&self, h: f64) -> f64 {
        self.len() * arc_ratio(h.abs() / self.len())
    }
}

/// Arc length over chord length for a minor arc with sagitta `alpha * chord`.
pub fn arc_ratio(alpha: f64) -> f64 {
    if alpha == 0.0 {
        return 1.0;
    }
    let k = 0.25 + alpha * alpha;
    k / alpha * (alpha / k).min(1.0).asin()
}

/// Inverse of [`arc_ratio`] on `[0, 1/2]`.
pub fn alpha_for_ratio(ratio: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    if ratio <= 1.0 {
        return 0.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if arc_ratio(mid) <= ratio {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lens {
    pub chord: Chord,
    pub lo: f64,
    pub hi: f64,
}

impl Lens {
    pub fn contains(&self, x: P2) -> bool {
        self.chord.sagitta_of(x).is_some_and(|h| self.lo < h && h < self.hi)
    }

    /// Axis-aligned box holding the lens (minor arcs stay over the chord).
    pub fn bbox(&self) -> [f64; 4] {
        let c = self.chord.len() / 2.0;
        let (vlo, vhi) = (self.lo.min(0.0), self.hi.max(0.0));
        let corners = [(-c, vlo), (-c, vhi), (c, vlo), (c, vhi)].map(|(u, v)| self.chord.to_world(u, v));
        bbox_of(&corners)
    }
}

fn bbox_of(pts: &[P2]) -> [f64; 4] {
    let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for p in pts {
        b[0] = b[0].min(p[0]);
        b[1] = b[1].min(p[1]);
        b[2] = b[2].max(p[0]);
        b[3] = b[3].max(p[1]);
    }
    b
}

fn boxes_meet(a: &[f64; 4], b: &[f64; 4]) -> bool {
    a[0] <= b[2] && b[0] <= a[2] && a[1] <= b[3] && b[1] <= a[3]
}

/// Parameters `t` in `(0, 1)` where segment `p0 p1` crosses the circle.
fn circle_hits(p0: P2, p1: P2, c: P2, r: f64, out: &mut Vec<f64>) {
    let d = [p1[0] - p0[0], p1[1] - p0[1]];
    let f = [p0[0] - c[0], p0[1] - c[1]];
    let a = d[0] * d[0] + d[1] * d[1];
    let b = 2.0 * (f[0] * d[0] + f[1] * d[1]);
    let cc = f[0] * f[0] + f[1] * f[1] - r * r;
    let disc = b * b - 4.0 * a * cc;
    if a == 0.0 || disc < 0.0 {
        return;
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    for t in [q / a, if q != 0.0 { cc / q } else { f64::NAN }] {
        if t > 0.0 && t < 1.0 {
            out.push(t);
        }
    }
}

/// Parameter where segment `p0 p1` crosses the chord line.
fn line_hit(p0: P2, p1: P2, ch: &Chord, out: &mut Vec<f64>) {
    let (_, v0) = ch.to_local(p0);
    let (_, v1) = ch.to_local(p1);
    if (v0 < 0.0) != (v1 < 0.0) && v0 != v1 {
        let t = v0 / (v0 - v1);
        if t > 0.0 && t < 1.0 {
            out.push(t);
        }
    }
}

fn boundary_hits(p0: P2, p1: P2, ch: &Chord, h: f64, out: &mut Vec<f64>) {
    match ch.circle(h) {
        Some((c, r)) => circle_hits(p0, p1, c, r, out),
        None => line_hit(p0, p1, ch, out),
    }
}

/// Length of segment `p0 p1` inside the union of `lenses`.
pub fn clipped_length(p0: P2, p1: P2, lenses: &[&Lens]) -> f64 {
    let len = (p1[0] - p0[0]).hypot(p1[1] - p0[1]);
    if len == 0.0 || lenses.is_empty() {
        return 0.0;
    }
    let mut ts = vec![0.0, 1.0];
    for l in lenses {
        boundary_hits(p0, p1, &l.chord, l.lo, &mut ts);
        boundary_hits(p0, p1, &l.chord, l.hi, &mut ts);
        line_hit(p0, p1, &l.chord, &mut ts);
    }
    ts.sort_by(f64::total_cmp);
    let mut inside = 0.0;
    for w in ts.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let t = 0.5 * (w[0] + w[1]);
        let m = [p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])];
        if lenses.iter().any(|l| l.contains(m)) {
            inside += w[1] - w[0];
        }
    }
    inside * len
}

/// Uniform grid over live edges of a planar graph, for box queries.
pub struct EdgeGrid {
    origin: P2,
    cell: f64,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<u32>>,
    segs: Vec<(P2, P2)>,
}

impl EdgeGrid {
    pub fn new(g: &SpannerGraph, cells_per_side: usize) -> EdgeGrid {
        let segs: Vec<(P2, P2)> = g
            .live_edges()
            .filter(|e| e.weight > 0.0)
            .map(|e| {
                let (a, b) = (g.coords(e.u), g.coords(e.v));
                ([a[0], a[1]], [b[0], b[1]])
            })
            .collect();
        let all: Vec<P2> = segs.iter().flat_map(|s| [s.0, s.1]).collect();
        let bb = if all.is_empty() { [0.0, 0.0, 1.0, 1.0] } else { bbox_of(&all) };
        let n = cells_per_side.max(1);
        let cell = ((bb[2] - bb[0]).max(bb[3] - bb[1]) / n as f64).max(1e-12);
        let mut grid = EdgeGrid { origin: [bb[0], bb[1]], cell, nx: n + 1, ny: n + 1, cells: vec![Vec::new(); (n + 1) * (n + 1)], segs };
        for i in 0..grid.segs.len() {
            let (a, b) = grid.segs[i];
            let (x0, y0, x1, y1) = grid.range(&bbox_of(&[a, b]));
            for x in x0..=x1 {
                for y in y0..=y1 {
                    grid.cells[x * grid.ny + y].push(i as u32);
                }
            }
        }
        grid
    }

    fn range(&self, b: &[f64; 4]) -> (usize, usize, usize, usize) {
        let f = |v: f64, o: f64, n: usize| (((v - o) / self.cell).floor().max(0.0) as usize).min(n - 1);
        (f(b[0], self.origin[0], self.nx), f(b[1], self.origin[1], self.ny), f(b[2], self.origin[0], self.nx), f(b[3], self.origin[1], self.ny))
    }

    /// Segments whose box meets `b`, each once.
    pub fn query(&self, b: &[f64; 4]) -> Vec<(P2, P2)> {
        let (x0, y0, x1, y1) = self.range(b);
        let mut ids: Vec<u32> = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                ids.extend(&self.cells[x * self.ny + y]);
            }
        }
        ids.sort_unstable();
        ids.dedup();
        ids.into_iter()
            .map(|i| self.segs[i as usize])
            .filter(|(a, c)| boxes_meet(&bbox_of(&[*a, *c]), b))
            .collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.segs.iter().map(|(a, b)| (b[0] - a[0]).hypot(b[1] - a[1])).sum()
    }
}

/// Weight of `g` inside the union of `region`, with an absolute error bound.
///
/// Crossings with the boundary arcs are solved in closed form, so the error is
/// rounding only; the bound charges `1e-9` of every edge that was clipped.
pub fn region_weight(g: &SpannerGraph, region: &[Lens]) -> (f64, f64) {
    if region.is_empty() {
        return (0.0, 0.0);
    }
    let grid = EdgeGrid::new(g, 256);
    region_weight_in(&grid, region)
}

pub fn region_weight_in(grid: &EdgeGrid, region: &[Lens]) -> (f64, f64) {
    let boxes: Vec<[f64; 4]> = region.iter().map(|l| l.bbox()).collect();
    let mut seen = std::collections::HashSet::new();
    let (mut w, mut err) = (0.0, 0.0);
    for b in &boxes {
        for (p0, p1) in grid.query(b) {
            let key = (p0[0].to_bits(), p0[1].to_bits(), p1[0].to_bits(), p1[1].to_bits());
            if !seen.insert(key) {
                continue;
            }
            let sb = bbox_of(&[p0, p1]);
            let near: Vec<&Lens> = region.iter().zip(&boxes).filter(|(_, lb)| boxes_meet(lb, &sb)).map(|(l, _)| l).collect();
            let c = clipped_length(p0, p1, &near);
            if c > 0.0 {
                w += c;
                err += 1e-9 * (p1[0] - p0[0]).hypot(p1[1] - p0[1]);
            }
        }
    }
    (w, err)
}

/// Weight of `g` inside each lens `[hs[m], hs[m+1]]` over one chord.
pub fn lens_weights(grid: &EdgeGrid, chord: &Chord, hs: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; hs.len().saturating_sub(1)];
    if out.is_empty() {
        return out;
    }
    let outer = Lens { chord: *chord, lo: hs[0], hi: *hs.last().unwrap() };
    let mut ts = Vec::new();
    for (p0, p1) in grid.query(&outer.bbox()) {
        let len = (p1[0] - p0[0]).hypot(p1[1] - p0[1]);
        ts.clear();
        ts.extend([0.0, 1.0]);
        for &h in hs {
            boundary_hits(p0, p1, chord, h, &mut ts);
        }
        line_hit(p0, p1, chord, &mut ts);
        ts.sort_by(f64::total_cmp);
        for w in ts.windows(2) {
            if w[1] <= w[0] {
                continue;
            }
            let t = 0.5 * (w[0] + w[1]);
            let m = [p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])];
            let Some(h) = chord.sagitta_of(m) else { continue };
            let i = hs.partition_point(|&x| x <= h);
            if i == 0 || i == hs.len() || hs[i - 1] == h {
                continue;
            }
            let i = i - 1;
            out[i] += (w[1] - w[0]) * len;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use spanlab_geometry::Metric;

    #[test]
    fn sagitta_round_trip() {
        let ch = Chord::new([0.0, 0.0], [1.0, 0.0]);
        for h in [-0.4, -0.1, 0.05, 0.3, 0.5] {
            for u in [-0.4, -0.1, 0.0, 0.2, 0.45] {
                let p = ch.arc_point(h, u);
                assert!((ch.sagitta_of(p).unwrap() - h).abs() < 1e-12, "h {h} u {u}");
            }
        }
        assert_eq!(ch.sagitta_of([2.0, 0.0]), None);
        assert_eq!(ch.sagitta_of([0.5, 0.0]), Some(0.0));
    }

    #[test]
    fn arc_lengths() {
        assert!((arc_ratio(0.5) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        let a = alpha_for_ratio(1.1);
        assert!((arc_ratio(a) - 1.1).abs() < 1e-12);
        let ch = Chord::new([1.0, 1.0], [1.0, 3.0]);
        assert!((ch.arc_len(1.0) - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn horizontal_segment_through_a_lens() {
        // Chord (0,0)-(2,0); lens between sagittas 0.5 and 1 (the upper
        // semicircle of radius 1 about (1,0)). The line y = 0.25 meets the
        // circle of sagitta 0.5 (centre (1,-0.75), radius 1.25) at
        // x = 1 ± sqrt(1.25² - 1), and the unit circle at x = 1 ± sqrt(1 - 1/16).
        let ch = Chord::new([0.0, 0.0], [2.0, 0.0]);
        let lens = Lens { chord: ch, lo: 0.5, hi: 1.0 };
        let got = clipped_length([-1.0, 0.25], [3.0, 0.25], &[&lens]);
        let outer = (1.0f64 - 0.0625).sqrt();
        let inner = (1.5625f64 - 1.0).sqrt();
        assert!((got - 2.0 * (outer - inner)).abs() < 1e-12);
    }

    #[test]
    fn region_weight_of_graphs() {
        let mut g = SpannerGraph::new(2, Metric::L2);
        let ch = Chord::new([0.0, 0.0], [1.0, 0.0]);
        let lens = Lens { chord: ch, lo: 0.0, hi: 0.3 };
        assert_eq!(region_weight(&g, &[lens]).0, 0.0);
        let (a, _) = g.add_input(&[0.3, 0.05]).unwrap();
        let (b, _) = g.add_input(&[0.6, 0.1]).unwrap();
        g.add_edge(a, b).unwrap();
        let (w, err) = region_weight(&g, &[lens]);
        assert!((w - 0.3f64.hypot(0.05)).abs() <= err + 1e-15);
        let hs = [-0.3, 0.0, 0.3];
        let per = lens_weights(&EdgeGrid::new(&g, 8), &ch, &hs);
        assert!(per[0] == 0.0 && (per[1] - w).abs() < 1e-12);
    }
}
