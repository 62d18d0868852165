//! Point sets on opposite faces of the L1 cross polytope, together with a
//! light Manhattan network on the augmented set.
//!
//! Planar case: `S1 = {(i, 2^k - 1 - i)}` for `i < 2^k` (the `original`
//! flag uses `(i, 2^k - i)` instead), and `Ŝ1` holds the lower-left corners
//! of the bounding boxes of the dyadic index intervals with at least two
//! points. The network is two binary trees joined at the origin plus a
//! staircase through consecutive points of each set.
//!
//! In `d >= 3` dimensions, `S1` is the set of non-negative lattice points with
//! coordinate sum `2^k - 2`, and `Ŝ1` holds the corners of a dyadic
//! quadtree over `[0, 2^k]^d` that splits every cube meeting that hyperplane.

use crate::AdversaryError;
use spanlab_geometry::{dist, Metric, SpannerGraph, VertexId};
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Clone, Debug)]
pub struct L1Construction {
    pub eps: f64,
    pub k: u32,
    pub dim: usize,
    pub s1: Vec<Vec<i64>>,
    pub s2: Vec<Vec<i64>>,
    pub s1_hat: Vec<Vec<i64>>,
    pub s2_hat: Vec<Vec<i64>>,
}

fn neg(p: &[i64]) -> Vec<i64> {
    p.iter().map(|x| -x).collect()
}

fn l1(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// `ceil(log2(1/eps))`.
pub fn l1_k(eps: f64) -> Result<u32, AdversaryError> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(AdversaryError::Param(format!("eps must lie in (0, 1/2], got {eps}")));
    }
    Ok((1.0 / eps).log2().ceil() as u32)
}

impl L1Construction {
    /// Points that carry distance requirements: `S1, S2, Ŝ1, Ŝ2`.
    pub fn all_points(&self) -> Vec<Vec<i64>> {
        let mut v = self.s1.clone();
        v.extend(self.s2.iter().cloned());
        v.extend(self.s1_hat.iter().cloned());
        v.extend(self.s2_hat.iter().cloned());
        v
    }

    /// `min L1(p, q)` over `p in S1`, `q in S2`.
    pub fn cross_distance(&self) -> i64 {
        let mut best = i64::MAX;
        for p in &self.s1 {
            for q in &self.s2 {
                best = best.min(l1(p, q));
            }
        }
        best
    }

    /// `sum L1(p, q)` over `p in S1`, `q in S2`: the weight of the complete
    /// bipartite graph every spanner of `S1 ∪ S2` contains.
    pub fn forced_bipartite_weight(&self) -> f64 {
        let mut w = 0i64;
        for p in &self.s1 {
            for q in &self.s2 {
                w += l1(p, q);
            }
        }
        w as f64
    }
}

pub fn build_l1_2d(eps: f64) -> Result<L1Construction, AdversaryError> {
    build_l1_2d_with(eps, false)
}

/// `original = true` keeps the coordinates `(i, 2^k - i)`, under which the
/// cross distance is `2^(k+1)` rather than `2(2^k - 1)`.
pub fn build_l1_2d_with(eps: f64, original: bool) -> Result<L1Construction, AdversaryError> {
    let k = l1_k(eps)?;
    let n = 1i64 << k;
    let top = if original { n } else { n - 1 };
    let s1: Vec<Vec<i64>> = (0..n).map(|i| vec![i, top - i]).collect();
    let mut s1_hat = Vec::new();
    let mut size = n;
    while size >= 2 {
        for start in (0..n).step_by(size as usize) {
            let last = start + size - 1;
            s1_hat.push(vec![s1[start as usize][0], s1[last as usize][1]]);
        }
        size /= 2;
    }
    let s2 = s1.iter().map(|p| neg(p)).collect();
    let s2_hat = s1_hat.iter().map(|p| neg(p)).collect();
    Ok(L1Construction { eps, k, dim: 2, s1, s2, s1_hat, s2_hat })
}

/// Builds the planar network; all construction points are input vertices,
/// staircase bends are Steiner vertices.
pub fn build_manhattan_2d(c: &L1Construction) -> Result<SpannerGraph, AdversaryError> {
    if c.dim != 2 {
        return Err(AdversaryError::Param("build_manhattan_2d needs a planar construction".into()));
    }
    let mut g = SpannerGraph::new(2, Metric::L1);
    let mut ids: HashMap<Vec<i64>, VertexId> = HashMap::new();
    for p in c.all_points() {
        if !ids.contains_key(&p) {
            let (v, _) = g.add_input(&to_f(&p))?;
            ids.insert(p, v);
        }
    }
    let n = c.s1.len();
    for sign in [1i64, -1] {
        let pts: Vec<Vec<i64>> = c.s1.iter().map(|p| p.iter().map(|x| sign * x).collect()).collect();
        // Tree: the corner of an interval sees its left half straight up and
        // its right half straight to the right (mirrored for the second set).
        let mut size = n;
        while size >= 2 {
            for start in (0..n).step_by(size) {
                let half = size / 2;
                let corner = vec![pts[start][0], pts[start + size - 1][1]];
                let left = vec![pts[start][0], pts[start + half - 1][1]];
                let right = vec![pts[start + half][0], pts[start + size - 1][1]];
                for child in [left, right] {
                    join(&mut g, &mut ids, &corner, &child)?;
                }
            }
            size /= 2;
        }
        // Staircase bending away from the trees.
        for w in pts.windows(2) {
            let bend = vec![w[1][0], w[0][1]];
            join(&mut g, &mut ids, &w[0], &bend)?;
            join(&mut g, &mut ids, &bend, &w[1])?;
        }
    }
    Ok(g)
}

fn to_f(p: &[i64]) -> Vec<f64> {
    p.iter().map(|&x| x as f64).collect()
}

fn vertex(g: &mut SpannerGraph, ids: &mut HashMap<Vec<i64>, VertexId>, p: &[i64]) -> Result<VertexId, AdversaryError> {
    if let Some(&v) = ids.get(p) {
        return Ok(v);
    }
    let (v, _) = g.add_steiner(&to_f(p))?;
    ids.insert(p.to_vec(), v);
    Ok(v)
}

fn join(
    g: &mut SpannerGraph,
    ids: &mut HashMap<Vec<i64>, VertexId>,
    a: &[i64],
    b: &[i64],
) -> Result<(), AdversaryError> {
    if a == b {
        return Ok(());
    }
    let (u, v) = (vertex(g, ids, a)?, vertex(g, ids, b)?);
    g.add_edge(u, v)?;
    Ok(())
}

/// True iff for every cross pair `(p, q)`, each detour `p -> r -> q` through a
/// third point `r` of `S1 ∪ S2` weighs at least `dist(S1, S2) + 2`, and that
/// exceeds `(1 + eps) |pq|`. Then every `(1+eps)`-spanner of `S1 ∪ S2` holds
/// the edge `pq`.
pub fn verify_bipartite_necessity(c: &L1Construction) -> bool {
    let dmin = c.cross_distance();
    let base: Vec<&Vec<i64>> = c.s1.iter().chain(&c.s2).collect();
    for p in &c.s1 {
        for q in &c.s2 {
            let d = l1(p, q) as f64;
            if (dmin + 2) as f64 <= (1.0 + c.eps) * d {
                return false;
            }
            for r in &base {
                if *r == p || *r == q {
                    continue;
                }
                if l1(p, r) + l1(r, q) < dmin + 2 {
                    return false;
                }
            }
        }
    }
    true
}

/// Construction in `d >= 3` dimensions.
pub fn build_l1_highdim(eps: f64, d: usize) -> Result<L1Construction, AdversaryError> {
    if d < 3 {
        return Err(AdversaryError::Param(format!("build_l1_highdim needs d >= 3, got {d}; use build_l1_2d")));
    }
    let k = l1_k(eps)?;
    let sum = (1i64 << k) - 2;
    let mut s1 = Vec::new();
    compositions(d, sum, &mut Vec::new(), &mut s1);
    let corners: BTreeSet<Vec<i64>> = quadtree_cubes(d, k, sum).into_iter().flat_map(|(lo, side)| cube_corners(&lo, side)).collect();
    let s1_set: BTreeSet<&Vec<i64>> = s1.iter().collect();
    let s1_hat: Vec<Vec<i64>> = corners.into_iter().filter(|c| !s1_set.contains(c)).collect();
    let s2 = s1.iter().map(|p| neg(p)).collect();
    let s2_hat = s1_hat.iter().map(|p| neg(p)).collect();
    Ok(L1Construction { eps, k, dim: d, s1, s2, s1_hat, s2_hat })
}

/// Non-negative integer vectors of length `d` with the given sum, in
/// lexicographic order.
fn compositions(d: usize, sum: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() == d - 1 {
        let mut p = prefix.clone();
        p.push(sum);
        out.push(p);
        return;
    }
    for x in 0..=sum {
        prefix.push(x);
        compositions(d, sum - x, prefix, out);
        prefix.pop();
    }
}

/// Cubes `(lower corner, side)` of the quadtree over `[0, 2^k]^d`: the root
/// and every child of a split cube. A cube is split iff it holds a lattice
/// point of the hyperplane `sum x = target`; empty children stay as leaves.
fn quadtree_cubes(d: usize, k: u32, target: i64) -> Vec<(Vec<i64>, i64)> {
    let meets = |lo: &[i64], side: i64| {
        let s: i64 = lo.iter().sum();
        s <= target && target <= s + d as i64 * side
    };
    let mut out = Vec::new();
    let mut level = vec![vec![0i64; d]];
    let mut side = 1i64 << k;
    loop {
        out.extend(level.iter().map(|lo| (lo.clone(), side)));
        level.retain(|lo| meets(lo, side));
        if side == 1 {
            break;
        }
        let half = side / 2;
        let mut next = Vec::new();
        for lo in &level {
            for mask in 0..1usize << d {
                next.push((0..d).map(|i| lo[i] + if mask >> i & 1 == 1 { half } else { 0 }).collect());
            }
        }
        level = next;
        side = half;
    }
    out
}

fn cube_corners(lo: &[i64], side: i64) -> Vec<Vec<i64>> {
    let d = lo.len();
    (0..1usize << d).map(|mask| (0..d).map(|i| lo[i] + if mask >> i & 1 == 1 { side } else { 0 }).collect()).collect()
}

/// The graph of all quadtree cube edges over `S1 ∪ Ŝ1`, its mirror image, joined
/// at the origin. Overlapping collinear edges are merged and split at every
/// vertex on them, so the weight is the length of the union.
pub fn build_manhattan_highdim(c: &L1Construction) -> Result<SpannerGraph, AdversaryError> {
    let d = c.dim;
    let sum = (1i64 << c.k) - 2;
    let cubes = quadtree_cubes(d, c.k, sum);
    let mut g = SpannerGraph::new(d, Metric::L1);
    let mut ids: HashMap<Vec<i64>, VertexId> = HashMap::new();
    for p in c.all_points() {
        if !ids.contains_key(&p) {
            let (v, _) = g.add_input(&to_f(&p))?;
            ids.insert(p, v);
        }
    }
    for sign in [1i64, -1] {
        // (axis, other coordinates) -> covered intervals along the axis.
        let mut lines: BTreeMap<(usize, Vec<i64>), Vec<(i64, i64)>> = BTreeMap::new();
        let mut on_line: BTreeMap<(usize, Vec<i64>), BTreeSet<i64>> = BTreeMap::new();
        for (lo, side) in &cubes {
            let lo: Vec<i64> = lo.iter().map(|x| sign * x).collect();
            let side = sign * side;
            for corner in cube_corners(&lo, side) {
                for axis in 0..d {
                    if corner[axis] != lo[axis] {
                        continue;
                    }
                    let mut rest = corner.clone();
                    rest.remove(axis);
                    let (a, b) = (corner[axis].min(corner[axis] + side), corner[axis].max(corner[axis] + side));
                    lines.entry((axis, rest.clone())).or_default().push((a, b));
                    let set = on_line.entry((axis, rest)).or_default();
                    set.insert(a);
                    set.insert(b);
                }
            }
        }
        for ((axis, rest), mut iv) in lines {
            iv.sort();
            let marks = &on_line[&(axis, rest.clone())];
            let at = |t: i64| {
                let mut p = rest.clone();
                p.insert(axis, t);
                p
            };
            let pts: Vec<i64> = marks.iter().copied().collect();
            for w in pts.windows(2) {
                let covered = iv.iter().any(|&(a, b)| a <= w[0] && w[1] <= b);
                if covered {
                    join(&mut g, &mut ids, &at(w[0]), &at(w[1]))?;
                }
            }
        }
    }
    Ok(g)
}

/// Weight of `T1`; the two mirrored halves share only the origin.
pub fn tree_weight_highdim(c: &L1Construction) -> Result<f64, AdversaryError> {
    Ok(build_manhattan_highdim(c)?.weight() / 2.0)
}

/// Sum of `|pq|` over the edges of `g` that do not run along a coordinate axis;
/// zero for a Manhattan network.
pub fn non_axis_weight(g: &SpannerGraph) -> f64 {
    g.live_edges()
        .filter(|e| {
            let (a, b) = (g.coords(e.u), g.coords(e.v));
            a.iter().zip(b).filter(|(x, y)| x != y).count() > 1
        })
        .map(|e| dist(g.coords(e.u), g.coords(e.v), Metric::L1))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_example() {
        let c = build_l1_2d(0.25).unwrap();
        assert_eq!(c.k, 2);
        assert_eq!(c.s1, vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
        let mut hat = c.s1_hat.clone();
        hat.sort();
        assert_eq!(hat, vec![vec![0, 0], vec![0, 2], vec![2, 0]]);
        assert_eq!(c.cross_distance(), 6);
        assert!(verify_bipartite_necessity(&c));
    }

    #[test]
    fn original_coordinates_break_the_gap() {
        let c = build_l1_2d_with(0.25, true).unwrap();
        assert_eq!(c.cross_distance(), 8);
        assert!(!verify_bipartite_necessity(&c));
    }

    #[test]
    fn planar_network_weight() {
        for (eps, k) in [(0.25, 2), (0.0625, 4)] {
            let c = build_l1_2d(eps).unwrap();
            let g = build_manhattan_2d(&c).unwrap();
            let n = 1i64 << k;
            // Trees: k levels of weight 2^k each; staircase 2 (2^k - 1); twice.
            let expect = 2 * (k * n + 2 * (n - 1));
            assert_eq!(g.weight(), expect as f64);
            assert_eq!(non_axis_weight(&g), 0.0);
        }
    }

    #[test]
    fn simplex_slice_count() {
        let c = build_l1_highdim(0.25, 3).unwrap();
        assert_eq!(c.s1.len(), 6);
        assert!(c.s1.iter().all(|p| p.iter().sum::<i64>() == 2));
        assert!(build_l1_highdim(0.25, 2).is_err());
    }
}
