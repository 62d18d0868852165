//! Shallow-light trees from a root to leaves lying on a segment (or, in
//! higher dimension, on a hyperplane patch).
//!
//! Dyadic mode: the leaf set is halved recursively (by angle as seen from
//! the root); the group at depth `j` gets a hub on the segment from its
//! parent hub toward the group's angular midpoint, at offset
//! `dist / (kappa0 * 2^(1.5 j / m))` from the leaf plane (`m` is the
//! dimension of the leaf patch). A depth-`j` hub may spend the fraction
//! `1 - 2^-(j+1)` of the stretch budget on the leaves of its group; if the
//! scheduled height overspends, the hub is raised toward its parent, and if
//! no height works the group hangs off the parent directly.

use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SltMode {
    #[default]
    Dyadic,
    Star,
}

impl FromStr for SltMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dyadic" => Ok(SltMode::Dyadic),
            "star" => Ok(SltMode::Star),
            _ => Err(format!("unknown slt mode '{s}' (expected dyadic or star)")),
        }
    }
}

impl std::fmt::Display for SltMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SltMode::Dyadic => "dyadic",
            SltMode::Star => "star",
        })
    }
}

pub const DEFAULT_KAPPA0: f64 = 8.0;

/// Tree whose node 0 is the root; `parent[i]` is `None` only for the root.
/// Leaves are nodes `first_leaf..`.
#[derive(Clone, Debug)]
pub struct SltTree {
    pub nodes: Vec<Vec<f64>>,
    pub parent: Vec<Option<usize>>,
    pub first_leaf: usize,
    /// Distance from the root to the leaf line/plane.
    pub dist: f64,
    pub eps: f64,
    path: Vec<f64>,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn d2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl SltTree {
    fn finish(mut self) -> Self {
        self.path = vec![0.0; self.nodes.len()];
        // Parents always precede children.
        for i in 1..self.nodes.len() {
            let p = self.parent[i].unwrap();
            self.path[i] = self.path[p] + d2(&self.nodes[p], &self.nodes[i]);
        }
        self
    }

    pub fn root(&self) -> &[f64] {
        &self.nodes[0]
    }

    pub fn num_leaves(&self) -> usize {
        self.nodes.len() - self.first_leaf
    }

    pub fn num_hubs(&self) -> usize {
        self.first_leaf - 1
    }

    pub fn leaf(&self, i: usize) -> &[f64] {
        &self.nodes[self.first_leaf + i]
    }

    /// `(child, parent)` node pairs, one per tree edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.nodes.len()).map(|i| (i, self.parent[i].unwrap()))
    }

    pub fn weight(&self) -> f64 {
        self.edges().map(|(a, b)| d2(&self.nodes[a], &self.nodes[b])).sum()
    }

    /// Tree distance from the root to node `i`.
    pub fn path_len(&self, node: usize) -> f64 {
        self.path[node]
    }

    /// Nodes from `node` up to the root, inclusive.
    pub fn path_to_root(&self, node: usize) -> Vec<usize> {
        let mut out = vec![node];
        let mut x = node;
        while let Some(p) = self.parent[x] {
            out.push(p);
            x = p;
        }
        out
    }

    /// Worst ratio of tree distance to straight distance over the leaves.
    pub fn max_root_stretch(&self) -> f64 {
        (self.first_leaf..self.nodes.len())
            .map(|i| {
                let direct = d2(&self.nodes[0], &self.nodes[i]);
                if direct == 0.0 {
                    1.0
                } else {
                    self.path[i] / direct
                }
            })
            .fold(1.0, f64::max)
    }
}

/// Builds the tree in local coordinates: the root is the origin, leaf `i`
/// sits at `(dist, lateral[i])`.
pub(crate) fn build_local(lateral: &[Vec<f64>], dist: f64, eps: f64, mode: SltMode, kappa0: f64) -> SltTree {
    let m = lateral.first().map_or(0, |l| l.len());
    let mut tree = SltTree {
        nodes: vec![vec![0.0; m + 1]],
        parent: vec![None],
        first_leaf: 0,
        dist,
        eps,
        path: Vec::new(),
    };
    let leaves: Vec<Vec<f64>> = lateral
        .iter()
        .map(|l| {
            let mut v = vec![dist];
            v.extend_from_slice(l);
            v
        })
        .collect();
    let mut leaf_parent = vec![0usize; leaves.len()];
    if mode == SltMode::Dyadic && dist > 0.0 && leaves.len() > 1 {
        let b = Builder { leaves: &leaves, dist, eps, kappa0, m: m.max(1) };
        let all: Vec<usize> = (0..leaves.len()).collect();
        b.rec(&mut tree, &mut leaf_parent, all, 0, 0.0, 0);
    }
    tree.first_leaf = tree.nodes.len();
    for (i, l) in leaves.into_iter().enumerate() {
        tree.nodes.push(l);
        tree.parent.push(Some(leaf_parent[i]));
    }
    tree.finish()
}

struct Builder<'a> {
    leaves: &'a [Vec<f64>],
    dist: f64,
    eps: f64,
    kappa0: f64,
    m: usize,
}

impl Builder<'_> {
    /// Point at height `dist - y` on the segment from `parent` toward `(dist, mid)`.
    fn hub_at(&self, parent: &[f64], mid: &[f64], y: f64) -> Vec<f64> {
        let a = self.dist - y;
        let t = (a - parent[0]) / (self.dist - parent[0]);
        let mut h = vec![a];
        h.extend(mid.iter().zip(&parent[1..]).map(|(m, p)| p + t * (m - p)));
        h
    }

    fn feasible(&self, group: &[usize], parent: &[f64], ppath: f64, h: &[f64], slack: f64) -> bool {
        let up = ppath + d2(parent, h);
        group.iter().all(|&i| {
            let x = &self.leaves[i];
            up + d2(h, x) <= (1.0 + slack) * norm(x)
        })
    }

    fn rec(&self, t: &mut SltTree, leaf_parent: &mut [usize], group: Vec<usize>, parent: usize, ppath: f64, j: u32) {
        let pnode = t.nodes[parent].clone();
        let y_top = self.dist - pnode[0];
        if group.len() == 1 || y_top <= 1e-12 * self.dist {
            for &i in &group {
                leaf_parent[i] = parent;
            }
            return;
        }
        // Angular extent per lateral axis, seen from the root.
        let m = self.leaves[group[0]].len() - 1;
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for &i in &group {
            for k in 0..m {
                let a = self.leaves[i][k + 1].atan2(self.dist);
                lo[k] = lo[k].min(a);
                hi[k] = hi[k].max(a);
            }
        }
        let mid_angle: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
        let mid: Vec<f64> = mid_angle.iter().map(|a| self.dist * a.tan()).collect();
        // Hubs at depth j may use the fraction 1 - 2^-(j+1) of the stretch budget.
        let slack = self.eps * (1.0 - (-(j as f64 + 1.0)).exp2());
        let y_sched = (self.dist / (self.kappa0 * (1.5 * j as f64 / self.m as f64).exp2())).min(y_top);
        let ok = |y: f64| self.feasible(&group, &pnode, ppath, &self.hub_at(&pnode, &mid, y), slack);
        let mut hub = None;
        if y_sched < y_top && ok(y_sched) {
            hub = Some(y_sched);
        } else if ok(y_top) {
            let (mut a, mut b) = (y_sched, y_top);
            for _ in 0..40 {
                let c = 0.5 * (a + b);
                if ok(c) {
                    b = c;
                } else {
                    a = c;
                }
            }
            hub = Some(b);
        }
        // A hub at the parent's height buys nothing.
        let hub = hub.filter(|&y| y < y_top * (1.0 - 1e-9));
        let (node, npath) = match hub {
            Some(y) => {
                let h = self.hub_at(&pnode, &mid, y);
                let np = ppath + d2(&pnode, &h);
                t.nodes.push(h);
                t.parent.push(Some(parent));
                (t.nodes.len() - 1, np)
            }
            None => (parent, ppath),
        };
        if group.len() <= 2 {
            for &i in &group {
                leaf_parent[i] = node;
            }
            return;
        }
        let axis = (0..m).max_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b]))).unwrap_or(0);
        let (mut left, mut right): (Vec<usize>, Vec<usize>) =
            group.iter().partition(|&&i| self.leaves[i][axis + 1] <= mid[axis]);
        if left.is_empty() || right.is_empty() {
            let mut g = group;
            right = g.split_off(g.len() / 2);
            left = g;
        }
        self.rec(t, leaf_parent, left, node, npath, j + 1);
        self.rec(t, leaf_parent, right, node, npath, j + 1);
    }
}

/// Shallow-light tree from `root` to `leaves` (collinear, or coplanar in a
/// hyperplane patch). A root lying in the leaves' affine hull yields a star.
pub fn build_slt(root: &[f64], leaves: &[Vec<f64>], eps: f64, mode: SltMode) -> SltTree {
    build_slt_with(root, leaves, eps, mode, DEFAULT_KAPPA0)
}

pub fn build_slt_with(root: &[f64], leaves: &[Vec<f64>], eps: f64, mode: SltMode, kappa0: f64) -> SltTree {
    let dim = root.len();
    if leaves.is_empty() {
        return SltTree { nodes: vec![root.to_vec()], parent: vec![None], first_leaf: 1, dist: 0.0, eps, path: Vec::new() }
            .finish();
    }
    // Orthonormal basis of the leaves' affine hull.
    let scale = leaves.iter().map(|l| d2(l, root)).fold(0.0, f64::max).max(1e-300);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for l in &leaves[1..] {
        let mut v = sub(l, &leaves[0]);
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
        let n = norm(&v);
        if n > 1e-9 * scale && basis.len() < dim {
            basis.push(v.iter().map(|x| x / n).collect());
        }
    }
    let mut off = sub(&leaves[0], root);
    for b in &basis {
        let dot: f64 = off.iter().zip(b).map(|(x, y)| x * y).sum();
        off.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
    }
    let dist = norm(&off);
    let mode = if dist <= 1e-12 * scale { SltMode::Star } else { mode };
    let axis: Vec<f64> = if dist > 0.0 { off.iter().map(|x| x / dist).collect() } else { vec![0.0; dim] };
    let lateral: Vec<Vec<f64>> = leaves
        .iter()
        .map(|l| {
            let r = sub(l, root);
            basis.iter().map(|b| r.iter().zip(b).map(|(x, y)| x * y).sum()).collect()
        })
        .collect();
    let mut t = build_local(&lateral, dist, eps, mode, kappa0);
    // Back to world coordinates; leaves keep their exact input coordinates.
    for i in 0..t.nodes.len() {
        if i >= t.first_leaf {
            t.nodes[i] = leaves[i - t.first_leaf].clone();
            continue;
        }
        let loc = t.nodes[i].clone();
        let mut w = root.to_vec();
        for k in 0..dim {
            w[k] += loc[0] * axis[k] + basis.iter().enumerate().map(|(m, b)| loc[m + 1] * b[k]).sum::<f64>();
        }
        t.nodes[i] = w;
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn segment(dist: f64, half: i32) -> (Vec<f64>, Vec<Vec<f64>>) {
        (vec![0.0, 0.0], (-half..=half).map(|i| vec![i as f64, dist]).collect())
    }

    #[test]
    fn one_leaf_is_direct() {
        let t = build_slt(&[0.0, 0.0], &[vec![3.0, 4.0]], 0.25, SltMode::Dyadic);
        assert_eq!(t.num_hubs(), 0);
        assert_eq!(t.weight(), 5.0);
        assert_eq!(t.max_root_stretch(), 1.0);
    }

    #[test]
    fn two_symmetric_leaves_share_a_hub() {
        // Hub at height 10 - 10/8 = 8.75 on the axis: path 8.75 + sqrt(1.25^2 + 1)
        // = 10.3508 <= 1.05 sqrt(101) = 10.5524 (half the budget at depth 0).
        let t = build_slt(&[0.0, 0.0], &[vec![-1.0, 10.0], vec![1.0, 10.0]], 0.1, SltMode::Dyadic);
        assert_eq!(t.num_hubs(), 1);
        let expect = 8.75 + (1.25f64 * 1.25 + 1.0).sqrt();
        assert!((t.path_len(t.first_leaf) - expect).abs() < 1e-12);
        assert!(t.max_root_stretch() <= 1.1);
    }

    #[test]
    fn thirty_two_leaves() {
        let root = vec![0.0, 0.0];
        let leaves: Vec<Vec<f64>> = (0..32).map(|i| vec![i as f64 - 15.5, 10.0]).collect();
        let t = build_slt(&root, &leaves, 0.1, SltMode::Dyadic);
        assert!(t.max_root_stretch() <= 1.1 * (1.0 + 1e-9));
        assert!(t.weight() <= 100.0);
    }

    #[test]
    fn root_on_segment_degenerates_to_star() {
        let t = build_slt(&[0.0, 0.0], &[vec![-1.0, 0.0], vec![2.0, 0.0], vec![3.0, 0.0]], 0.1, SltMode::Dyadic);
        assert_eq!(t.num_hubs(), 0);
        assert_eq!(t.max_root_stretch(), 1.0);
    }

    #[test]
    fn star_mode_has_unit_stretch() {
        let (r, l) = segment(4.0, 4);
        let t = build_slt(&r, &l, 0.25, SltMode::Star);
        assert_eq!(t.num_hubs(), 0);
        assert_eq!(t.max_root_stretch(), 1.0);
    }

    #[test]
    fn dyadic_contract_grid() {
        for eps in [0.25, 0.0625] {
            for dist in [4.0, 16.0] {
                let (r, l) = segment(dist, dist as i32);
                let t = build_slt(&r, &l, eps, SltMode::Dyadic);
                assert!(t.max_root_stretch() <= (1.0 + eps) * (1.0 + 1e-9));
                assert!(t.weight() <= 10.0 * dist, "eps={eps} dist={dist} w={}", t.weight());
            }
        }
    }

    #[test]
    fn planar_patch_in_3d() {
        let mut leaves = Vec::new();
        for a in -3..=3 {
            for b in -3..=3 {
                leaves.push(vec![a as f64, b as f64, 6.0]);
            }
        }
        let t = build_slt(&[0.0, 0.0, 0.0], &leaves, 0.25, SltMode::Dyadic);
        assert!(t.num_hubs() > 0);
        assert!(t.max_root_stretch() <= 1.25 * (1.0 + 1e-9));
        assert!(t.weight() < leaves.iter().map(|l| norm(l)).sum::<f64>());
    }
}
