use crate::{check_input, sorted_pairs, Method, OracleError, OracleResult};
use spanlab_geometry::{Metric, Point};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(PartialEq, PartialOrd)]
struct Key(f64);

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0)
    }
}

/// Shortest path `s -> goal` if it is at most `limit`, else `None`.
fn bounded_dist(adj: &[Vec<(usize, f64)>], s: usize, goal: usize, limit: f64, seen: &mut Vec<f64>) -> Option<f64> {
    seen.iter_mut().for_each(|x| *x = f64::INFINITY);
    let mut heap = BinaryHeap::new();
    seen[s] = 0.0;
    heap.push(Reverse((Key(0.0), s)));
    while let Some(Reverse((Key(d), u))) = heap.pop() {
        if d > limit {
            return None;
        }
        if u == goal {
            return Some(d);
        }
        if d > seen[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < seen[v] && nd <= limit {
                seen[v] = nd;
                heap.push(Reverse((Key(nd), v)));
            }
        }
    }
    None
}

/// Path-greedy `t`-spanner: scan pairs by increasing distance and add `ij`
/// iff the current graph has no `ij`-path of weight at most `t |ij|`.
pub fn greedy_spanner(points: &[Point], t: f64, m: Metric) -> Result<OracleResult, OracleError> {
    check_input(points, t)?;
    let n = points.len();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    let mut seen = vec![f64::INFINITY; n];
    let mut edges = Vec::new();
    let mut weight = 0.0;
    for (i, j, d) in sorted_pairs(points, m) {
        if bounded_dist(&adj, i, j, t * d, &mut seen).is_none() {
            adj[i].push((j, d));
            adj[j].push((i, d));
            edges.push((i, j));
            weight += d;
        }
    }
    Ok(OracleResult { weight, edges, method: Method::Greedy, certified: false })
}
