use crate::{GeomError, SpannerGraph, VertexId, REL_TOL};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

/// Compressed adjacency snapshot of the live edges of a graph.
#[derive(Clone, Debug)]
pub struct Csr {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    weights: Vec<f64>,
}

impl Csr {
    pub fn from_graph(g: &SpannerGraph) -> Self {
        let n = g.num_vertices();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * g.num_live_edges());
        let mut weights = Vec::with_capacity(2 * g.num_live_edges());
        offsets.push(0);
        for v in 0..n as VertexId {
            for &(w, e) in g.neighbors(v) {
                targets.push(w);
                weights.push(g.edge(e).weight);
            }
            offsets.push(targets.len());
        }
        Csr { offsets, targets, weights }
    }

    /// Snapshot that keeps shortest-path distances between vertices with
    /// `keep[v]` set: other vertices of degree at most one are pruned and
    /// those of degree two are spliced out. Vertex ids are unchanged.
    pub fn reduced(g: &SpannerGraph, keep: &[bool]) -> Self {
        let n = g.num_vertices();
        let mut adj: Vec<Vec<(VertexId, f64)>> = vec![Vec::new(); n];
        fn link(adj: &mut [Vec<(VertexId, f64)>], a: VertexId, b: VertexId, w: f64) -> bool {
            match adj[a as usize].iter_mut().find(|x| x.0 == b) {
                Some(x) => {
                    if w < x.1 {
                        x.1 = w;
                        adj[b as usize].iter_mut().find(|x| x.0 == a).unwrap().1 = w;
                    }
                    false
                }
                None => {
                    adj[a as usize].push((b, w));
                    adj[b as usize].push((a, w));
                    true
                }
            }
        }
        for e in g.live_edges() {
            link(&mut adj, e.u, e.v, e.weight);
        }
        let mut queue: Vec<VertexId> = (0..n as VertexId).filter(|&v| !keep[v as usize]).collect();
        while let Some(v) = queue.pop() {
            let vi = v as usize;
            if keep[vi] || adj[vi].len() > 2 {
                continue;
            }
            let nb = std::mem::take(&mut adj[vi]);
            for &(x, _) in &nb {
                adj[x as usize].retain(|y| y.0 != v);
            }
            if let [(a, wa), (b, wb)] = nb[..] {
                link(&mut adj, a, b, wa + wb);
            }
            for &(x, _) in &nb {
                if !keep[x as usize] && adj[x as usize].len() <= 2 {
                    queue.push(x);
                }
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        offsets.push(0);
        for list in &adj {
            for &(w, wt) in list {
                targets.push(w);
                weights.push(wt);
            }
            offsets.push(targets.len());
        }
        Csr { offsets, targets, weights }
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_arcs(&self) -> usize {
        self.targets.len()
    }

    fn arcs(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        let r = self.offsets[v as usize]..self.offsets[v as usize + 1];
        self.targets[r.clone()].iter().copied().zip(self.weights[r].iter().copied())
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Item {
    d: f64,
    v: VertexId,
}

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.d.total_cmp(&self.d).then_with(|| o.v.cmp(&self.v))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Reusable single-source shortest path state.
struct Search {
    dist: Vec<f64>,
    parent: Vec<VertexId>,
    touched: Vec<VertexId>,
    heap: BinaryHeap<Item>,
}

impl Search {
    fn new(n: usize) -> Self {
        Search {
            dist: vec![f64::INFINITY; n],
            parent: vec![VertexId::MAX; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v as usize] = f64::INFINITY;
            self.parent[v as usize] = VertexId::MAX;
        }
        self.touched.clear();
        self.heap.clear();
    }

    /// Runs Dijkstra from `src`; `settle` is called on every settled vertex and
    /// stops the search when it returns false.
    fn run(&mut self, csr: &Csr, src: VertexId, mut settle: impl FnMut(VertexId, f64) -> bool) {
        self.reset();
        self.dist[src as usize] = 0.0;
        self.touched.push(src);
        self.heap.push(Item { d: 0.0, v: src });
        while let Some(Item { d, v }) = self.heap.pop() {
            if d > self.dist[v as usize] {
                continue;
            }
            if !settle(v, d) {
                return;
            }
            for (w, wt) in csr.arcs(v) {
                let nd = d + wt;
                if nd < self.dist[w as usize] {
                    if self.dist[w as usize] == f64::INFINITY {
                        self.touched.push(w);
                    }
                    self.dist[w as usize] = nd;
                    self.parent[w as usize] = v;
                    self.heap.push(Item { d: nd, v: w });
                }
            }
        }
    }
}

/// Full single-source distances from `src`.
pub fn dijkstra(csr: &Csr, src: VertexId) -> Vec<f64> {
    let mut s = Search::new(csr.num_vertices());
    s.run(csr, src, |_, _| true);
    s.dist
}

fn check(g: &SpannerGraph, v: VertexId) -> Result<(), GeomError> {
    if (v as usize) < g.num_vertices() {
        Ok(())
    } else {
        Err(GeomError::UnknownVertex(v))
    }
}

/// Weight of a lightest `u`-`v` path; infinity if disconnected.
pub fn shortest_path_weight(g: &SpannerGraph, u: VertexId, v: VertexId) -> Result<f64, GeomError> {
    Ok(shortest_path(g, u, v)?.map_or(f64::INFINITY, |(w, _)| w))
}

/// Lightest `u`-`v` path as a vertex sequence, or `None` if disconnected.
pub fn shortest_path(
    g: &SpannerGraph,
    u: VertexId,
    v: VertexId,
) -> Result<Option<(f64, Vec<VertexId>)>, GeomError> {
    check(g, u)?;
    check(g, v)?;
    let csr = Csr::from_graph(g);
    let mut s = Search::new(csr.num_vertices());
    let mut found = None;
    s.run(&csr, u, |x, d| {
        if x == v {
            found = Some(d);
            false
        } else {
            true
        }
    });
    Ok(found.map(|d| {
        let mut path = vec![v];
        let mut x = v;
        while x != u {
            x = s.parent[x as usize];
            path.push(x);
        }
        path.reverse();
        (d, path)
    }))
}

#[derive(Clone, Debug)]
pub enum PairSet {
    AllInputs,
    Explicit(Vec<(VertexId, VertexId)>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub u: VertexId,
    pub v: VertexId,
    pub path_weight: f64,
    pub direct: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StretchReport {
    pub max_stretch: f64,
    pub witness: Option<Witness>,
    pub pairs_checked: u64,
    pub t: f64,
}

impl StretchReport {
    /// Certification with the shared tolerance: `max_stretch <= t (1 + 1e-9)`.
    pub fn passed(&self) -> bool {
        self.max_stretch <= self.t * (1.0 + REL_TOL)
    }

    fn merge(self, o: StretchReport) -> StretchReport {
        let pairs_checked = self.pairs_checked + o.pairs_checked;
        let take_other = match (&self.witness, &o.witness) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => stretch_of(b.path_weight, b.direct) > stretch_of(a.path_weight, a.direct),
        };
        let mut r = if take_other { o } else { self };
        r.pairs_checked = pairs_checked;
        r
    }
}

fn stretch_of(path: f64, direct: f64) -> f64 {
    if direct > 0.0 {
        path / direct
    } else if path.is_finite() {
        1.0
    } else {
        f64::INFINITY
    }
}

/// Certifies the stretch of `g` over input pairs by one Dijkstra per source.
pub fn verify_stretch(g: &SpannerGraph, pairs: &PairSet, t: f64) -> StretchReport {
    let n = g.num_vertices();
    let mut keep = vec![false; n];
    match pairs {
        PairSet::AllInputs => g.inputs().iter().for_each(|&v| keep[v as usize] = true),
        PairSet::Explicit(list) => list.iter().for_each(|&(u, v)| {
            keep[u as usize] = true;
            keep[v as usize] = true;
        }),
    }
    let csr = Csr::reduced(g, &keep);
    let empty = StretchReport { max_stretch: 1.0, witness: None, pairs_checked: 0, t };
    let by_src: Vec<(VertexId, Vec<VertexId>)> = match pairs {
        PairSet::AllInputs => Vec::new(),
        PairSet::Explicit(list) => {
            let mut m: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
            for &(u, v) in list {
                m.entry(u).or_default().push(v);
            }
            let mut jobs: Vec<_> = m.into_iter().collect();
            jobs.sort_by_key(|j| j.0);
            jobs
        }
    };
    // Per source: the targets that need a distance.
    let jobs: Vec<(VertexId, &[VertexId])> = match pairs {
        PairSet::AllInputs => {
            let inp = g.inputs();
            (0..inp.len().saturating_sub(1)).map(|i| (inp[i], &inp[i + 1..])).collect()
        }
        PairSet::Explicit(_) => by_src.iter().map(|(u, v)| (*u, v.as_slice())).collect(),
    };
    jobs.par_iter()
        .map_init(
            || (Search::new(n), vec![0u32; n], 0u32),
            |(search, mark, stamp), (src, targets)| {
                *stamp += 1;
                let mut remaining = 0usize;
                for &v in targets.iter() {
                    if mark[v as usize] != *stamp {
                        mark[v as usize] = *stamp;
                        remaining += 1;
                    }
                }
                let st = *stamp;
                search.run(&csr, *src, |v, _| {
                    if mark[v as usize] == st {
                        remaining -= 1;
                    }
                    remaining > 0
                });
                let mut rep = StretchReport { max_stretch: 1.0, witness: None, pairs_checked: 0, t };
                let mut worst = f64::NEG_INFINITY;
                for &v in targets.iter() {
                    let d = search.dist[v as usize];
                    let direct = g.distance(*src, v);
                    let s = stretch_of(d, direct);
                    rep.pairs_checked += 1;
                    if s > worst {
                        worst = s;
                        rep.witness = Some(Witness { u: *src, v, path_weight: d, direct });
                    }
                }
                rep.max_stretch = worst.max(1.0);
                rep
            },
        )
        .reduce(|| empty.clone(), StretchReport::merge)
}
