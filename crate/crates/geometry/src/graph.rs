use crate::{dist, GeomError, Metric, Point, REL_TOL};
use std::collections::HashMap;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Input,
    Steiner,
}

impl VertexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Input => "input",
            VertexKind::Steiner => "steiner",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: f64,
    /// Position in the append-only edge sequence; equal to the edge id.
    pub index: EdgeId,
    /// Set once the edge has been replaced by two sub-edges.
    pub replaced_by: Option<(VertexId, [EdgeId; 2])>,
}

impl Edge {
    pub fn is_live(&self) -> bool {
        self.replaced_by.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LogEntry {
    Add(EdgeId),
    Subdivide { edge: EdgeId, vertex: VertexId, parts: [EdgeId; 2] },
}

fn coord_key(c: &[f64]) -> Box<[u64]> {
    // -0.0 and 0.0 are the same location.
    c.iter().map(|&x| if x == 0.0 { 0 } else { x.to_bits() }).collect()
}

/// Append-only weighted graph over input and Steiner vertices.
#[derive(Clone, Debug)]
pub struct SpannerGraph {
    dim: usize,
    metric: Metric,
    coords: Vec<f64>,
    kinds: Vec<VertexKind>,
    edges: Vec<Edge>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    by_coord: HashMap<Box<[u64]>, VertexId>,
    first_input: HashMap<Box<[u64]>, VertexId>,
    log: Vec<LogEntry>,
    weight: f64,
    inputs: Vec<VertexId>,
}

fn pair(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SpannerGraph {
    pub fn new(dim: usize, metric: Metric) -> Self {
        assert!(dim >= 1);
        SpannerGraph {
            dim,
            metric,
            coords: Vec::new(),
            kinds: Vec::new(),
            edges: Vec::new(),
            adj: Vec::new(),
            edge_index: HashMap::new(),
            by_coord: HashMap::new(),
            first_input: HashMap::new(),
            log: Vec::new(),
            weight: 0.0,
            inputs: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn num_vertices(&self) -> usize {
        self.kinds.len()
    }

    /// Number of edge records ever created, including replaced ones.
    pub fn num_edge_records(&self) -> usize {
        self.edges.len()
    }

    pub fn num_live_edges(&self) -> usize {
        self.edge_index.len()
    }

    pub fn coords(&self, v: VertexId) -> &[f64] {
        let i = v as usize * self.dim;
        &self.coords[i..i + self.dim]
    }

    pub fn point(&self, v: VertexId) -> Point {
        Point::new(self.coords(v).to_vec())
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.kinds[v as usize]
    }

    /// Input vertices in insertion order (coincident copies included).
    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e as usize]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn live_edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(|e| e.is_live())
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v as usize]
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    /// Total weight; subdivisions are weight-neutral.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Sum of the weights of the live edges (differs from [`weight`](Self::weight)
    /// only by rounding in subdivision parts).
    pub fn live_weight(&self) -> f64 {
        self.live_edges().map(|e| e.weight).sum()
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> f64 {
        dist(self.coords(u), self.coords(v), self.metric)
    }

    pub fn find_vertex(&self, c: &[f64]) -> Option<VertexId> {
        self.by_coord.get(&coord_key(c)).copied()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&pair(u, v)).copied()
    }

    fn check_coords(&self, c: &[f64]) -> Result<(), GeomError> {
        if c.len() != self.dim {
            return Err(GeomError::DimensionMismatch { expected: self.dim, got: c.len() });
        }
        if !c.iter().all(|x| x.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        Ok(())
    }

    fn push_vertex(&mut self, c: &[f64], kind: VertexKind) -> VertexId {
        let id = self.kinds.len() as VertexId;
        self.coords.extend_from_slice(c);
        self.kinds.push(kind);
        self.adj.push(Vec::new());
        if kind == VertexKind::Input {
            self.inputs.push(id);
        }
        id
    }

    /// Adds an input point. A copy of an earlier input point becomes a new vertex
    /// joined to the first copy by a zero-weight edge, which is returned.
    pub fn add_input(&mut self, c: &[f64]) -> Result<(VertexId, Option<EdgeId>), GeomError> {
        self.check_coords(c)?;
        let key = coord_key(c);
        let anchor = self.first_input.get(&key).or_else(|| self.by_coord.get(&key)).copied();
        let id = self.push_vertex(c, VertexKind::Input);
        self.first_input.entry(key.clone()).or_insert(id);
        match anchor {
            // A Steiner vertex already at this spot is joined at zero cost as well.
            Some(f) => Ok((id, Some(self.push_edge(f, id, 0.0)))),
            None => {
                self.by_coord.insert(key, id);
                Ok((id, None))
            }
        }
    }

    /// Returns the vertex at `c`, creating a Steiner vertex if none exists.
    /// The flag reports whether a vertex was created.
    pub fn add_steiner(&mut self, c: &[f64]) -> Result<(VertexId, bool), GeomError> {
        self.check_coords(c)?;
        let key = coord_key(c);
        if let Some(&v) = self.by_coord.get(&key) {
            return Ok((v, false));
        }
        let id = self.push_vertex(c, VertexKind::Steiner);
        self.by_coord.insert(key, id);
        Ok((id, true))
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId, weight: f64) -> EdgeId {
        let id = self.edges.len() as EdgeId;
        self.edges.push(Edge { u, v, weight, index: id, replaced_by: None });
        self.adj[u as usize].push((v, id));
        self.adj[v as usize].push((u, id));
        self.edge_index.insert(pair(u, v), id);
        self.log.push(LogEntry::Add(id));
        self.weight += weight;
        id
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GeomError> {
        if (v as usize) < self.kinds.len() {
            Ok(())
        } else {
            Err(GeomError::UnknownVertex(v))
        }
    }

    /// Adds edge `uv` weighted by the metric distance. Returns `None` if the edge
    /// already exists.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<Option<EdgeId>, GeomError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GeomError::SelfLoop(u));
        }
        if self.edge_index.contains_key(&pair(u, v)) {
            return Ok(None);
        }
        let w = self.distance(u, v);
        Ok(Some(self.push_edge(u, v, w)))
    }

    /// Replaces live edge `e` by two sub-edges through the point `c`, which must lie
    /// on the segment strictly between the endpoints. An existing vertex at `c`
    /// is reused.
    pub fn subdivide(&mut self, e: EdgeId, c: &[f64]) -> Result<(VertexId, [EdgeId; 2]), GeomError> {
        let edge = self.edges.get(e as usize).ok_or(GeomError::UnknownEdge(e))?.clone();
        if !edge.is_live() {
            return Err(GeomError::EdgeNotLive(e));
        }
        self.check_coords(c)?;
        let a = self.coords(edge.u).to_vec();
        let b = self.coords(edge.v).to_vec();
        let (da, db) = (dist(&a, c, self.metric), dist(c, &b, self.metric));
        let tol = REL_TOL * edge.weight.max(1e-300) * 16.0;
        if da <= 0.0 || db <= 0.0 || (da + db - edge.weight).abs() > tol {
            return Err(GeomError::NotOnSegment(e));
        }
        if let Some(x) = self.find_vertex(c) {
            if x == edge.u
                || x == edge.v
                || self.edge_index.contains_key(&pair(edge.u, x))
                || self.edge_index.contains_key(&pair(x, edge.v))
            {
                return Err(GeomError::NotOnSegment(e));
            }
        }
        let (x, _) = self.add_steiner(c)?;
        self.edge_index.remove(&pair(edge.u, edge.v));
        self.adj[edge.u as usize].retain(|&(_, id)| id != e);
        self.adj[edge.v as usize].retain(|&(_, id)| id != e);
        let saved = self.weight;
        let e1 = self.push_edge(edge.u, x, da);
        let e2 = self.push_edge(x, edge.v, db);
        // push_edge logged two additions; collapse them into one subdivision entry.
        self.log.truncate(self.log.len() - 2);
        self.log.push(LogEntry::Subdivide { edge: e, vertex: x, parts: [e1, e2] });
        self.weight = saved;
        self.edges[e as usize].replaced_by = Some((x, [e1, e2]));
        Ok((x, [e1, e2]))
    }

    /// Recomputes the total weight by replaying the edge log.
    pub fn replay_weight(&self) -> f64 {
        let mut w = 0.0;
        for entry in &self.log {
            if let LogEntry::Add(e) = entry {
                w += self.edges[*e as usize].weight;
            }
        }
        w
    }

    /// Rebuilds a graph from raw records, as read from a graph file.
    pub(crate) fn from_records(
        dim: usize,
        metric: Metric,
        vertices: Vec<(VertexKind, Vec<f64>)>,
        edges: Vec<Edge>,
    ) -> Result<Self, GeomError> {
        let mut g = SpannerGraph::new(dim, metric);
        for (kind, c) in &vertices {
            g.check_coords(c)?;
            let key = coord_key(c);
            let id = g.push_vertex(c, *kind);
            if *kind == VertexKind::Input {
                g.first_input.entry(key.clone()).or_insert(id);
            }
            g.by_coord.entry(key).or_insert(id);
        }
        let mut parts = vec![false; edges.len()];
        for e in &edges {
            if let Some((_, [a, b])) = e.replaced_by {
                for p in [a, b] {
                    *parts.get_mut(p as usize).ok_or(GeomError::UnknownEdge(p))? = true;
                }
            }
        }
        for (i, e) in edges.iter().enumerate() {
            g.check_vertex(e.u)?;
            g.check_vertex(e.v)?;
            if e.index as usize != i {
                return Err(GeomError::UnknownEdge(e.index));
            }
            g.edges.push(e.clone());
            if !parts[i] {
                g.weight += e.weight;
                g.log.push(LogEntry::Add(e.index));
            }
            if let Some((x, p)) = e.replaced_by {
                g.log.push(LogEntry::Subdivide { edge: e.index, vertex: x, parts: p });
            }
        }
        for e in &g.edges {
            if e.is_live() {
                g.adj[e.u as usize].push((e.v, e.index));
                g.adj[e.v as usize].push((e.u, e.index));
                g.edge_index.insert(pair(e.u, e.v), e.index);
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coincident_inputs_get_zero_link() {
        let mut g = SpannerGraph::new(2, Metric::L2);
        let (a, _) = g.add_input(&[0.0, 0.0]).unwrap();
        let (b, link) = g.add_input(&[-0.0, 0.0]).unwrap();
        let e = link.unwrap();
        assert_eq!((g.edge(e).u, g.edge(e).v, g.edge(e).weight), (a, b, 0.0));
        assert_eq!(g.inputs(), &[a, b]);
    }

    #[test]
    fn duplicate_edges_and_self_loops() {
        let mut g = SpannerGraph::new(1, Metric::L2);
        let (a, _) = g.add_input(&[0.0]).unwrap();
        let (b, _) = g.add_input(&[2.0]).unwrap();
        assert!(g.add_edge(a, b).unwrap().is_some());
        assert!(g.add_edge(b, a).unwrap().is_none());
        assert!(matches!(g.add_edge(a, a), Err(GeomError::SelfLoop(_))));
        assert!(matches!(g.add_edge(a, 9), Err(GeomError::UnknownVertex(9))));
    }

    #[test]
    fn subdivision_is_weight_neutral() {
        let mut g = SpannerGraph::new(2, Metric::L2);
        let (a, _) = g.add_input(&[0.0, 0.0]).unwrap();
        let (b, _) = g.add_input(&[3.0, 4.0]).unwrap();
        let e = g.add_edge(a, b).unwrap().unwrap();
        let (x, [e1, e2]) = g.subdivide(e, &[0.6, 0.8]).unwrap();
        assert_eq!(g.kind(x), VertexKind::Steiner);
        assert_eq!(g.weight(), 5.0);
        assert!((g.live_weight() - 5.0).abs() < 1e-12);
        assert_eq!(g.num_live_edges(), 2);
        assert_eq!(g.edge(e1).weight, 1.0);
        assert_eq!(g.edge(e2).weight, 4.0);
        assert!(g.edge_between(a, b).is_none());
        assert!(g.subdivide(e, &[1.5, 2.0]).is_err());
        assert!(g.subdivide(e1, &[0.3, 0.5]).is_err());
        assert_eq!(g.replay_weight(), g.weight());
    }
}
