//! Text formats for point sets and graphs.
//!
//! Point file: a `dim <d>` line followed by one point per line.
//!
//! Graph file:
//! ```text
//! graph <d> <metric>
//! vertex <id> <input|steiner> <coords...>
//! edge <u> <v> <weight> <index>
//! split <u> <v> <weight> <index> <vertex> <part1> <part2>
//! ```
//! `split` records an edge that was later subdivided. Numbers are written with
//! the shortest representation that parses back to the same `f64`, so a
//! write/read/write cycle is byte-identical.

use crate::{Edge, GeomError, Metric, Point, SpannerGraph, VertexKind};
use std::fmt::Write as _;
use std::io::{BufRead, Write};

fn perr(line: usize, msg: impl Into<String>) -> GeomError {
    GeomError::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize) -> Result<T, GeomError> {
    let t = tok.ok_or_else(|| perr(line, "missing field"))?;
    t.parse().map_err(|_| perr(line, format!("bad number '{t}'")))
}

fn content_lines(r: impl BufRead) -> impl Iterator<Item = (usize, std::io::Result<String>)> {
    r.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| match l {
        Ok(s) => {
            let s = s.trim();
            !s.is_empty() && !s.starts_with('#')
        }
        Err(_) => true,
    })
}

pub fn read_points(r: impl BufRead) -> Result<(usize, Vec<Point>), GeomError> {
    let mut lines = content_lines(r);
    let (ln, header) = lines.next().ok_or_else(|| perr(1, "empty point file"))?;
    let header = header?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("dim") {
        return Err(perr(ln, "expected 'dim <d>'"));
    }
    let dim: usize = num(toks.next(), ln)?;
    if dim == 0 {
        return Err(perr(ln, "dimension must be positive"));
    }
    let mut pts = Vec::new();
    for (ln, l) in lines {
        let l = l?;
        let coords: Vec<f64> =
            l.split_whitespace().map(|t| num(Some(t), ln)).collect::<Result<_, _>>()?;
        if coords.len() != dim {
            return Err(perr(ln, format!("expected {dim} coordinates, got {}", coords.len())));
        }
        pts.push(Point::checked(coords).map_err(|e| perr(ln, e.to_string()))?);
    }
    Ok((dim, pts))
}

pub fn write_points(w: &mut impl Write, dim: usize, pts: &[Point]) -> Result<(), GeomError> {
    let mut s = format!("dim {dim}\n");
    for p in pts {
        let cs: Vec<String> = p.coords().iter().map(|c| format!("{c}")).collect();
        s.push_str(&cs.join(" "));
        s.push('\n');
    }
    w.write_all(s.as_bytes())?;
    Ok(())
}

pub fn graph_to_string(g: &SpannerGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph {} {}", g.dim(), g.metric());
    for v in 0..g.num_vertices() as u32 {
        let _ = write!(s, "vertex {v} {}", g.kind(v).as_str());
        for c in g.coords(v) {
            let _ = write!(s, " {c}");
        }
        s.push('\n');
    }
    for e in g.edges() {
        match e.replaced_by {
            None => {
                let _ = writeln!(s, "edge {} {} {} {}", e.u, e.v, e.weight, e.index);
            }
            Some((x, [a, b])) => {
                let _ = writeln!(s, "split {} {} {} {} {x} {a} {b}", e.u, e.v, e.weight, e.index);
            }
        }
    }
    s
}

pub fn write_graph(w: &mut impl Write, g: &SpannerGraph) -> Result<(), GeomError> {
    w.write_all(graph_to_string(g).as_bytes())?;
    Ok(())
}

pub fn read_graph(r: impl BufRead) -> Result<SpannerGraph, GeomError> {
    let mut lines = content_lines(r);
    let (ln, header) = lines.next().ok_or_else(|| perr(1, "empty graph file"))?;
    let header = header?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("graph") {
        return Err(perr(ln, "expected 'graph <d> <metric>'"));
    }
    let dim: usize = num(toks.next(), ln)?;
    let metric: Metric =
        toks.next().ok_or_else(|| perr(ln, "missing metric"))?.parse().map_err(|m: String| perr(ln, m))?;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let l = l?;
        let mut t = l.split_whitespace();
        match t.next() {
            Some("vertex") => {
                let id: usize = num(t.next(), ln)?;
                if id != vertices.len() {
                    return Err(perr(ln, "vertex ids must be consecutive from 0"));
                }
                let kind = match t.next() {
                    Some("input") => VertexKind::Input,
                    Some("steiner") => VertexKind::Steiner,
                    _ => return Err(perr(ln, "vertex kind must be input or steiner")),
                };
                let c: Vec<f64> = t.map(|x| num(Some(x), ln)).collect::<Result<_, _>>()?;
                if c.len() != dim {
                    return Err(perr(ln, "wrong coordinate count"));
                }
                vertices.push((kind, c));
            }
            Some(tag @ ("edge" | "split")) => {
                let u = num(t.next(), ln)?;
                let v = num(t.next(), ln)?;
                let weight: f64 = num(t.next(), ln)?;
                let index = num(t.next(), ln)?;
                let replaced_by = if tag == "split" {
                    Some((num(t.next(), ln)?, [num(t.next(), ln)?, num(t.next(), ln)?]))
                } else {
                    None
                };
                edges.push(Edge { u, v, weight, index, replaced_by });
            }
            _ => return Err(perr(ln, "unknown record")),
        }
    }
    let g = SpannerGraph::from_records(dim, metric, vertices, edges)?;
    for e in g.edges() {
        let d = g.distance(e.u, e.v);
        if (d - e.weight).abs() > crate::REL_TOL * d.max(1.0) {
            return Err(perr(0, format!("edge {} weight {} differs from distance {d}", e.index, e.weight)));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip() {
        let pts = vec![Point::from([0.1, -2.5e-17]), Point::from([1.0 / 3.0, 7.0])];
        let mut buf = Vec::new();
        write_points(&mut buf, 2, &pts).unwrap();
        let (d, back) = read_points(&buf[..]).unwrap();
        assert_eq!(d, 2);
        assert_eq!(back, pts);
        assert!(read_points(&b"dim 2\n1 2 3\n"[..]).is_err());
        assert!(read_points(&b"1 2\n"[..]).is_err());
    }

    #[test]
    fn graph_round_trip_is_byte_identical() {
        let mut g = SpannerGraph::new(2, Metric::L2);
        let (a, _) = g.add_input(&[0.0, 0.0]).unwrap();
        let (b, _) = g.add_input(&[0.3, 0.7]).unwrap();
        g.add_input(&[0.3, 0.7]).unwrap();
        let e = g.add_edge(a, b).unwrap().unwrap();
        g.subdivide(e, &[0.15, 0.35]).unwrap();
        let s1 = graph_to_string(&g);
        let back = read_graph(s1.as_bytes()).unwrap();
        assert_eq!(graph_to_string(&back), s1);
        assert_eq!(back.weight(), g.weight());
        assert_eq!(back.num_live_edges(), g.num_live_edges());
    }
}
