use crate::{dist, Metric, Point, REL_TOL};

/// Angle in `[0, pi/2]` between the undirected lines spanned by `u` and `v`.
pub fn angle_between_lines(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    (dot.abs() / (nu * nv)).clamp(0.0, 1.0).acos()
}

/// Total weight of the edges of `path` whose direction is within angle
/// `eps^(1/2)` of the direction of `ab`. Zero-length edges are skipped.
pub fn near_parallel_weight(path: &[(Point, Point)], a: &Point, b: &Point, eps: f64) -> f64 {
    let ab: Vec<f64> = b.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect();
    let limit = eps.sqrt();
    let mut total = 0.0;
    for (p, q) in path {
        let w = dist(p.coords(), q.coords(), Metric::L2);
        if w == 0.0 {
            log::warn!("near_parallel_weight: skipping zero-length edge");
            continue;
        }
        let pq: Vec<f64> = q.coords().iter().zip(p.coords()).map(|(x, y)| x - y).collect();
        if angle_between_lines(&pq, &ab) <= limit * (1.0 + REL_TOL) {
            total += w;
        }
    }
    total
}

/// Whether `p` lies in the ellipse with foci `a`, `b` and great axis `(1+eps)|ab|`.
pub fn ellipse_contains(a: &Point, b: &Point, eps: f64, p: &Point) -> bool {
    let s = dist(p.coords(), a.coords(), Metric::L2) + dist(p.coords(), b.coords(), Metric::L2);
    s <= (1.0 + eps) * dist(a.coords(), b.coords(), Metric::L2) * (1.0 + REL_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::from([x, y])
    }

    #[test]
    fn near_parallel_examples() {
        let (a, b) = (p(0.0, 0.0), p(1.0, 0.0));
        assert_eq!(near_parallel_weight(&[(a.clone(), b.clone())], &a, &b, 0.01), 1.0);
        let m = p(0.5, 0.02);
        let path = [(a.clone(), m.clone()), (m, b.clone())];
        let expect = 2.0 * (0.25f64 + 0.0004).sqrt();
        assert!((near_parallel_weight(&path, &a, &b, 0.01) - expect).abs() < 1e-15);
        assert!((expect - 1.0008).abs() < 1e-4);
        let steep = [(a.clone(), p(0.0, 1.0)), (a.clone(), a.clone())];
        assert_eq!(near_parallel_weight(&steep, &a, &b, 0.01), 0.0);
    }

    #[test]
    fn ellipse_examples() {
        let (a, b) = (p(0.0, 0.0), p(1.0, 0.0));
        assert!(ellipse_contains(&a, &b, 0.2, &a));
        assert!(ellipse_contains(&a, &b, 0.2, &p(0.5, 0.0)));
        assert!(!ellipse_contains(&a, &b, 0.2, &p(0.5, 0.34)));
        assert!(ellipse_contains(&a, &b, 0.2, &p(0.5, 0.33)));
    }
}
