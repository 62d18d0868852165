use crate::{dist, Metric, Point};

/// Weight of a minimum spanning tree of the complete graph on `points`.
pub fn mst_weight(points: &[Point], m: Metric) -> f64 {
    let slices: Vec<&[f64]> = points.iter().map(|p| p.coords()).collect();
    mst_weight_slices(&slices, m)
}

/// Prim on the implicit complete graph, O(n^2); sorted gaps in one dimension.
pub fn mst_weight_slices(points: &[&[f64]], m: Metric) -> f64 {
    let n = points.len();
    if n < 2 {
        return 0.0;
    }
    if points[0].len() == 1 {
        let mut xs: Vec<f64> = points.iter().map(|p| p[0]).collect();
        xs.sort_by(f64::total_cmp);
        return xs.windows(2).map(|w| w[1] - w[0]).sum();
    }
    let mut best = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    let mut total = 0.0;
    let mut cur = 0;
    done[0] = true;
    for _ in 1..n {
        let mut next = usize::MAX;
        let mut next_d = f64::INFINITY;
        for j in 0..n {
            if done[j] {
                continue;
            }
            let d = dist(points[cur], points[j], m);
            if d < best[j] {
                best[j] = d;
            }
            if best[j] < next_d {
                next_d = best[j];
                next = j;
            }
        }
        done[next] = true;
        total += next_d;
        cur = next;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(mst_weight(&[], Metric::L2), 0.0);
        assert_eq!(mst_weight(&[Point::from([3.0])], Metric::L2), 0.0);
        let line: Vec<Point> = [0.5, 0.0, 1.0].iter().map(|&x| Point::from([x])).collect();
        assert_eq!(mst_weight(&line, Metric::L2), 1.0);
        let sq: Vec<Point> =
            [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]].iter().map(|&c| Point::from(c)).collect();
        assert_eq!(mst_weight(&sq, Metric::L2), 3.0);
    }
}
