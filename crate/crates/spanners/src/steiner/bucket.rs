//! Bucket geometry: per-direction frames, the rectangle lattice and the
//! assignment of primary edges to buckets.
//!
//! Lengths are measured in grid units. An edge of length class `k` (length
//! in `[2^k, 2^(k+1))`) has length in `[L0, 2 L0)` units, the unit being
//! `2^k / L0`. Rectangles are a doubled covering: tile `(j, m_1, ..)` spans
//! `[j T, j T + 2T]` along the direction and `[m w, m w + 2w]` across, so an
//! edge whose extents are at most `T` and `w` fits in at least one rectangle.

use super::cover::DirectionCover;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BucketKey {
    /// Length class `k`.
    pub level: i32,
    pub dir: u32,
    /// Along index followed by one index per cross axis.
    pub tile: Vec<i64>,
}

impl fmt::Display for BucketKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", self.level, self.dir)?;
        for (i, t) in self.tile.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Orthonormal frame: `axes[0]` is the cover direction.
#[derive(Clone, Debug)]
pub struct Frame {
    pub axes: Vec<Vec<f64>>,
}

impl Frame {
    pub fn new(dir: &[f64]) -> Frame {
        let d = dir.len();
        let mut axes = vec![dir.to_vec()];
        let skip = (0..d).max_by(|&a, &b| dir[a].abs().total_cmp(&dir[b].abs())).unwrap();
        for j in (0..d).filter(|&j| j != skip) {
            let mut v = vec![0.0; d];
            v[j] = 1.0;
            for a in &axes {
                let dot: f64 = v.iter().zip(a).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(a).for_each(|(x, y)| *x -= dot * y);
            }
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            axes.push(v.iter().map(|x| x / n).collect());
        }
        Frame { axes }
    }

    /// Local coordinates of `x` in units of `unit`.
    pub fn to_local(&self, x: &[f64], unit: f64) -> Vec<f64> {
        self.axes.iter().map(|a| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>() / unit).collect()
    }

    pub fn to_world(&self, local: &[f64], unit: f64) -> Vec<f64> {
        let d = self.axes.len();
        (0..d).map(|k| unit * local.iter().zip(&self.axes).map(|(c, a)| c * a[k]).sum::<f64>()).collect()
    }
}

/// Integer bucket dimensions in grid units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BucketGeometry {
    /// Lower end of a length class, in units.
    pub l0: i64,
    /// Along tile (rectangle along extent is `2 t_along`).
    pub t_along: i64,
    /// Cross tile (rectangle cross extent is `2 w`).
    pub w: i64,
    /// Square side along the direction.
    pub s: i64,
    /// Distance from a square side to its tree root on the median.
    pub h: i64,
}

impl BucketGeometry {
    /// `scale` fixes `L0 = ceil(scale / eps)`, `rho` is the cover radius and
    /// `beta` the root offset in multiples of `L0`.
    pub fn new(eps: f64, scale: f64, rho: f64, beta: f64) -> BucketGeometry {
        let l0 = (scale / eps).ceil() as i64;
        let w = ((2.0 * l0 as f64 * rho.sin()).ceil() as i64).max(1);
        let s = w;
        let t_along = (2 * l0 + s - 1) / s * s;
        let h = ((beta * l0 as f64).ceil() as i64).max(1);
        BucketGeometry { l0, t_along, w, s, h }
    }

    pub fn unit(&self, level: i32) -> f64 {
        (level as f64).exp2() / self.l0 as f64
    }

    /// Squares per rectangle.
    pub fn squares(&self) -> i64 {
        2 * self.t_along / self.s
    }

    /// Along coordinate where the rectangle of `key` starts.
    pub fn u0(&self, key: &BucketKey) -> i64 {
        key.tile[0] * self.t_along
    }

    /// Cross coordinates of the median line.
    pub fn median(&self, key: &BucketKey) -> Vec<i64> {
        key.tile[1..].iter().map(|m| m * self.w + self.w).collect()
    }
}

/// Length class of a positive length.
pub fn length_class(len: f64) -> i32 {
    let mut k = len.log2().floor() as i32;
    while (k as f64).exp2() > len {
        k -= 1;
    }
    while ((k + 1) as f64).exp2() <= len {
        k += 1;
    }
    k
}

/// Lattice indices `j` with `[j t, j t + 2t] ⊇ [lo, hi]`.
fn covering(lo: f64, hi: f64, t: i64) -> Vec<i64> {
    let j = (lo / t as f64).floor() as i64;
    [j - 1, j]
        .into_iter()
        .filter(|&j| (j * t) as f64 <= lo && hi <= ((j + 2) * t) as f64)
        .collect()
}

/// Keys of every rectangle containing segment `ab` for each cover direction
/// closest to it. Empty only if the segment is degenerate or too wide for
/// the geometry (which the cover radius rules out).
pub fn assign_buckets(a: &[f64], b: &[f64], cover: &DirectionCover, geo: &BucketGeometry) -> Vec<BucketKey> {
    let len = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    if len == 0.0 {
        return Vec::new();
    }
    let level = length_class(len);
    let unit = geo.unit(level);
    let dir: Vec<f64> = a.iter().zip(b).map(|(x, y)| (y - x) / len).collect();
    let mut keys = Vec::new();
    for i in cover.nearest_ties(&dir) {
        let frame = Frame::new(&cover.directions[i]);
        let (la, lb) = (frame.to_local(a, unit), frame.to_local(b, unit));
        let mut per_axis: Vec<Vec<i64>> = Vec::new();
        for k in 0..la.len() {
            let t = if k == 0 { geo.t_along } else { geo.w };
            per_axis.push(covering(la[k].min(lb[k]), la[k].max(lb[k]), t));
        }
        let mut tiles: Vec<Vec<i64>> = vec![Vec::new()];
        for opts in &per_axis {
            tiles = tiles
                .into_iter()
                .flat_map(|t| {
                    opts.iter().map(move |&o| {
                        let mut t = t.clone();
                        t.push(o);
                        t
                    })
                })
                .collect();
        }
        keys.extend(tiles.into_iter().map(|tile| BucketKey { level, dir: i as u32, tile }));
    }
    keys.sort();
    keys
}

#[cfg(test)]
mod tests {
    use super::super::cover::cover_with_radius;
    use super::*;

    #[test]
    fn length_classes() {
        assert_eq!(length_class(1.0), 0);
        assert_eq!(length_class(0.99), -1);
        assert_eq!(length_class(2.0), 1);
        assert_eq!(length_class(0.25), -2);
    }

    #[test]
    fn frame_round_trip() {
        let f = Frame::new(&[0.6, 0.0, 0.8]);
        let x = [0.3, -1.2, 2.5];
        let back = f.to_world(&f.to_local(&x, 0.01), 0.01);
        for k in 0..3 {
            assert!((back[k] - x[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn centered_parallel_edge_gets_its_direction() {
        let cover = cover_with_radius(2, 0.5f64.sqrt() / 8.0);
        let geo = BucketGeometry::new(0.5, 24.0, cover.radius, 0.25);
        let keys = assign_buckets(&[0.1, 0.1], &[1.2, 0.1], &cover, &geo);
        assert!(!keys.is_empty() && keys.len() <= 8);
        assert!(keys.iter().all(|k| k.dir == 0 && k.level == 0));
    }
}
