//! Finite covers of the space of undirected directions.

use crate::SpannerError;

#[derive(Clone, Debug)]
pub struct DirectionCover {
    pub dim: usize,
    pub eps: f64,
    /// Unit vectors, one per undirected direction (canonical sign).
    pub directions: Vec<Vec<f64>>,
    /// Covering radius: exact in 2D, audited by sampling otherwise.
    pub radius: f64,
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

/// Angle in `[0, pi/2]` between the lines spanned by unit vectors `a` and `b`.
pub fn line_angle(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    dot.abs().min(1.0).acos()
}

/// Cover whose covering radius is at most `eps^(1/2)` (in 2D: `K = ceil(pi eps^(-1/2))`
/// evenly spaced angles, radius `pi/(2K)`).
pub fn build_direction_cover(d: usize, eps: f64) -> Result<DirectionCover, SpannerError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(SpannerError::Param(format!("direction cover needs 0 < eps < 1, got {eps}")));
    }
    if d < 2 {
        return Err(SpannerError::Param("direction cover needs d >= 2".into()));
    }
    let mut c = if d == 2 {
        let k = ((std::f64::consts::PI / eps.sqrt()).ceil() as usize).max(4);
        planar(k)
    } else {
        lattice_cover(d, eps.sqrt())
    };
    c.eps = eps;
    Ok(c)
}

/// Cover with covering radius at most `rho`.
pub(crate) fn cover_with_radius(d: usize, rho: f64) -> DirectionCover {
    let mut c = if d == 2 {
        let k = ((std::f64::consts::PI / (2.0 * rho)).ceil() as usize).max(4);
        planar(k)
    } else {
        lattice_cover(d, rho)
    };
    c.eps = (2.0 * rho).powi(2);
    c
}

fn planar(k: usize) -> DirectionCover {
    let directions = (0..k)
        .map(|i| {
            let t = std::f64::consts::PI * i as f64 / k as f64;
            vec![t.cos(), t.sin()]
        })
        .collect();
    DirectionCover { dim: 2, eps: 0.0, directions, radius: std::f64::consts::PI / (2.0 * k as f64) }
}

/// Integer points on the surface of the cube `[-n, n]^d` with canonical sign.
fn cube_lattice(d: usize, n: i64) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut v = vec![-n; d];
    loop {
        let on_surface = v.iter().any(|x| x.abs() == n);
        let canonical = v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        if on_surface && canonical {
            let f: Vec<f64> = v.iter().map(|&x| x as f64).collect();
            out.push(normalize(&f));
        }
        let mut k = 0;
        while k < d {
            v[k] += 1;
            if v[k] <= n {
                break;
            }
            v[k] = -n;
            k += 1;
        }
        if k == d {
            break;
        }
    }
    out
}

/// Deterministic sample of unit directions for auditing.
fn audit_samples(d: usize, m: usize) -> Vec<Vec<f64>> {
    if d == 3 {
        // Fibonacci sphere.
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        return (0..m)
            .map(|i| {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / m as f64;
                let r = (1.0 - z * z).sqrt();
                let t = golden * i as f64;
                vec![r * t.cos(), r * t.sin(), z]
            })
            .collect();
    }
    let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut unif = move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 11) as f64 + 0.5) / (1u64 << 53) as f64
    };
    (0..m)
        .map(|_| {
            let g: Vec<f64> = (0..d)
                .map(|_| (-2.0 * unif().ln()).sqrt() * (2.0 * std::f64::consts::PI * unif()).cos())
                .collect();
            normalize(&g)
        })
        .collect()
}

fn lattice_cover(d: usize, target: f64) -> DirectionCover {
    let mut n = ((((d - 1) as f64).sqrt() / (2.0 * target)).ceil() as i64).max(1);
    loop {
        let directions = cube_lattice(d, n);
        let samples = audit_samples(d, (20 * directions.len()).clamp(2000, 40000));
        let mut cover = DirectionCover { dim: d, eps: 0.0, directions, radius: 0.0 };
        cover.radius = samples.iter().map(|s| cover.nearest(s).1).fold(0.0, f64::max);
        if cover.radius <= target {
            return cover;
        }
        n += 1;
    }
}

impl DirectionCover {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Index of the closest direction and its angle to `v` (unit length assumed).
    pub fn nearest(&self, v: &[f64]) -> (usize, f64) {
        if self.dim == 2 {
            let k = self.directions.len();
            let mut t = v[1].atan2(v[0]);
            if t < 0.0 {
                t += std::f64::consts::PI;
            }
            let step = std::f64::consts::PI / k as f64;
            let i = ((t / step).round() as usize) % k;
            return (i, line_angle(v, &self.directions[i]));
        }
        let mut best = (0, f64::INFINITY);
        let mut best_dot = -1.0;
        for (i, u) in self.directions.iter().enumerate() {
            let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>().abs();
            if dot > best_dot {
                best_dot = dot;
                best = (i, 0.0);
            }
        }
        best.1 = line_angle(v, &self.directions[best.0]);
        best
    }

    /// Directions whose angle to `v` is within `1e-9` of the smallest one.
    pub fn nearest_ties(&self, v: &[f64]) -> Vec<usize> {
        let (i, a) = self.nearest(v);
        if self.dim == 2 {
            let k = self.directions.len();
            return [(i + k - 1) % k, i, (i + 1) % k]
                .into_iter()
                .filter(|&j| line_angle(v, &self.directions[j]) <= a + 1e-9)
                .fold(Vec::new(), |mut acc, j| {
                    if !acc.contains(&j) {
                        acc.push(j);
                    }
                    acc
                });
        }
        (0..self.directions.len()).filter(|&j| line_angle(v, &self.directions[j]) <= a + 1e-9).collect()
    }

    /// Largest nearest-direction angle over a deterministic sample of directions.
    pub fn audit(&self, samples: usize) -> f64 {
        audit_samples(self.dim, samples).iter().map(|s| self.nearest(s).1).fold(0.0, f64::max)
    }
}
