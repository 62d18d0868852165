//! Adaptive planar adversary against Steiner spanners.
//!
//! Stage 1 places `(0,0)` and `(1,0)`. Before stage `i+1` the adversary looks
//! at the current graph `G_i`, sets `k_i = ceil(|G_i|)`, and over every
//! segment of the x-monotone path through the points so far draws `2k_i + 1`
//! circular arcs with sagittas evenly spaced in `[-H, H]`. `H` is the same
//! fraction of every chord, chosen so that the outermost arcs concatenate to
//! `1 + (1 - 2^-(i+1)) eps`. Per segment the lens with the least weight of
//! `G_i` is kept; the new points lie on the middle arc of that lens, spaced so
//! that every consecutive pair's `(1+eps)` ellipse stays inside the lens with
//! a clearance of one tenth of its sagitta range.

use crate::lens::{alpha_for_ratio, lens_weights, region_weight, Chord, EdgeGrid, Lens, P2};
use crate::AdversaryError;
use spanlab_geometry::{Point, SpannerGraph};
use spanlab_spanners::OnlineSpanner;

#[derive(Clone, Debug)]
pub struct SteinerAdversaryConfig {
    pub eps: f64,
    /// Cap on points per stage.
    pub n_max: usize,
    /// Fraction of a lens's sagitta range kept free on either side.
    pub clearance: f64,
    /// Boundary samples per ellipse in the containment test.
    pub ellipse_samples: usize,
}

impl SteinerAdversaryConfig {
    pub fn new(eps: f64) -> Self {
        SteinerAdversaryConfig { eps, n_max: 10_000, clearance: 0.1, ellipse_samples: 64 }
    }
}

/// What the adversary decided before a stage.
#[derive(Clone, Debug)]
pub struct StageBatch {
    /// 1-based stage number.
    pub stage: usize,
    pub points: Vec<P2>,
    /// Chosen lenses (empty in stage 1).
    pub region: Vec<Lens>,
    pub k: usize,
    /// `|G_i ∩ R_i|` before the batch is served.
    pub region_weight_before: f64,
    /// Cap on the concatenated arc weight used for this stage.
    pub arc_budget: f64,
    /// Weight of the middle arcs the points were sampled from.
    pub gamma_weight: f64,
    /// Weight of the x-monotone path through the batch alone.
    pub batch_path_weight: f64,
}

#[derive(Clone, Debug)]
pub struct SteinerAdversary {
    cfg: SteinerAdversaryConfig,
    stage: usize,
    /// All points so far, sorted by x.
    points: Vec<P2>,
}

impl SteinerAdversary {
    pub fn new(cfg: SteinerAdversaryConfig) -> Result<Self, AdversaryError> {
        if !(cfg.eps > 0.0 && cfg.eps < 1.0) {
            return Err(AdversaryError::Param(format!("eps must lie in (0, 1), got {}", cfg.eps)));
        }
        if !(cfg.clearance >= 0.0 && cfg.clearance < 0.5) || cfg.ellipse_samples < 8 || cfg.n_max < 2 {
            return Err(AdversaryError::Param("clearance in [0, 1/2), at least 8 samples, n_max >= 2".into()));
        }
        Ok(SteinerAdversary { cfg, stage: 0, points: Vec::new() })
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn points(&self) -> &[P2] {
        &self.points
    }

    /// Weight of the x-monotone path through every point placed so far.
    pub fn witness_weight(&self) -> f64 {
        path_weight(&self.points)
    }

    /// Bound on the witness path after stage `i`.
    pub fn witness_bound(&self, stage: usize) -> f64 {
        1.0 + (1.0 - 0.5f64.powi(stage as i32)) * self.cfg.eps
    }

    /// Computes the next batch from the algorithm's current graph.
    pub fn next_stage(&mut self, g: &SpannerGraph) -> Result<StageBatch, AdversaryError> {
        if self.stage == 0 {
            self.stage = 1;
            let pts = vec![[0.0, 0.0], [1.0, 0.0]];
            self.points = pts.clone();
            return Ok(StageBatch {
                stage: 1,
                points: pts,
                region: Vec::new(),
                k: 0,
                region_weight_before: 0.0,
                arc_budget: 1.0,
                gamma_weight: 1.0,
                batch_path_weight: 1.0,
            });
        }
        let i = self.stage;
        let eps = self.cfg.eps;
        let k = (g.weight().ceil() as usize).max(1);
        let budget = 1.0 + (1.0 - 0.5f64.powi(i as i32 + 1)) * eps;
        let current = self.witness_weight();
        let alpha = alpha_for_ratio(budget / current);
        if alpha <= 0.0 {
            return Err(AdversaryError::Obstruction(format!("no arc budget left: path {current} vs cap {budget}")));
        }
        let grid = EdgeGrid::new(g, 256);
        let mut region = Vec::new();
        let mut gamma = Vec::new();
        for w in self.points.windows(2) {
            let ch = Chord::new(w[0], w[1]);
            let c = ch.len();
            // x-monotone arcs: the end tangents must stay off vertical.
            let tilt = (w[1][1] - w[0][1]).atan2(w[1][0] - w[0][0]).abs();
            if tilt + 2.0 * (2.0 * alpha).atan() >= std::f64::consts::FRAC_PI_2 {
                return Err(AdversaryError::Obstruction(format!("segment at angle {tilt} cannot carry x-monotone arcs")));
            }
            let hmax = alpha * c;
            let hs: Vec<f64> = (0..=2 * k).map(|m| (m as f64 / k as f64 - 1.0) * hmax).collect();
            let weights = lens_weights(&grid, &ch, &hs);
            let mut best = 0;
            for m in 1..weights.len() {
                let mid = |m: usize| (hs[m] + hs[m + 1]).abs();
                if weights[m] < weights[best] || (weights[m] == weights[best] && mid(m) > mid(best)) {
                    best = m;
                }
            }
            let lens = Lens { chord: ch, lo: hs[best], hi: hs[best + 1] };
            gamma.push(ch.arc_len(0.5 * (lens.lo + lens.hi)));
            region.push(lens);
        }
        let (before, _) = region_weight(g, &region);
        let pts = self.sample(&region)?;
        self.stage += 1;
        let batch_path_weight = path_weight(&pts);
        self.points.extend(pts.iter().copied());
        self.points.sort_by(|a, b| a[0].total_cmp(&b[0]));
        Ok(StageBatch {
            stage: self.stage,
            points: pts,
            region,
            k,
            region_weight_before: before,
            arc_budget: budget,
            gamma_weight: gamma.iter().sum(),
            batch_path_weight,
        })
    }

    /// Points on the middle arcs of `region`; the margin kept free at both
    /// chord ends shrinks until the batch's monotone path reaches weight 1.
    fn sample(&self, region: &[Lens]) -> Result<Vec<P2>, AdversaryError> {
        let mut tau = 1.0 / 16.0;
        loop {
            let mut pts = Vec::new();
            for lens in region {
                pts.extend(self.sample_lens(lens, tau)?);
                if pts.len() > self.cfg.n_max {
                    return Err(AdversaryError::Obstruction(format!(
                        "lenses too thin: more than {} points needed (k-fold split over {} segments)",
                        self.cfg.n_max,
                        region.len()
                    )));
                }
            }
            if path_weight(&pts) >= 1.0 {
                return Ok(pts);
            }
            tau /= 4.0;
            if tau < 1e-9 {
                return Err(AdversaryError::Obstruction("middle arcs too short to carry a unit path".into()));
            }
        }
    }

    fn sample_lens(&self, lens: &Lens, tau: f64) -> Result<Vec<P2>, AdversaryError> {
        let ch = lens.chord;
        let c = ch.len();
        let h = 0.5 * (lens.lo + lens.hi);
        let (u0, u1) = (-c / 2.0 + tau * c, c / 2.0 - tau * c);
        let at = |u: f64| ch.arc_point(h, u);
        let mut us = vec![u0];
        let mut u = u0;
        while u < u1 {
            if self.fits(lens, at(u), at(u1)) {
                us.push(u1);
                break;
            }
            // Largest step that still fits, by bisection.
            let (mut lo, mut hi) = (u, u1);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if self.fits(lens, at(u), at(mid)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if lo <= u || us.len() > self.cfg.n_max {
                return Err(AdversaryError::Obstruction(format!(
                    "no admissible step on a chord of length {c} (lens {}..{})",
                    lens.lo, lens.hi
                )));
            }
            us.push(lo);
            u = lo;
        }
        Ok(us.into_iter().map(at).collect())
    }

    /// The ellipse with foci `p`, `q` and major axis `(1+eps)|pq|` lies in
    /// the lens shrunk by the clearance, judged on boundary samples.
    fn fits(&self, lens: &Lens, p: P2, q: P2) -> bool {
        ellipse_in_lens(lens, p, q, self.cfg.eps, self.cfg.clearance, self.cfg.ellipse_samples)
    }
}

/// Boundary-sampled containment of the `(1+eps)` ellipse of `pq` in the lens
/// with `margin` (fraction of its sagitta range) removed on both sides.
pub fn ellipse_in_lens(lens: &Lens, p: P2, q: P2, eps: f64, margin: f64, samples: usize) -> bool {
    let d = (q[0] - p[0]).hypot(q[1] - p[1]);
    if d == 0.0 {
        return false;
    }
    let a = 0.5 * (1.0 + eps) * d;
    let b = (a * a - 0.25 * d * d).sqrt();
    let m = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
    let ux = [(q[0] - p[0]) / d, (q[1] - p[1]) / d];
    let span = lens.hi - lens.lo;
    let (lo, hi) = (lens.lo + margin * span, lens.hi - margin * span);
    (0..samples).all(|j| {
        let t = j as f64 * std::f64::consts::TAU / samples as f64;
        let (ca, sb) = (a * t.cos(), b * t.sin());
        let x = [m[0] + ca * ux[0] - sb * ux[1], m[1] + ca * ux[1] + sb * ux[0]];
        lens.chord.sagitta_of(x).is_some_and(|h| lo <= h && h <= hi)
    })
}

pub fn path_weight(pts: &[P2]) -> f64 {
    pts.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).sum()
}

/// Outcome of one stage after the algorithm served it.
#[derive(Clone, Debug)]
pub struct StageReport {
    pub stage: usize,
    pub points: usize,
    pub k: usize,
    pub alg_weight: f64,
    /// Weight of the x-monotone path through all points (an upper bound on OPT).
    pub witness_weight: f64,
    pub witness_bound: f64,
    pub region_weight_before: f64,
    pub region_weight_after: f64,
    /// `region_weight_after - region_weight_before`; zero in stage 1.
    pub gain: f64,
    /// Error bound on `gain`.
    pub gain_error: f64,
    pub batch_path_weight: f64,
}

/// Plays `stages` stages against `alg` in lockstep.
pub fn run_steiner_adversary(
    alg: &mut dyn OnlineSpanner,
    cfg: SteinerAdversaryConfig,
    stages: usize,
) -> Result<(Vec<StageReport>, Vec<P2>), AdversaryError> {
    let mut adv = SteinerAdversary::new(cfg)?;
    let mut out = Vec::new();
    let mut stream = Vec::new();
    for _ in 0..stages {
        let batch = adv.next_stage(alg.graph())?;
        for p in &batch.points {
            alg.insert(&Point::new(p.to_vec()))?;
            stream.push(*p);
        }
        let (after, err_a) = region_weight(alg.graph(), &batch.region);
        let gain = if batch.region.is_empty() { 0.0 } else { after - batch.region_weight_before };
        out.push(StageReport {
            stage: batch.stage,
            points: batch.points.len(),
            k: batch.k,
            alg_weight: alg.graph().weight(),
            witness_weight: adv.witness_weight(),
            witness_bound: adv.witness_bound(batch.stage),
            region_weight_before: batch.region_weight_before,
            region_weight_after: after,
            gain,
            gain_error: 2.0 * err_a,
            batch_path_weight: batch.batch_path_weight,
        });
    }
    Ok((out, stream))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_stage_is_the_unit_segment() {
        let mut adv = SteinerAdversary::new(SteinerAdversaryConfig::new(0.25)).unwrap();
        let g = SpannerGraph::new(2, spanlab_geometry::Metric::L2);
        let b = adv.next_stage(&g).unwrap();
        assert_eq!(b.points, vec![[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(adv.witness_weight(), 1.0);
    }

    #[test]
    fn second_stage_against_a_single_edge() {
        let mut adv = SteinerAdversary::new(SteinerAdversaryConfig::new(0.25)).unwrap();
        let mut g = SpannerGraph::new(2, spanlab_geometry::Metric::L2);
        for p in adv.next_stage(&g).unwrap().points {
            g.add_input(&p).unwrap();
        }
        g.add_edge(0, 1).unwrap();
        let b = adv.next_stage(&g).unwrap();
        assert_eq!(b.k, 1);
        assert_eq!(b.region.len(), 1);
        // The chord sits on a lens boundary; the chosen lens avoids it.
        assert!(b.region_weight_before <= 0.5);
        assert!(b.batch_path_weight >= 1.0);
        assert!(adv.witness_weight() <= adv.witness_bound(2) + 1e-12);
        for w in b.points.windows(2) {
            assert!(w[0][0] < w[1][0]);
            assert!(ellipse_in_lens(&b.region[0], w[0], w[1], 0.25, 0.0, 4096));
        }
    }
}
