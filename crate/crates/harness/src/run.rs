use crate::config::{Algorithm, ExperimentConfig, Generator};
use crate::gen::uniform_points;
use crate::record::{RunRecord, Status};
use crate::HarnessError;
use rayon::prelude::*;
use spanlab_adversaries::{adv1d_points, run_steiner_adversary, SteinerAdversaryConfig};
use spanlab_geometry::{io::read_points, mst_weight, verify_stretch, Metric, PairSet, Point};
use spanlab_oracle::greedy_spanner;
use spanlab_spanners::{opt_1d, AnnulusRule, OnlineSpanner, QuadtreeSpanner, Spanner1D, SteinerConfig, SteinerSpanner};
use std::time::Instant;

/// Prefix sizes where stretch is certified: `2, 4, ..., 2^(L-1)` and `n`,
/// with `L = ceil(log2 n)`.
pub fn checkpoints(n: usize) -> Vec<usize> {
    if n <= 2 {
        return if n == 0 { vec![] } else { vec![n] };
    }
    let l = usize::BITS - (n - 1).leading_zeros();
    let mut v: Vec<usize> = (1..l).map(|i| 1usize << i).collect();
    v.push(n);
    v
}

fn build(cfg: &ExperimentConfig, eps: f64, dim: usize) -> Result<Box<dyn OnlineSpanner + Send>, HarnessError> {
    Ok(match cfg.algorithm {
        Algorithm::OneD => {
            if dim != 1 {
                return Err(HarnessError::Param(format!("the 1d algorithm needs dim 1, got {dim}")));
            }
            Box::new(Spanner1D::new(eps)?)
        }
        Algorithm::Quadtree => {
            Box::new(QuadtreeSpanner::with_rule(eps, dim, AnnulusRule::new(cfg.c1, cfg.c2)?, cfg.metric)?)
        }
        Algorithm::Steiner => {
            if cfg.metric != Metric::L2 {
                return Err(HarnessError::Param("the steiner algorithm is Euclidean only".into()));
            }
            let mut sc = SteinerConfig::new(eps, dim);
            sc.slt = cfg.slt;
            sc.backbone = cfg.backbone;
            sc.rule = AnnulusRule::new(cfg.c1, cfg.c2)?;
            Box::new(SteinerSpanner::new(sc)?)
        }
    })
}

/// The input stream of one run. Adversarial Steiner streams are produced
/// against a scratch copy of the configured algorithm; the copy run on the
/// stream afterwards builds the same graph.
fn stream(cfg: &ExperimentConfig, eps: f64, n: usize, seed: u64) -> Result<Vec<Point>, HarnessError> {
    Ok(match &cfg.generator {
        Generator::Uniform => uniform_points(seed, n, cfg.dim),
        Generator::File(p) => read_points(std::io::BufReader::new(std::fs::File::open(p)?))?.1,
        Generator::Adv1D => adv1d_points(eps, cfg.stages)?.into_iter().map(|x| Point::new(vec![x])).collect(),
        Generator::AdvSteiner => {
            let mut scratch = build(cfg, eps, 2)?;
            let (_, pts) = run_steiner_adversary(scratch.as_mut(), SteinerAdversaryConfig::new(eps), cfg.stages)?;
            pts.into_iter().map(|p| Point::new(p.to_vec())).collect()
        }
    })
}

/// One run; `Ok(None)` for an empty stream.
pub fn run_one(cfg: &ExperimentConfig, eps: f64, n: usize, seed: u64) -> Result<Option<RunRecord>, HarnessError> {
    let pts = stream(cfg, eps, n, seed)?;
    if pts.is_empty() {
        return Ok(None);
    }
    let dim = pts[0].dim();
    let start = Instant::now();
    let mut alg = build(cfg, eps, dim)?;
    let n = pts.len();
    let run_id = format!("{}-{}-eps{}-n{}-seed{}", cfg.algorithm, cfg.generator, eps, n, seed);
    let marks = if cfg.checkpoints { checkpoints(n) } else { vec![n] };
    let mut next = 0;
    let mut max_stretch = 1.0f64;
    let mut status = Status::Ok;
    for (i, p) in pts.iter().enumerate() {
        alg.insert(p)?;
        if next < marks.len() && marks[next] == i + 1 {
            next += 1;
            let rep = verify_stretch(alg.graph(), &PairSet::AllInputs, alg.stretch_bound());
            max_stretch = max_stretch.max(rep.max_stretch);
            if !rep.passed() {
                status = Status::Failed;
                if let Some(w) = rep.witness {
                    log::error!(
                        "{run_id}: stretch {} > {} after {} points; witness vertices {} {} (path {}, direct {})",
                        rep.max_stretch,
                        rep.t,
                        i + 1,
                        w.u,
                        w.v,
                        w.path_weight,
                        w.direct
                    );
                }
            }
        }
    }
    let alg_weight = alg.graph().weight();
    let stretch_bound = alg.stretch_bound();
    drop(alg);
    let mst = mst_weight(&pts, cfg.metric);
    let greedy = if n <= cfg.greedy_max_n { Some(greedy_spanner(&pts, 1.0 + eps, cfg.metric)?.weight) } else { None };
    let opt1d = (cfg.algorithm == Algorithm::OneD).then(|| opt_1d(&pts.iter().map(|p| p.x()).collect::<Vec<_>>()));
    let runtime_ms = if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 };
    log::info!("{run_id}: weight {alg_weight}, max stretch {max_stretch}");
    Ok(Some(RunRecord {
        run_id,
        algorithm: cfg.algorithm.to_string(),
        generator: cfg.generator.to_string(),
        eps,
        dim,
        metric: cfg.metric.to_string(),
        n,
        seed,
        alg_weight,
        mst_weight: mst,
        greedy_weight: greedy,
        opt1d_weight: opt1d,
        max_stretch,
        stretch_bound,
        runtime_ms,
        status,
    }))
}

/// Runs the whole grid; independent runs go in parallel, output order is
/// `eps`, then `n`, then seed. Only uniform streams depend on `n` and seed.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>, HarnessError> {
    let mut jobs = Vec::new();
    for &eps in &cfg.eps {
        match cfg.generator {
            Generator::Uniform => {
                for &n in &cfg.n {
                    for &s in &cfg.seeds {
                        jobs.push((eps, n, s));
                    }
                }
            }
            _ => jobs.push((eps, 0, cfg.seeds.first().copied().unwrap_or(0))),
        }
    }
    let out: Vec<Option<RunRecord>> = jobs.par_iter().map(|&(e, n, s)| run_one(cfg, e, n, s)).collect::<Result<_, _>>()?;
    Ok(out.into_iter().flatten().collect())
}
