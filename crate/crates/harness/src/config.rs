//! Experiment configuration.
//!
//! Config files hold `key = value` lines; `#` starts a comment. Lists are
//! comma separated, `eps` entries may be fractions like `1/4`, and `seeds`
//! also accepts a range `a..b` (end exclusive).
//!
//! | key | values | default |
//! |---|---|---|
//! | `algorithm` | `1d`, `quadtree`, `steiner` | set by the subcommand |
//! | `generator` | `uniform`, `file`, `adv1d`, `adv-steiner` | `uniform` |
//! | `input` | point file for `generator = file` | |
//! | `stages` | adversary stages | `2` |
//! | `eps` | list | `1/4` |
//! | `n` | list | `100` |
//! | `seeds` | list or range | `1` |
//! | `dim` | dimension for `uniform` | `1` for 1d, else `2` |
//! | `metric` | `l1`, `l2` (quadtree only accepts both) | `l2` |
//! | `c1`, `c2` | annulus constants | `1`, `6` |
//! | `slt` | `dyadic`, `star` | `dyadic` |
//! | `backbone` | `lazy`, `full` | `lazy` |
//! | `greedy_max_n` | largest n that gets a greedy baseline | `2000` |
//! | `checkpoints` | certify at the ceil(log2 n) checkpoints too | `true` |
//! | `timing` | record wall-clock runtime (breaks byte-identical output) | `false` |
//! | `out` | output directory | `spanlab-out` |

use crate::HarnessError;
use spanlab_geometry::Metric;
use spanlab_spanners::{BackboneMode, SltMode};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    OneD,
    Quadtree,
    Steiner,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::OneD => "1d",
            Algorithm::Quadtree => "quadtree",
            Algorithm::Steiner => "steiner",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1d" => Ok(Algorithm::OneD),
            "quadtree" => Ok(Algorithm::Quadtree),
            "steiner" => Ok(Algorithm::Steiner),
            _ => Err(format!("unknown algorithm '{s}' (1d, quadtree, steiner)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    Uniform,
    File(PathBuf),
    Adv1D,
    AdvSteiner,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Uniform => "uniform",
            Generator::File(_) => "file",
            Generator::Adv1D => "adv1d",
            Generator::AdvSteiner => "adv-steiner",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub generator: Generator,
    pub stages: usize,
    pub eps: Vec<f64>,
    pub n: Vec<usize>,
    pub seeds: Vec<u64>,
    pub dim: usize,
    pub metric: Metric,
    pub c1: f64,
    pub c2: f64,
    pub slt: SltMode,
    pub backbone: BackboneMode,
    pub greedy_max_n: usize,
    pub checkpoints: bool,
    pub timing: bool,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        ExperimentConfig {
            algorithm,
            generator: Generator::Uniform,
            stages: 2,
            eps: vec![0.25],
            n: vec![100],
            seeds: vec![1],
            dim: if algorithm == Algorithm::OneD { 1 } else { 2 },
            metric: Metric::L2,
            c1: 1.0,
            c2: 6.0,
            slt: SltMode::Dyadic,
            backbone: BackboneMode::Lazy,
            greedy_max_n: 2000,
            checkpoints: true,
            timing: false,
            out: None,
        }
    }

    /// Applies every `key = value` line of `text` on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<(), HarnessError> {
        let mut input = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| HarnessError::Config { line: i + 1, msg };
            let (k, v) = line.split_once('=').ok_or_else(|| err(format!("expected key = value, got '{line}'")))?;
            let (k, v) = (k.trim(), v.trim());
            if k == "input" {
                input = Some(PathBuf::from(v));
                continue;
            }
            self.set(k, v).map_err(err)?;
        }
        if let Some(p) = input {
            self.generator = Generator::File(p);
        }
        Ok(())
    }

    pub fn parse(algorithm: Algorithm, text: &str) -> Result<Self, HarnessError> {
        let mut c = ExperimentConfig::new(algorithm);
        c.apply_text(text)?;
        Ok(c)
    }

    /// Sets one key; `generator = file` needs `input` set separately.
    pub fn set(&mut self, key: &str, v: &str) -> Result<(), String> {
        match key {
            "algorithm" => {
                let a: Algorithm = v.parse()?;
                if a != self.algorithm && self.dim == ExperimentConfig::new(self.algorithm).dim {
                    self.dim = ExperimentConfig::new(a).dim;
                }
                self.algorithm = a;
            }
            "generator" => {
                self.generator = match v {
                    "uniform" => Generator::Uniform,
                    "adv1d" => Generator::Adv1D,
                    "adv-steiner" => Generator::AdvSteiner,
                    "file" => match &self.generator {
                        Generator::File(p) => Generator::File(p.clone()),
                        _ => Generator::File(PathBuf::new()),
                    },
                    _ => return Err(format!("unknown generator '{v}' (uniform, file, adv1d, adv-steiner)")),
                }
            }
            "input" => self.generator = Generator::File(PathBuf::from(v)),
            "stages" => self.stages = num(v)?,
            "eps" => self.eps = list(v, parse_eps)?,
            "n" => self.n = list(v, num)?,
            "seeds" | "seed" => self.seeds = parse_seeds(v)?,
            "dim" => self.dim = num(v)?,
            "metric" => self.metric = v.parse()?,
            "c1" => self.c1 = num(v)?,
            "c2" => self.c2 = num(v)?,
            "slt" => self.slt = v.parse()?,
            "backbone" => self.backbone = v.parse()?,
            "greedy_max_n" => self.greedy_max_n = num(v)?,
            "checkpoints" => self.checkpoints = boolean(v)?,
            "timing" => self.timing = boolean(v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            _ => return Err(format!("unknown key '{key}'")),
        }
        Ok(())
    }
}

fn num<T: FromStr>(v: &str) -> Result<T, String> {
    v.trim().parse().map_err(|_| format!("bad number '{v}'"))
}

fn boolean(v: &str) -> Result<bool, String> {
    match v {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(format!("bad boolean '{v}'")),
    }
}

/// `0.25` or `1/4`.
pub fn parse_eps(v: &str) -> Result<f64, String> {
    let v = v.trim();
    let x = match v.split_once('/') {
        Some((a, b)) => num::<f64>(a)? / num::<f64>(b)?,
        None => num(v)?,
    };
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("eps must be positive, got '{v}'"))
    }
}

fn list<T>(v: &str, f: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(f).collect()
}

fn parse_seeds(v: &str) -> Result<Vec<u64>, String> {
    match v.split_once("..") {
        Some((a, b)) => Ok((num::<u64>(a)?..num::<u64>(b)?).collect()),
        None => list(v, num),
    }
}
