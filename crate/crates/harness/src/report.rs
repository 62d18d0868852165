//! Ratio tables and fitted trends.
//!
//! The primary ratio is `alg / opt1d` for the 1d algorithm and `alg / mst`
//! otherwise. Per `(algorithm, generator, eps)` group, the slope of the
//! primary ratio against `log2 n` is fitted by least squares when the group
//! has at least two distinct `n`.

use crate::record::RunRecord;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub algorithm: String,
    pub generator: String,
    pub eps: f64,
    pub n: usize,
    pub seed: u64,
    pub alg_weight: f64,
    pub ratio_mst: f64,
    pub ratio_greedy: Option<f64>,
    pub ratio_opt1d: Option<f64>,
    pub primary: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fit {
    pub algorithm: String,
    pub generator: String,
    pub eps: f64,
    pub records: usize,
    /// d(primary ratio) / d(log2 n).
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub max_primary: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub fits: Vec<Fit>,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b > 0.0 {
        a / b
    } else if a > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

pub fn report(recs: &[RunRecord]) -> Report {
    let rows: Vec<ReportRow> = recs
        .iter()
        .map(|r| {
            let ratio_opt1d = r.opt1d_weight.map(|o| ratio(r.alg_weight, o));
            let ratio_mst = ratio(r.alg_weight, r.mst_weight);
            ReportRow {
                algorithm: r.algorithm.clone(),
                generator: r.generator.clone(),
                eps: r.eps,
                n: r.n,
                seed: r.seed,
                alg_weight: r.alg_weight,
                ratio_mst,
                ratio_greedy: r.greedy_weight.map(|g| ratio(r.alg_weight, g)),
                ratio_opt1d,
                primary: ratio_opt1d.unwrap_or(ratio_mst),
            }
        })
        .collect();
    let mut keys: Vec<(String, String, f64)> = Vec::new();
    for r in &rows {
        let k = (r.algorithm.clone(), r.generator.clone(), r.eps);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    let fits = keys
        .into_iter()
        .map(|(algorithm, generator, eps)| {
            let g: Vec<&ReportRow> =
                rows.iter().filter(|r| r.algorithm == algorithm && r.generator == generator && r.eps == eps).collect();
            let xs: Vec<f64> = g.iter().map(|r| (r.n as f64).log2()).collect();
            let ys: Vec<f64> = g.iter().map(|r| r.primary).collect();
            let (slope, intercept) = least_squares(&xs, &ys).unzip();
            Fit {
                algorithm,
                generator,
                eps,
                records: g.len(),
                slope,
                intercept,
                max_primary: ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect();
    Report { rows, fits }
}

/// `(slope, intercept)`, or `None` without two distinct `x`.
fn least_squares(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if xs.len() < 2 || sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = sxy / sxx;
    Some((b, my - b * mx))
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

impl Report {
    pub fn ratios_csv(&self) -> String {
        let mut s = String::from("algorithm,generator,eps,n,seed,alg_weight,ratio_mst,ratio_greedy,ratio_opt1d,primary\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                r.algorithm,
                r.generator,
                r.eps,
                r.n,
                r.seed,
                r.alg_weight,
                r.ratio_mst,
                opt(r.ratio_greedy),
                opt(r.ratio_opt1d),
                r.primary
            );
        }
        s
    }

    pub fn fits_csv(&self) -> String {
        let mut s = String::from("algorithm,generator,eps,records,slope_per_log2n,intercept,max_primary\n");
        for f in &self.fits {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                f.algorithm,
                f.generator,
                f.eps,
                f.records,
                opt(f.slope),
                opt(f.intercept),
                f.max_primary
            );
        }
        s
    }

    /// Human-readable table for the terminal.
    pub fn table(&self) -> String {
        let mut s = format!(
            "{:<10} {:<12} {:>9} {:>7} {:>6} {:>12} {:>9} {:>9} {:>9}\n",
            "algorithm", "generator", "eps", "n", "seed", "weight", "alg/mst", "alg/grdy", "alg/opt1"
        );
        let f = |v: Option<f64>| v.map_or_else(|| "-".into(), |x| format!("{x:.3}"));
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<10} {:<12} {:>9.5} {:>7} {:>6} {:>12.4} {:>9.3} {:>9} {:>9}",
                r.algorithm,
                r.generator,
                r.eps,
                r.n,
                r.seed,
                r.alg_weight,
                r.ratio_mst,
                f(r.ratio_greedy),
                f(r.ratio_opt1d)
            );
        }
        s
    }
}

/// Plotting script for `ratios.csv`, one line per `(algorithm, generator, eps)`.
pub const PLOT_SCRIPT: &str = r#"#!/usr/bin/env python3
"""Plot the primary competitive ratio against log2 n from ratios.csv."""
import csv
import math
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

src = sys.argv[1] if len(sys.argv) > 1 else "ratios.csv"
dst = sys.argv[2] if len(sys.argv) > 2 else "ratios.png"
groups = defaultdict(list)
with open(src) as f:
    for row in csv.DictReader(f):
        key = (row["algorithm"], row["generator"], float(row["eps"]))
        groups[key].append((math.log2(int(row["n"])), float(row["primary"])))
for (alg, gen, eps), pts in sorted(groups.items()):
    pts.sort()
    plt.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=f"{alg} {gen} eps={eps:g}")
plt.xlabel("log2 n")
plt.ylabel("weight / baseline")
plt.legend(fontsize="small")
plt.savefig(dst, dpi=150, bbox_inches="tight")
"#;

/// Writes `ratios.csv`, `fits.csv` and `plot_ratios.py` into `dir`.
pub fn write_report(rep: &Report, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let files = [("ratios.csv", rep.ratios_csv()), ("fits.csv", rep.fits_csv()), ("plot_ratios.py", PLOT_SCRIPT.to_string())];
    let mut out = Vec::new();
    for (name, body) in files {
        let p = dir.join(name);
        std::fs::write(&p, body)?;
        out.push(p);
    }
    Ok(out)
}
