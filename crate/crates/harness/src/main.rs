use clap::{Args, Parser, Subcommand, ValueEnum};
use spanlab_adversaries::{
    build_l1_2d, build_l1_highdim, build_manhattan_2d, build_manhattan_highdim, run_steiner_adversary,
    verify_bipartite_necessity, AdvItem, Adversary1D, SteinerAdversaryConfig,
};
use spanlab_geometry::io::{read_graph, read_points, write_graph, write_points};
use spanlab_geometry::{verify_stretch, Metric, PairSet, Point};
use spanlab_harness::config::parse_eps;
use spanlab_harness::{
    output_dir, read_records, report, run_experiment, write_csv, write_json, write_report, Algorithm, ExperimentConfig,
    HarnessError, Status,
};
use spanlab_oracle::{exact_opt_small, greedy_spanner, mst_oracle, Method};
use spanlab_spanners::{OnlineSpanner, QuadtreeSpanner, SteinerConfig, SteinerSpanner};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "spanlab", version, about = "Online geometric spanners: runs, adversaries, oracles, reports")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the interval algorithm on a point stream.
    #[command(name = "run-1d")]
    Run1d(RunArgs),
    /// Run the quadtree annulus spanner.
    #[command(name = "run-quadtree")]
    RunQuadtree(RunArgs),
    /// Run the Steiner spanner.
    #[command(name = "run-steiner")]
    RunSteiner(RunArgs),
    /// Write an adversarial stream.
    Adversary(AdvArgs),
    /// Build an L1 point set and its Manhattan network.
    Construct(ConstructArgs),
    /// Certify the stretch of a graph file over its input pairs.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: f64,
    },
    /// Offline baseline for a point file.
    Oracle(OracleArgs),
    /// Ratio tables, fitted slopes and a plotting script from run records.
    Report {
        /// records.csv or records.json
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Config file of `key = value` lines, applied before the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated list; fractions such as 1/4 are accepted.
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// Seed list or range `a..b`.
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    metric: Option<String>,
    /// uniform, file, adv1d or adv-steiner.
    #[arg(long)]
    generator: Option<String>,
    /// Point file; implies `--generator file`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    stages: Option<usize>,
    /// Shallow-light tree mode for run-steiner: dyadic or star.
    #[arg(long)]
    slt: Option<String>,
    /// Backbone mode for run-steiner: lazy or full.
    #[arg(long)]
    backbone: Option<String>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    /// Record wall-clock runtime (output is then not byte-reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AdvKind {
    #[value(name = "1d")]
    OneD,
    Steiner,
}

#[derive(Clone, Copy, ValueEnum)]
enum AdvTarget {
    Steiner,
    Quadtree,
}

#[derive(Args)]
struct AdvArgs {
    #[arg(long, value_enum)]
    kind: AdvKind,
    #[arg(long, default_value = "1/4")]
    eps: String,
    #[arg(long, default_value_t = 2)]
    stages: usize,
    /// Algorithm the adaptive adversary plays against.
    #[arg(long, value_enum, default_value = "steiner")]
    against: AdvTarget,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    #[value(name = "l1-2d")]
    L1Plane,
    #[value(name = "l1-highdim")]
    L1High,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: ConstructKind,
    #[arg(long, default_value = "1/4")]
    eps: String,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_parser = |s: &str| s.parse::<Method>().map_err(|e| e.to_string()))]
    method: Method,
    #[arg(long, default_value_t = 1.5)]
    t: f64,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "l2")]
    metric: String,
    /// Exact search: drop edges that have another input on them.
    #[arg(long)]
    subdivision_only: bool,
    /// Also write the oracle's graph here.
    #[arg(long)]
    graph_out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse().cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn param(e: impl ToString) -> HarnessError {
    HarnessError::Param(e.to_string())
}

/// Ok(false) means the command ran but certified a failure.
fn dispatch(cmd: Cmd) -> Result<bool, HarnessError> {
    match cmd {
        Cmd::Run1d(a) => run(Algorithm::OneD, a),
        Cmd::RunQuadtree(a) => run(Algorithm::Quadtree, a),
        Cmd::RunSteiner(a) => run(Algorithm::Steiner, a),
        Cmd::Adversary(a) => adversary(a),
        Cmd::Construct(a) => construct(a),
        Cmd::Verify { graph, t } => {
            let g = read_graph(BufReader::new(File::open(graph)?))?;
            let rep = verify_stretch(&g, &PairSet::AllInputs, t);
            println!("pairs {}  max stretch {}  bound {}", rep.pairs_checked, rep.max_stretch, t);
            if let Some(w) = &rep.witness {
                println!("worst pair: vertices {} {}  path {}  direct {}", w.u, w.v, w.path_weight, w.direct);
            }
            println!("{}", if rep.passed() { "PASS" } else { "FAIL" });
            Ok(rep.passed())
        }
        Cmd::Oracle(a) => oracle(a),
        Cmd::Report { input, out } => {
            let recs = read_records(&input)?;
            if recs.is_empty() {
                return Err(param("report needs at least one record"));
            }
            let rep = report(&recs);
            print!("{}", rep.table());
            let dir = output_dir(out.as_deref());
            for p in write_report(&rep, &dir)? {
                println!("wrote {}", p.display());
            }
            Ok(true)
        }
    }
}

fn run(alg: Algorithm, a: RunArgs) -> Result<bool, HarnessError> {
    let mut cfg = ExperimentConfig::new(alg);
    if let Some(p) = &a.config {
        cfg.apply_text(&std::fs::read_to_string(p)?)?;
    }
    let mut set = |k: &str, v: Option<String>| v.map_or(Ok(()), |v| cfg.set(k, &v).map_err(param));
    set("eps", a.eps)?;
    set("n", a.n)?;
    set("seeds", a.seed)?;
    set("dim", a.dim.map(|d| d.to_string()))?;
    set("metric", a.metric)?;
    set("generator", a.generator)?;
    set("stages", a.stages.map(|s| s.to_string()))?;
    set("slt", a.slt)?;
    set("backbone", a.backbone)?;
    set("c1", a.c1.map(|c| c.to_string()))?;
    set("c2", a.c2.map(|c| c.to_string()))?;
    if let Some(p) = a.input {
        cfg.generator = spanlab_harness::Generator::File(p);
    }
    if a.timing {
        cfg.timing = true;
    }
    if a.out.is_some() {
        cfg.out = a.out;
    }
    let recs = run_experiment(&cfg)?;
    let dir = output_dir(cfg.out.as_deref());
    std::fs::create_dir_all(&dir)?;
    write_csv(BufWriter::new(File::create(dir.join("records.csv"))?), &recs)?;
    write_json(BufWriter::new(File::create(dir.join("records.json"))?), &recs)?;
    let failed = recs.iter().filter(|r| r.status == Status::Failed).count();
    if !recs.is_empty() {
        print!("{}", report(&recs).table());
    }
    println!("{} records, {} FAILED; wrote {}", recs.len(), failed, dir.join("records.csv").display());
    Ok(failed == 0)
}

fn save_points(path: &Path, dim: usize, pts: &[Point]) -> Result<(), HarnessError> {
    let mut w = BufWriter::new(File::create(path)?);
    write_points(&mut w, dim, pts)?;
    w.flush()?;
    println!("wrote {}", path.display());
    Ok(())
}

fn adversary(a: AdvArgs) -> Result<bool, HarnessError> {
    let eps = parse_eps(&a.eps).map_err(param)?;
    let dir = output_dir(a.out.as_deref());
    std::fs::create_dir_all(&dir)?;
    match a.kind {
        AdvKind::OneD => {
            let mut pts = Vec::new();
            for it in Adversary1D::new(eps, a.stages)? {
                match it {
                    AdvItem::Point(x) => pts.push(Point::new(vec![x])),
                    AdvItem::StageEnd(j) => println!("stage {j}: {} points", pts.len()),
                }
            }
            save_points(&dir.join("adv1d_points.txt"), 1, &pts)?;
        }
        AdvKind::Steiner => {
            let mut alg: Box<dyn OnlineSpanner> = match a.against {
                AdvTarget::Steiner => Box::new(SteinerSpanner::new(SteinerConfig::new(eps, 2))?),
                AdvTarget::Quadtree => Box::new(QuadtreeSpanner::new(eps, 2)?),
            };
            let (reps, pts) = run_steiner_adversary(alg.as_mut(), SteinerAdversaryConfig::new(eps), a.stages)?;
            let mut csv = String::from("stage,points,k,alg_weight,witness_weight,witness_bound,region_before,region_after,gain,gain_error\n");
            for r in &reps {
                println!(
                    "stage {}: {} points, k {}, weight {:.4}, witness {:.6} <= {:.6}, gain {:.4}",
                    r.stage, r.points, r.k, r.alg_weight, r.witness_weight, r.witness_bound, r.gain
                );
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    r.stage,
                    r.points,
                    r.k,
                    r.alg_weight,
                    r.witness_weight,
                    r.witness_bound,
                    r.region_weight_before,
                    r.region_weight_after,
                    r.gain,
                    r.gain_error
                ));
            }
            std::fs::write(dir.join("adv_steiner_stages.csv"), csv)?;
            let pts: Vec<Point> = pts.into_iter().map(|p| Point::new(p.to_vec())).collect();
            save_points(&dir.join("adv_steiner_points.txt"), 2, &pts)?;
        }
    }
    Ok(true)
}

fn construct(a: ConstructArgs) -> Result<bool, HarnessError> {
    let eps = parse_eps(&a.eps).map_err(param)?;
    let (c, g) = match a.kind {
        ConstructKind::L1Plane => {
            let c = build_l1_2d(eps)?;
            let g = build_manhattan_2d(&c)?;
            (c, g)
        }
        ConstructKind::L1High => {
            let c = build_l1_highdim(eps, a.dim)?;
            let g = build_manhattan_highdim(&c)?;
            (c, g)
        }
    };
    let necessary = verify_bipartite_necessity(&c);
    let rep = verify_stretch(&g, &PairSet::AllInputs, 1.0);
    println!("k {}  dim {}  |S1| {}  |S1 hat| {}", c.k, c.dim, c.s1.len(), c.s1_hat.len());
    println!("cross distance {}  bipartite necessity {}", c.cross_distance(), necessary);
    println!(
        "network weight {}  forced bipartite weight {}  ratio {:.4}",
        g.weight(),
        c.forced_bipartite_weight(),
        c.forced_bipartite_weight() / g.weight()
    );
    println!("manhattan: max stretch {} over {} pairs", rep.max_stretch, rep.pairs_checked);
    let dir = output_dir(a.out.as_deref());
    std::fs::create_dir_all(&dir)?;
    let pts: Vec<Point> = c.all_points().iter().map(|p| Point::new(p.iter().map(|&x| x as f64).collect::<Vec<_>>())).collect();
    save_points(&dir.join("l1_points.txt"), c.dim, &pts)?;
    let gp = dir.join("l1_network.txt");
    let mut w = BufWriter::new(File::create(&gp)?);
    write_graph(&mut w, &g)?;
    w.flush()?;
    println!("wrote {}", gp.display());
    Ok(necessary && rep.passed())
}

fn oracle(a: OracleArgs) -> Result<bool, HarnessError> {
    let m: Metric = a.metric.parse().map_err(param)?;
    let (_, pts) = read_points(BufReader::new(File::open(&a.input)?))?;
    let r = match a.method {
        Method::Greedy => greedy_spanner(&pts, a.t, m)?,
        Method::Mst => mst_oracle(&pts, m),
        Method::Exact => exact_opt_small(&pts, a.t, m, a.subdivision_only)?,
    };
    println!("method {}  points {}  edges {}  weight {}  certified {}", r.method, pts.len(), r.edges.len(), r.weight, r.certified);
    if let Some(p) = a.graph_out {
        let g = r.to_graph(&pts, m)?;
        let mut w = BufWriter::new(File::create(&p)?);
        write_graph(&mut w, &g)?;
        w.flush()?;
        println!("wrote {}", p.display());
    }
    Ok(true)
}
