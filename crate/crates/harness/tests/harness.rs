use spanlab_harness::record::read_csv;
use spanlab_harness::{
    checkpoints, report, run_experiment, uniform_points, write_csv, write_json, Algorithm, ExperimentConfig, Generator,
    Lcg, RunRecord, Status,
};
use std::path::PathBuf;
use std::process::Command;

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("spanlab-test-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn lcg_matches_big_integer_reference() {
    // Values from arbitrary-precision arithmetic mod 2^64, seed 1.
    let mut g = Lcg::new(1);
    assert_eq!(g.next_u64(), 7806831264735756412);
    assert_eq!(g.next_u64(), 9396908728118811419);
    let p = uniform_points(1, 2, 2);
    assert_eq!(p[0].coords(), &[0.42320917087271326, 0.5094074428837206]);
    assert_eq!(p[1].coords(), &[0.6483593939634306, 0.3828633905082601]);
}

#[test]
fn config_lines() {
    let text = "# comment\nalgorithm = quadtree\neps = 1/4, 0.125\nn = 10,20\nseeds = 3..6\nmetric = l1 # trailing\ntiming = off\n";
    let c = ExperimentConfig::parse(Algorithm::OneD, text).unwrap();
    assert_eq!(c.algorithm, Algorithm::Quadtree);
    assert_eq!(c.dim, 2);
    assert_eq!(c.eps, vec![0.25, 0.125]);
    assert_eq!(c.n, vec![10, 20]);
    assert_eq!(c.seeds, vec![3, 4, 5]);
    assert_eq!(c.metric, spanlab_geometry::Metric::L1);
    let e = ExperimentConfig::parse(Algorithm::OneD, "eps = 0.5\nbogus = 1\n").unwrap_err();
    assert!(e.to_string().contains("line 2"), "{e}");
    assert!(ExperimentConfig::parse(Algorithm::OneD, "eps = -1").is_err());
    let f = ExperimentConfig::parse(Algorithm::OneD, "input = pts.txt").unwrap();
    assert_eq!(f.generator, Generator::File("pts.txt".into()));
}

#[test]
fn checkpoint_count_is_ceil_log2() {
    assert_eq!(checkpoints(0), Vec::<usize>::new());
    assert_eq!(checkpoints(2), vec![2]);
    assert_eq!(checkpoints(8), vec![2, 4, 8]);
    assert_eq!(checkpoints(9), vec![2, 4, 8, 9]);
    assert_eq!(checkpoints(1000).len(), 10);
}

#[test]
fn adversary_run_record() {
    let mut c = ExperimentConfig::new(Algorithm::OneD);
    c.apply_text("generator = adv1d\neps = 1/2\nstages = 2").unwrap();
    let recs = run_experiment(&c).unwrap();
    assert_eq!(recs.len(), 1);
    let r = &recs[0];
    assert!(r.alg_weight >= 2.0);
    assert_eq!(r.opt1d_weight, Some(1.0));
    assert_eq!(r.n, 10);
    assert_eq!(r.mst_weight, 1.0);
}

#[test]
fn empty_input_gives_no_records() {
    let d = tmp("empty");
    let f = d.join("empty.txt");
    std::fs::write(&f, "dim 2\n").unwrap();
    let mut c = ExperimentConfig::new(Algorithm::Quadtree);
    c.generator = Generator::File(f);
    assert!(run_experiment(&c).unwrap().is_empty());
    c.generator = Generator::Uniform;
    c.n = vec![0];
    assert!(run_experiment(&c).unwrap().is_empty());
}

fn csv_of(recs: &[RunRecord]) -> Vec<u8> {
    let mut v = Vec::new();
    write_csv(&mut v, recs).unwrap();
    v
}

#[test]
fn same_seed_same_bytes() {
    let mut c = ExperimentConfig::new(Algorithm::Quadtree);
    c.apply_text("n = 50, 80\nseeds = 1,2\neps = 1/2, 1/4").unwrap();
    let a = csv_of(&run_experiment(&c).unwrap());
    let b = csv_of(&run_experiment(&c).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a.clone()).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.starts_with(spanlab_harness::CSV_HEADER));
    let back = read_csv(&a[..]).unwrap();
    assert_eq!(csv_of(&back), a);
    let mut j = Vec::new();
    write_json(&mut j, &back).unwrap();
    let from_json: Vec<RunRecord> = serde_json::from_slice(&j).unwrap();
    assert_eq!(from_json, back);
}

#[test]
fn records_respect_their_bound() {
    let mut c = ExperimentConfig::new(Algorithm::Steiner);
    c.apply_text("n = 40\nseeds = 0..3\neps = 1/4").unwrap();
    for r in run_experiment(&c).unwrap() {
        assert_eq!(r.status, Status::Ok);
        assert!(r.max_stretch <= r.stretch_bound * (1.0 + 1e-9));
        assert!(r.alg_weight >= r.mst_weight);
        assert!(r.greedy_weight.unwrap() >= r.mst_weight * (1.0 - 1e-12));
    }
}

#[test]
fn report_rows_and_fits() {
    let mut c = ExperimentConfig::new(Algorithm::OneD);
    c.apply_text("n = 64, 256, 1024\neps = 1/4\nseeds = 5").unwrap();
    let recs = run_experiment(&c).unwrap();
    let rep = report(&recs);
    assert_eq!(rep.rows.len(), 3);
    assert_eq!(rep.fits.len(), 1);
    assert!(rep.fits[0].slope.is_some());
    assert_eq!(rep.rows[0].primary, rep.rows[0].ratio_opt1d.unwrap());
    let one = report(&recs[..1]);
    assert_eq!(one.rows.len(), 1);
    assert_eq!(one.fits[0].slope, None);
    assert_eq!(one.ratios_csv().lines().count(), 2);
}

#[test]
fn cli_marks_failed_stretch_with_nonzero_exit() {
    let d = tmp("cli");
    let pts = d.join("pts.txt");
    // After these four points the pair (0.125, 0.875) has stretch 5/3 > 3/2.
    std::fs::write(&pts, "dim 1\n0\n1\n0.875\n0.125\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_spanlab"))
        .args(["run-1d", "--eps", "1/2", "--input"])
        .arg(&pts)
        .env("SPANLAB_OUT", &d)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let recs = read_csv(std::fs::File::open(d.join("records.csv")).unwrap()).unwrap();
    assert_eq!(recs[0].status, Status::Failed);
    assert!((recs[0].max_stretch - 1.25 / 0.75).abs() < 1e-12);
    assert!(String::from_utf8_lossy(&out.stderr).contains("witness"));
}

#[test]
fn cli_oracle_and_construct() {
    let d = tmp("oracle");
    let pts = d.join("fig.txt");
    let h = 3f64.sqrt() / 2.0;
    std::fs::write(&pts, format!("dim 2\n0 0\n1 0\n0.5 {h}\n")).unwrap();
    let bin = env!("CARGO_BIN_EXE_spanlab");
    let out = Command::new(bin).args(["oracle", "--method", "exact", "--t", "1.5", "--input"]).arg(&pts).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("weight 3"));
    let out = Command::new(bin).args(["construct", "--kind", "l1-2d", "--eps", "1/4"]).env("SPANLAB_OUT", &d).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = Command::new(bin).args(["verify", "--t", "1", "--graph"]).arg(d.join("l1_network.txt")).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}
