use spanlab_adversaries::{run_steiner_adversary, SteinerAdversaryConfig};
use spanlab_geometry::le_tol;
use spanlab_spanners::{SteinerConfig, SteinerSpanner};

#[test]
fn three_stages_at_quarter() {
    let eps = 0.25;
    let mut alg = SteinerSpanner::new(SteinerConfig::new(eps, 2)).unwrap();
    let (reps, stream) = run_steiner_adversary(&mut alg, SteinerAdversaryConfig::new(eps), 3).unwrap();
    assert_eq!(reps.len(), 3);
    assert_eq!(stream.len(), reps.iter().map(|r| r.points).sum::<usize>());
    for r in &reps {
        assert!(le_tol(r.witness_weight, r.witness_bound), "{r:?}");
        assert!(r.gain_error < 1e-3);
        if r.stage > 1 {
            assert!(r.gain >= 0.5 - 1e-3, "{r:?}");
            assert!(r.batch_path_weight >= 1.0);
        }
    }
}

#[test]
fn weight_grows_at_least_by_the_gains() {
    let eps = 0.25;
    let mut alg = SteinerSpanner::new(SteinerConfig::new(eps, 2)).unwrap();
    let (reps, _) = run_steiner_adversary(&mut alg, SteinerAdversaryConfig::new(eps), 2).unwrap();
    let grown = reps[1].alg_weight - reps[0].alg_weight;
    assert!(grown + 1e-9 >= reps[1].gain);
}
