use spanlab_adversaries::{
    build_l1_2d, build_l1_highdim, build_manhattan_2d, build_manhattan_highdim, tree_weight_highdim,
    verify_bipartite_necessity,
};
use spanlab_geometry::{verify_stretch, PairSet};

#[test]
fn planar_networks_are_manhattan_for_all_inputs() {
    for eps in [0.5, 0.25, 0.125, 0.0625, 0.03125] {
        let c = build_l1_2d(eps).unwrap();
        let g = build_manhattan_2d(&c).unwrap();
        let mut pts = c.all_points();
        pts.sort();
        pts.dedup();
        assert_eq!(g.inputs().len(), pts.len());
        let rep = verify_stretch(&g, &PairSet::AllInputs, 1.0);
        assert!(rep.passed(), "eps={eps}: {rep:?}");
        let k = c.k as f64;
        assert!(g.weight() <= 8.0 * k * 2f64.powi(c.k as i32));
        assert_eq!(c.cross_distance(), 2 * ((1 << c.k) - 1));
        assert!(verify_bipartite_necessity(&c));
    }
}

#[test]
fn forced_over_network_ratio() {
    for eps in [0.25, 0.0625] {
        let c = build_l1_2d(eps).unwrap();
        let g = build_manhattan_2d(&c).unwrap();
        let ratio = c.forced_bipartite_weight() / g.weight();
        let need = eps.powi(-2) / (32.0 * (1.0 / eps).log2());
        assert!(ratio >= need, "eps={eps}: {ratio} < {need}");
    }
}

#[test]
fn spatial_networks_are_manhattan() {
    let mut t1 = Vec::new();
    for eps in [0.25, 0.125] {
        let c = build_l1_highdim(eps, 3).unwrap();
        let g = build_manhattan_highdim(&c).unwrap();
        let rep = verify_stretch(&g, &PairSet::AllInputs, 1.0);
        assert!(rep.passed(), "eps={eps}: {rep:?}");
        assert!(verify_bipartite_necessity(&c));
        t1.push((c.k, tree_weight_highdim(&c).unwrap()));
    }
    // Fit a * 2^(2k) in log space; both values must sit within a factor 4.
    let loga = t1.iter().map(|&(k, w)| w.ln() - 2.0 * k as f64 * 2f64.ln()).sum::<f64>() / t1.len() as f64;
    for &(k, w) in &t1 {
        let r = w / (loga.exp() * 4f64.powi(k as i32));
        assert!((0.25..=4.0).contains(&r), "k={k}: {w} off the fit by {r}");
    }
}
