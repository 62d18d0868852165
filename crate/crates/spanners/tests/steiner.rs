use spanlab_geometry::{verify_stretch, PairSet};
use spanlab_spanners::steiner::{length_class, line_angle, Frame};
use spanlab_spanners::{
    assign_buckets, build_direction_cover, build_slt, BackboneMode, OnlineSpanner, SltMode, SteinerConfig,
    SteinerSpanner,
};

fn lcg(seed: u64) -> impl FnMut() -> f64 {
    let mut s = seed;
    move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn random_run(dim: usize, n: usize, eps: f64, seed: u64, slt: SltMode) -> SteinerSpanner {
    let mut cfg = SteinerConfig::new(eps, dim);
    cfg.slt = slt;
    let mut s = SteinerSpanner::new(cfg).unwrap();
    let mut next = lcg(seed);
    for _ in 0..n {
        let p: Vec<f64> = (0..dim).map(|_| next()).collect();
        s.steiner_insert(&p).unwrap();
    }
    s
}

#[test]
fn cover_examples() {
    let c = build_direction_cover(2, 0.25).unwrap();
    assert_eq!(c.len(), 7);
    for w in c.directions.windows(2) {
        assert!(line_angle(&w[0], &w[1]) <= 0.5 + 1e-12);
    }
    assert!(build_direction_cover(2, 0.95).unwrap().len() >= 4);
    assert!(build_direction_cover(3, 1.5).is_err());
    let c3 = build_direction_cover(3, 0.25).unwrap();
    assert!(c3.audit(20000) <= 0.5);
}

#[test]
fn buckets_per_edge_audit_2d() {
    for eps in [0.5, 0.25, 0.0625] {
        let s = SteinerSpanner::new(SteinerConfig::new(eps, 2)).unwrap();
        let mut next = lcg(3);
        let mut most = 0;
        for _ in 0..5000 {
            let a = [next() * 10.0, next() * 10.0];
            let b = [next() * 10.0, next() * 10.0];
            let keys = assign_buckets(&a, &b, s.cover(), s.geometry());
            assert!(!keys.is_empty());
            most = most.max(keys.len());
        }
        assert!(most <= 8, "eps {eps}: {most} keys");
    }
}

#[test]
fn edge_between_two_directions_gets_both() {
    let s = SteinerSpanner::new(SteinerConfig::new(0.25, 2)).unwrap();
    let c = s.cover();
    let t = std::f64::consts::PI / (2.0 * c.len() as f64);
    let a = [0.3, 0.2];
    let b = [a[0] + t.cos(), a[1] + t.sin()];
    let keys = assign_buckets(&a, &b, c, s.geometry());
    let mut dirs: Vec<u32> = keys.iter().map(|k| k.dir).collect();
    dirs.dedup();
    assert_eq!(dirs, vec![0, 1]);
    assert!(keys.iter().all(|k| k.level == length_class(1.0)));
}

#[test]
fn parallel_centered_edge_keeps_its_direction() {
    let s = SteinerSpanner::new(SteinerConfig::new(0.25, 2)).unwrap();
    let c = s.cover();
    let dir = &c.directions[3];
    let f = Frame::new(dir);
    let g = s.geometry();
    // A length-1.5 edge along direction 3 centered in tile (5, 2).
    let unit = g.unit(0);
    let center = [(5 * g.t_along + g.t_along) as f64, (2 * g.w + g.w) as f64];
    let half = 0.75 / unit;
    let a = f.to_world(&[center[0] - half, center[1]], unit);
    let b = f.to_world(&[center[0] + half, center[1]], unit);
    let keys = assign_buckets(&a, &b, c, g);
    assert!(keys.iter().any(|k| k.dir == 3 && k.tile == vec![5, 2]));
}

#[test]
fn slt_contract_examples() {
    let t = build_slt(&[0.0, 0.0], &[vec![2.0, 5.0]], 0.1, SltMode::Dyadic);
    assert_eq!(t.max_root_stretch(), 1.0);
    let leaves: Vec<Vec<f64>> = (0..32).map(|i| vec![i as f64 - 15.5, 10.0]).collect();
    let t = build_slt(&[0.0, 0.0], &leaves, 0.1, SltMode::Dyadic);
    assert!(t.max_root_stretch() <= 1.1 * (1.0 + 1e-9));
    assert!(t.weight() <= 100.0, "{}", t.weight());
}

#[test]
fn two_points_and_identical_points() {
    for mode in [BackboneMode::Lazy, BackboneMode::Full] {
        let mut cfg = SteinerConfig::new(0.25, 2);
        cfg.backbone = mode;
        let mut s = SteinerSpanner::new(cfg).unwrap();
        assert!(s.steiner_insert(&[0.25, 0.5]).unwrap().is_empty());
        s.steiner_insert(&[0.75, 0.625]).unwrap();
        s.steiner_insert(&[0.75, 0.625]).unwrap();
        let d = (0.25f64 + 0.015625).sqrt();
        let (w, path) = s.query_path(0, 1).unwrap();
        assert!(w <= 1.75 * d && path.len() >= 2);
        assert_eq!(s.query_path(1, 2).unwrap().0, 0.0);
        assert!(s.query_path(0, 9).is_err());
    }
}

#[test]
fn backbone_growth_per_bucket() {
    let mut cfg = SteinerConfig::new(0.25, 2);
    cfg.backbone = BackboneMode::Full;
    let mut s = SteinerSpanner::new(cfg).unwrap();
    s.steiner_insert(&[0.1, 0.1]).unwrap();
    s.steiner_insert(&[1.1, 0.1]).unwrap();
    assert_eq!(s.route_stats().routed, 1);
    let (key, first) = s.buckets().iter().find(|b| b.1.primary_edges == 1).cloned().unwrap();
    assert!(first.built);
    assert!(s.ensure_backbone(&key).is_empty());
    let built: Vec<(f64, f64)> = s.buckets().iter().map(|b| (b.1.backbone_weight, b.1.connector_weight)).collect();
    // Later edges never touch a built backbone; they only add connectors.
    let mut next = lcg(21);
    for _ in 0..6 {
        s.steiner_insert(&[next() * 1.2, next() * 0.2]).unwrap();
    }
    for (i, &(bw, cw)) in built.iter().enumerate() {
        let st = &s.buckets()[i].1;
        assert_eq!(st.backbone_weight, bw, "{}", s.buckets()[i].0);
        assert!(st.connector_weight >= cw);
    }
}

#[test]
fn full_backbone_weight_is_the_closed_form() {
    for eps in [0.5, 0.25] {
        let mut cfg = SteinerConfig::new(eps, 2);
        cfg.backbone = BackboneMode::Full;
        let mut s = SteinerSpanner::new(cfg).unwrap();
        s.steiner_insert(&[0.2, 0.3]).unwrap();
        s.steiner_insert(&[0.9, 0.7]).unwrap();
        // Overlapping rectangles of one direction share lattice lines, so
        // only the first bucket built pays the whole closed form.
        for (i, (k, st)) in s.buckets().iter().enumerate() {
            let (grid, trees) = s.backbone_closed_form(k.level);
            let cf = grid + trees;
            assert!(st.built);
            if i == 0 {
                assert!((st.backbone_weight - cf).abs() <= 1e-9 * cf, "{k}: {} vs {cf}", st.backbone_weight);
            } else {
                assert!(st.backbone_weight <= cf * (1.0 + 1e-9), "{k}");
            }
        }
        // Each point reaches at most 2^d corners, each within a grid diagonal.
        for (k, _, w) in s.point_connector_weights() {
            let diag = s.geometry().unit(k.level) * 2f64.sqrt();
            assert!(w <= 4.0 * diag * (1.0 + 1e-9), "{k}: {w}");
        }
    }
}

#[test]
fn random_suites_certify_at_three_eps() {
    for (eps, slt) in [(0.5, SltMode::Dyadic), (0.25, SltMode::Star), (0.0625, SltMode::Dyadic)] {
        let s = random_run(2, 50, eps, 5, slt);
        let r = verify_stretch(s.graph(), &PairSet::AllInputs, 1.0 + 3.0 * eps);
        assert!(r.passed(), "eps {eps}: {r:?}");
        let st = s.route_stats();
        assert_eq!(st.routed + st.direct, st.primary_edges);
    }
    let s = random_run(3, 40, 0.25, 9, SltMode::Dyadic);
    assert!(verify_stretch(s.graph(), &PairSet::AllInputs, 1.75).passed());
}

#[test]
fn weight_is_monotone_and_bucket_csv_lists_all() {
    let mut s = SteinerSpanner::new(SteinerConfig::new(0.25, 2)).unwrap();
    let mut next = lcg(17);
    let mut last = 0.0;
    for _ in 0..40 {
        s.insert(&spanlab_geometry::Point::new(vec![next(), next()])).unwrap();
        assert!(s.graph().weight() >= last);
        last = s.graph().weight();
    }
    assert_eq!((s.graph().replay_weight() - last).abs() <= 1e-9 * last, true);
    let csv = s.bucket_csv();
    assert_eq!(csv.lines().count(), s.buckets().len() + 1);
    assert!(csv.starts_with("key,backbone_weight,connector_weight,edges,primary_edges"));
}

