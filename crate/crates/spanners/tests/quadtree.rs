use proptest::prelude::*;
use spanlab_geometry::{dist, verify_stretch, Metric, PairSet};
use spanlab_spanners::{AnnulusRule, OnlineSpanner, QuadtreeSpanner};

/// Every recorded edge of level `l` joins two points at a distance inside
/// `[c1 a / eps, c2 a / eps]`, and both endpoints are the representatives of
/// their level-`l` cells.
fn check_annulus(q: &QuadtreeSpanner) -> Result<(), String> {
    let g = q.graph();
    let rule = q.rule();
    for l in q.instantiated_levels() {
        let a = q.side(l);
        for &e in q.level_edges(l) {
            let ed = g.edge(e);
            let (pu, pv) = (g.coords(ed.u), g.coords(ed.v));
            let d = dist(pu, pv, g.metric());
            let (lo, hi) = (rule.c1 * a / q.eps(), rule.c2 * a / q.eps());
            if !(lo <= d && d <= hi) {
                return Err(format!("level {l} edge {e}: {d} outside [{lo}, {hi}]"));
            }
            for (v, p) in [(ed.u, pu), (ed.v, pv)] {
                if q.cell_entry(l, p).map(|c| c.representative) != Some(v) {
                    return Err(format!("level {l} edge {e}: vertex {v} is not a representative"));
                }
            }
        }
    }
    Ok(())
}

fn cloud(dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(0.0f64..1.0, dim), 2..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn annulus_membership_and_stretch(pts in cloud(2), eps_i in 0usize..3, l1 in any::<bool>()) {
        let eps = [0.5, 0.25, 0.0625][eps_i];
        let m = if l1 { Metric::L1 } else { Metric::L2 };
        let mut q = QuadtreeSpanner::with_rule(eps, 2, AnnulusRule::default(), m).unwrap();
        for p in &pts {
            q.qt_insert(p).unwrap();
        }
        prop_assert_eq!(check_annulus(&q), Ok(()));
        let r = verify_stretch(q.graph(), &PairSet::AllInputs, 1.0 + eps);
        prop_assert!(r.passed(), "{:?}", r);
    }

    #[test]
    fn three_dimensional_clouds(pts in cloud(3)) {
        let mut q = QuadtreeSpanner::new(0.5, 3).unwrap();
        for p in &pts {
            q.qt_insert(p).unwrap();
        }
        prop_assert_eq!(check_annulus(&q), Ok(()));
        prop_assert!(verify_stretch(q.graph(), &PairSet::AllInputs, 1.5).passed());
    }

    #[test]
    fn replay_is_deterministic(pts in cloud(2)) {
        let run = || {
            let mut q = QuadtreeSpanner::new(0.25, 2).unwrap();
            for p in &pts {
                q.qt_insert(p).unwrap();
            }
            spanlab_geometry::io::graph_to_string(q.graph())
        };
        prop_assert_eq!(run(), run());
    }
}

#[test]
fn clustered_input_with_duplicates() {
    // Two tight clusters far apart plus repeated points force many levels.
    let mut q = QuadtreeSpanner::new(0.25, 2).unwrap();
    let mut pts = Vec::new();
    for i in 0..20 {
        let t = i as f64 * 1e-3;
        pts.push(vec![t, t * 0.5]);
        pts.push(vec![10.0 + t, 3.0 - t]);
    }
    pts.push(vec![0.0, 0.0]);
    for p in &pts {
        q.qt_insert(p).unwrap();
    }
    assert_eq!(check_annulus(&q), Ok(()));
    assert!(verify_stretch(q.graph(), &PairSet::AllInputs, 1.25).passed());
}
