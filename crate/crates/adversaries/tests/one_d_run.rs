use spanlab_adversaries::{adv1d_points, forced_weight_1d, AdvItem, Adversary1D};
use spanlab_spanners::{opt_1d, Spanner1D};

#[test]
fn forced_weight_per_stage() {
    for eps in [0.5, 0.125] {
        let mut alg = Spanner1D::new(eps).unwrap();
        let mut pts = Vec::new();
        for it in Adversary1D::new(eps, 4).unwrap() {
            match it {
                AdvItem::Point(x) => {
                    alg.insert_1d(x).unwrap();
                    pts.push(x);
                }
                AdvItem::StageEnd(j) => {
                    let w = spanlab_spanners::OnlineSpanner::graph(&alg).weight();
                    assert!(w >= forced_weight_1d(eps, j), "eps={eps} stage {j}: {w}");
                    assert_eq!(opt_1d(&pts), 1.0);
                }
            }
        }
    }
}

#[test]
fn points_stay_in_unit_interval_and_are_distinct() {
    let mut p = adv1d_points(0.25, 3).unwrap();
    assert!(p.iter().all(|x| (0.0..=1.0).contains(x)));
    let n = p.len();
    p.sort_by(f64::total_cmp);
    p.dedup();
    assert_eq!(p.len(), n);
}
