//! Oblivious multi-stage stream on the unit interval.
//!
//! Stage 1 emits `1, 0` and then `i * eps / 2` for `i = 1..=floor(1/eps)`.
//! Every later stage repeats the pattern inside each gap `[a, b]` of the
//! points emitted so far: `a + i * (eps / 2) * (b - a)`.

use crate::AdversaryError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AdvItem {
    Point(f64),
    /// All points of the given stage (1-based) have been emitted.
    StageEnd(usize),
}

#[derive(Clone, Debug)]
pub struct Adversary1D {
    eps: f64,
    per_gap: usize,
    max_stages: usize,
    stage: usize,
    /// Points of earlier stages, sorted.
    sorted: Vec<f64>,
    pending: Vec<f64>,
    cursor: usize,
    emitted_this_stage: Vec<f64>,
}

impl Adversary1D {
    pub fn new(eps: f64, max_stages: usize) -> Result<Self, AdversaryError> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(AdversaryError::Param(format!("eps must lie in (0, 1], got {eps}")));
        }
        let per_gap = (1.0 / eps).floor() as usize;
        let mut s = Adversary1D {
            eps,
            per_gap,
            max_stages,
            stage: 0,
            sorted: Vec::new(),
            pending: Vec::new(),
            cursor: 0,
            emitted_this_stage: Vec::new(),
        };
        s.start_stage();
        Ok(s)
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Stage currently being emitted (1-based); `max_stages + 1` when done.
    pub fn stage(&self) -> usize {
        self.stage
    }

    fn start_stage(&mut self) {
        self.stage += 1;
        self.cursor = 0;
        self.pending.clear();
        if self.stage > self.max_stages {
            return;
        }
        let step = self.eps / 2.0;
        if self.stage == 1 {
            self.pending.extend([1.0, 0.0]);
            self.pending.extend((1..=self.per_gap).map(|i| i as f64 * step));
        } else {
            for w in self.sorted.windows(2) {
                let (a, b) = (w[0], w[1]);
                self.pending.extend((1..=self.per_gap).map(|i| a + i as f64 * step * (b - a)));
            }
        }
    }

    /// Next point or stage marker; `None` once `max_stages` are complete.
    pub fn next_item(&mut self) -> Option<AdvItem> {
        if self.stage > self.max_stages {
            return None;
        }
        if self.cursor < self.pending.len() {
            let x = self.pending[self.cursor];
            self.cursor += 1;
            self.emitted_this_stage.push(x);
            return Some(AdvItem::Point(x));
        }
        let done = self.stage;
        self.sorted.append(&mut self.emitted_this_stage);
        self.sorted.sort_by(f64::total_cmp);
        self.sorted.dedup();
        self.start_stage();
        Some(AdvItem::StageEnd(done))
    }
}

impl Iterator for Adversary1D {
    type Item = AdvItem;

    fn next(&mut self) -> Option<AdvItem> {
        self.next_item()
    }
}

/// Weight every `(1+eps)`-spanner must have after `stage` stages.
pub fn forced_weight_1d(eps: f64, stage: usize) -> f64 {
    1.0 + stage as f64 / 2.0 * (1.0 / eps).floor()
}

/// Points emitted in stages `1..=stages`, in emission order.
pub fn adv1d_points(eps: f64, stages: usize) -> Result<Vec<f64>, AdversaryError> {
    Ok(Adversary1D::new(eps, stages)?
        .filter_map(|it| match it {
            AdvItem::Point(x) => Some(x),
            AdvItem::StageEnd(_) => None,
        })
        .collect())
}
