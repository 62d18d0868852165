use crate::{check_input, greedy_spanner, sorted_pairs, Method, OracleError, OracleResult};
use spanlab_geometry::{le_tol, Metric, Point};

pub const EXACT_MAX_N: usize = 9;

struct Search {
    n: usize,
    t: f64,
    /// Candidate edges `(i, j, w)`, longest first.
    cand: Vec<(usize, usize, f64)>,
    d: Vec<f64>,
    /// 0 undecided, 1 taken, 2 dropped.
    state: Vec<u8>,
    best: f64,
    best_set: Option<Vec<usize>>,
}

impl Search {
    fn dmat(&self) -> impl Fn(usize, usize) -> f64 + '_ {
        move |i, j| self.d[i * self.n + j]
    }

    /// All-pairs shortest paths over edges whose state passes `keep`.
    fn apsp(&self, keep: impl Fn(u8) -> bool) -> Vec<f64> {
        let n = self.n;
        let mut s = vec![f64::INFINITY; n * n];
        for i in 0..n {
            s[i * n + i] = 0.0;
        }
        for (e, &(i, j, w)) in self.cand.iter().enumerate() {
            if keep(self.state[e]) && w < s[i * n + j] {
                s[i * n + j] = w;
                s[j * n + i] = w;
            }
        }
        for k in 0..n {
            for i in 0..n {
                let ik = s[i * n + k];
                if ik == f64::INFINITY {
                    continue;
                }
                for j in 0..n {
                    let v = ik + s[k * n + j];
                    if v < s[i * n + j] {
                        s[i * n + j] = v;
                    }
                }
            }
        }
        s
    }

    fn satisfies(&self, s: &[f64]) -> bool {
        let d = self.dmat();
        (0..self.n).all(|i| (i + 1..self.n).all(|j| {
            let p = s[i * self.n + j];
            p.is_finite() && le_tol(p, self.t * d(i, j))
        }))
    }

    /// Taken weight plus a spanning forest over undecided edges joining the
    /// components of the taken edges.
    fn lower_bound(&self) -> f64 {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut w = 0.0;
        for (e, &(i, j, c)) in self.cand.iter().enumerate() {
            if self.state[e] == 1 {
                w += c;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
        for (e, &(i, j, c)) in self.cand.iter().enumerate().rev() {
            if self.state[e] == 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                    w += c;
                }
            }
        }
        w
    }

    fn run(&mut self, e: usize) {
        if self.lower_bound() >= self.best {
            return;
        }
        let taken = self.apsp(|s| s == 1);
        if self.satisfies(&taken) {
            let w: f64 = self.cand.iter().enumerate().filter(|(e, _)| self.state[*e] == 1).map(|(_, c)| c.2).sum();
            if w < self.best {
                self.best = w;
                self.best_set = Some((0..self.cand.len()).filter(|&e| self.state[e] == 1).collect());
            }
            return;
        }
        if e == self.cand.len() {
            return;
        }
        if self.state[e] != 0 {
            return self.run(e + 1);
        }
        self.state[e] = 2;
        if self.satisfies(&self.apsp(|s| s != 2)) {
            self.run(e + 1);
        }
        self.state[e] = 1;
        self.run(e + 1);
        self.state[e] = 0;
    }
}

/// Minimum-weight `t`-spanner of `points` without Steiner points.
///
/// With `allow_steiner_subdivision_only`, an edge `ij` with another input on
/// the segment `ij` is not a candidate: the two pieces through that input
/// connect every pair at no greater cost, so the optimum is unchanged and the
/// search space shrinks.
pub fn exact_opt_small(
    points: &[Point],
    t: f64,
    m: Metric,
    allow_steiner_subdivision_only: bool,
) -> Result<OracleResult, OracleError> {
    check_input(points, t)?;
    let n = points.len();
    if n > EXACT_MAX_N {
        return Err(OracleError::TooLarge { n, max: EXACT_MAX_N });
    }
    let pairs = sorted_pairs(points, m);
    let mut d = vec![0.0; n * n];
    for &(i, j, w) in &pairs {
        d[i * n + j] = w;
        d[j * n + i] = w;
    }
    let on_segment = |i: usize, j: usize| {
        (0..n).any(|r| {
            r != i && r != j && d[i * n + r] > 0.0 && d[r * n + j] > 0.0 && d[i * n + r] + d[r * n + j] <= d[i * n + j] * (1.0 + 1e-12)
        })
    };
    let mut cand: Vec<(usize, usize, f64)> =
        pairs.iter().copied().filter(|&(i, j, _)| !allow_steiner_subdivision_only || !on_segment(i, j)).collect();
    cand.reverse();
    // Any path other than the edge weighs at least the best two-hop detour.
    let state = cand
        .iter()
        .map(|&(i, j, w)| {
            let detour = (0..n).filter(|&r| r != i && r != j).map(|r| d[i * n + r] + d[r * n + j]).fold(f64::INFINITY, f64::min);
            if detour.is_finite() && le_tol(detour, t * w) {
                0
            } else {
                1
            }
        })
        .collect();
    let greedy = greedy_spanner(points, t, m)?;
    let mut s = Search { n, t, cand, d, state, best: greedy.weight * (1.0 + 1e-12) + 1e-300, best_set: None };
    let start = s.apsp(|x| x != 2);
    if !s.satisfies(&start) {
        return Err(OracleError::Param("no candidate edge set is a spanner".into()));
    }
    s.run(0);
    // Nothing strictly lighter than the greedy start means greedy is optimal.
    let (weight, mut edges) = match &s.best_set {
        None => (greedy.weight, greedy.edges),
        Some(set) => (set.iter().map(|&e| s.cand[e].2).sum(), set.iter().map(|&e| (s.cand[e].0, s.cand[e].1)).collect()),
    };
    edges.sort();
    Ok(OracleResult { weight, edges, method: Method::Exact, certified: true })
}
