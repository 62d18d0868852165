//! The uniform generator every implementation shares: a 64-bit LCG with
//! multiplier 6364136223846793005 and increment 1442695040888963407. Each
//! coordinate advances the state once and takes its top 53 bits as
//! `(s >> 11) / 2^53`, a value in `[0, 1)`. The state starts at the seed.

use spanlab_geometry::Point;

#[derive(Clone, Debug)]
pub struct Lcg(u64);

impl Lcg {
    pub const MUL: u64 = 6364136223846793005;
    pub const INC: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(Self::MUL).wrapping_add(Self::INC);
        self.0
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// `n` points uniform in `[0, 1)^dim`, coordinates drawn point by point.
pub fn uniform_points(seed: u64, n: usize, dim: usize) -> Vec<Point> {
    let mut g = Lcg::new(seed);
    (0..n).map(|_| Point::new((0..dim).map(|_| g.next_f64()).collect::<Vec<_>>())).collect()
}
