use crate::{GeomError, Point};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Metric {
    L1,
    #[default]
    L2,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::L1 => write!(f, "l1"),
            Metric::L2 => write!(f, "l2"),
        }
    }
}

impl FromStr for Metric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Metric::L1),
            "l2" => Ok(Metric::L2),
            other => Err(format!("unknown metric '{other}'")),
        }
    }
}

/// Distance between two coordinate slices of equal length.
#[inline]
pub fn dist(a: &[f64], b: &[f64], m: Metric) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    match m {
        Metric::L1 => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        Metric::L2 => {
            if a.len() == 1 {
                return (a[0] - b[0]).abs();
            }
            a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
        }
    }
}

pub fn distance(p: &Point, q: &Point, m: Metric) -> Result<f64, GeomError> {
    if p.dim() != q.dim() {
        return Err(GeomError::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    Ok(dist(p.coords(), q.coords(), m))
}
