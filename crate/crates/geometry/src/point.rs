use crate::GeomError;

#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Panics on non-finite input; use [`Point::checked`] for untrusted data.
    pub fn new(coords: impl Into<Vec<f64>>) -> Self {
        let coords = coords.into();
        assert!(coords.iter().all(|c| c.is_finite()), "non-finite coordinate");
        assert!(!coords.is_empty(), "empty point");
        Point { coords }
    }

    pub fn checked(coords: impl Into<Vec<f64>>) -> Result<Self, GeomError> {
        let coords = coords.into();
        if coords.is_empty() {
            return Err(GeomError::DimensionMismatch { expected: 1, got: 0 });
        }
        if !coords.iter().all(|c| c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn x(&self) -> f64 {
        self.coords[0]
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point::new(v)
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(v: [f64; N]) -> Self {
        Point::new(v.to_vec())
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.coords
    }
}
