//! Uniform evaluation grids.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// `n` equally spaced points from `min` to `max` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) {
            return Err(Error::Grid(format!("non-finite bounds [{min}, {max}]")));
        }
        if n < 2 {
            return Err(Error::Grid(format!("need at least 2 points, got {n}")));
        }
        if max <= min {
            return Err(Error::Grid(format!("axis must increase, got [{min}, {max}]")));
        }
        Ok(Axis { min, max, n })
    }

    /// Axis with spacing `step` starting at `min`.
    pub fn with_step(min: f64, step: f64, n: usize) -> Result<Self> {
        Axis::new(min, min + step * (n - 1) as f64, n)
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    pub fn at(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.max
        } else {
            self.min + self.step() * i as f64
        }
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.at(i)).collect()
    }

    pub fn centre(&self) -> f64 {
        0.5 * (self.min + self.max)
    }

    /// Index of the grid point nearest to `x`.
    pub fn nearest(&self, x: f64) -> usize {
        let i = ((x - self.min) / self.step()).round();
        i.clamp(0.0, (self.n - 1) as f64) as usize
    }
}

/// Particle coordinate along `x1`, reflector coordinate along `x2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x1: Axis,
    pub x2: Axis,
}

impl Grid {
    pub fn new(x1: Axis, x2: Axis) -> Self {
        Grid { x1, x2 }
    }

    pub fn points(&self) -> usize {
        self.x1.n * self.x2.n
    }
}

/// Trapezoid rule on a uniform axis.
pub fn trapezoid(values: &[f64], step: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => step * (values[1..n - 1].iter().sum::<f64>() + 0.5 * (values[0] + values[n - 1])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_axes() {
        assert!(Axis::new(0.0, 1.0, 1).is_err());
        assert!(Axis::new(1.0, 1.0, 4).is_err());
        assert!(Axis::new(2.0, 1.0, 4).is_err());
        assert!(Axis::new(0.0, f64::INFINITY, 4).is_err());
    }

    #[test]
    fn endpoints_are_exact() {
        let a = Axis::new(-0.3, 0.7, 11).unwrap();
        assert_eq!(a.at(0), -0.3);
        assert_eq!(a.at(10), 0.7);
        assert_eq!(a.nearest(0.21), 5);
    }

    #[test]
    fn trapezoid_is_exact_for_lines() {
        let v: Vec<f64> = (0..5).map(|i| 2.0 * i as f64 + 1.0).collect();
        assert!((trapezoid(&v, 0.5) - 10.0).abs() < 1e-14);
    }
}
