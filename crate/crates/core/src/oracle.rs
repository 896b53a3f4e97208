//! Brute-force check: Strang split-step propagation of the two-body
//! Schrodinger equation on a periodic (x1, x2) grid.

use crate::grid::Grid;
use crate::kinematics::Pair;
use crate::{Constants, Error, Result};
use ndarray::{Array2, Axis as NdAxis};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// Fraction of each spectral axis treated as the band edge.
pub const BAND_EDGE_FRACTION: f64 = 0.05;
/// Largest probability allowed in the band edge.
pub const BAND_EDGE_LIMIT: f64 = 1e-6;

/// Interaction potential as a function of x_rel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OraclePotential {
    None,
    /// `height` on |x_rel| < half_width, half of it on the edges. Negative
    /// height is a well.
    Step { height: f64, half_width: f64 },
    /// height * exp(-x_rel^2 / (2 width^2)); tall and narrow it stands in
    /// for a hard mirror.
    GaussianWall { height: f64, width: f64 },
}

impl OraclePotential {
    pub fn value(&self, xr: f64, tol: f64) -> f64 {
        match *self {
            OraclePotential::None => 0.0,
            OraclePotential::Step { height, half_width } => {
                let d = xr.abs() - half_width;
                if d.abs() <= tol {
                    0.5 * height
                } else if d < 0.0 {
                    height
                } else {
                    0.0
                }
            }
            OraclePotential::GaussianWall { height, width } => height * (-0.5 * (xr / width).powi(2)).exp(),
        }
    }
}

/// Angular wavenumbers of an n-point FFT with sample step h.
fn wavenumbers(n: usize, h: f64) -> Vec<f64> {
    let dk = 2.0 * PI / (n as f64 * h);
    (0..n)
        .map(|i| {
            let j = if i <= n / 2 { i as i64 } else { i as i64 - n as i64 };
            j as f64 * dk
        })
        .collect()
}

struct Plans {
    f1: Arc<dyn Fft<f64>>,
    b1: Arc<dyn Fft<f64>>,
    f2: Arc<dyn Fft<f64>>,
    b2: Arc<dyn Fft<f64>>,
}

pub struct SplitStep {
    pub grid: Grid,
    pub pair: Pair,
    pub dt: f64,
    pub potential: OraclePotential,
    hbar: f64,
    kinetic: Array2<Complex64>,
    half_potential: Array2<Complex64>,
    plans: Plans,
}

impl SplitStep {
    pub fn new(pair: Pair, grid: Grid, dt: f64, potential: OraclePotential, c: Constants) -> Result<Self> {
        if !(dt.is_finite() && dt != 0.0) {
            return Err(Error::param("dt", "must be finite and non-zero"));
        }
        let (n1, n2) = (grid.x1.n, grid.x2.n);
        let (h1, h2) = (grid.x1.step(), grid.x2.step());
        let (k1, k2) = (wavenumbers(n1, h1), wavenumbers(n2, h2));
        let (m, mm) = (pair.particle_mass, pair.reflector_mass);
        let hbar = c.hbar;
        let edge = hbar * (PI / h1).powi(2) / (2.0 * m) + hbar * (PI / h2).powi(2) / (2.0 * mm);
        if edge * dt.abs() >= PI {
            return Err(Error::Grid(format!(
                "kinetic phase per step at the band edge is {:.3} rad, must stay below pi; reduce dt",
                edge * dt.abs()
            )));
        }
        let norm = 1.0 / (n1 * n2) as f64;
        let kinetic = Array2::from_shape_fn((n2, n1), |(i, j)| {
            let w = hbar * k1[j] * k1[j] / (2.0 * m) + hbar * k2[i] * k2[i] / (2.0 * mm);
            Complex64::from_polar(norm, -w * dt)
        });
        let tol = 1e-9 * h1.min(h2);
        let half_potential = Array2::from_shape_fn((n2, n1), |(i, j)| {
            let v = potential.value(grid.x1.at(j) - grid.x2.at(i), tol);
            Complex64::from_polar(1.0, -0.5 * v * dt / hbar)
        });
        let mut planner = FftPlanner::new();
        let plans = Plans {
            f1: planner.plan_fft_forward(n1),
            b1: planner.plan_fft_inverse(n1),
            f2: planner.plan_fft_forward(n2),
            b2: planner.plan_fft_inverse(n2),
        };
        Ok(SplitStep {
            grid,
            pair,
            dt,
            potential,
            hbar,
            kinetic,
            half_potential,
            plans,
        })
    }

    fn rows(psi: &mut Array2<Complex64>, fft: &Arc<dyn Fft<f64>>) {
        psi.axis_iter_mut(NdAxis(0)).into_par_iter().for_each(|mut row| {
            let mut buf = row.to_vec();
            fft.process(&mut buf);
            row.iter_mut().zip(buf).for_each(|(a, b)| *a = b);
        });
    }

    fn columns(psi: &mut Array2<Complex64>, fft: &Arc<dyn Fft<f64>>) {
        let mut t = psi.t().as_standard_layout().into_owned();
        Self::rows(&mut t, fft);
        psi.assign(&t.t());
    }

    fn forward(&self, psi: &mut Array2<Complex64>) {
        Self::rows(psi, &self.plans.f1);
        Self::columns(psi, &self.plans.f2);
    }

    fn inverse(&self, psi: &mut Array2<Complex64>) {
        Self::columns(psi, &self.plans.b2);
        Self::rows(psi, &self.plans.b1);
    }

    fn check_shape(&self, psi: &Array2<Complex64>) -> Result<()> {
        if psi.dim() != (self.grid.x2.n, self.grid.x1.n) {
            return Err(Error::Grid(format!(
                "state has shape {:?}, grid needs ({}, {})",
                psi.dim(),
                self.grid.x2.n,
                self.grid.x1.n
            )));
        }
        Ok(())
    }

    /// Advance `steps` steps in place.
    pub fn advance(&self, psi: &mut Array2<Complex64>, steps: usize) -> Result<()> {
        self.check_shape(psi)?;
        for _ in 0..steps {
            psi.zip_mut_with(&self.half_potential, |a, b| *a *= b);
            self.forward(psi);
            psi.zip_mut_with(&self.kinetic, |a, b| *a *= b);
            self.inverse(psi);
            psi.zip_mut_with(&self.half_potential, |a, b| *a *= b);
        }
        Ok(())
    }

    /// Propagate a copy over `steps` steps, checking the spectrum for
    /// band-edge content before and after.
    pub fn propagate(&self, initial: &Array2<Complex64>, steps: usize) -> Result<Array2<Complex64>> {
        self.check_aliasing(initial)?;
        let mut psi = initial.clone();
        self.advance(&mut psi, steps)?;
        self.check_aliasing(&psi)?;
        Ok(psi)
    }

    /// Error if more than `BAND_EDGE_LIMIT` of the probability sits in the
    /// outer `BAND_EDGE_FRACTION` of either spectral axis.
    pub fn check_aliasing(&self, psi: &Array2<Complex64>) -> Result<()> {
        self.check_shape(psi)?;
        let mut spec = psi.clone();
        self.forward(&mut spec);
        let (n1, n2) = (self.grid.x1.n, self.grid.x2.n);
        let edge = |i: usize, n: usize| {
            let j = if i <= n / 2 { i } else { n - i };
            j as f64 >= (1.0 - BAND_EDGE_FRACTION) * (n / 2) as f64
        };
        let (mut total, mut outer) = (0.0, 0.0);
        for ((i, j), v) in spec.indexed_iter() {
            let p = v.norm_sqr();
            total += p;
            if edge(j, n1) || edge(i, n2) {
                outer += p;
            }
        }
        let fraction = if total > 0.0 { outer / total } else { 0.0 };
        if fraction > BAND_EDGE_LIMIT {
            return Err(Error::Aliasing(format!(
                "{fraction:.3e} of the probability lies at the spectral band edge (limit {BAND_EDGE_LIMIT:e}); refine the grid"
            )));
        }
        Ok(())
    }

    pub fn norm(&self, psi: &Array2<Complex64>) -> f64 {
        psi.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.x1.step() * self.grid.x2.step()
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }
}

/// ||a - b|| / ||b||.
pub fn relative_l2(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    let num: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Axis;
    use crate::packet::GaussianPacket;
    use crate::quadrature::VelocitySpread;

    fn product(p1: &GaussianPacket, p2: &GaussianPacket, grid: &Grid, t: f64) -> Array2<Complex64> {
        Array2::from_shape_fn((grid.x2.n, grid.x1.n), |(i, j)| p1.amplitude(grid.x1.at(j), t) * p2.amplitude(grid.x2.at(i), t))
    }

    #[test]
    fn free_packet_matches_exact_solution() {
        let c = Constants::NATURAL;
        let pair = Pair::new(1.0, 3.0).unwrap();
        let grid = Grid::new(Axis::with_step(-40.0, 0.25, 256).unwrap(), Axis::with_step(-24.0, 0.1875, 256).unwrap());
        let p1 = GaussianPacket::new(1.0, VelocitySpread::new(1.0, 0.3), -10.0, c);
        let p2 = GaussianPacket::new(3.0, VelocitySpread::new(-0.5, 0.2), 0.0, c);
        let prop = SplitStep::new(pair, grid, 0.02, OraclePotential::None, c).unwrap();
        let start = product(&p1, &p2, &grid, -2.0);
        let end = prop.propagate(&start, 200).unwrap();
        let exact = product(&p1, &p2, &grid, 2.0);
        assert!(relative_l2(&end, &exact) < 1e-8, "{}", relative_l2(&end, &exact));
        assert!((prop.norm(&end) / prop.norm(&start) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_coarse_time_step() {
        let pair = Pair::new(1.0, 1.0).unwrap();
        let grid = Grid::new(Axis::new(0.0, 1.0, 64).unwrap(), Axis::new(0.0, 1.0, 64).unwrap());
        assert!(SplitStep::new(pair, grid, 1.0, OraclePotential::None, Constants::NATURAL).is_err());
    }

    #[test]
    fn flags_band_edge_content() {
        let pair = Pair::new(1.0, 1.0).unwrap();
        let grid = Grid::new(Axis::new(0.0, 6.3, 64).unwrap(), Axis::new(0.0, 6.3, 64).unwrap());
        let prop = SplitStep::new(pair, grid, 1e-4, OraclePotential::None, Constants::NATURAL).unwrap();
        let noisy = Array2::from_shape_fn((64, 64), |(i, j)| Complex64::new(if (i + j) % 2 == 0 { 1.0 } else { -1.0 }, 0.0));
        assert!(matches!(prop.check_aliasing(&noisy), Err(Error::Aliasing(_))));
    }
}
