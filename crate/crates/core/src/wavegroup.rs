//! Wavegroups: weighted sums of eigenstates over a velocity spectrum.
//!
//! Grid evaluation factorises each branch into an x1 table times an x2
//! table, so a snapshot is one complex matrix product per branch and
//! region. Single points are summed directly.

use crate::eigen::{Eigenstate, Surface};
use crate::grid::Grid;
use crate::image::{ImageModel, ImageWavegroup};
use crate::kinematics::{Pair, Partition};
use crate::packet::GaussianPacket;
use crate::quadrature::{Spectrum, VelocitySpread};
use crate::snapshot::Snapshot;
use crate::sum::pairwise;
use crate::{Constants, Error, Result};
use ndarray::linalg::general_mat_mul;
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
/// Largest exponent allowed in a factorised evanescent table.
const MAX_GROWTH: f64 = 600.0;

/// Something that can be evaluated as a two-body amplitude.
pub trait Field: Sync {
    fn pair(&self) -> Pair;

    fn amplitude(&self, x1: f64, x2: f64, t: f64) -> Complex64;

    /// x_rel values where the amplitude has kinks.
    fn seams(&self) -> Vec<f64>;

    /// Amplitude on a grid, shape (nx2, nx1).
    fn amplitude_grid(&self, grid: &Grid, t: f64) -> Array2<Complex64> {
        let (x1, x2) = (grid.x1.coords(), grid.x2.coords());
        Array2::from_shape_fn((x2.len(), x1.len()), |(i, j)| self.amplitude(x1[j], x2[i], t))
    }

    fn snapshot(&self, grid: &Grid, t: f64) -> Snapshot {
        Snapshot::from_amplitude(t, *grid, &self.amplitude_grid(grid, t))
    }
}

/// Centroid positions of the incident group at t = 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub particle: f64,
    pub reflector: f64,
}

/// Discrete superposition of eigenstates.
#[derive(Clone, Debug)]
pub struct Wavegroup {
    pair: Pair,
    weights: Vec<Complex64>,
    states: Vec<Eigenstate>,
}

impl Wavegroup {
    pub fn from_states(pair: Pair, members: Vec<(Complex64, Eigenstate)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::param("wavegroup", "no members"));
        }
        let (weights, states) = members.into_iter().unzip();
        Ok(Wavegroup { pair, weights, states })
    }

    /// One eigenstate per spectrum sample, built by `make`.
    pub fn build(
        pair: Pair,
        spectrum: &Spectrum,
        placement: Placement,
        c: Constants,
        make: impl Fn(f64, f64) -> Result<Eigenstate>,
    ) -> Result<Self> {
        let mut members = Vec::with_capacity(spectrum.samples.len());
        for s in &spectrum.samples {
            let k = pair.particle_mass * s.v / c.hbar;
            let kk = pair.reflector_mass * s.vv / c.hbar;
            let phase = s.phase - k * placement.particle - kk * placement.reflector;
            members.push((Complex64::from_polar(s.weight, phase), make(s.v, s.vv)?));
        }
        Self::from_states(pair, members)
    }

    pub fn mirror(pair: Pair, spectrum: &Spectrum, placement: Placement, c: Constants) -> Result<Self> {
        Self::build(pair, spectrum, placement, c, |v, vv| Eigenstate::mirror(pair, v, vv, c))
    }

    pub fn barrier(pair: Pair, spectrum: &Spectrum, placement: Placement, potential: f64, half_width: f64, c: Constants) -> Result<Self> {
        Self::build(pair, spectrum, placement, c, |v, vv| {
            Eigenstate::barrier(pair, v, vv, potential, half_width, c)
        })
    }

    pub fn image(pair: Pair, spectrum: &Spectrum, placement: Placement, model: &ImageModel, c: Constants) -> Result<Self> {
        Self::build(pair, spectrum, placement, c, |v, vv| {
            if v <= vv {
                return Err(Error::NoCollision {
                    particle: v,
                    reflector: vv,
                });
            }
            Ok(model.eigenstate(pair, &Partition::new(pair, v, vv, c), c))
        })
    }

    /// Infinite-well modes around `n0`, weighted by exp(-((n - n0) pi f)^2)
    /// where `f` is the relative-position spread as a fraction of the half
    /// width. Modes further than 4 / (pi f) from `n0` are dropped.
    pub fn infinite_well(pair: Pair, well: &WellSpectrum, c: Constants) -> Result<Self> {
        if !(well.spread_fraction > 0.0 && well.spread_fraction.is_finite()) {
            return Err(Error::param("spread_fraction", "must be positive"));
        }
        let reach = (4.0 / (PI * well.spread_fraction)).floor() as i64;
        let lo = (well.n0 as i64 - reach).max(1);
        let hi = well.n0 as i64 + reach;
        let (nodes, step) = crate::quadrature::axis_nodes(well.reflector, well.reflector_nodes, well.span)?;
        let mut members = Vec::new();
        for n in lo..=hi {
            let wn = (-((n - well.n0 as i64) as f64 * PI * well.spread_fraction).powi(2)).exp();
            for &vv in &nodes {
                let wv = well.reflector.density(vv) * step;
                let state = Eigenstate::infinite_well(pair, n as u32, vv, well.half_width, c)?;
                let v = crate::eigen::well_particle_velocity(pair, n as u32, vv, well.half_width, c);
                let phase = -(pair.particle_mass * v * well.placement.particle + pair.reflector_mass * vv * well.placement.reflector) / c.hbar;
                members.push((Complex64::from_polar(wn * wv, phase), state));
            }
        }
        Self::from_states(pair, members)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Eigenstate] {
        &self.states
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// Amplitude and gradient, summed pairwise over members.
    pub fn amplitude_and_gradient(&self, x1: f64, x2: f64, t: f64) -> [Complex64; 3] {
        let mut terms: [Vec<Complex64>; 3] = Default::default();
        for t_ in terms.iter_mut() {
            t_.reserve(self.states.len());
        }
        for (w, s) in self.weights.iter().zip(&self.states) {
            let g = s.psi_and_gradient(x1, x2, t);
            for k in 0..3 {
                terms[k].push(w * g[k]);
            }
        }
        [pairwise(&terms[0]), pairwise(&terms[1]), pairwise(&terms[2])]
    }

    /// Region layout shared by every member, if there is one.
    fn shared_layout(&self) -> Option<Vec<(f64, Vec<f64>)>> {
        let first = &self.states[0];
        let layout: Vec<(f64, Vec<f64>)> = first
            .regions
            .iter()
            .map(|r| (r.upper, r.branches.iter().map(|b| b.origin).collect()))
            .collect();
        for s in &self.states[1..] {
            if s.regions.len() != layout.len() {
                return None;
            }
            for (r, (upper, origins)) in s.regions.iter().zip(&layout) {
                if r.upper != *upper || r.branches.len() != origins.len() {
                    return None;
                }
                if r.branches.iter().zip(origins).any(|(b, o)| b.origin != *o) {
                    return None;
                }
            }
        }
        Some(layout)
    }

    /// Factorised evaluation of one branch over the whole grid, added to `acc`.
    fn add_branch(&self, grid: &Grid, t: f64, region: usize, branch: usize, origin: f64, acc: &mut Array2<Complex64>) {
        let (x1, x2) = (grid.x1.coords(), grid.x2.coords());
        let c2 = grid.x2.centre();
        let c1 = c2 + origin;
        let mt = self.pair.total();
        let ns = self.states.len();
        let mut left = Array2::<Complex64>::zeros((x2.len(), ns));
        let mut right = Array2::<Complex64>::zeros((ns, x1.len()));
        for (n, (w, s)) in self.weights.iter().zip(&self.states).enumerate() {
            let b = &s.regions[region].branches[branch];
            let (p1, p2) = self.pair.lab_wavenumbers(s.cm_wavenumber, b.wavenumber);
            let fixed = s.cm_wavenumber * (c2 + self.pair.particle_mass * origin / mt) - s.energy * t / s.hbar;
            let lead = w * b.coeff * Complex64::from_polar(1.0, fixed);
            for (i, &y) in x2.iter().enumerate() {
                left[[i, n]] = (I * p2 * (y - c2)).exp();
            }
            for (j, &x) in x1.iter().enumerate() {
                right[[n, j]] = lead * (I * p1 * (x - c1)).exp();
            }
        }
        general_mat_mul(Complex64::new(1.0, 0.0), &left, &right, Complex64::new(1.0, 0.0), acc);
    }

    fn branch_growth(&self, grid: &Grid, region: usize, branch: usize, origin: f64) -> f64 {
        let c2 = grid.x2.centre();
        let c1 = c2 + origin;
        let reach = (grid.x1.min - c1).abs().max((grid.x1.max - c1).abs()) + 0.5 * (grid.x2.max - grid.x2.min);
        self.states
            .iter()
            .map(|s| s.regions[region].branches[branch].wavenumber.im.abs())
            .fold(0.0, f64::max)
            * reach
    }
}

/// Spectrum of an infinite-well wavegroup.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WellSpectrum {
    pub n0: u32,
    pub spread_fraction: f64,
    pub half_width: f64,
    pub reflector: VelocitySpread,
    pub reflector_nodes: usize,
    pub span: f64,
    pub placement: Placement,
}

impl Field for Wavegroup {
    fn pair(&self) -> Pair {
        self.pair
    }

    fn amplitude(&self, x1: f64, x2: f64, t: f64) -> Complex64 {
        let terms: Vec<Complex64> = self
            .weights
            .iter()
            .zip(&self.states)
            .map(|(w, s)| w * s.psi(x1, x2, t))
            .collect();
        pairwise(&terms)
    }

    fn seams(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.states.iter().flat_map(|s| s.seams()).collect();
        s.sort_by(f64::total_cmp);
        s.dedup();
        s
    }

    fn amplitude_grid(&self, grid: &Grid, t: f64) -> Array2<Complex64> {
        let (x1, x2) = (grid.x1.coords(), grid.x2.coords());
        let mut out = Array2::<Complex64>::zeros((x2.len(), x1.len()));
        let Some(layout) = self.shared_layout() else {
            return Array2::from_shape_fn((x2.len(), x1.len()), |(i, j)| self.amplitude(x1[j], x2[i], t));
        };
        let mut lower = f64::NEG_INFINITY;
        for (r, (upper, origins)) in layout.iter().enumerate() {
            let inside = |i: usize, j: usize| {
                let xr = x1[j] - x2[i];
                xr > lower && xr <= *upper
            };
            let any = (0..x2.len()).any(|i| (0..x1.len()).any(|j| inside(i, j)));
            if any && !origins.is_empty() {
                let safe = (0..origins.len()).all(|b| self.branch_growth(grid, r, b, origins[b]) < MAX_GROWTH);
                if safe {
                    let mut acc = Array2::<Complex64>::zeros((x2.len(), x1.len()));
                    for (b, &o) in origins.iter().enumerate() {
                        self.add_branch(grid, t, r, b, o, &mut acc);
                    }
                    for i in 0..x2.len() {
                        for j in 0..x1.len() {
                            if inside(i, j) {
                                out[[i, j]] = acc[[i, j]];
                            }
                        }
                    }
                } else {
                    for i in 0..x2.len() {
                        for j in 0..x1.len() {
                            if inside(i, j) {
                                out[[i, j]] = self.amplitude(x1[j], x2[i], t);
                            }
                        }
                    }
                }
            }
            lower = *upper;
        }
        out
    }
}

impl Field for ImageWavegroup {
    fn pair(&self) -> Pair {
        self.pair
    }

    fn amplitude(&self, x1: f64, x2: f64, t: f64) -> Complex64 {
        ImageWavegroup::amplitude(self, x1, x2, t)
    }

    fn seams(&self) -> Vec<f64> {
        self.model.seams()
    }
}

/// Closed-form group for a potential built from mirror images.
pub fn image_group(
    pair: Pair,
    model: ImageModel,
    particle: VelocitySpread,
    reflector: VelocitySpread,
    placement: Placement,
    c: Constants,
) -> ImageWavegroup {
    ImageWavegroup {
        pair,
        model,
        particle: GaussianPacket::new(pair.particle_mass, particle, placement.particle, c),
        reflector: GaussianPacket::new(pair.reflector_mass, reflector, placement.reflector, c),
    }
}

/// Two weakly reflecting faces of a slab of thickness `thickness`, centred
/// on x_rel = 0.
pub fn slab_surfaces(thickness: f64, amplitude: f64, opposite_signs: bool) -> [Surface; 2] {
    let back = if opposite_signs { -amplitude } else { amplitude };
    [
        Surface {
            position: -0.5 * thickness,
            amplitude: Complex64::new(amplitude, 0.0),
        },
        Surface {
            position: 0.5 * thickness,
            amplitude: Complex64::new(back, 0.0),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Axis;
    use crate::quadrature::{make_quadrature, QuadratureRule};

    fn max_gap(field: &Wavegroup, grid: &Grid, t: f64) -> (f64, f64) {
        let fast = field.amplitude_grid(grid, t);
        let (x1, x2) = (grid.x1.coords(), grid.x2.coords());
        let mut gap: f64 = 0.0;
        let mut peak: f64 = 0.0;
        for i in 0..x2.len() {
            for j in 0..x1.len() {
                let slow = field.amplitude(x1[j], x2[i], t);
                gap = gap.max((fast[[i, j]] - slow).norm());
                peak = peak.max(slow.norm());
            }
        }
        (gap, peak)
    }

    #[test]
    fn grid_products_match_pointwise_sums() {
        let c = Constants::NATURAL;
        let pair = Pair::new(1.0, 5.0).unwrap();
        let spectrum = make_quadrature(VelocitySpread::new(1.2, 0.1), VelocitySpread::new(0.2, 0.05), &QuadratureRule::square(12)).unwrap();
        let placement = Placement { particle: -3.0, reflector: 1.0 };
        let grid = Grid::new(Axis::new(-20.0, 15.0, 57).unwrap(), Axis::new(-10.0, 12.0, 41).unwrap());
        let groups = [
            Wavegroup::mirror(pair, &spectrum, placement, c).unwrap(),
            Wavegroup::barrier(pair, &spectrum, placement, 1.0, 1.0, c).unwrap(),
            Wavegroup::barrier(pair, &spectrum, placement, -1.0, 2.5, c).unwrap(),
        ];
        for g in &groups {
            for t in [-8.0, 0.0, 5.0] {
                let (gap, peak) = max_gap(g, &grid, t);
                assert!(gap <= 1e-10 * peak, "gap {gap:e} peak {peak:e}");
            }
        }
    }
}
