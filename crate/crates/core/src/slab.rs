//! A slab with two weakly reflecting faces: the two reflected groups, their
//! interference, and the overlap constraints on slab mass and temperature.

use crate::analysis::relative_band_probability;
use crate::grid::Grid;
use crate::image::{ImageModel, ImageWavegroup};
use crate::kinematics::{Pair, Partition};
use crate::quadrature::VelocitySpread;
use crate::snapshot::Snapshot;
use crate::wavegroup::{image_group, slab_surfaces, Field, Placement};
use crate::{Constants, Error, Result};
use ndarray::Array2;

/// Both interference factors of the reflected pair: the exact one in the
/// relative wavenumber and the light-particle, slow-slab limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlabHarmonic {
    pub exact: f64,
    pub light_limit: f64,
}

/// sin^2 of the phase between reflections from faces `thickness` apart.
pub fn slab_harmonic(pair: Pair, v: f64, vv: f64, thickness: f64, c: Constants) -> Result<SlabHarmonic> {
    if v <= vv {
        return Err(Error::NoCollision {
            particle: v,
            reflector: vv,
        });
    }
    let k = Partition::new(pair, v, vv, c).rel_wavenumber;
    let approx = pair.particle_mass * v * thickness / c.hbar;
    Ok(SlabHarmonic {
        exact: (k * thickness).sin().powi(2),
        light_limit: approx.sin().powi(2),
    })
}

/// Shift of the slab coordinate between the two reflected groups, 2mD/M.
pub fn recoil_offset(pair: Pair, thickness: f64) -> f64 {
    2.0 * pair.particle_mass * thickness / pair.reflector_mass
}

/// Slab temperature below which the recoil offset is smaller than the
/// slab's thermal coherence length: h^2 M / (8 D^2 k_B m^2).
pub fn overlap_temperature_bound(pair: Pair, thickness: f64, c: Constants) -> f64 {
    let h = c.h();
    h * h * pair.reflector_mass / (8.0 * thickness * thickness * c.k_b * pair.particle_mass.powi(2))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlabScenario {
    pub pair: Pair,
    pub particle: VelocitySpread,
    pub slab: VelocitySpread,
    pub thickness: f64,
    /// Reflection amplitude of the front face.
    pub amplitude: f64,
    /// Back face reflects with amplitude -r instead of +r.
    pub opposite_signs: bool,
    pub placement: Placement,
}

/// Slab snapshot with an optional note when the reflected group misses
/// the grid.
#[derive(Clone, Debug)]
pub struct SlabSnapshot {
    pub snapshot: Snapshot,
    pub warning: Option<String>,
}

impl SlabScenario {
    pub fn validate(&self) -> Result<()> {
        if !(self.thickness.is_finite() && self.thickness > 0.0) {
            return Err(Error::param("thickness", "must be positive"));
        }
        if !(self.amplitude.is_finite() && self.amplitude.abs() < 1.0) {
            return Err(Error::param("reflection amplitude", "weak reflection needs |r| < 1"));
        }
        if self.particle.centre <= self.slab.centre {
            return Err(Error::NoCollision {
                particle: self.particle.centre,
                reflector: self.slab.centre,
            });
        }
        Ok(())
    }

    pub fn model(&self) -> Result<ImageModel> {
        ImageModel::surfaces(&slab_surfaces(self.thickness, self.amplitude, self.opposite_signs))
    }

    pub fn group(&self, c: Constants) -> Result<ImageWavegroup> {
        self.validate()?;
        Ok(image_group(self.pair, self.model()?, self.particle, self.slab, self.placement, c))
    }

    /// Time at which the incident centroids reach the front face.
    pub fn contact_time(&self) -> f64 {
        let gap = -0.5 * self.thickness - (self.placement.particle - self.placement.reflector);
        gap / (self.particle.centre - self.slab.centre)
    }

    /// Centroid of the front-face reflected group at time `t`.
    pub fn reflected_centre(&self, t: f64) -> (f64, f64) {
        let tc = self.contact_time();
        let (v1, v2) = self.pair.reflected_velocities(self.particle.centre, self.slab.centre);
        (
            self.placement.particle + self.particle.centre * tc + v1 * (t - tc),
            self.placement.reflector + self.slab.centre * tc + v2 * (t - tc),
        )
    }

    pub fn snapshot(&self, grid: &Grid, t: f64, c: Constants) -> Result<SlabSnapshot> {
        let group = self.group(c)?;
        let (x1, x2) = self.reflected_centre(t);
        let inside = (grid.x1.min..=grid.x1.max).contains(&x1) && (grid.x2.min..=grid.x2.max).contains(&x2);
        if t > self.contact_time() && !inside {
            return Ok(SlabSnapshot {
                snapshot: Snapshot {
                    t,
                    grid: *grid,
                    pdf: Array2::zeros((grid.x2.n, grid.x1.n)),
                },
                warning: Some(format!(
                    "reflected group centred at ({x1:e}, {x2:e}) lies outside the grid; snapshot left empty"
                )),
            });
        }
        Ok(SlabSnapshot {
            snapshot: group.snapshot(grid, t),
            warning: None,
        })
    }

    /// Probability in front of the slab on the grid: after contact this is
    /// the reflected pair.
    pub fn reflected_probability(&self, grid: &Grid, t: f64, c: Constants) -> Result<f64> {
        let snap = self.snapshot(grid, t, c)?;
        Ok(relative_band_probability(&snap.snapshot, f64::NEG_INFINITY, -0.5 * self.thickness))
    }
}
