//! Masses, wavenumbers and the centre-of-mass / relative split.

use crate::{Constants, Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Particle and reflector masses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Pair {
    pub particle_mass: f64,
    pub reflector_mass: f64,
}

impl Pair {
    pub fn new(particle_mass: f64, reflector_mass: f64) -> Result<Self> {
        for (name, value) in [("particle mass", particle_mass), ("reflector mass", reflector_mass)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::param(name, format!("must be finite and positive, got {value}")));
            }
        }
        Ok(Pair {
            particle_mass,
            reflector_mass,
        })
    }

    pub fn total(&self) -> f64 {
        self.particle_mass + self.reflector_mass
    }

    pub fn reduced(&self) -> f64 {
        self.particle_mass * self.reflector_mass / self.total()
    }

    /// (x_cm, x_rel) with x_rel = x1 - x2.
    pub fn to_cm_rel(&self, x1: f64, x2: f64) -> (f64, f64) {
        let xc = (self.particle_mass * x1 + self.reflector_mass * x2) / self.total();
        (xc, x1 - x2)
    }

    pub fn from_cm_rel(&self, xc: f64, xr: f64) -> (f64, f64) {
        let mt = self.total();
        (xc + self.reflector_mass / mt * xr, xc - self.particle_mass / mt * xr)
    }

    /// Reflect the relative coordinate about `centre` keeping x_cm fixed.
    pub fn mirror_point(&self, x1: f64, x2: f64, centre: f64) -> (f64, f64) {
        let (xc, xr) = self.to_cm_rel(x1, x2);
        self.from_cm_rel(xc, 2.0 * centre - xr)
    }

    /// Lab velocities after an elastic collision.
    pub fn reflected_velocities(&self, v: f64, vv: f64) -> (f64, f64) {
        let (m, mm, mt) = (self.particle_mass, self.reflector_mass, self.total());
        (((m - mm) * v + 2.0 * mm * vv) / mt, ((mm - m) * vv + 2.0 * m * v) / mt)
    }

    /// Lab wavenumbers of one branch with relative wavenumber `q`.
    pub fn lab_wavenumbers(&self, cm_wavenumber: f64, q: Complex64) -> (Complex64, Complex64) {
        let mt = self.total();
        (
            cm_wavenumber * self.particle_mass / mt + q,
            cm_wavenumber * self.reflector_mass / mt - q,
        )
    }

    /// Relative wavenumber for relative kinetic energy `e`. Principal root,
    /// so negative energies give a positive imaginary part.
    pub fn rel_wavenumber_for_energy(&self, e: f64, c: Constants) -> Complex64 {
        Complex64::new(2.0 * self.reduced() * e, 0.0).sqrt() / c.hbar
    }
}

/// Wavenumbers and energies of a particle/reflector plane-wave pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Partition {
    pub particle_wavenumber: f64,
    pub reflector_wavenumber: f64,
    pub cm_wavenumber: f64,
    pub rel_wavenumber: f64,
    pub cm_energy: f64,
    pub rel_energy: f64,
}

impl Partition {
    pub fn new(pair: Pair, v: f64, vv: f64, c: Constants) -> Self {
        let k = pair.particle_mass * v / c.hbar;
        let kk = pair.reflector_mass * vv / c.hbar;
        let kc = k + kk;
        let kr = (pair.reflector_mass * k - pair.particle_mass * kk) / pair.total();
        Partition {
            particle_wavenumber: k,
            reflector_wavenumber: kk,
            cm_wavenumber: kc,
            rel_wavenumber: kr,
            cm_energy: c.hbar * c.hbar * kc * kc / (2.0 * pair.total()),
            rel_energy: c.hbar * c.hbar * kr * kr / (2.0 * pair.reduced()),
        }
    }

    pub fn total_energy(&self) -> f64 {
        self.cm_energy + self.rel_energy
    }
}
