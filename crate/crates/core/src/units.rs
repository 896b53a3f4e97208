//! Physical constants and unit systems.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Planck constant, exact in SI since 2019.
pub const PLANCK_SI: f64 = 6.626_070_15e-34;
/// Boltzmann constant, exact in SI since 2019.
pub const BOLTZMANN_SI: f64 = 1.380_649e-23;
/// Neutron mass as used throughout the worked examples (kg).
pub const NEUTRON_MASS: f64 = 1.675e-27;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    Si,
    Dimensionless,
}

/// The constants a calculation needs. Pick one per run and keep it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub hbar: f64,
    pub k_b: f64,
}

impl Constants {
    pub const SI: Constants = Constants {
        hbar: PLANCK_SI / (2.0 * PI),
        k_b: BOLTZMANN_SI,
    };

    /// hbar = 1, k_B = 1. Masses and lengths are then in whatever units the
    /// caller picked.
    pub const NATURAL: Constants = Constants { hbar: 1.0, k_b: 1.0 };

    pub fn of(system: UnitSystem) -> Constants {
        match system {
            UnitSystem::Si => Constants::SI,
            UnitSystem::Dimensionless => Constants::NATURAL,
        }
    }

    pub fn h(&self) -> f64 {
        2.0 * PI * self.hbar
    }
}

/// Conversion between SI and a dimensionless system with hbar = 1, k_B = 1
/// and chosen reference mass and length.
#[derive(Clone, Copy, Debug)]
pub struct Scales {
    pub mass: f64,
    pub length: f64,
}

impl Scales {
    pub fn new(mass: f64, length: f64) -> Self {
        Scales { mass, length }
    }

    pub fn time(&self) -> f64 {
        self.mass * self.length * self.length / Constants::SI.hbar
    }

    pub fn velocity(&self) -> f64 {
        self.length / self.time()
    }

    pub fn energy(&self) -> f64 {
        Constants::SI.hbar * Constants::SI.hbar / (self.mass * self.length * self.length)
    }

    pub fn temperature(&self) -> f64 {
        self.energy() / BOLTZMANN_SI
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn si_hbar_is_reduced_planck() {
        assert!((Constants::SI.hbar - 1.054_571_817e-34).abs() < 1e-43);
        assert_eq!(Constants::SI.h(), PLANCK_SI);
    }

    #[test]
    fn natural_scales_are_consistent() {
        let s = Scales::new(NEUTRON_MASS, 1e-9);
        let e = 0.5 * NEUTRON_MASS * s.velocity() * s.velocity();
        assert!((e / s.energy() - 0.5).abs() < 1e-12);
    }
}
