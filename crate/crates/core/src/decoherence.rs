//! Closed-form estimates: when thermal motion of the reflector washes out
//! particle-only fringes, what a which-path probe would need, and how fast
//! environmental decoherence acts.

use crate::kinematics::Pair;
use crate::{Constants, Error, Result};
use serde::Serialize;

/// h / sqrt(2 M k_B T).
pub fn thermal_wavelength(mass: f64, temperature: f64, c: Constants) -> f64 {
    c.h() / (2.0 * mass * c.k_b * temperature).sqrt()
}

/// Particle coherence length above which the reflector's thermal spread
/// removes particle-only fringes: h sqrt(M) / (2 m sqrt(2 k_B T)).
pub fn particle_fringe_loss_length(pair: Pair, temperature: f64, c: Constants) -> f64 {
    c.h() * pair.reflector_mass.sqrt() / (2.0 * pair.particle_mass * (2.0 * c.k_b * temperature).sqrt())
}

/// Slab temperature above which particle-only slab fringes vanish,
/// h^2 M / (8 D^2 k_B m^2).
pub fn slab_no_interference_temperature(pair: Pair, thickness: f64, c: Constants) -> f64 {
    crate::slab::overlap_temperature_bound(pair, thickness, c)
}

/// Slab mass at or below which particle-only fringes vanish at temperature
/// `temperature`: 8 D^2 k_B m^2 T / h^2.
pub fn slab_no_interference_mass(particle_mass: f64, thickness: f64, temperature: f64, c: Constants) -> f64 {
    let h = c.h();
    8.0 * thickness * thickness * c.k_b * particle_mass * particle_mass * temperature / (h * h)
}

/// Which-path probe requirement: the reflector positions to tell apart and
/// the probe velocity whose wavelength resolves them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProbeEstimate {
    pub separation: f64,
    pub velocity: f64,
}

/// Probe velocity h / (2 m* dx) needed to resolve a separation dx.
pub fn probe_velocity(separation: f64, probe_mass: f64, c: Constants) -> f64 {
    c.h() / (2.0 * probe_mass * separation)
}

/// Mirror case: dx = 2 l_c m / M.
pub fn probe_mirror(pair: Pair, probe_mass: f64, particle_coherence: f64, c: Constants) -> ProbeEstimate {
    let dx = 2.0 * particle_coherence * pair.particle_mass / pair.reflector_mass;
    ProbeEstimate {
        separation: dx,
        velocity: probe_velocity(dx, probe_mass, c),
    }
}

/// Slab case: dx = 2 m D / M.
pub fn probe_slab(pair: Pair, probe_mass: f64, thickness: f64, c: Constants) -> ProbeEstimate {
    let dx = crate::slab::recoil_offset(pair, thickness);
    ProbeEstimate {
        separation: dx,
        velocity: probe_velocity(dx, probe_mass, c),
    }
}

/// Decoherence time over relaxation time, (lambda_T / dx)^2.
pub fn zurek_ratio(thermal_wavelength: f64, separation: f64) -> f64 {
    (thermal_wavelength / separation).powi(2)
}

/// Slab form of the ratio, M h^2 / (8 k_B T D^2 m^2).
pub fn slab_zurek_ratio(pair: Pair, thickness: f64, temperature: f64, c: Constants) -> f64 {
    let h = c.h();
    pair.reflector_mass * h * h / (8.0 * c.k_b * temperature * (thickness * pair.particle_mass).powi(2))
}

/// Mirror form of the ratio, M h^2 / (8 k_B T (l_c m)^2).
pub fn mirror_zurek_ratio(pair: Pair, particle_coherence: f64, temperature: f64, c: Constants) -> f64 {
    let h = c.h();
    pair.reflector_mass * h * h / (8.0 * c.k_b * temperature * (particle_coherence * pair.particle_mass).powi(2))
}

/// Momentum kick from one reflection over the reflector's thermal momentum
/// spread, m v / sqrt(M k_B T).
pub fn reflection_vs_thermal_ratio(particle_mass: f64, velocity: f64, reflector_mass: f64, temperature: f64, c: Constants) -> f64 {
    particle_mass * velocity / (reflector_mass * c.k_b * temperature).sqrt()
}

/// Everything the estimators need for one system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecoherenceInput {
    pub particle_mass: f64,
    pub reflector_mass: f64,
    pub probe_mass: f64,
    pub thickness: f64,
    pub particle_coherence: f64,
    pub temperature: f64,
    pub velocity: f64,
    /// Thermal relaxation time. Never estimated.
    pub relaxation_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub name: &'static str,
    pub value: f64,
    pub unit: &'static str,
}

impl DecoherenceInput {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("particle mass", self.particle_mass),
            ("reflector mass", self.reflector_mass),
            ("probe mass", self.probe_mass),
            ("thickness", self.thickness),
            ("particle coherence length", self.particle_coherence),
            ("temperature", self.temperature),
            ("velocity", self.velocity),
            ("relaxation time", self.relaxation_time),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(name, format!("must be finite and positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn estimates(&self, c: Constants) -> Result<Vec<Estimate>> {
        self.validate()?;
        let pair = Pair::new(self.particle_mass, self.reflector_mass)?;
        let lt = thermal_wavelength(self.reflector_mass, self.temperature, c);
        let mirror = probe_mirror(pair, self.probe_mass, self.particle_coherence, c);
        let slab = probe_slab(pair, self.probe_mass, self.thickness, c);
        let slab_ratio = zurek_ratio(lt, slab.separation);
        let mirror_ratio = zurek_ratio(lt, mirror.separation);
        let e = |name, value, unit| Estimate { name, value, unit };
        Ok(vec![
            e("thermal_wavelength", lt, "m"),
            e("particle_fringe_loss_length", particle_fringe_loss_length(pair, self.temperature, c), "m"),
            e("slab_no_interference_temperature", slab_no_interference_temperature(pair, self.thickness, c), "K"),
            e(
                "slab_no_interference_mass",
                slab_no_interference_mass(self.particle_mass, self.thickness, self.temperature, c),
                "kg",
            ),
            e("mirror_probe_separation", mirror.separation, "m"),
            e("mirror_probe_velocity", mirror.velocity, "m/s"),
            e("slab_probe_separation", slab.separation, "m"),
            e("slab_probe_velocity", slab.velocity, "m/s"),
            e("slab_decoherence_ratio", slab_ratio, "1"),
            e("slab_decoherence_time", slab_ratio * self.relaxation_time, "s"),
            e("mirror_decoherence_ratio", mirror_ratio, "1"),
            e("mirror_decoherence_time", mirror_ratio * self.relaxation_time, "s"),
            e(
                "reflection_vs_thermal_ratio",
                reflection_vs_thermal_ratio(self.particle_mass, self.velocity, self.reflector_mass, self.temperature, c),
                "1",
            ),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slab_ratio_matches_general_form() {
        let c = Constants::SI;
        let pair = Pair::new(1.675e-27, 1e-8).unwrap();
        let (d, t) = (1e-8, 300.0);
        let general = zurek_ratio(thermal_wavelength(pair.reflector_mass, t, c), crate::slab::recoil_offset(pair, d));
        assert!((general / slab_zurek_ratio(pair, d, t, c) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn threshold_mass_inverts_temperature_bound() {
        let c = Constants::SI;
        let (m, d, t) = (1.675e-27, 1e-8, 100.0);
        let mm = slab_no_interference_mass(m, d, t, c);
        let back = slab_no_interference_temperature(Pair::new(m, mm).unwrap(), d, c);
        assert!((back / t - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_missing_relaxation_time() {
        let input = DecoherenceInput {
            particle_mass: 1.0,
            reflector_mass: 1.0,
            probe_mass: 1.0,
            thickness: 1.0,
            particle_coherence: 1.0,
            temperature: 1.0,
            velocity: 1.0,
            relaxation_time: 0.0,
        };
        assert!(input.estimates(Constants::NATURAL).is_err());
    }
}
