//! Free Gaussian wavepackets in closed form.
//!
//! A packet is the continuum limit of the velocity sums used elsewhere:
//! the integral over v of the spectral density times exp(i(kx - wt)).

use crate::quadrature::VelocitySpread;
use crate::Constants;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug)]
pub struct GaussianPacket {
    pub mass: f64,
    pub spread: VelocitySpread,
    /// Centre position at t = 0.
    pub position: f64,
    pub hbar: f64,
}

impl GaussianPacket {
    pub fn new(mass: f64, spread: VelocitySpread, position: f64, c: Constants) -> Self {
        GaussianPacket {
            mass,
            spread,
            position,
            hbar: c.hbar,
        }
    }

    /// Integral over v of density(v) * exp(i m v (x - x0) / hbar - i m v^2 t / (2 hbar)).
    pub fn amplitude(&self, x: f64, t: f64) -> Complex64 {
        let (v0, s) = (self.spread.centre, self.spread.width);
        let a = self.mass * (x - self.position) / self.hbar;
        let b = self.mass * t / (2.0 * self.hbar);
        // Expand about v0 so that the large carrier phase is kept apart from
        // the slowly varying envelope.
        let carrier = a * v0 - b * v0 * v0;
        let lin = a - 2.0 * b * v0;
        let quad = Complex64::new(0.5 / (s * s), b);
        let env = (-(lin * lin) / (4.0 * quad)).exp() * (PI / quad).sqrt();
        env * Complex64::from_polar(1.0 / s.sqrt(), carrier)
    }

    /// Centre position at time `t`.
    pub fn centre(&self, t: f64) -> f64 {
        self.position + self.spread.centre * t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_riemann_sum() {
        let p = GaussianPacket::new(1.0, VelocitySpread::new(1.0, 0.1), -2.0, Constants::NATURAL);
        let n = 4001;
        let (lo, hi) = (0.0, 2.0);
        let dv = (hi - lo) / (n - 1) as f64;
        for &(x, t) in &[(-2.0, 0.0), (3.0, 4.0), (10.0, 12.0)] {
            let mut sum = Complex64::new(0.0, 0.0);
            for i in 0..n {
                let v = lo + dv * i as f64;
                let ph = v * (x + 2.0) - 0.5 * v * v * t;
                sum += Complex64::from_polar(p.spread.density(v) * dv, ph);
            }
            let z = p.amplitude(x, t);
            assert!((z - sum).norm() < 1e-10 * z.norm().max(1.0), "{x} {t}: {z} vs {sum}");
        }
    }
}
