//! Velocity spectra: Gaussian weights on a uniform tensor grid.

use crate::{Error, Result};
use rand_core::RngCore;
use rand_pcg::Lcg64Xsh32;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Stream constant of the phase generator. Changing it changes every
/// dephased spectrum, so it is part of the output contract.
pub const PHASE_STREAM: u64 = 0xa02b_dbf7_bb3c_0a7;

/// Gaussian velocity distribution of one body.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VelocitySpread {
    pub centre: f64,
    pub width: f64,
}

impl VelocitySpread {
    pub fn new(centre: f64, width: f64) -> Self {
        VelocitySpread { centre, width }
    }

    /// Amplitude density, normalised so that the integral of its square is
    /// independent of the width.
    pub fn density(&self, v: f64) -> f64 {
        let u = (v - self.centre) / self.width;
        (-0.5 * u * u).exp() / self.width.sqrt()
    }

    fn validate(&self, name: &str) -> Result<()> {
        if !self.centre.is_finite() {
            return Err(Error::param(name, "centre must be finite"));
        }
        if !(self.width.is_finite() && self.width > 0.0) {
            return Err(Error::param(name, format!("width must be positive, got {}", self.width)));
        }
        Ok(())
    }
}

/// Which random phases to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DephaseTarget {
    /// One phase per reflector node, shared across particle nodes.
    Reflector,
    /// One phase per particle node.
    Particle,
    /// Independent phases on both axes, added.
    Both,
    /// An independent phase for every (particle, reflector) node.
    Joint,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dephasing {
    pub target: DephaseTarget,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub particle_nodes: usize,
    pub reflector_nodes: usize,
    /// Half-width of the node range in standard deviations.
    pub span: f64,
    pub dephasing: Option<Dephasing>,
}

impl QuadratureRule {
    pub fn square(nodes: usize) -> Self {
        QuadratureRule {
            particle_nodes: nodes,
            reflector_nodes: nodes,
            span: 4.0,
            dephasing: None,
        }
    }

    pub fn with_dephasing(mut self, target: DephaseTarget, seed: u64) -> Self {
        self.dephasing = Some(Dephasing { target, seed });
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumSample {
    pub v: f64,
    pub vv: f64,
    /// Density times node area.
    pub weight: f64,
    pub phase: f64,
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    pub samples: Vec<SpectrumSample>,
    pub particle_step: f64,
    pub reflector_step: f64,
}

impl Spectrum {
    /// Sum of |w|^2. Converges to the continuum value as nodes are added.
    pub fn weight_norm(&self) -> f64 {
        self.samples.iter().map(|s| s.weight * s.weight).sum()
    }

    /// Distance over which the discrete sum repeats itself along each axis.
    pub fn repeat_lengths(&self, particle_mass: f64, reflector_mass: f64, hbar: f64) -> (f64, f64) {
        (
            2.0 * PI * hbar / (particle_mass * self.particle_step),
            2.0 * PI * hbar / (reflector_mass * self.reflector_step),
        )
    }
}

fn nodes(spread: VelocitySpread, n: usize, span: f64) -> (Vec<f64>, f64) {
    let lo = spread.centre - span * spread.width;
    let step = 2.0 * span * spread.width / (n - 1) as f64;
    ((0..n).map(|i| lo + step * i as f64).collect(), step)
}

/// Nodes and spacing along one axis, `span` standard deviations each side.
pub fn axis_nodes(spread: VelocitySpread, n: usize, span: f64) -> Result<(Vec<f64>, f64)> {
    spread.validate("velocity spread")?;
    if n < 2 {
        return Err(Error::param("nodes", "need at least two nodes per axis"));
    }
    if !(span.is_finite() && span > 0.0) {
        return Err(Error::param("span", "must be positive"));
    }
    Ok(nodes(spread, n, span))
}

/// Uniform phase in [0, 2 pi) from the top 53 bits of a 64-bit draw.
fn draw_phase(rng: &mut Lcg64Xsh32) -> f64 {
    let bits = rng.next_u64() >> 11;
    2.0 * PI * (bits as f64) * (1.0 / (1u64 << 53) as f64)
}

/// Phase tables in draw order: particle axis, reflector axis, then the joint
/// table in particle-major order. Targets that do not need a table leave it
/// at zero but the draws still happen, so a seed means the same thing for
/// every target.
fn phase_tables(rule: &QuadratureRule) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let (np, nr) = (rule.particle_nodes, rule.reflector_nodes);
    let Some(d) = rule.dephasing else {
        return (vec![0.0; np], vec![0.0; nr], vec![0.0; np * nr]);
    };
    let mut rng = Lcg64Xsh32::new(d.seed, PHASE_STREAM);
    let mut pa: Vec<f64> = (0..np).map(|_| draw_phase(&mut rng)).collect();
    let mut ra: Vec<f64> = (0..nr).map(|_| draw_phase(&mut rng)).collect();
    let mut joint = vec![0.0; np * nr];
    match d.target {
        DephaseTarget::Reflector => pa.iter_mut().for_each(|p| *p = 0.0),
        DephaseTarget::Particle => ra.iter_mut().for_each(|p| *p = 0.0),
        DephaseTarget::Both => {}
        DephaseTarget::Joint => {
            joint.iter_mut().for_each(|p| *p = draw_phase(&mut rng));
            pa.iter_mut().for_each(|p| *p = 0.0);
            ra.iter_mut().for_each(|p| *p = 0.0);
        }
    }
    (pa, ra, joint)
}

/// Tensor-product sample set over both velocity spreads.
pub fn make_quadrature(particle: VelocitySpread, reflector: VelocitySpread, rule: &QuadratureRule) -> Result<Spectrum> {
    particle.validate("particle velocity spread")?;
    reflector.validate("reflector velocity spread")?;
    if rule.particle_nodes < 2 || rule.reflector_nodes < 2 {
        return Err(Error::param("nodes", "need at least two nodes per axis"));
    }
    if !(rule.span.is_finite() && rule.span > 0.0) {
        return Err(Error::param("span", "must be positive"));
    }
    let (pv, ps) = nodes(particle, rule.particle_nodes, rule.span);
    let (rv, rs) = nodes(reflector, rule.reflector_nodes, rule.span);
    let (pa, ra, joint) = phase_tables(rule);
    let mut samples = Vec::with_capacity(pv.len() * rv.len());
    for (i, &v) in pv.iter().enumerate() {
        for (j, &vv) in rv.iter().enumerate() {
            let phase = (pa[i] + ra[j] + joint[i * rv.len() + j]).rem_euclid(2.0 * PI);
            samples.push(SpectrumSample {
                v,
                vv,
                weight: particle.density(v) * reflector.density(vv) * ps * rs,
                phase,
            });
        }
    }
    Ok(Spectrum {
        samples,
        particle_step: ps,
        reflector_step: rs,
    })
}
