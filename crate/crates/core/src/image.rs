//! Potentials whose eigenstates are sums of mirror images of the incident
//! plane wave, with amplitudes that do not depend on energy.
//!
//! For these the velocity integral can be done in closed form: every term is
//! the free incident packet evaluated at a reflected point.

use crate::eigen::{Branch, Eigenstate, Region, Surface};
use crate::kinematics::{Pair, Partition};
use crate::packet::GaussianPacket;
use crate::{Constants, Error, Result};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImageTerm {
    pub coeff: Complex64,
    /// `None` for the incident wave, otherwise the x_rel value it is
    /// reflected about.
    pub reflect_about: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImageRegion {
    pub upper: f64,
    pub terms: Vec<ImageTerm>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImageModel {
    pub regions: Vec<ImageRegion>,
}

fn incident() -> ImageTerm {
    ImageTerm {
        coeff: Complex64::new(1.0, 0.0),
        reflect_about: None,
    }
}

impl ImageModel {
    pub fn free() -> Self {
        ImageModel {
            regions: vec![ImageRegion {
                upper: f64::INFINITY,
                terms: vec![incident()],
            }],
        }
    }

    pub fn mirror() -> Self {
        ImageModel {
            regions: vec![
                ImageRegion {
                    upper: 0.0,
                    terms: vec![
                        incident(),
                        ImageTerm {
                            coeff: Complex64::new(-1.0, 0.0),
                            reflect_about: Some(0.0),
                        },
                    ],
                },
                ImageRegion {
                    upper: f64::INFINITY,
                    terms: vec![],
                },
            ],
        }
    }

    /// Single reflections from each surface, transmitted wave undepleted.
    pub fn surfaces(surfaces: &[Surface]) -> Result<Self> {
        if surfaces.is_empty() {
            return Err(Error::param("surfaces", "need at least one surface"));
        }
        let mut s = surfaces.to_vec();
        s.sort_by(|a, b| a.position.total_cmp(&b.position));
        for w in s.windows(2) {
            if w[0].position == w[1].position {
                return Err(Error::param("surfaces", "positions must be distinct"));
            }
        }
        if s.iter().any(|x| !x.position.is_finite() || !x.amplitude.is_finite()) {
            return Err(Error::param("surfaces", "positions and amplitudes must be finite"));
        }
        let mut regions = Vec::with_capacity(s.len() + 1);
        for j in 0..s.len() {
            let mut terms = vec![incident()];
            terms.extend(s[j..].iter().map(|x| ImageTerm {
                coeff: x.amplitude,
                reflect_about: Some(x.position),
            }));
            regions.push(ImageRegion {
                upper: s[j].position,
                terms,
            });
        }
        regions.push(ImageRegion {
            upper: f64::INFINITY,
            terms: vec![incident()],
        });
        Ok(ImageModel { regions })
    }

    /// Plane-wave eigenstate for one velocity pair.
    pub fn eigenstate(&self, pair: Pair, p: &Partition, c: Constants) -> Eigenstate {
        let k = p.rel_wavenumber;
        let regions = self
            .regions
            .iter()
            .map(|r| Region {
                upper: r.upper,
                branches: r
                    .terms
                    .iter()
                    .map(|t| match t.reflect_about {
                        None => Branch::new(t.coeff, Complex64::new(k, 0.0), 0.0),
                        Some(s) => Branch::new(t.coeff, Complex64::new(-k, 0.0), 2.0 * s),
                    })
                    .collect(),
            })
            .collect();
        Eigenstate::from_regions(pair, p, c, regions)
    }

    fn region(&self, xr: f64) -> &ImageRegion {
        self.regions.iter().find(|r| xr <= r.upper).unwrap_or_else(|| self.regions.last().unwrap())
    }

    pub fn seams(&self) -> Vec<f64> {
        self.regions.iter().map(|r| r.upper).filter(|u| u.is_finite()).collect()
    }
}

/// Closed-form wavegroup for an [`ImageModel`] with Gaussian spectra.
#[derive(Clone, Debug)]
pub struct ImageWavegroup {
    pub pair: Pair,
    pub model: ImageModel,
    pub particle: GaussianPacket,
    pub reflector: GaussianPacket,
}

impl ImageWavegroup {
    pub fn incident(&self, x1: f64, x2: f64, t: f64) -> Complex64 {
        self.particle.amplitude(x1, t) * self.reflector.amplitude(x2, t)
    }

    pub fn amplitude(&self, x1: f64, x2: f64, t: f64) -> Complex64 {
        let xr = x1 - x2;
        self.model
            .region(xr)
            .terms
            .iter()
            .map(|term| {
                let (y1, y2) = match term.reflect_about {
                    None => (x1, x2),
                    Some(s) => self.pair.mirror_point(x1, x2, s),
                };
                term.coeff * self.incident(y1, y2, t)
            })
            .sum()
    }
}
