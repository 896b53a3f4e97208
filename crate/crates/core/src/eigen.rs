//! Two-body energy eigenstates.
//!
//! Every state here has the same shape: a centre-of-mass plane wave times a
//! relative-coordinate function that is piecewise a sum of exponentials.
//! The pieces are separated by fixed values of x_rel (wall, barrier edges,
//! surfaces), so one representation covers all potentials in the crate.

use crate::kinematics::{Pair, Partition};
use crate::{Constants, Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `coeff * exp(i * wavenumber * (x_rel - origin))`.
///
/// The origin keeps evanescent terms bounded inside their region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Branch {
    pub coeff: Complex64,
    pub wavenumber: Complex64,
    pub origin: f64,
}

impl Branch {
    pub fn new(coeff: Complex64, wavenumber: Complex64, origin: f64) -> Self {
        Branch {
            coeff,
            wavenumber,
            origin,
        }
    }

    fn plane(coeff: Complex64, wavenumber: f64) -> Self {
        Branch::new(coeff, Complex64::new(wavenumber, 0.0), 0.0)
    }

    #[inline]
    pub fn value(&self, xr: f64) -> Complex64 {
        self.coeff * (I * self.wavenumber * (xr - self.origin)).exp()
    }
}

/// Branches valid for `x_rel <= upper` (and above the previous region).
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub upper: f64,
    pub branches: Vec<Branch>,
}

#[derive(Clone, Debug)]
pub struct Eigenstate {
    pub pair: Pair,
    pub hbar: f64,
    pub cm_wavenumber: f64,
    pub energy: f64,
    pub regions: Vec<Region>,
}

/// Amplitudes of the finite barrier (or well) of half-width `a`.
///
/// `reflected` and `transmitted` are referred to x_rel = 0. The interior
/// amplitudes are the conventional ones and can overflow for very opaque
/// barriers; the eigenstate itself stores rescaled copies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BarrierCoefficients {
    pub incident: Complex64,
    pub inner: Complex64,
    pub reflected: Complex64,
    pub forward: Complex64,
    pub backward: Complex64,
    pub transmitted: Complex64,
}

impl BarrierCoefficients {
    pub fn reflection(&self) -> f64 {
        self.reflected.norm_sqr()
    }

    pub fn transmission(&self) -> f64 {
        self.transmitted.norm_sqr()
    }
}

/// Barrier amplitudes plus the bounded interior branches.
struct BarrierSolution {
    coeffs: BarrierCoefficients,
    forward: Branch,
    backward: Branch,
}

/// Solve the rectangular barrier with outside wavenumber `k` and inside
/// wavenumber `q` (Im q >= 0).
fn solve_barrier(k: Complex64, q: Complex64, a: f64) -> BarrierSolution {
    // Work with cos and sin of 2qa multiplied by exp(2iqa), which stays
    // bounded when q is imaginary.
    let e2 = (I * q * (2.0 * a)).exp();
    let e4 = e2 * e2;
    let cos_s = (e4 + 1.0) * 0.5;
    let sin_s = (e4 - 1.0) / (2.0 * I);
    let den = 2.0 * k * q * cos_s - I * (k * k + q * q) * sin_s;
    let ek = (I * k * a).exp();
    let lead = 2.0 * k * q / (ek * ek) / den;
    let transmitted = lead * e2;
    let reflected = I * (q * q - k * k) * sin_s / (ek * ek) / den;
    let fwd = lead * ek * (q + k) / (2.0 * q);
    let bwd = lead * ek * e2 * (q - k) / (2.0 * q);
    let ea = (I * q * a).exp();
    BarrierSolution {
        coeffs: BarrierCoefficients {
            incident: k,
            inner: q,
            reflected,
            forward: fwd * ea,
            backward: bwd * ea,
            transmitted,
        },
        forward: Branch::new(fwd, q, -a),
        backward: Branch::new(bwd, -q, a),
    }
}

/// Closed-form amplitudes for a barrier of height `potential` and half-width
/// `half_width`, at relative energy `rel_energy`.
pub fn barrier_coefficients(pair: Pair, rel_energy: f64, potential: f64, half_width: f64, c: Constants) -> BarrierCoefficients {
    let k = pair.rel_wavenumber_for_energy(rel_energy, c);
    let q = pair.rel_wavenumber_for_energy(rel_energy - potential, c);
    solve_barrier(k, q, half_width).coeffs
}

fn check_collision(v: f64, vv: f64) -> Result<()> {
    if !(v.is_finite() && vv.is_finite()) {
        return Err(Error::param("velocity", "must be finite"));
    }
    if v <= vv {
        return Err(Error::NoCollision {
            particle: v,
            reflector: vv,
        });
    }
    Ok(())
}

impl Eigenstate {
    fn from_partition(pair: Pair, p: &Partition, c: Constants, regions: Vec<Region>) -> Self {
        Eigenstate {
            pair,
            hbar: c.hbar,
            cm_wavenumber: p.cm_wavenumber,
            energy: p.total_energy(),
            regions,
        }
    }

    /// Product of two free plane waves, with no potential.
    pub fn free(pair: Pair, v: f64, vv: f64, c: Constants) -> Self {
        let p = Partition::new(pair, v, vv, c);
        let regions = vec![Region {
            upper: f64::INFINITY,
            branches: vec![Branch::plane(Complex64::new(1.0, 0.0), p.rel_wavenumber)],
        }];
        Self::from_partition(pair, &p, c, regions)
    }

    /// Perfect reflection from an impenetrable wall at x_rel = 0.
    ///
    /// The particle comes from the left (x1 < x2), so the state lives on
    /// x_rel <= 0 and vanishes on the other side.
    pub fn mirror(pair: Pair, v: f64, vv: f64, c: Constants) -> Result<Self> {
        check_collision(v, vv)?;
        let p = Partition::new(pair, v, vv, c);
        let one = Complex64::new(1.0, 0.0);
        let regions = vec![
            Region {
                upper: 0.0,
                branches: vec![Branch::plane(one, p.rel_wavenumber), Branch::plane(-one, -p.rel_wavenumber)],
            },
            Region {
                upper: f64::INFINITY,
                branches: vec![],
            },
        ];
        Ok(Self::from_partition(pair, &p, c, regions))
    }

    /// Rectangular barrier (potential > 0) or well (potential < 0) occupying
    /// |x_rel| <= half_width.
    pub fn barrier(pair: Pair, v: f64, vv: f64, potential: f64, half_width: f64, c: Constants) -> Result<Self> {
        check_collision(v, vv)?;
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::param("half_width", "must be positive"));
        }
        if !potential.is_finite() {
            return Err(Error::param("potential", "must be finite"));
        }
        let p = Partition::new(pair, v, vv, c);
        // Both wavenumbers come from the same expression so that a zero
        // potential gives identical values and vanishing reflection.
        let k = pair.rel_wavenumber_for_energy(p.rel_energy, c);
        let q = pair.rel_wavenumber_for_energy(p.rel_energy - potential, c);
        let sol = solve_barrier(k, q, half_width);
        let one = Complex64::new(1.0, 0.0);
        let a = half_width;
        let regions = vec![
            Region {
                upper: -a,
                branches: vec![Branch::new(one, k, 0.0), Branch::new(sol.coeffs.reflected, -k, 0.0)],
            },
            Region {
                upper: a,
                branches: vec![sol.forward, sol.backward],
            },
            Region {
                upper: f64::INFINITY,
                branches: vec![Branch::new(sol.coeffs.transmitted, k, 0.0)],
            },
        ];
        Ok(Self::from_partition(pair, &p, c, regions))
    }

    /// Mode `n` of an impenetrable box |x_rel| < half_width moving with the
    /// reflector at velocity `vv`. The particle velocity follows from `n`.
    pub fn infinite_well(pair: Pair, n: u32, vv: f64, half_width: f64, c: Constants) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n", "mode index starts at 1"));
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::param("half_width", "must be positive"));
        }
        let v = well_particle_velocity(pair, n, vv, half_width, c);
        let p = Partition::new(pair, v, vv, c);
        let q = n as f64 * PI / (2.0 * half_width);
        let half = Complex64::new(0.0, -0.5);
        let regions = vec![
            Region {
                upper: -half_width,
                branches: vec![],
            },
            Region {
                upper: half_width,
                branches: vec![
                    Branch::new(half, Complex64::new(q, 0.0), -half_width),
                    Branch::new(-half, Complex64::new(-q, 0.0), -half_width),
                ],
            },
            Region {
                upper: f64::INFINITY,
                branches: vec![],
            },
        ];
        let mut s = Self::from_partition(pair, &p, c, regions);
        // Use the exact box energy rather than the one rebuilt from v.
        s.energy = p.cm_energy + c.hbar * c.hbar * q * q / (2.0 * pair.reduced());
        Ok(s)
    }

    /// Weakly reflecting surfaces at fixed x_rel, each with its own
    /// reflection amplitude. Single reflections only; the transmitted wave is
    /// not depleted.
    pub fn surfaces(pair: Pair, v: f64, vv: f64, surfaces: &[Surface], c: Constants) -> Result<Self> {
        check_collision(v, vv)?;
        let p = Partition::new(pair, v, vv, c);
        let model = crate::image::ImageModel::surfaces(surfaces)?;
        Ok(model.eigenstate(pair, &p, c))
    }

    pub(crate) fn from_regions(pair: Pair, p: &Partition, c: Constants, regions: Vec<Region>) -> Self {
        Self::from_partition(pair, p, c, regions)
    }

    pub fn region_index(&self, xr: f64) -> usize {
        self.regions.iter().position(|r| xr <= r.upper).unwrap_or(self.regions.len() - 1)
    }

    /// Relative-coordinate factor at `x_rel`.
    pub fn relative(&self, xr: f64) -> Complex64 {
        let r = &self.regions[self.region_index(xr)];
        r.branches.iter().map(|b| b.value(xr)).sum()
    }

    /// Full amplitude at lab coordinates and time.
    pub fn psi(&self, x1: f64, x2: f64, t: f64) -> Complex64 {
        let (xc, xr) = self.pair.to_cm_rel(x1, x2);
        let phase = self.cm_wavenumber * xc - self.energy * t / self.hbar;
        Complex64::from_polar(1.0, phase) * self.relative(xr)
    }

    /// Amplitude and its derivatives along x1 and x2.
    pub fn psi_and_gradient(&self, x1: f64, x2: f64, t: f64) -> [Complex64; 3] {
        let (xc, xr) = self.pair.to_cm_rel(x1, x2);
        let cm = Complex64::from_polar(1.0, self.cm_wavenumber * xc - self.energy * t / self.hbar);
        let r = &self.regions[self.region_index(xr)];
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for b in &r.branches {
            let term = cm * b.value(xr);
            let (p1, p2) = self.pair.lab_wavenumbers(self.cm_wavenumber, b.wavenumber);
            out[0] += term;
            out[1] += I * p1 * term;
            out[2] += I * p2 * term;
        }
        out
    }

    /// |psi|^2. The time factor is a pure phase common to all branches and
    /// is not evaluated.
    pub fn pdf(&self, x1: f64, x2: f64) -> f64 {
        let (_, xr) = self.pair.to_cm_rel(x1, x2);
        self.relative(xr).norm_sqr()
    }

    /// x_rel values where the potential changes.
    pub fn seams(&self) -> Vec<f64> {
        self.regions.iter().map(|r| r.upper).filter(|u| u.is_finite()).collect()
    }
}

/// A reflecting surface at `position` (in x_rel) with amplitude `amplitude`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Surface {
    pub position: f64,
    pub amplitude: Complex64,
}

/// Particle velocity of infinite-well mode `n`.
pub fn well_particle_velocity(pair: Pair, n: u32, vv: f64, half_width: f64, c: Constants) -> f64 {
    vv + n as f64 * PI * c.hbar * pair.total() / (2.0 * half_width * pair.particle_mass * pair.reflector_mass)
}
