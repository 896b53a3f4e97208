//! Observables read off snapshots: marginals, slices, fringe visibility and
//! spacing, centroids.

use crate::grid::{trapezoid, Grid};
use crate::snapshot::Snapshot;
use crate::wavegroup::Field;
use serde::{Deserialize, Serialize};

/// Extrema smaller than this fraction of the largest value are ignored.
pub const EXTREMUM_FLOOR: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Body {
    Particle,
    Reflector,
}

/// A sampled curve on a uniform coordinate axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub coords: Vec<f64>,
    pub values: Vec<f64>,
}

impl Profile {
    pub fn new(coords: Vec<f64>, values: Vec<f64>) -> Self {
        assert_eq!(coords.len(), values.len(), "profile length mismatch");
        Profile { coords, values }
    }

    pub fn step(&self) -> f64 {
        if self.coords.len() < 2 {
            return 0.0;
        }
        (self.coords[self.coords.len() - 1] - self.coords[0]) / (self.coords.len() - 1) as f64
    }

    pub fn integral(&self) -> f64 {
        trapezoid(&self.values, self.step())
    }

    /// Part of the curve with coordinates in [lo, hi].
    pub fn window(&self, lo: f64, hi: f64) -> Profile {
        let (c, v) = self
            .coords
            .iter()
            .zip(&self.values)
            .filter(|(x, _)| **x >= lo && **x <= hi)
            .map(|(x, y)| (*x, *y))
            .unzip();
        Profile { coords: c, values: v }
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }

    /// Mean and standard deviation, treating the curve as a density.
    pub fn moments(&self) -> Option<(f64, f64)> {
        let n = self.integral();
        if !(n > 0.0) {
            return None;
        }
        let h = self.step();
        let first: Vec<f64> = self.coords.iter().zip(&self.values).map(|(x, p)| x * p).collect();
        let mean = trapezoid(&first, h) / n;
        let second: Vec<f64> = self
            .coords
            .iter()
            .zip(&self.values)
            .map(|(x, p)| (x - mean) * (x - mean) * p)
            .collect();
        Some((mean, (trapezoid(&second, h) / n).max(0.0).sqrt()))
    }
}

/// Density of one body with the other integrated out.
pub fn marginal(snap: &Snapshot, body: Body) -> Profile {
    let g = snap.grid;
    match body {
        Body::Particle => {
            let values = (0..g.x1.n)
                .map(|j| {
                    let col: Vec<f64> = snap.pdf.column(j).to_vec();
                    trapezoid(&col, g.x2.step())
                })
                .collect();
            Profile::new(g.x1.coords(), values)
        }
        Body::Reflector => {
            let values = (0..g.x2.n)
                .map(|i| trapezoid(snap.pdf.row(i).as_slice().expect("contiguous"), g.x1.step()))
                .collect();
            Profile::new(g.x2.coords(), values)
        }
    }
}

/// Density along the `along` coordinate at the grid line nearest to `at` of
/// the other coordinate.
pub fn slice(snap: &Snapshot, along: Body, at: f64) -> Profile {
    let g = snap.grid;
    match along {
        Body::Particle => {
            let i = g.x2.nearest(at);
            Profile::new(g.x1.coords(), snap.pdf.row(i).to_vec())
        }
        Body::Reflector => {
            let j = g.x1.nearest(at);
            Profile::new(g.x2.coords(), snap.pdf.column(j).to_vec())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extremum {
    pub position: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Interior local extrema, located to sub-grid accuracy with a parabola
/// through the three neighbouring samples.
pub fn extrema(p: &Profile) -> Vec<Extremum> {
    let v = &p.values;
    let n = v.len();
    let floor = EXTREMUM_FLOOR * p.peak();
    let h = p.step();
    let mut out: Vec<Extremum> = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        // Step over flat runs so a plateau counts once.
        let mut j = i;
        while j + 1 < n && v[j + 1] == v[i] {
            j += 1;
        }
        if j + 1 >= n {
            break;
        }
        let (left, right) = (v[i - 1], v[j + 1]);
        let kind = if v[i] > left && v[i] > right {
            Some(ExtremumKind::Max)
        } else if v[i] < left && v[i] < right {
            Some(ExtremumKind::Min)
        } else {
            None
        };
        if let Some(kind) = kind {
            let keep = match kind {
                ExtremumKind::Max => v[i] >= floor,
                ExtremumKind::Min => true,
            };
            if keep {
                let (mut pos, mut val) = (0.5 * (p.coords[i] + p.coords[j]), v[i]);
                if i == j {
                    let den = left - 2.0 * v[i] + right;
                    if den != 0.0 {
                        let off = 0.5 * (left - right) / den;
                        pos = p.coords[i] + off * h;
                        val = v[i] - 0.25 * (left - right) * off;
                    }
                }
                out.push(Extremum {
                    position: pos,
                    value: val,
                    kind,
                });
            }
        }
        i = j + 1;
    }
    out
}

/// Fringe visibility of a curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Visibility {
    /// Height-weighted mean of (hi - lo) / (hi + lo) over neighbouring
    /// maximum/minimum pairs. Zero when there are none.
    pub value: f64,
    /// Number of maximum/minimum pairs that contributed.
    pub pairs: usize,
}

impl Visibility {
    pub fn defined(&self) -> bool {
        self.pairs > 0
    }
}

/// Fringe visibility. A pure sin^2 fringe gives 1 and a featureless curve
/// gives 0 with no pairs.
pub fn visibility(p: &Profile) -> Visibility {
    let ex = extrema(p);
    let floor = EXTREMUM_FLOOR * p.peak();
    let (mut num, mut den, mut pairs) = (0.0, 0.0, 0);
    for w in ex.windows(2) {
        if w[0].kind == w[1].kind {
            continue;
        }
        let hi = w[0].value.max(w[1].value).max(0.0);
        let lo = w[0].value.min(w[1].value).max(0.0);
        if hi < floor || hi + lo <= 0.0 {
            continue;
        }
        let weight = hi + lo;
        num += weight * (hi - lo) / (hi + lo);
        den += weight;
        pairs += 1;
    }
    Visibility {
        value: if den > 0.0 { num / den } else { 0.0 },
        pairs,
    }
}

/// Full fringe period: twice the mean distance between neighbouring
/// maximum and minimum.
pub fn fringe_spacing(p: &Profile) -> Option<f64> {
    let ex = extrema(p);
    let floor = EXTREMUM_FLOOR * p.peak();
    let steps: Vec<f64> = ex
        .windows(2)
        .filter(|w| w[0].kind != w[1].kind && w[0].value.max(w[1].value) >= floor)
        .map(|w| (w[1].position - w[0].position).abs())
        .collect();
    if steps.is_empty() {
        return None;
    }
    Some(2.0 * steps.iter().sum::<f64>() / steps.len() as f64)
}

/// Two well separated peaks: returns their positions when the curve has
/// two maxima above `min_fraction` of the peak with a dip between them
/// lower than half the smaller one.
pub fn two_peaks(p: &Profile, min_fraction: f64) -> Option<(f64, f64)> {
    let peak = p.peak();
    let ex = extrema(p);
    let maxima: Vec<&Extremum> = ex
        .iter()
        .filter(|e| e.kind == ExtremumKind::Max && e.value >= min_fraction * peak)
        .collect();
    for (a, b) in maxima.iter().zip(maxima.iter().skip(1)) {
        let dip = p
            .coords
            .iter()
            .zip(&p.values)
            .filter(|(x, _)| **x > a.position && **x < b.position)
            .map(|(_, v)| *v)
            .fold(f64::INFINITY, f64::min);
        if dip < 0.5 * a.value.min(b.value) {
            return Some((a.position, b.position));
        }
    }
    None
}

/// Integral of the density over the part of the grid inside a rectangle.
pub fn rectangle_probability(snap: &Snapshot, x1: (f64, f64), x2: (f64, f64)) -> f64 {
    let g = snap.grid;
    let rows: Vec<f64> = (0..g.x2.n)
        .map(|i| {
            let y = g.x2.at(i);
            if y < x2.0 || y > x2.1 {
                return 0.0;
            }
            let row: Vec<f64> = (0..g.x1.n)
                .map(|j| {
                    let x = g.x1.at(j);
                    if x >= x1.0 && x <= x1.1 {
                        snap.pdf[[i, j]]
                    } else {
                        0.0
                    }
                })
                .collect();
            trapezoid(&row, g.x1.step())
        })
        .collect();
    trapezoid(&rows, g.x2.step())
}

/// Integral of the density over grid points with x_rel in [lo, hi].
pub fn relative_band_probability(snap: &Snapshot, lo: f64, hi: f64) -> f64 {
    let g = snap.grid;
    let mut s = 0.0;
    for i in 0..g.x2.n {
        for j in 0..g.x1.n {
            let xr = g.x1.at(j) - g.x2.at(i);
            if xr >= lo && xr <= hi {
                s += snap.pdf[[i, j]];
            }
        }
    }
    s * g.x1.step() * g.x2.step()
}

/// How a body's position expectation is conditioned on the other body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conditioning {
    /// The other body is not observed: expectation under the marginal.
    MarginalOnly,
    /// The other body is found at its own expected position: expectation
    /// along that slice of the joint density.
    Joint,
}

/// Expected position of `body` in one snapshot.
pub fn centroid(snap: &Snapshot, body: Body, conditioning: Conditioning) -> Option<f64> {
    match conditioning {
        Conditioning::MarginalOnly => marginal(snap, body).moments().map(|m| m.0),
        Conditioning::Joint => {
            let other = match body {
                Body::Particle => Body::Reflector,
                Body::Reflector => Body::Particle,
            };
            let at = marginal(snap, other).moments()?.0;
            slice(snap, body, at).moments().map(|m| m.0)
        }
    }
}

/// Centroid of `body` at each time.
pub fn centroid_track<F: Field + ?Sized>(
    field: &F,
    grid: &Grid,
    times: &[f64],
    body: Body,
    conditioning: Conditioning,
) -> Vec<(f64, Option<f64>)> {
    times
        .iter()
        .map(|&t| (t, centroid(&field.snapshot(grid, t), body, conditioning)))
        .collect()
}
