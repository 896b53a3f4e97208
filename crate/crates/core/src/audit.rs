//! Probability bookkeeping on a rectangle: the rate of change of the
//! enclosed probability against the net current through its edges.

use crate::wavegroup::{Field, Wavegroup};
use crate::{Error, Result};
use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Axis-aligned region [x1.0, x1.1] x [x2.0, x2.1].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rectangle {
    pub x1: (f64, f64),
    pub x2: (f64, f64),
}

impl Rectangle {
    pub fn new(x1: (f64, f64), x2: (f64, f64)) -> Result<Self> {
        for (name, (a, b)) in [("x1 range", x1), ("x2 range", x2)] {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::param(name, format!("need finite a < b, got [{a}, {b}]")));
            }
        }
        Ok(Rectangle { x1, x2 })
    }
}

/// Quadrature used on edges and interior. Every seam-free interval is cut
/// into `panels` equal pieces, each with an `order`-point Gauss-Legendre rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuditOptions {
    pub panels: usize,
    pub order: usize,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { panels: 4, order: 24 }
    }
}

/// Outflows are positive when probability leaves the rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FluxAudit {
    pub region: Rectangle,
    pub t: f64,
    pub dt: f64,
    pub probability: f64,
    pub dp_dt: f64,
    /// Current through the x1 = const edges, right minus left.
    pub flux_x1: f64,
    /// Current through the x2 = const edges, top minus bottom.
    pub flux_x2: f64,
    pub residual: f64,
    /// Largest single term: |dP/dt| or the current through any one edge.
    pub scale: f64,
}

impl FluxAudit {
    /// |residual| over the largest term, zero if every term vanishes.
    pub fn relative_residual(&self) -> f64 {
        if self.scale > 0.0 {
            self.residual.abs() / self.scale
        } else {
            0.0
        }
    }
}

struct Rule {
    nodes: Vec<(f64, f64)>,
    panels: usize,
}

impl Rule {
    fn new(opts: AuditOptions) -> Result<Self> {
        if opts.panels == 0 {
            return Err(Error::param("panels", "must be at least 1"));
        }
        let gl = GaussLegendre::new(opts.order).map_err(|_| Error::param("order", "must be at least 2"))?;
        Ok(Rule {
            nodes: gl.as_node_weight_pairs().to_vec(),
            panels: opts.panels,
        })
    }

    /// Abscissae and weights on [a, b], panels split at every break point.
    fn points(&self, a: f64, b: f64, breaks: &[f64]) -> Vec<(f64, f64)> {
        let mut cuts = vec![a];
        let mut inner: Vec<f64> = breaks.iter().cloned().filter(|&x| x > a && x < b).collect();
        inner.sort_by(|p, q| p.total_cmp(q));
        cuts.extend(inner);
        cuts.push(b);
        let mut out = Vec::new();
        for w in cuts.windows(2) {
            let len = (w[1] - w[0]) / self.panels as f64;
            for p in 0..self.panels {
                let lo = w[0] + len * p as f64;
                for &(x, wt) in &self.nodes {
                    out.push((lo + 0.5 * len * (x + 1.0), 0.5 * len * wt));
                }
            }
        }
        out
    }
}

fn current(psi: Complex64, d: Complex64, hbar: f64, mass: f64) -> f64 {
    hbar * (psi.conj() * d).im / mass
}

fn probability(wg: &Wavegroup, r: &Rectangle, t: f64, rule: &Rule, seams: &[f64]) -> f64 {
    // x1 - x2 = s crosses the x1 edges at x2 = x1 - s.
    let outer_breaks: Vec<f64> = seams.iter().flat_map(|s| [r.x1.0 - s, r.x1.1 - s]).collect();
    let outer = rule.points(r.x2.0, r.x2.1, &outer_breaks);
    outer
        .par_iter()
        .map(|&(y, wy)| {
            let breaks: Vec<f64> = seams.iter().map(|s| y + s).collect();
            let inner: f64 = rule
                .points(r.x1.0, r.x1.1, &breaks)
                .iter()
                .map(|&(x, wx)| wx * wg.amplitude(x, y, t).norm_sqr())
                .sum();
            wy * inner
        })
        .sum()
}

/// Integral of the normal current along an edge. `along_x2` selects an
/// edge at fixed x1, parametrised by x2.
fn edge_current(wg: &Wavegroup, fixed: f64, range: (f64, f64), along_x2: bool, t: f64, rule: &Rule, seams: &[f64], hbar: f64) -> f64 {
    let pair = wg.pair();
    let breaks: Vec<f64> = seams.iter().map(|s| if along_x2 { fixed - s } else { fixed + s }).collect();
    rule.points(range.0, range.1, &breaks)
        .par_iter()
        .map(|&(u, w)| {
            if along_x2 {
                let g = wg.amplitude_and_gradient(fixed, u, t);
                w * current(g[0], g[1], hbar, pair.particle_mass)
            } else {
                let g = wg.amplitude_and_gradient(u, fixed, t);
                w * current(g[0], g[2], hbar, pair.reflector_mass)
            }
        })
        .sum()
}

/// Audit the continuity equation on `region` at time `t`, with dP/dt taken
/// by a centred difference of step `dt`.
pub fn flux_audit(wg: &Wavegroup, region: Rectangle, t: f64, dt: f64, opts: AuditOptions) -> Result<FluxAudit> {
    if wg.is_empty() {
        return Err(Error::param("wavegroup", "has no members"));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::param("dt", "must be positive"));
    }
    let rule = Rule::new(opts)?;
    let hbar = wg.states()[0].hbar;
    let seams = wg.seams();
    let r = &region;
    let p_plus = probability(wg, r, t + dt, &rule, &seams);
    let p_minus = probability(wg, r, t - dt, &rule, &seams);
    let dp_dt = (p_plus - p_minus) / (2.0 * dt);
    let left = edge_current(wg, r.x1.0, r.x2, true, t, &rule, &seams, hbar);
    let right = edge_current(wg, r.x1.1, r.x2, true, t, &rule, &seams, hbar);
    let bottom = edge_current(wg, r.x2.0, r.x1, false, t, &rule, &seams, hbar);
    let top = edge_current(wg, r.x2.1, r.x1, false, t, &rule, &seams, hbar);
    let flux_x1 = right - left;
    let flux_x2 = top - bottom;
    let scale = [dp_dt, left, right, bottom, top].iter().map(|v| v.abs()).fold(0.0, f64::max);
    Ok(FluxAudit {
        region,
        t,
        dt,
        probability: probability(wg, r, t, &rule, &seams),
        dp_dt,
        flux_x1,
        flux_x2,
        residual: dp_dt + flux_x1 + flux_x2,
        scale,
    })
}

/// Audits at several step sizes; returns (dt, |residual|).
pub fn dt_ladder(wg: &Wavegroup, region: Rectangle, t: f64, steps: &[f64], opts: AuditOptions) -> Result<Vec<(f64, f64)>> {
    steps
        .iter()
        .map(|&dt| flux_audit(wg, region, t, dt, opts).map(|a| (dt, a.residual.abs())))
        .collect()
}

/// Least-squares slope of log |residual| against log dt.
pub fn ladder_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(d, r)| *d > 0.0 && *r > 0.0)
        .map(|(d, r)| (d.ln(), r.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::Eigenstate;
    use crate::{Constants, Pair};

    #[test]
    fn single_plane_wave_balances() {
        let pair = Pair::new(1.0, 4.0).unwrap();
        let s = Eigenstate::free(pair, 1.3, -0.2, Constants::NATURAL);
        let wg = Wavegroup::from_states(pair, vec![(Complex64::new(1.0, 0.0), s)]).unwrap();
        let r = Rectangle::new((-1.0, 2.0), (-0.5, 1.5)).unwrap();
        let a = flux_audit(&wg, r, 0.3, 0.01, AuditOptions::default()).unwrap();
        assert!(a.dp_dt.abs() < 1e-12, "{a:?}");
        assert!(a.flux_x1.abs() < 1e-12 && a.flux_x2.abs() < 1e-12, "{a:?}");
        assert!((a.probability - 6.0).abs() < 1e-12);
    }

    #[test]
    fn slope_of_exact_power_law() {
        let pts: Vec<(f64, f64)> = [0.1, 0.2, 0.4].iter().map(|&d: &f64| (d, 3.0 * d * d)).collect();
        assert!((ladder_slope(&pts).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_empty_rectangle() {
        assert!(Rectangle::new((1.0, 1.0), (0.0, 1.0)).is_err());
    }
}
