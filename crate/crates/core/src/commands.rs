//! What each command-line subcommand does, as library functions.
//!
//! Every command writes into the scenario's output directory: snapshot
//! CSVs where it produces snapshots, `manifest.toml` with every resolved
//! parameter, and `report.txt` with one line per observable.

use crate::analysis::{self, Body};
use crate::audit::{self, AuditOptions, Rectangle};
use crate::decoherence::DecoherenceInput;
use crate::eigen::{self, Eigenstate};
use crate::grid::{Axis, Grid};
use crate::image::{ImageModel, ImageWavegroup};
use crate::oracle::{relative_l2, OraclePotential, SplitStep};
use crate::quadrature::make_quadrature;
use crate::report::{Compare, Report, ReportLine};
use crate::scenario::{Method, Scenario, System};
use crate::slab::{self, SlabScenario};
use crate::snapshot::Snapshot;
use crate::wavegroup::{image_group, slab_surfaces, Field, Wavegroup, WellSpectrum};
use crate::{Complex64, Constants, Error, Result};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Relative L2 tolerance of the propagator comparison.
pub const ORACLE_TOLERANCE: f64 = 0.01;

/// A scenario's wavegroup, summed over eigenstates or in closed form.
pub enum Model {
    Sum(Wavegroup),
    Closed(ImageWavegroup),
}

impl Model {
    pub fn field(&self) -> &dyn Field {
        match self {
            Model::Sum(w) => w,
            Model::Closed(w) => w,
        }
    }
}

pub fn constants(s: &Scenario) -> Constants {
    Constants::of(s.units)
}

fn image_model(system: System) -> Result<Option<ImageModel>> {
    Ok(match system {
        System::Free => Some(ImageModel::free()),
        System::Mirror => Some(ImageModel::mirror()),
        System::Slab {
            thickness,
            amplitude,
            opposite_signs,
        } => Some(ImageModel::surfaces(&slab_surfaces(thickness, amplitude, opposite_signs))?),
        _ => None,
    })
}

fn no_dynamics() -> Error {
    Error::Scenario("system kind `estimates` has no wavefunction; use the decoherence command".into())
}

/// Eigenstate sum over the scenario's spectrum, whatever the system.
pub fn build_sum(s: &Scenario) -> Result<Wavegroup> {
    let c = constants(s);
    let pair = s.pair()?;
    let system = s.system()?;
    let rule = s.rule()?;
    if let System::InfiniteWell {
        level,
        spread_fraction,
        half_width,
    } = system
    {
        let well = WellSpectrum {
            n0: level,
            spread_fraction,
            half_width,
            reflector: s.reflector_spread()?,
            reflector_nodes: rule.reflector_nodes,
            span: rule.span,
            placement: s.placement(),
        };
        return Wavegroup::infinite_well(pair, &well, c);
    }
    let spectrum = make_quadrature(s.particle_spread()?, s.reflector_spread()?, &rule)?;
    match system {
        System::Barrier { potential, half_width } => Wavegroup::barrier(pair, &spectrum, s.placement(), potential, half_width, c),
        System::Estimates => Err(no_dynamics()),
        other => {
            let model = image_model(other)?.expect("image system");
            Wavegroup::image(pair, &spectrum, s.placement(), &model, c)
        }
    }
}

/// The scenario's wavegroup, in closed form when the system and method
/// allow it.
pub fn build_model(s: &Scenario) -> Result<Model> {
    let system = s.system()?;
    if system == System::Estimates {
        return Err(no_dynamics());
    }
    let dephased = s.rule()?.dephasing.is_some();
    let closed = image_model(system)?;
    let use_closed = match s.method {
        Method::Sum => false,
        Method::ClosedForm => {
            if closed.is_none() {
                return Err(Error::Scenario(format!("no closed form for a {} system; use method = \"sum\"", system.name())));
            }
            if dephased {
                return Err(Error::Scenario("a dephased spectrum needs method = \"sum\"".into()));
            }
            true
        }
        Method::Auto => closed.is_some() && !dephased,
    };
    if use_closed {
        let c = constants(s);
        let (p, r) = (s.particle_spread()?, s.reflector_spread()?);
        if p.centre <= r.centre {
            return Err(Error::NoCollision {
                particle: p.centre,
                reflector: r.centre,
            });
        }
        Ok(Model::Closed(image_group(s.pair()?, closed.expect("closed"), p, r, s.placement(), c)))
    } else {
        Ok(Model::Sum(build_sum(s)?))
    }
}

/// Plane-wave eigenstate at the centre of the spectrum.
pub fn central_eigenstate(s: &Scenario) -> Result<Eigenstate> {
    let c = constants(s);
    let pair = s.pair()?;
    let vv = s
        .reflector
        .velocity
        .ok_or_else(|| Error::Scenario("missing reflector velocity".into()))?;
    let system = s.system()?;
    if let System::InfiniteWell { level, half_width, .. } = system {
        return Eigenstate::infinite_well(pair, level, vv, half_width, c);
    }
    let v = s
        .particle
        .velocity
        .ok_or_else(|| Error::Scenario("missing particle velocity".into()))?;
    match system {
        System::Free => Ok(Eigenstate::free(pair, v, vv, c)),
        System::Mirror => Eigenstate::mirror(pair, v, vv, c),
        System::Barrier { potential, half_width } => Eigenstate::barrier(pair, v, vv, potential, half_width, c),
        System::Slab {
            thickness,
            amplitude,
            opposite_signs,
        } => Eigenstate::surfaces(pair, v, vv, &slab_surfaces(thickness, amplitude, opposite_signs), c),
        System::InfiniteWell { .. } => unreachable!(),
        System::Estimates => Err(no_dynamics()),
    }
}

pub fn slab_scenario(s: &Scenario) -> Result<SlabScenario> {
    let System::Slab {
        thickness,
        amplitude,
        opposite_signs,
    } = s.system()?
    else {
        return Err(Error::Scenario("the slab command needs system.kind = \"slab\"".into()));
    };
    Ok(SlabScenario {
        pair: s.pair()?,
        particle: s.particle_spread()?,
        slab: s.reflector_spread()?,
        thickness,
        amplitude,
        opposite_signs,
        placement: s.placement(),
    })
}

/// Files written by a command and its report.
#[derive(Debug)]
pub struct RunOutput {
    pub dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub report: Report,
}

fn prepare(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

fn finish(s: &Scenario, command: &str, dir: PathBuf, mut files: Vec<PathBuf>, report: Report) -> Result<RunOutput> {
    prepare(&dir)?;
    let manifest = dir.join("manifest.toml");
    std::fs::write(&manifest, s.manifest(command))?;
    let rp = dir.join("report.txt");
    report.write(&rp)?;
    files.push(manifest);
    files.push(rp);
    Ok(RunOutput { dir, files, report })
}

fn snapshot_path(s: &Scenario, dir: &Path, k: usize) -> PathBuf {
    dir.join(format!("{}_{k:03}.csv", s.prefix))
}

/// Snapshots of `field` at every scenario time, written as CSV.
fn write_snapshots(s: &Scenario, field: &dyn Field, dir: &Path, report: &mut Report) -> Result<(Vec<PathBuf>, Vec<Snapshot>)> {
    prepare(dir)?;
    let grid = s.grid()?;
    let mut files = Vec::new();
    let mut snaps = Vec::new();
    for (k, &t) in s.times()?.iter().enumerate() {
        let snap = field.snapshot(&grid, t);
        report.info(format!("norm_on_grid[{k}]"), snap.norm());
        let path = snapshot_path(s, dir, k);
        snap.write_csv(&path)?;
        files.push(path);
        snaps.push(snap);
    }
    Ok((files, snaps))
}

pub fn eigenstate(s: &Scenario) -> Result<RunOutput> {
    let state = central_eigenstate(s)?;
    let pair = s.pair()?;
    let single = Wavegroup::from_states(pair, vec![(Complex64::new(1.0, 0.0), state.clone())])?;
    let dir = s.output_dir();
    let mut report = Report::new();
    let (files, snaps) = write_snapshots(s, &single, &dir, &mut report)?;
    if let (Some(v), Some(vv)) = (s.particle.velocity, s.reflector.velocity) {
        let p = crate::kinematics::Partition::new(pair, v, vv, constants(s));
        report.info("rel_wavenumber", p.rel_wavenumber);
        report.info("cm_wavenumber", p.cm_wavenumber);
        report.info("fringe_spacing_predicted", std::f64::consts::PI / p.rel_wavenumber.abs());
    }
    report.info("peak_pdf", snaps.iter().map(|s| s.peak()).fold(0.0, f64::max));
    finish(s, "eigenstate", dir, files, report)
}

pub fn wavegroup(s: &Scenario) -> Result<RunOutput> {
    let model = build_model(s)?;
    let dir = s.output_dir();
    let mut report = Report::new();
    let (files, snaps) = write_snapshots(s, model.field(), &dir, &mut report)?;
    for (k, snap) in snaps.iter().enumerate() {
        for body in [Body::Particle, Body::Reflector] {
            let m = analysis::marginal(snap, body);
            let name = match body {
                Body::Particle => "particle",
                Body::Reflector => "reflector",
            };
            if let Some((mean, width)) = m.moments() {
                report.info(format!("{name}_centroid[{k}]"), mean);
                report.info(format!("{name}_width[{k}]"), width);
            }
            report.info(format!("{name}_visibility[{k}]"), analysis::visibility(&m).value);
        }
    }
    finish(s, "wavegroup", dir, files, report)
}

pub fn slab(s: &Scenario) -> Result<RunOutput> {
    let sc = slab_scenario(s)?;
    let c = constants(s);
    let dir = s.output_dir();
    prepare(&dir)?;
    let grid = s.grid()?;
    let mut report = Report::new();
    let h = slab::slab_harmonic(sc.pair, sc.particle.centre, sc.slab.centre, sc.thickness, c)?;
    report.info("harmonic_exact", h.exact);
    report.info("harmonic_light_limit", h.light_limit);
    report.info("recoil_offset", slab::recoil_offset(sc.pair, sc.thickness));
    report.info("overlap_temperature_bound", slab::overlap_temperature_bound(sc.pair, sc.thickness, c));
    report.info("contact_time", sc.contact_time());
    let mut files = Vec::new();
    for (k, &t) in s.times()?.iter().enumerate() {
        let snap = sc.snapshot(&grid, t, c)?;
        if let Some(w) = &snap.warning {
            eprintln!("warning: t={t:e}: {w}");
            report.info(format!("empty_snapshot[{k}]"), 1.0);
        }
        report.info(format!("window_probability[{k}]"), snap.snapshot.norm());
        report.info(
            format!("reflected_probability[{k}]"),
            analysis::relative_band_probability(&snap.snapshot, f64::NEG_INFINITY, -0.5 * sc.thickness),
        );
        let path = snapshot_path(s, &dir, k);
        snap.snapshot.write_csv(&path)?;
        files.push(path);
    }
    finish(s, "slab", dir, files, report)
}

pub fn barrier(s: &Scenario) -> Result<RunOutput> {
    let System::Barrier { potential, half_width } = s.system()? else {
        return Err(Error::Scenario("the barrier command needs system.kind = \"barrier\" or \"well\"".into()));
    };
    let c = constants(s);
    let pair = s.pair()?;
    let (v, vv) = (s.particle_spread()?.centre, s.reflector_spread()?.centre);
    let p = crate::kinematics::Partition::new(pair, v, vv, c);
    let coeffs = eigen::barrier_coefficients(pair, p.rel_energy, potential, half_width, c);
    let mut report = Report::new();
    report.info("rel_energy", p.rel_energy);
    report.info("energy_ratio", (p.rel_energy - potential) / potential.abs());
    report.info("reflection", coeffs.reflection());
    report.info("transmission", coeffs.transmission());
    if p.rel_energy > potential {
        report.push(ReportLine::check(
            "flux_unitarity",
            coeffs.reflection() + coeffs.transmission(),
            1.0,
            1e-10,
            Compare::Absolute,
        ));
    }
    let model = build_model(s)?;
    let dir = s.output_dir();
    let (files, _) = write_snapshots(s, model.field(), &dir, &mut report)?;
    finish(s, "barrier", dir, files, report)
}

pub fn well(s: &Scenario) -> Result<RunOutput> {
    match s.system()? {
        System::InfiniteWell { level, half_width, .. } => {
            let c = constants(s);
            let pair = s.pair()?;
            let vv = s.reflector_spread()?.centre;
            let mut report = Report::new();
            let v = eigen::well_particle_velocity(pair, level, vv, half_width, c);
            report.info("level", level as f64);
            report.info("particle_velocity", v);
            let q = level as f64 * std::f64::consts::PI / (2.0 * half_width);
            report.info("rel_energy", c.hbar * c.hbar * q * q / (2.0 * pair.reduced()));
            report.info("node_spacing", 2.0 * half_width / level as f64);
            let model = build_model(s)?;
            let dir = s.output_dir();
            let (files, _) = write_snapshots(s, model.field(), &dir, &mut report)?;
            finish(s, "well", dir, files, report)
        }
        System::Barrier { potential, .. } if potential < 0.0 => barrier(s),
        _ => Err(Error::Scenario(
            "the well command needs system.kind = \"infinite_well\" or \"well\"".into(),
        )),
    }
}

fn write_marginal(path: &Path, t: f64, axis: &str, m: &analysis::Profile) -> Result<()> {
    let mut out = String::new();
    writeln!(out, "# t={t:e} axis={axis} n={}", m.coords.len()).expect("string write");
    for (x, p) in m.coords.iter().zip(&m.values) {
        writeln!(out, "{x:e},{p:e}").expect("string write");
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn marginals(s: &Scenario) -> Result<RunOutput> {
    let model = build_model(s)?;
    let grid = s.grid()?;
    let dir = s.output_dir();
    prepare(&dir)?;
    let mut report = Report::new();
    let mut files = Vec::new();
    for (k, &t) in s.times()?.iter().enumerate() {
        let snap = model.field().snapshot(&grid, t);
        for (body, axis) in [(Body::Particle, "x1"), (Body::Reflector, "x2")] {
            let m = analysis::marginal(&snap, body);
            let path = dir.join(format!("marginal_{axis}_{k:03}.csv"));
            write_marginal(&path, t, axis, &m)?;
            files.push(path);
            let vis = analysis::visibility(&m);
            report.info(format!("{axis}_marginal_visibility[{k}]"), vis.value);
            report.info(format!("{axis}_marginal_fringe_pairs[{k}]"), vis.pairs as f64);
            if let Some(sp) = analysis::fringe_spacing(&m) {
                report.info(format!("{axis}_marginal_fringe_spacing[{k}]"), sp);
            }
            report.info(format!("{axis}_marginal_integral[{k}]"), m.integral());
        }
    }
    finish(s, "marginals", dir, files, report)
}

/// Flux audit at every scenario time over `region` (the whole grid if
/// `None`). With `ladder`, also audits at dt, dt/2, dt/4 and reports the
/// fitted order.
pub fn audit(s: &Scenario, region: Option<Rectangle>, dt: f64, ladder: bool) -> Result<RunOutput> {
    let wg = build_sum(s)?;
    let grid = s.grid()?;
    let r = match region {
        Some(r) => {
            let inside = |(a, b): (f64, f64), ax: &Axis| a >= ax.min && b <= ax.max;
            if !(inside(r.x1, &grid.x1) && inside(r.x2, &grid.x2)) {
                return Err(Error::Grid("audit region extends outside the grid".into()));
            }
            r
        }
        None => Rectangle::new((grid.x1.min, grid.x1.max), (grid.x2.min, grid.x2.max))?,
    };
    let opts = AuditOptions::default();
    let mut report = Report::new();
    for (k, &t) in s.times()?.iter().enumerate() {
        let a = audit::flux_audit(&wg, r, t, dt, opts)?;
        report.info(format!("probability[{k}]"), a.probability);
        report.info(format!("dp_dt[{k}]"), a.dp_dt);
        report.info(format!("flux_x1[{k}]"), a.flux_x1);
        report.info(format!("flux_x2[{k}]"), a.flux_x2);
        report.info(format!("residual[{k}]"), a.residual);
        report.info(format!("relative_residual[{k}]"), a.relative_residual());
        if ladder {
            let pts = audit::dt_ladder(&wg, r, t, &[dt, dt / 2.0, dt / 4.0], opts)?;
            if let Some(order) = audit::ladder_slope(&pts) {
                report.push(ReportLine::check(format!("residual_order[{k}]"), order, 2.0, 0.1, Compare::Approx));
            }
        }
    }
    finish(s, "audit", s.output_dir(), Vec::new(), report)
}

pub fn decoherence_input(s: &Scenario) -> Result<DecoherenceInput> {
    let need = |v: Option<f64>, key: &str| v.ok_or_else(|| Error::Scenario(format!("the decoherence estimates need `{key}`")));
    Ok(DecoherenceInput {
        particle_mass: s.particle.mass,
        reflector_mass: s.reflector.mass,
        probe_mass: need(s.probe_mass, "system.probe_mass")?,
        thickness: need(s.thickness, "system.thickness")?,
        particle_coherence: need(s.particle_coherence, "particle.coherence_length")?,
        temperature: need(s.temperature, "reflector.temperature")?,
        velocity: need(s.particle.velocity, "particle.velocity")?,
        relaxation_time: need(s.relaxation_time, "system.relaxation_time")?,
    })
}

pub fn decoherence(s: &Scenario) -> Result<RunOutput> {
    let input = decoherence_input(s)?;
    let mut report = Report::new();
    for e in input.estimates(constants(s))? {
        report.info(e.name, e.value);
    }
    finish(s, "decoherence", s.output_dir(), Vec::new(), report)
}

/// `section.key=start:stop:count`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepParam {
    pub key: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepParam {
    pub fn parse(s: &str) -> Result<Self> {
        let (key, range) = crate::scenario::split_assignment(s)?;
        let parts: Vec<&str> = range.split(':').collect();
        let bad = || Error::Scenario(format!("sweep range must be start:stop:count, got `{range}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].parse().map_err(|_| bad())?;
        let count: usize = parts[2].parse().map_err(|_| bad())?;
        if count < 1 || (count == 1 && start != stop) {
            return Err(bad());
        }
        Ok(SweepParam { key, start, stop, count })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

/// Grid-integrated probability at every time, for each parameter value.
/// Each point's snapshots go to their own subdirectory.
pub fn sweep(text: &str, name: &str, overrides: &[(String, String)], param: &SweepParam) -> Result<RunOutput> {
    let base = Scenario::parse(text, name, overrides)?;
    let dir = base.output_dir();
    prepare(&dir)?;
    let values = param.values();
    let rows: Vec<Result<(f64, Vec<f64>)>> = values
        .par_iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut ov = overrides.to_vec();
            ov.push((param.key.clone(), format!("{v:e}")));
            ov.push(("output.directory".into(), format!("{:?}", dir.join(format!("point_{i:03}")).to_string_lossy())));
            let s = Scenario::parse(text, name, &ov)?;
            let model = build_model(&s)?;
            let grid = s.grid()?;
            let sub = dir.join(format!("point_{i:03}"));
            prepare(&sub)?;
            let mut probs = Vec::new();
            for (k, &t) in s.times()?.iter().enumerate() {
                let snap = model.field().snapshot(&grid, t);
                snap.write_csv(&snapshot_path(&s, &sub, k))?;
                probs.push(snap.norm());
            }
            std::fs::write(sub.join("manifest.toml"), s.manifest("sweep"))?;
            Ok((v, probs))
        })
        .collect();
    let rows: Vec<(f64, Vec<f64>)> = rows.into_iter().collect::<Result<_>>()?;
    let mut csv = format!("# param={}\n", param.key);
    for (v, probs) in &rows {
        let cols: Vec<String> = probs.iter().map(|p| format!("{p:e}")).collect();
        writeln!(csv, "{v:e},{}", cols.join(",")).expect("string write");
    }
    let table = dir.join("sweep.csv");
    std::fs::write(&table, csv)?;
    let mut report = Report::new();
    let curve = analysis::Profile::new(rows.iter().map(|r| r.0).collect(), rows.iter().map(|r| r.1[0]).collect());
    for (v, probs) in &rows {
        report.info(format!("probability[{v:e}]"), probs[0]);
    }
    if let Some(p) = analysis::fringe_spacing(&curve) {
        report.info("sweep_period", p);
    }
    let mut overrides = overrides.to_vec();
    overrides.push(("sweep".into(), format!("{}={}:{}:{}", param.key, param.start, param.stop, param.count)));
    let mut recorded = base.clone();
    recorded.overrides = overrides;
    finish(&recorded, "sweep", dir, vec![table], report)
}

/// Propagator grid for the scenario: the snapshot grid, or the same
/// window with the point counts from `[oracle]`.
pub fn oracle_grid(s: &Scenario) -> Result<Grid> {
    let g = s.grid()?;
    Ok(match s.oracle_points {
        Some((n1, n2)) => Grid::new(Axis::new(g.x1.min, g.x1.max, n1)?, Axis::new(g.x2.min, g.x2.max, n2)?),
        None => g,
    })
}

pub fn oracle_potential(s: &Scenario) -> Result<OraclePotential> {
    Ok(match s.system()? {
        System::Free => OraclePotential::None,
        System::Barrier { potential, half_width } => OraclePotential::Step {
            height: potential,
            half_width,
        },
        System::Mirror => {
            let (height, width) = s
                .oracle_wall
                .ok_or_else(|| Error::Scenario("a mirror needs oracle.wall_height and oracle.wall_width".into()))?;
            OraclePotential::GaussianWall { height, width }
        }
        other => {
            return Err(Error::Scenario(format!("no propagator potential for a {} system", other.name())));
        }
    })
}

/// Relative L2 distance between propagated and analytic amplitudes at
/// each scenario time after the first, and the norm drift.
pub fn oracle_compare(s: &Scenario) -> Result<(Vec<(f64, f64)>, f64)> {
    let model = build_model(s)?;
    let field = model.field();
    let grid = oracle_grid(s)?;
    let dt = s.oracle_dt.ok_or_else(|| Error::Scenario("missing key `oracle.dt`".into()))?;
    let prop = SplitStep::new(s.pair()?, grid, dt, oracle_potential(s)?, constants(s))?;
    let times = s.times()?;
    let mut psi = field.amplitude_grid(&grid, times[0]);
    prop.check_aliasing(&psi)?;
    let n0 = prop.norm(&psi);
    let mut out = Vec::new();
    for w in times.windows(2) {
        let steps = (w[1] - w[0]) / dt;
        if (steps - steps.round()).abs() > 1e-6 * steps.abs().max(1.0) || steps < 0.0 {
            return Err(Error::param("oracle.dt", "must divide the gaps between times"));
        }
        prop.advance(&mut psi, steps.round() as usize)?;
        let exact = field.amplitude_grid(&grid, w[1]);
        out.push((w[1], relative_l2(&psi, &exact)));
    }
    prop.check_aliasing(&psi)?;
    Ok((out, (prop.norm(&psi) / n0 - 1.0).abs()))
}

pub fn oracle_check(s: &Scenario) -> Result<RunOutput> {
    let (errs, drift) = oracle_compare(s)?;
    let mut report = Report::new();
    for (k, (t, e)) in errs.iter().enumerate() {
        report.info(format!("time[{}]", k + 1), *t);
        report.push(ReportLine::check(format!("relative_l2[{}]", k + 1), *e, ORACLE_TOLERANCE, 0.0, Compare::Less));
    }
    report.push(ReportLine::check("norm_drift", drift, 1e-8, 0.0, Compare::Less));
    finish(s, "oracle-check", s.output_dir(), Vec::new(), report)
}
