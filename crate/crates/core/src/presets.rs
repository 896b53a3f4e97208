//! Checked-in scenarios, one per figure regime plus a set of estimates,
//! each with a sidecar of expected observables.
//!
//! Sidecars are TOML: a list of `[[observable]]` tables naming what to
//! measure, where, and how to compare it. An observable may carry `set`
//! overrides for the scenario and a `reference` whose value it is divided
//! by. The reference starts from the observable and replaces its time,
//! body, slice, window and override set where given.

use crate::analysis::{self, Body, Conditioning, Profile};
use crate::commands::{self, build_model, constants, decoherence_input, slab_scenario};
use crate::eigen;
use crate::report::{Compare, Report, ReportLine};
use crate::scenario::{Scenario, System};
use crate::slab;
use crate::snapshot::Snapshot;
use crate::{Error, Result};
use serde::Deserialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

pub struct Preset {
    pub id: &'static str,
    pub scenario: &'static str,
    pub expected: &'static str,
}

macro_rules! preset {
    ($id:literal) => {
        Preset {
            id: $id,
            scenario: include_str!(concat!("../presets/", $id, ".toml")),
            expected: include_str!(concat!("../presets/", $id, ".expected.toml")),
        }
    };
}

pub const PRESETS: &[Preset] = &[
    preset!("fig1"),
    preset!("fig2"),
    preset!("fig3a"),
    preset!("fig3b"),
    preset!("fig3c"),
    preset!("fig3c_dephased"),
    preset!("fig3d"),
    preset!("fig4_equal"),
    preset!("fig4_heavy"),
    preset!("fig5_slab"),
    preset!("fig6_well"),
    preset!("fig7_barrier"),
    preset!("fig8_infinite_well"),
    preset!("estimates"),
];

pub fn find(id: &str) -> Result<&'static Preset> {
    PRESETS
        .iter()
        .find(|p| p.id == id)
        .ok_or_else(|| Error::Scenario(format!("no preset `{id}`; known: {}", ids().join(", "))))
}

pub fn ids() -> Vec<&'static str> {
    PRESETS.iter().map(|p| p.id).collect()
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Visibility,
    FringeSpacing,
    TwoPeaks,
    Width,
    Centroid,
    Norm,
    ReflectedProbability,
    SlabHarmonic,
    RecoilOffset,
    TemperatureBound,
    PredictedSpacing,
    Reflection,
    Transmission,
    Estimate,
    OracleL2,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ProfileSource {
    Marginal,
    Slice,
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Stated in the published text or figure captions.
    Published,
    /// Follows exactly from the definitions.
    Exact,
    /// Computed independently of this crate.
    Computed,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Reference {
    pub time: Option<usize>,
    pub body: Option<Body>,
    pub at: Option<f64>,
    pub window: Option<[f64; 2]>,
    #[serde(default)]
    pub set: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Observable {
    pub id: String,
    pub measure: Measure,
    pub profile: Option<ProfileSource>,
    pub body: Option<Body>,
    pub at: Option<f64>,
    pub window: Option<[f64; 2]>,
    #[serde(default)]
    pub time: usize,
    pub min_fraction: Option<f64>,
    pub conditioning: Option<Conditioning>,
    pub name: Option<String>,
    pub expected: f64,
    pub compare: Compare,
    #[serde(default)]
    pub tolerance: f64,
    pub source: Source,
    #[serde(default)]
    pub set: BTreeMap<String, String>,
    pub reference: Option<Reference>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Sidecar {
    observable: Vec<Observable>,
}

pub fn expected(p: &Preset) -> Result<Vec<Observable>> {
    let s: Sidecar = toml::from_str(p.expected).map_err(|e| Error::Format(format!("sidecar for {}: {e}", p.id)))?;
    Ok(s.observable)
}

/// Evaluates observables, caching snapshots per override set and time.
pub struct Evaluator<'a> {
    text: &'a str,
    name: &'a str,
    base: Vec<(String, String)>,
    snaps: Mutex<HashMap<(String, usize), Snapshot>>,
}

fn need<T>(v: Option<T>, what: &str, id: &str) -> Result<T> {
    v.ok_or_else(|| Error::Format(format!("observable `{id}` needs `{what}`")))
}

impl<'a> Evaluator<'a> {
    pub fn new(text: &'a str, name: &'a str, overrides: &[(String, String)]) -> Self {
        Evaluator {
            text,
            name,
            base: overrides.to_vec(),
            snaps: Mutex::new(HashMap::new()),
        }
    }

    fn scenario(&self, set: &BTreeMap<String, String>) -> Result<Scenario> {
        let mut ov = self.base.clone();
        ov.extend(set.iter().map(|(k, v)| (k.clone(), v.clone())));
        Scenario::parse(self.text, self.name, &ov)
    }

    fn snapshot(&self, set: &BTreeMap<String, String>, time: usize) -> Result<Snapshot> {
        let key = (format!("{set:?}"), time);
        if let Some(s) = self.snaps.lock().expect("cache lock").get(&key) {
            return Ok(s.clone());
        }
        let s = self.scenario(set)?;
        let t = *s
            .times()?
            .get(time)
            .ok_or_else(|| Error::Format(format!("time index {time} out of range")))?;
        let snap = if let Ok(System::Slab { .. }) = s.system() {
            slab_scenario(&s)?.snapshot(&s.grid()?, t, constants(&s))?.snapshot
        } else {
            build_model(&s)?.field().snapshot(&s.grid()?, t)
        };
        self.snaps.lock().expect("cache lock").insert(key, snap.clone());
        Ok(snap)
    }

    fn profile(&self, o: &Observable, body: Body) -> Result<Profile> {
        let snap = self.snapshot(&o.set, o.time)?;
        let p = match need(o.profile, "profile", &o.id)? {
            ProfileSource::Marginal => analysis::marginal(&snap, body),
            ProfileSource::Slice => analysis::slice(&snap, body, need(o.at, "at", &o.id)?),
        };
        Ok(match o.window {
            Some([a, b]) => p.window(a, b),
            None => p,
        })
    }

    fn value(&self, o: &Observable) -> Result<f64> {
        let (set, time) = (&o.set, o.time);
        let body = || need(o.body, "body", &o.id);
        let nan = f64::NAN;
        Ok(match o.measure {
            Measure::Visibility => analysis::visibility(&self.profile(o, body()?)?).value,
            Measure::FringeSpacing => analysis::fringe_spacing(&self.profile(o, body()?)?).unwrap_or(nan),
            Measure::TwoPeaks => {
                let p = self.profile(o, body()?)?;
                if analysis::two_peaks(&p, o.min_fraction.unwrap_or(0.1)).is_some() {
                    1.0
                } else {
                    0.0
                }
            }
            Measure::Width => analysis::marginal(&self.snapshot(set, time)?, body()?).moments().map_or(nan, |m| m.1),
            Measure::Centroid => {
                let snap = self.snapshot(set, time)?;
                analysis::centroid(&snap, body()?, o.conditioning.unwrap_or(Conditioning::MarginalOnly)).unwrap_or(nan)
            }
            Measure::Norm => self.snapshot(set, time)?.norm(),
            Measure::ReflectedProbability => {
                let s = self.scenario(set)?;
                let sc = slab_scenario(&s)?;
                let snap = self.snapshot(set, time)?;
                analysis::relative_band_probability(&snap, f64::NEG_INFINITY, -0.5 * sc.thickness)
            }
            Measure::SlabHarmonic => {
                let s = self.scenario(set)?;
                let sc = slab_scenario(&s)?;
                slab::slab_harmonic(sc.pair, sc.particle.centre, sc.slab.centre, sc.thickness, constants(&s))?.exact
            }
            Measure::RecoilOffset => {
                let s = self.scenario(set)?;
                let d = need(s.thickness, "system.thickness", &o.id)?;
                slab::recoil_offset(s.pair()?, d)
            }
            Measure::TemperatureBound => {
                let s = self.scenario(set)?;
                let d = need(s.thickness, "system.thickness", &o.id)?;
                slab::overlap_temperature_bound(s.pair()?, d, constants(&s))
            }
            Measure::PredictedSpacing => {
                let s = self.scenario(set)?;
                let p = crate::kinematics::Partition::new(s.pair()?, s.particle_spread()?.centre, s.reflector_spread()?.centre, constants(&s));
                std::f64::consts::PI / p.rel_wavenumber.abs()
            }
            Measure::Reflection | Measure::Transmission => {
                let s = self.scenario(set)?;
                let System::Barrier { potential, half_width } = s.system()? else {
                    return Err(Error::Format(format!("observable `{}` needs a barrier or well", o.id)));
                };
                let c = constants(&s);
                let pair = s.pair()?;
                let p = crate::kinematics::Partition::new(pair, s.particle_spread()?.centre, s.reflector_spread()?.centre, c);
                let co = eigen::barrier_coefficients(pair, p.rel_energy, potential, half_width, c);
                if o.measure == Measure::Reflection {
                    co.reflection()
                } else {
                    co.transmission()
                }
            }
            Measure::Estimate => {
                let s = self.scenario(set)?;
                let name = need(o.name.as_deref(), "name", &o.id)?;
                decoherence_input(&s)?
                    .estimates(constants(&s))?
                    .into_iter()
                    .find(|e| e.name == name)
                    .ok_or_else(|| Error::Format(format!("unknown estimate `{name}`")))?
                    .value
            }
            Measure::OracleL2 => {
                let s = self.scenario(set)?;
                let (errs, _) = commands::oracle_compare(&s)?;
                errs.last().map_or(nan, |e| e.1)
            }
        })
    }

    pub fn evaluate(&self, o: &Observable) -> Result<ReportLine> {
        let mut v = self.value(o)?;
        if let Some(r) = &o.reference {
            let mut other = o.clone();
            other.set = r.set.clone();
            other.time = r.time.unwrap_or(o.time);
            other.body = r.body.or(o.body);
            other.at = r.at.or(o.at);
            other.window = r.window.or(o.window);
            v /= self.value(&other)?;
        }
        Ok(ReportLine::check(o.id.clone(), v, o.expected, o.tolerance, o.compare))
    }
}

/// Run a preset and compare against its sidecar.
pub fn regression_run(id: &str) -> Result<Report> {
    let p = find(id)?;
    let obs = expected(p)?;
    let ev = Evaluator::new(p.scenario, p.id, &[]);
    let mut report = Report::new();
    for o in &obs {
        report.push(ev.evaluate(o)?);
    }
    Ok(report)
}
