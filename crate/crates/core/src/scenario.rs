//! Scenario files: TOML with a fixed schema.
//!
//! In SI mode every physical key carries its unit as a suffix
//! (`mass_kg`, `velocity_m_per_s`, `half_width_m`, `potential_j`, `values_s`,
//! `temperature_k`); in dimensionless mode the bare name is used. Unknown
//! keys and wrong-mode keys are rejected with the line they appear on.

use crate::grid::{Axis, Grid};
use crate::quadrature::{DephaseTarget, Dephasing, QuadratureRule, VelocitySpread};
use crate::units::UnitSystem;
use crate::wavegroup::Placement;
use crate::{Error, Pair, Result};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use toml::{Table, Value};

/// Environment variable that relocates relative output directories.
pub const OUTPUT_ROOT_VAR: &str = "TWOBODY_OUTPUT_ROOT";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dim {
    Mass,
    Velocity,
    Length,
    Energy,
    Time,
    Temperature,
}

impl Dim {
    fn suffix(self) -> &'static str {
        match self {
            Dim::Mass => "kg",
            Dim::Velocity => "m_per_s",
            Dim::Length => "m",
            Dim::Energy => "j",
            Dim::Time => "s",
            Dim::Temperature => "k",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Real(Option<Dim>),
    Reals(Option<Dim>),
    Int,
    Text,
    Flag,
}

pub const SECTIONS: [&str; 9] = ["units", "particle", "reflector", "system", "spectrum", "grid", "times", "output", "oracle"];

const SCHEMA: &[(&str, &str, Kind)] = &[
    ("units", "system", Kind::Text),
    ("particle", "mass", Kind::Real(Some(Dim::Mass))),
    ("particle", "velocity", Kind::Real(Some(Dim::Velocity))),
    ("particle", "velocity_spread", Kind::Real(Some(Dim::Velocity))),
    ("particle", "position", Kind::Real(Some(Dim::Length))),
    ("particle", "coherence_length", Kind::Real(Some(Dim::Length))),
    ("reflector", "mass", Kind::Real(Some(Dim::Mass))),
    ("reflector", "velocity", Kind::Real(Some(Dim::Velocity))),
    ("reflector", "velocity_spread", Kind::Real(Some(Dim::Velocity))),
    ("reflector", "position", Kind::Real(Some(Dim::Length))),
    ("reflector", "temperature", Kind::Real(Some(Dim::Temperature))),
    ("system", "kind", Kind::Text),
    ("system", "potential", Kind::Real(Some(Dim::Energy))),
    ("system", "half_width", Kind::Real(Some(Dim::Length))),
    ("system", "thickness", Kind::Real(Some(Dim::Length))),
    ("system", "reflection_amplitude", Kind::Real(None)),
    ("system", "opposite_signs", Kind::Flag),
    ("system", "level", Kind::Int),
    ("system", "spread_fraction", Kind::Real(None)),
    ("system", "probe_mass", Kind::Real(Some(Dim::Mass))),
    ("system", "relaxation_time", Kind::Real(Some(Dim::Time))),
    ("spectrum", "particle_nodes", Kind::Int),
    ("spectrum", "reflector_nodes", Kind::Int),
    ("spectrum", "span", Kind::Real(None)),
    ("spectrum", "dephase", Kind::Text),
    ("spectrum", "seed", Kind::Int),
    ("spectrum", "method", Kind::Text),
    ("grid", "x1_min", Kind::Real(Some(Dim::Length))),
    ("grid", "x1_max", Kind::Real(Some(Dim::Length))),
    ("grid", "nx1", Kind::Int),
    ("grid", "x2_min", Kind::Real(Some(Dim::Length))),
    ("grid", "x2_max", Kind::Real(Some(Dim::Length))),
    ("grid", "nx2", Kind::Int),
    ("times", "values", Kind::Reals(Some(Dim::Time))),
    ("output", "directory", Kind::Text),
    ("output", "prefix", Kind::Text),
    ("oracle", "dt", Kind::Real(Some(Dim::Time))),
    ("oracle", "wall_height", Kind::Real(Some(Dim::Energy))),
    ("oracle", "wall_width", Kind::Real(Some(Dim::Length))),
    ("oracle", "nx1", Kind::Int),
    ("oracle", "nx2", Kind::Int),
];

fn file_key(base: &str, kind: Kind, units: UnitSystem) -> String {
    match (kind, units) {
        (Kind::Real(Some(d)) | Kind::Reals(Some(d)), UnitSystem::Si) => format!("{base}_{}", d.suffix()),
        _ => base.to_string(),
    }
}

/// Line (1-based) of `key` inside `[section]`, if it can be found.
fn locate(text: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    for (i, line) in text.lines().enumerate() {
        let l = line.trim();
        if let Some(h) = l.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            current = h.trim().to_string();
            if key.is_empty() && current == section {
                return Some(i + 1);
            }
            continue;
        }
        if current == section {
            if let Some((k, _)) = l.split_once('=') {
                if k.trim() == key {
                    return Some(i + 1);
                }
            }
        }
    }
    None
}

fn at_line(text: &str, section: &str, key: &str, msg: String) -> Error {
    match locate(text, section, key) {
        Some(n) => Error::Scenario(format!("line {n}: {msg}")),
        None => Error::Scenario(msg),
    }
}

/// Parse a command-line value as TOML, falling back to a bare string.
fn parse_value(raw: &str) -> Value {
    let doc = format!("v = {raw}");
    match doc.parse::<Table>() {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| Value::String(raw.to_string())),
        Err(_) => Value::String(raw.to_string()),
    }
}

/// Kind of interaction between the bodies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum System {
    Free,
    Mirror,
    /// Positive potential is a barrier, negative a well.
    Barrier { potential: f64, half_width: f64 },
    InfiniteWell { level: u32, spread_fraction: f64, half_width: f64 },
    Slab { thickness: f64, amplitude: f64, opposite_signs: bool },
    /// No dynamics; only the closed-form estimates are used.
    Estimates,
}

impl System {
    pub fn name(&self) -> &'static str {
        match self {
            System::Free => "free",
            System::Mirror => "mirror",
            System::Barrier { .. } => "barrier",
            System::InfiniteWell { .. } => "infinite_well",
            System::Slab { .. } => "slab",
            System::Estimates => "estimates",
        }
    }
}

/// How the velocity integral is done.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Closed form where the model allows it, eigenstate sum otherwise.
    Auto,
    Sum,
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Body {
    pub mass: f64,
    pub velocity: Option<f64>,
    pub velocity_spread: Option<f64>,
    pub position: f64,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub source: String,
    pub units: UnitSystem,
    pub particle: Body,
    pub reflector: Body,
    pub particle_coherence: Option<f64>,
    pub temperature: Option<f64>,
    pub thickness: Option<f64>,
    pub probe_mass: Option<f64>,
    pub relaxation_time: Option<f64>,
    system: Option<System>,
    rule: Option<QuadratureRule>,
    pub method: Method,
    grid: Option<Grid>,
    times: Option<Vec<f64>>,
    pub output_dir: PathBuf,
    pub prefix: String,
    pub oracle_dt: Option<f64>,
    pub oracle_wall: Option<(f64, f64)>,
    pub oracle_points: Option<(usize, usize)>,
    /// Resolved value of every key, by `section.key`, as written in the
    /// manifest.
    pub resolved: BTreeMap<String, String>,
    /// Keys that were filled in with a default.
    pub defaults: Vec<String>,
    pub overrides: Vec<(String, String)>,
}

struct Reader<'a> {
    text: &'a str,
    units: UnitSystem,
    table: Table,
    resolved: BTreeMap<String, String>,
    defaults: Vec<String>,
}

impl<'a> Reader<'a> {
    fn section(&self, name: &str) -> Option<&Table> {
        self.table.get(name).and_then(|v| v.as_table())
    }

    fn has(&self, name: &str) -> bool {
        self.section(name).is_some()
    }

    fn kind(section: &str, base: &str) -> Kind {
        SCHEMA
            .iter()
            .find(|(s, k, _)| *s == section && *k == base)
            .map(|e| e.2)
            .expect("key in schema")
    }

    fn raw(&self, section: &str, base: &str) -> Option<(&Value, String)> {
        let key = file_key(base, Self::kind(section, base), self.units);
        self.section(section)?.get(&key).map(|v| (v, key))
    }

    fn record(&mut self, section: &str, base: &str, shown: String, defaulted: bool) {
        let key = file_key(base, Self::kind(section, base), self.units);
        let full = format!("{section}.{key}");
        if defaulted {
            self.defaults.push(full.clone());
        }
        self.resolved.insert(full, shown);
    }

    fn real(&mut self, section: &str, base: &str) -> Result<Option<f64>> {
        let Some((v, key)) = self.raw(section, base) else {
            return Ok(None);
        };
        let x = match v {
            Value::Float(f) => *f,
            Value::Integer(i) => *i as f64,
            _ => return Err(at_line(self.text, section, &key, format!("`{section}.{key}` must be a number"))),
        };
        if !x.is_finite() {
            return Err(at_line(self.text, section, &key, format!("`{section}.{key}` must be finite")));
        }
        self.record(section, base, format!("{x:e}"), false);
        Ok(Some(x))
    }

    fn real_or(&mut self, section: &str, base: &str, default: f64) -> Result<f64> {
        match self.real(section, base)? {
            Some(x) => Ok(x),
            None => {
                self.record(section, base, format!("{default:e}"), true);
                Ok(default)
            }
        }
    }

    fn required_real(&mut self, section: &str, base: &str) -> Result<f64> {
        self.real(section, base)?.ok_or_else(|| {
            let key = file_key(base, Self::kind(section, base), self.units);
            at_line(self.text, section, "", format!("missing key `{section}.{key}`"))
        })
    }

    fn int(&mut self, section: &str, base: &str) -> Result<Option<i64>> {
        let Some((v, key)) = self.raw(section, base) else {
            return Ok(None);
        };
        let Value::Integer(i) = v else {
            return Err(at_line(self.text, section, &key, format!("`{section}.{key}` must be an integer")));
        };
        let i = *i;
        self.record(section, base, i.to_string(), false);
        Ok(Some(i))
    }

    fn count(&mut self, section: &str, base: &str, default: Option<usize>) -> Result<usize> {
        match self.int(section, base)? {
            Some(i) if i >= 0 => Ok(i as usize),
            Some(i) => Err(at_line(self.text, section, base, format!("`{section}.{base}` must not be negative, got {i}"))),
            None => match default {
                Some(d) => {
                    self.record(section, base, d.to_string(), true);
                    Ok(d)
                }
                None => Err(at_line(self.text, section, "", format!("missing key `{section}.{base}`"))),
            },
        }
    }

    fn text_or(&mut self, section: &str, base: &str, default: Option<&str>) -> Result<Option<String>> {
        match self.raw(section, base) {
            Some((Value::String(s), _)) => {
                let s = s.clone();
                self.record(section, base, format!("{s:?}"), false);
                Ok(Some(s))
            }
            Some((_, key)) => Err(at_line(self.text, section, &key, format!("`{section}.{key}` must be a string"))),
            None => {
                if let Some(d) = default {
                    self.record(section, base, format!("{d:?}"), true);
                }
                Ok(default.map(str::to_string))
            }
        }
    }

    fn flag_or(&mut self, section: &str, base: &str, default: bool) -> Result<bool> {
        match self.raw(section, base) {
            Some((Value::Boolean(b), _)) => {
                let b = *b;
                self.record(section, base, b.to_string(), false);
                Ok(b)
            }
            Some((_, key)) => Err(at_line(self.text, section, &key, format!("`{section}.{key}` must be true or false"))),
            None => {
                self.record(section, base, default.to_string(), true);
                Ok(default)
            }
        }
    }

    fn reals(&mut self, section: &str, base: &str) -> Result<Option<Vec<f64>>> {
        let Some((v, key)) = self.raw(section, base) else {
            return Ok(None);
        };
        let bad = || at_line(self.text, section, &key, format!("`{section}.{key}` must be an array of numbers"));
        let arr = v.as_array().ok_or_else(bad)?;
        let mut out = Vec::with_capacity(arr.len());
        for x in arr {
            match x {
                Value::Float(f) if f.is_finite() => out.push(*f),
                Value::Integer(i) => out.push(*i as f64),
                _ => return Err(bad()),
            }
        }
        let shown = out.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(", ");
        self.record(section, base, format!("[{shown}]"), false);
        Ok(Some(out))
    }

    /// Reject unknown sections and keys, and keys written for the other
    /// unit system.
    fn check_keys(&self) -> Result<()> {
        for (name, value) in &self.table {
            if !SECTIONS.contains(&name.as_str()) {
                return Err(at_line(self.text, name, "", format!("unknown section [{name}]")));
            }
            let Some(t) = value.as_table() else {
                return Err(Error::Scenario(format!("`{name}` must be a section")));
            };
            for key in t.keys() {
                let ok = SCHEMA
                    .iter()
                    .any(|(s, base, kind)| s == name && file_key(base, *kind, self.units) == *key);
                if ok {
                    continue;
                }
                let other = match self.units {
                    UnitSystem::Si => UnitSystem::Dimensionless,
                    UnitSystem::Dimensionless => UnitSystem::Si,
                };
                let hint = SCHEMA
                    .iter()
                    .find(|(s, base, kind)| s == name && file_key(base, *kind, other) == *key)
                    .map(|(_, base, kind)| {
                        format!(
                            " (in {} units this key is written `{}`)",
                            if self.units == UnitSystem::Si { "si" } else { "dimensionless" },
                            file_key(base, *kind, self.units)
                        )
                    })
                    .unwrap_or_default();
                return Err(at_line(self.text, name, key, format!("unknown key `{name}.{key}`{hint}")));
            }
        }
        Ok(())
    }
}

fn apply_override(table: &mut Table, path: &str, value: Value) -> Result<()> {
    let (section, key) = path
        .split_once('.')
        .ok_or_else(|| Error::Scenario(format!("override `{path}` must look like section.key")))?;
    let sec = table
        .entry(section.to_string())
        .or_insert_with(|| Value::Table(Table::new()))
        .as_table_mut()
        .ok_or_else(|| Error::Scenario(format!("`{section}` is not a section")))?;
    sec.insert(key.to_string(), value);
    Ok(())
}

/// Split `section.key=value`.
pub fn split_assignment(s: &str) -> Result<(String, String)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| Error::Scenario(format!("expected section.key=value, got `{s}`")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

fn body(r: &mut Reader, section: &str) -> Result<Body> {
    Ok(Body {
        mass: r.required_real(section, "mass")?,
        velocity: r.real(section, "velocity")?,
        velocity_spread: r.real(section, "velocity_spread")?,
        position: r.real_or(section, "position", 0.0)?,
    })
}

impl Scenario {
    /// Parse scenario text. `name` is used for the default output
    /// directory; `overrides` are `section.key=value` assignments applied
    /// on top of the file.
    pub fn parse(text: &str, name: &str, overrides: &[(String, String)]) -> Result<Self> {
        let mut table: Table = text.parse().map_err(|e: toml::de::Error| {
            let line = e.span().map(|s| text[..s.start].lines().count().max(1));
            match line {
                Some(n) => Error::Scenario(format!("line {n}: {}", e.message())),
                None => Error::Scenario(e.message().to_string()),
            }
        })?;
        for (k, v) in overrides {
            apply_override(&mut table, k, parse_value(v))?;
        }
        let units_table = table.get("units").and_then(|v| v.as_table());
        let units = match units_table.and_then(|t| t.get("system")) {
            None => UnitSystem::Dimensionless,
            Some(Value::String(s)) if s == "si" => UnitSystem::Si,
            Some(Value::String(s)) if s == "dimensionless" => UnitSystem::Dimensionless,
            Some(other) => {
                return Err(at_line(text, "units", "system", format!("`units.system` must be \"si\" or \"dimensionless\", got {other}")))
            }
        };
        let mut r = Reader {
            text,
            units,
            table,
            resolved: BTreeMap::new(),
            defaults: Vec::new(),
        };
        r.check_keys()?;
        r.text_or("units", "system", Some("dimensionless"))?;
        for s in ["particle", "reflector"] {
            if !r.has(s) {
                return Err(Error::MissingSection(s.to_string()));
            }
        }
        let particle = body(&mut r, "particle")?;
        let reflector = body(&mut r, "reflector")?;
        let particle_coherence = r.real("particle", "coherence_length")?;
        let temperature = r.real("reflector", "temperature")?;

        let (system, thickness, probe_mass, relaxation_time) = if r.has("system") {
            let kind = r
                .text_or("system", "kind", None)?
                .ok_or_else(|| at_line(text, "system", "", "missing key `system.kind`".into()))?;
            let system = match kind.as_str() {
                "free" => System::Free,
                "mirror" => System::Mirror,
                "barrier" | "well" => {
                    let potential = r.required_real("system", "potential")?;
                    if (kind == "well") != (potential < 0.0) {
                        let key = file_key("potential", Kind::Real(Some(Dim::Energy)), units);
                        return Err(at_line(text, "system", &key, format!("a {kind} needs a {} potential", if kind == "well" { "negative" } else { "positive" })));
                    }
                    System::Barrier {
                        potential,
                        half_width: r.required_real("system", "half_width")?,
                    }
                }
                "infinite_well" => {
                    let level = r.int("system", "level")?.ok_or_else(|| at_line(text, "system", "", "missing key `system.level`".into()))?;
                    if level < 1 || level > u32::MAX as i64 {
                        return Err(at_line(text, "system", "level", format!("`system.level` must be a positive integer, got {level}")));
                    }
                    System::InfiniteWell {
                        level: level as u32,
                        spread_fraction: r.required_real("system", "spread_fraction")?,
                        half_width: r.required_real("system", "half_width")?,
                    }
                }
                "slab" => System::Slab {
                    thickness: r.required_real("system", "thickness")?,
                    amplitude: r.required_real("system", "reflection_amplitude")?,
                    opposite_signs: r.flag_or("system", "opposite_signs", true)?,
                },
                "estimates" => System::Estimates,
                other => {
                    return Err(at_line(
                        text,
                        "system",
                        "kind",
                        format!("unknown system kind `{other}`; expected free, mirror, barrier, well, infinite_well, slab or estimates"),
                    ))
                }
            };
            // Estimator inputs may ride along with any system.
            let thickness = r.real("system", "thickness")?;
            (Some(system), thickness, r.real("system", "probe_mass")?, r.real("system", "relaxation_time")?)
        } else {
            (None, None, None, None)
        };

        let (rule, method) = if r.has("spectrum") {
            let np = r.count("spectrum", "particle_nodes", None)?;
            let nr = r.count("spectrum", "reflector_nodes", None)?;
            let span = r.real_or("spectrum", "span", 4.0)?;
            let dephase = r.text_or("spectrum", "dephase", Some("none"))?.unwrap_or_default();
            let target = match dephase.as_str() {
                "none" => None,
                "reflector" => Some(DephaseTarget::Reflector),
                "particle" => Some(DephaseTarget::Particle),
                "both" => Some(DephaseTarget::Both),
                "joint" => Some(DephaseTarget::Joint),
                other => {
                    return Err(at_line(text, "spectrum", "dephase", format!("unknown dephase target `{other}`")));
                }
            };
            let seed = match target {
                Some(_) => {
                    let s = r.int("spectrum", "seed")?.ok_or_else(|| {
                        at_line(text, "spectrum", "", "a dephased spectrum needs `spectrum.seed`".into())
                    })?;
                    Some(s as u64)
                }
                None => {
                    let _ = r.int("spectrum", "seed")?;
                    None
                }
            };
            let method = match r.text_or("spectrum", "method", Some("auto"))?.as_deref() {
                Some("auto") | None => Method::Auto,
                Some("sum") => Method::Sum,
                Some("closed_form") => Method::ClosedForm,
                Some(other) => return Err(at_line(text, "spectrum", "method", format!("unknown method `{other}`"))),
            };
            let rule = QuadratureRule {
                particle_nodes: np,
                reflector_nodes: nr,
                span,
                dephasing: target.zip(seed).map(|(target, seed)| Dephasing { target, seed }),
            };
            (Some(rule), method)
        } else {
            (None, Method::Auto)
        };

        let grid = if r.has("grid") {
            let x1 = Axis::new(r.required_real("grid", "x1_min")?, r.required_real("grid", "x1_max")?, r.count("grid", "nx1", None)?);
            let x2 = Axis::new(r.required_real("grid", "x2_min")?, r.required_real("grid", "x2_max")?, r.count("grid", "nx2", None)?);
            let at = |e: Error| at_line(text, "grid", "", e.to_string());
            Some(Grid::new(x1.map_err(at)?, x2.map_err(at)?))
        } else {
            None
        };
        let times = if r.has("times") {
            let v = r
                .reals("times", "values")?
                .ok_or_else(|| at_line(text, "times", "", "missing key `times.values`".into()))?;
            if v.is_empty() {
                return Err(at_line(text, "times", "values", "`times.values` is empty".into()));
            }
            Some(v)
        } else {
            None
        };
        let default_dir = format!("out/{name}");
        let dir = r.text_or("output", "directory", Some(&default_dir))?.unwrap_or(default_dir);
        let prefix = r.text_or("output", "prefix", Some("snapshot"))?.unwrap_or_default();
        let oracle_dt = r.real("oracle", "dt")?;
        let wall = match (r.real("oracle", "wall_height")?, r.real("oracle", "wall_width")?) {
            (Some(h), Some(w)) => Some((h, w)),
            (None, None) => None,
            _ => return Err(at_line(text, "oracle", "", "wall height and width go together".into())),
        };
        let points = match (r.int("oracle", "nx1")?, r.int("oracle", "nx2")?) {
            (Some(a), Some(b)) if a > 1 && b > 1 => Some((a as usize, b as usize)),
            (None, None) => None,
            _ => return Err(at_line(text, "oracle", "", "oracle nx1 and nx2 go together and must exceed 1".into())),
        };
        let overrides = overrides.to_vec();
        Ok(Scenario {
            source: name.to_string(),
            units,
            particle,
            reflector,
            particle_coherence,
            temperature,
            thickness,
            probe_mass,
            relaxation_time,
            system,
            rule,
            method,
            grid,
            times,
            output_dir: PathBuf::from(dir),
            prefix,
            oracle_dt,
            oracle_wall: wall,
            oracle_points: points,
            resolved: r.resolved,
            defaults: r.defaults,
            overrides,
        })
    }

    pub fn load(path: &Path, overrides: &[(String, String)]) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
        Scenario::parse(&text, stem, overrides)
    }

    pub fn pair(&self) -> Result<Pair> {
        Pair::new(self.particle.mass, self.reflector.mass)
    }

    pub fn system(&self) -> Result<System> {
        self.system.ok_or_else(|| Error::MissingSection("system".into()))
    }

    pub fn rule(&self) -> Result<QuadratureRule> {
        self.rule.ok_or_else(|| Error::MissingSection("spectrum".into()))
    }

    pub fn grid(&self) -> Result<Grid> {
        self.grid.ok_or_else(|| Error::MissingSection("grid".into()))
    }

    pub fn times(&self) -> Result<&[f64]> {
        self.times.as_deref().ok_or_else(|| Error::MissingSection("times".into()))
    }

    fn spread(&self, body: &Body, name: &str) -> Result<VelocitySpread> {
        let v = body
            .velocity
            .ok_or_else(|| Error::Scenario(format!("missing key `{name}.{}`", self.key("velocity", Dim::Velocity))))?;
        let w = body
            .velocity_spread
            .ok_or_else(|| Error::Scenario(format!("missing key `{name}.{}`", self.key("velocity_spread", Dim::Velocity))))?;
        Ok(VelocitySpread::new(v, w))
    }

    fn key(&self, base: &str, d: Dim) -> String {
        file_key(base, Kind::Real(Some(d)), self.units)
    }

    pub fn particle_spread(&self) -> Result<VelocitySpread> {
        self.spread(&self.particle, "particle")
    }

    pub fn reflector_spread(&self) -> Result<VelocitySpread> {
        self.spread(&self.reflector, "reflector")
    }

    pub fn placement(&self) -> Placement {
        Placement {
            particle: self.particle.position,
            reflector: self.reflector.position,
        }
    }

    /// Output directory, placed under `TWOBODY_OUTPUT_ROOT` when that is
    /// set and the directory is relative.
    pub fn output_dir(&self) -> PathBuf {
        match std::env::var_os(OUTPUT_ROOT_VAR) {
            Some(root) if self.output_dir.is_relative() => PathBuf::from(root).join(&self.output_dir),
            _ => self.output_dir.clone(),
        }
    }

    /// Manifest text: every resolved key, which ones were defaulted, and
    /// the overrides applied.
    pub fn manifest(&self, command: &str) -> String {
        let mut out = String::new();
        out.push_str("[run]\n");
        out.push_str(&format!("command = {command:?}\n"));
        out.push_str(&format!("scenario = {:?}\n", self.source));
        out.push_str(&format!("version = {:?}\n", env!("CARGO_PKG_VERSION")));
        let seed = self.rule.and_then(|r| r.dephasing).map(|d| d.seed);
        match seed {
            Some(s) => out.push_str(&format!("seed = {s}\n")),
            None => out.push_str("seed = \"none\"\n"),
        }
        out.push_str(&format!("phase_stream = {}\n", crate::quadrature::PHASE_STREAM));
        let defaults: Vec<String> = self.defaults.iter().map(|d| format!("{d:?}")).collect();
        out.push_str(&format!("defaults_applied = [{}]\n", defaults.join(", ")));
        let ov: Vec<String> = self.overrides.iter().map(|(k, v)| format!("{:?}", format!("{k}={v}"))).collect();
        out.push_str(&format!("overrides = [{}]\n", ov.join(", ")));
        let mut current = "";
        for (k, v) in &self.resolved {
            let (s, key) = k.split_once('.').expect("section.key");
            if s != current {
                out.push_str(&format!("\n[{s}]\n"));
                current = s;
            }
            out.push_str(&format!("{key} = {v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
[particle]
mass = 1.0
velocity = 1.0
velocity_spread = 0.1

[reflector]
mass = 10.0
velocity = 0.0
velocity_spread = 0.01

[system]
kind = "mirror"

[spectrum]
particle_nodes = 8
reflector_nodes = 8

[grid]
x1_min = -10.0
x1_max = 0.0
nx1 = 11
x2_min = -1.0
x2_max = 1.0
nx2 = 3

[times]
values = [0.0]
"#;

    #[test]
    fn parses_and_records_defaults() {
        let s = Scenario::parse(BASIC, "basic", &[]).unwrap();
        assert_eq!(s.system().unwrap(), System::Mirror);
        assert!(s.defaults.contains(&"spectrum.span".to_string()));
        assert!(s.defaults.contains(&"units.system".to_string()));
        assert!(s.manifest("wavegroup").contains("defaults_applied"));
    }

    #[test]
    fn unknown_key_reports_line() {
        let text = BASIC.replace("kind = \"mirror\"", "kind = \"mirror\"\ncolour = 3");
        let e = Scenario::parse(&text, "x", &[]).unwrap_err().to_string();
        assert!(e.contains("line 14") && e.contains("colour"), "{e}");
    }

    #[test]
    fn si_mode_demands_suffixes() {
        let text = format!("[units]\nsystem = \"si\"\n{BASIC}");
        let e = Scenario::parse(&text, "x", &[]).unwrap_err().to_string();
        assert!(e.contains("in si units this key is written"), "{e}");
    }

    #[test]
    fn override_replaces_value() {
        let s = Scenario::parse(BASIC, "x", &[("particle.velocity".into(), "2.5".into())]).unwrap();
        assert_eq!(s.particle.velocity, Some(2.5));
    }

    #[test]
    fn missing_grid_is_named() {
        let text = BASIC.replace("[grid]", "[ignored]");
        assert!(Scenario::parse(&text, "x", &[]).is_err());
        let cut: String = BASIC.split("[grid]").next().unwrap().to_string() + "[times]\nvalues = [0.0]\n";
        let s = Scenario::parse(&cut, "x", &[]).unwrap();
        assert!(matches!(s.grid(), Err(Error::MissingSection(ref n)) if n == "grid"));
    }
}
