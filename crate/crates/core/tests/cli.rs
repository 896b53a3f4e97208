use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use twobody::snapshot::Snapshot;

const SMALL: &str = r#"
[particle]
mass = 1.0
velocity = 1.0
velocity_spread = 0.1
position = -20.0

[reflector]
mass = 10.0
velocity = 0.0
velocity_spread = 0.05
position = 0.0

[system]
kind = "mirror"

[spectrum]
particle_nodes = 16
reflector_nodes = 16

[grid]
x1_min = -40.0
x1_max = 5.0
nx1 = 91
x2_min = -10.0
x2_max = 10.0
nx2 = 41

[times]
values = [0.0, 20.0]

[output]
directory = "small"
"#;

fn twobody(root: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twobody"))
        .args(args)
        .current_dir(root)
        .env("TWOBODY_OUTPUT_ROOT", root)
        .output()
        .expect("binary runs")
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("small.toml"), SMALL).unwrap();
    dir
}

#[test]
fn wavegroup_writes_snapshots_and_manifest() {
    let dir = setup();
    let out = twobody(dir.path(), &["wavegroup", "small.toml"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let base = dir.path().join("small");
    let snap = Snapshot::read_csv(&base.join("snapshot_001.csv")).unwrap();
    assert_eq!((snap.grid.x1.n, snap.grid.x2.n), (91, 41));
    assert_eq!(snap.t, 20.0);
    let manifest = fs::read_to_string(base.join("manifest.toml")).unwrap();
    let parsed: toml::Table = toml::from_str(&manifest).unwrap();
    assert_eq!(parsed["run"]["command"].as_str(), Some("wavegroup"));
    assert!(manifest.contains("defaults_applied"));
}

#[test]
fn overrides_are_recorded() {
    let dir = setup();
    let out = twobody(dir.path(), &["eigenstate", "small.toml", "--set", "particle.velocity=1.5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = fs::read_to_string(dir.path().join("small/manifest.toml")).unwrap();
    assert!(manifest.contains("particle.velocity"));
}

#[test]
fn unknown_key_is_a_usage_error_with_line() {
    let dir = setup();
    fs::write(dir.path().join("bad.toml"), SMALL.replace("kind = \"mirror\"", "kind = \"mirror\"\nshape = 2")).unwrap();
    let out = twobody(dir.path(), &["wavegroup", "bad.toml"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") && err.contains("shape"), "{err}");
}

#[test]
fn missing_grid_is_named() {
    let dir = setup();
    let cut = SMALL.split("[grid]").next().unwrap().to_string() + "[times]\nvalues = [0.0]\n";
    fs::write(dir.path().join("nogrid.toml"), cut).unwrap();
    let out = twobody(dir.path(), &["wavegroup", "nogrid.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid"));
}

#[test]
fn no_collision_is_reported() {
    let dir = setup();
    let out = twobody(dir.path(), &["eigenstate", "small.toml", "--set", "particle.velocity=-1.0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn marginals_and_audit_run() {
    let dir = setup();
    let out = twobody(dir.path(), &["marginals", "small.toml"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let m = fs::read_to_string(dir.path().join("small/marginal_x1_000.csv")).unwrap();
    assert!(m.starts_with("# t="));

    let out = twobody(dir.path(), &["audit", "small.toml", "--region", "-30:-2,-5:5", "--dt", "0.01", "--ladder"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{stdout}{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout.contains("relative_residual[0]") && stdout.contains("residual_order[0]"), "{stdout}");
}

#[test]
fn audit_region_outside_grid_is_rejected() {
    let dir = setup();
    let out = twobody(dir.path(), &["audit", "small.toml", "--region", "-100:0,-5:5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_writes_table() {
    let dir = setup();
    let out = twobody(dir.path(), &["sweep", "small.toml", "--param", "particle.velocity=0.8:1.2:3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = fs::read_to_string(dir.path().join("small/sweep.csv")).unwrap();
    let mut lines = table.lines();
    assert!(lines.next().unwrap().starts_with("# param="));
    assert_eq!(lines.filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn presets_list_show_and_check() {
    let dir = setup();
    let out = twobody(dir.path(), &["preset", "list"]);
    let ids = String::from_utf8_lossy(&out.stdout);
    assert!(ids.lines().any(|l| l == "fig1") && ids.lines().any(|l| l == "estimates"));

    let out = twobody(dir.path(), &["preset", "show", "estimates"]);
    fs::write(dir.path().join("estimates.toml"), &out.stdout).unwrap();
    let out = twobody(dir.path(), &["decoherence", "estimates.toml"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout.contains("slab_probe_separation"), "{stdout}");

    let out = twobody(dir.path(), &["preset", "check", "fig3c"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let out = twobody(dir.path(), &["preset", "check", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}
