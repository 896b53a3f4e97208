// Load a scenario from TOML text, write snapshots and a manifest, and read
// a snapshot back.

use twobody::commands;
use twobody::scenario::Scenario;
use twobody::snapshot::Snapshot;
use twobody::Result;

const SCENARIO: &str = r#"
[particle]
mass = 1.0
velocity = 1.0
velocity_spread = 0.1
position = -20.0

[reflector]
mass = 10.0
velocity = 0.0
velocity_spread = 0.05

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
"#;

pub fn run_example() -> Result<()> {
    let dir = std::env::temp_dir().join(format!("twobody-example-{}", std::process::id()));
    let mut s = Scenario::parse(SCENARIO, "example", &[("particle.velocity".into(), "1.2".into())])?;
    s.output_dir = dir.clone();
    let out = commands::wavegroup(&s)?;
    print!("{}", out.report);
    let back = Snapshot::read_csv(&out.files[0])?;
    println!("read back {}x{} snapshot at t = {}", back.grid.x1.n, back.grid.x2.n, back.t);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
