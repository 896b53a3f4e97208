// A tall narrow Gaussian wall propagated on a grid should approach the
// hard-mirror wavegroup as the wall gets taller and thinner.

use twobody::commands::oracle_compare;
use twobody::scenario::Scenario;

const MIRROR: &str = r#"
[particle]
mass = 1.0
velocity = 1.0
velocity_spread = 0.25
position = 0.0

[reflector]
mass = 4.0
velocity = 0.0
velocity_spread = 0.1
position = 0.0

[system]
kind = "mirror"

[spectrum]
particle_nodes = 48
reflector_nodes = 48

[grid]
x1_min = -32.0
x1_max = 6.0
nx1 = 380
x2_min = -10.0
x2_max = 16.0
nx2 = 260

[times]
values = [-14.0, 4.0]

[oracle]
dt = 0.005
"#;

fn rung(height: f64, width: f64) -> f64 {
    let set = [
        ("oracle.wall_height".to_string(), height.to_string()),
        ("oracle.wall_width".to_string(), width.to_string()),
    ];
    let s = Scenario::parse(MIRROR, "surrogate", &set).unwrap();
    let (errs, drift) = oracle_compare(&s).unwrap();
    assert!(drift < 1e-8, "norm drift {drift:e}");
    errs[0].1
}

#[test]
fn gaussian_wall_ladder_converges_to_mirror() {
    let ladder = [(40.0, 0.6), (160.0, 0.3), (640.0, 0.15)];
    let errs: Vec<f64> = ladder.iter().map(|&(h, w)| rung(h, w)).collect();
    for pair in errs.windows(2) {
        assert!(pair[1] < 0.7 * pair[0], "{errs:?}");
    }
}
