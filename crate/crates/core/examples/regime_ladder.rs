// Particle-marginal fringe visibility as the reflector velocity spread
// grows relative to the particle's.

use twobody::analysis::{self, Body};
use twobody::grid::{Axis, Grid};
use twobody::image::ImageModel;
use twobody::kinematics::Pair;
use twobody::quadrature::VelocitySpread;
use twobody::wavegroup::{image_group, Field, Placement};
use twobody::{Constants, Result};

pub fn run_example() -> Result<()> {
    let c = Constants::NATURAL;
    let (m, mm, dv) = (1.0, 200.0, 0.05);
    for ratio in [80.0, 20.0, 5.0, 1.0, 0.4] {
        let dvv = dv / ratio;
        let s2 = 1.0 / (2f64.sqrt() * mm * dvv);
        let grid = Grid::new(Axis::new(-60.0, 2.0, 640)?, Axis::new(-6.0 * s2 - 0.05, 6.0 * s2 + 0.8, 300)?);
        let group = image_group(
            Pair::new(m, mm)?,
            ImageModel::mirror(),
            VelocitySpread::new(1.0, dv),
            VelocitySpread::new(0.0, dvv),
            Placement::default(),
            c,
        );
        let snap = group.snapshot(&grid, 0.0);
        let vis = analysis::visibility(&analysis::marginal(&snap, Body::Particle).window(-40.0, -1.0));
        let bimodal = analysis::two_peaks(&analysis::slice(&snap, Body::Reflector, -15.0), 0.1).is_some();
        println!("spread ratio {ratio:>5}: marginal visibility {:.3}, reflector slice bimodal: {bimodal}", vis.value);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
