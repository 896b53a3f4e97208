// Gaussian wavegroup reflecting from a heavy, slower mirror. Prints the
// overlap-region fringe spacing next to the plane-wave prediction.

use twobody::analysis::{self, Body};
use twobody::grid::{Axis, Grid};
use twobody::image::ImageModel;
use twobody::kinematics::Pair;
use twobody::quadrature::VelocitySpread;
use twobody::wavegroup::{image_group, Field, Placement};
use twobody::{Constants, Result};

pub fn run_example() -> Result<()> {
    let c = Constants::NATURAL;
    let pair = Pair::new(1.0, 100.0)?;
    let group = image_group(
        pair,
        ImageModel::mirror(),
        VelocitySpread::new(1.0, 0.025),
        VelocitySpread::new(0.6, 0.0005),
        Placement::default(),
        c,
    );
    let grid = Grid::new(Axis::new(-260.0, 100.0, 1441)?, Axis::new(-120.0, 120.0, 481)?);
    for t in [-150.0, 0.0, 150.0] {
        let snap = group.snapshot(&grid, t);
        let centre = |b| analysis::marginal(&snap, b).moments().map_or(f64::NAN, |m| m.0);
        println!(
            "t = {t:>6}: grid norm {:.4}, particle at {:.1}, reflector at {:.2}",
            snap.norm(),
            centre(Body::Particle),
            centre(Body::Reflector)
        );
    }
    let overlap = analysis::slice(&group.snapshot(&grid, 0.0), Body::Particle, 0.0).window(-60.0, -2.0);
    println!(
        "overlap spacing {:.4}, plane-wave spacing pi/(m(v - V)) = {:.4}",
        analysis::fringe_spacing(&overlap).unwrap_or(f64::NAN),
        std::f64::consts::PI / 0.4
    );
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
