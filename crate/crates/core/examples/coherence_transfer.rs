// Equal masses exchange their velocity distributions in the collision, so
// the marginal widths swap. A heavy reflector leaves the particle alone.

use twobody::analysis::{self, Body};
use twobody::grid::{Axis, Grid};
use twobody::image::ImageModel;
use twobody::kinematics::Pair;
use twobody::quadrature::VelocitySpread;
use twobody::wavegroup::{image_group, Field, Placement};
use twobody::{Constants, Result};

fn widths(mm: f64, grid: &Grid, t: f64) -> Result<(f64, f64)> {
    let group = image_group(
        Pair::new(1.0, mm)?,
        ImageModel::mirror(),
        VelocitySpread::new(1.0, 1.0 / 300.0),
        VelocitySpread::new(0.0, 10.0 / 300.0),
        Placement::default(),
        Constants::NATURAL,
    );
    let snap = group.snapshot(grid, t);
    let w = |b| analysis::marginal(&snap, b).moments().map_or(f64::NAN, |m| m.1);
    Ok((w(Body::Particle), w(Body::Reflector)))
}

pub fn run_example() -> Result<()> {
    let grid = Grid::new(Axis::new(-2200.0, 600.0, 500)?, Axis::new(-600.0, 2200.0, 500)?);
    let (p0, r0) = widths(1.0, &grid, -1200.0)?;
    let (p1, r1) = widths(1.0, &grid, 1200.0)?;
    println!("M = m : before particle {p0:.1} reflector {r0:.1}; after particle {p1:.1} reflector {r1:.1}");

    let heavy = Grid::new(Axis::new(-2300.0, 200.0, 500)?, Axis::new(-180.0, 330.0, 500)?);
    let (h0, _) = widths(20.0, &heavy, -1200.0)?;
    let (h1, _) = widths(20.0, &heavy, 1200.0)?;
    println!("M = 20m: particle width {h0:.1} -> {h1:.1}");
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
