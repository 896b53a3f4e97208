// Wavegroup crossing a rectangular barrier and a well. Reflection and
// transmission of the central component, plus the grid norm before and
// after.

use twobody::eigen;
use twobody::grid::{Axis, Grid};
use twobody::kinematics::{Pair, Partition};
use twobody::quadrature::{make_quadrature, QuadratureRule, VelocitySpread};
use twobody::wavegroup::{Field, Placement, Wavegroup};
use twobody::{Constants, Result};

pub fn run_example() -> Result<()> {
    let c = Constants::NATURAL;
    let pair = Pair::new(1.0, 5.0)?;
    let spectrum = make_quadrature(VelocitySpread::new(1.2, 0.125), VelocitySpread::new(0.2, 0.125 / 1.5), &QuadratureRule::square(48))?;
    let grid = Grid::new(Axis::new(-102.4, 102.0, 256)?, Axis::new(-41.2, 61.0, 256)?);
    let e = Partition::new(pair, 1.2, 0.2, c).rel_energy;
    for potential in [0.32051282051282054, -1.0416666666666667] {
        let co = eigen::barrier_coefficients(pair, e, potential, 2.5, c);
        let group = Wavegroup::barrier(pair, &spectrum, Placement::default(), potential, 2.5, c)?;
        let before = group.snapshot(&grid, -40.0).norm();
        let after = group.snapshot(&grid, 40.0).norm();
        println!(
            "potential {potential:+.4}: R = {:.4}, T = {:.4}, grid norm {before:.4} -> {after:.4}",
            co.reflection(),
            co.transmission()
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
