// Direct split-step propagation of a free two-body packet compared with
// the exact Gaussian solution.

use ndarray::Array2;
use twobody::grid::{Axis, Grid};
use twobody::kinematics::Pair;
use twobody::oracle::{relative_l2, OraclePotential, SplitStep};
use twobody::packet::GaussianPacket;
use twobody::quadrature::VelocitySpread;
use twobody::{Complex64, Constants, Result};

pub fn run_example() -> Result<()> {
    let c = Constants::NATURAL;
    let grid = Grid::new(Axis::with_step(-40.0, 0.25, 256)?, Axis::with_step(-24.0, 0.1875, 256)?);
    let p1 = GaussianPacket::new(1.0, VelocitySpread::new(1.0, 0.3), -10.0, c);
    let p2 = GaussianPacket::new(3.0, VelocitySpread::new(-0.5, 0.2), 0.0, c);
    let exact = |t: f64| -> Array2<Complex64> {
        Array2::from_shape_fn((grid.x2.n, grid.x1.n), |(i, j)| p1.amplitude(grid.x1.at(j), t) * p2.amplitude(grid.x2.at(i), t))
    };
    let prop = SplitStep::new(Pair::new(1.0, 3.0)?, grid, 0.02, OraclePotential::None, c)?;
    let end = prop.propagate(&exact(-2.0), 200)?;
    println!("relative L2 distance after 200 steps: {:.2e}", relative_l2(&end, &exact(2.0)));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
