// Random phases on the reflector's velocity components remove the
// particle-only fringes that the phased group shows.

use twobody::analysis::{self, Body};
use twobody::grid::{Axis, Grid};
use twobody::kinematics::Pair;
use twobody::quadrature::{make_quadrature, DephaseTarget, QuadratureRule, VelocitySpread};
use twobody::wavegroup::{Field, Placement, Wavegroup};
use twobody::{Constants, Result};

pub fn run_example() -> Result<()> {
    let c = Constants::NATURAL;
    let pair = Pair::new(1.0, 200.0)?;
    let rule = QuadratureRule {
        particle_nodes: 24,
        reflector_nodes: 192,
        span: 4.0,
        dephasing: None,
    };
    let grid = Grid::new(Axis::new(-60.0, 2.0, 400)?, Axis::new(-64.0, 64.0, 480)?);
    let (p, r) = (VelocitySpread::new(1.0, 0.05), VelocitySpread::new(0.0, 0.01));
    for (label, rule) in [("phased", rule), ("dephased", rule.with_dephasing(DephaseTarget::Reflector, 7))] {
        let group = Wavegroup::mirror(pair, &make_quadrature(p, r, &rule)?, Placement::default(), c)?;
        let snap = group.snapshot(&grid, 0.0);
        let vis = analysis::visibility(&analysis::marginal(&snap, Body::Particle).window(-40.0, -1.0));
        println!("{label:>8}: particle marginal visibility {:.3}", vis.value);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
