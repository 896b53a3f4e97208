// A particle bound in a moving infinite well: a band of modes around
// n = 50. The centroids bounce while the grid norm stays put.

use twobody::analysis::{centroid_track, Body, Conditioning};
use twobody::grid::{Axis, Grid};
use twobody::kinematics::Pair;
use twobody::quadrature::VelocitySpread;
use twobody::wavegroup::{Field, Placement, Wavegroup, WellSpectrum};
use twobody::{Constants, Result};

pub fn run_example() -> Result<()> {
    let well = WellSpectrum {
        n0: 50,
        spread_fraction: 1.0 / 15.0,
        half_width: 1.0,
        reflector: VelocitySpread::new(10.0, 1.0 / 3.0),
        reflector_nodes: 16,
        span: 4.0,
        placement: Placement::default(),
    };
    let group = Wavegroup::infinite_well(Pair::new(1.0, 10.0)?, &well, Constants::NATURAL)?;
    let grid = Grid::new(Axis::new(-1.7, 2.6, 400)?, Axis::new(-0.7, 1.6, 200)?);
    let times = [0.0, 0.01, 0.02, 0.03, 0.04, 0.05];
    let particle = centroid_track(&group, &grid, &times, Body::Particle, Conditioning::MarginalOnly);
    let reflector = centroid_track(&group, &grid, &times, Body::Reflector, Conditioning::MarginalOnly);
    for ((t, p), (_, r)) in particle.iter().zip(&reflector) {
        println!("t = {t:.2}: particle {:.3}, reflector {:.3}, norm {:.4}", p.unwrap_or(f64::NAN), r.unwrap_or(f64::NAN), group.snapshot(&grid, *t).norm());
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
