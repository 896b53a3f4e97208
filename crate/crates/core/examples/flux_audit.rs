// Probability balance on a rectangle: rate of change inside against the
// current through the edges, and how the residual shrinks with dt.

use twobody::audit::{dt_ladder, flux_audit, ladder_slope, AuditOptions, Rectangle};
use twobody::kinematics::Pair;
use twobody::quadrature::{make_quadrature, QuadratureRule, VelocitySpread};
use twobody::wavegroup::{Placement, Wavegroup};
use twobody::{Constants, Result};

pub fn run_example() -> Result<()> {
    let c = Constants::NATURAL;
    let pair = Pair::new(1.0, 100.0)?;
    let spectrum = make_quadrature(VelocitySpread::new(1.0, 0.025), VelocitySpread::new(0.6, 0.0005), &QuadratureRule::square(16))?;
    let group = Wavegroup::mirror(pair, &spectrum, Placement::default(), c)?;
    let region = Rectangle::new((-40.0, -4.0), (-20.0, 20.0))?;
    let opts = AuditOptions::default();
    let a = flux_audit(&group, region, 0.0, 0.01, opts)?;
    println!(
        "P = {:.6e}, dP/dt = {:.6e}, flux x1 = {:.6e}, flux x2 = {:.6e}, relative residual = {:.2e}",
        a.probability,
        a.dp_dt,
        a.flux_x1,
        a.flux_x2,
        a.relative_residual()
    );
    let ladder = dt_ladder(&group, region, 0.0, &[8.0, 4.0, 2.0], opts)?;
    println!("residual order in dt: {:.3}", ladder_slope(&ladder).unwrap_or(f64::NAN));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
