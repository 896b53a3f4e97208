// A single two-body eigenstate for a hard mirror, checked against the
// closed-form density 4 sin^2 of the relative phase.

use twobody::eigen::Eigenstate;
use twobody::kinematics::{Pair, Partition};
use twobody::{Constants, Result};

pub fn run_example() -> Result<()> {
    let c = Constants::NATURAL;
    let pair = Pair::new(1.0, 100.0)?;
    let (v, vv) = (1.0, 0.6);
    let state = Eigenstate::mirror(pair, v, vv, c)?;
    let p = Partition::new(pair, v, vv, c);
    println!("relative wavenumber {:.6}, fringe spacing {:.6}", p.rel_wavenumber, std::f64::consts::PI / p.rel_wavenumber);
    for x1 in [-12.0, -8.0, -4.0, -1.0, 0.0, 2.0] {
        let closed = 4.0 * (p.rel_wavenumber * x1).sin().powi(2);
        let closed = if x1 > 0.0 { 0.0 } else { closed };
        println!("x1 = {x1:>6}  pdf = {:.12}  closed form = {:.12}", state.pdf(x1, 0.0), closed);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
