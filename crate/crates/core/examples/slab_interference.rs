// Neutron reflecting from both faces of a thin slab: the interference
// factor, its period in velocity, the recoil offset and the temperature
// below which the two reflected slab states still overlap.

use twobody::kinematics::Pair;
use twobody::slab;
use twobody::units::NEUTRON_MASS;
use twobody::{Constants, Result};

pub fn run_example() -> Result<()> {
    let c = Constants::SI;
    let (mm, d) = (1e-13, 1e-8);
    let pair = Pair::new(NEUTRON_MASS, mm)?;
    println!("recoil offset 2mD/M = {:.3e} m", slab::recoil_offset(pair, d));
    println!("overlap temperature bound = {:.3e} K", slab::overlap_temperature_bound(pair, d, c));
    let half = std::f64::consts::PI * c.hbar / (2.0 * d * NEUTRON_MASS);
    println!("half period in particle velocity = {half:.3} m/s");
    for v in [1440.0, 1444.0, 1448.0, 1452.0, 1456.0, 1458.0] {
        let h = slab::slab_harmonic(pair, v, 1e-3, d, c)?;
        println!("v = {v:>6} m/s  sin^2 = {:.4}  (light limit {:.4})", h.exact, h.light_limit);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
