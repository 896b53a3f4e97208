// Closed-form thermal and which-path estimates for a neutron and a small
// slab.

use twobody::decoherence::DecoherenceInput;
use twobody::units::NEUTRON_MASS;
use twobody::{Constants, Result};

pub fn run_example() -> Result<()> {
    let input = DecoherenceInput {
        particle_mass: NEUTRON_MASS,
        reflector_mass: 1e-13,
        probe_mass: NEUTRON_MASS,
        thickness: 1e-8,
        particle_coherence: 8e-8,
        temperature: 1.0,
        velocity: 1000.0,
        relaxation_time: 1e-3,
    };
    for e in input.estimates(Constants::SI)? {
        println!("{:<32} {:>12.4e} {}", e.name, e.value, e.unit);
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
