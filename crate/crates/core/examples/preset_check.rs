// Run a built-in preset against its expected observables.

use twobody::presets;
use twobody::Result;

pub fn run_example() -> Result<()> {
    println!("presets: {}", presets::ids().join(", "));
    for id in ["estimates", "fig3c"] {
        let report = presets::regression_run(id)?;
        println!("{id}:\n{report}");
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
