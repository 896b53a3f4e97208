// Values computed outside this crate (30-digit arithmetic, textbook
// formulas) and frozen here.

use twobody::decoherence;
use twobody::eigen;
use twobody::kinematics::{Pair, Partition};
use twobody::slab;
use twobody::units::NEUTRON_MASS;
use twobody::Constants;

fn close(got: f64, want: f64, rel: f64) {
    assert!((got / want - 1.0).abs() <= rel, "got {got:e}, want {want:e}");
}

#[test]
fn rectangular_well_and_barrier_transmission() {
    let c = Constants::NATURAL;
    let pair = Pair::new(1.0, 5.0).unwrap();
    let e = Partition::new(pair, 1.2, 0.2, c).rel_energy;
    close(e, 0.4166666666666667, 1e-14);

    let well = eigen::barrier_coefficients(pair, e, -1.0416666666666667, 2.5, c);
    close(well.transmission(), 0.692097275283130578, 1e-12);
    let bump = eigen::barrier_coefficients(pair, e, 0.32051282051282054, 2.5, c);
    close(bump.transmission(), 0.653921404226408006, 1e-12);
    let tunnel = eigen::barrier_coefficients(pair, e, 1.0, 1.0, c);
    close(tunnel.transmission(), 0.0726410502266406706, 1e-12);
    close(tunnel.reflection(), 1.0 - 0.0726410502266406706, 1e-12);
}

#[test]
fn mirror_fringe_spacing_heavy_reflector() {
    let c = Constants::NATURAL;
    let p = Partition::new(Pair::new(1.0, 100.0).unwrap(), 1.0, 0.6, c);
    close(std::f64::consts::PI / p.rel_wavenumber, 7.93252145031422793, 1e-14);
}

#[test]
fn neutron_slab_numbers() {
    let c = Constants::SI;
    let pair = Pair::new(NEUTRON_MASS, 1e-13).unwrap();
    close(decoherence::thermal_wavelength(1e-13, 1.0, c), 3.98748801070462020e-16, 1e-13);
    close(slab::recoil_offset(pair, 1e-8), 3.35e-22, 1e-14);
    close(slab::overlap_temperature_bound(pair, 1e-8, c), 1.41680201697599370e12, 1e-13);
    let h1 = slab::slab_harmonic(pair, 1448.0, 1e-3, 1e-8, c).unwrap();
    let h2 = slab::slab_harmonic(pair, 1458.0, 1e-3, 1e-8, c).unwrap();
    close(h1.exact, 0.368811122908515621, 1e-9);
    close(h2.exact, 0.614199741343043775, 1e-9);
}

#[test]
fn decoherence_estimates() {
    let c = Constants::SI;
    let heavy = Pair::new(NEUTRON_MASS, 1e-8).unwrap();
    close(decoherence::slab_zurek_ratio(heavy, 1e-8, 300.0, c), 4.72267338991997901e14, 1e-12);
    close(decoherence::slab_no_interference_mass(NEUTRON_MASS, 1e-8, 100.0, c), 7.05814918399388475e-24, 1e-12);
    close(decoherence::reflection_vs_thermal_ratio(NEUTRON_MASS, 100.0, 1e-10, 10.0, c), 1.42551952473701677e-9, 1e-12);
    let cloud = Pair::new(1.4431606e-19, 1e-6).unwrap();
    close(decoherence::particle_fringe_loss_length(cloud, 10.0, c), 1.38151222071355752e-7, 1e-12);
}
