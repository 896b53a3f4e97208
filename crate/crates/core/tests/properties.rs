use proptest::prelude::*;
use std::f64::consts::PI;
use twobody::analysis::{self, Body, Profile};
use twobody::decoherence;
use twobody::eigen::{self, Eigenstate};
use twobody::grid::{Axis, Grid};
use twobody::kinematics::{Pair, Partition};
use twobody::packet::GaussianPacket;
use twobody::quadrature::VelocitySpread;
use twobody::report::Compare;
use twobody::scenario::Scenario;
use twobody::slab;
use twobody::snapshot::Snapshot;
use twobody::{Complex64, Constants};

fn sampled(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Profile {
    let h = (hi - lo) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| lo + h * i as f64).collect();
    let ys = xs.iter().map(|&x| f(x)).collect();
    Profile::new(xs, ys)
}

proptest! {
    #[test]
    fn cm_rel_round_trip(m in 0.01f64..100.0, mm in 0.01f64..1e4, x1 in -1e3f64..1e3, x2 in -1e3f64..1e3) {
        let pair = Pair::new(m, mm).unwrap();
        let (xc, xr) = pair.to_cm_rel(x1, x2);
        let (y1, y2) = pair.from_cm_rel(xc, xr);
        prop_assert!((y1 - x1).abs() <= 1e-9 * (1.0 + x1.abs() + x2.abs()));
        prop_assert!((y2 - x2).abs() <= 1e-9 * (1.0 + x1.abs() + x2.abs()));
    }

    #[test]
    fn partition_conserves_energy(m in 0.1f64..10.0, mm in 0.1f64..1e3, v in -5.0f64..5.0, vv in -5.0f64..5.0) {
        let c = Constants::NATURAL;
        let pair = Pair::new(m, mm).unwrap();
        let p = Partition::new(pair, v, vv, c);
        let lab = 0.5 * m * v * v + 0.5 * mm * vv * vv;
        prop_assert!((p.total_energy() - lab).abs() <= 1e-10 * (1.0 + lab));
    }

    #[test]
    fn barrier_is_unitary(
        m in 0.1f64..10.0, mm in 0.1f64..100.0,
        e in 1e-3f64..10.0, potential in -10.0f64..10.0, a in 0.01f64..5.0,
    ) {
        let co = eigen::barrier_coefficients(Pair::new(m, mm).unwrap(), e, potential, a, Constants::NATURAL);
        prop_assert!((co.reflection() + co.transmission() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn mirror_state_vanishes_at_and_beyond_the_wall(
        m in 0.1f64..10.0, ratio in 1.0f64..1e3, vv in -2.0f64..2.0, dv in 0.01f64..3.0,
        x2 in -50.0f64..50.0, beyond in 1e-6f64..50.0,
    ) {
        let pair = Pair::new(m, m * ratio).unwrap();
        let s = Eigenstate::mirror(pair, vv + dv, vv, Constants::NATURAL).unwrap();
        prop_assert!(s.pdf(x2, x2) < 1e-24);
        prop_assert_eq!(s.pdf(x2 + beyond, x2), 0.0);
        prop_assert!(s.pdf(x2 - beyond, x2) <= 4.0 + 1e-12);
    }

    #[test]
    fn visibility_ignores_overall_scale(k in 0.5f64..3.0, floor in 0.0f64..0.5, scale in 1e-3f64..1e3) {
        let p = sampled(|x| (k * x).sin().powi(2) + floor, 0.0, 40.0, 4001);
        let q = Profile::new(p.coords.clone(), p.values.iter().map(|y| y * scale).collect());
        let (a, b) = (analysis::visibility(&p).value, analysis::visibility(&q).value);
        prop_assert!((a - b).abs() < 1e-9);
        prop_assert!((a - 1.0 / (1.0 + 2.0 * floor)).abs() < 1e-3);
    }

    #[test]
    fn fringe_spacing_of_pure_fringe(k in 0.5f64..3.0, phase in 0.0f64..3.0) {
        let p = sampled(|x| (k * x + phase).sin().powi(2), 0.0, 60.0, 6001);
        let d = analysis::fringe_spacing(&p).unwrap();
        prop_assert!((d / (PI / k) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn marginals_integrate_to_the_norm(
        v1 in -1.0f64..1.0, dv1 in 0.2f64..0.6, v2 in -1.0f64..1.0, dv2 in 0.2f64..0.6, t in -2.0f64..2.0,
    ) {
        let c = Constants::NATURAL;
        let grid = Grid::new(Axis::new(-25.0, 25.0, 201).unwrap(), Axis::new(-20.0, 20.0, 161).unwrap());
        let p1 = GaussianPacket::new(1.0, VelocitySpread::new(v1, dv1), 0.0, c);
        let p2 = GaussianPacket::new(2.0, VelocitySpread::new(v2, dv2), 0.0, c);
        let at = |t: f64| {
            let psi = ndarray::Array2::from_shape_fn((grid.x2.n, grid.x1.n), |(i, j)| {
                p1.amplitude(grid.x1.at(j), t) * p2.amplitude(grid.x2.at(i), t)
            });
            Snapshot::from_amplitude(t, grid, &psi)
        };
        let snap = at(t);
        let n = snap.norm();
        let a = analysis::marginal(&snap, Body::Particle).integral();
        let b = analysis::marginal(&snap, Body::Reflector).integral();
        prop_assert!((a / n - 1.0).abs() < 1e-9 && (b / n - 1.0).abs() < 1e-9);
        prop_assert!((n / at(0.0).norm() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn slab_harmonic_repeats_with_velocity(v in 100.0f64..3000.0, d in 1e-9f64..1e-7) {
        let c = Constants::SI;
        let pair = Pair::new(1.675e-27, 1e-13).unwrap();
        let period = PI * c.hbar * pair.total() / (pair.particle_mass * pair.reflector_mass * d);
        let a = slab::slab_harmonic(pair, v, 0.0, d, c).unwrap().exact;
        let b = slab::slab_harmonic(pair, v + period, 0.0, d, c).unwrap().exact;
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn recoil_offset_meets_thermal_wavelength_at_the_bound(m in 1e-27f64..1e-24, mm in 1e-16f64..1e-8, d in 1e-9f64..1e-6) {
        let c = Constants::SI;
        let pair = Pair::new(m, mm).unwrap();
        let t = slab::overlap_temperature_bound(pair, d, c);
        let lam = decoherence::thermal_wavelength(mm, t, c);
        prop_assert!((slab::recoil_offset(pair, d) / lam - 1.0).abs() < 1e-10);
    }

    #[test]
    fn factor_comparison_is_symmetric(x in 1e-3f64..1e3, f in 1.01f64..10.0) {
        prop_assert_eq!(Compare::Factor.holds(x, 1.0, f), Compare::Factor.holds(1.0 / x, 1.0, f));
    }

    #[test]
    fn override_sets_value(v in 0.1f64..10.0) {
        let text = "[particle]\nmass = 1.0\nvelocity = 1.0\n[reflector]\nmass = 2.0\n";
        let s = Scenario::parse(text, "p", &[("particle.velocity".into(), format!("{v:e}"))]).unwrap();
        prop_assert_eq!(s.particle.velocity, Some(v));
    }
}

#[test]
fn free_eigenstate_has_unit_modulus() {
    let s = Eigenstate::free(Pair::new(1.0, 3.0).unwrap(), 0.7, -0.2, Constants::NATURAL);
    for &(x1, x2) in &[(0.0, 0.0), (-5.0, 3.0), (12.5, -7.25)] {
        assert!((s.psi(x1, x2, 1.5).norm() - 1.0).abs() < 1e-14);
    }
    assert_eq!(s.relative(0.0), Complex64::new(1.0, 0.0));
}
