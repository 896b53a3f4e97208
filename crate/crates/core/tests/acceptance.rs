// Acceptance checks: one PASS/FAIL line per criterion, exit code 1 if any
// failed. Run with `cargo test --test acceptance`.

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_pcg::Pcg64;
use std::f64::consts::PI;
use std::time::{Duration, Instant};
use twobody::analysis::{self, Body, Profile};
use twobody::audit::{self, AuditOptions, Rectangle};
use twobody::commands::{self, build_model, build_sum, constants, slab_scenario};
use twobody::decoherence;
use twobody::eigen::{self, Eigenstate};
use twobody::kinematics::Pair;
use twobody::presets::{self, Evaluator};
use twobody::scenario::Scenario;
use twobody::slab;
use twobody::Constants;

struct Outcome {
    pass: bool,
    detail: String,
}

fn uniform(rng: &mut Pcg64, lo: f64, hi: f64) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    lo + (hi - lo) * u
}

fn preset(id: &str, overrides: &[(&str, &str)]) -> Scenario {
    let p = presets::find(id).expect("preset");
    let ov: Vec<(String, String)> = overrides.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    Scenario::parse(p.scenario, p.id, &ov).expect("preset parses")
}

fn observable(id: &str, name: &str) -> f64 {
    let p = presets::find(id).expect("preset");
    let obs = presets::expected(p).expect("sidecar");
    let o = obs.iter().find(|o| o.id == name).expect("observable in sidecar");
    Evaluator::new(p.scenario, p.id, &[]).evaluate(o).expect("observable evaluates").value
}

fn eigenstate_identity() -> Outcome {
    let c = Constants::NATURAL;
    let mut rng = Pcg64::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let m = uniform(&mut rng, 0.1, 10.0);
        let mm = m * uniform(&mut rng, 1.0, 1000.0);
        let vv = uniform(&mut rng, -2.0, 2.0);
        let v = vv + uniform(&mut rng, 0.01, 3.0);
        let pair = Pair::new(m, mm).unwrap();
        let s = Eigenstate::mirror(pair, v, vv, c).unwrap();
        let x2 = uniform(&mut rng, -100.0, 100.0);
        let x1 = x2 - uniform(&mut rng, 0.0, 50.0);
        let k = m * v / c.hbar;
        let kk = mm * vv / c.hbar;
        let expected = 4.0 * ((m * kk - mm * k) * (x1 - x2) / (m + mm)).sin().powi(2);
        // Errors are measured against the peak value of 4.
        worst = worst.max((s.pdf(x1, x2) - expected).abs() / 4.0);
    }
    Outcome {
        pass: worst < 1e-12,
        detail: format!("max relative error {worst:.2e} over 10000 points"),
    }
}

fn fringe_spacing() -> Outcome {
    let s = preset("fig1", &[]);
    let snap = build_model(&s).unwrap().field().snapshot(&s.grid().unwrap(), s.times().unwrap()[1]);
    let measured = analysis::fringe_spacing(&analysis::slice(&snap, Body::Particle, 0.0).window(-60.0, -2.0));
    let (v, vv) = (s.particle.velocity.unwrap(), s.reflector.velocity.unwrap());
    let predicted = PI * constants(&s).hbar / (s.particle.mass * (v - vv));
    match measured {
        Some(d) => Outcome {
            pass: (d / predicted - 1.0).abs() < 0.02,
            detail: format!("measured {d:.4}, predicted {predicted:.4}"),
        },
        None => Outcome {
            pass: false,
            detail: "no fringes found".into(),
        },
    }
}

fn slab_toggle() -> Outcome {
    let reflected = |v: f64| {
        let s = preset("fig5_slab", &[("particle.velocity_m_per_s", &v.to_string())]);
        let sc = slab_scenario(&s).unwrap();
        sc.reflected_probability(&s.grid().unwrap(), s.times().unwrap()[0], constants(&s)).unwrap()
    };
    let ratio = reflected(1458.0) / reflected(1448.0);

    let vs: Vec<f64> = (0..=160).map(|i| 1420.0 + 0.5 * i as f64).collect();
    let probs: Vec<f64> = vs.iter().map(|&v| reflected(v)).collect();
    let curve = Profile::new(vs, probs);
    let base = preset("fig5_slab", &[]);
    let c = constants(&base);
    let thickness = base.thickness.unwrap();
    let expected_half = PI * c.hbar / (2.0 * thickness * base.particle.mass);
    let half = analysis::fringe_spacing(&curve).map_or(f64::NAN, |p| 0.5 * p);
    let period_ok = (half / expected_half - 1.0).abs() < 0.03;
    Outcome {
        pass: ratio < 0.2 && period_ok,
        detail: format!(
            "reflected ratio v=1458/v=1448 {ratio:.3} (need < 0.2); sweep half period {half:.3} m/s vs {expected_half:.3} m/s (3%)"
        ),
    }
}

fn published_numbers() -> Outcome {
    let c = Constants::SI;
    let neutron = twobody::units::NEUTRON_MASS;
    let thermal = decoherence::thermal_wavelength(1e-13, 1.0, c);
    let offset = slab::recoil_offset(Pair::new(neutron, 1e-13).unwrap(), 1e-8);
    let zurek = decoherence::slab_zurek_ratio(Pair::new(neutron, 1e-8).unwrap(), 1e-8, 300.0, c);
    let mass = decoherence::slab_no_interference_mass(neutron, 1e-8, 100.0, c);
    let checks = [
        (thermal / 4e-16 - 1.0).abs() <= 0.05,
        (offset / 3.35e-22 - 1.0).abs() <= 0.01,
        (zurek / 5e14 - 1.0).abs() <= 0.10,
        (0.5e-24..=2e-24).contains(&mass),
    ];
    Outcome {
        pass: checks.iter().all(|&b| b),
        detail: format!(
            "thermal {thermal:.3e} [{}]; offset {offset:.3e} [{}]; zurek {zurek:.3e} [{}]; no-interference mass {mass:.3e} [{}]",
            ok(checks[0]),
            ok(checks[1]),
            ok(checks[2]),
            ok(checks[3])
        ),
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "off"
    }
}

fn conservation_audit() -> Outcome {
    let s = preset("fig1", &[("spectrum.particle_nodes", "24"), ("spectrum.reflector_nodes", "24")]);
    let wg = build_sum(&s).unwrap();
    let region = Rectangle::new((-40.0, -4.0), (-20.0, 20.0)).unwrap();
    let opts = AuditOptions::default();
    let a = audit::flux_audit(&wg, region, 0.0, 0.01, opts).unwrap();
    let ladder = audit::dt_ladder(&wg, region, 0.0, &[8.0, 4.0, 2.0], opts).unwrap();
    let slope = audit::ladder_slope(&ladder).unwrap_or(f64::NAN);
    let rel = a.relative_residual();
    Outcome {
        pass: rel < 1e-6 && (slope - 2.0).abs() < 0.1,
        detail: format!("relative residual {rel:.2e} (need < 1e-6); residual order in dt {slope:.3}"),
    }
}

fn barrier_coefficients() -> Outcome {
    let c = Constants::NATURAL;
    let mut rng = Pcg64::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let pair = Pair::new(uniform(&mut rng, 0.1, 10.0), uniform(&mut rng, 0.1, 100.0)).unwrap();
        let energy = uniform(&mut rng, 0.01, 5.0);
        let potential = uniform(&mut rng, -5.0, 5.0);
        let half_width = uniform(&mut rng, 0.05, 5.0);
        let co = eigen::barrier_coefficients(pair, energy, potential, half_width, c);
        worst = worst.max((co.reflection() + co.transmission() - 1.0).abs());
    }
    let free = Eigenstate::barrier(Pair::new(1.0, 5.0).unwrap(), 1.2, 0.2, 0.0, 2.5, c).unwrap();
    let zero = Complex64::new(0.0, 0.0);
    let reflected = free.regions[0].branches[1].coeff;
    let backward = free.regions[1].branches[1].coeff;
    let exact = reflected == zero && backward == zero;
    Outcome {
        pass: worst < 1e-10 && exact,
        detail: format!("max |R + T - 1| {worst:.2e} over 1000 draws; zero potential reflected {reflected}, backward {backward}"),
    }
}

fn oracle_equivalence() -> Outcome {
    let s = preset("fig6_well", &[]);
    let grid = commands::oracle_grid(&s).unwrap();
    let (errs, drift) = commands::oracle_compare(&s).unwrap();
    let last = errs.last().map_or(f64::NAN, |e| e.1);
    Outcome {
        pass: last < 0.01 && grid.x1.n <= 1024 && grid.x2.n <= 1024,
        detail: format!("relative L2 {last:.2e} at the final time on {}x{}; norm drift {drift:.1e}", grid.x1.n, grid.x2.n),
    }
}

fn coherence_transfer() -> Outcome {
    let a = observable("fig4_equal", "particle_after_over_reflector_before");
    let b = observable("fig4_equal", "reflector_after_over_particle_before");
    let swap = observable("fig4_equal", "particle_after_over_before");
    let control = observable("fig4_heavy", "particle_after_over_before");
    let swapped = (a - 1.0).abs() < 0.05 && (b - 1.0).abs() < 0.05;
    let unchanged = (control - 1.0).abs() < 0.2 * (swap - 1.0).abs();
    Outcome {
        pass: swapped && unchanged,
        detail: format!("equal masses: widths traded to {a:.4}, {b:.4}; particle width ratio {swap:.4} (equal) vs {control:.4} (M/m = 20)"),
    }
}

fn regime_ladder() -> Outcome {
    let wide = observable("fig3a", "marginal_visibility_x1");
    let mid = observable("fig3b", "marginal_visibility_x1");
    let narrow = observable("fig3c", "marginal_visibility_x1");
    let near = observable("fig3d", "reflector_slice_bimodal_near");
    let far = observable("fig3d", "reflector_slice_bimodal_far");
    Outcome {
        pass: wide < 0.1 && narrow > 0.5 && near == 1.0 && far == 1.0,
        detail: format!("visibility {wide:.3} (80), {mid:.3} (20), {narrow:.3} (5); bimodal reflector slices {near} {far}"),
    }
}

fn dephasing() -> Outcome {
    let run = |ov: &[(&str, &str)]| {
        let s = preset("fig3c_dephased", ov);
        let snap = build_model(&s).unwrap().field().snapshot(&s.grid().unwrap(), 0.0);
        analysis::visibility(&analysis::marginal(&snap, Body::Particle).window(-40.0, -1.0)).value
    };
    let dephased = run(&[]);
    let again = run(&[]);
    let phased = run(&[("spectrum.dephase", "\"none\"")]);
    Outcome {
        pass: dephased < 0.1 && phased > 0.5 && dephased == again,
        detail: format!("dephased {dephased:.4}, phased {phased:.4}, repeat identical: {}", dephased == again),
    }
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("eigenstate_identity", Duration::from_secs(1), eigenstate_identity),
        ("fringe_spacing", Duration::from_secs(30), fringe_spacing),
        ("slab_toggle", Duration::from_secs(120), slab_toggle),
        ("published_numbers", Duration::from_secs(1), published_numbers),
        ("conservation_audit", Duration::from_secs(60), conservation_audit),
        ("barrier_coefficients", Duration::from_secs(1), barrier_coefficients),
        ("oracle_equivalence", Duration::from_secs(300), oracle_equivalence),
        ("coherence_transfer", Duration::from_secs(120), coherence_transfer),
        ("regime_ladder", Duration::from_secs(180), regime_ladder),
        ("dephasing", Duration::from_secs(120), dephasing),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let out = check();
        let took = start.elapsed();
        let pass = out.pass && took <= budget;
        if !pass {
            failed += 1;
        }
        println!(
            "{} {name}: {} ({:.2} s, budget {} s)",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
