#[allow(dead_code)]
mod barrier_tunneling {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/barrier_tunneling.rs"));
}

#[allow(dead_code)]
mod coherence_transfer {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/coherence_transfer.rs"));
}

#[allow(dead_code)]
mod decoherence_estimates {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/decoherence_estimates.rs"));
}

#[allow(dead_code)]
mod dephased_spectrum {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dephased_spectrum.rs"));
}

#[allow(dead_code)]
mod flux_audit {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/flux_audit.rs"));
}

#[allow(dead_code)]
mod infinite_well {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/infinite_well.rs"));
}

#[allow(dead_code)]
mod mirror_eigenstate {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mirror_eigenstate.rs"));
}

#[allow(dead_code)]
mod mirror_wavegroup {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mirror_wavegroup.rs"));
}

#[allow(dead_code)]
mod preset_check {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/preset_check.rs"));
}

#[allow(dead_code)]
mod regime_ladder {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/regime_ladder.rs"));
}

#[allow(dead_code)]
mod scenario_files {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scenario_files.rs"));
}

#[allow(dead_code)]
mod slab_interference {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/slab_interference.rs"));
}

#[allow(dead_code)]
mod split_step_oracle {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/split_step_oracle.rs"));
}

#[test]
fn barrier_tunneling_runs() {
    barrier_tunneling::run_example().expect("barrier_tunneling example should run");
}

#[test]
fn coherence_transfer_runs() {
    coherence_transfer::run_example().expect("coherence_transfer example should run");
}

#[test]
fn decoherence_estimates_runs() {
    decoherence_estimates::run_example().expect("decoherence_estimates example should run");
}

#[test]
fn dephased_spectrum_runs() {
    dephased_spectrum::run_example().expect("dephased_spectrum example should run");
}

#[test]
fn flux_audit_runs() {
    flux_audit::run_example().expect("flux_audit example should run");
}

#[test]
fn infinite_well_runs() {
    infinite_well::run_example().expect("infinite_well example should run");
}

#[test]
fn mirror_eigenstate_runs() {
    mirror_eigenstate::run_example().expect("mirror_eigenstate example should run");
}

#[test]
fn mirror_wavegroup_runs() {
    mirror_wavegroup::run_example().expect("mirror_wavegroup example should run");
}

#[test]
fn preset_check_runs() {
    preset_check::run_example().expect("preset_check example should run");
}

#[test]
fn regime_ladder_runs() {
    regime_ladder::run_example().expect("regime_ladder example should run");
}

#[test]
fn scenario_files_runs() {
    scenario_files::run_example().expect("scenario_files example should run");
}

#[test]
fn slab_interference_runs() {
    slab_interference::run_example().expect("slab_interference example should run");
}

#[test]
fn split_step_oracle_runs() {
    split_step_oracle::run_example().expect("split_step_oracle example should run");
}
