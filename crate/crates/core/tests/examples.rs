//! Runs every example in-process.

mod butterfly_rates {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/butterfly_rates.rs"));
}
mod codec_roundtrip {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/codec_roundtrip.rs"));
}
mod error_decay {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/error_decay.rs"));
}
mod field_tower {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/field_tower.rs"));
}
mod lemma_experiments {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lemma_experiments.rs"));
}
mod parameter_schedule {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/parameter_schedule.rs"));
}
mod quantum_oracle {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quantum_oracle.rs"));
}
mod two_way_network {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/two_way_network.rs"));
}

#[test]
fn butterfly_rates_runs() {
    butterfly_rates::run_example().unwrap();
}

#[test]
fn codec_roundtrip_runs() {
    codec_roundtrip::run_example().unwrap();
}

#[test]
fn error_decay_runs() {
    error_decay::run_example().unwrap();
}

#[test]
fn field_tower_runs() {
    field_tower::run_example().unwrap();
}

#[test]
fn lemma_experiments_runs() {
    lemma_experiments::run_example().unwrap();
}

#[test]
fn parameter_schedule_runs() {
    parameter_schedule::run_example().unwrap();
}

#[test]
fn quantum_oracle_runs() {
    quantum_oracle::run_example().unwrap();
}

#[test]
fn two_way_network_runs() {
    two_way_network::run_example().unwrap();
}
