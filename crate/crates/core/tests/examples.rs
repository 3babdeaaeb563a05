mod hilbert_table {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/hilbert_table.rs"
    ));
}

#[test]
fn hilbert_table_example_runs() {
    hilbert_table::run_example().expect("hilbert_table example should run");
}

mod cocycle_selftest {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/cocycle_selftest.rs"
    ));
}

#[test]
fn cocycle_selftest_example_runs() {
    cocycle_selftest::run_example().expect("cocycle_selftest example should run");
}

mod gl2f_splitting {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/gl2f_splitting.rs"
    ));
}

#[test]
fn gl2f_splitting_example_runs() {
    gl2f_splitting::run_example().expect("gl2f_splitting example should run");
}

mod genuine_characters {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/genuine_characters.rs"
    ));
}

#[test]
fn genuine_characters_example_runs() {
    genuine_characters::run_example().expect("genuine_characters example should run");
}

mod weil_index {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/weil_index.rs"
    ));
}

#[test]
fn weil_index_example_runs() {
    weil_index::run_example().expect("weil_index example should run");
}

mod packet_identities {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/packet_identities.rs"
    ));
}

#[test]
fn packet_identities_example_runs() {
    packet_identities::run_example().expect("packet_identities example should run");
}

mod complementary_whittaker {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/complementary_whittaker.rs"
    ));
}

#[test]
fn complementary_whittaker_example_runs() {
    complementary_whittaker::run_example().expect("complementary_whittaker example should run");
}

mod nilpotent_orbits {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/nilpotent_orbits.rs"
    ));
}

#[test]
fn nilpotent_orbits_example_runs() {
    nilpotent_orbits::run_example().expect("nilpotent_orbits example should run");
}
