use curve_arith::fixture::{LoadedFixture, load_fixture};
use std::path::PathBuf;

/// Loads a fixture from the workspace-level fixtures directory.
pub fn fixture(name: &str) -> LoadedFixture {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    load_fixture(&path).unwrap_or_else(|err| panic!("fixture {name}: {err}"))
}
