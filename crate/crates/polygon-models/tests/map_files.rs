//! The shipped map-file fixtures drive both checks end to end.

use polygon_models::PolygonPicard;
use polygon_models::gamma::{Verdict, polygon_gamma_check, polygon_gamma1_check};
use polygon_models::mapfile::load_map_file;
use std::path::PathBuf;

fn file(name: &str) -> polygon_models::mapfile::PolygonMapFile {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    load_map_file(&path).unwrap_or_else(|err| panic!("{name}: {err}"))
}

#[test]
fn gamma1_fixture_on_the_5_gon() {
    let mf = file("phi_gamma1_f11.json");
    let model = PolygonPicard::new(mf.build_field().unwrap(), 5).unwrap();
    let phi1 = mf.phi1_point(&model).unwrap();
    assert!(polygon_gamma1_check(&model, &phi1, 5).unwrap());
    // The same point is not ample for level 10 on a 4-gon.
    let model4 = PolygonPicard::new(mf.build_field().unwrap(), 4).unwrap();
    let phi1 = mf.phi1_point(&model4).unwrap();
    assert!(!polygon_gamma1_check(&model4, &phi1, 5).unwrap());
}

#[test]
fn full_level_fixtures_hold() {
    for (name, n) in [
        ("phi_gamma_f7.json", 3),
        ("phi_gamma_f5_charp.json", 5),
        ("phi_gamma_f13_n6.json", 6),
    ] {
        let mf = file(name);
        let model = PolygonPicard::new(mf.build_field().unwrap(), n).unwrap();
        let (e1, e2) = mf.generator_pair(&model).unwrap();
        assert_eq!(
            polygon_gamma_check(&model, &e1, &e2, n).unwrap(),
            Verdict::Holds,
            "{name}"
        );
    }
}

#[test]
fn gamma1_entries_of_full_level_fixtures_are_ample() {
    for (name, n) in [
        ("phi_gamma_f7.json", 3),
        ("phi_gamma_f5_charp.json", 5),
        ("phi_gamma_f13_n6.json", 6),
    ] {
        let mf = file(name);
        let model = PolygonPicard::new(mf.build_field().unwrap(), n).unwrap();
        let phi1 = mf.phi1_point(&model).unwrap();
        assert!(polygon_gamma1_check(&model, &phi1, n).unwrap(), "{name}");
    }
}
