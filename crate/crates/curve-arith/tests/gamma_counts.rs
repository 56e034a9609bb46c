//! Concordance between the curve engine and the abstract lattice engine:
//! the number of points and subgroups the curve machinery finds on fully
//! rational N-torsion must match what the arithmetic functions predict for
//! (Z/N)².

mod common;

use common::fixture;
use curve_arith::curve::{CurvePoint, exact_order_check, gamma0_check, gamma1_check};
use level_lattice::arith::{euler_phi, psi_index};
use level_lattice::{Subgroup, enumerate_subgroups};
use std::collections::BTreeSet;

#[test]
fn exact_order_point_counts() {
    for (name, n) in [("torsor_n3.toml", 3u64), ("torsor_n5.toml", 5), ("torsor_n7.toml", 7)] {
        let fx = fixture(name);
        let e = &fx.curve;
        let count = e
            .enumerate_points()
            .iter()
            .filter(|point| exact_order_check(e, point, n).unwrap())
            .count() as u64;
        assert_eq!(count, euler_phi(n) * psi_index(n), "{name}");
        // Those are exactly the points passing the Γ₁ test.
        let gamma1 = e
            .enumerate_points()
            .iter()
            .filter(|point| gamma1_check(e, point, n).unwrap())
            .count() as u64;
        assert_eq!(gamma1, count, "{name}");
    }
}

#[test]
fn cyclic_subgroup_counts_match_psi() {
    for (name, n) in [("torsor_n3.toml", 3u64), ("torsor_n5.toml", 5), ("torsor_n7.toml", 7)] {
        let fx = fixture(name);
        let e = &fx.curve;
        let mut subgroups: BTreeSet<Vec<CurvePoint>> = BTreeSet::new();
        for point in e.enumerate_points() {
            if e.point_order(&point) == n {
                let mut d = e.cyclic_subgroup(&point);
                d.sort();
                subgroups.insert(d);
            }
        }
        assert_eq!(subgroups.len() as u64, psi_index(n), "{name}");
        for d in &subgroups {
            assert!(gamma0_check(e, d, n).unwrap(), "{name}");
        }
    }
}

#[test]
fn lattice_engine_agrees_with_the_curve_engine() {
    // Cyclic order-N subgroups of (Z/N)² counted abstractly.
    for (name, n) in [("torsor_n3.toml", 3u64), ("torsor_n5.toml", 5), ("torsor_n7.toml", 7)] {
        let fx = fixture(name);
        let e = &fx.curve;
        let abstract_count = enumerate_subgroups(n)
            .unwrap()
            .into_iter()
            .filter(|k| k.order() == n && is_cyclic(k, n))
            .count() as u64;
        let curve_count = {
            let mut subgroups: BTreeSet<Vec<CurvePoint>> = BTreeSet::new();
            for point in e.enumerate_points() {
                if e.point_order(&point) == n {
                    let mut d = e.cyclic_subgroup(&point);
                    d.sort();
                    subgroups.insert(d);
                }
            }
            subgroups.len() as u64
        };
        assert_eq!(abstract_count, curve_count, "{name}");
    }
}

/// A subgroup of (Z/N)² is cyclic iff some single element generates it.
fn is_cyclic(k: &Subgroup, n: u64) -> bool {
    let elems = k.elements();
    elems.iter().any(|&g| {
        let mut seen = BTreeSet::new();
        let mut acc = (0u64, 0u64);
        loop {
            seen.insert(acc);
            acc = ((acc.0 + g.0) % n, (acc.1 + g.1) % n);
            if acc == (0, 0) {
                break;
            }
        }
        seen.len() == elems.len()
    })
}
