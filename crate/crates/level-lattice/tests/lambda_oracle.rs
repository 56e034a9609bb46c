//! Structure oracles for labels and their classes.
//!
//! The label list of K is recomputed here from first principles (cyclicity
//! via single-generator coset closures), and the class partition is
//! recomputed from its predicted normal form: one class per subgroup M with
//! cyclic pair quotient, whose members are exactly the pairs (K, M) with
//! K ≤ M and M/K cyclic. The union-find construction must agree verbatim.

use level_lattice::{Subgroup, enumerate_subgroups, label_set, lambda_classes};
use proptest::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

type Triple = (u64, u64, u64);

fn closure(n: u64, gens: &[(u64, u64)]) -> BTreeSet<(u64, u64)> {
    let mut set: BTreeSet<(u64, u64)> = BTreeSet::new();
    set.insert((0, 0));
    let mut work: Vec<(u64, u64)> = vec![(0, 0)];
    while let Some((x, y)) = work.pop() {
        for &(gx, gy) in gens {
            let next = ((x + gx) % n, (y + gy) % n);
            if set.insert(next) {
                work.push(next);
            }
        }
    }
    set
}

/// Whether M/K is cyclic, decided by searching for a single coset
/// generator: some m ∈ M with ⟨m⟩ + K = M.
fn quotient_cyclic_bruteforce(k: &Subgroup, m: &Subgroup) -> bool {
    let n = k.modulus();
    let k_elems: Vec<(u64, u64)> = k.elements();
    let m_elems: BTreeSet<(u64, u64)> = m.elements().into_iter().collect();
    m_elems.iter().any(|&cand| {
        let mut gens = k_elems.clone();
        gens.push(cand);
        closure(n, &gens) == m_elems
    })
}

#[test]
fn label_sets_match_bruteforce() {
    for pn in [2u64, 3, 4, 5, 8, 9] {
        let subs = enumerate_subgroups(pn).unwrap();
        for k in &subs {
            let expected: BTreeSet<Triple> = subs
                .iter()
                .filter(|m| m.contains(k))
                .filter(|m| quotient_cyclic_bruteforce(k, m))
                .filter(|m| {
                    let full = Subgroup::full(pn).unwrap();
                    quotient_cyclic_bruteforce(m, &full)
                })
                .map(|m| m.hnf_triple())
                .collect();
            let got: BTreeSet<Triple> = label_set(k)
                .unwrap()
                .into_iter()
                .map(|h| h.preimage().hnf_triple())
                .collect();
            assert_eq!(got, expected, "label mismatch at N = {pn}, K = {:?}", k.hnf_triple());
        }
    }
}

#[test]
fn label_orders_fill_an_interval() {
    // For quotient type (p^m, p^l), the label orders are exactly
    // p^l, p^(l+1), …, p^m.
    for (p, pn) in [(2u64, 4u64), (2, 8), (2, 16), (3, 9), (3, 27), (5, 25)] {
        for k in enumerate_subgroups(pn).unwrap() {
            let (n1, n2) = k.quotient_type();
            let orders: BTreeSet<u64> =
                label_set(&k).unwrap().into_iter().map(|h| h.order()).collect();
            let mut expected = BTreeSet::new();
            let mut h = n2;
            while h <= n1 {
                expected.insert(h);
                h *= p;
            }
            assert_eq!(orders, expected, "order set mismatch at N = {pn}, K = {:?}", k.hnf_triple());
        }
    }
}

#[test]
fn intermediate_label_orders_appear_beyond_the_two_extremes() {
    // G_K ≅ Z/8 × Z/2 has a label of order 4: the two extreme orders 2 and
    // 8 do not exhaust L_K once the invariant factors are ≥ two steps apart.
    let k = Subgroup::from_generators(16, &[(2, 0), (0, 8)]).unwrap();
    assert_eq!(k.quotient_type(), (8, 2));
    let labels = label_set(&k).unwrap();
    assert!(labels.iter().any(|h| h.order() == 4));
}

/// Predicted partition: class(M) = {(K, M) : K ≤ M, M/K cyclic}, one class
/// per M with cyclic pair quotient. Cyclicity here is decided by the coset
/// exponent, not by the library's normal forms.
fn predicted_partition(pn: u64) -> BTreeMap<Triple, BTreeSet<Triple>> {
    let subs = enumerate_subgroups(pn).unwrap();
    let mut out: BTreeMap<Triple, BTreeSet<Triple>> = BTreeMap::new();
    for m in &subs {
        if !cyclic_by_exponent(&Subgroup::full(pn).unwrap(), m) {
            continue;
        }
        let members: BTreeSet<Triple> = subs
            .iter()
            .filter(|k| m.contains(k) && cyclic_by_exponent(m, k))
            .map(|k| k.hnf_triple())
            .collect();
        out.insert(m.hnf_triple(), members);
    }
    out
}

/// Whether M/K is cyclic, decided by comparing the coset exponent with the
/// quotient size (cheap enough for every pair at desk scale).
fn cyclic_by_exponent(m: &Subgroup, k: &Subgroup) -> bool {
    let n = m.modulus();
    let mut exponent = 1u64;
    for point in m.elements() {
        let ord_x = n / num_integer::gcd(n, point.0);
        let ord_y = n / num_integer::gcd(n, point.1);
        let ord = num_integer::lcm(ord_x, ord_y);
        let mut coset = ord;
        let mut d = 1;
        while d * d <= ord {
            if ord % d == 0 {
                for cand in [d, ord / d] {
                    if cand < coset && k.contains_point(((point.0 * cand) % n, (point.1 * cand) % n))
                    {
                        coset = cand;
                    }
                }
            }
            d += 1;
        }
        exponent = num_integer::lcm(exponent, coset);
    }
    exponent == m.order() / k.order()
}

#[test]
fn classes_match_predicted_partition() {
    for (p, n) in [(2u64, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (11, 1), (13, 1)] {
        let pn = p.pow(n);
        let classes = lambda_classes(p, n).unwrap();
        let mut got: BTreeMap<Triple, BTreeSet<Triple>> = BTreeMap::new();
        for class in &classes {
            let m = class.members()[0].h.preimage().hnf_triple();
            // Every member of a class shares the preimage M.
            for member in class.members() {
                assert_eq!(member.h.preimage().hnf_triple(), m);
            }
            let ks: BTreeSet<Triple> =
                class.members().iter().map(|mem| mem.k.hnf_triple()).collect();
            assert_eq!(ks.len(), class.members().len(), "duplicate member pair");
            assert!(got.insert(m, ks).is_none(), "two classes share a preimage");
        }
        assert_eq!(got, predicted_partition(pn), "partition mismatch at p = {p}, n = {n}");
    }
}

#[test]
fn each_class_has_exactly_one_trivial_member() {
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2), (5, 1)] {
        for class in lambda_classes(p, n).unwrap() {
            let trivial: Vec<_> =
                class.members().iter().filter(|mem| mem.h.is_trivial()).collect();
            assert_eq!(trivial.len(), 1);
            // The trivial pair is (M, 0): its K is the shared preimage.
            assert_eq!(
                trivial[0].k.hnf_triple(),
                trivial[0].h.preimage().hnf_triple()
            );
        }
    }
}

#[test]
fn frozen_class_counts() {
    assert_eq!(enumerate_subgroups(4).unwrap().len(), 15);
    assert_eq!(lambda_classes(2, 2).unwrap().len(), 10);
    for p in [2u64, 3, 5] {
        assert_eq!(lambda_classes(p, 1).unwrap().len() as u64, p + 2);
    }
}

#[test]
fn class_ids_are_sequential_and_start_at_the_full_group() {
    let classes = lambda_classes(3, 1).unwrap();
    for (i, class) in classes.iter().enumerate() {
        assert_eq!(class.id(), format!("lambda[{i}]"));
    }
    let full = Subgroup::full(3).unwrap();
    assert_eq!(classes[0].members()[0].h.preimage(), &full);
}

#[test]
fn class_json_shape() {
    let classes = lambda_classes(2, 1).unwrap();
    let json = serde_json::to_value(&classes).unwrap();
    let first = &json[0];
    assert_eq!(first["id"], "lambda[0]");
    assert!(first["members"][0]["k"]["basis"].is_array());
    assert!(first["members"][0]["h"]["gensSmith"].is_array());
}

proptest! {
    /// Lifting is monotone along chains: if the preimage stays cyclic over
    /// the smaller parent, it is cyclic over any intermediate parent, and
    /// quotient sizes are multiplicative.
    #[test]
    fn lifts_are_monotone_along_chains(
        pn in prop::sample::select(vec![4u64, 8, 9, 16, 27]),
        seed in any::<u64>(),
    ) {
        let subs = enumerate_subgroups(pn).unwrap();
        // Build a chain K2 ≤ K1 ≤ K0 constructively so no draws are wasted.
        let k0 = &subs[(seed as usize) % subs.len()];
        let under_k0: Vec<&Subgroup> = subs.iter().filter(|s| k0.contains(s)).collect();
        let k1 = under_k0[(seed as usize / 7) % under_k0.len()];
        let under_k1: Vec<&&Subgroup> = under_k0.iter().filter(|s| k1.contains(s)).collect();
        let k2 = *under_k1[(seed as usize / 97) % under_k1.len()];
        for h in label_set(k0).unwrap() {
            let direct = level_lattice::lift_label(k2, k0, &h).unwrap();
            if let level_lattice::LiftOutcome::Lifted(lifted) = &direct {
                // Cyclic over K2 forces cyclic over the intermediate K1.
                let via = level_lattice::lift_label(k1, k0, &h).unwrap();
                match via {
                    level_lattice::LiftOutcome::Lifted(mid) => {
                        prop_assert_eq!(mid.preimage(), h.preimage());
                        prop_assert_eq!(
                            lifted.order(),
                            mid.order() * (k1.order() / k2.order())
                        );
                    }
                    level_lattice::LiftOutcome::NotCyclic => {
                        return Err(TestCaseError::fail("intermediate lift lost cyclicity"));
                    }
                }
            }
        }
    }
}
