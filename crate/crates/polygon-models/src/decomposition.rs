//! The N-torsion of a d-gon's smooth locus, split into its unit factor
//! μ_N(F_q) and its side factor (Z/d)[N].

use crate::{PolygonError, PolygonPicard, PolygonPoint};
use curve_arith::field::{FieldElem, FiniteField};
use num_integer::Integer;

/// The split torsion: unit roots, torsion sides, and the full product.
#[derive(Debug, Clone)]
pub struct TorsionDecomposition {
    pub mu_part: Vec<FieldElem>,
    pub side_part: Vec<u64>,
    pub elements: Vec<PolygonPoint>,
}

impl TorsionDecomposition {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

/// Splits the N-torsion of the d-gon over `field` as μ_N(F_q) × (Z/d)[N].
///
/// The side factor has gcd(d, N) elements; the unit factor has as many
/// elements as x^N − 1 has roots in the field — gcd(N′, q − 1) where N′
/// is the prime-to-p part of N. In particular, for d = N = pⁿ over a
/// field of characteristic p, the whole torsion has exactly pⁿ elements.
pub fn torsor_class_decomposition(
    field: &FiniteField,
    d: u64,
    n: u64,
) -> Result<TorsionDecomposition, PolygonError> {
    let model = PolygonPicard::new(field.clone(), d)?;
    if n == 0 {
        return Err(PolygonError::ZeroLevel);
    }
    let mut mu_part = field.roots_of_unity(n);
    mu_part.sort();
    let side_part: Vec<u64> = (0..d).filter(|c| n * c % d == 0).collect();
    let elements = model.torsion(n)?;
    debug_assert_eq!(elements.len(), mu_part.len() * side_part.len());
    debug_assert_eq!(side_part.len() as u64, d.gcd(&n));
    Ok(TorsionDecomposition { mu_part, side_part, elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_multiply() {
        for (p, d, n, expected) in [
            (7u64, 3u64, 3u64, 9u64), // μ_3 × Z/3
            (11, 5, 5, 25),
            (13, 6, 6, 36),
            (13, 2, 6, 12),           // μ_6 × Z/2
            (7, 4, 6, 6 * 2),         // μ_6(F_7) × (Z/4)[6] = 6·2
        ] {
            let f = FiniteField::prime(p).unwrap();
            let t = torsor_class_decomposition(&f, d, n).unwrap();
            assert_eq!(t.order(), expected, "p={p} d={d} n={n}");
            assert_eq!(
                t.order(),
                (t.mu_part.len() * t.side_part.len()) as u64
            );
        }
    }

    #[test]
    fn char_p_pure_level_has_exactly_p_to_the_n() {
        let f = FiniteField::prime(5).unwrap();
        assert_eq!(torsor_class_decomposition(&f, 5, 5).unwrap().order(), 5);
        assert_eq!(torsor_class_decomposition(&f, 25, 25).unwrap().order(), 25);
        // The unit factor is trivial: every 25th root of unity is 1.
        let t = torsor_class_decomposition(&f, 25, 25).unwrap();
        assert_eq!(t.mu_part.len(), 1);
    }

    #[test]
    fn torsion_is_closed_under_the_group_law() {
        let f = FiniteField::prime(13).unwrap();
        let model = PolygonPicard::new(f.clone(), 6).unwrap();
        let t = torsor_class_decomposition(&f, 6, 6).unwrap();
        let set: std::collections::BTreeSet<_> = t.elements.iter().cloned().collect();
        for p1 in &t.elements {
            for p2 in &t.elements {
                assert!(set.contains(&model.add(p1, p2)));
            }
        }
    }
}
