//! Short-Weierstrass curves y² = x³ + Ax + B over small finite fields
//! (characteristic ≥ 5), with the exact group law and exhaustive
//! point-level routines sized for desk-scale fields (q ≤ 10⁴).

use crate::CurveError;
use crate::field::{FieldElem, FiniteField};
use std::collections::BTreeMap;

/// Smallest characteristic for which the short form is fully general.
pub const MIN_CHAR: u64 = 5;

/// A rational point: the origin at infinity or an affine pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: FieldElem, y: FieldElem },
}

impl CurvePoint {
    pub fn affine(x: FieldElem, y: FieldElem) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    /// Affine coordinates; `None` at infinity.
    pub fn xy(&self) -> Option<(&FieldElem, &FieldElem)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, y } => Some((x, y)),
        }
    }
}

/// An elliptic curve with its point count precomputed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    field: FiniteField,
    a: FieldElem,
    b: FieldElem,
    n_points: u64,
}

impl Curve {
    pub fn new(field: FiniteField, a: FieldElem, b: FieldElem) -> Result<Self, CurveError> {
        if field.characteristic() < MIN_CHAR {
            return Err(CurveError::SmallCharacteristic(field.characteristic()));
        }
        // Discriminant test: 4A³ + 27B² ≠ 0.
        let disc = field.add(
            &field.scale(4, &field.mul(&a, &field.mul(&a, &a))),
            &field.scale(27, &field.mul(&b, &b)),
        );
        if field.is_zero(&disc) {
            return Err(CurveError::SingularCurve);
        }
        let n_points = count_points(&field, &a, &b);
        Ok(Curve { field, a, b, n_points })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn a(&self) -> &FieldElem {
        &self.a
    }

    pub fn b(&self) -> &FieldElem {
        &self.b
    }

    /// |E(F_q)| including the origin.
    pub fn order(&self) -> u64 {
        self.n_points
    }

    /// Trace of Frobenius t = q + 1 − |E(F_q)|.
    pub fn trace(&self) -> i128 {
        self.field.size() as i128 + 1 - self.n_points as i128
    }

    /// Ordinary ⟺ the trace is a unit mod p (characteristic ≥ 5).
    pub fn is_ordinary(&self) -> bool {
        self.trace().rem_euclid(self.field.characteristic() as i128) != 0
    }

    /// j = 1728 · 4A³ / (4A³ + 27B²).
    pub fn j_invariant(&self) -> FieldElem {
        let f = &self.field;
        let a3 = f.scale(4, &f.mul(&self.a, &f.mul(&self.a, &self.a)));
        let disc = f.add(&a3, &f.scale(27, &f.mul(&self.b, &self.b)));
        f.div(&f.scale(1728 % f.characteristic(), &a3), &disc)
    }

    pub fn on_curve(&self, point: &CurvePoint) -> bool {
        match point {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                let f = &self.field;
                f.mul(y, y) == self.rhs(x)
            }
        }
    }

    /// x³ + Ax + B.
    fn rhs(&self, x: &FieldElem) -> FieldElem {
        let f = &self.field;
        f.add(&f.mul(x, &f.mul(x, x)), &f.add(&f.mul(&self.a, x), &self.b))
    }

    pub fn neg(&self, point: &CurvePoint) -> CurvePoint {
        match point {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                CurvePoint::Affine { x: x.clone(), y: self.field.neg(y) }
            }
        }
    }

    pub fn add(&self, p1: &CurvePoint, p2: &CurvePoint) -> CurvePoint {
        let f = &self.field;
        let ((x1, y1), (x2, y2)) = match (p1.xy(), p2.xy()) {
            (None, _) => return p2.clone(),
            (_, None) => return p1.clone(),
            (Some(a), Some(b)) => (a, b),
        };
        if x1 == x2 && *y2 == f.neg(y1) {
            return CurvePoint::Infinity;
        }
        let lambda = if x1 == x2 {
            // Tangent slope (3x² + A) / 2y; y ≠ 0 here.
            f.div(
                &f.add(&f.scale(3, &f.mul(x1, x1)), &self.a),
                &f.scale(2, y1),
            )
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1))
        };
        let x3 = f.sub(&f.sub(&f.mul(&lambda, &lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn sub(&self, p1: &CurvePoint, p2: &CurvePoint) -> CurvePoint {
        self.add(p1, &self.neg(p2))
    }

    pub fn scalar_mul(&self, n: u64, point: &CurvePoint) -> CurvePoint {
        let mut result = CurvePoint::Infinity;
        let mut base = point.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.add(&result, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        result
    }

    /// All rational points: the origin first, then affine points in field
    /// element order of x, then y.
    pub fn enumerate_points(&self) -> Vec<CurvePoint> {
        let f = &self.field;
        let mut by_square: BTreeMap<FieldElem, Vec<FieldElem>> = BTreeMap::new();
        for y in f.elements() {
            by_square.entry(f.mul(&y, &y)).or_default().push(y);
        }
        let mut out = vec![CurvePoint::Infinity];
        for x in f.elements() {
            if let Some(ys) = by_square.get(&self.rhs(&x)) {
                for y in ys {
                    out.push(CurvePoint::Affine { x: x.clone(), y: y.clone() });
                }
            }
        }
        debug_assert_eq!(out.len() as u64, self.n_points);
        out
    }

    /// Exact order of a rational point by successive addition.
    pub fn point_order(&self, point: &CurvePoint) -> u64 {
        let mut acc = point.clone();
        let mut n = 1u64;
        while !acc.is_infinity() {
            acc = self.add(&acc, point);
            n += 1;
            assert!(n <= self.n_points + 1, "point is not rational");
        }
        n
    }

    /// All rational points killed by N (including the origin).
    pub fn torsion_points(&self, n: u64) -> Vec<CurvePoint> {
        self.enumerate_points()
            .into_iter()
            .filter(|point| self.scalar_mul(n, point).is_infinity())
            .collect()
    }

    /// The cyclic subgroup generated by a point, in multiple order
    /// O, P, 2P, ….
    pub fn cyclic_subgroup(&self, point: &CurvePoint) -> Vec<CurvePoint> {
        let mut out = vec![CurvePoint::Infinity];
        let mut acc = point.clone();
        while !acc.is_infinity() {
            out.push(acc.clone());
            acc = self.add(&acc, point);
            assert!(out.len() as u64 <= self.n_points, "point is not rational");
        }
        out
    }
}

fn count_points(field: &FiniteField, a: &FieldElem, b: &FieldElem) -> u64 {
    let mut square_counts: BTreeMap<FieldElem, u64> = BTreeMap::new();
    for y in field.elements() {
        *square_counts.entry(field.mul(&y, &y)).or_default() += 1;
    }
    let mut total = 1u64; // the origin
    for x in field.elements() {
        let rhs = field.add(
            &field.mul(&x, &field.mul(&x, &x)),
            &field.add(&field.mul(a, &x), b),
        );
        total += square_counts.get(&rhs).copied().unwrap_or(0);
    }
    total
}

/// Whether `point` has exact order `n` on `e`.
pub fn exact_order_check(e: &Curve, point: &CurvePoint, n: u64) -> Result<bool, CurveError> {
    if n == 0 {
        return Err(CurveError::BadLevel { n, p: e.field().characteristic() });
    }
    if !e.on_curve(point) {
        return Err(CurveError::NotOnCurve);
    }
    Ok(e.point_order(point) == n)
}

/// Whether `point` is a Γ₁(N)-structure: exact order N, N prime to the
/// characteristic.
pub fn gamma1_check(e: &Curve, point: &CurvePoint, n: u64) -> Result<bool, CurveError> {
    let p = e.field().characteristic();
    if n == 0 || n % p == 0 {
        return Err(CurveError::BadLevel { n, p });
    }
    exact_order_check(e, point, n)
}

/// Whether `d` is a Γ₀(N)-structure: a cyclic subgroup of order N, N prime
/// to the characteristic. Points off the curve are an error; any other
/// defect (not closed, wrong size, not cyclic) is a `false` verdict.
pub fn gamma0_check(e: &Curve, d: &[CurvePoint], n: u64) -> Result<bool, CurveError> {
    let p = e.field().characteristic();
    if n == 0 || n % p == 0 {
        return Err(CurveError::BadLevel { n, p });
    }
    for point in d {
        if !e.on_curve(point) {
            return Err(CurveError::NotOnCurve);
        }
    }
    if d.len() as u64 != n {
        return Ok(false);
    }
    let set: std::collections::BTreeSet<&CurvePoint> = d.iter().collect();
    if set.len() != d.len() || !set.contains(&CurvePoint::Infinity) {
        return Ok(false);
    }
    for p1 in d {
        for p2 in d {
            if !set.contains(&e.add(p1, p2)) {
                return Ok(false);
            }
        }
    }
    Ok(d.iter().any(|g| e.point_order(g) == n))
}

/// Whether the curve is ordinary.
pub fn ordinary_check(e: &Curve) -> bool {
    e.is_ordinary()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_curve(p: u64, a: u64, b: u64) -> Curve {
        let f = FiniteField::prime(p).unwrap();
        let (a, b) = (f.from_u64(a), f.from_u64(b));
        Curve::new(f, a, b).unwrap()
    }

    #[test]
    fn known_point_count() {
        // y² = x³ + 2 over F_7 has nine points (full 3-torsion).
        let e = small_curve(7, 0, 2);
        assert_eq!(e.order(), 9);
        assert_eq!(e.trace(), -1);
        assert!(e.is_ordinary());
    }

    #[test]
    fn enumeration_matches_count_and_lies_on_curve() {
        for (p, a, b) in [(5u64, 1, 1), (7, 0, 2), (11, 3, 4), (13, 1, 0)] {
            let e = small_curve(p, a, b);
            let pts = e.enumerate_points();
            assert_eq!(pts.len() as u64, e.order());
            assert!(pts.iter().all(|point| e.on_curve(point)));
            // Hasse: |t| ≤ 2√q, checked exactly as t² ≤ 4q.
            let t = e.trace();
            assert!(t * t <= 4 * p as i128);
        }
    }

    #[test]
    fn group_law_basics() {
        let e = small_curve(7, 0, 2);
        let pts = e.enumerate_points();
        for p1 in &pts {
            assert_eq!(e.add(p1, &CurvePoint::Infinity), *p1);
            assert!(e.add(p1, &e.neg(p1)).is_infinity());
            for p2 in &pts {
                let s = e.add(p1, p2);
                assert!(e.on_curve(&s));
                assert_eq!(s, e.add(p2, p1));
            }
        }
    }

    #[test]
    fn point_orders_divide_group_order() {
        let e = small_curve(11, 3, 4);
        for point in e.enumerate_points() {
            let ord = e.point_order(&point);
            assert_eq!(e.order() % ord, 0);
            assert!(e.scalar_mul(ord, &point).is_infinity());
        }
    }

    #[test]
    fn singular_curves_are_rejected() {
        let f = FiniteField::prime(7).unwrap();
        // 4·0 + 27·0 = 0.
        assert!(matches!(
            Curve::new(f.clone(), f.zero(), f.zero()),
            Err(CurveError::SingularCurve)
        ));
        let f5 = FiniteField::prime(3);
        assert!(f5.is_ok()); // the field itself is fine…
        let f3 = f5.unwrap();
        assert!(matches!(
            Curve::new(f3.clone(), f3.one(), f3.one()),
            Err(CurveError::SmallCharacteristic(3))
        ));
    }

    #[test]
    fn level_structure_checks() {
        let e = small_curve(7, 0, 2); // order 9, full 3-torsion
        let pts = e.enumerate_points();
        let p3 = pts.iter().find(|point| e.point_order(point) == 3).unwrap();
        assert!(gamma1_check(&e, p3, 3).unwrap());
        assert!(!gamma1_check(&e, p3, 9).unwrap());
        assert!(matches!(
            gamma1_check(&e, p3, 7),
            Err(CurveError::BadLevel { .. })
        ));
        let d = e.cyclic_subgroup(p3);
        assert!(gamma0_check(&e, &d, 3).unwrap());
        // A non-subgroup set of the right size fails the verdict.
        let mut bad = d.clone();
        bad[1] = pts.iter().find(|q| !d.contains(q)).unwrap().clone();
        assert!(!gamma0_check(&e, &bad, 3).unwrap());
    }

    #[test]
    fn extension_field_curve() {
        let f = FiniteField::extension(5, 2).unwrap();
        let e = Curve::new(f.clone(), f.one(), f.one()).unwrap();
        let pts = e.enumerate_points();
        assert_eq!(pts.len() as u64, e.order());
        let t = e.trace();
        assert!(t * t <= 4 * 25);
    }
}
