//! Dense univariate polynomials over a [`FiniteField`], normalized with no
//! trailing zero coefficients (the zero polynomial has no coefficients).

use crate::field::{FieldElem, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(field: &FiniteField, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn one(field: &FiniteField) -> Self {
        Poly { coeffs: vec![field.one()] }
    }

    /// T − root.
    pub fn linear(field: &FiniteField, root: &FieldElem) -> Self {
        Poly { coeffs: vec![field.neg(root), field.one()] }
    }

    /// T^n − 1.
    pub fn t_pow_minus_one(field: &FiniteField, n: u64) -> Self {
        let mut coeffs = vec![field.zero(); n as usize + 1];
        coeffs[0] = field.neg(&field.one());
        coeffs[n as usize] = field.one();
        Poly::from_coeffs(field, coeffs)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn add(&self, field: &FiniteField, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| field.zero());
            coeffs.push(field.add(&a, &b));
        }
        Poly::from_coeffs(field, coeffs)
    }

    pub fn sub(&self, field: &FiniteField, other: &Poly) -> Poly {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }

    pub fn scale(&self, field: &FiniteField, factor: &FieldElem) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| field.mul(c, factor)).collect();
        Poly::from_coeffs(field, coeffs)
    }

    pub fn mul(&self, field: &FiniteField, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = field.add(&coeffs[i + j], &field.mul(a, b));
            }
        }
        Poly::from_coeffs(field, coeffs)
    }

    /// ∏ (T − u) over the given multiset of roots.
    pub fn product_of_linear(field: &FiniteField, roots: &[FieldElem]) -> Poly {
        roots
            .iter()
            .fold(Poly::one(field), |acc, u| acc.mul(field, &Poly::linear(field, u)))
    }

    pub fn eval(&self, field: &FiniteField, at: &FieldElem) -> FieldElem {
        let mut value = field.zero();
        for c in self.coeffs.iter().rev() {
            value = field.add(&field.mul(&value, at), c);
        }
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_over_all_roots_of_unity() {
        // Over F_7, the sixth roots of unity multiply out to T⁶ − 1.
        let f = FiniteField::prime(7).unwrap();
        let roots = f.roots_of_unity(6);
        assert_eq!(roots.len(), 6);
        let prod = Poly::product_of_linear(&f, &roots);
        assert_eq!(prod, Poly::t_pow_minus_one(&f, 6));
    }

    #[test]
    fn inseparable_power_in_characteristic_p() {
        // (T − 1)^5 = T^5 − 1 over F_5.
        let f = FiniteField::prime(5).unwrap();
        let ones = vec![f.one(); 5];
        let prod = Poly::product_of_linear(&f, &ones);
        assert_eq!(prod, Poly::t_pow_minus_one(&f, 5));
    }

    #[test]
    fn arithmetic_and_eval() {
        let f = FiniteField::prime(11).unwrap();
        let p = Poly::from_coeffs(&f, vec![f.from_u64(3), f.from_u64(0), f.one()]); // T² + 3
        let q = Poly::linear(&f, &f.from_u64(2)); // T − 2
        let prod = p.mul(&f, &q);
        assert_eq!(prod.degree(), Some(3));
        // Evaluation is multiplicative.
        for at in f.elements() {
            assert_eq!(
                prod.eval(&f, &at),
                f.mul(&p.eval(&f, &at), &q.eval(&f, &at))
            );
        }
        // p − p = 0.
        assert!(p.sub(&f, &p).is_zero());
    }
}
