//! Generator-rank oracles computed by plain linear algebra over F_p.
//!
//! The main oracle measures how far the p^e-th powers of the p^{a+e}-th
//! roots of unity are from forming a full set of sections of μ_{p^a}: in
//! R = F_p[x]/(x^q − 1) with q = p^{a+e}, compare
//!
//! ∏_{j=0}^{p^a − 1} (T − x^{p^e · j})   with   T^{p^a} − 1
//!
//! and let I ⊆ R be the ideal generated by the coefficients of the
//! difference. The oracle returns dim_{F_p} R/I, found by spanning the
//! ideal with shifted generators and Gaussian elimination. No closed-form
//! rank identity is used anywhere in this module.

use crate::GroupSchemeError;
use level_lattice::arith::pow_u64;
use level_lattice::desk;

/// Row-echelon accumulator over F_p for vectors of fixed length.
struct Echelon {
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon { p, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Reduces `v` against the basis and inserts it if independent.
    fn insert(&mut self, mut v: Vec<u64>) {
        let p = self.p;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if v[piv] != 0 {
                let factor = v[piv] * mod_inv(row[piv], p) % p;
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = (*vi + (p - factor * ri % p)) % p;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&c| c != 0) {
            self.rows.push(v);
            self.pivots.push(piv);
        }
    }

    fn rank(&self) -> u64 {
        self.rows.len() as u64
    }
}

fn mod_inv(x: u64, p: u64) -> u64 {
    // Fermat inverse; p is prime and x ≠ 0 mod p.
    let mut result = 1u64;
    let mut base = x % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// c ↦ x^k · c in F_p[x]/(x^q − 1): a cyclic shift.
fn shift(c: &[u64], k: usize) -> Vec<u64> {
    let q = c.len();
    let mut out = vec![0u64; q];
    for (i, &ci) in c.iter().enumerate() {
        out[(i + k) % q] = ci;
    }
    out
}

/// Dimension of R/I for R = F_p[x]/(x^q − 1), q = p^(a+e), with I generated
/// by the coefficients of ∏_{j<p^a}(T − x^(p^e·j)) − (T^(p^a) − 1).
pub fn fss_generator_rank_oracle(p: u64, a: u32, e: u32) -> Result<u64, GroupSchemeError> {
    if !level_lattice::arith::is_prime(p) {
        return Err(GroupSchemeError::NotPrime(p));
    }
    let q = p.checked_pow(a + e).ok_or(GroupSchemeError::Overflow)?;
    desk::check_scale("p^(a+e)", q, desk::max_rank())?;
    let (q, pa, pe) = (q as usize, pow_u64(p, a) as usize, pow_u64(p, e));

    // ∏ (T − x^(p^e·j)) as a polynomial in T with coefficients in R.
    let mut one = vec![0u64; q];
    one[0] = 1;
    let mut poly: Vec<Vec<u64>> = vec![one.clone()];
    for j in 0..pa {
        let root = ((pe as u128 * j as u128) % q as u128) as usize;
        let mut next = vec![vec![0u64; q]; poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            for (t, &ci) in c.iter().enumerate() {
                next[i + 1][t] = (next[i + 1][t] + ci) % p; // T · c
                let s = (t + root) % q; // − x^root · c
                next[i][s] = (next[i][s] + (p - ci)) % p;
            }
        }
        poly = next;
    }
    // Subtract T^(p^a) − 1.
    poly[pa][0] = (poly[pa][0] + p - 1) % p;
    poly[0][0] = (poly[0][0] + 1) % p;
    debug_assert!(poly[pa].iter().all(|&c| c == 0), "product must be monic of degree p^a");

    // I = span of all shifts of the generators.
    let mut basis = Echelon::new(p);
    for c in &poly {
        if c.iter().all(|&ci| ci == 0) {
            continue;
        }
        for k in 0..q {
            basis.insert(shift(c, k));
        }
    }
    Ok(q as u64 - basis.rank())
}

/// Order of μ_(p^a)[d] over F_p, computed as deg gcd(x^(p^a) − 1, x^d − 1)
/// by the polynomial Euclid algorithm — no min/gcd exponent formula.
pub fn mu_torsion_rank_oracle(p: u64, a: u32, d: u64) -> Result<u64, GroupSchemeError> {
    if !level_lattice::arith::is_prime(p) {
        return Err(GroupSchemeError::NotPrime(p));
    }
    if d == 0 {
        return Err(GroupSchemeError::BadFactor("torsion index must be positive"));
    }
    let pa = p.checked_pow(a).ok_or(GroupSchemeError::Overflow)?;
    desk::check_scale("p^a", pa, desk::max_rank())?;
    let f = cyclotomic_like(pa as usize, p);
    let g = cyclotomic_like(d as usize, p);
    Ok(poly_gcd_degree(f, g, p) as u64)
}

/// x^n − 1 as a dense coefficient vector mod p.
fn cyclotomic_like(n: usize, p: u64) -> Vec<u64> {
    let mut f = vec![0u64; n + 1];
    f[0] = p - 1;
    f[n] = 1;
    f
}

fn poly_degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn poly_gcd_degree(mut f: Vec<u64>, mut g: Vec<u64>, p: u64) -> usize {
    loop {
        let (Some(df), Some(dg)) = (poly_degree(&f), poly_degree(&g)) else {
            // One side is zero: the gcd is the other side.
            let nonzero = if poly_degree(&f).is_some() { &f } else { &g };
            return poly_degree(nonzero).expect("gcd of two zero polynomials");
        };
        if df < dg {
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        // f ← f − lead(f)/lead(g) · x^(df−dg) · g
        let factor = f[df] * mod_inv(g[dg], p) % p;
        let shift_by = df - dg;
        for i in 0..=dg {
            f[i + shift_by] = (f[i + shift_by] + (p - factor * g[i] % p)) % p;
        }
        if poly_degree(&f).is_none() {
            return dg;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_section_ranks() {
        assert_eq!(fss_generator_rank_oracle(3, 1, 0).unwrap(), 2);
        assert_eq!(fss_generator_rank_oracle(2, 0, 0).unwrap(), 1);
        assert_eq!(fss_generator_rank_oracle(5, 0, 0).unwrap(), 1);
        assert_eq!(fss_generator_rank_oracle(2, 1, 1).unwrap(), 2);
    }

    #[test]
    fn section_rank_guard() {
        assert!(matches!(
            fss_generator_rank_oracle(2, 3, 3),
            Err(GroupSchemeError::Lattice(
                level_lattice::LatticeError::DeskScale { .. }
            ))
        ));
        assert!(matches!(
            fss_generator_rank_oracle(4, 1, 0),
            Err(GroupSchemeError::NotPrime(4))
        ));
    }

    #[test]
    fn torsion_oracle_examples() {
        // μ_4[6] has order 2 in characteristic 2; μ_9[3] order 3; μ_8[8] order 8.
        assert_eq!(mu_torsion_rank_oracle(2, 2, 6).unwrap(), 2);
        assert_eq!(mu_torsion_rank_oracle(3, 2, 3).unwrap(), 3);
        assert_eq!(mu_torsion_rank_oracle(2, 3, 8).unwrap(), 8);
        // Prime-to-p torsion sees only the trivial section.
        assert_eq!(mu_torsion_rank_oracle(5, 2, 6).unwrap(), 1);
    }

    #[test]
    fn echelon_rank_is_exact() {
        let mut b = Echelon::new(5);
        b.insert(vec![1, 2, 3]);
        b.insert(vec![2, 4, 6]); // dependent
        b.insert(vec![0, 1, 1]);
        assert_eq!(b.rank(), 2);
    }
}
