//! Small finite fields F_q, q = p^k ≤ 10⁴, with exact integer arithmetic.
//!
//! Elements are little-endian coefficient vectors of length k over F_p,
//! reduced modulo a monic irreducible of degree k. Prime fields use k = 1.
//! Extension moduli are either pinned explicitly (so fixtures stay stable)
//! or found by a seeded deterministic search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest field size handled by exhaustive desk-scale routines.
pub const MAX_FIELD: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {q} exceeds the desk-scale bound {MAX_FIELD}")]
    TooLarge { q: u64 },
    #[error("modulus must be monic of degree k with coefficients below p")]
    BadModulus,
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("degree must be at least 1")]
    ZeroDegree,
}

/// An element of F_q: little-endian coefficients, length k, entries < p.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem {
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// The field F_{p^k}, carrying all arithmetic on [`FieldElem`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    k: u32,
    /// Monic irreducible of degree k, little-endian, length k + 1.
    modulus: Vec<u64>,
}

impl FiniteField {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        FiniteField::check_size(p, 1)?;
        Ok(FiniteField { p, k: 1, modulus: vec![0, 1] })
    }

    /// F_{p^k} with a deterministic seeded search for the modulus.
    pub fn extension(p: u64, k: u32) -> Result<Self, FieldError> {
        FiniteField::check_size(p, k)?;
        if k == 1 {
            return FiniteField::prime(p);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f_6475_6c69 ^ (p << 8) ^ k as u64);
        loop {
            let mut modulus: Vec<u64> = (0..k).map(|_| rng.random_range(0..p)).collect();
            modulus.push(1);
            let field = FiniteField { p, k, modulus };
            if field.modulus_is_irreducible() {
                return Ok(field);
            }
        }
    }

    /// F_{p^k} with a pinned modulus (little-endian, monic, length k + 1).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        if modulus.len() < 2 {
            return Err(FieldError::ZeroDegree);
        }
        let k = (modulus.len() - 1) as u32;
        FiniteField::check_size(p, k)?;
        if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus);
        }
        let field = FiniteField { p, k, modulus };
        if k > 1 && !field.modulus_is_irreducible() {
            return Err(FieldError::ReducibleModulus);
        }
        Ok(field)
    }

    fn check_size(p: u64, k: u32) -> Result<(), FieldError> {
        if !level_lattice::arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        match p.checked_pow(k) {
            Some(q) if q <= MAX_FIELD => Ok(()),
            _ => Err(FieldError::TooLarge { q: p.saturating_pow(k) }),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    // ---- element construction ----

    pub fn zero(&self) -> FieldElem {
        FieldElem { coeffs: vec![0; self.k as usize] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FieldElem {
        let mut coeffs = vec![0; self.k as usize];
        coeffs[0] = c % self.p;
        FieldElem { coeffs }
    }

    /// Builds an element from little-endian coefficients (short vectors are
    /// padded; entries are reduced mod p; extra entries must be absent).
    pub fn from_coeffs(&self, raw: &[u64]) -> Result<FieldElem, FieldError> {
        if raw.len() > self.k as usize {
            return Err(FieldError::BadModulus);
        }
        let mut coeffs = vec![0; self.k as usize];
        for (slot, &c) in coeffs.iter_mut().zip(raw) {
            *slot = c % self.p;
        }
        Ok(FieldElem { coeffs })
    }

    /// All q elements in a fixed order (odometer over coefficients, the
    /// element Σ c_i x^i listed at index Σ c_i p^i).
    pub fn elements(&self) -> Vec<FieldElem> {
        let q = self.size();
        (0..q).map(|idx| self.element_at(idx)).collect()
    }

    fn element_at(&self, mut idx: u64) -> FieldElem {
        let mut coeffs = vec![0; self.k as usize];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        FieldElem { coeffs }
    }

    // ---- arithmetic ----

    pub fn is_zero(&self, x: &FieldElem) -> bool {
        x.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        FieldElem { coeffs }
    }

    pub fn neg(&self, x: &FieldElem) -> FieldElem {
        let coeffs = x.coeffs.iter().map(|&a| (self.p - a) % self.p).collect();
        FieldElem { coeffs }
    }

    pub fn sub(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % self.p;
            }
        }
        self.reduce(prod)
    }

    /// Reduces a raw little-endian polynomial modulo the field modulus.
    fn reduce(&self, mut poly: Vec<u64>) -> FieldElem {
        let k = self.k as usize;
        for deg in (k..poly.len()).rev() {
            let c = poly[deg];
            if c == 0 {
                continue;
            }
            poly[deg] = 0;
            // x^deg ≡ −(lower part of modulus)·x^(deg−k)
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let slot = deg - k + i;
                poly[slot] = (poly[slot] + c * (self.p - m) % self.p) % self.p;
            }
        }
        poly.truncate(k);
        FieldElem { coeffs: poly }
    }

    pub fn pow(&self, x: &FieldElem, mut e: u64) -> FieldElem {
        let mut result = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative inverse; panics on zero (callers check first).
    pub fn inv(&self, x: &FieldElem) -> FieldElem {
        assert!(!self.is_zero(x), "inverse of zero");
        self.pow(x, self.size() - 2)
    }

    pub fn div(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        self.mul(x, &self.inv(y))
    }

    /// Scalar multiple n·x for an integer n.
    pub fn scale(&self, n: u64, x: &FieldElem) -> FieldElem {
        self.mul(&self.from_u64(n), x)
    }

    /// The group μ_d(F_q) = {u : u^d = 1}, in element order.
    pub fn roots_of_unity(&self, d: u64) -> Vec<FieldElem> {
        self.elements()
            .into_iter()
            .filter(|u| !self.is_zero(u) && self.pow(u, d) == self.one())
            .collect()
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: &FieldElem) -> u64 {
        assert!(!self.is_zero(x));
        let group = self.size() - 1;
        level_lattice::arith::divisors(group)
            .into_iter()
            .find(|&d| self.pow(x, d) == self.one())
            .expect("element order divides q - 1")
    }

    // ---- irreducibility ----

    /// deg-k modulus is irreducible iff gcd(x^(p^d) − x, f) = 1 for all
    /// d ≤ k/2 (no irreducible factor of degree ≤ k/2).
    fn modulus_is_irreducible(&self) -> bool {
        let k = self.k;
        for d in 1..=k / 2 {
            let pd = self.p.pow(d);
            // x^(p^d) mod f, by square-and-multiply in F_p[x]/(f).
            let x = {
                let mut coeffs = vec![0; self.k as usize];
                coeffs[1] = 1;
                FieldElem { coeffs }
            };
            // Note: self's arithmetic works modulo f even if f is reducible —
            // it is plain polynomial arithmetic in the quotient ring.
            let frob = self.pow(&x, pd);
            let diff = self.sub(&frob, &x);
            let mut g = diff.coeffs;
            g.push(0);
            if poly_gcd_deg(&mut g.clone(), &mut self.modulus.clone(), self.p) != 0 {
                return false;
            }
        }
        true
    }
}

/// Degree of gcd of two polynomials over F_p (destructive helper).
fn poly_gcd_deg(f: &mut Vec<u64>, g: &mut Vec<u64>, p: u64) -> usize {
    fn deg(v: &[u64]) -> Option<usize> {
        v.iter().rposition(|&c| c != 0)
    }
    fn mod_inv(x: u64, p: u64) -> u64 {
        let (mut r, mut b, mut e) = (1u64, x % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }
    loop {
        let (df, dg) = (deg(f), deg(g));
        match (df, dg) {
            (None, None) => return 0,
            (Some(d), None) | (None, Some(d)) => return d,
            (Some(df), Some(dg)) => {
                if df < dg {
                    std::mem::swap(f, g);
                    continue;
                }
                let factor = f[df] * mod_inv(g[dg], p) % p;
                for i in 0..=dg {
                    f[i + df - dg] = (f[i + df - dg] + (p - factor * g[i] % p)) % p;
                }
            }
        }
    }
}
