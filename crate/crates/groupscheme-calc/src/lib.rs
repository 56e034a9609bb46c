//! Rank bookkeeping for finite commutative group schemes of multiplicative
//! and étale type, and the stratified moduli loci built from them.
//!
//! A profile is a product of factors μ_{p^a}, (Z/p^a)_ét, and prime-to-p
//! étale cyclic pieces. Ranks are orders of finite flat group schemes;
//! torsion ranks are computed factor-wise. The stratifications decompose
//! point counts of level-structure loci over a base of characteristic p:
//! Γ₁-type loci split by the connected–étale ratio (a, b), and the loci
//! attached to a subgroup K ≤ (Z/p^n)² split by the component labels
//! H ∈ L_K, each stratum carrying a multiplicative factor (a full-section
//! count) and an étale factor (a surjection count).

use level_lattice::arith::{euler_phi, is_prime, pow_u64};
use level_lattice::{LatticeError, Subgroup, desk, label_set};
use serde::Serialize;

mod fss;

pub use fss::{fss_generator_rank_oracle, mu_torsion_rank_oracle};

/// Errors from profile validation and stratum computation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupSchemeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid factor: {0}")]
    BadFactor(&'static str),
    #[error("rank exceeds the representable range")]
    Overflow,
    #[error("level {level} is not {p}^{n}")]
    LevelMismatch { level: u64, p: u64, n: u32 },
}

/// One cyclic factor of a finite flat group scheme over a base of
/// characteristic p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Factor {
    /// μ_{p^exp}: connected multiplicative type.
    Mu { exp: u32 },
    /// (Z/p^exp)_ét: étale with p-power order.
    Et { exp: u32 },
    /// Étale cyclic of order prime to p.
    EtPrime { order: u64 },
}

/// A product of [`Factor`]s over a base of characteristic `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupSchemeProfile {
    p: u64,
    factors: Vec<Factor>,
}

impl GroupSchemeProfile {
    pub fn new(p: u64, factors: Vec<Factor>) -> Result<Self, GroupSchemeError> {
        if !is_prime(p) {
            return Err(GroupSchemeError::NotPrime(p));
        }
        for f in &factors {
            if let Factor::EtPrime { order } = f {
                if *order == 0 {
                    return Err(GroupSchemeError::BadFactor("étale order must be positive"));
                }
                if *order % p == 0 {
                    return Err(GroupSchemeError::BadFactor(
                        "prime-to-p factor has order divisible by p",
                    ));
                }
            }
        }
        let profile = GroupSchemeProfile { p, factors };
        profile.rank().map(|_| profile)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    fn factor_rank(&self, f: &Factor) -> Option<u64> {
        match f {
            Factor::Mu { exp } | Factor::Et { exp } => self.p.checked_pow(*exp),
            Factor::EtPrime { order } => Some(*order),
        }
    }

    /// The order of the group scheme (product of factor orders).
    pub fn rank(&self) -> Result<u64, GroupSchemeError> {
        let mut total: u64 = 1;
        for f in &self.factors {
            let r = self.factor_rank(f).ok_or(GroupSchemeError::Overflow)?;
            total = total.checked_mul(r).ok_or(GroupSchemeError::Overflow)?;
        }
        Ok(total)
    }

    /// Cartier duality: μ ↔ étale factor-wise; prime-to-p cyclic pieces are
    /// self-dual.
    pub fn cartier_dual(&self) -> GroupSchemeProfile {
        let factors = self
            .factors
            .iter()
            .map(|f| match *f {
                Factor::Mu { exp } => Factor::Et { exp },
                Factor::Et { exp } => Factor::Mu { exp },
                Factor::EtPrime { order } => Factor::EtPrime { order },
            })
            .collect();
        GroupSchemeProfile { p: self.p, factors }
    }

    /// Order of the d-torsion G[d], factor-wise. For a p-power factor of
    /// order p^a this is p^min(a, v_p(d)); a prime-to-p cyclic factor of
    /// order m contributes gcd(m, d).
    pub fn hom_rank(&self, d: u64) -> Result<u64, GroupSchemeError> {
        if d == 0 {
            return Err(GroupSchemeError::BadFactor("torsion index must be positive"));
        }
        let vp = {
            let mut v = 0u32;
            let mut rest = d;
            while rest % self.p == 0 {
                rest /= self.p;
                v += 1;
            }
            v
        };
        let mut total: u64 = 1;
        for f in &self.factors {
            let r = match *f {
                Factor::Mu { exp } | Factor::Et { exp } => {
                    self.p.checked_pow(exp.min(vp)).ok_or(GroupSchemeError::Overflow)?
                }
                Factor::EtPrime { order } => num_gcd(order, d),
            };
            total = total.checked_mul(r).ok_or(GroupSchemeError::Overflow)?;
        }
        Ok(total)
    }
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One stratum of a decomposed locus: a stable id and its rank over the
/// base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Stratum {
    pub id: String,
    pub rank: u64,
}

/// A stratified locus with its total rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DrinfeldLocus {
    pub kind: String,
    pub p: u64,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<Subgroup>,
    pub strata: Vec<Stratum>,
    pub total: u64,
}

/// Rank of the (a, b) stratum of the Γ₁(p^(a+b)) locus: generators of a
/// μ_{p^b}-part crossed with an étale point of exact order p^a.
pub fn y1_stratum_rank(p: u64, a: u32, b: u32) -> u64 {
    let pb = pow_u64(p, b);
    euler_phi(pb) * pb * euler_phi(pow_u64(p, a))
}

/// The Γ₁(p^n) locus in characteristic p, stratified by the
/// connected–étale split (a, b), a + b = n, listed with a descending.
pub fn gamma1_components(p: u64, n: u32) -> Result<DrinfeldLocus, GroupSchemeError> {
    if !is_prime(p) {
        return Err(GroupSchemeError::NotPrime(p));
    }
    let pn = p.checked_pow(n).ok_or(GroupSchemeError::Overflow)?;
    desk::check_scale("p^n", pn, desk::max_rank()).map_err(GroupSchemeError::Lattice)?;
    let mut strata = Vec::new();
    let mut total = 0u64;
    for b in 0..=n {
        let a = n - b;
        let rank = y1_stratum_rank(p, a, b);
        total += rank;
        strata.push(Stratum { id: format!("({a},{b})"), rank });
    }
    Ok(DrinfeldLocus { kind: "gamma1".into(), p, n, k: None, strata, total })
}

/// One zone Z_b of the compactly assembled Γ₁ tower: the strata
/// (m, (m−b, b)) over all levels b ≤ m ≤ n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Zone {
    pub b: u32,
    pub strata: Vec<Stratum>,
    pub rank: u64,
}

/// The full tower decomposition at level p^n grouped into zones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct H1Decomposition {
    pub p: u64,
    pub n: u32,
    pub zones: Vec<Zone>,
    pub total: u64,
}

/// All levels 0 ≤ m ≤ n of the Γ₁ tower assembled into zones Z_b, where
/// Z_b collects the (m − b, b) strata for b ≤ m ≤ n. The total is the rank
/// of the ambient p^n-torsion pair.
pub fn h1_decomposition(p: u64, n: u32) -> Result<H1Decomposition, GroupSchemeError> {
    if !is_prime(p) {
        return Err(GroupSchemeError::NotPrime(p));
    }
    let pn = p.checked_pow(n).ok_or(GroupSchemeError::Overflow)?;
    desk::check_scale("p^n", pn, desk::max_rank()).map_err(GroupSchemeError::Lattice)?;
    let mut zones = Vec::new();
    let mut total = 0u64;
    for b in 0..=n {
        let mut strata = Vec::new();
        let mut rank = 0u64;
        for m in b..=n {
            let a = m - b;
            let r = y1_stratum_rank(p, a, b);
            rank += r;
            strata.push(Stratum { id: format!("m={m}:({a},{b})"), rank: r });
        }
        total += rank;
        zones.push(Zone { b, strata, rank });
    }
    Ok(H1Decomposition { p, n, zones, total })
}

/// The locus attached to K ≤ (Z/p^n)², stratified by component labels
/// H ∈ L_K. Writing |G_K| = p^(m+l) and |H| = p^h, the stratum rank is the
/// étale surjection count φ(p^(m+l−h)) times the full-section rank
/// φ(p^h)·p^(m+l−h) of the multiplicative part.
#[allow(non_snake_case)]
pub fn gK_components(k: &Subgroup, p: u64, n: u32) -> Result<DrinfeldLocus, GroupSchemeError> {
    if !is_prime(p) {
        return Err(GroupSchemeError::NotPrime(p));
    }
    let pn = p.checked_pow(n).ok_or(GroupSchemeError::Overflow)?;
    if k.modulus() != pn {
        return Err(GroupSchemeError::LevelMismatch { level: k.modulus(), p, n });
    }
    desk::check_scale("p^n", pn, desk::max_rank()).map_err(GroupSchemeError::Lattice)?;
    let (n1, n2) = k.quotient_type();
    let mut strata = Vec::new();
    let mut total = 0u64;
    for h in label_set(k)? {
        let cofactor = n1 * n2 / h.order(); // p^(m+l−h)
        let rank = euler_phi(cofactor) * euler_phi(h.order()) * cofactor;
        total += rank;
        strata.push(Stratum { id: h.id(), rank });
    }
    Ok(DrinfeldLocus { kind: "gK".into(), p, n, k: Some(k.clone()), strata, total })
}

/// Total rank of the level-p^n pair locus: the sum of every stratum of
/// every K ≤ (Z/p^n)². Computed by actually summing the stratifications;
/// equals the endomorphism count p^(4n) of (Z/p^n)².
pub fn h_total(p: u64, n: u32) -> Result<u64, GroupSchemeError> {
    let pn = p.checked_pow(n).ok_or(GroupSchemeError::Overflow)?;
    let mut total = 0u64;
    for k in level_lattice::enumerate_subgroups(pn)? {
        total = total
            .checked_add(gK_components(&k, p, n)?.total)
            .ok_or(GroupSchemeError::Overflow)?;
    }
    Ok(total)
}
