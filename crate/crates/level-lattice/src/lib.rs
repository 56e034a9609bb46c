//! Subgroup combinatorics of the pair group (Z/N)².
//!
//! A subgroup K ≤ (Z/N)² is stored through the integer lattice
//! N·Z² ⊆ L ⊆ Z² of its lifts, kept in row Hermite normal form
//!
//! ```text
//!     [ a  c ]
//!     [ 0  d ]        a | N,  d | N,  0 ≤ c < d,  ad | N·c,
//! ```
//!
//! which is unique per subgroup and makes equality, containment and
//! enumeration exact integer arithmetic. The quotient G_K = (Z/N)²/K is
//! described by its invariant factors; component labels are the subgroups
//! H ≤ G_K with both H and G_K/H cyclic, represented canonically by their
//! preimages M (K ≤ M ≤ (Z/N)², H = M/K). Classes of pairs (K, H) under
//! label lifting are computed by union-find over the full containment
//! relation.

use serde::Serialize;

pub mod arith;
pub mod desk;
pub mod snf;

use arith::{divisors, is_prime, pow_u64};
use snf::{Mat2, extended_gcd, smith};

/// Errors from lattice construction and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("level must be positive")]
    ZeroLevel,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("{what} = {value} exceeds the desk-scale bound {bound}")]
    DeskScale {
        what: &'static str,
        value: u64,
        bound: u64,
    },
    #[error("modulus mismatch between subgroups")]
    ModulusMismatch,
    #[error("expected a containment between the given subgroups")]
    NotContained,
    #[error("quotient type ({0}, {1}) is not a prime-power group")]
    MixedQuotient(u64, u64),
    #[error("the given pair does not define a component label (both H and G/H must be cyclic)")]
    NotALabel,
}

/// Level bookkeeping N = p^n · N′ with gcd(p, N′) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FinAbPairCtx {
    pub level: u64,
    pub p: u64,
    pub n: u32,
    pub n_prime: u64,
}

impl FinAbPairCtx {
    pub fn new(level: u64, p: u64) -> Result<Self, LatticeError> {
        if level == 0 {
            return Err(LatticeError::ZeroLevel);
        }
        if !is_prime(p) {
            return Err(LatticeError::NotPrime(p));
        }
        let mut n = 0u32;
        let mut rest = level;
        while rest % p == 0 {
            rest /= p;
            n += 1;
        }
        Ok(FinAbPairCtx { level, p, n, n_prime: rest })
    }

    /// The p-part p^n of the level.
    pub fn p_part(&self) -> u64 {
        self.level / self.n_prime
    }
}

/// A subgroup of (Z/N)² in canonical Hermite form.
///
/// `basis` holds the canonical rows `[a, c]`, `[0, d]` as integers in
/// `[0, N]` (`a` and `d` are divisors of N in `1..=N`; `c < d`). Two values
/// are equal iff the subgroups are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Subgroup {
    modulus: u64,
    basis: [[u64; 2]; 2],
    order: u64,
    quotient_type: (u64, u64),
}

impl Subgroup {
    fn from_hnf(modulus: u64, a: u64, c: u64, d: u64) -> Self {
        debug_assert!(modulus >= 1);
        debug_assert!(a >= 1 && modulus % a == 0);
        debug_assert!(d >= 1 && modulus % d == 0);
        debug_assert!(c < d);
        debug_assert_eq!((modulus as u128 * c as u128) % (a as u128 * d as u128), 0);
        let order = modulus / a * (modulus / d);
        let ((s1, s2), _, _) = smith(&[[a as i128, c as i128], [0, d as i128]]);
        let quotient_type = (s2 as u64, s1 as u64);
        Subgroup { modulus, basis: [[a, c], [0, d]], order, quotient_type }
    }

    /// The subgroup generated by the given elements of (Z/N)².
    pub fn from_generators(modulus: u64, gens: &[(u64, u64)]) -> Result<Self, LatticeError> {
        if modulus == 0 {
            return Err(LatticeError::ZeroLevel);
        }
        let n = modulus as i128;
        // Rows of the lift lattice: the generators plus N·Z².
        let mut rows: Vec<(i128, i128)> = vec![(n, 0), (0, n)];
        rows.extend(
            gens.iter()
                .map(|&(x, y)| ((x % modulus) as i128, (y % modulus) as i128)),
        );
        // First Hermite pivot: gcd of first coordinates, with the second
        // coordinate of a matching combination carried along.
        let (mut a, mut c0) = (0i128, 0i128);
        for &(x, y) in &rows {
            let (g, s, t) = extended_gcd(a, x);
            c0 = s * c0 + t * y;
            a = g;
        }
        debug_assert!(a > 0);
        // Second pivot: gcd of the second coordinates after clearing firsts.
        let mut d = 0i128;
        for &(x, y) in &rows {
            debug_assert_eq!(x % a, 0);
            d = num_integer::gcd(d, y - (x / a) * c0);
        }
        debug_assert!(d > 0);
        let c = c0.rem_euclid(d);
        Ok(Subgroup::from_hnf(modulus, a as u64, c as u64, d as u64))
    }

    /// The trivial subgroup 0 ≤ (Z/N)².
    pub fn zero(modulus: u64) -> Result<Self, LatticeError> {
        Subgroup::from_generators(modulus, &[])
    }

    /// The full group (Z/N)².
    pub fn full(modulus: u64) -> Result<Self, LatticeError> {
        Subgroup::from_generators(modulus, &[(1, 0), (0, 1)])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Invariant factors (n1, n2) of G_K = (Z/N)²/K, with n2 | n1.
    pub fn quotient_type(&self) -> (u64, u64) {
        self.quotient_type
    }

    /// Canonical basis rows `[[a, c], [0, d]]`.
    pub fn basis(&self) -> [[u64; 2]; 2] {
        self.basis
    }

    /// The canonical triple (a, c, d).
    pub fn hnf_triple(&self) -> (u64, u64, u64) {
        (self.basis[0][0], self.basis[0][1], self.basis[1][1])
    }

    /// Membership of a point of (Z/N)².
    pub fn contains_point(&self, point: (u64, u64)) -> bool {
        let (a, c, d) = self.hnf_triple();
        let x = (point.0 % self.modulus) as i128;
        let y = (point.1 % self.modulus) as i128;
        if x % a as i128 != 0 {
            return false;
        }
        (y - (x / a as i128) * c as i128).rem_euclid(d as i128) == 0
    }

    /// Whether `other ≤ self` as subgroups of the same (Z/N)².
    pub fn contains(&self, other: &Subgroup) -> bool {
        assert_eq!(self.modulus, other.modulus, "subgroup moduli differ");
        let (a_s, c_s, d_s) = self.hnf_triple();
        let (a_o, c_o, d_o) = other.hnf_triple();
        // Lattice containment over Z of the canonical rows.
        if a_o % a_s != 0 || d_o % d_s != 0 {
            return false;
        }
        let rem = (c_o as i128 - (a_o / a_s) as i128 * c_s as i128).rem_euclid(d_s as i128);
        rem == 0
    }

    /// All elements, in a fixed deterministic order; length = `order()`.
    pub fn elements(&self) -> Vec<(u64, u64)> {
        let (a, c, d) = self.hnf_triple();
        let n = self.modulus;
        let mut out = Vec::with_capacity(self.order as usize);
        for i in 0..n / a {
            for j in 0..n / d {
                out.push(((i * a) % n, (i * c + j * d) % n));
            }
        }
        debug_assert_eq!(out.len() as u64, self.order);
        out
    }

    /// Smith coordinates of G_K: a map from points of (Z/N)² to
    /// Z/n1 × Z/n2 inducing an isomorphism of the quotient.
    pub fn smith_map(&self) -> SmithMap {
        let (a, c, d) = self.hnf_triple();
        let ((s1, s2), _, v) = smith(&[[a as i128, c as i128], [0, d as i128]]);
        SmithMap { v, s1, s2 }
    }
}

/// Coordinate map onto G_K ≅ Z/n1 × Z/n2 (see [`Subgroup::smith_map`]).
#[derive(Debug, Clone)]
pub struct SmithMap {
    v: Mat2,
    s1: i128,
    s2: i128,
}

impl SmithMap {
    /// The quotient type in (n1, n2) order, n2 | n1.
    pub fn quotient_type(&self) -> (u64, u64) {
        (self.s2 as u64, self.s1 as u64)
    }

    /// Image of a point in Z/n1 × Z/n2 coordinates.
    pub fn apply(&self, point: (u64, u64)) -> (u64, u64) {
        let y0 = point.0 as i128;
        let y1 = point.1 as i128;
        let img0 = (y0 * self.v[0][0] + y1 * self.v[1][0]).rem_euclid(self.s1);
        let img1 = (y0 * self.v[0][1] + y1 * self.v[1][1]).rem_euclid(self.s2);
        // Invariant-factor order (n1, n2) = (s2, s1): big factor first.
        (img1 as u64, img0 as u64)
    }
}

/// Every subgroup of (Z/N)², canonical and duplicate-free, sorted by
/// (order, basis).
pub fn enumerate_subgroups(modulus: u64) -> Result<Vec<Subgroup>, LatticeError> {
    if modulus == 0 {
        return Err(LatticeError::ZeroLevel);
    }
    let n = modulus;
    let mut out = Vec::new();
    for &a in &divisors(n) {
        for &d in &divisors(n) {
            // c must satisfy ad | N·c, i.e. c ≡ 0 mod ad/gcd(ad, N).
            let step = a * d / num_integer::gcd(a * d, n);
            let mut c = 0u64;
            while c < d {
                out.push(Subgroup::from_hnf(n, a, c, d));
                c += step;
            }
        }
    }
    out.sort_by(|s, t| (s.order, s.basis).cmp(&(t.order, t.basis)));
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    Ok(out)
}

/// A component label of K: a subgroup H ≤ G_K with H and G_K/H both cyclic,
/// stored via its preimage M (so H = M/K and G_K/H ≅ (Z/N)²/M).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Label {
    parent: Subgroup,
    preimage: Subgroup,
    gens_smith: Vec<(u64, u64)>,
    htype: (u64, u64),
}

impl Label {
    /// Builds the label H = preimage/parent, verifying membership in L_K.
    pub fn new(parent: &Subgroup, preimage: &Subgroup) -> Result<Self, LatticeError> {
        match Label::classify(parent, preimage)? {
            LiftOutcome::Lifted(label) => {
                if label.preimage.quotient_type().1 == 1 {
                    Ok(label)
                } else {
                    Err(LatticeError::NotALabel)
                }
            }
            LiftOutcome::NotCyclic => Err(LatticeError::NotALabel),
        }
    }

    /// Builds H = preimage/parent when it is cyclic, without requiring
    /// G/H to be cyclic. Shared by `new` and `lift_label`.
    fn classify(parent: &Subgroup, preimage: &Subgroup) -> Result<LiftOutcome, LatticeError> {
        if parent.modulus != preimage.modulus {
            return Err(LatticeError::ModulusMismatch);
        }
        if !preimage.contains(parent) {
            return Err(LatticeError::NotContained);
        }
        let (a_k, c_k, d_k) = parent.hnf_triple();
        let (a_m, c_m, d_m) = preimage.hnf_triple();
        // The parent lattice expressed in the preimage basis.
        let rel: Mat2 = [
            [
                (a_k / a_m) as i128,
                (c_k as i128 - (a_k / a_m) as i128 * c_m as i128) / d_m as i128,
            ],
            [0, (d_k / d_m) as i128],
        ];
        let ((t1, t2), _, _) = smith(&rel);
        if t1 != 1 {
            return Ok(LiftOutcome::NotCyclic);
        }
        let htype = (t2 as u64, t1 as u64);
        let map = parent.smith_map();
        let mut gens_smith: Vec<(u64, u64)> = [(a_m, c_m), (0, d_m)]
            .iter()
            .map(|&g| map.apply(g))
            .filter(|&g| g != (0, 0))
            .collect();
        gens_smith.sort_unstable();
        gens_smith.dedup();
        Ok(LiftOutcome::Lifted(Label {
            parent: parent.clone(),
            preimage: preimage.clone(),
            gens_smith,
            htype,
        }))
    }

    pub fn parent(&self) -> &Subgroup {
        &self.parent
    }

    /// The preimage M of H in (Z/N)²; canonical representative of H.
    pub fn preimage(&self) -> &Subgroup {
        &self.preimage
    }

    /// Generators of H in Smith coordinates of G_K.
    pub fn gens_smith(&self) -> &[(u64, u64)] {
        &self.gens_smith
    }

    /// Invariant factors (h1, h2) of H; cyclic means h2 = 1.
    pub fn htype(&self) -> (u64, u64) {
        self.htype
    }

    /// |H|.
    pub fn order(&self) -> u64 {
        self.htype.0 * self.htype.1
    }

    pub fn is_trivial(&self) -> bool {
        self.htype == (1, 1)
    }

    /// Stable string id, derived from the canonical preimage triple.
    pub fn id(&self) -> String {
        let (a, c, d) = self.preimage.hnf_triple();
        format!("H[{a},{c},{d}]")
    }
}

/// Result of lifting a label along a containment K′ ≤ K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftOutcome {
    Lifted(Label),
    NotCyclic,
}

/// All labels of K (subgroups H ≤ G_K with H, G_K/H cyclic), canonical and
/// sorted by (|H|, preimage basis).
///
/// Requires G_K to be a group of prime-power order (or trivial); mixed
/// orders are rejected — prime-to-p structure is a product index handled by
/// callers.
pub fn label_set(k: &Subgroup) -> Result<Vec<Label>, LatticeError> {
    let (n1, n2) = k.quotient_type();
    if n1 > 1 && arith::factor(n1).len() != 1 {
        return Err(LatticeError::MixedQuotient(n1, n2));
    }
    let mut out = Vec::new();
    for m in enumerate_subgroups(k.modulus())? {
        if !m.contains(k) {
            continue;
        }
        if m.quotient_type().1 != 1 {
            continue; // G_K/H ≅ (Z/N)²/M must be cyclic
        }
        match Label::classify(k, &m)? {
            LiftOutcome::Lifted(label) => out.push(label),
            LiftOutcome::NotCyclic => {}
        }
    }
    out.sort_by(|x, y| {
        (x.order(), x.preimage.basis()).cmp(&(y.order(), y.preimage.basis()))
    });
    Ok(out)
}

/// Lifts H ∈ L_K along K′ ≤ K to π^{-1}(H) ≤ G_{K′}, where π is the
/// natural surjection G_{K′} → G_K. Returns `NotCyclic` when the preimage
/// is not cyclic (then it is not a label).
pub fn lift_label(kp: &Subgroup, k: &Subgroup, h: &Label) -> Result<LiftOutcome, LatticeError> {
    if h.parent() != k {
        return Err(LatticeError::NotALabel);
    }
    if !k.contains(kp) {
        return Err(LatticeError::NotContained);
    }
    // π^{-1}(M/K) = M/K′: same preimage, new parent.
    Label::classify(kp, h.preimage())
}

/// A component class: an equivalence class of pairs (K, H) under label
/// lifting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LambdaClass {
    id: String,
    members: Vec<LambdaMember>,
}

/// One member pair (K, H) of a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LambdaMember {
    pub k: Subgroup,
    pub h: Label,
}

impl LambdaClass {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn members(&self) -> &[LambdaMember] {
        &self.members
    }
}

/// Desk-scale bound specific to class enumeration.
const LAMBDA_SCALE_BOUND: u64 = 27;

/// The partition Λ of {(K, H) : K ≤ (Z/p^n)², H ∈ L_K} under the
/// equivalence generated by (K, H) ~ (K′, π^{-1}(H)) for K′ ≤ K with cyclic
/// preimage. Computed by union-find over all comparable pairs; classes and
/// members are deterministically ordered, with ids `lambda[0]`,
/// `lambda[1]`, ….
pub fn lambda_classes(p: u64, n: u32) -> Result<Vec<LambdaClass>, LatticeError> {
    if !is_prime(p) {
        return Err(LatticeError::NotPrime(p));
    }
    if n == 0 {
        return Err(LatticeError::InvalidArgument("class enumeration needs n ≥ 1"));
    }
    let bound = LAMBDA_SCALE_BOUND.min(desk::max_rank());
    let pn = pow_u64(p, n);
    desk::check_scale("p^n", pn, bound)?;

    // All pairs (K, H), H given by its preimage M.
    let subgroups = enumerate_subgroups(pn)?;
    let mut pairs: Vec<LambdaMember> = Vec::new();
    for k in &subgroups {
        for h in label_set(k)? {
            pairs.push(LambdaMember { k: k.clone(), h });
        }
    }

    // Union-find over all comparable pairs: (K, M) ~ (K′, M) for K′ ≤ K.
    let mut uf = UnionFind::new(pairs.len());
    for i in 0..pairs.len() {
        for j in 0..i {
            if pairs[i].h.preimage() != pairs[j].h.preimage() {
                continue;
            }
            if pairs[i].k.contains(&pairs[j].k) || pairs[j].k.contains(&pairs[i].k) {
                uf.union(i, j);
            }
        }
    }

    // Collect classes, order each member list and the class list.
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..pairs.len() {
        by_root.entry(uf.find(i)).or_default().push(i);
    }
    let mut classes: Vec<Vec<LambdaMember>> = by_root
        .into_values()
        .map(|idxs| {
            let mut members: Vec<LambdaMember> =
                idxs.into_iter().map(|i| pairs[i].clone()).collect();
            members.sort_by(|x, y| {
                (x.k.order(), x.k.basis(), x.h.preimage().basis())
                    .cmp(&(y.k.order(), y.k.basis(), y.h.preimage().basis()))
            });
            members
        })
        .collect();
    // Deterministic class order: the shared preimage M, largest first (the
    // class of the full group comes first, matching the λ0, λ1, … naming).
    classes.sort_by(|x, y| {
        let mx = x[0].h.preimage();
        let my = y[0].h.preimage();
        (std::cmp::Reverse(mx.order()), mx.basis()).cmp(&(std::cmp::Reverse(my.order()), my.basis()))
    });
    Ok(classes
        .into_iter()
        .enumerate()
        .map(|(i, members)| LambdaClass { id: format!("lambda[{i}]"), members })
        .collect())
}

/// Minimal union-find with path halving and union by size.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}
