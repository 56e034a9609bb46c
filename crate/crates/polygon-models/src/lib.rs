//! Degenerate polygon fibers and their level structures.
//!
//! A d-sided polygon degeneration has smooth locus G_m × Z/d: a point is a
//! pair (u, c) with u a unit of the field and c the index of the side it
//! sits on. The torsion of that group is small enough at desk scale to
//! enumerate outright, which is what this crate does:
//!
//! * [`PolygonPicard`] — the group law on the smooth locus and its N-torsion,
//! * [`gamma`] — the ample point check (Γ₁-style) and the full-level
//!   verdict (Γ-style) via divisor identities that remain correct when the
//!   level meets the characteristic,
//! * [`decomposition`] — the N-torsion split μ_N × (Z/d)[N],
//! * [`mapfile`] — JSON descriptions of candidate level maps.
//!
//! All arithmetic is exact; fields come from [`curve_arith::field`].

pub mod decomposition;
pub mod gamma;
pub mod mapfile;

pub use decomposition::{TorsionDecomposition, torsor_class_decomposition};
pub use gamma::{Verdict, gamma1_count, polygon_gamma1_check, polygon_gamma_check};
pub use mapfile::{GenImage, PolygonMapFile, load_map_file, parse_map_file};

use curve_arith::CurveError;
use curve_arith::field::{FieldElem, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolygonError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("a polygon needs at least one side")]
    NoSides,
    #[error("level must be positive")]
    ZeroLevel,
    #[error("the full-level check runs on the N-gon: d = {d}, level = {n}")]
    GonMismatch { d: u64, n: u64 },
    #[error("the u-coordinate of a smooth point must be a unit")]
    NotAUnit,
    #[error("side index {c} is out of range for a {d}-gon")]
    BadSide { c: u64, d: u64 },
    #[error("map file error: {0}")]
    MapFile(String),
}

/// A point of the smooth locus: a unit u on side c.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygonPoint {
    u: FieldElem,
    c: u64,
}

impl PolygonPoint {
    pub fn unit(&self) -> &FieldElem {
        &self.u
    }

    pub fn side(&self) -> u64 {
        self.c
    }
}

/// The smooth locus of a d-sided polygon fiber over a finite field, as a
/// group: G_m × Z/d with componentwise multiplication and side addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonPicard {
    field: FiniteField,
    d: u64,
}

impl PolygonPicard {
    pub fn new(field: FiniteField, d: u64) -> Result<Self, PolygonError> {
        if d == 0 {
            return Err(PolygonError::NoSides);
        }
        Ok(PolygonPicard { field, d })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn sides(&self) -> u64 {
        self.d
    }

    /// Wraps (u, c) as a smooth point, refusing u = 0 and out-of-range sides.
    pub fn smooth_point(&self, u: FieldElem, c: u64) -> Result<PolygonPoint, PolygonError> {
        if self.field.is_zero(&u) {
            return Err(PolygonError::NotAUnit);
        }
        if c >= self.d {
            return Err(PolygonError::BadSide { c, d: self.d });
        }
        Ok(PolygonPoint { u, c })
    }

    pub fn identity(&self) -> PolygonPoint {
        PolygonPoint { u: self.field.one(), c: 0 }
    }

    pub fn add(&self, p1: &PolygonPoint, p2: &PolygonPoint) -> PolygonPoint {
        PolygonPoint {
            u: self.field.mul(&p1.u, &p2.u),
            c: (p1.c + p2.c) % self.d,
        }
    }

    pub fn neg(&self, p: &PolygonPoint) -> PolygonPoint {
        PolygonPoint {
            u: self.field.inv(&p.u),
            c: (self.d - p.c) % self.d,
        }
    }

    /// n·(u, c) = (uⁿ, nc mod d).
    pub fn scalar_mul(&self, n: u64, p: &PolygonPoint) -> PolygonPoint {
        PolygonPoint {
            u: self.field.pow(&p.u, n),
            c: (n % self.d) * p.c % self.d,
        }
    }

    /// The rational N-torsion {(u, c) : uᴺ = 1, N·c ≡ 0 mod d}, sorted.
    pub fn torsion(&self, n: u64) -> Result<Vec<PolygonPoint>, PolygonError> {
        if n == 0 {
            return Err(PolygonError::ZeroLevel);
        }
        let mut out = Vec::new();
        for u in self.field.roots_of_unity(n) {
            for c in 0..self.d {
                if n * c % self.d == 0 {
                    out.push(PolygonPoint { u: u.clone(), c });
                }
            }
        }
        out.sort();
        Ok(out)
    }
}
