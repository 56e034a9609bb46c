//! Elliptic curves over small finite fields, exact and exhaustive.
//!
//! Everything here works at desk scale: fields are capped at ten thousand
//! elements, points are counted by enumeration, and group structure is
//! established by direct computation rather than by algorithms that only
//! pay off asymptotically. That keeps every routine independently
//! checkable — the point counts, pairings, and isogenies in this crate are
//! used as ground truth by the crates built on top of it.
//!
//! The pieces:
//!
//! * [`field`] — arithmetic in F_{p^k} with explicit moduli,
//! * [`curve`] — short Weierstrass curves, the group law, point counting,
//!   and level-structure checks (exact order, Γ₁, Γ₀),
//! * [`poly`] — dense univariate polynomials over a [`field::FiniteField`],
//! * [`pairing`] — the Weil pairing on E[N] via Miller's algorithm,
//! * [`velu`] — quotient isogenies with two independent evaluation routes
//!   and an up-to-isomorphism dual,
//! * [`torsor`] — the μ_N-torsor checks for cyclic quotients,
//! * [`label`] — connected/étale component labels in characteristic p,
//! * [`fixture`] — TOML curve fixtures with validation on load.

pub mod curve;
pub mod field;
pub mod fixture;
pub mod label;
pub mod pairing;
pub mod poly;
pub mod torsor;
pub mod velu;

pub use curve::{
    Curve, CurvePoint, exact_order_check, gamma0_check, gamma1_check, ordinary_check,
};
pub use field::{FieldElem, FiniteField};
pub use fixture::{CurveFixture, FieldSpec, LoadedFixture, load_fixture, parse_fixture};
pub use label::char_p_component_label;
pub use pairing::weil_pairing;
pub use torsor::{TorsorReport, torsor_checks, verify_quotient_torsor};
pub use velu::{CodomainFit, Isogeny, dual_up_to_iso, velu_quotient};

use crate::field::FieldError;

/// Errors from curve construction, arithmetic, and the verification
/// routines layered on top.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    /// Short Weierstrass form needs 2 and 3 invertible.
    #[error("characteristic {0} is too small for short Weierstrass form")]
    SmallCharacteristic(u64),
    #[error("discriminant is zero: the cubic is singular")]
    SingularCurve,
    #[error("point does not satisfy the curve equation")]
    NotOnCurve,
    /// Prime-to-p machinery (pairings, torsors, Γ-structures) refuses
    /// levels divisible by the characteristic.
    #[error("level {n} is not valid in characteristic {p}")]
    BadLevel { n: u64, p: u64 },
    #[error("point is not {n}-torsion")]
    NotTorsion { n: u64 },
    /// No auxiliary shift point gave a nondegenerate Miller evaluation.
    #[error("pairing evaluation degenerate for every auxiliary shift")]
    PairingDegenerate,
    /// Component labels in characteristic p need an ordinary curve.
    #[error("curve is supersingular")]
    Supersingular,
    #[error("point order {order} is not a power of the characteristic")]
    NotPPowerOrder { order: u64 },
    #[error("point has p-exponent {found}, above the level exponent {level}")]
    ExponentExceedsLevel { found: u32, level: u32 },
    /// The rational points do not contain the full n-torsion.
    #[error("{n}-torsion is not fully rational over this field")]
    TorsionNotRational { n: u64 },
    #[error("no Weierstrass isomorphism with the required property exists")]
    IsoNotFound,
    #[error("kernel is not a subgroup of the rational points")]
    KernelNotSubgroup,
    #[error("fixture error: {0}")]
    Fixture(String),
}
