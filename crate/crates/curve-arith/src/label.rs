//! Component labels for points of p-power order on ordinary curves in
//! characteristic p.
//!
//! Over F_q with q = p^k, the connected–étale splitting of the p-divisible
//! group leaves a rational point P of exact order p^b purely on the étale
//! side, so at level p^n the pair (connected exponent, étale exponent)
//! attached to P is (n − b, b). Reading the same point at level p^{n+1}
//! shifts the label to (n + 1 − b, b): the étale coordinate is pinned by
//! the point, the connected one grows with the level.

use crate::CurveError;
use crate::curve::{Curve, CurvePoint};
use level_lattice::arith::p_power_exponent;

/// The (connected, étale) exponent pair at level p^n attached to a rational
/// point of exact p-power order on an ordinary curve.
///
/// Errors: the point must lie on the curve, the curve must be ordinary, the
/// point's order must be a power of p = char F_q, and that power must not
/// exceed the level.
pub fn char_p_component_label(
    e: &Curve,
    point: &CurvePoint,
    n: u32,
) -> Result<(u32, u32), CurveError> {
    if !e.on_curve(point) {
        return Err(CurveError::NotOnCurve);
    }
    if !e.is_ordinary() {
        return Err(CurveError::Supersingular);
    }
    let p = e.field().characteristic();
    let order = e.point_order(point);
    let Some(b) = p_power_exponent(order, p) else {
        return Err(CurveError::NotPPowerOrder { order });
    };
    if b > n {
        return Err(CurveError::ExponentExceedsLevel { found: b, level: n });
    }
    Ok((n - b, b))
}
