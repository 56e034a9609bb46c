//! The Weil pairing on N-torsion, via Miller's algorithm with an auxiliary
//! shift point.
//!
//! e_N(P, Q) is computed as
//!
//!   [f_{N,P}(Q + S) / f_{N,P}(S)] · [f_{N,Q}(−S) / f_{N,Q}(P − S)]
//!
//! for an auxiliary point S making every line evaluation nondegenerate; S
//! is taken from the deterministic point enumeration, retrying until all
//! four Miller evaluations are defined and nonzero.

use crate::CurveError;
use crate::curve::{Curve, CurvePoint};
use crate::field::FieldElem;

/// Value at `at` of the line through `v` and `w` (tangent when v = w) and
/// of the vertical through v + w, as a (numerator, denominator) pair of
/// the Miller step factor. `None` when the evaluation degenerates.
fn line_step(e: &Curve, v: &CurvePoint, w: &CurvePoint, at: &CurvePoint) -> Option<(FieldElem, FieldElem)> {
    let f = e.field();
    let (ax, ay) = at.xy()?;
    let (vx, vy) = match v.xy() {
        // Adding the origin contributes a factor of 1.
        None => return Some((f.one(), f.one())),
        Some(c) => c,
    };
    let (wx, wy) = match w.xy() {
        None => return Some((f.one(), f.one())),
        Some(c) => c,
    };
    if vx == wx && *wy == f.neg(vy) {
        // v + w = O: the line is the vertical at v; no vertical below.
        let num = f.sub(ax, vx);
        if f.is_zero(&num) {
            return None;
        }
        return Some((num, f.one()));
    }
    let lambda = if vx == wx {
        f.div(&f.add(&f.scale(3, &f.mul(vx, vx)), e.a()), &f.scale(2, vy))
    } else {
        f.div(&f.sub(wy, vy), &f.sub(wx, vx))
    };
    // Line through v with slope λ, evaluated at `at`.
    let num = f.sub(&f.sub(ay, vy), &f.mul(&lambda, &f.sub(ax, vx)));
    // Vertical at the sum.
    let sum = e.add(v, w);
    let (sx, _) = sum.xy().expect("affine sum in the non-cancelling case");
    let den = f.sub(ax, sx);
    if f.is_zero(&num) || f.is_zero(&den) {
        return None;
    }
    Some((num, den))
}

/// f_{N,P} evaluated at `at` by the double-and-add Miller loop; `None` when
/// some intermediate line passes through `at`.
fn miller(e: &Curve, p: &CurvePoint, n: u64, at: &CurvePoint) -> Option<FieldElem> {
    let f = e.field();
    at.xy()?;
    let mut acc = f.one();
    let mut v = p.clone();
    let bits = 64 - n.leading_zeros();
    for i in (0..bits.saturating_sub(1)).rev() {
        let (num, den) = line_step(e, &v, &v, at)?;
        acc = f.div(&f.mul(&f.mul(&acc, &acc), &num), &den);
        v = e.add(&v, &v);
        if (n >> i) & 1 == 1 {
            let (num, den) = line_step(e, &v, p, at)?;
            acc = f.div(&f.mul(&acc, &num), &den);
            v = e.add(&v, p);
        }
    }
    Some(acc)
}

/// The Weil pairing e_N(P, Q) ∈ μ_N(F_q). Requires N ≥ 1 prime to the
/// characteristic and N·P = N·Q = O.
pub fn weil_pairing(
    e: &Curve,
    p: &CurvePoint,
    q: &CurvePoint,
    n: u64,
) -> Result<FieldElem, CurveError> {
    let f = e.field();
    let char_p = f.characteristic();
    if n == 0 || n % char_p == 0 {
        return Err(CurveError::BadLevel { n, p: char_p });
    }
    for point in [p, q] {
        if !e.on_curve(point) {
            return Err(CurveError::NotOnCurve);
        }
        if !e.scalar_mul(n, point).is_infinity() {
            return Err(CurveError::NotTorsion { n });
        }
    }
    if p.is_infinity() || q.is_infinity() {
        return Ok(f.one());
    }
    for s in e.enumerate_points() {
        if s.is_infinity() {
            continue;
        }
        let qs = e.add(q, &s);
        let ps = e.sub(p, &s);
        let neg_s = e.neg(&s);
        let (Some(fp_qs), Some(fp_s), Some(fq_ps), Some(fq_negs)) = (
            miller(e, p, n, &qs),
            miller(e, p, n, &s),
            miller(e, q, n, &ps),
            miller(e, q, n, &neg_s),
        ) else {
            continue;
        };
        let value = f.div(&f.mul(&fp_qs, &fq_negs), &f.mul(&fp_s, &fq_ps));
        return Ok(value);
    }
    Err(CurveError::PairingDegenerate)
}
