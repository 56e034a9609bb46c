//! Quotient isogenies E → E/D for a finite rational subgroup D, in Vélu's
//! normalized form, with a second independent evaluation route kept
//! alongside for cross-checking.
//!
//! Route A is the classical rational map: per kernel representative Q,
//!
//!   x′ = x + Σ [v_Q/(x − x_Q) + u_Q/(x − x_Q)²],     y′ = y · dx′/dx,
//!
//! using that the quotient map is normalized, so the y-coordinate is the
//! derivative twist of the x-coordinate. Route B is the translate sum
//! x′(P) = x_P + Σ_{Q ∈ D∖O} (x_{P+Q} − x_Q) (and likewise for y), which
//! makes no use of the rational-function form at all.

use crate::CurveError;
use crate::curve::{Curve, CurvePoint};
use crate::field::FieldElem;
use std::collections::BTreeSet;

/// A quotient isogeny with precomputed kernel data.
#[derive(Debug, Clone)]
pub struct Isogeny {
    domain: Curve,
    codomain: Curve,
    /// The full kernel, origin included.
    kernel: Vec<CurvePoint>,
    /// One representative per ±pair; 2-torsion points appear once.
    reps: Vec<CurvePoint>,
}

/// Validates that `d` is a finite subgroup of E(F_q) (origin included,
/// closed under addition, all points rational).
fn check_subgroup(e: &Curve, d: &[CurvePoint]) -> Result<BTreeSet<CurvePoint>, CurveError> {
    for point in d {
        if !e.on_curve(point) {
            return Err(CurveError::NotOnCurve);
        }
    }
    let set: BTreeSet<CurvePoint> = d.iter().cloned().collect();
    if set.len() != d.len() || !set.contains(&CurvePoint::Infinity) {
        return Err(CurveError::KernelNotSubgroup);
    }
    for p1 in &set {
        for p2 in &set {
            if !set.contains(&e.add(p1, p2)) {
                return Err(CurveError::KernelNotSubgroup);
            }
        }
    }
    Ok(set)
}

/// The quotient isogeny E → E/D.
pub fn velu_quotient(e: &Curve, d: &[CurvePoint]) -> Result<Isogeny, CurveError> {
    let set = check_subgroup(e, d)?;
    let f = e.field();
    // Representatives: 2-torsion once; one of {Q, −Q} otherwise.
    let mut reps = Vec::new();
    for q in &set {
        let Some((_, y)) = q.xy() else { continue };
        if f.is_zero(y) || *q <= e.neg(q) {
            reps.push(q.clone());
        }
    }
    // Vélu sums for the codomain coefficients.
    let mut v = f.zero();
    let mut w = f.zero();
    for q in &reps {
        let (xq, yq) = q.xy().expect("reps are affine");
        let gx = f.add(&f.scale(3, &f.mul(xq, xq)), e.a());
        let vq = if f.is_zero(yq) { gx.clone() } else { f.scale(2, &gx) };
        let uq = f.scale(4, &f.mul(yq, yq)); // (−2y)²
        v = f.add(&v, &vq);
        w = f.add(&w, &f.add(&uq, &f.mul(xq, &vq)));
    }
    let a_new = f.sub(e.a(), &f.scale(5, &v));
    let b_new = f.sub(e.b(), &f.scale(7, &w));
    let codomain = Curve::new(f.clone(), a_new, b_new)?;
    Ok(Isogeny { domain: e.clone(), codomain, kernel: set.into_iter().collect(), reps })
}

impl Isogeny {
    pub fn domain(&self) -> &Curve {
        &self.domain
    }

    pub fn codomain(&self) -> &Curve {
        &self.codomain
    }

    pub fn degree(&self) -> u64 {
        self.kernel.len() as u64
    }

    pub fn kernel(&self) -> &[CurvePoint] {
        &self.kernel
    }

    fn in_kernel(&self, point: &CurvePoint) -> bool {
        self.kernel.contains(point)
    }

    /// Route A: the rational map.
    pub fn eval(&self, point: &CurvePoint) -> Result<CurvePoint, CurveError> {
        if !self.domain.on_curve(point) {
            return Err(CurveError::NotOnCurve);
        }
        if self.in_kernel(point) {
            return Ok(CurvePoint::Infinity);
        }
        let f = self.domain.field();
        let (x, y) = point.xy().expect("non-kernel points are affine");
        let mut x_new = x.clone();
        let mut deriv = f.one();
        for q in &self.reps {
            let (xq, yq) = q.xy().expect("reps are affine");
            let gx = f.add(&f.scale(3, &f.mul(xq, xq)), self.domain.a());
            let vq = if f.is_zero(yq) { gx.clone() } else { f.scale(2, &gx) };
            let uq = f.scale(4, &f.mul(yq, yq));
            let inv1 = f.inv(&f.sub(x, xq)); // never zero off the kernel
            let inv2 = f.mul(&inv1, &inv1);
            let inv3 = f.mul(&inv2, &inv1);
            x_new = f.add(&x_new, &f.add(&f.mul(&vq, &inv1), &f.mul(&uq, &inv2)));
            deriv = f.sub(
                &deriv,
                &f.add(&f.mul(&vq, &inv2), &f.scale(2, &f.mul(&uq, &inv3))),
            );
        }
        let y_new = f.mul(y, &deriv);
        let image = CurvePoint::affine(x_new, y_new);
        debug_assert!(self.codomain.on_curve(&image));
        Ok(image)
    }

    /// Route B: the translate sum, kept deliberately independent of the
    /// rational-map form.
    pub fn eval_translate(&self, point: &CurvePoint) -> Result<CurvePoint, CurveError> {
        if !self.domain.on_curve(point) {
            return Err(CurveError::NotOnCurve);
        }
        if self.in_kernel(point) {
            return Ok(CurvePoint::Infinity);
        }
        let f = self.domain.field();
        let (x, y) = point.xy().expect("non-kernel points are affine");
        let mut x_new = x.clone();
        let mut y_new = y.clone();
        for q in &self.kernel {
            let Some((xq, yq)) = q.xy() else { continue };
            let sum = self.domain.add(point, q);
            let (xs, ys) = sum.xy().expect("P + Q is affine for P off the kernel");
            x_new = f.add(&x_new, &f.sub(xs, xq));
            y_new = f.add(&y_new, &f.sub(ys, yq));
        }
        Ok(CurvePoint::affine(x_new, y_new))
    }

    /// The image φ(E(F_q)) as a deduplicated point set (in point order).
    pub fn image_points(&self) -> Result<Vec<CurvePoint>, CurveError> {
        let mut out = BTreeSet::new();
        for point in self.domain.enumerate_points() {
            out.insert(self.eval(&point)?);
        }
        Ok(out.into_iter().collect())
    }

    /// Independent codomain fit: recover (A″, B″) linearly from two image
    /// points with distinct x and confirm every image satisfies the cubic.
    ///
    /// With fewer than two distinct x-coordinates among the affine images
    /// the linear system cannot pin both coefficients, and the fit reports
    /// [`CodomainFit::Underdetermined`] rather than pretending to confirm
    /// anything. An inconsistent fit is a hard error.
    pub fn codomain_fit(&self) -> Result<CodomainFit, CurveError> {
        let f = self.domain.field();
        let images: Vec<CurvePoint> = self
            .image_points()?
            .into_iter()
            .filter(|point| !point.is_infinity())
            .collect();
        let mut fit = None;
        'outer: for (i, p1) in images.iter().enumerate() {
            for p2 in images.iter().skip(i + 1) {
                let (x1, y1) = p1.xy().unwrap();
                let (x2, y2) = p2.xy().unwrap();
                if x1 == x2 {
                    continue;
                }
                // y² − x³ = A·x + B at two points with distinct x.
                let c1 = f.sub(&f.mul(y1, y1), &f.mul(x1, &f.mul(x1, x1)));
                let c2 = f.sub(&f.mul(y2, y2), &f.mul(x2, &f.mul(x2, x2)));
                let a = f.div(&f.sub(&c1, &c2), &f.sub(x1, x2));
                let b = f.sub(&c1, &f.mul(&a, x1));
                fit = Some((a, b));
                break 'outer;
            }
        }
        let Some((a, b)) = fit else {
            return Ok(CodomainFit::Underdetermined);
        };
        for point in &images {
            let (x, y) = point.xy().unwrap();
            let rhs = f.add(&f.mul(x, &f.mul(x, x)), &f.add(&f.mul(&a, x), &b));
            if f.mul(y, y) != rhs {
                return Err(CurveError::IsoNotFound);
            }
        }
        Ok(CodomainFit::Fitted { a, b })
    }
}

/// Result of the linear codomain re-fit from rational image points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodomainFit {
    /// Coefficients recovered from two images with distinct x and verified
    /// against every rational image.
    Fitted { a: FieldElem, b: FieldElem },
    /// Every affine image shares one x-coordinate, so the linear system
    /// for (A, B) is rank-deficient and no independent fit exists.
    Underdetermined,
}

/// The quotient of φ's codomain by φ(E[d](F_q)). Requires the d-torsion of
/// the domain to be fully rational, so that the image subgroup has order d.
pub fn quotient_by_torsion_image(phi: &Isogeny, d: u64) -> Result<Isogeny, CurveError> {
    let torsion = phi.domain().torsion_points(d);
    if torsion.len() as u64 != d * d {
        return Err(CurveError::TorsionNotRational { n: d });
    }
    let mut image = BTreeSet::new();
    for t in &torsion {
        image.insert(phi.eval(t)?);
    }
    if image.len() as u64 != d {
        return Err(CurveError::TorsionNotRational { n: d });
    }
    let image: Vec<CurvePoint> = image.into_iter().collect();
    velu_quotient(phi.codomain(), &image)
}

/// All u ≠ 0 with u⁴·A_from = A_to and u⁶·B_from = B_to; each gives the
/// Weierstrass isomorphism (x, y) ↦ (u²x, u³y) from `from` to `to`.
pub fn twist_isos(from: &Curve, to: &Curve) -> Vec<FieldElem> {
    let f = from.field();
    f.elements()
        .into_iter()
        .filter(|u| !f.is_zero(u))
        .filter(|u| {
            let u2 = f.mul(u, u);
            let u4 = f.mul(&u2, &u2);
            let u6 = f.mul(&u4, &u2);
            f.mul(&u4, from.a()) == *to.a() && f.mul(&u6, from.b()) == *to.b()
        })
        .collect()
}

/// Applies the u-twist isomorphism to a point.
pub fn apply_twist(e_from: &Curve, u: &FieldElem, point: &CurvePoint) -> CurvePoint {
    let f = e_from.field();
    match point.xy() {
        None => CurvePoint::Infinity,
        Some((x, y)) => {
            let u2 = f.mul(u, u);
            let u3 = f.mul(&u2, u);
            CurvePoint::affine(f.mul(&u2, x), f.mul(&u3, y))
        }
    }
}

/// Builds ψ = E′ → E′/φ(E[d]) and finds the isomorphism ι back to E with
/// ι ∘ ψ ∘ φ = [d] on every rational point. Returns (ψ, u).
pub fn dual_up_to_iso(phi: &Isogeny) -> Result<(Isogeny, FieldElem), CurveError> {
    let d = phi.degree();
    let psi = quotient_by_torsion_image(phi, d)?;
    let domain_points = phi.domain().enumerate_points();
    for u in twist_isos(psi.codomain(), phi.domain()) {
        let ok = domain_points.iter().all(|point| {
            let through = psi.eval(&phi.eval(point).unwrap()).unwrap();
            apply_twist(psi.codomain(), &u, &through) == phi.domain().scalar_mul(d, point)
        });
        if ok {
            return Ok((psi, u));
        }
    }
    Err(CurveError::IsoNotFound)
}
