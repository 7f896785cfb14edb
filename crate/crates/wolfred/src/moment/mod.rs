//! The group-level moment map of the Wolf space SO(V)/SO(3)xSO(4), its
//! differential, the regularity stratification of points, the second
//! fundamental form and sectional curvature of the zero locus, and the
//! energy function whose gradient flow seeks the zero locus.

pub mod flow;
pub mod sample;

use crate::error::MomentError;
use crate::lie::{
    bracket, explicit_formula, frob, sp1, split, GroupElement, Sig, SkewAdjoint, TwoForm,
};
use crate::linalg::{Mat7, Vec3};
use serde::{Deserialize, Serialize};

/// A one-dimensional action: the nonzero generator of t inside so(V, eta).
#[derive(Debug, Clone)]
pub struct MomentAction {
    generator: SkewAdjoint,
}

impl MomentAction {
    pub fn new(generator: SkewAdjoint) -> Result<Self, MomentError> {
        if generator.norm() == 0.0 {
            return Err(MomentError::ZeroGenerator);
        }
        Ok(MomentAction { generator })
    }

    pub fn generator(&self) -> &SkewAdjoint {
        &self.generator
    }

    pub fn sig(&self) -> Sig {
        self.generator.sig()
    }

    pub fn moment(&self, g: &GroupElement) -> Result<Vec3, MomentError> {
        moment(&self.generator, g)
    }
}

/// Regularity of a point with respect to the one-dimensional action: the
/// three nested irregularity conditions Ad_g^-1 t in h', h' + u, h.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regularity {
    Regular,
    #[serde(rename = "irregular-3sasakian")]
    Irregular3Sasakian,
    #[serde(rename = "irregular-twistor")]
    IrregularTwistor,
    #[serde(rename = "irregular-quaternionic")]
    IrregularQuaternionic,
}

/// `mu_v(g) = (Ad_g^-1 v)_s` as an R^3 value under the pinned
/// identification.
pub fn moment(v: &SkewAdjoint, g: &GroupElement) -> Result<Vec3, MomentError> {
    let u = g.inverse().adjoint(v)?;
    Ok(sp1(v.sig()).to_r3(u.matrix()))
}

/// The moment map written on the 2-form side: components
/// `w(f1,f2)+w(f3,f4), w(f1,f3)-w(f2,f4), w(f1,f4)+w(f2,f3)` over the last
/// four columns of g. Agrees with `moment(F^-1(w), g)` exactly.
pub fn moment_explicit(w: &TwoForm, g: &GroupElement) -> Vec3 {
    explicit_formula(w, g.matrix())
}

/// `d_g mu_v(w) = [Ad_g^-1 v, w]_s` for a left-invariant direction `w`.
pub fn moment_differential(
    v: &SkewAdjoint,
    g: &GroupElement,
    w: &SkewAdjoint,
) -> Result<Vec3, MomentError> {
    let u = g.inverse().adjoint(v)?;
    let br = bracket(&u, w)?;
    Ok(sp1(v.sig()).to_r3(br.matrix()))
}

/// Strongest irregularity condition satisfied by `Ad_g^-1 v`, or regular.
/// The line u in s is spanned by the first pinned basis vector.
pub fn classify_regularity(v: &SkewAdjoint, g: &GroupElement, tol: f64) -> Regularity {
    let u = g
        .inverse()
        .adjoint(v)
        .expect("signatures checked by caller");
    let p = split(&u);
    let scale = u.matrix().norm().max(1.0);
    if p.m.norm() > tol * scale {
        return Regularity::Regular;
    }
    if p.s_vec.norm() <= tol * scale {
        Regularity::Irregular3Sasakian
    } else if p.s_vec[1].abs() <= tol * scale && p.s_vec[2].abs() <= tol * scale {
        Regularity::IrregularTwistor
    } else {
        Regularity::IrregularQuaternionic
    }
}

/// The second fundamental form of the zero locus inside G at a regular
/// point: `alpha_g(w1, w2) = [ [w1, Ad_g^-1 v], w2 ]_s / |(Ad_g^-1 v)_m|`
/// with the scale lambda fixed to 1.
pub fn second_fundamental_form(
    v: &SkewAdjoint,
    g: &GroupElement,
    w1: &SkewAdjoint,
    w2: &SkewAdjoint,
    tol: f64,
) -> Result<Vec3, MomentError> {
    let m = sff_matrix(v, g, w1, w2, tol)?;
    Ok(sp1(v.sig()).to_r3(&m))
}

/// Matrix-valued second fundamental form (the s-component before the R^3
/// identification); shared by the curvature formula so every term carries
/// the same scale.
fn sff_matrix(
    v: &SkewAdjoint,
    g: &GroupElement,
    w1: &SkewAdjoint,
    w2: &SkewAdjoint,
    tol: f64,
) -> Result<Mat7, MomentError> {
    let u = g.inverse().adjoint(v)?;
    let p = split(&u);
    let m_norm = frob_norm_part(&p.m, v.sig());
    if m_norm <= tol {
        return Err(MomentError::IrregularPoint { m_norm, tol });
    }
    let inner = bracket(w1, &u)?;
    let outer = bracket(&inner, w2)?;
    Ok(sp1(v.sig()).s_matrix(outer.matrix()) / m_norm)
}

fn frob_norm_part(m: &Mat7, _sig: Sig) -> f64 {
    (0.5 * (m * m.transpose()).trace()).sqrt()
}

/// Sectional curvature of the zero locus in the Wolf space along an
/// orthonormal tangent pair:
/// `K = |[w1,w2]|^2 + <a(w1,w1), a(w2,w2)> - |a(w1,w2)|^2`,
/// every term in the positive-definite trace pairing.
pub fn sectional_curvature(
    v: &SkewAdjoint,
    g: &GroupElement,
    w1: &SkewAdjoint,
    w2: &SkewAdjoint,
    tol: f64,
) -> Result<f64, MomentError> {
    let br = bracket(w1, w2)?;
    let a11 = sff_matrix(v, g, w1, w1, tol)?;
    let a22 = sff_matrix(v, g, w2, w2, tol)?;
    let a12 = sff_matrix(v, g, w1, w2, tol)?;
    let pair = |x: &Mat7, y: &Mat7| 0.5 * (x * y.transpose()).trace();
    Ok(frob(&br, &br) + pair(&a11, &a22) - pair(&a12, &a12))
}

/// The quaternionic two-form on m: `Theta(v, w) = -lambda [v, w]_s` with
/// lambda = 1.
pub fn quaternionic_two_form(v: &SkewAdjoint, w: &SkewAdjoint) -> Result<Vec3, MomentError> {
    let br = bracket(v, w)?;
    Ok(-sp1(v.sig()).to_r3(br.matrix()))
}

/// The energy `E(g) = |mu_v(g)|^2`, nonnegative and zero exactly on the
/// zero locus.
pub fn energy(v: &SkewAdjoint, g: &GroupElement) -> Result<f64, MomentError> {
    Ok(moment(v, g)?.norm_squared())
}

/// Gradient of the energy in the positive-definite pairing
/// `<X,Y> = 1/2 trace(X Y^T)` on left-invariant fields:
/// `grad E = kappa^2 eta [u_s, u_m] eta` with `u = Ad_g^-1 v`. Proportional
/// to `-[u_s, u_m]` in the split case and to `+[u_s, u_m]` in the compact
/// case; vanishes exactly on the zero locus and at quaternionic irregular
/// points.
pub fn energy_gradient(v: &SkewAdjoint, g: &GroupElement) -> Result<SkewAdjoint, MomentError> {
    let sig = v.sig();
    let u = g.inverse().adjoint(v)?;
    let p = split(&u);
    let kappa = sp1(sig).kappa;
    let br = p.s * p.m - p.m * p.s;
    let eta = sig.eta();
    Ok(SkewAdjoint::new(sig, kappa * kappa * eta * br * eta).expect("gradient is eta-skew"))
}

/// Check the extra symmetry of the zero set: `h` lies in `Z_G(v)` if and
/// only if `g h` lies in `Z_G(Ad_g v)`. Returns the joint truth value of
/// both memberships agreeing.
pub fn extra_symmetry_check(
    v: &SkewAdjoint,
    g: &GroupElement,
    h: &GroupElement,
    tol: f64,
) -> Result<bool, MomentError> {
    let lhs = moment(v, h)?.norm() <= tol;
    let adv = g.adjoint(v)?;
    let rhs = moment(&adv, &g.compose(h)?)?.norm() <= tol;
    Ok(lhs == rhs)
}

/// A point of the zero locus with its residual and regularity.
#[derive(Debug, Clone)]
pub struct ZeroLocusPoint {
    pub g: GroupElement,
    pub residual: f64,
    pub regularity: Regularity,
}
