//! Linear algebra of SO(7) and SO0(3,4): the metric, the Lie algebra
//! so(V, eta), exponential and adjoint actions, the isomorphism F between
//! so(V) and 2-forms, and the h' + s + m splitting behind the Wolf-space
//! structure of SO(V)/SO(3)xSO(4).

use crate::algebra::{associative_form, Algebra, SevenVector};
use crate::error::LieError;
use crate::linalg::{Mat3, Mat7, Vec3};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Metric signature of V: (7,0) or (3,4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sig {
    #[serde(rename = "7,0")]
    Compact,
    #[serde(rename = "3,4")]
    Split,
}

impl Sig {
    pub fn eta(self) -> Mat7 {
        match self {
            Sig::Compact => Mat7::identity(),
            Sig::Split => Mat7::from_diagonal(&crate::linalg::Vec7::from_column_slice(&[
                1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0,
            ])),
        }
    }

    pub fn epsilon(self) -> f64 {
        match self {
            Sig::Compact => 1.0,
            Sig::Split => -1.0,
        }
    }

    pub fn algebra(self) -> Algebra {
        match self {
            Sig::Compact => Algebra::Octonion,
            Sig::Split => Algebra::SplitOctonion,
        }
    }

    pub fn from_algebra(alg: Algebra) -> Self {
        match alg {
            Algebra::Octonion => Sig::Compact,
            Algebra::SplitOctonion => Sig::Split,
        }
    }

    /// Entry of eta on the diagonal, 0-indexed.
    pub fn eta_i(self, i: usize) -> f64 {
        if self == Sig::Compact || i < 3 {
            1.0
        } else {
            -1.0
        }
    }
}

/// An element of so(V, eta): `A^T eta + eta A = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewAdjoint {
    sig: Sig,
    m: Mat7,
}

/// Residual of the eta-skewness condition.
pub fn skew_residual(m: &Mat7, sig: Sig) -> f64 {
    let eta = sig.eta();
    (m.transpose() * eta + eta * m).norm()
}

impl SkewAdjoint {
    pub fn new(sig: Sig, m: Mat7) -> Result<Self, LieError> {
        let residual = skew_residual(&m, sig);
        if residual > 1e-12 * (1.0 + m.norm()) {
            return Err(LieError::NotSkewAdjoint { residual });
        }
        Ok(SkewAdjoint { sig, m })
    }

    pub(crate) fn new_unchecked(sig: Sig, m: Mat7) -> Self {
        debug_assert!(skew_residual(&m, sig) <= 1e-9 * (1.0 + m.norm()));
        SkewAdjoint { sig, m }
    }

    pub fn zero(sig: Sig) -> Self {
        SkewAdjoint { sig, m: Mat7::zeros() }
    }

    pub fn sig(&self) -> Sig {
        self.sig
    }

    pub fn matrix(&self) -> &Mat7 {
        &self.m
    }

    pub fn scale(&self, c: f64) -> Self {
        SkewAdjoint { sig: self.sig, m: self.m * c }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LieError> {
        check_sig(self.sig, other.sig)?;
        Ok(SkewAdjoint { sig: self.sig, m: self.m + other.m })
    }

    pub fn norm(&self) -> f64 {
        self.m.norm()
    }
}

fn check_sig(a: Sig, b: Sig) -> Result<(), LieError> {
    if a != b {
        return Err(LieError::SignatureMismatch(a, b));
    }
    Ok(())
}

/// `[A, B] = AB - BA`.
pub fn bracket(a: &SkewAdjoint, b: &SkewAdjoint) -> Result<SkewAdjoint, LieError> {
    check_sig(a.sig, b.sig)?;
    Ok(SkewAdjoint {
        sig: a.sig,
        m: a.m * b.m - b.m * a.m,
    })
}

/// The trace form `<A, B> = -1/2 trace(AB)` used throughout; positive
/// definite on so(7) and on the block-diagonal part of so(3,4).
pub fn killing(a: &SkewAdjoint, b: &SkewAdjoint) -> f64 {
    -0.5 * (a.m * b.m).trace()
}

/// The positive-definite pairing `<A, B> = 1/2 trace(A B^T)`, equal to
/// `killing` on so(7) and to its Cartan twist on so(3,4).
pub fn frob(a: &SkewAdjoint, b: &SkewAdjoint) -> f64 {
    0.5 * (a.m * b.m.transpose()).trace()
}

/// An element of SO(7) or SO0(3,4).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    sig: Sig,
    m: Mat7,
}

/// Residual of the isometry condition `g^T eta g = eta`.
pub fn group_residual(m: &Mat7, sig: Sig) -> f64 {
    let eta = sig.eta();
    (m.transpose() * eta * m - eta).norm()
}

impl GroupElement {
    pub fn new(sig: Sig, m: Mat7) -> Result<Self, LieError> {
        Self::new_with_tol(sig, m, 1e-9)
    }

    pub fn new_with_tol(sig: Sig, m: Mat7, tol: f64) -> Result<Self, LieError> {
        let residual = group_residual(&m, sig);
        let det = m.determinant();
        if residual > tol || (det - 1.0).abs() > tol.max(1e-6) {
            return Err(LieError::NotGroupElement { residual, det });
        }
        Ok(GroupElement { sig, m })
    }

    pub fn identity(sig: Sig) -> Self {
        GroupElement { sig, m: Mat7::identity() }
    }

    pub fn sig(&self) -> Sig {
        self.sig
    }

    pub fn matrix(&self) -> &Mat7 {
        &self.m
    }

    /// Exact group inverse `eta g^T eta`.
    pub fn inverse(&self) -> Self {
        let eta = self.sig.eta();
        GroupElement {
            sig: self.sig,
            m: eta * self.m.transpose() * eta,
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self, LieError> {
        check_sig(self.sig, other.sig)?;
        Ok(GroupElement { sig: self.sig, m: self.m * other.m })
    }

    /// `Ad(g) A = g A g^{-1}`.
    pub fn adjoint(&self, a: &SkewAdjoint) -> Result<SkewAdjoint, LieError> {
        check_sig(self.sig, a.sig)?;
        let gi = self.inverse();
        Ok(SkewAdjoint {
            sig: self.sig,
            m: self.m * a.m * gi.m,
        })
    }

    /// True on the identity component. SO(7) is connected; for SO(3,4) the
    /// criterion is a positive determinant of the upper-left 3x3 block.
    pub fn in_identity_component(&self) -> bool {
        match self.sig {
            Sig::Compact => true,
            Sig::Split => self.m.fixed_view::<3, 3>(0, 0).determinant() > 0.0,
        }
    }

    /// Second-order projection back onto the isometry group, for drift
    /// control in long flows.
    pub fn reproject(&self) -> Self {
        let eta = self.sig.eta();
        let k = self.m.transpose() * eta * self.m - eta;
        GroupElement {
            sig: self.sig,
            m: self.m * (Mat7::identity() - 0.5 * eta * k),
        }
    }
}

/// One-parameter subgroup element `exp(t A)`.
pub fn exp(a: &SkewAdjoint, t: f64) -> GroupElement {
    let g = (a.m * t).exp();
    let out = GroupElement { sig: a.sig, m: g };
    if group_residual(&out.m, a.sig) > 1e-12 * (1.0 + out.m.norm()) {
        out.reproject()
    } else {
        out
    }
}

/// A 2-form on V, stored as the skew matrix `W[i][j] = w(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm {
    pub sig: Sig,
    pub m: Mat7,
}

impl TwoForm {
    pub fn new(sig: Sig, m: Mat7) -> Result<Self, LieError> {
        let residual = (m + m.transpose()).norm();
        if residual > 1e-12 * (1.0 + m.norm()) {
            return Err(LieError::NotSkewAdjoint { residual });
        }
        Ok(TwoForm { sig, m })
    }

    pub fn apply(&self, x: &crate::linalg::Vec7, y: &crate::linalg::Vec7) -> f64 {
        (x.transpose() * self.m * y)[(0, 0)]
    }
}

/// `F(A) = <A(.), .>_V`, as the matrix `W = A^T eta`.
pub fn two_form_of(a: &SkewAdjoint) -> TwoForm {
    TwoForm {
        sig: a.sig,
        m: a.m.transpose() * a.sig.eta(),
    }
}

/// `F^{-1}(w) = -eta W`.
pub fn matrix_of_two_form(w: &TwoForm) -> SkewAdjoint {
    SkewAdjoint::new_unchecked(w.sig, -w.sig.eta() * w.m)
}

/// The 2-form `i_x phi_V`.
pub fn interior_product_phi(x: &SevenVector<f64>) -> TwoForm {
    let sig = Sig::from_algebra(x.alg);
    let mut w = Mat7::zeros();
    for j in 1..=7 {
        for k in (j + 1)..=7 {
            let v = associative_form(x, &SevenVector::basis(x.alg, j), &SevenVector::basis(x.alg, k))
                .unwrap();
            w[(j - 1, k - 1)] = v;
            w[(k - 1, j - 1)] = -v;
        }
    }
    TwoForm { sig, m: w }
}

/// The generator `A_x = F^{-1}(i_x phi)` of the canonical 1-dimensional
/// action attached to `x` in V.
pub fn canonical_vector_field(x: &SevenVector<f64>) -> SkewAdjoint {
    matrix_of_two_form(&interior_product_phi(x))
}

/// The two sp(1) factors of the so(4) block, as embedded 7x7 matrices.
/// `plus_factor` is the one matching the explicit moment formula; see
/// [`sp1`].
fn sp1_factor_basis(half_sign: f64) -> [Mat7; 3] {
    // planes on coordinates 4..7 (0-indexed 3..6):
    // (45)+-(67), (46)-+(57), (47)+-(56)
    let plane = |i: usize, j: usize| {
        let mut m = Mat7::zeros();
        m[(i, j)] = 1.0;
        m[(j, i)] = -1.0;
        m
    };
    [
        plane(3, 4) + plane(5, 6) * half_sign,
        plane(3, 5) - plane(4, 6) * half_sign,
        plane(3, 6) + plane(4, 5) * half_sign,
    ]
}

/// Pinned identification of the sp(1) factor s inside so(4) and of the
/// scale of the R^3-valued projection, fixed so that
/// `project_s(Ad(g^-1) F^-1(w))` reproduces the explicit component formula
/// `(w(f1,f2)+w(f3,f4), w(f1,f3)-w(f2,f4), w(f1,f4)+w(f2,f3))` on the last
/// four columns of g.
#[derive(Debug, Clone)]
pub struct Sp1Convention {
    pub sig: Sig,
    /// Embedded basis S1, S2, S3 of the s factor.
    pub basis: [Mat7; 3],
    /// Embedded basis of the complementary sp(1) factor (inside h').
    pub other: [Mat7; 3],
    /// Scale of the R^3 identification.
    pub kappa: f64,
}

impl Sp1Convention {
    /// Coefficients of the s-component of `m` in the pinned basis
    /// (Frobenius projection; the basis elements have squared norm 4).
    pub fn coeffs(&self, m: &Mat7) -> Vec3 {
        Vec3::from_fn(|a, _| (m.component_mul(&self.basis[a])).sum() / 4.0)
    }

    /// The R^3 value of the s-component (the moment-map codomain).
    pub fn to_r3(&self, m: &Mat7) -> Vec3 {
        self.coeffs(m) * self.kappa
    }

    /// The s-component as a matrix.
    pub fn s_matrix(&self, m: &Mat7) -> Mat7 {
        let c = self.coeffs(m);
        self.basis[0] * c[0] + self.basis[1] * c[1] + self.basis[2] * c[2]
    }

    /// Inverse of [`to_r3`] on the s factor.
    pub fn from_r3(&self, sig: Sig, v: &Vec3) -> SkewAdjoint {
        let m = (self.basis[0] * v[0] + self.basis[1] * v[1] + self.basis[2] * v[2]) / self.kappa;
        SkewAdjoint::new_unchecked(sig, m)
    }
}

/// Raw explicit moment formula on the last four columns of g.
pub(crate) fn explicit_formula(w: &TwoForm, g: &Mat7) -> Vec3 {
    let f: Vec<crate::linalg::Vec7> = (3..7).map(|j| g.column(j).clone_owned()).collect();
    let om = |i: usize, j: usize| (f[i].transpose() * w.m * f[j])[(0, 0)];
    Vec3::new(
        om(0, 1) + om(2, 3),
        om(0, 2) - om(1, 3),
        om(0, 3) + om(1, 2),
    )
}

static SP1_COMPACT: OnceLock<Sp1Convention> = OnceLock::new();
static SP1_SPLIT: OnceLock<Sp1Convention> = OnceLock::new();

/// The pinned s-factor convention for the given signature. Established by a
/// startup self-test over structured samples rather than taken from a fixed
/// orientation convention; panics only if no factor/scale matches, which
/// would mean the algebra and Lie layers disagree.
pub fn sp1(sig: Sig) -> &'static Sp1Convention {
    let cell = match sig {
        Sig::Compact => &SP1_COMPACT,
        Sig::Split => &SP1_SPLIT,
    };
    cell.get_or_init(|| pin_sp1(sig))
}

fn pin_sp1(sig: Sig) -> Sp1Convention {
    // deterministic, structured samples
    let mut samples = Vec::new();
    let mut w1 = Mat7::zeros();
    w1[(3, 4)] = 1.0;
    w1[(4, 3)] = -1.0;
    let mut w2 = Mat7::zeros();
    for (i, j, v) in [(0, 4, 0.7), (1, 5, -0.4), (3, 6, 0.9), (2, 3, 0.5), (5, 6, -1.1)] {
        w2[(i, j)] = v;
        w2[(j, i)] = -v;
    }
    let mut a = Mat7::zeros();
    for (i, j, v) in [(0, 1, 0.3), (2, 4, 0.5), (3, 5, -0.2), (1, 6, 0.4)] {
        let s = sig.eta_i(i) * sig.eta_i(j);
        a[(i, j)] = v;
        a[(j, i)] = -s * v;
    }
    let g1 = exp(&SkewAdjoint::new(sig, a).unwrap(), 1.0);
    for w in [w1, w2] {
        let w = TwoForm { sig, m: w };
        for g in [GroupElement::identity(sig), g1.clone()] {
            let v = matrix_of_two_form(&w);
            let u = g.inverse().adjoint(&v).unwrap();
            samples.push((explicit_formula(&w, g.matrix()), u));
        }
    }
    for half_sign in [1.0, -1.0] {
        let basis = sp1_factor_basis(half_sign);
        let other = sp1_factor_basis(-half_sign);
        let coeff = |m: &Mat7, a: usize| (m.component_mul(&basis[a])).sum() / 4.0;
        // fit kappa from the first sample with a nonzero coefficient
        let mut kappa = None;
        for (lhs, u) in &samples {
            for axis in 0..3 {
                let c = coeff(u.matrix(), axis);
                if c.abs() > 1e-6 {
                    kappa = Some(lhs[axis] / c);
                    break;
                }
            }
            if kappa.is_some() {
                break;
            }
        }
        let Some(kappa) = kappa else { continue };
        let ok = samples.iter().all(|(lhs, u)| {
            (0..3).all(|axis| (lhs[axis] - kappa * coeff(u.matrix(), axis)).abs() < 1e-10)
        });
        if ok {
            return Sp1Convention { sig, basis, other, kappa };
        }
    }
    panic!("no sp(1) factor of so(4) matches the explicit moment formula");
}

/// The canonical splitting of so(V, eta) into h' + s + m.
#[derive(Debug, Clone)]
pub struct SplitParts {
    pub sig: Sig,
    /// so(3) block plus the sp(1) factor commuting with s.
    pub h_prime: Mat7,
    /// The distinguished sp(1) factor, as a matrix.
    pub s: Mat7,
    /// The off-block part, tangent to the Wolf space.
    pub m: Mat7,
    /// R^3 value of the s part under the pinned identification.
    pub s_vec: Vec3,
}

/// Decompose `a` along h' + s + m.
pub fn split(a: &SkewAdjoint) -> SplitParts {
    let conv = sp1(a.sig);
    let mut h = Mat7::zeros();
    let mut m = Mat7::zeros();
    for i in 0..7 {
        for j in 0..7 {
            if (i < 3) == (j < 3) {
                h[(i, j)] = a.m[(i, j)];
            } else {
                m[(i, j)] = a.m[(i, j)];
            }
        }
    }
    let s = conv.s_matrix(&h);
    SplitParts {
        sig: a.sig,
        h_prime: h - s,
        s,
        m,
        s_vec: conv.to_r3(&a.m),
    }
}

/// Embed a 3x3 rotation into the SO(3) block of G.
pub fn embed_so3(r: &Mat3, sig: Sig) -> GroupElement {
    let mut m = Mat7::identity();
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = r[(i, j)];
        }
    }
    GroupElement { sig, m }
}

/// The compact canonical form: rotation rates (a, b, c) in the planes
/// (e2,e3), (e4,e5), (e6,e7), zero on e1.
pub fn compact_canonical_form(a: f64, b: f64, c: f64) -> SkewAdjoint {
    let mut m = Mat7::zeros();
    for (i, r) in [(1, a), (3, b), (5, c)] {
        m[(i, i + 1)] = r;
        m[(i + 1, i)] = -r;
    }
    SkewAdjoint { sig: Sig::Compact, m }
}
