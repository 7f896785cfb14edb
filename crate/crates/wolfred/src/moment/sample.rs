//! Seeded sampling of the canonical zero locus `T_x . G2(V) . SO(3)` and of
//! tangent frames to the zero locus, used by the curvature diagnostics.

use super::{classify_regularity, moment, moment_differential, ZeroLocusPoint};
use crate::algebra::g2::g2_algebra_basis;
use crate::algebra::SevenVector;
use crate::error::MomentError;
use crate::lie::{embed_so3, exp, split, GroupElement, Sig, SkewAdjoint};
use crate::linalg::{Mat3, Mat7};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Random element of G2(V) as the exponential of a random combination of
/// the algebra basis, scaled to keep conditioning mild.
pub fn random_g2_element(sig: Sig, rng: &mut impl Rng, scale: f64) -> GroupElement {
    let basis = g2_algebra_basis(sig.algebra());
    let mut z = Mat7::zeros();
    for b in &basis {
        z += b * rng.gen_range(-1.0..1.0);
    }
    let n = z.norm();
    if n > 0.0 {
        z *= scale * rng.gen_range(0.0..1.0f64) / n;
    }
    exp(&SkewAdjoint::new(sig, z).unwrap(), 1.0)
}

/// Random rotation in the SO(3) block.
pub fn random_so3(sig: Sig, rng: &mut impl Rng) -> GroupElement {
    let mut a = Mat3::zeros();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let v = rng.gen_range(-2.0..2.0);
        a[(i, j)] = v;
        a[(j, i)] = -v;
    }
    let r = a.exp();
    embed_so3(&r, sig)
}

/// Sample `n` points of the zero locus of the action generated by `A_x`, as
/// products `exp(s A_x) . gamma . r`. The vector must satisfy
/// `|x|_V in {1, -1, 0}` up to 1e-9 (spacelike and lightlike only exist in
/// the split case). Every returned point is verified to `tol`.
pub fn sample_zero_locus_canonical(
    x: &SevenVector<f64>,
    n: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<ZeroLocusPoint>, MomentError> {
    let sig = Sig::from_algebra(x.alg);
    let nx = x.norm_v();
    if !((nx - 1.0).abs() < 1e-9 || (nx + 1.0).abs() < 1e-9 || nx.abs() < 1e-9) {
        return Err(MomentError::NotNormalized(nx));
    }
    let ax = crate::lie::canonical_vector_field(x);
    if ax.norm() == 0.0 {
        return Err(MomentError::ZeroGenerator);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let t = exp(&ax, rng.gen_range(-3.0..3.0));
        let gamma = random_g2_element(sig, &mut rng, 1.5);
        let r = random_so3(sig, &mut rng);
        let g = t.compose(&gamma.compose(&r)?)?;
        let residual = moment(&ax, &g)?.norm();
        debug_assert!(residual <= tol, "sampled point off the zero locus: {residual}");
        let regularity = classify_regularity(&ax, &g, 1e-9);
        out.push(ZeroLocusPoint { g, residual, regularity });
    }
    Ok(out)
}

/// Engineered zero-locus points for the critical-set diagnostics: `v` is
/// conjugated so that `u = Ad_g^-1 v` has zero s-part, with the m-part
/// either generic (regular) or zero (irregular).
pub fn engineered_zero_locus_point(
    sig: Sig,
    rng: &mut impl Rng,
    irregular: bool,
) -> (SkewAdjoint, GroupElement) {
    let mut m = Mat7::zeros();
    for i in 0..7 {
        for j in (i + 1)..7 {
            let v = rng.gen_range(-1.0..1.0);
            let s = sig.eta_i(i) * sig.eta_i(j);
            m[(i, j)] = v;
            m[(j, i)] = -s * v;
        }
    }
    let a = SkewAdjoint::new(sig, m).unwrap();
    let p = split(&a);
    let u = if irregular {
        SkewAdjoint::new(sig, p.h_prime).unwrap()
    } else {
        SkewAdjoint::new(sig, p.h_prime + p.m).unwrap()
    };
    let g = exp(
        &{
            let mut z = Mat7::zeros();
            for i in 0..7 {
                for j in (i + 1)..7 {
                    let v = rng.gen_range(-0.5..0.5);
                    let s = sig.eta_i(i) * sig.eta_i(j);
                    z[(i, j)] = v;
                    z[(j, i)] = -s * v;
                }
            }
            SkewAdjoint::new(sig, z).unwrap()
        },
        1.0,
    );
    let v = g.adjoint(&u).unwrap();
    (v, g)
}

/// Rank of the moment differential at `g` as a map on left-invariant
/// directions, computed over the 21-dimensional algebra basis.
pub fn moment_differential_rank(v: &SkewAdjoint, g: &GroupElement, tol: f64) -> usize {
    let sig = v.sig();
    let mut cols = Vec::new();
    for i in 0..7 {
        for j in (i + 1)..7 {
            let mut m = Mat7::zeros();
            let s = sig.eta_i(i) * sig.eta_i(j);
            m[(i, j)] = 1.0;
            m[(j, i)] = -s;
            let w = SkewAdjoint::new(sig, m).unwrap();
            cols.push(moment_differential(v, g, &w).unwrap());
        }
    }
    let mat = nalgebra::DMatrix::from_fn(3, cols.len(), |r, c| cols[c][r]);
    crate::linalg::rank_tol(&mat, tol)
}

/// Orthonormal tangent directions to the zero locus at a regular point,
/// inside m: random m-directions projected numerically onto the kernel of
/// the moment differential, then orthonormalized in the trace pairing.
pub fn tangent_frame(
    v: &SkewAdjoint,
    g: &GroupElement,
    count: usize,
    rng: &mut impl Rng,
) -> Result<Vec<SkewAdjoint>, MomentError> {
    let sig = v.sig();
    // basis of m
    let mut basis = Vec::new();
    for i in 0..3 {
        for j in 3..7 {
            let mut m = Mat7::zeros();
            let s = sig.eta_i(i) * sig.eta_i(j);
            m[(i, j)] = 1.0;
            m[(j, i)] = -s;
            basis.push(SkewAdjoint::new(sig, m).unwrap());
        }
    }
    // rows of the differential restricted to m
    let rows = nalgebra::DMatrix::from_fn(3, 12, |r, c| {
        moment_differential(v, g, &basis[c]).unwrap()[r]
    });
    let kernel = crate::linalg::kernel_onb(&rows, 1e-9);
    let dim = kernel.ncols();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mut frame: Vec<SkewAdjoint> = Vec::new();
    let pair = |x: &SkewAdjoint, y: &SkewAdjoint| crate::lie::frob(x, y);
    while frame.len() < count.min(dim) {
        let coeffs: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut m = Mat7::zeros();
        for (k, c) in coeffs.iter().enumerate() {
            for (b, kcol) in basis.iter().zip(kernel.column(k).iter()) {
                m += b.matrix() * (*kcol * *c);
            }
        }
        let mut w = SkewAdjoint::new(sig, m).unwrap();
        for f in &frame {
            let c = pair(&w, f);
            w = w.add(&f.scale(-c))?;
        }
        let n = pair(&w, &w).sqrt();
        if n > 1e-6 {
            frame.push(w.scale(1.0 / n));
        }
    }
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::moment::{second_fundamental_form, sectional_curvature};

    #[test]
    fn canonical_samples_lie_on_the_zero_locus() {
        // compact case and split timelike case
        for (alg, x) in [
            (Algebra::Octonion, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            (Algebra::SplitOctonion, [0.6, 0.8, 0.0, 0.0, 0.0, 0.0, 0.0]),
        ] {
            let x = SevenVector::new(alg, x);
            let pts = sample_zero_locus_canonical(&x, 50, 9, 1e-9).unwrap();
            assert_eq!(pts.len(), 50);
            let worst = pts.iter().map(|p| p.residual).fold(0.0f64, f64::max);
            assert!(worst <= 1e-9, "worst residual {worst}");
        }
        // split lightlike: containment still holds
        let x = SevenVector::new(Algebra::SplitOctonion, [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let pts = sample_zero_locus_canonical(&x, 20, 10, 1e-9).unwrap();
        assert!(pts.iter().all(|p| p.residual <= 1e-9));
    }

    #[test]
    fn identity_product_is_a_zero_locus_point() {
        let x = SevenVector::new(Algebra::Octonion, [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let ax = crate::lie::canonical_vector_field(&x);
        let id = GroupElement::identity(Sig::Compact);
        assert!(moment(&ax, &id).unwrap().norm() < 1e-14);
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let x = SevenVector::new(Algebra::Octonion, [0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            sample_zero_locus_canonical(&x, 1, 0, 1e-9),
            Err(MomentError::NotNormalized(_))
        ));
    }

    #[test]
    fn rank_detects_the_irregular_stratum() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for sig in [Sig::Compact, Sig::Split] {
            for _ in 0..20 {
                let (v, g) = engineered_zero_locus_point(sig, &mut rng, false);
                assert_eq!(moment_differential_rank(&v, &g, 1e-8), 3);
                let (v, g) = engineered_zero_locus_point(sig, &mut rng, true);
                assert!(moment_differential_rank(&v, &g, 1e-8) < 3);
            }
        }
    }

    #[test]
    fn kernel_characterization_of_the_differential() {
        // ker d_g mu_v is the trace-form orthogonal complement of
        // [Ad_g^-1 v, s]: check dimensions and orthogonality residuals.
        let mut rng = ChaCha8Rng::seed_from_u64(56);
        for sig in [Sig::Compact, Sig::Split] {
            let (v, g) = engineered_zero_locus_point(sig, &mut rng, false);
            let u = g.inverse().adjoint(&v).unwrap();
            let conv = crate::lie::sp1(sig);
            // [u, s] spans a 3-dim space; every kernel direction of the
            // differential is killing-orthogonal to it
            let mut brs = Vec::new();
            for b in &conv.basis {
                let s = SkewAdjoint::new(sig, *b).unwrap();
                brs.push(crate::lie::bracket(&u, &s).unwrap());
            }
            // full algebra basis
            for i in 0..7 {
                for j in (i + 1)..7 {
                    let mut m = Mat7::zeros();
                    let s = sig.eta_i(i) * sig.eta_i(j);
                    m[(i, j)] = 1.0;
                    m[(j, i)] = -s;
                    let w = SkewAdjoint::new(sig, m).unwrap();
                    let d = moment_differential(&v, &g, &w).unwrap();
                    if d.norm() < 1e-10 {
                        for br in &brs {
                            assert!(crate::lie::killing(&w, br).abs() < 1e-9);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tangent_field_derivation_identity() {
        // Along a curve g(t) = g exp(tX) in the zero locus with Y(t) the
        // tangent projection of a fixed direction, [u(t), Y(t)]_s vanishes
        // identically, so 0 = -[[X, u], Y]_s + [u, dY(X)]_s.
        let mut rng = ChaCha8Rng::seed_from_u64(58);
        let sig = Sig::Compact;
        let (v, g) = engineered_zero_locus_point(sig, &mut rng, false);
        let frame = tangent_frame(&v, &g, 2, &mut rng).unwrap();
        let (x, y0) = (&frame[0], &frame[1]);
        let conv = crate::lie::sp1(sig);
        // project a fixed m-direction onto the kernel at g(t)
        let field = |t: f64| -> SkewAdjoint {
            let gt = g.compose(&exp(x, t)).unwrap();
            let rows = {
                let mut basis = Vec::new();
                for i in 0..3 {
                    for j in 3..7 {
                        let mut m = Mat7::zeros();
                        let s = sig.eta_i(i) * sig.eta_i(j);
                        m[(i, j)] = 1.0;
                        m[(j, i)] = -s;
                        basis.push(SkewAdjoint::new(sig, m).unwrap());
                    }
                }
                (basis.clone(), nalgebra::DMatrix::from_fn(3, 12, |r, c| {
                    moment_differential(&v, &gt, &basis[c]).unwrap()[r]
                }))
            };
            let (basis, d) = rows;
            let kernel = crate::linalg::kernel_onb(&d, 1e-9);
            // coefficients of y0 in the m-basis
            let coeffs = nalgebra::DVector::from_fn(12, |c, _| {
                crate::lie::frob(y0, &basis[c]) / crate::lie::frob(&basis[c], &basis[c])
            });
            let proj = &kernel * (kernel.transpose() * coeffs);
            let mut m = Mat7::zeros();
            for (c, b) in basis.iter().enumerate() {
                m += b.matrix() * proj[c];
            }
            SkewAdjoint::new(sig, m).unwrap()
        };
        let h = 1e-5;
        let dy = field(h).add(&field(-h).scale(-1.0)).unwrap().scale(1.0 / (2.0 * h));
        let u = g.inverse().adjoint(&v).unwrap();
        let term1 = crate::lie::bracket(&crate::lie::bracket(x, &u).unwrap(), &field(0.0)).unwrap();
        let term2 = crate::lie::bracket(&u, &dy).unwrap();
        let residual = conv.to_r3(&(-term1.matrix() + term2.matrix())).norm();
        assert!(residual < 1e-6, "derivation identity residual {residual}");
    }

    #[test]
    fn curvature_terms_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        let sig = Sig::Compact;
        let (v, g) = engineered_zero_locus_point(sig, &mut rng, false);
        let frame = tangent_frame(&v, &g, 2, &mut rng).unwrap();
        if frame.len() < 2 {
            panic!("expected a 2-frame at a regular point");
        }
        let (w1, w2) = (&frame[0], &frame[1]);
        // symmetry of the second fundamental form on tangent pairs
        let a12 = second_fundamental_form(&v, &g, w1, w2, 1e-9).unwrap();
        let a21 = second_fundamental_form(&v, &g, w2, w1, 1e-9).unwrap();
        assert!((a12 - a21).norm() < 1e-8, "{}", (a12 - a21).norm());
        // scaling: v -> 2v leaves curvature unchanged
        let k1 = sectional_curvature(&v, &g, w1, w2, 1e-9).unwrap();
        let k2 = sectional_curvature(&v.scale(2.0), &g, w1, w2, 1e-9).unwrap();
        assert!((k1 - k2).abs() < 1e-9);
        // term-by-term recomputation
        let u = g.inverse().adjoint(&v).unwrap();
        let p = crate::lie::split(&u);
        let m_norm = (0.5 * (p.m * p.m.transpose()).trace()).sqrt();
        let conv = crate::lie::sp1(sig);
        let alpha = |a: &SkewAdjoint, b: &SkewAdjoint| {
            let inner = crate::lie::bracket(a, &u).unwrap();
            let outer = crate::lie::bracket(&inner, b).unwrap();
            conv.s_matrix(outer.matrix()) / m_norm
        };
        let br = crate::lie::bracket(w1, w2).unwrap();
        let pair = |x: &Mat7, y: &Mat7| 0.5 * (x * y.transpose()).trace();
        let expect = crate::lie::frob(&br, &br) + pair(&alpha(w1, w1), &alpha(w2, w2))
            - pair(&alpha(w1, w2), &alpha(w1, w2));
        assert!((k1 - expect).abs() < 1e-10);
    }
}
