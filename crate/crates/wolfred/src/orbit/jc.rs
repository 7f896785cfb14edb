//! Jordan-Chevalley decomposition built on the same spectral analysis as
//! the classifier: the semisimple part is assembled per eigenvalue group
//! and lifted back through the invariant-subspace projectors.

use super::spectral::{self, GroupKind};
use crate::error::OrbitError;
use crate::lie::SkewAdjoint;
use crate::linalg::Mat7;
use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct SemisimpleNilpotentPair {
    pub s: SkewAdjoint,
    pub n: SkewAdjoint,
    pub height: u32,
}

/// Decompose `a = s + n` with `s` semisimple, `n` nilpotent, `[s, n] = 0`,
/// both in so(V, eta); `height` is the largest k with `n^k != 0`.
pub fn jordan_chevalley(a: &SkewAdjoint, tol: f64) -> Result<SemisimpleNilpotentPair, OrbitError> {
    let spec = spectral::analyze(a, tol)?;
    // full basis and its inverse give the oblique projectors onto the
    // invariant subspaces
    let mut full = DMatrix::<f64>::zeros(7, 7);
    let mut col = 0;
    let mut blocks: Vec<(usize, DMatrix<f64>)> = Vec::new();
    for g in &spec.groups {
        let a_r = spectral::restrict(a.matrix(), &g.basis);
        let s_r = match g.kind {
            GroupKind::Zero => DMatrix::zeros(g.dim(), g.dim()),
            GroupKind::RealPair(_) | GroupKind::ImagPair(_) => {
                spectral::semisimple_part_pair(&a_r, g.y.re, g.mult)
            }
            GroupKind::Quad(_, _) => a_r.clone(),
        };
        for j in 0..g.dim() {
            full.set_column(col + j, &g.basis.column(j));
        }
        blocks.push((col, s_r));
        col += g.dim();
    }
    let inv = full.clone().try_inverse().ok_or_else(|| {
        OrbitError::SpectralStructure("invariant-subspace basis is singular".into())
    })?;
    let mut s = DMatrix::<f64>::zeros(7, 7);
    for (offset, s_r) in &blocks {
        let d = s_r.nrows();
        let b = full.columns(*offset, d);
        s += b * s_r * inv.rows(*offset, d);
    }
    let s7 = Mat7::from_fn(|i, j| s[(i, j)]);
    let n7 = a.matrix() - s7;
    // symmetrize tiny eta-skew violations from the projector arithmetic
    let eta = a.sig().eta();
    let s7 = (s7 - eta * s7.transpose() * eta) * 0.5;
    let n7 = (n7 - eta * n7.transpose() * eta) * 0.5;
    let s = SkewAdjoint::new(a.sig(), s7)
        .map_err(|_| OrbitError::SpectralStructure("semisimple part left the algebra".into()))?;
    let n = SkewAdjoint::new(a.sig(), n7)
        .map_err(|_| OrbitError::SpectralStructure("nilpotent part left the algebra".into()))?;
    // height of the global nilpotent part
    let scale = spec.scale.max(1.0);
    let nd = DMatrix::from_fn(7, 7, |i, j| n7[(i, j)]);
    let mut height = 0u32;
    let mut p = DMatrix::<f64>::identity(7, 7);
    for j in 1..=7 {
        p = &p * &nd;
        if p.norm() > 10.0 * tol * scale.powi(j) {
            height = j as u32;
        } else {
            break;
        }
    }
    Ok(SemisimpleNilpotentPair { s, n, height })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Sig;
    use crate::linalg::Mat7;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn semisimple_input_has_zero_nilpotent_part() {
        let a = crate::lie::compact_canonical_form(1.0, 2.0, 3.0);
        let p = jordan_chevalley(&a, 1e-8).unwrap();
        assert!(p.n.norm() < 1e-10);
        assert_eq!(p.height, 0);
        assert!((p.s.matrix() - a.matrix()).norm() < 1e-10);
    }

    #[test]
    fn pair_commutes_and_reassembles() {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        for sig in [Sig::Compact, Sig::Split] {
            for _ in 0..10 {
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
                let Ok(p) = jordan_chevalley(&a, 1e-8) else {
                    continue; // random spectra can be ill-conditioned
                };
                let sum = p.s.matrix() + p.n.matrix();
                assert!((sum - a.matrix()).norm() < 1e-8);
                let c = p.s.matrix() * p.n.matrix() - p.n.matrix() * p.s.matrix();
                assert!(c.norm() < 1e-7, "commutator {}", c.norm());
            }
        }
    }

    #[test]
    fn nilpotent_canonical_action_has_height_two() {
        use crate::algebra::{Algebra, SevenVector};
        let x = SevenVector::new(Algebra::SplitOctonion, [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let ax = crate::lie::canonical_vector_field(&x);
        let p = jordan_chevalley(&ax, 1e-8).unwrap();
        assert!(p.s.norm() < 1e-10);
        assert_eq!(p.height, 2);
    }

    #[test]
    fn height_is_a_conjugation_invariant() {
        use crate::algebra::{Algebra, SevenVector};
        let x = SevenVector::new(Algebra::SplitOctonion, [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let ax = crate::lie::canonical_vector_field(&x);
        let mut rng = ChaCha8Rng::seed_from_u64(92);
        for _ in 0..10 {
            let mut z = Mat7::zeros();
            for i in 0..7 {
                for j in (i + 1)..7 {
                    let v = rng.gen_range(-0.4..0.4);
                    let s = Sig::Split.eta_i(i) * Sig::Split.eta_i(j);
                    z[(i, j)] = v;
                    z[(j, i)] = -s * v;
                }
            }
            let g = crate::lie::exp(&SkewAdjoint::new(Sig::Split, z).unwrap(), 1.0);
            let conj = g.adjoint(&ax).unwrap();
            let p = jordan_chevalley(&conj, 1e-8).unwrap();
            assert_eq!(p.height, 2);
        }
    }
}
