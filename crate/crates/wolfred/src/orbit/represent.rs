//! Explicit matrices realizing a given type sum in so(3,4): each summand is
//! built from its reduced semisimple block and the height-k shift
//! construction, then a congruence takes the assembled bilinear form to the
//! standard diag(1,1,1,-1,-1,-1,-1).

use super::exactnum::ParamVal;
use super::types::{FamilyLabel, FamilyName, IndecomposableType, Kind, SignTag, TypeSum};
use crate::error::OrbitError;
use crate::lie::{Sig, SkewAdjoint};
use crate::linalg::Mat7;
use nalgebra::DMatrix;

/// Reduced block of a summand: the operator `S` on W and the form `tau` on
/// W (symmetric for even height, skew for odd height).
fn reduced_block(t: &IndecomposableType) -> Result<(DMatrix<f64>, DMatrix<f64>), OrbitError> {
    let odd = t.height % 2 == 1;
    let bad = |reason: &str| OrbitError::InadmissibleParams {
        kind: t.to_string(),
        reason: reason.into(),
    };
    match &t.kind {
        Kind::Zero { sign } => {
            if odd {
                return Err(bad("zero type with odd height"));
            }
            let s = DMatrix::zeros(1, 1);
            let tau = DMatrix::from_element(1, 1, sign.as_f64());
            Ok((s, tau))
        }
        Kind::RealPair { a } => {
            let av = a.value;
            if av < 0.0 {
                return Err(bad("real parameter must be nonnegative"));
            }
            if !odd && av == 0.0 {
                return Err(bad("real parameter must be nonzero at even height"));
            }
            // S w1 = a w2, S w2 = a w1
            let s = DMatrix::from_row_slice(2, 2, &[0.0, av, av, 0.0]);
            let tau = if odd {
                // symplectic: tau(w1, w2) = -1
                DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
            } else {
                DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
            };
            Ok((s, tau))
        }
        Kind::ImagPair { sign, b } => {
            let bv = b.value;
            if bv <= 0.0 {
                return Err(bad("imaginary parameter must be positive"));
            }
            // S w1 = b w2, S w2 = -b w1
            let s = DMatrix::from_row_slice(2, 2, &[0.0, -bv, bv, 0.0]);
            let tau = if odd {
                // symplectic: tau(w1, w2) = +-1
                DMatrix::from_row_slice(2, 2, &[0.0, sign.as_f64(), -sign.as_f64(), 0.0])
            } else {
                DMatrix::from_element(2, 2, 0.0) + DMatrix::identity(2, 2) * sign.as_f64()
            };
            Ok((s, tau))
        }
        Kind::Quad { re, im } => {
            if odd || t.height != 0 {
                return Err(bad("complex quadruples only occur at height zero"));
            }
            let (a, b) = (re.value, im.value);
            if a <= 0.0 || b <= 0.0 {
                return Err(bad("quadruple parameter must be strictly complex"));
            }
            // S w1 = a w3 + b w2, S w2 = a w4 - b w1,
            // S w3 = a w1 + b w4, S w4 = a w2 - b w3
            let s = DMatrix::from_row_slice(
                4,
                4,
                &[
                    0.0, -b, a, 0.0, //
                    b, 0.0, 0.0, a, //
                    a, 0.0, 0.0, -b, //
                    0.0, a, b, 0.0,
                ],
            );
            let tau = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[
                1.0, 1.0, -1.0, -1.0,
            ]));
            Ok((s, tau))
        }
    }
}

/// Build `(A, G)` for one summand: the operator and the bilinear form on a
/// space of dimension `w (k+1)`, level-major basis `N^i w_a`.
fn summand_block(t: &IndecomposableType) -> Result<(DMatrix<f64>, DMatrix<f64>), OrbitError> {
    let (s, tau) = reduced_block(t)?;
    let w = s.nrows();
    let k = t.height as usize;
    let d = w * (k + 1);
    let mut a = DMatrix::zeros(d, d);
    let mut g = DMatrix::zeros(d, d);
    for lvl in 0..=k {
        // S on each level
        for i in 0..w {
            for j in 0..w {
                a[(lvl * w + i, lvl * w + j)] = s[(i, j)];
            }
        }
        // N shifts level -> level + 1
        if lvl < k {
            for i in 0..w {
                a[((lvl + 1) * w + i, lvl * w + i)] = 1.0;
            }
        }
        // tau_k(N^i u, N^j v) = (-1)^i [i + j = k] tau(u, v)
        let opp = k - lvl;
        let sgn = if lvl % 2 == 0 { 1.0 } else { -1.0 };
        for i in 0..w {
            for j in 0..w {
                g[(lvl * w + i, opp * w + j)] = sgn * tau[(i, j)];
            }
        }
    }
    Ok((a, g))
}

/// Canonical matrix in so(3,4) whose classification is `ts`. The type sum
/// must have dimension 7 and signature (3,4).
pub fn canonical_representative(ts: &TypeSum) -> Result<SkewAdjoint, OrbitError> {
    if ts.dimension() != 7 || ts.signature() != (3, 4) {
        let (p, q) = ts.signature();
        return Err(OrbitError::BadTypeSum { dim: ts.dimension(), p, q });
    }
    // direct sum of blocks
    let mut a = DMatrix::<f64>::zeros(7, 7);
    let mut g = DMatrix::<f64>::zeros(7, 7);
    let mut off = 0;
    for t in ts.summands() {
        let (ab, gb) = summand_block(t)?;
        let d = ab.nrows();
        for i in 0..d {
            for j in 0..d {
                a[(off + i, off + j)] = ab[(i, j)];
                g[(off + i, off + j)] = gb[(i, j)];
            }
        }
        off += d;
    }
    // congruence to diag(+1 x3, -1 x4): G = Q L Q^T, C = Q |L|^{-1/2},
    // then sort columns by sign
    let mut pairs = crate::linalg::sym_eigen_pairs(&g);
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut c = DMatrix::<f64>::zeros(7, 7);
    for (col, (ev, v)) in pairs.iter().enumerate() {
        if ev.abs() < 1e-10 {
            return Err(OrbitError::SpectralStructure(
                "degenerate form in representative assembly".into(),
            ));
        }
        c.set_column(col, &(v / ev.abs().sqrt()));
    }
    // A' = C^{-1} A C with C^{-1} = eta C^T G
    let eta = Sig::Split.eta();
    let etad = DMatrix::from_fn(7, 7, |i, j| eta[(i, j)]);
    let cinv = &etad * c.transpose() * &g;
    let ap = &cinv * &a * &c;
    let m = Mat7::from_fn(|i, j| ap[(i, j)]);
    // clean tiny asymmetries from the congruence arithmetic
    let m = (m - eta * m.transpose() * eta) * 0.5;
    SkewAdjoint::new(Sig::Split, m).map_err(OrbitError::Lie)
}

/// Instantiate a family row at given parameter values (nondegenerate: every
/// parameter in the open domain of its slot).
pub fn family_representative_sum(
    name: FamilyName,
    params: &[ParamVal],
) -> Result<TypeSum, OrbitError> {
    use FamilyName::*;
    if params.len() != name.param_count() {
        return Err(OrbitError::InadmissibleParams {
            kind: name.label().into(),
            reason: format!(
                "expected {} parameters, got {}",
                name.param_count(),
                params.len()
            ),
        });
    }
    let p = |i: usize| params[i].clone();
    let t = |v: Vec<IndecomposableType>| Ok(TypeSum::new(v));
    use IndecomposableType as T;
    use SignTag::{Minus as M, Plus as P};
    match name {
        I1 => t(vec![T::zero(6, P)]),
        II1 => t(vec![T::zero(4, P), T::imag_pair(0, M, p(0))]),
        II2 => t(vec![T::zero(4, M), T::real_pair(0, p(0))]),
        II3 => t(vec![T::real_pair(2, p(0)), T::zero(0, M)]),
        II4 => t(vec![T::imag_pair(2, P, p(0)), T::zero(0, P)]),
        II5 => t(vec![T::imag_pair(1, M, p(0)), T::zero(2, P)]),
        II6 => t(vec![T::real_pair(1, p(0)), T::zero(2, P)]),
        II7 => t(vec![T::imag_pair(1, P, p(0)), T::zero(2, P)]),
        III1 => t(vec![T::quad(p(0), p(1)), T::zero(2, P)]),
        III2 => t(vec![T::zero(2, M), T::real_pair(0, p(0)), T::imag_pair(0, M, p(1))]),
        III3 => t(vec![T::imag_pair(0, P, p(0)), T::zero(2, P), T::imag_pair(0, M, p(1))]),
        III4 => t(vec![T::zero(2, P), T::real_pair(0, p(0)), T::real_pair(0, p(1))]),
        III5 => t(vec![T::imag_pair(1, M, p(0)), T::real_pair(0, p(1)), T::zero(0, M)]),
        III6 => t(vec![T::real_pair(1, p(0)), T::real_pair(0, p(1)), T::zero(0, M)]),
        III7 => t(vec![T::imag_pair(1, P, p(0)), T::real_pair(0, p(1)), T::zero(0, M)]),
        III8 => t(vec![T::imag_pair(1, M, p(0)), T::zero(0, P), T::imag_pair(0, M, p(1))]),
        III9 => t(vec![T::real_pair(1, p(0)), T::zero(0, P), T::imag_pair(0, M, p(1))]),
        III10 => t(vec![T::imag_pair(1, P, p(0)), T::zero(0, P), T::imag_pair(0, M, p(1))]),
        IV1 => t(vec![T::quad(p(0), p(1)), T::real_pair(0, p(2)), T::zero(0, M)]),
        IV2 => t(vec![T::quad(p(0), p(1)), T::zero(0, P), T::imag_pair(0, M, p(2))]),
        IV3 => t(vec![
            T::imag_pair(0, P, p(0)),
            T::real_pair(0, p(1)),
            T::imag_pair(0, M, p(2)),
            T::zero(0, M),
        ]),
        IV4 => t(vec![
            T::imag_pair(0, P, p(0)),
            T::zero(0, P),
            T::imag_pair(0, M, p(1)),
            T::imag_pair(0, M, p(2)),
        ]),
        IV5 => t(vec![
            T::real_pair(0, p(0)),
            T::real_pair(0, p(1)),
            T::real_pair(0, p(2)),
            T::zero(0, M),
        ]),
        IV6 => t(vec![
            T::real_pair(0, p(0)),
            T::real_pair(0, p(1)),
            T::zero(0, P),
            T::imag_pair(0, M, p(2)),
        ]),
    }
}

/// Canonical representative of a family at given parameters.
pub fn family_representative(fl: &FamilyLabel) -> Result<SkewAdjoint, OrbitError> {
    canonical_representative(&family_representative_sum(fl.name, &fl.params)?)
}
