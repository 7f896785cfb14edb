//! Decomposition of an element of so(V, eta) into eta-orthogonal
//! indecomposable invariant summands, by peeling maximal-height strings off
//! one summand at a time, and reading each type from the reduced form on
//! the string tops.

use super::exactnum::ParamVal;
use super::spectral::{self, GroupKind, Spectral, SpectralGroup};
use super::types::{IndecomposableType, SignTag, TypeSum};
use crate::error::OrbitError;
use crate::lie::{Sig, SkewAdjoint};
use nalgebra::{DMatrix, DVector};

/// Classify an element of so(3,4) or so(7) into its type sum.
/// `tol` is the relative eigenvalue-clustering tolerance (default 1e-8).
pub fn classify(a: &SkewAdjoint, tol: f64) -> Result<TypeSum, OrbitError> {
    let spec = spectral::analyze(a, tol)?;
    let sig = a.sig();
    let mut summands = Vec::new();
    for group in &spec.groups {
        classify_group(a, sig, group, &spec, tol, &mut summands)?;
    }
    let ts = TypeSum::new(summands);
    let want = match sig {
        Sig::Compact => (7, 0),
        Sig::Split => (3, 4),
    };
    if ts.dimension() != 7 || ts.signature() != want {
        let (p, q) = ts.signature();
        return Err(OrbitError::BadTypeSum { dim: ts.dimension(), p, q });
    }
    Ok(ts)
}

pub const DEFAULT_TOL: f64 = 1e-8;

fn classify_group(
    a: &SkewAdjoint,
    sig: Sig,
    group: &SpectralGroup,
    spec: &Spectral,
    tol: f64,
    out: &mut Vec<IndecomposableType>,
) -> Result<(), OrbitError> {
    let a_r = spectral::restrict(a.matrix(), &group.basis);
    let eta_r = spectral::restrict_eta(sig, &group.basis);
    let scale = spec.scale.max(1.0);
    match group.kind {
        GroupKind::Quad(re, im) => {
            if group.dim() != 4 {
                return Err(OrbitError::SpectralStructure(
                    "complex quadruple group of unexpected dimension".into(),
                ));
            }
            out.push(IndecomposableType::quad(
                ParamVal::from_f64(re),
                ParamVal::from_f64(im),
            ));
            Ok(())
        }
        GroupKind::RealPair(av) => {
            // strings pair hyperbolically; block sizes on one branch come
            // from ranks of the nilpotent part on the whole group
            let s = spectral::semisimple_part_pair(&a_r, group.y.re, group.mult);
            let n = &a_r - &s;
            let sizes = jordan_partition_halved(&n, scale, tol)?;
            for sz in sizes {
                out.push(IndecomposableType::real_pair(
                    (sz - 1) as u32,
                    ParamVal::from_f64(av),
                ));
            }
            Ok(())
        }
        GroupKind::ImagPair(bv) => {
            peel_imag_group(a_r, eta_r, group.mult, bv, group.y.re, scale, tol, out)
        }
        GroupKind::Zero => peel_zero_group(a_r, eta_r, scale, tol, out),
    }
}

/// Jordan block sizes of `n` assuming every block occurs with even
/// multiplicity (one copy per eigenvalue branch); returns one branch.
/// Blocks of size exactly s: `(r_{s-1} - r_s) - (r_s - r_{s+1})` over the
/// rank sequence `r_j = rank(N^j)`.
fn jordan_partition_halved(
    n: &DMatrix<f64>,
    scale: f64,
    tol: f64,
) -> Result<Vec<usize>, OrbitError> {
    let d = n.nrows();
    let mut ranks = vec![d];
    let mut p = DMatrix::<f64>::identity(d, d);
    for j in 1..=d {
        p = &p * n;
        ranks.push(crate::linalg::rank_tol(&p, 10.0 * tol * scale.powi(j as i32)));
    }
    ranks.push(0);
    let mut sizes = Vec::new();
    for s in 1..=d {
        let ge_s = ranks[s - 1].saturating_sub(ranks[s]);
        let ge_s1 = ranks[s].saturating_sub(ranks[s + 1]);
        let exact = ge_s.saturating_sub(ge_s1);
        if exact > 0 {
            if exact % 2 != 0 {
                return Err(OrbitError::SpectralStructure(format!(
                    "odd number of Jordan strings ({exact}) of size {s} in a paired group"
                )));
            }
            for _ in 0..exact / 2 {
                sizes.push(s);
            }
        }
    }
    Ok(sizes)
}

/// Height of a nilpotent matrix under the scaled tolerance: the largest k
/// with `N^k != 0`.
fn nilpotent_height(n: &DMatrix<f64>, scale: f64, tol: f64) -> usize {
    let d = n.nrows();
    let mut k = 0;
    let mut p = DMatrix::<f64>::identity(d, d);
    for j in 1..=d {
        p = &p * n;
        if p.norm() > 10.0 * tol * scale.powi(j as i32) {
            k = j;
        } else {
            break;
        }
    }
    k
}

/// Peel the zero group: strings over definite lines (even height) or
/// hyperbolic pairs (odd height).
fn peel_zero_group(
    mut a_r: DMatrix<f64>,
    mut eta_r: DMatrix<f64>,
    scale: f64,
    tol: f64,
    out: &mut Vec<IndecomposableType>,
) -> Result<(), OrbitError> {
    loop {
        let d = a_r.nrows();
        if d == 0 {
            return Ok(());
        }
        let k = nilpotent_height(&a_r, scale, tol);
        if k == 0 {
            // kernel of the whole group: splits into definite lines
            let (p, q, z) = crate::linalg::signature_sym(
                &((&eta_r + &eta_r.transpose()) * 0.5),
                1e-7 * scale,
            );
            if z != 0 {
                return Err(OrbitError::SpectralStructure(
                    "degenerate metric on the zero group remainder".into(),
                ));
            }
            for _ in 0..p {
                out.push(IndecomposableType::zero(0, SignTag::Plus));
            }
            for _ in 0..q {
                out.push(IndecomposableType::zero(0, SignTag::Minus));
            }
            return Ok(());
        }
        let nk = pow(&a_r, k);
        let form = &eta_r * &nk;
        if k.is_multiple_of(2) {
            // symmetric top form: peel the dominant definite string
            let sym = (&form + &form.transpose()) * 0.5;
            let pairs = crate::linalg::sym_eigen_sorted(&sym);
            let (ev, w) = &pairs[0];
            if ev.abs() <= 1e-7 * scale.powi(k as i32 + 1) {
                return Err(OrbitError::SpectralStructure(
                    "vanishing top form at positive height".into(),
                ));
            }
            let sign = if *ev > 0.0 { SignTag::Plus } else { SignTag::Minus };
            let u = string_span(&a_r, std::slice::from_ref(w), k);
            out.push(IndecomposableType::zero(k as u32, sign));
            (a_r, eta_r) = peel_complement(&a_r, &eta_r, &u, scale)?;
        } else {
            // skew top form: peel a hyperbolic pair of strings
            let skew = (&form - &form.transpose()) * 0.5;
            let w = dominant_column(&skew);
            let wp: DVector<f64> = &skew * &w; // pairing partner of w
            let nwp = wp.norm();
            if nwp <= 1e-7 * scale.powi(k as i32 + 1) {
                return Err(OrbitError::SpectralStructure(
                    "isotropic top pair at odd height".into(),
                ));
            }
            let u = string_span(&a_r, &[w, wp / nwp], k);
            out.push(IndecomposableType::real_pair(k as u32, ParamVal::from_f64(0.0)));
            (a_r, eta_r) = peel_complement(&a_r, &eta_r, &u, scale)?;
        }
    }
}

/// Peel an imaginary pair group (rotation rate b > 0): strings come in
/// J-plane pairs; the sign form is `eta N^k` for even height and
/// `eta N^k S` for odd height.
#[allow(clippy::too_many_arguments)]
fn peel_imag_group(
    mut a_r: DMatrix<f64>,
    mut eta_r: DMatrix<f64>,
    mult: usize,
    b: f64,
    y: f64,
    scale: f64,
    tol: f64,
    out: &mut Vec<IndecomposableType>,
) -> Result<(), OrbitError> {
    loop {
        let d = a_r.nrows();
        if d == 0 {
            return Ok(());
        }
        let m = d / 2; // remaining complex dimension
        let s = spectral::semisimple_part_pair(&a_r, y, mult.min(m));
        let n = &a_r - &s;
        let k = nilpotent_height(&n, scale, tol);
        if k == 0 {
            // semisimple remainder: definite rotation planes
            let (p, q, z) = crate::linalg::signature_sym(
                &((&eta_r + &eta_r.transpose()) * 0.5),
                1e-7 * scale,
            );
            if z != 0 || p % 2 != 0 || q % 2 != 0 {
                return Err(OrbitError::SpectralStructure(
                    "rotation-plane remainder with odd signature".into(),
                ));
            }
            for _ in 0..p / 2 {
                out.push(IndecomposableType::imag_pair(0, SignTag::Plus, ParamVal::from_f64(b)));
            }
            for _ in 0..q / 2 {
                out.push(IndecomposableType::imag_pair(0, SignTag::Minus, ParamVal::from_f64(b)));
            }
            return Ok(());
        }
        let nk = pow(&n, k);
        let form = if k.is_multiple_of(2) {
            &eta_r * &nk
        } else {
            &eta_r * &nk * &s
        };
        let sym = (&form + &form.transpose()) * 0.5;
        let pairs = crate::linalg::sym_eigen_sorted(&sym);
        let (ev, w) = &pairs[0];
        if ev.abs() <= 1e-7 * scale.powi(k as i32 + 2) {
            return Err(OrbitError::SpectralStructure(
                "vanishing sign form at positive height".into(),
            ));
        }
        let sign = if *ev > 0.0 { SignTag::Plus } else { SignTag::Minus };
        let w0 = w.clone();
        let sw: DVector<f64> = (&s * &w0) / b.max(1e-300);
        let u = string_span(&n, &[w0, sw], k);
        out.push(IndecomposableType::imag_pair(k as u32, sign, ParamVal::from_f64(b)));
        (a_r, eta_r) = peel_complement(&a_r, &eta_r, &u, scale)?;
    }
}

fn pow(m: &DMatrix<f64>, k: usize) -> DMatrix<f64> {
    let mut p = DMatrix::<f64>::identity(m.nrows(), m.nrows());
    for _ in 0..k {
        p = &p * m;
    }
    p
}

fn dominant_column(m: &DMatrix<f64>) -> DVector<f64> {
    let mut best = 0;
    let mut bn = -1.0;
    for j in 0..m.ncols() {
        let n = m.column(j).norm();
        if n > bn {
            bn = n;
            best = j;
        }
    }
    let mut e = DVector::zeros(m.nrows());
    e[best] = 1.0;
    e
}

/// Columns `[tops, N tops, ..., N^k tops]`.
fn string_span(n: &DMatrix<f64>, tops: &[DVector<f64>], k: usize) -> DMatrix<f64> {
    let d = n.nrows();
    let cols = tops.len() * (k + 1);
    let mut u = DMatrix::zeros(d, cols);
    let mut idx = 0;
    for t in tops {
        let mut cur = t.clone();
        for _ in 0..=k {
            u.set_column(idx, &cur);
            idx += 1;
            cur = n * cur;
        }
    }
    u
}

/// Pass to the eta-orthogonal complement of the span of `u`, with the
/// restricted operator and metric.
fn peel_complement(
    a_r: &DMatrix<f64>,
    eta_r: &DMatrix<f64>,
    u: &DMatrix<f64>,
    scale: f64,
) -> Result<(DMatrix<f64>, DMatrix<f64>), OrbitError> {
    let d = a_r.nrows();
    let want = d - u.ncols();
    let constraints = u.transpose() * eta_r;
    let c = crate::linalg::kernel_onb(&constraints, 1e-8 * scale.max(1.0));
    if c.ncols() != want {
        return Err(OrbitError::SpectralStructure(format!(
            "orthogonal complement has dimension {} instead of {want}",
            c.ncols()
        )));
    }
    // the complement is invariant; re-restrict
    let a_new = c.transpose() * a_r * &c;
    let eta_new = c.transpose() * eta_r * &c;
    // invariance residual check
    let res = (a_r * &c - &c * &a_new).norm();
    if res > 1e-6 * scale {
        return Err(OrbitError::SpectralStructure(format!(
            "complement not invariant (residual {res:.3e})"
        )));
    }
    Ok((a_new, eta_new))
}
