//! Small fixed-size matrix aliases and shared numeric helpers.

use nalgebra::{DMatrix, DVector, SMatrix, SVector};

pub type Mat7 = SMatrix<f64, 7, 7>;
pub type Vec7 = SVector<f64, 7>;
pub type Mat3 = SMatrix<f64, 3, 3>;
pub type Vec3 = SVector<f64, 3>;

/// Symmetric eigendecomposition with eigenvalues recomputed as Rayleigh
/// quotients of the returned vectors. nalgebra's `SymmetricEigen` has been
/// observed to mispair its eigenvalue and eigenvector arrays on clustered
/// spectra; the vectors are sound, so the quotients restore the pairing.
pub fn sym_eigen_pairs(g: &DMatrix<f64>) -> Vec<(f64, DVector<f64>)> {
    let se = nalgebra::SymmetricEigen::new(g.clone());
    (0..g.ncols())
        .map(|i| {
            let v = se.eigenvectors.column(i).clone_owned();
            let ev = (v.transpose() * g * &v)[(0, 0)];
            (ev, v)
        })
        .collect()
}

/// Orthonormal basis of the kernel of `m`, columns of the result.
/// Singular values at or below `tol` count as zero. Wide inputs are padded
/// with zero rows to keep the full V factor (the thin SVD of a wide matrix
/// drops null directions, and the Gram matrix has a sqrt(eps) noise floor).
pub fn kernel_onb(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let work = if m.nrows() >= m.ncols() {
        m.clone()
    } else {
        let mut padded = DMatrix::zeros(m.ncols(), m.ncols());
        padded.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
        padded
    };
    let svd = work.svd(false, true);
    let vt = svd.v_t.expect("svd with v requested");
    let cols: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= tol)
        .map(|(i, _)| i)
        .collect();
    let mut out = DMatrix::zeros(m.ncols(), cols.len());
    for (j, &i) in cols.iter().enumerate() {
        out.set_column(j, &vt.row(i).transpose());
    }
    out
}

/// Rank of `m` with singular values above `tol` counted.
pub fn rank_tol(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    svd.singular_values.iter().filter(|s| **s > tol).count()
}

/// Signature (p, q, zero) of a symmetric matrix, eigenvalues within `tol` of
/// zero counted as zero.
pub fn signature_sym(g: &DMatrix<f64>, tol: f64) -> (usize, usize, usize) {
    let mut p = 0;
    let mut q = 0;
    let mut z = 0;
    for (ev, _) in sym_eigen_pairs(g) {
        if ev > tol {
            p += 1;
        } else if ev < -tol {
            q += 1;
        } else {
            z += 1;
        }
    }
    (p, q, z)
}

/// Eigen-decomposition of a symmetric matrix, pairs (eigenvalue, vector)
/// sorted by decreasing |eigenvalue|.
pub fn sym_eigen_sorted(g: &DMatrix<f64>) -> Vec<(f64, DVector<f64>)> {
    let mut pairs = sym_eigen_pairs(g);
    pairs.sort_by(|a, b| b.0.abs().partial_cmp(&a.0.abs()).unwrap());
    pairs
}
