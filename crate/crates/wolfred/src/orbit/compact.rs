//! Adjoint-orbit invariants of SO(7): every orbit is determined by three
//! nonnegative rotation rates, read from the spectrum of -A^2.

use crate::linalg::Mat7;
use nalgebra::DMatrix;

/// Sorted nonnegative rotation rates (a, b, c) of a skew 7x7 matrix; the
/// seventh eigenvalue is always zero in odd dimension.
pub fn classify_compact(a: &Mat7) -> [f64; 3] {
    let m = -(a * a);
    let md = DMatrix::from_fn(7, 7, |i, j| m[(i, j)]);
    let se = nalgebra::SymmetricEigen::new(md);
    let mut ev: Vec<f64> = se.eigenvalues.iter().map(|v| v.max(0.0)).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // ev = [0, r1^2, r1^2, r2^2, r2^2, r3^2, r3^2]
    let mut rates = [
        ((ev[1] + ev[2]) / 2.0).sqrt(),
        ((ev[3] + ev[4]) / 2.0).sqrt(),
        ((ev[5] + ev[6]) / 2.0).sqrt(),
    ];
    rates.sort_by(|x, y| x.partial_cmp(y).unwrap());
    rates
}
