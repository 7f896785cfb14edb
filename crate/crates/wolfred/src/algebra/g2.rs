//! Membership tests for the automorphism groups G2 and G2(2) and their Lie
//! algebras, at the group level (column criterion) and algebra level (seven
//! linear relations on so(V)).

use super::{multiply, Algebra, AlgebraElement, SevenVector};
use crate::linalg::Mat7;

/// Result of the column-criterion check with its worst residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G2GroupCheck {
    pub is_member: bool,
    pub max_residual: f64,
}

fn column(alg: Algebra, m: &Mat7, j: usize) -> SevenVector<f64> {
    SevenVector::new(alg, std::array::from_fn(|i| m[(i, j)]))
}

fn embed_scaled(v: &SevenVector<f64>, c: f64) -> AlgebraElement<f64> {
    let mut e = v.embed();
    for k in 0..8 {
        e.coords[k] *= c;
    }
    e
}

/// Column criterion: `a4 a5 = eps a1`, `a4 a6 = eps a2`, `a4 a7 = eps a3`,
/// `a4 a5 + a6 a7 = 0`, and `(a4,...,a7)` an orthogonal frame of norm eps.
pub fn g2_group_check(m: &Mat7, alg: Algebra, tol: f64) -> G2GroupCheck {
    let eps = alg.epsilon();
    let a: Vec<SevenVector<f64>> = (0..7).map(|j| column(alg, m, j)).collect();
    let mut worst: f64 = 0.0;
    let prod = |i: usize, j: usize| multiply(&a[i].embed(), &a[j].embed()).unwrap();
    for (i, j, k) in [(3, 4, 0), (3, 5, 1), (3, 6, 2)] {
        let r = prod(i, j).sub(&embed_scaled(&a[k], eps));
        worst = worst.max(r.coords.iter().fold(0.0f64, |m, c| m.max(c.abs())));
    }
    let r = prod(3, 4).add(&prod(5, 6));
    worst = worst.max(r.coords.iter().fold(0.0f64, |m, c| m.max(c.abs())));
    for i in 3..7 {
        for j in i..7 {
            let target = if i == j { eps } else { 0.0 };
            worst = worst.max((a[i].inner_v(&a[j]) - target).abs());
        }
    }
    G2GroupCheck {
        is_member: worst <= tol,
        max_residual: worst,
    }
}

/// The seven linear relations cutting g2(V) out of so(V, eta), as residuals.
///
/// Read on the upper-triangle entries `a[i][j]` (1-indexed), the relations
/// are the same for both algebras; the algebra dependence enters through the
/// eta-skew completion of the lower triangle. The solution space is exactly
/// the derivation algebra of the multiplication table (checked in tests).
pub fn g2_algebra_residuals(m: &Mat7, _alg: Algebra) -> [f64; 7] {
    let a = |i: usize, j: usize| m[(i - 1, j - 1)];
    [
        a(1, 2) + a(4, 7) - a(5, 6),
        a(1, 3) - a(4, 6) - a(5, 7),
        a(1, 4) - a(2, 7) + a(3, 6),
        a(1, 5) + a(2, 6) + a(3, 7),
        a(1, 6) - a(2, 5) - a(3, 4),
        a(1, 7) + a(2, 4) - a(3, 5),
        a(2, 3) + a(4, 5) - a(6, 7),
    ]
}

pub fn is_g2_algebra_element(m: &Mat7, alg: Algebra, tol: f64) -> bool {
    g2_algebra_residuals(m, alg)
        .iter()
        .all(|r| r.abs() <= tol)
}

/// Fill the lower triangle of an eta-skew matrix from its upper entries:
/// `a[j][i] = -eta_i eta_j a[i][j]`.
fn complete_skew(alg: Algebra, upper: &[(usize, usize, f64)]) -> Mat7 {
    let mut m = Mat7::zeros();
    for &(i, j, v) in upper {
        let (i0, j0) = (i - 1, j - 1);
        m[(i0, j0)] = v;
        let s = (alg.basis_norm(i) * alg.basis_norm(j)) as f64;
        m[(j0, i0)] = -s * v;
    }
    m
}

/// Basis of the 14-dimensional solution space of the seven relations.
///
/// The relations each have a unique pivot among a12, a13, ..., a17, a23, so
/// the remaining 14 upper-triangle entries are free and the pivots are solved
/// exactly.
pub fn g2_algebra_basis(alg: Algebra) -> Vec<Mat7> {
    let pivots = [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (2, 3)];
    let mut basis = Vec::with_capacity(14);
    for i in 1..=7 {
        for j in (i + 1)..=7 {
            if pivots.contains(&(i, j)) {
                continue;
            }
            let get = |p: usize, q: usize| if (p, q) == (i, j) { 1.0 } else { 0.0 };
            let mut upper = vec![(i, j, 1.0)];
            upper.push((1, 2, -get(4, 7) + get(5, 6)));
            upper.push((1, 3, get(4, 6) + get(5, 7)));
            upper.push((1, 4, get(2, 7) - get(3, 6)));
            upper.push((1, 5, -get(2, 6) - get(3, 7)));
            upper.push((1, 6, get(2, 5) + get(3, 4)));
            upper.push((1, 7, -get(2, 4) + get(3, 5)));
            upper.push((2, 3, -get(4, 5) + get(6, 7)));
            basis.push(complete_skew(alg, &upper));
        }
    }
    basis
}
