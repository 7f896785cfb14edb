//! Spectral preprocessing for the orbit classifier.
//!
//! The characteristic polynomial of an eta-skew 7x7 matrix is odd,
//! `p(x) = x (x^6 + e2 x^4 + e4 x^2 + e6)`, so the spectrum is `{0}`
//! together with the square roots of the roots of a real cubic in
//! `y = x^2`. Root extraction is kept away from the ill-conditioned
//! repeated-root regime: the generalized kernel is found first by a rank
//! staircase (no matrix powers), the zero roots are deflated from the cubic
//! analytically, repeated residual roots are resolved by discriminant and
//! center tests, and every surviving cluster center is refined from traces
//! of the restricted matrix, which are backward-stable.

use crate::error::OrbitError;
use crate::lie::{Sig, SkewAdjoint};
use crate::linalg::Mat7;
use nalgebra::{Complex, DMatrix};

pub type C64 = Complex<f64>;

/// Coefficients (e2, e4, e6) of the even part of the characteristic
/// polynomial, from power traces.
pub fn char_poly_even(a: &Mat7) -> (f64, f64, f64) {
    let a2 = a * a;
    let a4 = a2 * a2;
    let p2 = a2.trace();
    let p4 = a4.trace();
    let p6 = (a4 * a2).trace();
    let e2 = -p2 / 2.0;
    let e4 = (-e2 * p2 - p4) / 4.0;
    let e6 = (-e4 * p2 - e2 * p4 - p6) / 6.0;
    (e2, e4, e6)
}

/// Roots of `y^3 + c2 y^2 + c1 y + c0`, one Newton polish step each.
pub fn cubic_roots(c2: f64, c1: f64, c0: f64) -> [C64; 3] {
    let shift = c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2.powi(3) / 27.0 - c2 * c1 / 3.0 + c0;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let mut roots = if disc >= 0.0 {
        let sq = disc.sqrt();
        let u = cbrt(-q / 2.0 + sq);
        let v = cbrt(-q / 2.0 - sq);
        let t1 = u + v;
        let re = -t1 / 2.0;
        let im = (u - v) * 3f64.sqrt() / 2.0;
        [C64::new(t1, 0.0), C64::new(re, im), C64::new(re, -im)]
    } else {
        let r = (-p / 3.0).sqrt();
        let phi = (3.0 * q / (2.0 * p * r)).clamp(-1.0, 1.0).acos();
        [0, 1, 2].map(|k| {
            C64::new(
                2.0 * r * ((phi + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos(),
                0.0,
            )
        })
    };
    for t in roots.iter_mut() {
        let y = *t - C64::new(shift, 0.0);
        let f = ((y + c2) * y + c1) * y + c0;
        let df = (C64::new(3.0, 0.0) * y + 2.0 * c2) * y + c1;
        if df.norm() > 1e-12 {
            *t = (y - f / df) + C64::new(shift, 0.0);
        }
    }
    roots.map(|t| t - C64::new(shift, 0.0))
}

fn cbrt(x: f64) -> f64 {
    x.signum() * x.abs().cbrt()
}

/// Kind of an eigenvalue group, with its canonical parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroupKind {
    /// eigenvalue 0
    Zero,
    /// eigenvalues +-a, a > 0
    RealPair(f64),
    /// eigenvalues +-ib, b > 0
    ImagPair(f64),
    /// eigenvalues +-z, +-conj(z), z = a+bi strictly complex
    Quad(f64, f64),
}

#[derive(Debug, Clone)]
pub struct SpectralGroup {
    pub kind: GroupKind,
    /// Center in the y = x^2 plane (real except for quads).
    pub y: C64,
    /// String multiplicity: half the dimension for pairs, a quarter for
    /// quads, (dim - 1) / 2 for the zero group.
    pub mult: usize,
    /// Orthonormal basis of the invariant subspace, 7 x dim.
    pub basis: DMatrix<f64>,
}

impl SpectralGroup {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

#[derive(Debug)]
pub struct Spectral {
    pub scale: f64,
    pub groups: Vec<SpectralGroup>,
}

fn canonical_lambda(y: C64) -> C64 {
    let l = y.sqrt();
    C64::new(l.re.abs(), l.im.abs())
}

/// Orthonormal basis of the generalized kernel, grown one rank staircase
/// step at a time so no matrix powers amplify noise. Returns a 7 x d matrix.
fn generalized_kernel(m: &DMatrix<f64>, tol_sigma: f64) -> DMatrix<f64> {
    let mut k = crate::linalg::kernel_onb(m, tol_sigma);
    loop {
        if k.ncols() == 7 {
            return k;
        }
        // preimage of span(k): kernel of (I - K K^T) M
        let proj = DMatrix::<f64>::identity(7, 7) - &k * k.transpose();
        let next = crate::linalg::kernel_onb(&(&proj * m), tol_sigma);
        if next.ncols() <= k.ncols() {
            return k;
        }
        k = next;
    }
}

/// Resolve the nonzero part of the spectrum after deflating `m0` zero roots
/// from the cubic: returns (y-center, multiplicity) clusters.
fn residual_roots(
    e: (f64, f64, f64),
    m0: usize,
    scale: f64,
    tol_l: f64,
) -> Result<Vec<(C64, usize)>, OrbitError> {
    let (e2, e4, e6) = e;
    let sy = scale * scale;
    match m0 {
        3 => Ok(vec![]),
        2 => Ok(vec![(C64::new(-e2, 0.0), 1)]),
        1 => {
            // y^2 + e2 y + e4
            let disc = e2 * e2 - 4.0 * e4;
            // half-gap in y below this resolves as a double root
            let dbl = (5e-8 * sy.max(1.0)).powi(2);
            if disc.abs() <= dbl {
                Ok(vec![(C64::new(-e2 / 2.0, 0.0), 2)])
            } else if disc > 0.0 {
                let s = disc.sqrt();
                Ok(vec![
                    (C64::new((-e2 + s) / 2.0, 0.0), 1),
                    (C64::new((-e2 - s) / 2.0, 0.0), 1),
                ])
            } else {
                let s = (-disc).sqrt();
                Ok(vec![
                    (C64::new(-e2 / 2.0, s / 2.0), 1),
                    (C64::new(-e2 / 2.0, -s / 2.0), 1),
                ])
            }
        }
        0 => {
            // full cubic; collapse smeared repeated roots by center tests
            let q = |y: f64| ((y + e2) * y + e4) * y + e6;
            let dq = |y: f64| (3.0 * y + 2.0 * e2) * y + e4;
            let r3 = -e2 / 3.0;
            let t3 = 3e-5 * sy.max(1.0); // triple-root smear radius in y
            if q(r3).abs() <= t3.powi(3) && dq(r3).abs() <= t3.powi(2) * 3.0 {
                return Ok(vec![(C64::new(r3, 0.0), 3)]);
            }
            // double root: critical points of the cubic
            let cdisc = e2 * e2 - 3.0 * e4;
            if cdisc >= 0.0 {
                let cs = cdisc.sqrt();
                for c in [(-e2 + cs) / 3.0, (-e2 - cs) / 3.0] {
                    let d2 = 5e-8 * sy.max(1.0);
                    if q(c).abs() <= d2 * d2 * (c.abs() + sy).max(1.0) {
                        let third = -e2 - 2.0 * c;
                        let gap = canonical_dist(C64::new(c, 0.0), C64::new(third, 0.0));
                        if gap <= 10.0 * tol_l {
                            return Err(OrbitError::IllConditioned { gap, limit: 10.0 * tol_l });
                        }
                        return Ok(vec![
                            (C64::new(c, 0.0), 2),
                            (C64::new(third, 0.0), 1),
                        ]);
                    }
                }
            }
            // three simple roots
            let roots = cubic_roots(e2, e4, e6);
            Ok(roots.into_iter().map(|y| (y, 1)).collect())
        }
        _ => Err(OrbitError::SpectralStructure(format!(
            "zero eigenvalue multiplicity {m0} exceeds the cubic"
        ))),
    }
}

fn canonical_dist(y1: C64, y2: C64) -> f64 {
    (canonical_lambda(y1) - canonical_lambda(y2)).norm()
}

/// Cluster the spectrum, compute the invariant subspaces, and refine the
/// group parameters from restricted traces. `tol` is the relative
/// clustering tolerance of the classifier.
pub fn analyze(a: &SkewAdjoint, tol: f64) -> Result<Spectral, OrbitError> {
    let m = a.matrix();
    let scale = m.norm().max(1e-300);
    let tol_l = tol * scale.max(1.0);
    let md = DMatrix::from_fn(7, 7, |i, j| m[(i, j)]);

    // zero group first, by rank staircase
    let zero_basis = generalized_kernel(&md, (tol_l * 10.0).max(1e-10 * scale));
    let d0 = zero_basis.ncols();
    if d0.is_multiple_of(2) {
        return Err(OrbitError::SpectralStructure(format!(
            "generalized kernel has even dimension {d0}"
        )));
    }
    let m0 = (d0 - 1) / 2;

    // nonzero spectrum from the deflated polynomial
    let e = char_poly_even(m);
    let mut raw = residual_roots(e, m0, scale, tol_l)?;

    // canonicalize to the closed first quadrant of the lambda plane and
    // merge conjugates / equal values
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    'next: for (y, mult) in raw.drain(..) {
        let l = canonical_lambda(y);
        if l.norm() <= 10.0 * tol_l {
            return Err(OrbitError::IllConditioned {
                gap: l.norm(),
                limit: 10.0 * tol_l,
            });
        }
        let yc = l * l;
        for (cy, count) in clusters.iter_mut() {
            if canonical_dist(*cy, yc) <= tol_l.max(1e-7 * scale.max(1.0)) {
                *count += mult;
                continue 'next;
            }
        }
        clusters.push((yc, mult));
    }

    // snap to the axes with a multiplicity-aware radius
    let mut snapped: Vec<(C64, usize)> = Vec::new();
    for (y, mult) in clusters {
        let l = canonical_lambda(y);
        let smear = match mult {
            1 => tol_l,
            2 => (1e-7 * scale.max(1.0)).max(tol_l),
            _ => (3e-5 * scale.max(1.0)).max(tol_l),
        };
        let ls = if l.im <= smear {
            C64::new(l.re, 0.0)
        } else if l.re <= smear {
            C64::new(0.0, l.im)
        } else {
            l
        };
        snapped.push((ls * ls, mult));
    }

    // ambiguity check between distinct clusters
    let mut lambdas: Vec<C64> = vec![C64::new(0.0, 0.0)];
    for (y, _) in &snapped {
        let l = y.sqrt();
        lambdas.push(l);
        lambdas.push(-l);
        if l.re != 0.0 && l.im != 0.0 {
            lambdas.push(l.conj());
            lambdas.push(-l.conj());
        }
    }
    for i in 0..lambdas.len() {
        for j in (i + 1)..lambdas.len() {
            let gap = (lambdas[i] - lambdas[j]).norm();
            if gap > 0.0 && gap < 10.0 * tol_l {
                return Err(OrbitError::IllConditioned { gap, limit: 10.0 * tol_l });
            }
        }
    }

    // assemble groups; a quad contributes a conjugate pair of cubic roots
    let mut groups: Vec<SpectralGroup> = Vec::new();
    for (y, count) in snapped {
        let l = y.sqrt();
        let (kind, mult) = if l.im == 0.0 || l.im.abs() < 1e-300 {
            (GroupKind::RealPair(l.re), count)
        } else if l.re == 0.0 {
            (GroupKind::ImagPair(l.im.abs()), count)
        } else {
            if count % 2 != 0 {
                return Err(OrbitError::SpectralStructure(
                    "complex quadruple with an unpaired cubic root".into(),
                ));
            }
            (GroupKind::Quad(l.re.abs(), l.im.abs()), count / 2)
        };
        groups.push(SpectralGroup { kind, y, mult, basis: DMatrix::zeros(7, 0) });
    }
    groups.push(SpectralGroup {
        kind: GroupKind::Zero,
        y: C64::new(0.0, 0.0),
        mult: m0,
        basis: zero_basis.clone(),
    });

    // invariant subspaces for the nonzero groups
    let a2 = m * m;
    let a2d = DMatrix::from_fn(7, 7, |i, j| a2[(i, j)]);
    let id = DMatrix::<f64>::identity(7, 7);
    let mut total = d0;
    for g in groups.iter_mut() {
        let (poly, dim, power) = match g.kind {
            GroupKind::Zero => continue,
            GroupKind::RealPair(_) | GroupKind::ImagPair(_) => {
                (&a2d - &id * g.y.re, 2 * g.mult, g.mult)
            }
            GroupKind::Quad(_, _) => {
                let re = g.y.re;
                let n2 = g.y.norm_sqr();
                (&a2d * &a2d - &a2d * (2.0 * re) + &id * n2, 4 * g.mult, g.mult)
            }
        };
        let mut k = poly.clone();
        for _ in 1..power {
            k = &k * &poly;
        }
        g.basis = known_kernel(&k, dim, scale)?;
        total += dim;
    }
    if total != 7 {
        return Err(OrbitError::SpectralStructure(format!(
            "invariant subspaces fill {total} of 7 dimensions"
        )));
    }

    // refine centers from restricted traces (backward stable)
    for g in groups.iter_mut() {
        match g.kind {
            GroupKind::RealPair(_) | GroupKind::ImagPair(_) => {
                let r = restrict(m, &g.basis);
                let y = (&r * &r).trace() / (2.0 * g.mult as f64);
                if y > 0.0 {
                    g.kind = GroupKind::RealPair(y.sqrt());
                    g.y = C64::new(y, 0.0);
                } else {
                    g.kind = GroupKind::ImagPair((-y).sqrt());
                    g.y = C64::new(y, 0.0);
                }
            }
            GroupKind::Quad(_, _) => {
                let r = restrict(m, &g.basis);
                let r2 = &r * &r;
                let re_y = r2.trace() / (4.0 * g.mult as f64);
                let re_y2 = (&r2 * &r2).trace() / (4.0 * g.mult as f64);
                let im_y = (re_y * re_y - re_y2).max(0.0).sqrt();
                let y = C64::new(re_y, im_y);
                let l = canonical_lambda(y);
                g.kind = GroupKind::Quad(l.re, l.im);
                g.y = y;
            }
            GroupKind::Zero => {}
        }
    }

    groups.retain(|g| g.dim() > 0);
    Ok(Spectral { scale, groups })
}

/// Kernel of known dimension: the `dim` smallest right singular directions,
/// with a demanded spectral gap.
fn known_kernel(m: &DMatrix<f64>, dim: usize, scale: f64) -> Result<DMatrix<f64>, OrbitError> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.as_ref().expect("svd with v requested");
    let mut idx: Vec<usize> = (0..7).collect();
    idx.sort_by(|&i, &j| {
        svd.singular_values[i]
            .partial_cmp(&svd.singular_values[j])
            .unwrap()
    });
    if dim < 7 {
        let kept = svd.singular_values[idx[dim - 1]];
        let next = svd.singular_values[idx[dim]];
        if kept > 1e-5 * next.max(1e-30 * scale) {
            return Err(OrbitError::SpectralStructure(format!(
                "kernel of dimension {dim} not separated: sigma_keep={kept:.3e} sigma_next={next:.3e}"
            )));
        }
    }
    let mut out = DMatrix::zeros(7, dim);
    for (j, &i) in idx[..dim].iter().enumerate() {
        out.set_column(j, &vt.row(i).transpose());
    }
    Ok(out)
}

/// Restriction of `a` to the column space of the orthonormal `basis`.
pub fn restrict(a: &Mat7, basis: &DMatrix<f64>) -> DMatrix<f64> {
    let ad = DMatrix::from_fn(7, 7, |i, j| a[(i, j)]);
    basis.transpose() * ad * basis
}

/// Restriction of the metric.
pub fn restrict_eta(sig: Sig, basis: &DMatrix<f64>) -> DMatrix<f64> {
    let eta = sig.eta();
    let ed = DMatrix::from_fn(7, 7, |i, j| eta[(i, j)]);
    basis.transpose() * ed * basis
}

/// Semisimple part of the restriction of a +-pair group: the finite
/// binomial series `S = A (1 + M/y)^{-1/2}` with `M = A^2 - y` nilpotent.
pub fn semisimple_part_pair(a_r: &DMatrix<f64>, y: f64, mult: usize) -> DMatrix<f64> {
    let n = a_r.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let m = a_r * a_r - &id * y;
    let coeff = [1.0, -0.5, 0.375, -0.3125];
    let mut acc = id.clone() * coeff[0];
    let mut pw = id;
    for c in coeff.iter().take(mult).skip(1) {
        pw = &pw * &m / y;
        acc += &pw * *c;
    }
    a_r * acc
}
