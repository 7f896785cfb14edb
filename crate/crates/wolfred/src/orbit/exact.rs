//! Exact classification over the rationals. Inputs with rational entries
//! whose spectral cubic factors completely over Q are classified with exact
//! ranks, exact signatures, and exact parameters (square roots carried as
//! quadratic numbers). Inputs outside that class return `None` and fall
//! back to the floating-point path.

use super::exactnum::{ParamVal, QuadExt};
use super::types::{IndecomposableType, SignTag, TypeSum};
use crate::error::OrbitError;
use crate::lie::Sig;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense rational matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        QMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigRational::zero();
            for k in 0..self.cols {
                if !self.at(i, k).is_zero() && !other.at(k, j).is_zero() {
                    acc += self.at(i, k) * other.at(k, j);
                }
            }
            acc
        })
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn add(&self, other: &QMat) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn scale(&self, c: &BigRational) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i).clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Row echelon rank.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    let a = m.at(p, j).clone();
                    let b = m.at(row, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(row, j) = a;
                }
            }
            let inv = m.at(row, col).clone();
            for r in (row + 1)..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) / &inv;
                for j in col..m.cols {
                    let v = m.at(r, j) - m.at(row, j) * &factor;
                    *m.at_mut(r, j) = v;
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the kernel, columns of the result.
    pub fn kernel(&self) -> QMat {
        // reduced row echelon
        let mut m = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    let a = m.at(p, j).clone();
                    let b = m.at(row, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(row, j) = a;
                }
            }
            let inv = m.at(row, col).clone();
            for j in 0..m.cols {
                let v = m.at(row, j) / &inv;
                *m.at_mut(row, j) = v;
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for j in 0..m.cols {
                        let v = m.at(r, j) - m.at(row, j) * &factor;
                        *m.at_mut(r, j) = v;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..m.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut out = QMat::zeros(self.cols, free_cols.len());
        for (k, &fc) in free_cols.iter().enumerate() {
            *out.at_mut(fc, k) = BigRational::one();
            for &(pr, pc) in &pivots {
                *out.at_mut(pc, k) = -m.at(pr, fc).clone();
            }
        }
        out
    }

    /// Solve `self * X = b` for square invertible `self`.
    pub fn solve(&self, b: &QMat) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut rhs = b.clone();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let a = m.at(pivot, j).clone();
                    let bb = m.at(col, j).clone();
                    *m.at_mut(pivot, j) = bb;
                    *m.at_mut(col, j) = a;
                }
                for j in 0..rhs.cols {
                    let a = rhs.at(pivot, j).clone();
                    let bb = rhs.at(col, j).clone();
                    *rhs.at_mut(pivot, j) = bb;
                    *rhs.at_mut(col, j) = a;
                }
            }
            let inv = m.at(col, col).clone();
            for j in 0..n {
                let v = m.at(col, j) / &inv;
                *m.at_mut(col, j) = v;
            }
            for j in 0..rhs.cols {
                let v = rhs.at(col, j) / &inv;
                *rhs.at_mut(col, j) = v;
            }
            for r in 0..n {
                if r != col && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for j in 0..n {
                        let v = m.at(r, j) - m.at(col, j) * &f;
                        *m.at_mut(r, j) = v;
                    }
                    for j in 0..rhs.cols {
                        let v = rhs.at(r, j) - rhs.at(col, j) * &f;
                        *rhs.at_mut(r, j) = v;
                    }
                }
            }
        }
        Some(rhs)
    }

    /// Congruence diagonalization of a symmetric matrix: returns basis
    /// vectors (columns) and diagonal values with `v_i^T G v_j = d_i delta`.
    pub fn congruence_diagonalize(&self) -> (QMat, Vec<BigRational>) {
        let n = self.rows;
        let mut g = self.clone();
        let mut basis = QMat::identity(n);
        let mut done = 0;
        while done < n {
            // find a nonzero diagonal entry at or after `done`
            let diag = (done..n).find(|&i| !g.at(i, i).is_zero());
            let pivot = match diag {
                Some(i) => i,
                None => {
                    // all diagonal zero: find off-diagonal and symmetrize
                    let mut found = None;
                    'search: for i in done..n {
                        for j in (i + 1)..n {
                            if !g.at(i, j).is_zero() {
                                found = Some((i, j));
                                break 'search;
                            }
                        }
                    }
                    let Some((i, j)) = found else { break };
                    // col_i += col_j (and symmetric row op), basis too
                    for r in 0..n {
                        let v = g.at(r, i) + g.at(r, j);
                        *g.at_mut(r, i) = v;
                    }
                    for c in 0..n {
                        let v = g.at(i, c) + g.at(j, c);
                        *g.at_mut(i, c) = v;
                    }
                    for r in 0..n {
                        let v = basis.at(r, i) + basis.at(r, j);
                        *basis.at_mut(r, i) = v;
                    }
                    i
                }
            };
            if pivot != done {
                for r in 0..n {
                    let a = g.at(r, pivot).clone();
                    let b = g.at(r, done).clone();
                    *g.at_mut(r, pivot) = b;
                    *g.at_mut(r, done) = a;
                }
                for c in 0..n {
                    let a = g.at(pivot, c).clone();
                    let b = g.at(done, c).clone();
                    *g.at_mut(pivot, c) = b;
                    *g.at_mut(done, c) = a;
                }
                for r in 0..n {
                    let a = basis.at(r, pivot).clone();
                    let b = basis.at(r, done).clone();
                    *basis.at_mut(r, pivot) = b;
                    *basis.at_mut(r, done) = a;
                }
            }
            let d = g.at(done, done).clone();
            if d.is_zero() {
                break;
            }
            for k in (done + 1)..n {
                if !g.at(done, k).is_zero() {
                    let f = g.at(done, k) / &d;
                    for r in 0..n {
                        let v = g.at(r, k) - g.at(r, done) * &f;
                        *g.at_mut(r, k) = v;
                    }
                    for c in 0..n {
                        let v = g.at(k, c) - g.at(done, c) * &f;
                        *g.at_mut(k, c) = v;
                    }
                    for r in 0..n {
                        let v = basis.at(r, k) - basis.at(r, done) * &f;
                        *basis.at_mut(r, k) = v;
                    }
                }
            }
            done += 1;
        }
        let values = (0..n).map(|i| g.at(i, i).clone()).collect();
        (basis, values)
    }

    pub fn columns(&self, idx: &[usize]) -> QMat {
        QMat::from_fn(self.rows, idx.len(), |i, j| self.at(i, idx[j]).clone())
    }

    pub fn column(&self, j: usize) -> QMat {
        QMat::from_fn(self.rows, 1, |i, _| self.at(i, j).clone())
    }

    pub fn hstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.rows, other.rows);
        QMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }
}

fn eta_q(sig: Sig) -> QMat {
    QMat::from_fn(7, 7, |i, j| {
        if i != j {
            BigRational::zero()
        } else if sig == Sig::Compact || i < 3 {
            BigRational::one()
        } else {
            -BigRational::one()
        }
    })
}

/// Rational roots of `y^3 + e2 y^2 + e4 y + e6` with multiplicity; `None`
/// when the polynomial does not factor completely over Q within the
/// divisor-search budget.
fn rational_cubic_roots(
    e2: &BigRational,
    e4: &BigRational,
    e6: &BigRational,
) -> Option<Vec<(BigRational, usize)>> {
    let mut coeffs = vec![e6.clone(), e4.clone(), e2.clone(), BigRational::one()];
    let mut roots: Vec<BigRational> = Vec::new();
    while coeffs.len() > 2 {
        let root = find_rational_root(&coeffs)?;
        roots.push(root.clone());
        // synthetic division by (y - root)
        let n = coeffs.len();
        let mut q = vec![BigRational::zero(); n - 1];
        q[n - 2] = coeffs[n - 1].clone();
        for k in (0..n - 2).rev() {
            q[k] = &coeffs[k + 1] + &root * &q[k + 1];
        }
        coeffs = q;
    }
    if coeffs.len() == 2 {
        // linear: c0 + c1 y
        roots.push(-&coeffs[0] / &coeffs[1]);
    }
    let mut out: Vec<(BigRational, usize)> = Vec::new();
    'next: for r in roots {
        for (v, m) in out.iter_mut() {
            if *v == r {
                *m += 1;
                continue 'next;
            }
        }
        out.push((r, 1));
    }
    Some(out)
}

fn find_rational_root(coeffs: &[BigRational]) -> Option<BigRational> {
    if coeffs[0].is_zero() {
        return Some(BigRational::zero());
    }
    if coeffs.len() == 3 {
        // quadratic: roots rational iff the discriminant is a perfect square
        let (c, b, a) = (&coeffs[0], &coeffs[1], &coeffs[2]);
        let disc = b * b - BigRational::from_integer(BigInt::from(4)) * a * c;
        if disc.is_negative() {
            return None;
        }
        let s = QuadExt::sqrt_rational(&disc)?;
        if !s.is_rational() {
            return None;
        }
        return Some((-b + s.a) / (BigRational::from_integer(BigInt::from(2)) * a));
    }
    // integerize: p/q with p | c0_int, q | lead_int
    let lcm = coeffs
        .iter()
        .map(|c| c.denom().clone())
        .fold(BigInt::one(), |l, d| {
            let g = l.gcd(&d);
            l / g * d
        });
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    let c0 = ints[0].magnitude().clone();
    let lead = ints.last().unwrap().magnitude().clone();
    let p_divs = small_divisors(&BigInt::from_biguint(num_bigint::Sign::Plus, c0))?;
    let q_divs = small_divisors(&BigInt::from_biguint(num_bigint::Sign::Plus, lead))?;
    for p in &p_divs {
        for q in &q_divs {
            for sign in [1i64, -1] {
                let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                let mut acc = BigRational::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * &cand + c;
                }
                if acc.is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let v = n.abs().to_u64()?;
    if v == 0 {
        return Some(vec![BigInt::one()]);
    }
    if v > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v && out.len() < 4000 {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d != v / d {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    if d * d <= v {
        return None; // budget exceeded
    }
    Some(out)
}

/// Restriction of `a` to the column space of `basis` (full column rank).
fn restrict_q(a: &QMat, basis: &QMat) -> Option<QMat> {
    let bt = basis.transpose();
    let gram = bt.mul(basis);
    gram.solve(&bt.mul(&a.mul(basis)))
}

fn strings_q(n: &QMat, tops: &[QMat], k: usize) -> QMat {
    let mut cols: Vec<QMat> = Vec::new();
    for t in tops {
        let mut cur = t.clone();
        for _ in 0..=k {
            cols.push(cur.clone());
            cur = n.mul(&cur);
        }
    }
    let mut out = cols[0].clone();
    for c in &cols[1..] {
        out = out.hstack(c);
    }
    out
}

fn nilpotent_height_q(n: &QMat) -> usize {
    let d = n.rows;
    let mut k = 0;
    let mut p = QMat::identity(d);
    for j in 1..=d {
        p = p.mul(n);
        if p.is_zero() {
            break;
        }
        k = j;
    }
    k
}

/// Exact semisimple part on a pair group: `S = A (1 + M/y)^{-1/2}` with
/// `M = A^2 - y` nilpotent, via the finite binomial series.
fn semisimple_exact(a_r: &QMat, y: &BigRational, mult: usize) -> QMat {
    let n = a_r.rows;
    let id = QMat::identity(n);
    let m = a_r.mul(a_r).sub(&id.scale(y));
    let coeffs = [
        BigRational::one(),
        BigRational::new(BigInt::from(-1), BigInt::from(2)),
        BigRational::new(BigInt::from(3), BigInt::from(8)),
        BigRational::new(BigInt::from(-5), BigInt::from(16)),
    ];
    let mut acc = id.clone();
    let mut pw = id;
    for c in coeffs.iter().take(mult).skip(1) {
        pw = pw.mul(&m).scale(&(BigRational::one() / y));
        acc = acc.add(&pw.scale(c));
    }
    a_r.mul(&acc)
}

fn sign_of(v: &BigRational) -> SignTag {
    if v.is_positive() {
        SignTag::Plus
    } else {
        SignTag::Minus
    }
}

/// Peel one group over Q. `y` is None for the zero group.
fn peel_group_q(
    mut a_r: QMat,
    mut eta_r: QMat,
    y: Option<&BigRational>,
    out: &mut Vec<IndecomposableType>,
) -> Result<(), OrbitError> {
    let structural = |msg: &str| OrbitError::SpectralStructure(format!("exact path: {msg}"));
    loop {
        let d = a_r.rows;
        if d == 0 {
            return Ok(());
        }
        let (s_r, param): (QMat, Option<(BigRational, bool)>) = match y {
            None => (QMat::zeros(d, d), None),
            Some(yv) => {
                let mult = d / 2;
                let s = semisimple_exact(&a_r, yv, mult);
                (s, Some((yv.clone(), yv.is_negative())))
            }
        };
        let n_r = a_r.sub(&s_r);
        let k = nilpotent_height_q(&n_r);
        if k == 0 {
            // semisimple remainder: read the signature of the metric
            let (_, vals) = eta_r.congruence_diagonalize();
            let p = vals.iter().filter(|v| v.is_positive()).count();
            let q = vals.iter().filter(|v| v.is_negative()).count();
            if p + q != d {
                return Err(structural("degenerate metric on a semisimple remainder"));
            }
            match &param {
                None => {
                    for _ in 0..p {
                        out.push(IndecomposableType::zero(0, SignTag::Plus));
                    }
                    for _ in 0..q {
                        out.push(IndecomposableType::zero(0, SignTag::Minus));
                    }
                }
                Some((yv, imaginary)) => {
                    if *imaginary {
                        if p % 2 != 0 || q % 2 != 0 {
                            return Err(structural("odd rotation-plane signature"));
                        }
                        let b = ParamVal::from_exact(
                            QuadExt::sqrt_rational(&(-yv.clone()))
                                .ok_or_else(|| structural("unrepresentable sqrt"))?,
                        );
                        for _ in 0..p / 2 {
                            out.push(IndecomposableType::imag_pair(0, SignTag::Plus, b.clone()));
                        }
                        for _ in 0..q / 2 {
                            out.push(IndecomposableType::imag_pair(0, SignTag::Minus, b.clone()));
                        }
                    } else {
                        if p != q {
                            return Err(structural("hyperbolic group with unbalanced metric"));
                        }
                        let a = ParamVal::from_exact(
                            QuadExt::sqrt_rational(yv)
                                .ok_or_else(|| structural("unrepresentable sqrt"))?,
                        );
                        for _ in 0..p {
                            out.push(IndecomposableType::real_pair(0, a.clone()));
                        }
                    }
                }
            }
            return Ok(());
        }
        // positive height: peel one indecomposable
        let mut nk = QMat::identity(d);
        for _ in 0..k {
            nk = nk.mul(&n_r);
        }
        match &param {
            None => {
                let form = eta_r.mul(&nk);
                if k.is_multiple_of(2) {
                    let (basis, vals) = form.congruence_diagonalize();
                    let idx = (0..d)
                        .find(|&i| !vals[i].is_zero())
                        .ok_or_else(|| structural("vanishing top form"))?;
                    let w = basis.column(idx);
                    let u = strings_q(&n_r, &[w], k);
                    out.push(IndecomposableType::zero(k as u32, sign_of(&vals[idx])));
                    (a_r, eta_r) = complement_q(&a_r, &eta_r, &u)?;
                } else {
                    // skew top form: hyperbolic string pair
                    let (w, wp) = skew_pair_q(&form).ok_or_else(|| structural("isotropic top"))?;
                    let u = strings_q(&n_r, &[w, wp], k);
                    out.push(IndecomposableType::real_pair(
                        k as u32,
                        ParamVal::from_exact(QuadExt::from_integer(0)),
                    ));
                    (a_r, eta_r) = complement_q(&a_r, &eta_r, &u)?;
                }
            }
            Some((yv, imaginary)) => {
                if !*imaginary {
                    // real pair: partition by exact ranks, no signs
                    let sizes = partition_halved_q(&n_r)?;
                    let a = ParamVal::from_exact(
                        QuadExt::sqrt_rational(yv).ok_or_else(|| structural("unrepresentable sqrt"))?,
                    );
                    for sz in sizes {
                        out.push(IndecomposableType::real_pair((sz - 1) as u32, a.clone()));
                    }
                    return Ok(());
                }
                let form = if k.is_multiple_of(2) {
                    eta_r.mul(&nk)
                } else {
                    eta_r.mul(&nk).mul(&s_r)
                };
                let (basis, vals) = form.congruence_diagonalize();
                let idx = (0..d)
                    .find(|&i| !vals[i].is_zero())
                    .ok_or_else(|| structural("vanishing sign form"))?;
                let w = basis.column(idx);
                let sw = s_r.mul(&w);
                let u = strings_q(&n_r, &[w, sw], k);
                let b = ParamVal::from_exact(
                    QuadExt::sqrt_rational(&(-yv.clone()))
                        .ok_or_else(|| structural("unrepresentable sqrt"))?,
                );
                out.push(IndecomposableType::imag_pair(k as u32, sign_of(&vals[idx]), b));
                (a_r, eta_r) = complement_q(&a_r, &eta_r, &u)?;
            }
        }
    }
}

fn skew_pair_q(form: &QMat) -> Option<(QMat, QMat)> {
    let d = form.rows;
    for i in 0..d {
        for j in 0..d {
            if !form.at(i, j).is_zero() {
                let mut w = QMat::zeros(d, 1);
                *w.at_mut(i, 0) = BigRational::one();
                let mut wp = QMat::zeros(d, 1);
                for r in 0..d {
                    *wp.at_mut(r, 0) = form.at(i, r).clone();
                }
                return Some((w, wp));
            }
        }
    }
    None
}

fn partition_halved_q(n: &QMat) -> Result<Vec<usize>, OrbitError> {
    let d = n.rows;
    let mut ranks = vec![d];
    let mut p = QMat::identity(d);
    for _ in 1..=d {
        p = p.mul(n);
        ranks.push(p.rank());
    }
    ranks.push(0);
    let mut sizes = Vec::new();
    for s in 1..=d {
        let ge_s = ranks[s - 1].saturating_sub(ranks[s]);
        let ge_s1 = ranks[s].saturating_sub(ranks[s + 1]);
        let exact = ge_s.saturating_sub(ge_s1);
        if exact % 2 != 0 {
            return Err(OrbitError::SpectralStructure(
                "exact path: odd string count in a paired group".into(),
            ));
        }
        for _ in 0..exact / 2 {
            sizes.push(s);
        }
    }
    Ok(sizes)
}

fn complement_q(a_r: &QMat, eta_r: &QMat, u: &QMat) -> Result<(QMat, QMat), OrbitError> {
    let constraints = u.transpose().mul(eta_r);
    let c = constraints.kernel();
    if c.cols != a_r.rows - u.cols {
        return Err(OrbitError::SpectralStructure(
            "exact path: complement dimension mismatch".into(),
        ));
    }
    let a_new = restrict_q(a_r, &c)
        .ok_or_else(|| OrbitError::SpectralStructure("exact path: singular restriction".into()))?;
    let eta_new = c.transpose().mul(&eta_r.mul(&c));
    Ok((a_new, eta_new))
}

/// Exact classification of a rational eta-skew matrix. Returns `None` when
/// the spectral cubic does not factor over Q (fall back to floats).
pub fn classify_exact(m: &QMat, sig: Sig) -> Result<Option<TypeSum>, OrbitError> {
    assert_eq!((m.rows, m.cols), (7, 7));
    let eta = eta_q(sig);
    // eta-skewness, exactly
    let skew = m.transpose().mul(&eta).add(&eta.mul(m));
    if !skew.is_zero() {
        return Err(OrbitError::Lie(crate::error::LieError::NotSkewAdjoint {
            residual: f64::INFINITY,
        }));
    }
    let m2 = m.mul(m);
    let m4 = m2.mul(&m2);
    let p2 = m2.trace();
    let p4 = m4.trace();
    let p6 = m4.mul(&m2).trace();
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));
    let six = BigRational::from_integer(BigInt::from(6));
    let e2 = -&p2 / &two;
    let e4 = (-&e2 * &p2 - &p4) / &four;
    let e6 = (-&e4 * &p2 - &e2 * &p4 - &p6) / &six;
    let Some(roots) = rational_cubic_roots(&e2, &e4, &e6) else {
        return Ok(None);
    };
    // groups
    let mut summands = Vec::new();
    let mut zero_mult = 0usize;
    let mut used_dims = 0usize;
    for (y, mult) in &roots {
        if y.is_zero() {
            zero_mult += mult;
            continue;
        }
        // V = ker((A^2 - y)^mult)
        let poly = m2.sub(&QMat::identity(7).scale(y));
        let mut k = poly.clone();
        for _ in 1..*mult {
            k = k.mul(&poly);
        }
        let basis = k.kernel();
        if basis.cols != 2 * mult {
            return Err(OrbitError::SpectralStructure(format!(
                "exact path: pair group of dimension {} expected {}",
                basis.cols,
                2 * mult
            )));
        }
        let a_r = restrict_q(m, &basis).ok_or_else(|| {
            OrbitError::SpectralStructure("exact path: singular restriction".into())
        })?;
        let eta_r = basis.transpose().mul(&eta.mul(&basis));
        peel_group_q(a_r, eta_r, Some(y), &mut summands)?;
        used_dims += 2 * mult;
    }
    // zero group
    let d0 = 2 * zero_mult + 1;
    if used_dims + d0 != 7 {
        return Err(OrbitError::SpectralStructure(
            "exact path: dimensions do not fill V".into(),
        ));
    }
    let mut k = m.clone();
    for _ in 1..d0 {
        k = k.mul(m);
    }
    let basis = k.kernel();
    if basis.cols != d0 {
        return Err(OrbitError::SpectralStructure(format!(
            "exact path: zero group of dimension {} expected {d0}",
            basis.cols
        )));
    }
    let a_r = restrict_q(m, &basis)
        .ok_or_else(|| OrbitError::SpectralStructure("exact path: singular restriction".into()))?;
    let eta_r = basis.transpose().mul(&eta.mul(&basis));
    peel_group_q(a_r, eta_r, None, &mut summands)?;

    let ts = TypeSum::new(summands);
    let want = match sig {
        Sig::Compact => (7, 0),
        Sig::Split => (3, 4),
    };
    if ts.dimension() != 7 || ts.signature() != want {
        let (p, q) = ts.signature();
        return Err(OrbitError::BadTypeSum { dim: ts.dimension(), p, q });
    }
    Ok(Some(ts))
}

/// Rational matrix from f64 entries: every f64 is an exact dyadic rational,
/// so the conversion never loses information, but entries with denominators
/// beyond `max_den` are refused (they were unlikely meant to be exact).
pub fn qmat_from_f64(m: &crate::linalg::Mat7, max_den: u64) -> Option<QMat> {
    let mut out = QMat::zeros(7, 7);
    for i in 0..7 {
        for j in 0..7 {
            let r = BigRational::from_float(m[(i, j)])?;
            if r.denom() > &BigInt::from(max_den) {
                return None;
            }
            *out.at_mut(i, j) = r;
        }
    }
    Some(out)
}

/// Exact canonical generator `A_x = F^{-1}(i_x phi)` over the rationals.
pub fn canonical_vector_field_exact(x: &crate::algebra::SevenVector<BigRational>) -> QMat {
    use crate::algebra::{associative_form, SevenVector};
    let alg = x.alg;
    let mut w = QMat::zeros(7, 7);
    for j in 1..=7 {
        for k in (j + 1)..=7 {
            let v = associative_form(
                x,
                &SevenVector::<BigRational>::basis(alg, j),
                &SevenVector::<BigRational>::basis(alg, k),
            )
            .unwrap();
            *w.at_mut(j - 1, k - 1) = v.clone();
            *w.at_mut(k - 1, j - 1) = -v;
        }
    }
    let sig = Sig::from_algebra(alg);
    eta_q(sig).mul(&w).scale(&-BigRational::one())
}
