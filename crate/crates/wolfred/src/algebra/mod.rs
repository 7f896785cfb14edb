//! Octonion and split-octonion arithmetic.
//!
//! Both algebras live on R^8 with the frozen basis tables in [`table`]; the
//! quadratic form has signature (8,0) for the octonions and (4,4) for the
//! split octonions. Elements are generic over [`Scalar`] so identities can be
//! checked exactly over the rationals and fast over doubles.

pub mod g2;
pub mod table;

use crate::error::AlgebraError;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Which of the two normed algebras on R^8 an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algebra {
    /// The octonions, positive definite norm.
    Octonion,
    /// The split octonions, norm signature (4,4).
    SplitOctonion,
}

impl Algebra {
    /// The sign distinguishing R^7 from R^{3,4}: +1 for the octonions,
    /// -1 for the split octonions.
    pub fn epsilon(self) -> f64 {
        match self {
            Algebra::Octonion => 1.0,
            Algebra::SplitOctonion => -1.0,
        }
    }

    pub(crate) fn sign_table(self) -> &'static [[i8; 8]; 8] {
        match self {
            Algebra::Octonion => &table::OCT_SIGN,
            Algebra::SplitOctonion => &table::SPLIT_SIGN,
        }
    }

    /// Norm of the basis vector `e_k` under the algebra's quadratic form.
    pub fn basis_norm(self, k: usize) -> i8 {
        match self {
            Algebra::Octonion => 1,
            Algebra::SplitOctonion => {
                if k >= 4 {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub(crate) fn fixture_name(self) -> &'static str {
        match self {
            Algebra::Octonion => "O",
            Algebra::SplitOctonion => "Osplit",
        }
    }
}

/// An element of O or O-tilde: 8 coordinates over the basis e0..e7.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<T: Scalar> {
    pub alg: Algebra,
    pub coords: [T; 8],
}

impl<T: Scalar> AlgebraElement<T> {
    pub fn new(alg: Algebra, coords: [T; 8]) -> Self {
        AlgebraElement { alg, coords }
    }

    pub fn zero(alg: Algebra) -> Self {
        AlgebraElement::new(alg, std::array::from_fn(|_| T::zero()))
    }

    pub fn one(alg: Algebra) -> Self {
        Self::basis(alg, 0)
    }

    /// The basis element `e_k`.
    pub fn basis(alg: Algebra, k: usize) -> Self {
        let mut e = Self::zero(alg);
        e.coords[k] = T::one();
        e
    }

    pub fn real_part(&self) -> T {
        self.coords[0].clone()
    }

    /// Imaginary part as an element of V = Im O(V).
    pub fn imaginary_part(&self) -> SevenVector<T> {
        SevenVector {
            alg: self.alg,
            coords: std::array::from_fn(|i| self.coords[i + 1].clone()),
        }
    }

    pub fn conjugate(&self) -> Self {
        let mut c = self.clone();
        for k in 1..8 {
            c.coords[k] = -c.coords[k].clone();
        }
        c
    }

    /// The quadratic form |x| (signature (8,0) or (4,4)); not a metric norm.
    pub fn norm(&self) -> T {
        self.inner(self)
    }

    /// Polarization of the quadratic form.
    pub fn inner(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for k in 0..8 {
            let s = T::from_i8(self.alg.basis_norm(k));
            acc = acc + self.coords[k].clone() * other.coords[k].clone() * s;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for k in 0..8 {
            r.coords[k] = r.coords[k].clone() + other.coords[k].clone();
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for k in 0..8 {
            r.coords[k] = r.coords[k].clone() - other.coords[k].clone();
        }
        r
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut r = self.clone();
        for k in 0..8 {
            r.coords[k] = r.coords[k].clone() * c.clone();
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// `x * y` under the algebra's multiplication table.
pub fn multiply<T: Scalar>(
    x: &AlgebraElement<T>,
    y: &AlgebraElement<T>,
) -> Result<AlgebraElement<T>, AlgebraError> {
    if x.alg != y.alg {
        return Err(AlgebraError::TagMismatch(x.alg, y.alg));
    }
    let sign = x.alg.sign_table();
    let mut out: AlgebraElement<T> = AlgebraElement::zero(x.alg);
    for (i, xi) in x.coords.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.coords.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let k = table::IDX[i][j] as usize;
            let term = xi.clone() * yj.clone() * T::from_i8(sign[i][j]);
            out.coords[k] = out.coords[k].clone() + term;
        }
    }
    Ok(out)
}

/// The associator `(xy)z - x(yz)`.
pub fn associator<T: Scalar>(
    x: &AlgebraElement<T>,
    y: &AlgebraElement<T>,
    z: &AlgebraElement<T>,
) -> Result<AlgebraElement<T>, AlgebraError> {
    let lhs = multiply(&multiply(x, y)?, z)?;
    let rhs = multiply(x, &multiply(y, z)?)?;
    Ok(lhs.sub(&rhs))
}

/// Residuals of the three Moufang identities; all zero in exact arithmetic.
pub fn moufang_residuals<T: Scalar>(
    x: &AlgebraElement<T>,
    y: &AlgebraElement<T>,
    z: &AlgebraElement<T>,
) -> Result<[AlgebraElement<T>; 3], AlgebraError> {
    let xy = multiply(x, y)?;
    let xyx = multiply(&xy, x)?;
    // (xyx)z - x(y(xz))
    let r1 = multiply(&xyx, z)?.sub(&multiply(x, &multiply(y, &multiply(x, z)?)?)?);
    // z(xyx) - ((zx)y)x
    let r2 = multiply(z, &xyx)?.sub(&multiply(&multiply(&multiply(z, x)?, y)?, x)?);
    // (xy)(zx) - x((yz)x)
    let r3 = multiply(&xy, &multiply(z, x)?)?.sub(&multiply(x, &multiply(&multiply(y, z)?, x)?)?);
    Ok([r1, r2, r3])
}

/// A vector in V = R^7 or R^{3,4}, identified with Im O(V).
#[derive(Debug, Clone, PartialEq)]
pub struct SevenVector<T: Scalar> {
    pub alg: Algebra,
    pub coords: [T; 7],
}

impl<T: Scalar> SevenVector<T> {
    pub fn new(alg: Algebra, coords: [T; 7]) -> Self {
        SevenVector { alg, coords }
    }

    /// The imaginary basis vector `e_k`, `k` in 1..=7.
    pub fn basis(alg: Algebra, k: usize) -> Self {
        assert!((1..=7).contains(&k));
        let mut v = SevenVector::new(alg, std::array::from_fn(|_| T::zero()));
        v.coords[k - 1] = T::one();
        v
    }

    /// Embed into the algebra with zero real part.
    pub fn embed(&self) -> AlgebraElement<T> {
        let mut e = AlgebraElement::zero(self.alg);
        for i in 0..7 {
            e.coords[i + 1] = self.coords[i].clone();
        }
        e
    }

    /// The scalar product of V (signature (7,0) or (3,4)).
    pub fn inner_v(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for i in 0..7 {
            let s = T::from_i8(self.alg.basis_norm(i + 1));
            acc = acc + self.coords[i].clone() * other.coords[i].clone() * s;
        }
        acc
    }

    pub fn norm_v(&self) -> T {
        self.inner_v(self)
    }
}

/// The associative 3-form `phi(x,y,z) = <x, yz>`.
pub fn associative_form<T: Scalar>(
    x: &SevenVector<T>,
    y: &SevenVector<T>,
    z: &SevenVector<T>,
) -> Result<T, AlgebraError> {
    let yz = multiply(&y.embed(), &z.embed())?;
    Ok(x.embed().inner(&yz))
}

/// The coassociative 4-form `psi(x,y,z,w) = <x, y(zw) - w(zy)>`.
pub fn coassociative_form<T: Scalar>(
    x: &SevenVector<T>,
    y: &SevenVector<T>,
    z: &SevenVector<T>,
    w: &SevenVector<T>,
) -> Result<T, AlgebraError> {
    let (y, z, w) = (y.embed(), z.embed(), w.embed());
    let lhs = multiply(&y, &multiply(&z, &w)?)?;
    let rhs = multiply(&w, &multiply(&z, &y)?)?;
    Ok(x.embed().inner(&lhs.sub(&rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;
    use num_traits::Zero;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    type Entry = (i8, u8);

    // Independent oracle: basis products by symbolic expansion of the
    // Cayley-Dickson rule (a,b)(c,d) = (ac -+ conj(d)b, da + b conj(c))
    // over the quaternion table I1 I2 = I3 (cyclic).
    fn quat_mul(i: usize, j: usize) -> Entry {
        const Q_SIGN: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];
        const Q_IDX: [[u8; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
        (Q_SIGN[i][j], Q_IDX[i][j])
    }

    fn quat_conj(i: usize) -> i8 {
        if i == 0 {
            1
        } else {
            -1
        }
    }

    fn cayley_dickson_entry(alg: Algebra, p: usize, q: usize) -> Entry {
        // minus for the octonions ((+)-construction), plus for the split ones
        let cd_sign: i8 = match alg {
            Algebra::Octonion => -1,
            Algebra::SplitOctonion => 1,
        };
        // p encodes (q_p, 0) when p < 4 and (0, q_{p-4}) otherwise
        let (a, b) = (p, p.wrapping_sub(4));
        let (c, d) = (q, q.wrapping_sub(4));
        match (p < 4, q < 4) {
            (true, true) => {
                let (s, k) = quat_mul(a, c);
                (s, k)
            }
            (true, false) => {
                // (a,0)(0,d) = (0, da)
                let (s, k) = quat_mul(d, a);
                (s, k + 4)
            }
            (false, true) => {
                // (0,b)(c,0) = (0, b conj(c))
                let (s, k) = quat_mul(b, c);
                (s * quat_conj(c), k + 4)
            }
            (false, false) => {
                // (0,b)(0,d) = (-+ conj(d) b, 0)
                let (s, k) = quat_mul(d, b);
                (cd_sign * s * quat_conj(d), k)
            }
        }
    }

    #[test]
    fn frozen_tables_match_cayley_dickson_expansion() {
        for alg in [Algebra::Octonion, Algebra::SplitOctonion] {
            let sign = alg.sign_table();
            for i in 0..8 {
                for j in 0..8 {
                    let (s, k) = cayley_dickson_entry(alg, i, j);
                    assert_eq!(
                        (s, k),
                        (sign[i][j], table::IDX[i][j]),
                        "{alg:?} e{i} * e{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn basis_anchors() {
        // e_i^2 = -1 in O; the split table flips e4..e7 squares
        let o = Algebra::Octonion;
        let s = Algebra::SplitOctonion;
        for i in 1..8 {
            let ei = AlgebraElement::<f64>::basis(o, i);
            let sq = multiply(&ei, &ei).unwrap();
            assert_eq!(sq.coords[0], -1.0);
        }
        for i in 4..8 {
            let ei = AlgebraElement::<f64>::basis(s, i);
            assert_eq!(multiply(&ei, &ei).unwrap().coords[0], 1.0);
        }
        // column-criterion anchors at the identity frame
        for alg in [o, s] {
            let eps = alg.epsilon();
            let p = |i, j| {
                multiply(
                    &AlgebraElement::<f64>::basis(alg, i),
                    &AlgebraElement::<f64>::basis(alg, j),
                )
                .unwrap()
            };
            assert_eq!(p(4, 5).coords[1], eps); // e4 e5 = eps e1
            assert_eq!(p(4, 6).coords[2], eps);
            assert_eq!(p(4, 7).coords[3], eps);
            let z = p(4, 5).add(&p(6, 7)); // e4 e5 + e6 e7 = 0
            assert!(z.is_zero());
        }
    }

    #[test]
    fn tag_mismatch_is_an_error() {
        let x = AlgebraElement::<f64>::basis(Algebra::Octonion, 1);
        let y = AlgebraElement::<f64>::basis(Algebra::SplitOctonion, 1);
        assert!(multiply(&x, &y).is_err());
    }

    fn random_rational(rng: &mut impl Rng) -> BigRational {
        rat(rng.gen_range(-9..=9), rng.gen_range(1..=7))
    }

    fn random_element(alg: Algebra, rng: &mut impl Rng) -> AlgebraElement<BigRational> {
        AlgebraElement::new(alg, std::array::from_fn(|_| random_rational(rng)))
    }

    #[test]
    fn exact_identities_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for alg in [Algebra::Octonion, Algebra::SplitOctonion] {
            for _ in 0..50 {
                let x = random_element(alg, &mut rng);
                let y = random_element(alg, &mut rng);
                let z = random_element(alg, &mut rng);
                // norm multiplicativity, exactly
                let xy = multiply(&x, &y).unwrap();
                assert_eq!(xy.norm(), x.norm() * y.norm());
                // alternativity
                assert!(associator(&x, &x, &y).unwrap().is_zero());
                assert!(associator(&x, &y, &y).unwrap().is_zero());
                // Moufang
                for r in moufang_residuals(&x, &y, &z).unwrap() {
                    assert!(r.is_zero());
                }
                // unit and conjugation
                let one = AlgebraElement::one(alg);
                assert_eq!(multiply(&one, &x).unwrap(), x);
                assert_eq!(x.conjugate().conjugate(), x);
            }
        }
    }

    #[test]
    fn polarization_identity_exact() {
        // <xz, yw> + <xw, yz> = 2 <x,y> <z,w>
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for alg in [Algebra::Octonion, Algebra::SplitOctonion] {
            for _ in 0..20 {
                let x = random_element(alg, &mut rng);
                let y = random_element(alg, &mut rng);
                let z = random_element(alg, &mut rng);
                let w = random_element(alg, &mut rng);
                let lhs = multiply(&x, &z).unwrap().inner(&multiply(&y, &w).unwrap())
                    + multiply(&x, &w).unwrap().inner(&multiply(&y, &z).unwrap());
                let rhs = rat(2, 1) * x.inner(&y) * z.inner(&w);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn norm_signature() {
        assert_eq!(AlgebraElement::<f64>::one(Algebra::Octonion).norm(), 1.0);
        let e4 = AlgebraElement::<f64>::basis(Algebra::SplitOctonion, 4);
        assert_eq!(e4.norm(), -1.0);
    }

    #[test]
    fn forms_on_basis_match_golden_table() {
        // phi(e1, e2, e4) = <e1, e2 e4>; e2 e4 = e6 in O, so 0
        let o = Algebra::Octonion;
        let b = |k| SevenVector::<f64>::basis(o, k);
        assert_eq!(associative_form(&b(1), &b(2), &b(4)).unwrap(), 0.0);
        // phi(e1, e2, e3) = <e1, e2 e3> = <e1, e1> = 1
        assert_eq!(associative_form(&b(1), &b(2), &b(3)).unwrap(), 1.0);
        assert_eq!(associative_form(&b(1), &b(4), &b(5)).unwrap(), 1.0);
        // psi(e1,e2,e3,e4) = 0 and psi(e4,e5,e6,e7) = -2 over this table
        assert_eq!(
            coassociative_form(&b(1), &b(2), &b(3), &b(4)).unwrap(),
            0.0
        );
        assert_eq!(
            coassociative_form(&b(4), &b(5), &b(6), &b(7)).unwrap(),
            -2.0
        );
    }

    #[test]
    fn imaginary_orthogonal_product_rules() {
        // For imaginary, mutually orthogonal x, y: xy = -yx, imaginary,
        // orthogonal to both.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for alg in [Algebra::Octonion, Algebra::SplitOctonion] {
            let mut found = 0;
            while found < 20 {
                let x = random_element(alg, &mut rng).imaginary_part();
                let mut y = random_element(alg, &mut rng).imaginary_part();
                let nx = x.norm_v();
                if nx.is_zero() {
                    continue;
                }
                // project y orthogonally to x (exact)
                let c = x.inner_v(&y) / nx.clone();
                for i in 0..7 {
                    y.coords[i] = y.coords[i].clone() - c.clone() * x.coords[i].clone();
                }
                let xe = x.embed();
                let ye = y.embed();
                let xy = multiply(&xe, &ye).unwrap();
                let yx = multiply(&ye, &xe).unwrap();
                assert!(xy.add(&yx).is_zero());
                assert!(xy.real_part().is_zero());
                assert!(xy.inner(&xe).is_zero());
                assert!(xy.inner(&ye).is_zero());
                found += 1;
            }
        }
    }
}
