//! Exact real quadratic numbers `a + b sqrt(d)` with rational a, b and
//! squarefree positive d. Enough to carry eigenvalue magnitudes like sqrt(2)
//! through the properness predicates exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
    /// Squarefree positive radicand; 1 when the value is rational.
    pub d: u64,
}

/// Split n = s^2 * d with d squarefree, by trial division. Returns None when
/// the leftover cofactor is too large to certify squarefree.
fn squarefree_split(n: u64) -> Option<(u64, u64)> {
    let mut s: u64 = 1;
    let mut d: u64 = 1;
    let mut m = n;
    let mut p: u64 = 2;
    while p * p <= m && p <= 1_000_000 {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            s = s.checked_mul(p.pow(e / 2))?;
            if e % 2 == 1 {
                d = d.checked_mul(p)?;
            }
        }
        p += 1;
    }
    if m > 1 {
        if m < 1_000_000_000_000 && p * p > m {
            d = d.checked_mul(m)?; // leftover is prime
        } else {
            return None;
        }
    }
    Some((s, d))
}

impl QuadExt {
    pub fn rational(a: BigRational) -> Self {
        QuadExt { a, b: BigRational::zero(), d: 1 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact square root of a nonnegative rational, as `(s/q) sqrt(d)`.
    pub fn sqrt_rational(r: &BigRational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Self::rational(BigRational::zero()));
        }
        // sqrt(p/q) = sqrt(p q) / q
        let p = r.numer().to_u64()?;
        let q = r.denom().to_u64()?;
        let pq = p.checked_mul(q)?;
        let (s, d) = squarefree_split(pq)?;
        let coeff = BigRational::new(BigInt::from(s), BigInt::from(q));
        if d == 1 {
            Some(Self::rational(coeff))
        } else {
            Some(QuadExt { a: BigRational::zero(), b: coeff, d })
        }
    }

    pub fn is_zero_val(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() || self.d == 1
    }

    pub fn to_f64(&self) -> f64 {
        let af = self.a.to_f64().unwrap_or(f64::NAN);
        let bf = self.b.to_f64().unwrap_or(f64::NAN);
        af + bf * (self.d as f64).sqrt()
    }

    /// Is x/y rational? Exact, using linear independence of {1, sqrt(d)}
    /// over Q. Zero divided by anything nonzero counts as rational.
    pub fn ratio_is_rational(x: &QuadExt, y: &QuadExt) -> bool {
        assert!(!y.is_zero_val(), "ratio against zero");
        if x.is_zero_val() {
            return true;
        }
        match (x.is_rational(), y.is_rational()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            (false, false) => {
                if x.d != y.d {
                    // squarefree normal form: sqrt(d1)/sqrt(d2) rational iff d1 = d2
                    return false;
                }
                // (a1 + b1 s)/(a2 + b2 s) rational iff a1 b2 = a2 b1
                x.a.clone() * y.b.clone() == y.a.clone() * x.b.clone()
            }
        }
    }
}

/// A parameter value: a float for numeric paths, optionally an exact value
/// when the classification (or the caller) produced one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVal {
    pub value: f64,
    pub exact: Option<QuadExt>,
}

impl ParamVal {
    pub fn from_f64(value: f64) -> Self {
        ParamVal { value, exact: None }
    }

    pub fn from_exact(q: QuadExt) -> Self {
        ParamVal { value: q.to_f64(), exact: Some(q) }
    }

    pub fn approx_eq(&self, other: &ParamVal, tol: f64) -> bool {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return a == b;
        }
        (self.value - other.value).abs() <= tol * (1.0 + self.value.abs().max(other.value.abs()))
    }
}
