//! Properness and freeness of the one-parameter action generated by an
//! orbit representative. Outside the IV_4 family the action is proper and
//! free at every level; inside IV_4 properness is equivalent to
//! commensurability of the rotation triple (a, b, c), and 3-Sasakian
//! irregular points are absent exactly when a, b, c are distinct.

use super::exactnum::{ParamVal, QuadExt};
use super::types::{FamilyLabel, FamilyName};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Verdict of the properness predicate.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum Properness {
    /// Not IV_4: proper and free at all levels.
    ProperFree,
    /// IV_4 with commensurable rates: proper; reports the normalized
    /// integer triple when one exists and whether irregular points occur.
    Iv4Proper {
        normalized: Option<[u64; 3]>,
        distinct: bool,
        irregular_points: bool,
        exact: bool,
    },
    /// IV_4 with incommensurable rates: the action is not proper. Carries
    /// the witness pair of parameter indices.
    Iv4NotProper { witness: (usize, usize), exact: bool },
}

/// Best rational approximation p/q of `x` with `q <= qmax` by continued
/// fractions; accepted when it matches to `tol` relative.
pub fn rational_reconstruct(x: f64, qmax: u64, tol: f64) -> Option<(i64, u64)> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, v.floor() as i128, 1i128);
    v -= v.floor();
    for _ in 0..64 {
        let approx = p1 as f64 / q1 as f64;
        if (approx - x.abs()).abs() <= tol * (1.0 + x.abs()) {
            break;
        }
        if v.abs() < 1e-18 {
            break;
        }
        v = 1.0 / v;
        let a = v.floor();
        if !a.is_finite() || a as i128 <= 0 {
            break;
        }
        v -= a;
        let p2 = a as i128 * p1 + p0;
        let q2 = a as i128 * q1 + q0;
        if q2 > qmax as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    let approx = p1 as f64 / q1 as f64;
    if q1 >= 1 && q1 <= qmax as i128 && (approx - x.abs()).abs() <= tol * (1.0 + x.abs()) {
        let p = if neg { -p1 } else { p1 };
        Some((p as i64, q1 as u64))
    } else {
        None
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Normalized integer triple for pairwise-commensurable positive rates.
fn integer_triple(rates: &[f64; 3], qmax: u64, tol: f64) -> Option<[u64; 3]> {
    // express each rate as a multiple of the first nonzero one
    let base = rates.iter().copied().find(|r| *r != 0.0)?;
    let mut fracs: Vec<(i64, u64)> = Vec::new();
    for r in rates {
        if *r == 0.0 {
            fracs.push((0, 1));
        } else {
            fracs.push(rational_reconstruct(r / base, qmax, tol)?);
        }
    }
    let lcm_q = fracs
        .iter()
        .map(|(_, q)| *q)
        .fold(1u64, |l, q| l / gcd(l, q) * q);
    let mut ints: Vec<u64> = fracs
        .iter()
        .map(|(p, q)| (p.unsigned_abs()) * (lcm_q / q))
        .collect();
    let g = ints.iter().fold(0u64, |g, v| gcd(g.max(1), (*v).max(1)));
    for v in ints.iter_mut() {
        if *v != 0 {
            *v /= g;
        }
    }
    Some([ints[0], ints[1], ints[2]])
}

fn exact_of(p: &ParamVal) -> Option<&QuadExt> {
    p.exact.as_ref()
}

/// Exact rational triple (scaled to integers) when all rates are rational
/// multiples of a common exact value.
fn exact_integer_triple(vals: &[&QuadExt; 3]) -> Option<[u64; 3]> {
    let base = vals.iter().find(|v| !v.is_zero_val())?;
    let mut ratios: Vec<BigRational> = Vec::new();
    for v in vals {
        if v.is_zero_val() {
            ratios.push(BigRational::zero());
        } else {
            if !QuadExt::ratio_is_rational(v, base) {
                return None;
            }
            // ratio = (a + b sqrt d)/(a' + b' sqrt d): rational by the test;
            // compute it from whichever coefficient pair is nonzero
            let r = if !base.b.is_zero() {
                v.b.clone() / base.b.clone()
            } else {
                v.a.clone() / base.a.clone()
            };
            ratios.push(r.abs());
        }
    }
    let lcm_den = ratios
        .iter()
        .map(|r| r.denom().clone())
        .fold(BigInt::from(1), |l, d| {
            let g = num_integer::Integer::gcd(&l, &d);
            l / g * d
        });
    let ints: Option<Vec<u64>> = ratios
        .iter()
        .map(|r| (r.numer() * (&lcm_den / r.denom())).abs().to_u64())
        .collect();
    let mut ints = ints?;
    let g = ints.iter().fold(0u64, |g, v| gcd(g.max(1), (*v).max(1)));
    for v in ints.iter_mut() {
        if *v != 0 {
            *v /= g;
        }
    }
    Some([ints[0], ints[1], ints[2]])
}

pub struct PropernessOptions {
    /// Denominator bound of the rational reconstruction.
    pub qmax: u64,
    /// Relative tolerance of the reconstruction.
    pub tol: f64,
}

impl Default for PropernessOptions {
    fn default() -> Self {
        PropernessOptions { qmax: 1_000_000, tol: 1e-9 }
    }
}

/// Properness/freeness verdict for a family label.
pub fn is_proper_free(fl: &FamilyLabel) -> Properness {
    is_proper_free_with(fl, &PropernessOptions::default())
}

pub fn is_proper_free_with(fl: &FamilyLabel, opts: &PropernessOptions) -> Properness {
    if fl.name != FamilyName::IV4 {
        return Properness::ProperFree;
    }
    let rates: [f64; 3] = [fl.params[0].value, fl.params[1].value, fl.params[2].value];
    let distinct = (rates[0] - rates[1]).abs() > opts.tol * (1.0 + rates[0].abs())
        && (rates[0] - rates[2]).abs() > opts.tol * (1.0 + rates[0].abs())
        && (rates[1] - rates[2]).abs() > opts.tol * (1.0 + rates[1].abs());

    // exact path when every parameter carries an exact value
    if let (Some(a), Some(b), Some(c)) = (
        exact_of(&fl.params[0]),
        exact_of(&fl.params[1]),
        exact_of(&fl.params[2]),
    ) {
        let vals = [a, b, c];
        let nonzero: Vec<usize> = (0..3).filter(|&i| !vals[i].is_zero_val()).collect();
        for i in 0..nonzero.len() {
            for j in (i + 1)..nonzero.len() {
                let (x, y) = (vals[nonzero[i]], vals[nonzero[j]]);
                if !QuadExt::ratio_is_rational(x, y) {
                    return Properness::Iv4NotProper {
                        witness: (nonzero[i], nonzero[j]),
                        exact: true,
                    };
                }
            }
        }
        let distinct_exact = a != b && a != c && b != c;
        return Properness::Iv4Proper {
            normalized: exact_integer_triple(&vals),
            distinct: distinct_exact,
            irregular_points: !distinct_exact,
            exact: true,
        };
    }

    // float path: continued-fraction reconstruction of pairwise ratios
    let nonzero: Vec<usize> = (0..3).filter(|&i| rates[i] != 0.0).collect();
    for i in 0..nonzero.len() {
        for j in (i + 1)..nonzero.len() {
            let r = rates[nonzero[i]] / rates[nonzero[j]];
            if rational_reconstruct(r, opts.qmax, opts.tol).is_none() {
                return Properness::Iv4NotProper {
                    witness: (nonzero[i], nonzero[j]),
                    exact: false,
                };
            }
        }
    }
    Properness::Iv4Proper {
        normalized: integer_triple(&rates, opts.qmax, opts.tol),
        distinct,
        irregular_points: !distinct,
        exact: false,
    }
}
