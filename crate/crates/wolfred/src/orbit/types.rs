//! The vocabulary of the orbit classification: decorated indecomposable
//! types, their formal sums, and the named families of the 24-row table.

use super::exactnum::ParamVal;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SignTag {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl SignTag {
    pub fn as_f64(self) -> f64 {
        match self {
            SignTag::Plus => 1.0,
            SignTag::Minus => -1.0,
        }
    }
    fn symbol(self) -> &'static str {
        match self {
            SignTag::Plus => "+",
            SignTag::Minus => "-",
        }
    }
}

/// Shape of an indecomposable type. Parameters are stored alongside in
/// [`IndecomposableType`].
#[derive(Debug, Clone, PartialEq)]
pub enum Kind {
    /// `D_k^s(0)`: one nilpotent string over a definite line, k even.
    Zero { sign: SignTag },
    /// `D_k(z, -z)` with z real (z = 0 allowed for odd k): paired strings
    /// over a hyperbolic plane.
    RealPair { a: ParamVal },
    /// `D_k^s(z, -z)` with z = ib, b > 0: strings over a definite rotation
    /// plane.
    ImagPair { sign: SignTag, b: ParamVal },
    /// `D_0(z, -z, zbar, -zbar)` with z strictly complex.
    Quad { re: ParamVal, im: ParamVal },
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndecomposableType {
    pub kind: Kind,
    pub height: u32,
}

impl IndecomposableType {
    pub fn zero(height: u32, sign: SignTag) -> Self {
        assert!(height.is_multiple_of(2));
        IndecomposableType { kind: Kind::Zero { sign }, height }
    }

    pub fn real_pair(height: u32, a: ParamVal) -> Self {
        IndecomposableType { kind: Kind::RealPair { a }, height }
    }

    pub fn imag_pair(height: u32, sign: SignTag, b: ParamVal) -> Self {
        IndecomposableType { kind: Kind::ImagPair { sign, b }, height }
    }

    pub fn quad(re: ParamVal, im: ParamVal) -> Self {
        IndecomposableType { kind: Kind::Quad { re, im }, height: 0 }
    }

    pub fn dimension(&self) -> usize {
        let k = self.height as usize;
        match self.kind {
            Kind::Zero { .. } => k + 1,
            Kind::RealPair { .. } | Kind::ImagPair { .. } => 2 * (k + 1),
            Kind::Quad { .. } => 4,
        }
    }

    /// Signature (p, q) of the restriction of the form to the summand.
    pub fn signature(&self) -> (usize, usize) {
        let k = self.height as usize;
        match &self.kind {
            Kind::Zero { sign } => {
                let half = k / 2;
                // middle vector carries (-1)^(k/2) * sign
                let mid_positive = half.is_multiple_of(2) == (*sign == SignTag::Plus);
                if mid_positive {
                    (half + 1, half)
                } else {
                    (half, half + 1)
                }
            }
            Kind::RealPair { .. } => (k + 1, k + 1),
            Kind::ImagPair { sign, .. } => {
                if k % 2 == 1 {
                    (k + 1, k + 1)
                } else {
                    let half = k / 2; // k/2 hyperbolic 2-plane pairs
                    let mid_positive = half.is_multiple_of(2) == (*sign == SignTag::Plus);
                    if mid_positive {
                        (k + 2, k)
                    } else {
                        (k, k + 2)
                    }
                }
            }
            Kind::Quad { .. } => (2, 2),
        }
    }

    /// Ordering key for canonical form; parameters compared numerically.
    fn sort_key(&self) -> (u32, u8, i8, u64, u64) {
        let (rank, sign, p1, p2) = match &self.kind {
            Kind::Zero { sign } => (0u8, *sign, 0.0, 0.0),
            Kind::RealPair { a } => (1, SignTag::Plus, a.value, 0.0),
            Kind::ImagPair { sign, b } => (2, *sign, b.value, 0.0),
            Kind::Quad { re, im } => (3, SignTag::Plus, re.value, im.value),
        };
        let sgn = if sign == SignTag::Plus { 0 } else { 1 };
        (u32::MAX - self.height, rank, sgn, p1.to_bits(), p2.to_bits())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.height != other.height {
            return false;
        }
        match (&self.kind, &other.kind) {
            (Kind::Zero { sign: s1 }, Kind::Zero { sign: s2 }) => s1 == s2,
            (Kind::RealPair { a: a1 }, Kind::RealPair { a: a2 }) => a1.approx_eq(a2, tol),
            (Kind::ImagPair { sign: s1, b: b1 }, Kind::ImagPair { sign: s2, b: b2 }) => {
                s1 == s2 && b1.approx_eq(b2, tol)
            }
            (Kind::Quad { re: r1, im: i1 }, Kind::Quad { re: r2, im: i2 }) => {
                r1.approx_eq(r2, tol) && i1.approx_eq(i2, tol)
            }
            _ => false,
        }
    }
}

fn fmt_num(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 && v.abs() < 1e9 {
        format!("{}", v.round() as i64)
    } else {
        format!("{v:.6}")
    }
}

fn fmt_imag(b: f64) -> String {
    if (b - 1.0).abs() < 1e-9 {
        "i".to_string()
    } else {
        format!("{}i", fmt_num(b))
    }
}

impl fmt::Display for IndecomposableType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.height;
        match &self.kind {
            Kind::Zero { sign } => write!(f, "D{}{}(0)", k, sign.symbol()),
            Kind::RealPair { a } => {
                if a.value == 0.0 {
                    write!(f, "D{}(0,0)", k)
                } else {
                    write!(f, "D{}({},-{})", k, fmt_num(a.value), fmt_num(a.value))
                }
            }
            Kind::ImagPair { sign, b } => write!(
                f,
                "D{}{}({},-{})",
                k,
                sign.symbol(),
                fmt_imag(b.value),
                fmt_imag(b.value)
            ),
            Kind::Quad { re, im } => write!(
                f,
                "D0(z,-z,zc,-zc) z={}+{}",
                fmt_num(re.value),
                fmt_imag(im.value)
            ),
        }
    }
}

/// A formal sum of indecomposable types, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TypeSum {
    summands: Vec<IndecomposableType>,
}

impl TypeSum {
    pub fn new(mut summands: Vec<IndecomposableType>) -> Self {
        summands.sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap());
        TypeSum { summands }
    }

    pub fn summands(&self) -> &[IndecomposableType] {
        &self.summands
    }

    pub fn sum(&self, other: &TypeSum) -> TypeSum {
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        TypeSum::new(s)
    }

    pub fn dimension(&self) -> usize {
        self.summands.iter().map(|s| s.dimension()).sum()
    }

    pub fn signature(&self) -> (usize, usize) {
        self.summands.iter().fold((0, 0), |(p, q), s| {
            let (a, b) = s.signature();
            (p + a, q + b)
        })
    }

    pub fn height(&self) -> u32 {
        self.summands.iter().map(|s| s.height).max().unwrap_or(0)
    }

    /// Multiset equality with parameter tolerance.
    pub fn approx_eq(&self, other: &TypeSum, tol: f64) -> bool {
        if self.summands.len() != other.summands.len() {
            return false;
        }
        let mut used = vec![false; other.summands.len()];
        'outer: for s in &self.summands {
            for (i, t) in other.summands.iter().enumerate() {
                if !used[i] && s.approx_eq(t, tol) {
                    used[i] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}

impl fmt::Display for TypeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        // group equal consecutive summands with a multiplicity prefix
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.summands.len() {
            let mut j = i + 1;
            while j < self.summands.len() && self.summands[j].approx_eq(&self.summands[i], 1e-12) {
                j += 1;
            }
            let count = j - i;
            if count > 1 {
                parts.push(format!("{}{}", count, self.summands[i]));
            } else {
                parts.push(format!("{}", self.summands[i]));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The 24 family names of the classification table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum FamilyName {
    I1,
    II1, II2, II3, II4, II5, II6, II7,
    III1, III2, III3, III4, III5, III6, III7, III8, III9, III10,
    IV1, IV2, IV3, IV4, IV5, IV6,
}

impl FamilyName {
    pub const ALL: [FamilyName; 24] = [
        FamilyName::I1,
        FamilyName::II1, FamilyName::II2, FamilyName::II3, FamilyName::II4,
        FamilyName::II5, FamilyName::II6, FamilyName::II7,
        FamilyName::III1, FamilyName::III2, FamilyName::III3, FamilyName::III4,
        FamilyName::III5, FamilyName::III6, FamilyName::III7, FamilyName::III8,
        FamilyName::III9, FamilyName::III10,
        FamilyName::IV1, FamilyName::IV2, FamilyName::IV3, FamilyName::IV4,
        FamilyName::IV5, FamilyName::IV6,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FamilyName::I1 => "I_1",
            FamilyName::II1 => "II_1", FamilyName::II2 => "II_2",
            FamilyName::II3 => "II_3", FamilyName::II4 => "II_4",
            FamilyName::II5 => "II_5", FamilyName::II6 => "II_6",
            FamilyName::II7 => "II_7",
            FamilyName::III1 => "III_1", FamilyName::III2 => "III_2",
            FamilyName::III3 => "III_3", FamilyName::III4 => "III_4",
            FamilyName::III5 => "III_5", FamilyName::III6 => "III_6",
            FamilyName::III7 => "III_7", FamilyName::III8 => "III_8",
            FamilyName::III9 => "III_9", FamilyName::III10 => "III_10",
            FamilyName::IV1 => "IV_1", FamilyName::IV2 => "IV_2",
            FamilyName::IV3 => "IV_3", FamilyName::IV4 => "IV_4",
            FamilyName::IV5 => "IV_5", FamilyName::IV6 => "IV_6",
        }
    }

    /// Number of real parameters of the family.
    pub fn param_count(self) -> usize {
        match self {
            FamilyName::I1 => 0,
            FamilyName::II1 | FamilyName::II2 | FamilyName::II3 | FamilyName::II4
            | FamilyName::II5 | FamilyName::II6 | FamilyName::II7 => 1,
            FamilyName::III1 | FamilyName::III2 | FamilyName::III3 | FamilyName::III4
            | FamilyName::III5 | FamilyName::III6 | FamilyName::III7 | FamilyName::III8
            | FamilyName::III9 | FamilyName::III10 => 2,
            _ => 3,
        }
    }
}

/// A family assignment with its parameter values.
#[derive(Debug, Clone)]
pub struct FamilyLabel {
    pub name: FamilyName,
    pub params: Vec<ParamVal>,
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name.label())?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|p| fmt_num(p.value)).collect();
            write!(f, "({})", ps.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::exactnum::ParamVal;

    fn p(v: f64) -> ParamVal {
        ParamVal::from_f64(v)
    }

    #[test]
    fn sum_dimension_signature_height() {
        let empty = TypeSum::default();
        let d2m = TypeSum::new(vec![IndecomposableType::imag_pair(2, SignTag::Minus, p(1.5))]);
        // sum with empty is the identity
        assert_eq!(empty.sum(&d2m), d2m);
        // D2-(z,-z) has dimension 6 and signature (4,2)
        assert_eq!(d2m.dimension(), 6);
        assert_eq!(d2m.signature(), (4, 2));
        // the height of the I_1 sum is 6
        let i1 = TypeSum::new(vec![IndecomposableType::zero(6, SignTag::Plus)]);
        assert_eq!(i1.height(), 6);
        assert_eq!(i1.signature(), (3, 4));
        // first-table rows spot checks
        assert_eq!(IndecomposableType::zero(4, SignTag::Plus).signature(), (3, 2));
        assert_eq!(IndecomposableType::zero(4, SignTag::Minus).signature(), (2, 3));
        assert_eq!(IndecomposableType::zero(2, SignTag::Plus).signature(), (1, 2));
        assert_eq!(IndecomposableType::real_pair(2, p(1.0)).signature(), (3, 3));
        assert_eq!(IndecomposableType::imag_pair(2, SignTag::Plus, p(1.0)).signature(), (2, 4));
        assert_eq!(IndecomposableType::imag_pair(1, SignTag::Plus, p(1.0)).signature(), (2, 2));
        assert_eq!(IndecomposableType::imag_pair(0, SignTag::Plus, p(1.0)).signature(), (2, 0));
        assert_eq!(IndecomposableType::quad(p(1.0), p(2.0)).signature(), (2, 2));
        assert_eq!(IndecomposableType::quad(p(1.0), p(2.0)).dimension(), 4);
    }

    #[test]
    fn display_groups_multiplicities() {
        let ts = TypeSum::new(vec![
            IndecomposableType::imag_pair(0, SignTag::Minus, p(1.0)),
            IndecomposableType::imag_pair(0, SignTag::Minus, p(1.0)),
            IndecomposableType::zero(0, SignTag::Plus),
        ]);
        assert_eq!(ts.to_string(), "D0+(0) + 2D0-(i,-i)");
    }
}
