//! JSON wire formats shared by the CLI and the shipped fixtures.

use crate::error::LieError;
use crate::lie::{GroupElement, Sig, SkewAdjoint, TwoForm};
use crate::linalg::Mat7;
use crate::orbit::exact::QMat;
use crate::orbit::types::{FamilyLabel, Kind, SignTag, TypeSum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// A matrix entry: a JSON number, or a fraction string like "3/7" for the
/// exact paths.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Num(f64),
    Frac(String),
}

impl Entry {
    pub fn to_f64(&self) -> Result<f64, String> {
        match self {
            Entry::Num(v) => Ok(*v),
            Entry::Frac(s) => {
                let r = parse_fraction(s)?;
                r.to_f64().ok_or_else(|| format!("fraction out of range: {s}"))
            }
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Entry::Num(v) => {
                let r = BigRational::from_float(*v)?;
                if r.denom() > &BigInt::from(1u64 << 40) {
                    None
                } else {
                    Some(r)
                }
            }
            Entry::Frac(s) => parse_fraction(s).ok(),
        }
    }
}

fn parse_fraction(s: &str) -> Result<BigRational, String> {
    let parts: Vec<&str> = s.split('/').collect();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|e| format!("bad integer {t}: {e}"));
    match parts.as_slice() {
        [n] => Ok(BigRational::from_integer(parse_int(n)?)),
        [n, d] => {
            let den = parse_int(d)?;
            if den == BigInt::from(0) {
                return Err(format!("zero denominator in {s}"));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        _ => Err(format!("not a fraction: {s}")),
    }
}

/// 7x7 matrix with its metric signature.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub sig: Sig,
    pub rows: Vec<Vec<Entry>>,
}

impl MatrixJson {
    pub fn from_mat(sig: Sig, m: &Mat7) -> Self {
        MatrixJson {
            sig,
            rows: (0..7)
                .map(|i| (0..7).map(|j| Entry::Num(m[(i, j)])).collect())
                .collect(),
        }
    }

    pub fn to_mat(&self) -> Result<Mat7, String> {
        if self.rows.len() != 7 || self.rows.iter().any(|r| r.len() != 7) {
            return Err("matrix must be 7x7".into());
        }
        let mut m = Mat7::zeros();
        for i in 0..7 {
            for j in 0..7 {
                m[(i, j)] = self.rows[i][j].to_f64()?;
            }
        }
        Ok(m)
    }

    /// Exact rational reading of the entries when all are representable.
    pub fn to_qmat(&self) -> Option<QMat> {
        if self.rows.len() != 7 || self.rows.iter().any(|r| r.len() != 7) {
            return None;
        }
        let mut q = QMat::zeros(7, 7);
        for i in 0..7 {
            for j in 0..7 {
                *q.at_mut(i, j) = self.rows[i][j].to_rational()?;
            }
        }
        Some(q)
    }

    pub fn to_skew_adjoint(&self) -> Result<SkewAdjoint, String> {
        SkewAdjoint::new(self.sig, self.to_mat()?).map_err(|e: LieError| e.to_string())
    }

    pub fn to_group_element(&self, tol: f64) -> Result<GroupElement, String> {
        GroupElement::new_with_tol(self.sig, self.to_mat()?, tol).map_err(|e| e.to_string())
    }

    pub fn to_two_form(&self) -> Result<TwoForm, String> {
        TwoForm::new(self.sig, self.to_mat()?).map_err(|e| e.to_string())
    }
}

/// One summand of a type sum, following the documented schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummandJson {
    pub kind: String,
    pub height: u32,
    pub zeta: [f64; 2],
    pub sign: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeSumJson {
    pub summands: Vec<SummandJson>,
    pub display: String,
}

impl TypeSumJson {
    pub fn from_type_sum(ts: &TypeSum) -> Self {
        let summands = ts
            .summands()
            .iter()
            .map(|s| {
                let (kind, zeta, sign) = match &s.kind {
                    Kind::Zero { sign } => (
                        format!("D{}{}(0)", s.height, sign_str(*sign)),
                        [0.0, 0.0],
                        sign_str(*sign).to_string(),
                    ),
                    Kind::RealPair { a } => (
                        format!("D{}(z,-z)", s.height),
                        [a.value, 0.0],
                        "none".to_string(),
                    ),
                    Kind::ImagPair { sign, b } => (
                        format!("D{}{}(z,-z)", s.height, sign_str(*sign)),
                        [0.0, b.value],
                        sign_str(*sign).to_string(),
                    ),
                    Kind::Quad { re, im } => (
                        "D0(z,-z,zc,-zc)".to_string(),
                        [re.value, im.value],
                        "none".to_string(),
                    ),
                };
                SummandJson { kind, height: s.height, zeta, sign }
            })
            .collect();
        TypeSumJson { summands, display: ts.to_string() }
    }
}

fn sign_str(s: SignTag) -> &'static str {
    match s {
        SignTag::Plus => "+",
        SignTag::Minus => "-",
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub family: String,
    pub params: Vec<f64>,
}

impl FamilyJson {
    pub fn from_label(fl: &FamilyLabel) -> Self {
        FamilyJson {
            family: fl.name.label().to_string(),
            params: fl.params.iter().map(|p| p.value).collect(),
        }
    }
}

/// Fixture file of canonical representatives of the 24 families.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyFixtures {
    pub version: u32,
    pub families: Vec<FamilyFixture>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyFixture {
    pub family: String,
    pub params: Vec<f64>,
    pub matrix: MatrixJson,
}
