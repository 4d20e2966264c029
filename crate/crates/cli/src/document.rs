//! The JSON input format.
//!
//! Indices are 1-based. Brackets and bracket jets are sparse lists of
//! `[i, j, k, numerator, denominator]` meaning `[e_i, e_j]` has coefficient
//! `numerator/denominator` on `e_k`; structure-map jets use
//! `[j, k, numerator, denominator]` for the coefficient of `e_k` in
//! `α_n(e_j)`. Matrices are row-major arrays of integers or `"num/den"`
//! strings, with column `j` holding the image of `e_j`.

use homleib::equivariant::{FiniteGroup, GroupAction};
use homleib::linalg::{format_rational, parse_rational, Matrix, Rational};
use homleib::{GammaCochain, HomLeibnizAlgebra};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// An integer written either as a JSON number or, when it does not fit in
/// 64 bits, as a decimal string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawInt {
    Small(i64),
    Big(String),
}

impl RawInt {
    fn value(&self, field: &str) -> Result<BigInt, DocumentError> {
        match self {
            RawInt::Small(n) => Ok(BigInt::from(*n)),
            RawInt::Big(s) => s
                .trim()
                .parse()
                .map_err(|_| field_error(field, format!("`{s}` is not an integer"))),
        }
    }

    fn from_big(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => RawInt::Small(v),
            None => RawInt::Big(n.to_string()),
        }
    }
}

/// A matrix entry: an integer or a `"num/den"` string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawScalar {
    Int(i64),
    Text(String),
}

impl RawScalar {
    fn value(&self, field: &str) -> Result<Rational, DocumentError> {
        match self {
            RawScalar::Int(n) => Ok(Rational::from_integer(BigInt::from(*n))),
            RawScalar::Text(s) => parse_rational(s).ok_or_else(|| {
                field_error(
                    field,
                    format!("`{s}` is not a rational with nonzero denominator"),
                )
            }),
        }
    }
}

pub type RawBracketEntry = (usize, usize, usize, RawInt, RawInt);
pub type RawLinearEntry = (usize, usize, RawInt, RawInt);
pub type RawMatrix = Vec<Vec<RawScalar>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGroup {
    pub order: usize,
    pub mult_table: Vec<Vec<usize>>,
    pub reps: Vec<RawMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDeformation {
    pub order: usize,
    pub m_jets: Vec<Vec<RawBracketEntry>>,
    pub a_jets: Vec<Vec<RawLinearEntry>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGauge {
    pub psi_jets: Vec<RawMatrix>,
}

/// The document exactly as written.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub bracket: Vec<RawBracketEntry>,
    pub alpha: RawMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<RawGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deformation: Option<RawDeformation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<RawGauge>,
}

/// Jets `m_1..m_N` and `α_1..α_N`; order 0 is the base algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jets {
    pub m: Vec<GammaCochain>,
    pub a: Vec<GammaCochain>,
}

/// A checked document. The algebra is not validated against the axioms;
/// that is the job of `verify`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub name: Option<String>,
    pub algebra: HomLeibnizAlgebra,
    pub group: Option<GroupAction>,
    pub deformation: Option<Jets>,
    pub gauge: Option<Vec<Matrix>>,
}

fn ratio(num: &RawInt, den: &RawInt, field: &str) -> Result<Rational, DocumentError> {
    let d = den.value(field)?;
    if d.is_zero() {
        return Err(field_error(field, "zero denominator"));
    }
    Ok(Rational::new(num.value(field)?, d))
}

fn index(i: usize, dim: usize, field: &str) -> Result<usize, DocumentError> {
    if i == 0 || i > dim {
        return Err(field_error(field, format!("index {i} outside 1..={dim}")));
    }
    Ok(i - 1)
}

fn matrix(raw: &RawMatrix, dim: usize, field: &str) -> Result<Matrix, DocumentError> {
    if raw.len() != dim || raw.iter().any(|row| row.len() != dim) {
        return Err(field_error(field, format!("expected a {dim}×{dim} matrix")));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for (r, row) in raw.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            entries.push(x.value(&format!("{field}[{}][{}]", r + 1, c + 1))?);
        }
    }
    Ok(Matrix::from_entries(dim, dim, entries).expect("square"))
}

fn bilinear(
    raw: &[RawBracketEntry],
    dim: usize,
    field: &str,
) -> Result<GammaCochain, DocumentError> {
    let mut g = GammaCochain::zero(dim, 2);
    for (n, (i, j, k, num, den)) in raw.iter().enumerate() {
        let f = format!("{field}[{}]", n + 1);
        let (i, j, k) = (
            index(*i, dim, &f)?,
            index(*j, dim, &f)?,
            index(*k, dim, &f)?,
        );
        let v = g.get(k, &[i, j]) + ratio(num, den, &f)?;
        g.set(k, &[i, j], v);
    }
    Ok(g)
}

fn linear(raw: &[RawLinearEntry], dim: usize, field: &str) -> Result<GammaCochain, DocumentError> {
    let mut g = GammaCochain::zero(dim, 1);
    for (n, (j, k, num, den)) in raw.iter().enumerate() {
        let f = format!("{field}[{}]", n + 1);
        let (j, k) = (index(*j, dim, &f)?, index(*k, dim, &f)?);
        let v = g.get(k, &[j]) + ratio(num, den, &f)?;
        g.set(k, &[j], v);
    }
    Ok(g)
}

impl RawDocument {
    pub fn check(&self) -> Result<AlgebraDocument, DocumentError> {
        let dim = self.dim;
        if dim == 0 {
            return Err(field_error("dim", "must be positive"));
        }
        let alpha = matrix(&self.alpha, dim, "alpha")?;
        let bracket = bilinear(&self.bracket, dim, "bracket")?;
        let mut constants = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    constants.push(bracket.get(k, &[i, j]).clone());
                }
            }
        }
        let algebra = HomLeibnizAlgebra::new(dim, constants, alpha)
            .map_err(|e| field_error("bracket", e.to_string()))?;

        let group = match &self.group {
            None => None,
            Some(g) => {
                if g.mult_table.len() != g.order {
                    return Err(field_error(
                        "group.mult_table",
                        format!(
                            "{} rows for a group of order {}",
                            g.mult_table.len(),
                            g.order
                        ),
                    ));
                }
                if g.reps.len() != g.order {
                    return Err(field_error(
                        "group.reps",
                        format!("{} matrices for a group of order {}", g.reps.len(), g.order),
                    ));
                }
                let table = FiniteGroup::from_table(g.mult_table.clone())
                    .map_err(|e| field_error("group.mult_table", e.to_string()))?;
                let reps = g
                    .reps
                    .iter()
                    .enumerate()
                    .map(|(n, m)| matrix(m, dim, &format!("group.reps[{}]", n + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(
                    GroupAction::new(table, reps)
                        .map_err(|e| field_error("group", e.to_string()))?,
                )
            }
        };

        let deformation = match &self.deformation {
            None => None,
            Some(d) => {
                for (name, len) in [("m_jets", d.m_jets.len()), ("a_jets", d.a_jets.len())] {
                    if len != d.order {
                        return Err(field_error(
                            format!("deformation.{name}"),
                            format!("{len} jets for order {}", d.order),
                        ));
                    }
                }
                let m = d
                    .m_jets
                    .iter()
                    .enumerate()
                    .map(|(n, j)| bilinear(j, dim, &format!("deformation.m_jets[{}]", n + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                let a = d
                    .a_jets
                    .iter()
                    .enumerate()
                    .map(|(n, j)| linear(j, dim, &format!("deformation.a_jets[{}]", n + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(Jets { m, a })
            }
        };

        let gauge = match &self.gauge {
            None => None,
            Some(g) => Some(
                g.psi_jets
                    .iter()
                    .enumerate()
                    .map(|(n, m)| matrix(m, dim, &format!("gauge.psi_jets[{}]", n + 1)))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };

        Ok(AlgebraDocument {
            name: self.name.clone(),
            algebra,
            group,
            deformation,
            gauge,
        })
    }
}

/// Sparse 1-based entries of a bilinear map, in coefficient order.
pub fn bracket_entries(g: &GammaCochain) -> Vec<RawBracketEntry> {
    let d = g.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let c = g.get(k, &[i, j]);
                if !c.is_zero() {
                    out.push((
                        i + 1,
                        j + 1,
                        k + 1,
                        RawInt::from_big(c.numer()),
                        RawInt::from_big(c.denom()),
                    ));
                }
            }
        }
    }
    out
}

/// Sparse 1-based entries of a linear map.
pub fn linear_entries(g: &GammaCochain) -> Vec<RawLinearEntry> {
    let d = g.dim();
    let mut out = Vec::new();
    for j in 0..d {
        for k in 0..d {
            let c = g.get(k, &[j]);
            if !c.is_zero() {
                out.push((
                    j + 1,
                    k + 1,
                    RawInt::from_big(c.numer()),
                    RawInt::from_big(c.denom()),
                ));
            }
        }
    }
    out
}

pub fn raw_matrix(m: &Matrix) -> RawMatrix {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| RawScalar::Text(format_rational(x)))
                .collect()
        })
        .collect()
}

pub fn raw_jets(j: &Jets) -> RawDeformation {
    RawDeformation {
        order: j.m.len(),
        m_jets: j.m.iter().map(bracket_entries).collect(),
        a_jets: j.a.iter().map(linear_entries).collect(),
    }
}

impl AlgebraDocument {
    /// The canonical raw form: sparse entries in index order, zeros
    /// dropped, matrix entries as `"num/den"`.
    pub fn to_raw(&self) -> RawDocument {
        let l = &self.algebra;
        RawDocument {
            name: self.name.clone(),
            dim: l.dim(),
            bracket: bracket_entries(&GammaCochain::bracket_of(l)),
            alpha: raw_matrix(l.alpha()),
            group: self.group.as_ref().map(|a| RawGroup {
                order: a.group().order(),
                mult_table: a.group().mult_table().to_vec(),
                reps: a.reps().iter().map(raw_matrix).collect(),
            }),
            deformation: self.deformation.as_ref().map(raw_jets),
            gauge: self.gauge.as_ref().map(|g| RawGauge {
                psi_jets: g.iter().map(raw_matrix).collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(&self.to_raw())
    }
}

pub fn parse(text: &str) -> Result<AlgebraDocument, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text)?;
    raw.check()
}
