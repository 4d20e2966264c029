//! Machine-readable reports. Every coefficient is an exact `"num/den"`
//! string and every basis index is 1-based.

use homleib::cohomology::CohomologyReport;
use homleib::deformation::{ObstructionClass, RigidityReport, RigidityVerdict};
use homleib::linalg::{format_rational, Rational};
use homleib::{AlphaTypeCochain, GammaCochain, ValidationReport};
use num_traits::Zero;
use serde::Serialize;

use crate::document::RawDeformation;

#[derive(Debug, Clone, Serialize)]
pub struct ViolationJson {
    pub law: String,
    pub indices: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationJson {
    pub passed: bool,
    pub violations: Vec<ViolationJson>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Where the basis indices start in a violation of `law`.
fn first_basis_position(law: &str) -> usize {
    match law {
        "homomorphism" => 2,
        "bracket equivariance" | "structure-map equivariance" => 1,
        l if l.starts_with("deformation") => 1,
        _ => 0,
    }
}

impl ValidationJson {
    /// Shifts basis indices to 1-based; orders and group elements stay as
    /// they are.
    pub fn from_report(r: &ValidationReport) -> Self {
        Self {
            passed: r.passed,
            violations: r
                .violations
                .iter()
                .map(|v| {
                    let first_basis = first_basis_position(&v.law);
                    ViolationJson {
                        law: v.law.clone(),
                        indices: v
                            .indices
                            .iter()
                            .enumerate()
                            .map(|(pos, &i)| if pos >= first_basis { i + 1 } else { i })
                            .collect(),
                        lhs: strings(&v.lhs),
                        rhs: strings(&v.rhs),
                    }
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub inputs: Vec<usize>,
    pub output: usize,
    pub value: String,
}

fn entries(g: &GammaCochain) -> Vec<Entry> {
    let d = g.dim();
    let m = g.arity();
    let mut out = Vec::new();
    for flat in 0..d.pow(m as u32) {
        let mut inputs = vec![0; m];
        let mut t = flat;
        for s in (0..m).rev() {
            inputs[s] = t % d;
            t /= d;
        }
        for k in 0..d {
            let c = g.get(k, &inputs);
            if !c.is_zero() {
                out.push(Entry {
                    inputs: inputs.iter().map(|i| i + 1).collect(),
                    output: k + 1,
                    value: format_rational(c),
                });
            }
        }
    }
    out
}

/// A sparse α-type cochain: the bracket-like part and the structure-map part.
#[derive(Debug, Clone, Serialize)]
pub struct CochainJson {
    pub degree: usize,
    pub gamma: Vec<Entry>,
    pub alpha: Vec<Entry>,
}

impl CochainJson {
    pub fn new(c: &AlphaTypeCochain) -> Self {
        Self {
            degree: c.degree(),
            gamma: entries(c.gamma_part()),
            alpha: c.alpha_part().map(entries).unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CohomologyRow {
    pub degree: usize,
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub betti: usize,
}

impl From<&CohomologyReport> for CohomologyRow {
    fn from(r: &CohomologyReport) -> Self {
        Self {
            degree: r.degree,
            cochains: r.ambient_dim,
            cocycles: r.dim_cocycles,
            coboundaries: r.dim_coboundaries,
            betti: r.betti,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionJson {
    pub order: usize,
    pub cochain: CochainJson,
    pub cocycle: bool,
    pub coboundary: bool,
}

impl ObstructionJson {
    pub fn new(o: &ObstructionClass, cocycle: bool, coboundary: bool) -> Self {
        Self {
            order: o.order,
            cochain: CochainJson::new(&o.to_cochain()),
            cocycle,
            coboundary,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityJson {
    pub betti2: usize,
    pub betti3: usize,
    pub verdict: &'static str,
}

impl From<&RigidityReport> for RigidityJson {
    fn from(r: &RigidityReport) -> Self {
        Self {
            betti2: r.betti2,
            betti3: r.betti3,
            verdict: match r.verdict {
                RigidityVerdict::Rigid => "rigid",
                RigidityVerdict::Unobstructed => "unobstructed",
                RigidityVerdict::Inconclusive => "inconclusive",
            },
        }
    }
}

/// The body of a report, one variant per command.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Verify {
        dim: usize,
        passed: bool,
        hom_leibniz: ValidationJson,
        multiplicative: ValidationJson,
        #[serde(skip_serializing_if = "Option::is_none")]
        action: Option<ValidationJson>,
    },
    Cohomology {
        complex: &'static str,
        max_degree: usize,
        rows: Vec<CohomologyRow>,
    },
    DeformVerify {
        equivariant: bool,
        order: usize,
        passed: bool,
        violations: Vec<ViolationJson>,
    },
    DeformInfinitesimal {
        equivariant: bool,
        trivial: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        cochain: Option<CochainJson>,
        #[serde(skip_serializing_if = "Option::is_none")]
        cocycle: Option<bool>,
    },
    DeformObstruct {
        equivariant: bool,
        obstruction: ObstructionJson,
    },
    DeformExtend {
        equivariant: bool,
        target: usize,
        result: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        deformation: Option<RawDeformation>,
        #[serde(skip_serializing_if = "Option::is_none")]
        obstruction: Option<ObstructionJson>,
    },
    DeformGauge {
        equivariant: bool,
        passed: bool,
        deformation: RawDeformation,
    },
    DeformReduce {
        equivariant: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        steps: Option<usize>,
        trivial: bool,
        deformation: RawDeformation,
    },
    DeformRigidity {
        equivariant: bool,
        rigidity: RigidityJson,
    },
    Error {
        exit_code: u8,
        message: String,
    },
}

impl Report {
    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(self)
    }
}
