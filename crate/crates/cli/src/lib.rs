//! Command implementations behind the `homleib` binary.
//!
//! Each command takes a parsed [`AlgebraDocument`] and returns an
//! [`Outcome`]: a report plus the exit code. Exit code 0 means the
//! computation finished (an obstructed extension included), 1 means an
//! axiom or equation failed, 2 means bad usage or input.

// An `Outcome` is the early-exit value of every command, built once per run.
#![allow(clippy::result_large_err)]

pub mod document;
pub mod json;
pub mod render;
pub mod report;

use std::path::Path;

use homleib::cohomology::AlphaComplex;
use homleib::deformation::{
    apply_gauge, extend_to, gauge_from, infinitesimal, obstruction, reduce_with_steps,
    rigidity_report, verify, Extension, ObstructionClass, TruncatedDeformation,
};
use homleib::equivariant::{
    check_equivariant_jets, equivariant_extend_to, equivariant_obstruction, equivariant_reduce,
    equivariant_rigidity_report, verify_action, EquivariantComplex, GroupAction,
};
use homleib::linalg::Matrix;
use homleib::{AlphaTypeCochain, Error, GammaCochain, HomLeibnizAlgebra};

pub use document::{parse, AlgebraDocument, DocumentError};
pub use report::Report;

use document::{raw_jets, Jets};
use report::{CochainJson, CohomologyRow, ObstructionJson, RigidityJson, ValidationJson};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub exit: u8,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self {
            report,
            exit: EXIT_OK,
        }
    }

    fn fail(exit: u8, message: impl Into<String>) -> Self {
        Self {
            report: Report::Error {
                exit_code: exit,
                message: message.into(),
            },
            exit,
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::fail(EXIT_USAGE, e.to_string())
    }
}

/// The deformation subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeformOp {
    Verify,
    Infinitesimal,
    Obstruct,
    Extend { to: Option<usize> },
    Gauge,
    Reduce,
    Rigidity,
}

/// Reads and checks a document; failures map to exit code 2.
pub fn load(path: &Path) -> Result<AlgebraDocument, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Outcome::fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn first_failure(law_reports: &[&ValidationJson]) -> Option<String> {
    law_reports.iter().find_map(|r| {
        r.violations
            .first()
            .map(|v| format!("{} fails at {:?}", v.law, v.indices))
    })
}

fn require_axioms(l: &HomLeibnizAlgebra) -> Result<(), Outcome> {
    let hl = ValidationJson::from_report(&l.verify_hom_leibniz());
    let mult = ValidationJson::from_report(&l.verify_multiplicative());
    match first_failure(&[&hl, &mult]) {
        Some(msg) => Err(Outcome::fail(
            EXIT_VIOLATION,
            format!("base algebra: {msg}"),
        )),
        None => Ok(()),
    }
}

fn require_action(l: &HomLeibnizAlgebra, a: &GroupAction) -> Result<(), Outcome> {
    let report = ValidationJson::from_report(&verify_action(l, a));
    match first_failure(&[&report]) {
        Some(msg) => Err(Outcome::fail(
            EXIT_VIOLATION,
            format!("group action: {msg}"),
        )),
        None => Ok(()),
    }
}

pub fn cmd_verify(doc: &AlgebraDocument) -> Outcome {
    let l = &doc.algebra;
    let hom_leibniz = ValidationJson::from_report(&l.verify_hom_leibniz());
    let multiplicative = ValidationJson::from_report(&l.verify_multiplicative());
    let action = doc
        .group
        .as_ref()
        .map(|a| ValidationJson::from_report(&verify_action(l, a)));
    let passed =
        hom_leibniz.passed && multiplicative.passed && action.as_ref().is_none_or(|a| a.passed);
    Outcome {
        report: Report::Verify {
            dim: l.dim(),
            passed,
            hom_leibniz,
            multiplicative,
            action,
        },
        exit: if passed { EXIT_OK } else { EXIT_VIOLATION },
    }
}

pub fn cmd_cohomology(
    doc: &AlgebraDocument,
    max_degree: usize,
    equivariant: bool,
    cheng_cai: bool,
) -> Outcome {
    run(|| {
        if max_degree == 0 {
            return Err(Outcome::fail(EXIT_USAGE, "--max-degree must be at least 1"));
        }
        if equivariant && cheng_cai {
            return Err(Outcome::fail(
                EXIT_USAGE,
                "--equivariant and --cheng-cai are exclusive",
            ));
        }
        let l = &doc.algebra;
        require_axioms(l)?;
        let (complex, rows) = if equivariant {
            let a = doc
                .group
                .as_ref()
                .ok_or_else(|| Outcome::fail(EXIT_USAGE, "--equivariant needs a group block"))?;
            require_action(l, a)?;
            let eq = EquivariantComplex::with_max_degree(l, a, max_degree)?;
            let rows = (1..=max_degree)
                .map(|n| eq.cohomology(n).map(|r| CohomologyRow::from(&r)))
                .collect::<Result<Vec<_>, _>>()?;
            ("equivariant alpha-type", rows)
        } else {
            let c = AlphaComplex::with_max_degree(l, max_degree)?;
            let rows = (1..=max_degree)
                .map(|n| {
                    if cheng_cai {
                        c.cheng_cai_cohomology(n)
                    } else {
                        c.cohomology(n)
                    }
                    .map(|r| CohomologyRow::from(&r))
                })
                .collect::<Result<Vec<_>, _>>()?;
            (if cheng_cai { "cheng-cai" } else { "alpha-type" }, rows)
        };
        Ok(Outcome::ok(Report::Cohomology {
            complex,
            max_degree,
            rows,
        }))
    })
}

fn run(f: impl FnOnce() -> Result<Outcome, Outcome>) -> Outcome {
    f().unwrap_or_else(|e| e)
}

fn deformation_of(doc: &AlgebraDocument) -> Result<TruncatedDeformation, Outcome> {
    let jets = doc
        .deformation
        .as_ref()
        .ok_or_else(|| Outcome::fail(EXIT_USAGE, "this subcommand needs a deformation block"))?;
    let l = &doc.algebra;
    let mut m = vec![GammaCochain::bracket_of(l)];
    let mut a = vec![GammaCochain::alpha_of(l)];
    m.extend(jets.m.iter().cloned());
    a.extend(jets.a.iter().cloned());
    Ok(TruncatedDeformation::new(l, m, a)?)
}

fn jets_of(d: &TruncatedDeformation) -> Jets {
    Jets {
        m: d.m_jets()[1..].to_vec(),
        a: d.a_jets()[1..].to_vec(),
    }
}

fn require_equivariant(d: &TruncatedDeformation, a: &GroupAction) -> Result<(), Outcome> {
    match check_equivariant_jets(d, a) {
        Ok(()) => Ok(()),
        Err(Error::NotEquivariant { kind, index }) => Err(Outcome::fail(
            EXIT_VIOLATION,
            format!("{kind} jet {index} is not equivariant"),
        )),
        Err(e) => Err(e.into()),
    }
}

fn require_verified(d: &TruncatedDeformation) -> Result<(), Outcome> {
    let report = ValidationJson::from_report(&verify(d));
    match first_failure(&[&report]) {
        Some(msg) => Err(Outcome::fail(EXIT_VIOLATION, format!("deformation: {msg}"))),
        None => Ok(()),
    }
}

/// `Obsⁿ` together with whether it is a cocycle and a coboundary, the
/// latter inside the invariant cochains when a group is present.
fn describe_obstruction(
    l: &HomLeibnizAlgebra,
    group: Option<&GroupAction>,
    o: &ObstructionClass,
) -> Result<ObstructionJson, Outcome> {
    let c: AlphaTypeCochain = o.to_cochain();
    let (cocycle, coboundary) = match group {
        Some(a) => {
            let eq = EquivariantComplex::with_max_degree(l, a, 3)?;
            (
                eq.complex().is_cocycle(&c)?,
                eq.is_coboundary(&c)?.is_some(),
            )
        }
        None => {
            let complex = AlphaComplex::with_max_degree(l, 3)?;
            (
                complex.is_cocycle(&c)?,
                complex.is_coboundary(&c)?.is_some(),
            )
        }
    };
    Ok(ObstructionJson::new(o, cocycle, coboundary))
}

pub fn cmd_deform(doc: &AlgebraDocument, op: DeformOp) -> Outcome {
    run(|| {
        let l = &doc.algebra;
        require_axioms(l)?;
        let group = doc.group.as_ref();
        let equivariant = group.is_some();
        if let Some(a) = group {
            require_action(l, a)?;
        }
        if op == DeformOp::Rigidity {
            let r = match group {
                Some(a) => equivariant_rigidity_report(l, a)?,
                None => rigidity_report(l)?,
            };
            return Ok(Outcome::ok(Report::DeformRigidity {
                equivariant,
                rigidity: RigidityJson::from(&r),
            }));
        }
        let d = deformation_of(doc)?;
        if let Some(a) = group {
            require_equivariant(&d, a)?;
        }
        if op == DeformOp::Verify {
            let report = ValidationJson::from_report(&verify(&d));
            let exit = if report.passed {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            return Ok(Outcome {
                report: Report::DeformVerify {
                    equivariant,
                    order: d.order(),
                    passed: report.passed,
                    violations: report.violations,
                },
                exit,
            });
        }
        require_verified(&d)?;
        let report = match op {
            DeformOp::Verify | DeformOp::Rigidity => unreachable!("handled above"),
            DeformOp::Infinitesimal => match infinitesimal(&d) {
                Err(Error::TrivialJet) => Report::DeformInfinitesimal {
                    equivariant,
                    trivial: true,
                    order: None,
                    cochain: None,
                    cocycle: None,
                },
                Err(e) => return Err(e.into()),
                Ok((n, c)) => {
                    let complex = AlphaComplex::with_max_degree(l, 2)?;
                    Report::DeformInfinitesimal {
                        equivariant,
                        trivial: false,
                        order: Some(n),
                        cocycle: Some(complex.is_cocycle(&c)?),
                        cochain: Some(CochainJson::new(&c)),
                    }
                }
            },
            DeformOp::Obstruct => {
                let o = match group {
                    Some(a) => equivariant_obstruction(&d, a, d.order())?,
                    None => obstruction(&d, d.order())?,
                };
                Report::DeformObstruct {
                    equivariant,
                    obstruction: describe_obstruction(l, group, &o)?,
                }
            }
            DeformOp::Extend { to } => {
                let target = to.unwrap_or(d.order() + 1);
                let start = if target < d.order() {
                    d.truncate(target)
                } else {
                    d.clone()
                };
                let ext = match group {
                    Some(a) => equivariant_extend_to(&start, a, target)?,
                    None => extend_to(&start, target)?,
                };
                match ext {
                    Extension::Extended(e) => Report::DeformExtend {
                        equivariant,
                        target,
                        result: "extended",
                        deformation: Some(raw_jets(&jets_of(&e))),
                        obstruction: None,
                    },
                    Extension::Obstructed(o) => Report::DeformExtend {
                        equivariant,
                        target,
                        result: "obstructed",
                        deformation: None,
                        obstruction: Some(describe_obstruction(l, group, &o)?),
                    },
                }
            }
            DeformOp::Gauge => {
                let psi = doc
                    .gauge
                    .as_ref()
                    .ok_or_else(|| Outcome::fail(EXIT_USAGE, "gauge needs a gauge block"))?;
                let mut jets = vec![Matrix::identity(l.dim())];
                jets.extend(psi.iter().cloned());
                let g = gauge_from(jets)?;
                let moved = apply_gauge(&d, &g)?;
                Report::DeformGauge {
                    equivariant,
                    passed: verify(&moved).passed,
                    deformation: raw_jets(&jets_of(&moved)),
                }
            }
            DeformOp::Reduce => {
                let (reduced, steps) = match group {
                    Some(a) => (equivariant_reduce(&d, a)?, None),
                    None => {
                        let (r, s) = reduce_with_steps(&d)?;
                        (r, Some(s))
                    }
                };
                Report::DeformReduce {
                    equivariant,
                    steps,
                    trivial: reduced.is_trivial(),
                    deformation: raw_jets(&jets_of(&reduced)),
                }
            }
        };
        Ok(Outcome::ok(report))
    })
}
