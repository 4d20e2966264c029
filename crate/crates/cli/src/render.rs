//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::document::{RawDeformation, RawInt};
use crate::report::{CochainJson, Entry, ObstructionJson, Report, ValidationJson, ViolationJson};

/// `"3/1"` as `3`, other fractions unchanged.
fn short(q: &str) -> &str {
    q.strip_suffix("/1").unwrap_or(q)
}

fn vector(v: &[String]) -> String {
    let parts: Vec<&str> = v.iter().map(|s| short(s)).collect();
    format!("({})", parts.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn violation_line(out: &mut String, v: &ViolationJson) {
    let _ = writeln!(
        out,
        "  {} at {:?}: lhs {} rhs {}",
        v.law,
        v.indices,
        vector(&v.lhs),
        vector(&v.rhs)
    );
}

fn validation(out: &mut String, title: &str, r: &ValidationJson) {
    let _ = writeln!(
        out,
        "{title}: {}",
        if r.passed { "passed" } else { "FAILED" }
    );
    for v in &r.violations {
        violation_line(out, v);
    }
}

fn entry_line(out: &mut String, symbol: &str, e: &Entry) {
    let args: Vec<String> = e.inputs.iter().map(|i| format!("e{i}")).collect();
    let _ = writeln!(
        out,
        "  {symbol}({}) ∋ {} e{}",
        args.join(", "),
        short(&e.value),
        e.output
    );
}

fn cochain(out: &mut String, gamma: &str, alpha: &str, c: &CochainJson) {
    if c.gamma.is_empty() && c.alpha.is_empty() {
        let _ = writeln!(out, "  zero");
    }
    for e in &c.gamma {
        entry_line(out, gamma, e);
    }
    for e in &c.alpha {
        entry_line(out, alpha, e);
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[usize::from(b - b'0')])
        .collect()
}

fn obstruction(out: &mut String, o: &ObstructionJson) {
    let n = superscript(o.order);
    let _ = writeln!(
        out,
        "Obs{n}: cocycle {}, coboundary {}",
        yes_no(o.cocycle),
        yes_no(o.coboundary)
    );
    cochain(out, &format!("Obs{n}_γ"), &format!("Obs{n}_α"), &o.cochain);
}

fn jets(out: &mut String, d: &RawDeformation) {
    let _ = writeln!(out, "order {}", d.order);
    for (n, (m, a)) in d.m_jets.iter().zip(&d.a_jets).enumerate() {
        let n = n + 1;
        if m.is_empty() && a.is_empty() {
            let _ = writeln!(out, "  m_{n} = 0, α_{n} = 0");
            continue;
        }
        for (i, j, k, num, den) in m {
            let _ = writeln!(out, "  m_{n}(e{i}, e{j}) ∋ {} e{k}", fraction(num, den));
        }
        for (j, k, num, den) in a {
            let _ = writeln!(out, "  α_{n}(e{j}) ∋ {} e{k}", fraction(num, den));
        }
    }
}

fn fraction(num: &RawInt, den: &RawInt) -> String {
    let text = |x: &RawInt| match x {
        RawInt::Small(v) => v.to_string(),
        RawInt::Big(s) => s.clone(),
    };
    let d = text(den);
    if d == "1" {
        text(num)
    } else {
        format!("{}/{d}", text(num))
    }
}

fn mode(equivariant: bool) -> &'static str {
    if equivariant {
        " (equivariant)"
    } else {
        ""
    }
}

/// Human-readable rendering; `title` names the input.
pub fn render_text(report: &Report, title: &str) -> String {
    let mut out = String::new();
    match report {
        Report::Verify {
            dim,
            passed,
            hom_leibniz,
            multiplicative,
            action,
        } => {
            let _ = writeln!(out, "{title}: dimension {dim}");
            validation(&mut out, "Hom-Leibniz identity", hom_leibniz);
            validation(&mut out, "multiplicativity", multiplicative);
            if let Some(a) = action {
                validation(&mut out, "group action", a);
            }
            let _ = writeln!(
                out,
                "{}",
                if *passed {
                    "all checks passed"
                } else {
                    "checks FAILED"
                }
            );
        }
        Report::Cohomology { complex, rows, .. } => {
            let symbol = match *complex {
                "cheng-cai" => "HLⁿ_α",
                "equivariant alpha-type" => "H̃Lⁿ_G",
                _ => "H̃Lⁿ",
            };
            let _ = writeln!(out, "{title}: {complex} cohomology {symbol}");
            let _ = writeln!(
                out,
                "degree | dim cochains | dim cocycles | dim coboundaries | betti"
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:>6} | {:>12} | {:>12} | {:>16} | {:>5}",
                    r.degree, r.cochains, r.cocycles, r.coboundaries, r.betti
                );
            }
        }
        Report::DeformVerify {
            equivariant,
            order,
            passed,
            violations,
        } => {
            let _ = writeln!(
                out,
                "{title}: order-{order} deformation{}: {}",
                mode(*equivariant),
                if *passed { "passed" } else { "FAILED" }
            );
            for v in violations {
                violation_line(&mut out, v);
            }
        }
        Report::DeformInfinitesimal {
            equivariant,
            trivial,
            order,
            cochain: c,
            cocycle,
        } => {
            if *trivial {
                let _ = writeln!(
                    out,
                    "{title}: trivial deformation, no infinitesimal{}",
                    mode(*equivariant)
                );
            } else {
                let n = order.expect("nontrivial");
                let _ = writeln!(
                    out,
                    "{title}: infinitesimal at order {n}{}, 2-cocycle {}",
                    mode(*equivariant),
                    yes_no(cocycle.expect("nontrivial"))
                );
                cochain(
                    &mut out,
                    &format!("m_{n}"),
                    &format!("α_{n}"),
                    c.as_ref().expect("nontrivial"),
                );
            }
        }
        Report::DeformObstruct {
            equivariant,
            obstruction: o,
        } => {
            let _ = writeln!(out, "{title}: obstruction{}", mode(*equivariant));
            obstruction(&mut out, o);
        }
        Report::DeformExtend {
            equivariant,
            target,
            result,
            deformation,
            obstruction: o,
        } => {
            let _ = writeln!(
                out,
                "{title}: extend to order {target}{}: {result}",
                mode(*equivariant)
            );
            if let Some(d) = deformation {
                jets(&mut out, d);
            }
            if let Some(o) = o {
                obstruction(&mut out, o);
            }
        }
        Report::DeformGauge {
            equivariant,
            passed,
            deformation,
        } => {
            let _ = writeln!(
                out,
                "{title}: gauge-transformed deformation{}, verified {}",
                mode(*equivariant),
                yes_no(*passed)
            );
            jets(&mut out, deformation);
        }
        Report::DeformReduce {
            equivariant,
            steps,
            trivial,
            deformation,
        } => {
            let _ = write!(out, "{title}: reduced{}", mode(*equivariant));
            if let Some(s) = steps {
                let _ = write!(out, " in {s} step(s)");
            }
            let _ = writeln!(out, ", trivial {}", yes_no(*trivial));
            jets(&mut out, deformation);
        }
        Report::DeformRigidity {
            equivariant,
            rigidity,
        } => {
            let _ = writeln!(
                out,
                "{title}{}: dim H̃L² = {}, dim H̃L³ = {}, verdict {}",
                mode(*equivariant),
                rigidity.betti2,
                rigidity.betti3,
                rigidity.verdict
            );
        }
        Report::Error { message, .. } => {
            let _ = writeln!(out, "error: {message}");
        }
    }
    out
}
