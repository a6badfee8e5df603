//! Built-in consistency checks run by `carpet selftest`.

use std::fmt::Write;

use carpet_core::graph::{build_cells, build_recursive, vertex_count_closed_form};
use carpet_core::iso::orbit_agreement;
use carpet_core::Result;

struct Check {
    name: String,
    outcome: Result<(bool, String)>,
}

fn constructions(n: u32) -> Result<(bool, String)> {
    let (a, b) = (build_cells(n)?, build_recursive(n)?);
    Ok((
        a == b,
        format!("{} vertices, {} edges", a.vertex_count(), a.edge_count()),
    ))
}

fn counts(n: u32) -> Result<(bool, String)> {
    let g = build_cells(n)?;
    let closed = vertex_count_closed_form(n)?;
    let mut ok = g.vertex_count() as u128 == closed;
    let mut detail = format!("vertices {} closed form {}", g.vertex_count(), closed);
    if n >= 2 {
        let boundary = g.boundary()?.len() as u64;
        let expected = 4 * 3u64.pow(n - 1);
        ok &= boundary == expected;
        write!(detail, ", boundary {boundary} expected {expected}").unwrap();
    }
    Ok((ok, detail))
}

fn agreement(level: u32) -> Result<(bool, String)> {
    let report = orbit_agreement(level)?;
    let mut detail = format!(
        "{} of {} ordered pairs agree",
        report.agreeing, report.pairs
    );
    if let Some(m) = report.mismatches.first() {
        write!(
            detail,
            "; first mismatch {} {} vs {} {} automorphic={}",
            m.u, m.dseq_u, m.v, m.dseq_v, m.automorphic
        )
        .unwrap();
    }
    if !report.ambiguous.is_empty() {
        write!(detail, "; {} ambiguous vertices", report.ambiguous.len()).unwrap();
    }
    Ok((report.passed(), detail))
}

/// Runs every check, returning the report and whether all passed.
pub fn run() -> (String, bool) {
    let mut checks = Vec::new();
    for n in 1..=5 {
        checks.push(Check {
            name: format!("constructions agree n={n}"),
            outcome: constructions(n),
        });
    }
    for n in 1..=7 {
        checks.push(Check {
            name: format!("counts n={n}"),
            outcome: counts(n),
        });
    }
    for level in [2, 3] {
        checks.push(Check {
            name: format!("distance sequences vs automorphisms level={level}"),
            outcome: agreement(level),
        });
    }

    let mut out = String::new();
    let mut all = true;
    for c in &checks {
        let (ok, detail) = match &c.outcome {
            Ok((ok, detail)) => (*ok, detail.clone()),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        writeln!(
            out,
            "{} {}: {}",
            if ok { "PASS" } else { "FAIL" },
            c.name,
            detail
        )
        .unwrap();
    }
    let failed = checks
        .iter()
        .filter(|c| !matches!(c.outcome, Ok((true, _))))
        .count();
    writeln!(out, "{} checks, {} failed", checks.len(), failed).unwrap();
    (out, all)
}
