//! The `verify` command: runs identity checks over a size range.

use std::io::Write;

use asmrel::relations::{Checker, Identity};
use asmrel::{IdentityReport, Status};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::DiskCache;
use crate::cli::{ReportFormat, VerifyArgs};
use crate::output::write_report;
use crate::{CliError, Outcome, REPORT_VERSION};

#[derive(Debug, Serialize)]
struct Selection {
    identities: Vec<String>,
    n_min: usize,
    n_max: usize,
    forced: bool,
}

#[derive(Debug, Serialize)]
struct Skipped {
    identity: String,
    reason: String,
}

#[derive(Debug, Serialize)]
struct Summary {
    checks: usize,
    holds: usize,
    fails: usize,
    cases: u64,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    format_version: u32,
    selection: Selection,
    results: Vec<IdentityReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    skipped: Vec<Skipped>,
    summary: Summary,
}

type Plan = (Selection, Vec<(Identity, usize)>, Vec<Skipped>);

/// Which sizes each identity runs at.
fn plan(args: &VerifyArgs, force: bool) -> Result<Plan, CliError> {
    let explicit = !args.all;
    let ids: Vec<Identity> = if args.all {
        Identity::ALL.to_vec()
    } else {
        let mut v = Vec::new();
        for s in &args.identity {
            let id: Identity = s.parse()?;
            if !v.contains(&id) {
                v.push(id);
            }
        }
        v
    };
    let (n_min, n_max) = match (args.n, args.n_max) {
        (Some(n), _) => (n, n),
        (None, Some(m)) => (args.n_min, m),
        (None, None) => unreachable!("clap requires one of --n / --n-max"),
    };
    if n_min > n_max {
        return Err(CliError::Usage(format!(
            "--n-min {n_min} exceeds --n-max {n_max}"
        )));
    }

    let mut jobs = Vec::new();
    let mut skipped = Vec::new();
    for &id in &ids {
        let (lo, practical) = id.n_range();
        let hard = id.hard_n_max();
        let cap = if force { hard } else { practical };
        if explicit && n_max > cap {
            let msg = if n_max > hard {
                format!("{id} is limited to n <= {hard}")
            } else {
                format!("{id} is limited to n <= {practical} (practical bound; --force allows up to {hard})")
            };
            return Err(CliError::Usage(msg));
        }
        if explicit && n_max < lo {
            return Err(CliError::Usage(format!("{id} needs n >= {lo}")));
        }
        let from = n_min.max(lo);
        let to = n_max.min(cap);
        if from > to {
            skipped.push(Skipped {
                identity: id.slug().to_string(),
                reason: if n_max < lo {
                    format!("needs n >= {lo}")
                } else {
                    format!("limited to n <= {cap}")
                },
            });
            continue;
        }
        if to > practical {
            eprintln!("warning: {id} at n = {to} is above the practical bound {practical}");
        }
        jobs.extend((from..=to).map(|n| (id, n)));
    }
    if jobs.is_empty() && !args.all {
        return Err(CliError::Usage(
            "nothing to check in the requested range".into(),
        ));
    }
    if args.all
        && ids.iter().all(|id| {
            n_max
                > if force {
                    id.hard_n_max()
                } else {
                    id.n_range().1
                }
        })
    {
        return Err(CliError::Usage(format!(
            "n = {n_max} is above every identity's bound{}",
            if force { "" } else { " (see --force)" }
        )));
    }
    let selection = Selection {
        identities: ids.iter().map(|i| i.slug().to_string()).collect(),
        n_min,
        n_max,
        forced: force,
    };
    Ok((selection, jobs, skipped))
}

fn status_line(r: &IdentityReport) -> String {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let head = format!("{} {}", r.identity, params.join(" "));
    match &r.status {
        Status::Holds => format!("holds  {head} ({} cases)", r.cases),
        Status::Fails { witness, lhs, rhs } => {
            format!("FAILS  {head} at {witness:?}: {lhs} != {rhs}")
        }
    }
}

fn render_csv(rep: &VerifyReport) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "identity", "params", "range", "cases", "status", "witness", "lhs", "rhs", "notes",
    ])?;
    for r in &rep.results {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let (status, witness, lhs, rhs) = match &r.status {
            Status::Holds => ("holds", String::new(), String::new(), String::new()),
            Status::Fails { witness, lhs, rhs } => (
                "fails",
                witness
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                lhs.clone(),
                rhs.clone(),
            ),
        };
        w.write_record([
            r.identity.as_str(),
            &params.join(";"),
            &r.range,
            &r.cases.to_string(),
            status,
            &witness,
            &lhs,
            &rhs,
            &r.notes.join(" | "),
        ])?;
    }
    w.into_inner().map_err(|e| csv::Error::from(e.into_error()))
}

pub fn run(
    args: &VerifyArgs,
    force: bool,
    cache: &DiskCache,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let (selection, jobs, skipped) = plan(args, force)?;
    let checker = Checker::new(cache);
    let results: Vec<IdentityReport> = pool.install(|| {
        jobs.par_iter()
            .map(|&(id, n)| id.run(checker, n))
            .collect::<asmrel::Result<_>>()
    })?;

    let holds = results.iter().filter(|r| r.holds()).count();
    let report = VerifyReport {
        format_version: REPORT_VERSION,
        selection,
        summary: Summary {
            checks: results.len(),
            holds,
            fails: results.len() - holds,
            cases: results.iter().map(|r| r.cases).sum(),
        },
        results,
        skipped,
    };
    let bytes = match args.format {
        ReportFormat::Json => {
            let mut v = serde_json::to_vec_pretty(&report).expect("reports serialize");
            v.push(b'\n');
            v
        }
        ReportFormat::Csv => render_csv(&report).map_err(|e| CliError::Io(e.to_string()))?,
    };
    let to_stdout = args.report.as_os_str() == "-";
    if !to_stdout {
        for r in &report.results {
            writeln!(out, "{}", status_line(r))?;
            for note in &r.notes {
                writeln!(out, "       note: {note}")?;
            }
        }
        for s in &report.skipped {
            writeln!(out, "skip   {}: {}", s.identity, s.reason)?;
        }
        writeln!(
            out,
            "{} of {} checks hold; report written to {}",
            report.summary.holds,
            report.summary.checks,
            args.report.display()
        )?;
    }
    write_report(&args.report, &bytes, out)?;
    Ok(if report.summary.fails == 0 {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}
