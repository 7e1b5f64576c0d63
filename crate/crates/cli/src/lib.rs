//! Command-line front end for `asmrel`.
//!
//! `count` prints tables, `verify` runs identity checks and writes a report,
//! `conjecture` reports on the uniqueness system, and `cache` manages the
//! on-disk table cache. Exit codes: 0 when everything holds, 1 when a check
//! fails, 2 on usage errors.

pub mod cache;
pub mod cli;
pub mod output;
mod verify;

use std::io::{self, Write};

use asmrel::coeffs::{COEFF_HARD_MAX_CD, COEFF_MAX_CD};
use asmrel::enumerate::{ENUMERATION_HARD_MAX, ENUMERATION_MAX};
use asmrel::relations::{BoundaryMode, Checker, ConjectureReport, EquationFamily, TableSource};
use asmrel::shiftops::{SYMBOLIC_HARD_MAX, SYMBOLIC_MAX};
use asmrel::{CountTable, Family};
use rayon::prelude::*;
use serde::Serialize;

use cache::{DiskCache, EntryState};
use cli::{CacheAction, Cli, Command, ConjectureArgs, CountArgs, GlobalOpts, ModeArg};

/// Version tag written into every report.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Failure => 1,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    /// An exact computation produced an impossible value.
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<asmrel::Error> for CliError {
    fn from(e: asmrel::Error) -> Self {
        match e {
            asmrel::Error::Usage(m) => CliError::Usage(m),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Runs a parsed command line, writing regular output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let cache = open_cache(&cli.global);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", cli.global.jobs)))?;
    let outcome = match &cli.command {
        Command::Count(a) => count(a, cli.global.force, &cache, out),
        Command::Verify(a) => verify::run(a, cli.global.force, &cache, &pool, out),
        Command::Conjecture(a) => conjecture(a, cli.global.force, &cache, &pool, out),
        Command::Cache { action } => cache_cmd(*action, &cache, out),
    };
    let st = cache.stats();
    if cache.dir().is_some() && st.hits + st.misses > 0 {
        eprintln!(
            "cache: {} hits, {} misses, {} rejected",
            st.hits, st.misses, st.corrupt
        );
    }
    outcome
}

fn open_cache(g: &GlobalOpts) -> DiskCache {
    if g.no_cache {
        DiskCache::disabled()
    } else {
        DiskCache::new(g.cache_dir.clone().or_else(cache::default_dir))
    }
}

/// Refuses `value > practical` unless forced; warns when forced past it.
/// The hard limit is left to the library.
fn check_bound(
    what: &str,
    value: usize,
    practical: usize,
    hard: usize,
    force: bool,
) -> Result<(), CliError> {
    if value <= practical {
        return Ok(());
    }
    if !force {
        return Err(CliError::Usage(format!(
            "{what} = {value} exceeds the practical bound {practical}; --force allows up to {hard}"
        )));
    }
    eprintln!("warning: {what} = {value} is above the practical bound {practical}");
    Ok(())
}

const COEFFICIENT_FAMILY: &str = "coefficients";

fn count(
    a: &CountArgs,
    force: bool,
    cache: &DiskCache,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let table: CountTable = if a.family == COEFFICIENT_FAMILY || a.family == "B" {
        let (Some(c), Some(d)) = (a.c, a.d) else {
            return Err(CliError::Usage("coefficients need --c and --d".into()));
        };
        check_bound("n", a.n, SYMBOLIC_MAX, SYMBOLIC_HARD_MAX, force)?;
        check_bound("c + d", c + d, COEFF_MAX_CD, COEFF_HARD_MAX_CD, force)?;
        cache.coefficients(a.n, c, d)?.to_count_table()
    } else {
        let family: Family = a.family.parse().map_err(|e: asmrel::Error| {
            CliError::Usage(format!(
                "{}; or '{COEFFICIENT_FAMILY}' with --c/--d",
                strip_usage(&e)
            ))
        })?;
        if a.c.is_some() || a.d.is_some() {
            return Err(CliError::Usage(format!(
                "--c/--d apply only to '{COEFFICIENT_FAMILY}'"
            )));
        }
        check_bound("n", a.n, ENUMERATION_MAX, ENUMERATION_HARD_MAX, force)?;
        (*cache.refined(a.n, family)?).clone()
    };
    match &a.index {
        None => output::write_table(out, &table, a.format)?,
        Some(idx) => {
            if idx.len() != table.arity() {
                return Err(CliError::Usage(format!(
                    "{} takes {} indices ({}), got {}",
                    table.family,
                    table.arity(),
                    table.index_names.join(", "),
                    idx.len()
                )));
            }
            output::write_entry(out, &table, idx, &table.get(idx), a.format)?;
        }
    }
    Ok(Outcome::Success)
}

fn strip_usage(e: &asmrel::Error) -> String {
    match e {
        asmrel::Error::Usage(m) => m.clone(),
        other => other.to_string(),
    }
}

#[derive(Serialize)]
struct ConjectureFile {
    format_version: u32,
    n: usize,
    d: usize,
    modes: Vec<ConjectureReport>,
}

fn conjecture(
    a: &ConjectureArgs,
    force: bool,
    cache: &DiskCache,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    check_bound("n", a.n, SYMBOLIC_MAX, SYMBOLIC_HARD_MAX, force)?;
    check_bound("d", a.d, COEFF_MAX_CD, COEFF_HARD_MAX_CD, force)?;
    let modes: &[BoundaryMode] = match a.mode {
        ModeArg::Zero => &[BoundaryMode::Zero],
        ModeArg::Restrict => &[BoundaryMode::Restrict],
        ModeArg::Both => &[BoundaryMode::Zero, BoundaryMode::Restrict],
    };
    let checker = Checker::new(cache);
    let reports = pool.install(|| {
        modes
            .par_iter()
            .map(|&m| checker.conjecture_uniqueness(a.n, a.d, m))
            .collect::<asmrel::Result<Vec<_>>>()
    })?;
    let to_stdout = a.report.as_os_str() == "-";
    if !to_stdout {
        let unknowns = reports.first().map_or(0, |r| r.unknowns);
        writeln!(out, "n = {}, d = {}: {unknowns} unknowns", a.n, a.d)?;
        for r in &reports {
            writeln!(
                out,
                "mode {}: rank {}, solution-space dimension {}, known values satisfy every row: {}",
                r.mode,
                r.rank,
                r.solution_space_dimension,
                if r.known_values_satisfy { "yes" } else { "no" }
            )?;
            let rows: Vec<String> = EquationFamily::ALL
                .iter()
                .map(|f| {
                    format!(
                        "{f} {}",
                        r.rows_by_family.get(f.slug()).copied().unwrap_or(0)
                    )
                })
                .collect();
            writeln!(out, "  rows: {}", rows.join(", "))?;
            if let Some(v) = &r.violation {
                writeln!(
                    out,
                    "  violated: {} row at {:?}: {} != {}",
                    v.family, v.origin, v.lhs, v.rhs
                )?;
            }
        }
        writeln!(out, "report written to {}", a.report.display())?;
    }
    let file = ConjectureFile {
        format_version: REPORT_VERSION,
        n: a.n,
        d: a.d,
        modes: reports,
    };
    let mut bytes = serde_json::to_vec_pretty(&file).expect("reports serialize");
    bytes.push(b'\n');
    output::write_report(&a.report, &bytes, out)?;
    Ok(if file.modes.iter().all(|r| r.known_values_satisfy) {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn cache_cmd(
    action: CacheAction,
    cache: &DiskCache,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let Some(dir) = cache.dir() else {
        return Err(CliError::Usage(
            "no cache directory (caching disabled or no default location)".into(),
        ));
    };
    match action {
        CacheAction::Path => writeln!(out, "{}", dir.display())?,
        CacheAction::List => {
            for (key, state) in cache.list()? {
                let s = match state {
                    EntryState::Valid => "ok",
                    EntryState::Corrupt => "corrupt",
                    EntryState::Missing => "missing",
                };
                writeln!(out, "{key}\t{s}")?;
            }
        }
        CacheAction::Clear => {
            let k = cache.clear()?;
            writeln!(out, "removed {k} entries from {}", dir.display())?;
        }
    }
    Ok(Outcome::Success)
}
