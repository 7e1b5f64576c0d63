//! Rendering of tables and reports.

use std::io::{self, Write};
use std::path::Path;

use asmrel::{BigInt, CountTable};
use serde::Serialize;

use crate::cli::TableFormat;

fn join(index: &[i64]) -> String {
    index
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

/// Text is one `index,value` line per entry (just the value for a scalar);
/// CSV adds a header and the family and size on every row.
pub fn write_table(out: &mut dyn Write, table: &CountTable, format: TableFormat) -> io::Result<()> {
    match format {
        TableFormat::Text => {
            for (k, v) in table.iter() {
                if k.is_empty() {
                    writeln!(out, "{v}")?;
                } else {
                    writeln!(out, "{},{v}", join(k))?;
                }
            }
            Ok(())
        }
        TableFormat::Json => write_json(out, table),
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["family".to_string(), "n".to_string()];
            header.extend(table.index_names.iter().cloned());
            header.push("value".into());
            w.write_record(&header).map_err(csv_error)?;
            for (k, v) in table.iter() {
                let mut row = vec![table.family.clone(), table.n.to_string()];
                row.extend(k.iter().map(i64::to_string));
                row.push(v.to_string());
                w.write_record(&row).map_err(csv_error)?;
            }
            w.flush()
        }
    }
}

#[derive(Serialize)]
struct SingleValue<'a> {
    family: &'a str,
    n: usize,
    index: &'a [i64],
    value: String,
}

pub fn write_entry(
    out: &mut dyn Write,
    table: &CountTable,
    index: &[i64],
    value: &BigInt,
    format: TableFormat,
) -> io::Result<()> {
    match format {
        TableFormat::Text => writeln!(out, "{value}"),
        TableFormat::Json => write_json(
            out,
            &SingleValue {
                family: &table.family,
                n: table.n,
                index,
                value: value.to_string(),
            },
        ),
        TableFormat::Csv => {
            let mut t = CountTable::new(table.family.clone(), table.n, &[]);
            t.index_names = table.index_names.clone();
            t.set(index.to_vec(), value.clone());
            write_table(out, &t, TableFormat::Csv)
        }
    }
}

pub fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// or to `stdout` when the path is `-`.
pub fn write_report(path: &Path, bytes: &[u8], stdout: &mut dyn Write) -> io::Result<()> {
    if path.as_os_str() == "-" {
        return stdout.write_all(bytes);
    }
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
