//! CSV and JSON renderings of sweep rows.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use crate::names::{self, form_name, inner_mode_name};
use crate::sweep::SweepRow;
use crate::CliError;

pub const CSV_HEADER: &str = "pipeline,u_max,order,form,inner_mode,value,reference,ratio,abs_error,evaluations,elapsed_ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Invalid(format!("unknown format '{s}' (expected csv or json)"))),
        }
    }
}

/// Where a report is written; `-` means standard output.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Destination {
    #[default]
    Stdout,
    File(PathBuf),
}

impl Destination {
    pub fn parse(s: &str) -> Self {
        if s == "-" {
            Destination::Stdout
        } else {
            Destination::File(PathBuf::from(s))
        }
    }
}

/// Reals with 17 significant digits.
fn real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.pipeline.name(),
            real(r.u_max),
            r.order,
            r.form.map(form_name).unwrap_or(""),
            r.inner_mode.map(inner_mode_name).unwrap_or(""),
            real(r.value),
            real(r.reference),
            real(r.ratio),
            real(r.abs_error),
            r.evaluations,
            real(r.elapsed_ms),
        );
    }
    out
}

/// Inverse of [`render_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        _ => return Err(CliError::Invalid("CSV header does not match the report schema".into())),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let bad = |what: &str| CliError::Invalid(format!("CSV row {}: bad {what}", i + 1));
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 11 {
                return Err(bad("field count"));
            }
            let num = |s: &str, what: &str| s.parse::<f64>().map_err(|_| bad(what));
            Ok(SweepRow {
                pipeline: names::parse_pipeline(f[0])?,
                u_max: num(f[1], "u_max")?,
                order: f[2].parse().map_err(|_| bad("order"))?,
                form: (!f[3].is_empty()).then(|| names::parse_form(f[3])).transpose()?,
                inner_mode: (!f[4].is_empty()).then(|| names::parse_inner_mode(f[4])).transpose()?,
                value: num(f[5], "value")?,
                reference: num(f[6], "reference")?,
                ratio: num(f[7], "ratio")?,
                abs_error: num(f[8], "abs_error")?,
                evaluations: f[9].parse().map_err(|_| bad("evaluations"))?,
                elapsed_ms: num(f[10], "elapsed_ms")?,
            })
        })
        .collect()
}

pub fn write_report<W: Write>(rows: &[SweepRow], format: Format, mut w: W) -> Result<(), CliError> {
    if rows.is_empty() {
        return Err(CliError::Invalid("report has no rows".into()));
    }
    match format {
        Format::Csv => w.write_all(render_csv(rows).as_bytes())?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, rows)?;
            w.write_all(b"\n")?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn emit_report(rows: &[SweepRow], format: Format, destination: &Destination) -> Result<(), CliError> {
    match destination {
        Destination::Stdout => write_report(rows, format, io::stdout().lock()),
        Destination::File(path) => {
            let file = File::create(path)?;
            write_report(rows, format, BufWriter::new(file))
        }
    }
}
