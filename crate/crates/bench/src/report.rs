//! CSV and JSON reports, one row per trial.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};
use crate::experiment::TrialReport;

pub const COLUMNS: [&str; 9] = [
    "algorithm",
    "epsilon",
    "B",
    "trial",
    "seed",
    "objective",
    "oracle_calls",
    "wall_time_ms",
    "failed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    /// Format implied by a `.json` or `.csv` extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        path.extension()?.to_str()?.parse().ok()
    }
}

impl FromStr for ReportFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(BenchError::Config(format!("unknown report format {s:?}"))),
        }
    }
}

/// A report row. Reals are rounded to 6 significant digits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub algorithm: String,
    pub epsilon: Option<f64>,
    #[serde(rename = "B")]
    pub bound: u64,
    pub trial: u32,
    pub seed: u64,
    pub objective: f64,
    pub oracle_calls: u64,
    pub wall_time_ms: f64,
    pub failed: bool,
}

impl From<&TrialReport> for ReportRow {
    fn from(t: &TrialReport) -> Self {
        let r = &t.report;
        ReportRow {
            algorithm: r.algorithm.name().to_string(),
            epsilon: r.epsilon.map(round6),
            bound: t.bound,
            trial: t.trial,
            seed: r.seed,
            objective: round6(r.objective),
            oracle_calls: r.oracle_calls,
            wall_time_ms: round6(r.wall_time.as_secs_f64() * 1e3),
            failed: r.failed,
        }
    }
}

/// `x` with 6 significant digits, in the shorter of fixed and exponent
/// notation (like C's `%g`).
pub fn format6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn round6(x: f64) -> f64 {
    format6(x).parse().unwrap_or(x)
}

pub fn write_report(reports: &[TrialReport], path: impl AsRef<Path>, format: ReportFormat) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_report_to(reports, &mut out, format)?;
    out.flush()?;
    Ok(())
}

pub fn write_report_to<W: Write>(reports: &[TrialReport], out: W, format: ReportFormat) -> Result<()> {
    let rows: Vec<ReportRow> = reports.iter().map(ReportRow::from).collect();
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(COLUMNS)?;
            for r in &rows {
                w.write_record([
                    r.algorithm.clone(),
                    r.epsilon.map(format6).unwrap_or_default(),
                    r.bound.to_string(),
                    r.trial.to_string(),
                    r.seed.to_string(),
                    format6(r.objective),
                    r.oracle_calls.to_string(),
                    format6(r.wall_time_ms),
                    r.failed.to_string(),
                ])?;
            }
            w.flush()?;
        }
        ReportFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn read_report(path: impl AsRef<Path>, format: ReportFormat) -> Result<Vec<ReportRow>> {
    read_report_from(File::open(path)?, format)
}

pub fn read_report_from<R: Read>(input: R, format: ReportFormat) -> Result<Vec<ReportRow>> {
    match format {
        ReportFormat::Csv => {
            let mut r = csv::Reader::from_reader(input);
            let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
            if header != COLUMNS {
                return Err(BenchError::Config(format!("unexpected CSV header {header:?}")));
            }
            Ok(r.deserialize().collect::<Result<_, _>>()?)
        }
        ReportFormat::Json => Ok(serde_json::from_reader(input)?),
    }
}
