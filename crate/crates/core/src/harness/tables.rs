use serde::{Deserialize, Serialize};

use super::config::Method;
use super::run::{CellSummary, ExperimentReport, LongPathReport};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

/// Which slice of the report a table shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Sizes,
    Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeRow {
    pub network: String,
    pub method: Method,
    pub alpha: Option<f64>,
    pub runs: usize,
    pub failures: usize,
    pub mean_size: f64,
    pub std_size: f64,
    pub validity_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub network: String,
    pub method: Method,
    pub alpha: Option<f64>,
    pub runs: usize,
    pub mean_seconds: f64,
    pub std_seconds: f64,
}

impl From<&CellSummary> for SizeRow {
    fn from(c: &CellSummary) -> Self {
        SizeRow {
            network: c.network.clone(),
            method: c.method,
            alpha: c.alpha,
            runs: c.runs,
            failures: c.failures,
            mean_size: c.mean_size,
            std_size: c.std_size,
            validity_rate: c.validity_rate,
        }
    }
}

impl From<&CellSummary> for TimingRow {
    fn from(c: &CellSummary) -> Self {
        TimingRow {
            network: c.network.clone(),
            method: c.method,
            alpha: c.alpha,
            runs: c.runs,
            mean_seconds: c.mean_seconds,
            std_seconds: c.std_seconds,
        }
    }
}

/// Two decimals with trailing zeros dropped down to one: 82 → "82.0",
/// 84.974 → "84.97".
pub fn format_stat(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let mut s = format!("{x:.2}");
    if s.ends_with('0') {
        s.pop();
    }
    s
}

pub fn format_cell(mean: f64, std: f64) -> String {
    format!("{} ± {}", format_stat(mean), format_stat(std))
}

fn column_label(method: Method, alpha: Option<f64>) -> String {
    match alpha {
        Some(a) => format!("{method} α={a}"),
        None => method.to_string(),
    }
}

fn to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

const SIZE_HEADER: [&str; 8] =
    ["network", "method", "alpha", "runs", "failures", "mean_size", "std_size", "validity_rate"];
const TIMING_HEADER: [&str; 6] = ["network", "method", "alpha", "runs", "mean_seconds", "std_seconds"];

/// Pivot: one row per network, one column per method (and alpha).
fn pivot(cells: &[CellSummary], cell: impl Fn(&CellSummary) -> String) -> String {
    let mut networks: Vec<&str> = Vec::new();
    let mut columns: Vec<(Method, Option<u64>)> = Vec::new();
    for c in cells {
        if !networks.contains(&c.network.as_str()) {
            networks.push(&c.network);
        }
        let key = (c.method, c.alpha.map(f64::to_bits));
        if !columns.contains(&key) {
            columns.push(key);
        }
    }
    let mut out = String::from("| Network |");
    for &(m, a) in &columns {
        out.push_str(&format!(" {} |", column_label(m, a.map(f64::from_bits))));
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(columns.len()));
    out.push('\n');
    for net in networks {
        out.push_str(&format!("| {net} |"));
        for &(m, a) in &columns {
            let found = cells.iter().find(|c| c.network == net && c.method == m && c.alpha.map(f64::to_bits) == a);
            out.push_str(&format!(" {} |", found.map_or_else(|| "-".to_string(), &cell)));
        }
        out.push('\n');
    }
    out
}

/// Renders one view of a report. CSV keeps full precision and reads back
/// with [`parse_size_csv`] / [`parse_timing_csv`]; markdown uses the
/// `mean ± std` cell style.
pub fn emit_tables(report: &ExperimentReport, view: View, format: Format) -> Result<String> {
    match (view, format) {
        (View::Sizes, Format::Csv) => to_csv(&report.cells.iter().map(SizeRow::from).collect::<Vec<_>>(), &SIZE_HEADER),
        (View::Timings, Format::Csv) => {
            to_csv(&report.cells.iter().map(TimingRow::from).collect::<Vec<_>>(), &TIMING_HEADER)
        }
        (View::Sizes, Format::Json) => {
            Ok(serde_json::to_string_pretty(&report.cells.iter().map(SizeRow::from).collect::<Vec<_>>())?)
        }
        (View::Timings, Format::Json) => {
            Ok(serde_json::to_string_pretty(&report.cells.iter().map(TimingRow::from).collect::<Vec<_>>())?)
        }
        (View::Sizes, Format::Markdown) => Ok(pivot(&report.cells, |c| format_cell(c.mean_size, c.std_size))),
        (View::Timings, Format::Markdown) => {
            Ok(pivot(&report.cells, |c| format!("{:.4} ± {:.4}", c.mean_seconds, c.std_seconds)))
        }
    }
}

fn from_csv<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<std::result::Result<Vec<T>, _>>()?)
}

pub fn parse_size_csv(text: &str) -> Result<Vec<SizeRow>> {
    from_csv(text)
}

pub fn parse_timing_csv(text: &str) -> Result<Vec<TimingRow>> {
    from_csv(text)
}

pub fn size_rows_to_csv(rows: &[SizeRow]) -> Result<String> {
    to_csv(rows, &SIZE_HEADER)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct LongPathRow<'a> {
    network: &'a str,
    n: usize,
    analytic: f64,
    graphs: usize,
    empirical_mean: Option<f64>,
    empirical_std: Option<f64>,
}

pub fn long_path_table(rows: &[LongPathReport], format: Format) -> Result<String> {
    let flat: Vec<LongPathRow<'_>> = rows
        .iter()
        .map(|r| LongPathRow {
            network: &r.network,
            n: r.n,
            analytic: r.analytic,
            graphs: r.empirical.len(),
            empirical_mean: r.mean,
            empirical_std: r.std,
        })
        .collect();
    match format {
        Format::Csv => to_csv(&flat, &["network", "n", "analytic", "graphs", "empirical_mean", "empirical_std"]),
        Format::Json => Ok(serde_json::to_string_pretty(&flat)?),
        Format::Markdown => {
            let mut out = String::from("| Network | n | analytic | empirical |\n|---|---|---|---|\n");
            for r in &flat {
                let emp = match (r.empirical_mean, r.empirical_std) {
                    (Some(m), Some(s)) => format!("{m:.4} ± {s:.4}"),
                    _ => "-".into(),
                };
                out.push_str(&format!("| {} | {} | {:.3e} | {} |\n", r.network, r.n, r.analytic, emp));
            }
            Ok(out)
        }
    }
}
