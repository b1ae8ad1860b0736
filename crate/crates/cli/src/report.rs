//! Report rendering: pretty JSON, or CSV tables separated by blank lines.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;
use crate::pipeline::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(CliError::Input(format!("unknown output format `{other}` (expected json or csv)"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Csv => "csv",
        })
    }
}

pub const SPECTRUM_HEADER: [&str; 3] = ["index", "eigenvalue", "harmonic"];
pub const NORMS_HEADER: [&str; 4] = ["p", "component", "norm", "ratio"];
pub const PROFILE_HEADER: [&str; 4] = ["p", "lower", "upper", "gamma"];
pub const COMPLEX_HEADER: [&str; 4] = ["degree", "count", "betti", "total_weight"];

fn num(x: f64) -> String {
    format!("{x}")
}

fn table<R: IntoIterator<Item = Vec<String>>>(header: &[&str], rows: R) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let out = |e: csv::Error| CliError::Output(e.to_string());
    w.write_record(header).map_err(out)?;
    for row in rows {
        w.write_record(&row).map_err(out)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn csv_tables(report: &Report) -> Result<String, CliError> {
    let c = &report.complex;
    let mut tables = vec![table(
        &COMPLEX_HEADER,
        (0..c.counts.len()).map(|d| vec![d.to_string(), c.counts[d].to_string(), c.betti[d].to_string(), num(c.total_weights[d])]),
    )?];
    if let Some(s) = &report.spectrum {
        tables.push(table(
            &SPECTRUM_HEADER,
            s.eigenvalues
                .iter()
                .enumerate()
                .map(|(i, l)| vec![i.to_string(), num(*l), (i < s.kernel_dim).to_string()]),
        )?);
    }
    if let Some(d) = &report.decomposition {
        let mut rows = Vec::new();
        for n in &d.result.component_norms {
            let ratio = |x: f64| if n.omega > 0.0 { x / n.omega } else { 0.0 };
            rows.push(vec![num(n.p), "omega".into(), num(n.omega), num(ratio(n.omega))]);
            for (name, value) in n.entries() {
                rows.push(vec![num(n.p), name.into(), num(value), num(ratio(value))]);
            }
        }
        tables.push(table(&NORMS_HEADER, rows)?);
    }
    if let Some(i) = &report.interpolation {
        tables.push(table(
            &PROFILE_HEADER,
            i.profile.iter().map(|r| vec![num(r.p), num(r.lower), num(r.upper), r.gamma.map(num).unwrap_or_default()]),
        )?);
    }
    Ok(tables.join("\n"))
}

pub fn render_report(report: &Report, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => csv_tables(report),
    }
}

/// Writes the rendered report to `path`, or to standard output.
pub fn emit_report(report: &Report, path: Option<&Path>, format: OutputFormat) -> Result<(), CliError> {
    let text = render_report(report, format)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Output(e.to_string()))
        }
    }
}
