use serde::{Deserialize, Serialize};

use super::SweepRow;
use crate::error::{Error, Result};

/// Column order shared by the CSV and JSON forms.
pub const COLUMNS: [&str; 15] = [
    "axis",
    "W1",
    "W2",
    "W3",
    "W3_prime",
    "W4",
    "Q2",
    "Q4",
    "E2",
    "E4",
    "eta",
    "cop",
    "regime",
    "law_residual",
    "flag",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown table format '{other}'"
            ))),
        }
    }
}

/// 17 significant digits, enough to recover every `f64`.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidConfig(format!("csv output: {e}"))
}

/// Serialises rows as RFC-4180 CSV (CRLF line ends) or a JSON array.
/// Undefined values are empty CSV fields or JSON `null`.
pub fn emit_table(rows: &[SweepRow], format: TableFormat) -> Result<Vec<u8>> {
    if rows.is_empty() {
        return Err(Error::InvalidSweep("no rows to emit".into()));
    }
    match format {
        TableFormat::Json => {
            let mut out =
                serde_json::to_vec_pretty(rows).map_err(|e| Error::InvalidConfig(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        TableFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::CRLF)
                .from_writer(Vec::new());
            w.write_record(COLUMNS).map_err(csv_err)?;
            for r in rows {
                w.write_record([
                    num(r.axis),
                    opt(r.w1),
                    opt(r.w2),
                    opt(r.w3),
                    opt(r.w3_prime),
                    opt(r.w4),
                    opt(r.q2),
                    opt(r.q4),
                    opt(r.e2),
                    opt(r.e4),
                    opt(r.eta),
                    opt(r.cop),
                    r.regime.map(|t| t.as_str().to_string()).unwrap_or_default(),
                    opt(r.law_residual),
                    r.flag.clone().unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
            w.into_inner().map_err(csv_err)
        }
    }
}

/// Reads back the JSON form of [`emit_table`].
pub fn parse_json_table(bytes: &[u8]) -> Result<Vec<SweepRow>> {
    serde_json::from_slice(bytes).map_err(|e| Error::InvalidConfig(format!("sweep table: {e}")))
}
