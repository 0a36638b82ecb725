//! Trace persistence: CSV and structured JSON, written atomically
//! (temp file in the destination directory, then rename).

use std::io::Write;
use std::path::Path;

use orbitsum_core::OrbitTrace64;
use serde_json::json;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceFormat {
    Csv,
    Json,
}

impl TraceFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            TraceFormat::Csv => "csv",
            TraceFormat::Json => "json",
        }
    }
}

/// 17 significant digits: enough for an exact f64 round trip.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders the trace as CSV with header `n,gap,partial_sum,ratio,residual`;
/// the ratio cell is empty where the ratio is undefined.
pub fn trace_to_csv(trace: &OrbitTrace64) -> String {
    let mut out = String::from("n,gap,partial_sum,ratio,residual\n");
    for n in 0..trace.len() {
        let ratio = trace
            .ratios
            .get(n)
            .copied()
            .flatten()
            .map(fmt_f64)
            .unwrap_or_default();
        out.push_str(&format!(
            "{n},{},{},{ratio},{}\n",
            fmt_f64(trace.gaps[n]),
            fmt_f64(trace.partial_sums[n]),
            fmt_f64(trace.residuals[n]),
        ));
    }
    out
}

/// Structured form of the same columns, with explicit nulls for undefined
/// ratios.
pub fn trace_to_json(trace: &OrbitTrace64) -> String {
    let rows: Vec<_> = (0..trace.len())
        .map(|n| {
            json!({
                "n": n,
                "gap": trace.gaps[n],
                "partial_sum": trace.partial_sums[n],
                "ratio": trace.ratios.get(n).copied().flatten(),
                "residual": trace.residuals[n],
            })
        })
        .collect();
    let doc = json!({
        "stop": trace.stop.as_str(),
        "total_displacement": trace.total_displacement(),
        "rows": rows,
    });
    serde_json::to_string_pretty(&doc).expect("trace serialization cannot fail")
}

/// Writes the trace to `path` atomically.
pub fn emit_trace(trace: &OrbitTrace64, path: &Path, format: TraceFormat) -> Result<()> {
    let rendered = match format {
        TraceFormat::Csv => trace_to_csv(trace),
        TraceFormat::Json => trace_to_json(trace),
    };
    let io_err = |e: std::io::Error| HarnessError::Io {
        path: path.display().to_string(),
        source: e,
    };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => tempfile::NamedTempFile::new_in(dir),
        None => tempfile::NamedTempFile::new_in("."),
    }
    .map_err(io_err)?;
    tmp.write_all(rendered.as_bytes()).map_err(io_err)?;
    tmp.persist(path)
        .map_err(|e| io_err(e.error))
        .map(|_| ())
}

/// Parses the numeric columns back out of a CSV trace (test support and
/// round-trip verification).
pub fn parse_csv_trace(text: &str) -> Result<Vec<(usize, f64, f64, Option<f64>, f64)>> {
    let mut rows = Vec::new();
    let mut lines = text.lines();
    match lines.next() {
        Some("n,gap,partial_sum,ratio,residual") => {}
        other => {
            return Err(HarnessError::Parse(format!(
                "bad CSV header: {other:?}"
            )))
        }
    }
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(HarnessError::Parse(format!(
                "row {i}: expected 5 fields, got {}",
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|e| HarnessError::Parse(format!("row {i}: {e}")))
        };
        let n = fields[0]
            .parse()
            .map_err(|e| HarnessError::Parse(format!("row {i}: {e}")))?;
        let ratio = if fields[3].is_empty() {
            None
        } else {
            Some(parse(fields[3])?)
        };
        rows.push((n, parse(fields[1])?, parse(fields[2])?, ratio, parse(fields[4])?));
    }
    Ok(rows)
}
