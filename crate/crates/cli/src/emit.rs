//! Deterministic table emission: CSV with 17-significant-digit decimals
//! and LF line endings, JSON via serde with lossless shortest-roundtrip
//! numbers. Files are written atomically (temp file + rename), so a
//! crashed run never leaves a truncated table behind.

use crate::scenario::ScenarioResult;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

/// 17 significant digits: enough to reproduce any f64 exactly.
fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn render_csv_columns(columns: &[crate::scenario::Column]) -> String {
    let mut out = String::new();
    let names: Vec<&str> = columns.iter().map(|c| c.name.as_str()).collect();
    out.push_str(&names.join(","));
    out.push('\n');
    let rows = columns.first().map_or(0, |c| c.values.len());
    for row in 0..rows {
        let mut first = true;
        for column in columns {
            if !first {
                out.push(',');
            }
            out.push_str(&format_value(column.values[row]));
            first = false;
        }
        out.push('\n');
    }
    out
}

fn render_csv(result: &ScenarioResult) -> String {
    render_csv_columns(&result.columns)
}

fn render_json(result: &ScenarioResult) -> String {
    let mut out = serde_json::to_string_pretty(result).expect("result serializes");
    out.push('\n');
    out
}

fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Writes `<stem>.<ext>` under `out_dir`; returns the path written.
/// In CSV mode any auxiliary snapshot tables become
/// `<stem>_<snapshot>.csv` files beside the main table (JSON embeds
/// them in the one document).
pub fn emit(
    result: &ScenarioResult,
    format: OutputFormat,
    out_dir: &Path,
    stem: &str,
) -> io::Result<PathBuf> {
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(format!("{stem}.{}", format.extension()));
    let contents = match format {
        OutputFormat::Csv => render_csv(result),
        OutputFormat::Json => render_json(result),
    };
    write_atomic(&path, &contents)?;
    if format == OutputFormat::Csv {
        for snapshot in &result.snapshots {
            let aux = out_dir.join(format!("{stem}_{}.csv", snapshot.name));
            write_atomic(&aux, &render_csv_columns(&snapshot.columns))?;
        }
    }
    Ok(path)
}
