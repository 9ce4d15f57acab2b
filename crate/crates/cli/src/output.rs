use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use tempfile::NamedTempFile;

/// Numeric CSV field: 17 significant digits, scientific notation.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Optional numeric field; missing values are empty.
pub fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// In-memory CSV with a single header row and LF line endings.
pub struct Table {
    text: String,
    columns: usize,
    rows: usize,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self {
            text,
            columns: header.len(),
            rows: 0,
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        debug_assert_eq!(fields.len(), self.columns);
        let _ = writeln!(self.text, "{}", fields.join(","));
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
}

pub fn is_stdout(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_stem().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    path.with_file_name(name)
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so an interrupted run never leaves a partial file behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp =
        NamedTempFile::new_in(dir).with_context(|| format!("creating temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Emits the table to standard output or to `path` plus its `.meta.json` sidecar.
pub fn emit<M: Serialize>(path: &Path, table: &Table, meta: &M) -> Result<()> {
    if is_stdout(path) {
        let mut out = std::io::stdout().lock();
        out.write_all(table.text.as_bytes())?;
        out.flush()?;
        return Ok(());
    }
    let mut json = serde_json::to_string_pretty(meta)?;
    json.push('\n');
    write_atomic(path, table.text.as_bytes())?;
    write_atomic(&sidecar_path(path), json.as_bytes())?;
    log::info!("wrote {} rows to {}", table.rows(), path.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.5), "-2.5000000000000000e0");
        assert_eq!(num(0.0), "0.0000000000000000e0");
        let back: f64 = num(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
        assert_eq!(opt(None), "");
    }

    #[test]
    fn table_layout() {
        let mut t = Table::new(&["a", "b"]);
        t.row(&[num(1.0), opt(None)]);
        assert_eq!(t.text, "a,b\n1.0000000000000000e0,\n");
        assert_eq!(t.rows(), 1);
    }

    #[test]
    fn sidecar_next_to_csv() {
        assert_eq!(sidecar_path(Path::new("out/run.csv")), Path::new("out/run.meta.json"));
        assert_eq!(sidecar_path(Path::new("run")), Path::new("run.meta.json"));
    }
}
