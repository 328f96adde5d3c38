//! Number formatting and output destinations.

use std::io::Write;
use std::path::Path;

use crate::error::CliError;

/// Twelve significant digits, switching to exponent form outside `[1e-3, 1e12)`.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-3..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

/// Renders rows as a left-aligned plain-text table.
pub fn plain_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out += &line(rule.iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

/// Writes RFC-4180 CSV.
pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).map_err(csv_error)?;
    for row in rows {
        writer.write_record(row).map_err(csv_error)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Output(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Output(std::io::Error::other(e))
}

pub fn json_text<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("results serialize") + "\n"
}

/// Sends `text` to `out` if given, stdout otherwise.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.978_906_312_934_5), "0.978906312935");
        assert_eq!(sig12(1.079_779_053_299), "1.07977905330");
        assert_eq!(sig12(-12.5), "-12.5000000000");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(3.2e-9), "3.20000000000e-9");
        assert_eq!(sig12(1.5e-4), "1.50000000000e-4");
        assert_eq!(sig12(0.0025), "0.00250000000000");
    }

    #[test]
    fn csv_quotes_fields() {
        let text = csv_text(&["a", "b"], &[vec!["x, y".into(), "1".into()]]).unwrap();
        assert_eq!(text, "a,b\n\"x, y\",1\n");
    }

    #[test]
    fn aligned_columns() {
        let t = plain_table(&["A1", "energy"], &[vec!["0.2".into(), "1.0".into()]]);
        assert_eq!(t, "A1   energy\n---  ------\n0.2  1.0\n");
    }
}
