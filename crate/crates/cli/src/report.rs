//! Report rows and their CSV/JSON encodings.
//!
//! The CSV schema is fixed: `lambda,empirical_G,theory_G,pair_count,abs_err`
//! with absent fields left empty, and the JSON form is an array of row
//! objects with the same field names (absent fields omitted). Lambda is
//! echoed as its exact rational string, so rows are byte-identical across
//! runs and thread counts.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

/// One output row; all statistics are optional so the same schema serves
/// generation-free reports (theory only), empirical-only runs, and full
/// comparisons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// Window length as an exact rational string.
    pub lambda: String,
    /// Empirical value `pair_count / N`.
    #[serde(
        rename = "empirical_G",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub empirical_g: Option<f64>,
    /// Closed-form limit value.
    #[serde(rename = "theory_G", skip_serializing_if = "Option::is_none", default)]
    pub theory_g: Option<f64>,
    /// Ordered pair count behind the empirical value.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair_count: Option<u64>,
    /// `|empirical_G - theory_G|` when both are present.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub abs_err: Option<f64>,
}

impl ReportRow {
    /// A row carrying only the lambda label.
    pub fn new(lambda: String) -> Self {
        ReportRow {
            lambda,
            empirical_g: None,
            theory_g: None,
            pair_count: None,
            abs_err: None,
        }
    }
}

/// The fixed CSV header.
pub const CSV_HEADER: &str = "lambda,empirical_G,theory_G,pair_count,abs_err";

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), |x| x.to_string())
}

/// Writes the rows as CSV with the fixed header.
pub fn write_csv(rows: &[ReportRow], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.lambda,
            opt(&r.empirical_g),
            opt(&r.theory_g),
            opt(&r.pair_count),
            opt(&r.abs_err)
        )?;
    }
    Ok(())
}

/// Writes the rows as a JSON array of row objects.
pub fn write_json(rows: &[ReportRow], w: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, rows)?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_leaves_absent_fields_empty() {
        let mut row = ReportRow::new("0.5".into());
        row.theory_g = Some(0.25);
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "lambda,empirical_G,theory_G,pair_count,abs_err\n0.5,,0.25,,\n"
        );
    }

    #[test]
    fn json_round_trips() {
        let mut row = ReportRow::new("1".into());
        row.empirical_g = Some(0.5);
        row.pair_count = Some(2);
        let mut buf = Vec::new();
        write_json(&[row.clone()], &mut buf).unwrap();
        let back: Vec<ReportRow> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, vec![row]);
    }
}
