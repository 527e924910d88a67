//! Frame and report serialization.
//!
//! Frame files are plain text: one row per line, two fields separated by a
//! space, `#` comment lines allowed. Fields are written in the shortest
//! decimal form that parses back to the identical bits, so
//! `read(write(frame))` is exact.
//!
//! Reports are JSON documents with a stable field order; identical inputs
//! produce byte-identical reports unless a timestamp is requested.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::frames::{OrthonormalFrame, RowPair};
use crate::proofaudit::AuditReport;
use crate::selection::Certificate;

fn format_field(x: f64) -> String {
    let a = x.abs();
    // Display never uses an exponent; switch to scientific for extreme
    // magnitudes so lines stay readable. Both forms round-trip.
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Parses rows from a frame file. Comments and blank lines are skipped;
/// validation is the caller's job.
pub fn read_frame_from_reader<R: BufRead>(reader: R) -> Result<Vec<[f64; 2]>> {
    let mut rows = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                detail: format!("expected exactly 2 numeric fields, found {}", fields.len()),
            });
        }
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|e| Error::Parse {
                line: lineno,
                detail: format!("{e}: {s:?}"),
            })
        };
        rows.push([parse(fields[0])?, parse(fields[1])?]);
    }
    if rows.len() < 2 {
        return Err(Error::TooFewRows { n: rows.len() });
    }
    Ok(rows)
}

pub fn read_frame_from_path<P: AsRef<Path>>(path: P) -> Result<Vec<[f64; 2]>> {
    read_frame_from_reader(BufReader::new(File::open(path)?))
}

/// Writes a frame in the round-trip-exact text format.
pub fn write_frame(frame: &OrthonormalFrame) -> String {
    let mut out = String::new();
    for &[x, y] in frame.rows() {
        out.push_str(&format_field(x));
        out.push(' ');
        out.push_str(&format_field(y));
        out.push('\n');
    }
    out
}

/// How a generated input can be reproduced.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GeneratorSpec {
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_sq: Option<f64>,
    pub version: String,
}

/// Oracle result summary embedded in reports.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct OracleSummary {
    pub max_sigma2: f64,
    pub argmax: RowPair,
    pub pairs_evaluated: usize,
    pub meets_bound: bool,
}

/// Non-default tolerances recorded for replayability.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_ortho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_cap: Option<usize>,
}

/// The machine-readable result of a run. Field order is fixed by this
/// struct; numbers serialize in shortest round-trip form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub mode: String,
    pub n: usize,
    pub bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<RowPair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma2: Option<f64>,
    /// Case B margin of the terminal pair; null for other terminals.
    pub margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<Map<String, Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit_pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case_b_existence: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance_overrides: Option<ToleranceOverrides>,
    /// Unix seconds, present only when explicitly requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl ReportDocument {
    pub fn new(mode: impl Into<String>, n: usize) -> Self {
        Self {
            schema_version: "1".into(),
            mode: mode.into(),
            n,
            bound: crate::selection::sigma_bound(n),
            generator: None,
            pair: None,
            sigma2: None,
            margin: None,
            verified: None,
            certificate: None,
            audit: None,
            audit_pass: None,
            case_b_existence: None,
            oracle: None,
            tolerance_overrides: None,
            timestamp: None,
        }
    }
}

/// Audit report as an ordered name -> {residual, tolerance, pass} map.
pub fn audit_to_map(report: &AuditReport) -> Map<String, Value> {
    let mut map = Map::new();
    for check in &report.checks {
        let mut entry = Map::new();
        entry.insert("residual".into(), check.residual.into());
        entry.insert("tolerance".into(), check.tolerance.into());
        entry.insert("pass".into(), check.pass.into());
        map.insert(check.name.to_string(), Value::Object(entry));
    }
    map
}

/// Serializes a report with stable ordering.
pub fn write_report(doc: &ReportDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("report serialization is infallible");
    out.push('\n');
    out
}

pub fn read_report_str(s: &str) -> Result<ReportDocument> {
    serde_json::from_str(s).map_err(|e| Error::Report(e.to_string()))
}

pub fn read_report_from_path<P: AsRef<Path>>(path: P) -> Result<ReportDocument> {
    read_report_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_frame, tightness_frame};
    use crate::selection::select_pair;

    #[test]
    fn reads_plain_rows() {
        let rows = read_frame_from_reader("1 0\n0 1\n".as_bytes()).unwrap();
        assert_eq!(rows, vec![[1.0, 0.0], [0.0, 1.0]]);
    }

    #[test]
    fn skips_comment_header() {
        let text = format!("# tightness n=4\n{}", write_frame(&tightness_frame(4).unwrap()));
        let rows = read_frame_from_reader(text.as_bytes()).unwrap();
        assert_eq!(rows.len(), 4);
    }

    #[test]
    fn three_fields_is_a_parse_error_with_line_number() {
        let err = read_frame_from_reader("1 0 0\n0 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn one_row_is_a_size_error() {
        assert!(matches!(
            read_frame_from_reader("1 0\n".as_bytes()),
            Err(Error::TooFewRows { n: 1 })
        ));
    }

    #[test]
    fn identity_frame_writes_canonically() {
        let f = OrthonormalFrame::validate(vec![[1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(write_frame(&f), "1 0\n0 1\n");
    }

    #[test]
    fn frames_round_trip_bit_exactly() {
        for seed in [7u64, 8, 9] {
            let frame = random_frame(10, seed);
            let rows = read_frame_from_reader(write_frame(&frame).as_bytes()).unwrap();
            assert_eq!(rows, frame.rows());
        }
        let t = tightness_frame(4).unwrap();
        let rows = read_frame_from_reader(write_frame(&t).as_bytes()).unwrap();
        assert_eq!(rows, t.rows());
    }

    #[test]
    fn extreme_magnitudes_round_trip() {
        for x in [1e-300, -3.2e-200, 4.9e-324, 1.7e300, -0.0, 0.1, 1.0 / 3.0] {
            let s = format_field(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn select_report_for_identity_frame() {
        let f = OrthonormalFrame::validate(vec![[1.0, 0.0], [0.0, 1.0]]).unwrap();
        let sel = select_pair(&f).unwrap();
        let mut doc = ReportDocument::new("select", 2);
        doc.pair = Some(sel.pair);
        doc.sigma2 = Some(sel.sigma2);
        doc.certificate = Some(sel.certificate.clone());
        let text = write_report(&doc);
        assert!(text.contains("\"bound\": 0.7071067811865476"));
        assert!(text.contains("\"pair\": [\n    0,\n    1\n  ]"));
        assert!(text.contains("\"margin\": null"));

        let parsed = read_report_str(&text).unwrap();
        assert_eq!(parsed.pair, Some(sel.pair));
        assert_eq!(parsed.sigma2, Some(1.0));
        assert_eq!(parsed.certificate.unwrap(), sel.certificate);
    }

    #[test]
    fn identical_documents_serialize_identically() {
        let build = || {
            let f = tightness_frame(5).unwrap();
            let sel = select_pair(&f).unwrap();
            let mut doc = ReportDocument::new("select", 5);
            doc.pair = Some(sel.pair);
            doc.sigma2 = Some(sel.sigma2);
            doc.audit = Some(audit_to_map(&crate::proofaudit::audit_invariants(&f)));
            write_report(&doc)
        };
        assert_eq!(build(), build());
    }
}
