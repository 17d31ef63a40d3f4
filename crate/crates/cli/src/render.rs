//! Deterministic TSV and JSON rendering of certification reports.
//!
//! Both formats carry the same textual field values: numbers in
//! scientific notation with seven significant digits, infinities as the
//! literal `inf`, so JSON output round-trips everything the TSV shows.

use alphabox_core::alphacert::PairVerdict;
use serde::Serialize;

use crate::config::OutputFormat;
use crate::run::{CertifyReport, Row, SweepKey, SweepReport};

/// TSV header of the per-box certification table.
pub const TSV_HEADER: &str = "idx\talpha\tbeta\tgamma\tcertified";

/// Scientific notation with seven significant digits; infinity is `inf`.
pub fn sci(x: f64) -> String {
    if x.is_infinite() {
        "inf".to_owned()
    } else {
        format!("{x:.6e}")
    }
}

fn verdict_str(v: PairVerdict) -> &'static str {
    match v {
        PairVerdict::Same => "same",
        PairVerdict::Distinct => "distinct",
        PairVerdict::Unknown => "unknown",
    }
}

pub fn render_certify(report: &CertifyReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Tsv => certify_tsv(report),
        OutputFormat::Json => certify_json(report),
    }
}

pub fn render_sweep(report: &SweepReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Tsv => sweep_tsv(report),
        OutputFormat::Json => sweep_json(report),
    }
}

fn push_row_fields(out: &mut String, row: &Row) {
    out.push_str(&format!(
        "{}\t{}\t{}\t{}\t{}\n",
        row.idx,
        sci(row.alpha),
        sci(row.beta),
        sci(row.gamma),
        row.certified
    ));
}

fn certify_tsv(report: &CertifyReport) -> String {
    let mut out = String::new();
    out.push_str(TSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        push_row_fields(&mut out, row);
    }
    if let Some(distinct) = &report.distinct {
        let k = distinct.matrix.len();
        out.push('\n');
        out.push_str("pair\ti\tj\tverdict\n");
        for i in 0..k {
            for j in (i + 1)..k {
                out.push_str(&format!(
                    "pair\t{i}\t{j}\t{}\n",
                    verdict_str(distinct.matrix[i][j])
                ));
            }
        }
        out.push('\n');
        out.push_str("cluster\tid\tmembers\n");
        for (id, members) in distinct.clusters.iter().enumerate() {
            let joined = members
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!("cluster\t{id}\t{joined}\n"));
        }
    }
    out
}

#[derive(Serialize)]
struct JsonRow {
    idx: usize,
    alpha: String,
    beta: String,
    gamma: String,
    certified: bool,
}

impl JsonRow {
    fn new(row: &Row) -> Self {
        JsonRow {
            idx: row.idx,
            alpha: sci(row.alpha),
            beta: sci(row.beta),
            gamma: sci(row.gamma),
            certified: row.certified,
        }
    }
}

#[derive(Serialize)]
struct JsonCertify {
    rows: Vec<JsonRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<Vec<&'static str>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clusters: Option<Vec<Vec<usize>>>,
}

fn to_json(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    text.push('\n');
    text
}

fn certify_json(report: &CertifyReport) -> String {
    let doc = JsonCertify {
        rows: report.rows.iter().map(JsonRow::new).collect(),
        pairs: report.distinct.as_ref().map(|d| {
            d.matrix
                .iter()
                .map(|row| row.iter().map(|&v| verdict_str(v)).collect())
                .collect()
        }),
        clusters: report.distinct.as_ref().map(|d| d.clusters.clone()),
    };
    to_json(&doc)
}

fn sweep_key_name(key: SweepKey) -> &'static str {
    match key {
        SweepKey::Radius => "radius",
        SweepKey::Bits => "bits",
    }
}

fn sweep_tsv(report: &SweepReport) -> String {
    let mut out = String::new();
    out.push_str(sweep_key_name(report.key));
    out.push('\t');
    out.push_str(TSV_HEADER);
    out.push('\n');
    for (label, row) in &report.rows {
        out.push_str(label);
        out.push('\t');
        push_row_fields(&mut out, row);
    }
    out
}

#[derive(Serialize)]
struct JsonRadiusRow {
    radius: String,
    #[serde(flatten)]
    row: JsonRow,
}

#[derive(Serialize)]
struct JsonBitsRow {
    bits: u32,
    #[serde(flatten)]
    row: JsonRow,
}

#[derive(Serialize)]
struct JsonSweep<R: Serialize> {
    rows: Vec<R>,
}

fn sweep_json(report: &SweepReport) -> String {
    match report.key {
        SweepKey::Radius => to_json(&JsonSweep {
            rows: report
                .rows
                .iter()
                .map(|(label, row)| JsonRadiusRow {
                    radius: label.clone(),
                    row: JsonRow::new(row),
                })
                .collect::<Vec<_>>(),
        }),
        SweepKey::Bits => to_json(&JsonSweep {
            rows: report
                .rows
                .iter()
                .map(|(label, row)| JsonBitsRow {
                    bits: label.parse().expect("bits labels are numeric"),
                    row: JsonRow::new(row),
                })
                .collect::<Vec<_>>(),
        }),
    }
}
