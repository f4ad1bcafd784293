//! Report rendering. One row type feeds both the CSV and the JSON output,
//! with confidence and surprise frozen to 4-decimal strings at construction,
//! so the two formats cannot drift apart.

use anyhow::Result;
use rarepat_core::{Alphabet, FrequencyStats, PeriodicHit};
use serde::{Deserialize, Serialize};

use crate::manifest::RunManifest;

pub const HIT_HEADER: [&str; 7] =
    ["count", "period", "pattern", "start_pos", "end_pos", "conf", "surp"];
pub const PFT_HEADER: [&str; 5] = ["pattern_length", "count", "mean", "median", "mad"];

/// One reported hit, print-ready. Field order matches [`HIT_HEADER`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HitRow {
    pub count: usize,
    pub period: usize,
    pub pattern: String,
    pub start_pos: usize,
    pub end_pos: usize,
    pub conf: String,
    pub surp: String,
}

/// One frequency-table row, print-ready. Field order matches [`PFT_HEADER`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PftRow {
    pub pattern_length: usize,
    pub count: usize,
    pub mean: String,
    pub median: String,
    pub mad: String,
}

fn fmt4(value: f64) -> String {
    format!("{value:.4}")
}

pub fn hit_rows(hits: &[PeriodicHit], alphabet: &Alphabet) -> Vec<HitRow> {
    hits.iter()
        .map(|hit| HitRow {
            count: hit.count,
            period: hit.period,
            pattern: alphabet.render(&hit.pattern),
            start_pos: hit.start,
            end_pos: hit.end,
            conf: fmt4(hit.confidence),
            surp: fmt4(hit.surprise),
        })
        .collect()
}

pub fn pft_rows(pft: &[FrequencyStats]) -> Vec<PftRow> {
    pft.iter()
        .map(|row| PftRow {
            pattern_length: row.pattern_len,
            count: row.n_patterns,
            mean: fmt4(row.mean),
            median: fmt4(row.median),
            mad: fmt4(row.mad),
        })
        .collect()
}

/// Renders rows as CSV under an explicit header, so an empty report still
/// carries its schema.
pub fn to_csv<T: Serialize>(header: &[&str], rows: &[T]) -> Result<String> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer.into_inner()?;
    Ok(String::from_utf8(bytes)?)
}

/// The two CSV blocks shown on standard output: frequency table, blank
/// line, hits.
pub fn render_stdout(pft: &[PftRow], hits: &[HitRow]) -> Result<String> {
    let mut out = to_csv(&PFT_HEADER, pft)?;
    out.push('\n');
    out.push_str(&to_csv(&HIT_HEADER, hits)?);
    Ok(out)
}

/// The full JSON report document.
#[derive(Debug, Serialize)]
pub struct JsonReport<'a> {
    pub manifest: &'a RunManifest,
    pub pft: &'a [PftRow],
    pub hits: &'a [HitRow],
}

pub fn render_json(manifest: &RunManifest, pft: &[PftRow], hits: &[HitRow]) -> Result<String> {
    let doc = JsonReport { manifest, pft, hits };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_row() -> HitRow {
        HitRow {
            count: 6,
            period: 4,
            pattern: "xy".into(),
            start_pos: 0,
            end_pos: 25,
            conf: fmt4(6.0 / 7.0),
            surp: fmt4(-0.894_736),
        }
    }

    #[test]
    fn four_decimal_fixed_formatting() {
        assert_eq!(fmt4(1.0), "1.0000");
        assert_eq!(fmt4(6.0 / 7.0), "0.8571");
        assert_eq!(fmt4(-0.894_736), "-0.8947");
    }

    #[test]
    fn hit_csv_matches_contract() {
        let csv = to_csv(&HIT_HEADER, &[sample_row()]).unwrap();
        assert_eq!(csv, "count,period,pattern,start_pos,end_pos,conf,surp\n6,4,xy,0,25,0.8571,-0.8947\n");
    }

    #[test]
    fn empty_report_keeps_its_header() {
        let csv = to_csv::<HitRow>(&HIT_HEADER, &[]).unwrap();
        assert_eq!(csv, "count,period,pattern,start_pos,end_pos,conf,surp\n");
    }

    #[test]
    fn pft_header_matches_contract() {
        let csv = to_csv::<PftRow>(&PFT_HEADER, &[]).unwrap();
        assert_eq!(csv, "pattern_length,count,mean,median,mad\n");
    }

    #[test]
    fn stdout_blocks_are_separated_by_a_blank_line() {
        let text = render_stdout(&[], &[sample_row()]).unwrap();
        let expected = "pattern_length,count,mean,median,mad\n\ncount,period,pattern,start_pos,end_pos,conf,surp\n6,4,xy,0,25,0.8571,-0.8947\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn json_hits_carry_the_same_strings_as_csv() {
        let row = sample_row();
        let json = serde_json::to_value(&row).unwrap();
        assert_eq!(json["conf"], "0.8571");
        assert_eq!(json["surp"], "-0.8947");
        assert_eq!(json["count"], 6);
        let back: HitRow = serde_json::from_value(json).unwrap();
        assert_eq!(back, row);
    }
}
