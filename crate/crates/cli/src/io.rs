//! Input loading: symbolic text (plain or FASTA) and numeric CSV columns
//! that get discretized on the way in.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rarepat_core::sequence::{self, DiscretizationSpec, ParseMode};
use rarepat_core::SymbolSequence;

/// Input layouts the miner accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// Every non-whitespace character is one symbol.
    Plain,
    /// Plain with `>` header lines skipped.
    Fasta,
    /// One numeric column, discretized into bins.
    Csv,
}

impl InputFormat {
    pub fn name(self) -> &'static str {
        match self {
            InputFormat::Plain => "plain",
            InputFormat::Fasta => "fasta",
            InputFormat::Csv => "csv",
        }
    }
}

/// Picks a format from the file extension; anything unrecognized is plain
/// text, which any symbolic input survives.
pub fn infer_format(path: &Path) -> InputFormat {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    match ext.to_ascii_lowercase().as_str() {
        "fa" | "fasta" | "fna" | "faa" => InputFormat::Fasta,
        "csv" => InputFormat::Csv,
        _ => InputFormat::Plain,
    }
}

/// A parsed input sequence plus the discretization that produced it, when
/// the source was numeric.
#[derive(Debug, Clone)]
pub struct LoadedInput {
    pub seq: SymbolSequence,
    pub discretization: Option<DiscretizationSpec>,
}

/// Reads and parses one input file. `column` and `bins` only apply to CSV
/// sources; `format` falls back to extension inference.
pub fn load_input(
    path: &Path,
    format: Option<InputFormat>,
    column: Option<&str>,
    bins: usize,
) -> Result<LoadedInput> {
    let format = format.unwrap_or_else(|| infer_format(path));
    let mut loaded = match format {
        InputFormat::Plain | InputFormat::Fasta => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let mode = match format {
                InputFormat::Plain => ParseMode::Plain,
                _ => ParseMode::Fasta,
            };
            let seq = sequence::parse_symbols(&text, mode)
                .with_context(|| format!("parsing {}", path.display()))?;
            LoadedInput { seq, discretization: None }
        }
        InputFormat::Csv => {
            let values = read_numeric_column(path, column)?;
            let (seq, spec) = sequence::discretize(&values, bins)
                .with_context(|| format!("discretizing {}", path.display()))?;
            LoadedInput { seq, discretization: Some(spec) }
        }
    };
    let name = match column {
        Some(col) => format!("{}:{col}", path.display()),
        None => path.display().to_string(),
    };
    loaded.seq.set_source_name(name);
    Ok(loaded)
}

/// Reads one numeric column from a CSV file.
///
/// `column` selects by 0-based index or by header name; `None` means the
/// first column. A header row is detected by the selected cell of the first
/// row failing to parse as a number; selecting by name requires one. Parse
/// errors point at the offending row, counting from 1 including any header.
pub fn read_numeric_column(path: &Path, column: Option<&str>) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;

    let mut records = reader.records();
    let first = match records.next() {
        Some(record) => record.context("reading CSV row 1")?,
        None => bail!("{}: file contains no CSV rows", path.display()),
    };

    let by_name = column.filter(|c| c.parse::<usize>().is_err());
    let index;
    let mut values: Vec<f64> = Vec::new();
    match by_name {
        Some(name) => {
            index = first
                .iter()
                .position(|field| field == name)
                .with_context(|| format!("no column named {name:?} in the header row"))?;
        }
        None => {
            index = column.map(|c| c.parse::<usize>().expect("filtered above")).unwrap_or(0);
            // Without a name there may or may not be a header; a first row
            // whose selected cell is numeric is data.
            if let Some(cell) = first.get(index) {
                if let Ok(v) = cell.trim().parse::<f64>() {
                    values.push(v);
                }
            }
        }
    }

    let mut row = 1usize;
    for record in records {
        row += 1;
        let record = record.with_context(|| format!("reading CSV row {row}"))?;
        let cell = match record.get(index) {
            Some(cell) => cell.trim(),
            None => bail!("row {row}: no column {index} (row has {} fields)", record.len()),
        };
        let value: f64 = cell
            .parse()
            .with_context(|| format!("row {row}: cannot parse {cell:?} as a number"))?;
        values.push(value);
    }

    if values.is_empty() {
        bail!("{}: no numeric data rows", path.display());
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn temp_csv(content: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::Builder::new().suffix(".csv").tempfile().unwrap();
        file.write_all(content.as_bytes()).unwrap();
        file
    }

    #[test]
    fn infers_format_from_extension() {
        assert_eq!(infer_format(Path::new("s.txt")), InputFormat::Plain);
        assert_eq!(infer_format(Path::new("s.FASTA")), InputFormat::Fasta);
        assert_eq!(infer_format(Path::new("s.csv")), InputFormat::Csv);
        assert_eq!(infer_format(Path::new("s")), InputFormat::Plain);
    }

    #[test]
    fn reads_headerless_first_column() {
        let file = temp_csv("1.0\n2.0\n3.5\n");
        let values = read_numeric_column(file.path(), None).unwrap();
        assert_eq!(values, vec![1.0, 2.0, 3.5]);
    }

    #[test]
    fn reads_named_column_behind_header() {
        let file = temp_csv("time,load\n0,1.5\n1,2.5\n");
        let values = read_numeric_column(file.path(), Some("load")).unwrap();
        assert_eq!(values, vec![1.5, 2.5]);
    }

    #[test]
    fn index_selection_skips_detected_header() {
        let file = temp_csv("time,load\n0,1.5\n1,2.5\n");
        let values = read_numeric_column(file.path(), Some("1")).unwrap();
        assert_eq!(values, vec![1.5, 2.5]);
    }

    #[test]
    fn parse_error_reports_row_number() {
        let file = temp_csv("load\n1.5\noops\n");
        let err = read_numeric_column(file.path(), Some("load")).unwrap_err();
        assert!(format!("{err:#}").contains("row 3"), "{err:#}");
    }

    #[test]
    fn missing_column_name_fails() {
        let file = temp_csv("a,b\n1,2\n");
        assert!(read_numeric_column(file.path(), Some("c")).is_err());
    }

    #[test]
    fn csv_input_discretizes() {
        let file = temp_csv("1\n1\n9\n9\n");
        let loaded = load_input(file.path(), None, None, 2).unwrap();
        assert_eq!(loaded.seq.render(), "AABB");
        assert_eq!(loaded.discretization.unwrap().bin_count, 2);
    }

    #[test]
    fn plain_input_keeps_glyphs() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(b"xyxy\n").unwrap();
        let loaded = load_input(file.path(), Some(InputFormat::Plain), None, 8).unwrap();
        assert_eq!(loaded.seq.render(), "xyxy");
        assert!(loaded.discretization.is_none());
    }
}
