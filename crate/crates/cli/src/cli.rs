//! The clap surface and the three commands behind it.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rarepat_core::pattern_tree::default_level_cap;
use rarepat_core::sequence;
use rarepat_core::stats::MadParams;
use rarepat_core::{MiningConfig, TreeConstraints};

use crate::io::{self, InputFormat};
use crate::manifest::{DiscretizeManifest, InputInfo, RunManifest, ToolInfo};
use crate::report;
use crate::runner;
use crate::{bench, CliError, CommandResult};

#[derive(Debug, Parser)]
#[command(name = "rarepat", version, about = "Mines rare periodic patterns from symbol sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine one input file and report periodic outlier patterns.
    Mine(MineArgs),
    /// Time the tree miner against the exhaustive reference on generated data.
    Bench(BenchArgs),
    /// Discretize a numeric CSV column into a symbol file.
    Discretize(DiscretizeArgs),
}

#[derive(Debug, Args)]
pub struct MineArgs {
    /// Input file holding the sequence.
    #[arg(long)]
    pub input: PathBuf,
    /// Input layout; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// CSV column to mine, by header name or 0-based index.
    #[arg(long)]
    pub column: Option<String>,
    /// Discretization bins for numeric CSV input.
    #[arg(long, default_value_t = 8)]
    pub bins: usize,

    /// Minimum occurrence count for a pattern to enter the tree.
    #[arg(long, default_value_t = 2)]
    pub min_sup: usize,
    /// Enable the monotonic confidence prune during tree construction.
    #[arg(long)]
    pub monotonic: bool,
    /// Threshold for the monotonic prune.
    #[arg(long, default_value_t = 0.5)]
    pub min_conf: f64,
    /// Absolute cap on mined pattern length; the effective cap is the
    /// smaller of this and half the sequence length.
    #[arg(long, default_value_t = 32)]
    pub max_pattern_len: usize,

    /// Report a hit only when its confidence strictly exceeds this.
    #[arg(long, default_value_t = 0.5)]
    pub conf_min: f64,
    /// Report a hit only when its surprise strictly exceeds this.
    #[arg(long, default_value_t = 0.5)]
    pub surprise_min: f64,
    /// Outlier gate multiplier on the per-length MAD.
    #[arg(long, default_value_t = 1.0)]
    pub mad_k: f64,
    /// MAD consistency constant.
    #[arg(long, default_value_t = 1.4826)]
    pub mad_b: f64,
    /// Disable the outlier gate and rank plain frequent patterns instead.
    #[arg(long)]
    pub no_mad_gate: bool,

    /// Slot tolerance: how far an occurrence may drift from its grid point.
    #[arg(long, default_value_t = 0)]
    pub tolerance: usize,
    /// Smallest period to consider.
    #[arg(long, default_value_t = 1)]
    pub p_min: usize,
    /// Largest period to consider; defaults to the sequence length.
    #[arg(long)]
    pub p_max: Option<usize>,
    /// Largest gap between consecutive matched occurrences; defaults to
    /// twice the period ceiling.
    #[arg(long)]
    pub d_max: Option<usize>,
    /// Minimum span a periodic segment must cover; defaults to twice the
    /// period.
    #[arg(long)]
    pub min_seg_len: Option<usize>,
    /// Report at most this many hits.
    #[arg(long, default_value_t = 50)]
    pub top_n: usize,

    /// Worker threads for period mining. The output never depends on this.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Write the hit rows as CSV, plus .pft.csv and .manifest.json sidecars.
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    /// Write the full report (manifest, frequency table, hits) as JSON.
    #[arg(long)]
    pub out_json: Option<PathBuf>,
    /// Print the pattern tree before the report.
    #[arg(long)]
    pub dump_tree: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated series lengths to sweep at a fixed period.
    #[arg(long, value_delimiter = ',')]
    pub lengths: Vec<usize>,
    /// Comma-separated periods to sweep at a fixed length.
    #[arg(long, value_delimiter = ',')]
    pub periods: Vec<usize>,
    /// Series length used by a period sweep.
    #[arg(long, default_value_t = 2000)]
    pub length: usize,
    /// Planted period used by a length sweep.
    #[arg(long, default_value_t = 50)]
    pub period: usize,
    /// Seed for the generated sequences.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Background alphabet size (the planted glyph comes on top).
    #[arg(long, default_value_t = 4)]
    pub alphabet: usize,
    /// Pattern length bound shared by both algorithms.
    #[arg(long, default_value_t = 8)]
    pub l_max: usize,
    /// Repetitions per point; the fastest run is reported.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    /// Write the timing CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiscretizeArgs {
    /// Numeric CSV file to read.
    #[arg(long)]
    pub input: PathBuf,
    /// Symbol file to write; a .spec.json sidecar lands next to it.
    #[arg(long)]
    pub output: PathBuf,
    /// Column to discretize, by header name or 0-based index.
    #[arg(long)]
    pub column: Option<String>,
    /// Number of equal-width bins.
    #[arg(long, default_value_t = 8)]
    pub bins: usize,
}

pub fn run(cli: Cli) -> CommandResult {
    match &cli.command {
        Command::Mine(args) => cmd_mine(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Discretize(args) => cmd_discretize(args),
    }
}

fn runtime<E: Into<anyhow::Error>>(err: E) -> CliError {
    CliError::Runtime(err.into())
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_bins(bins: usize) -> Result<(), CliError> {
    if bins == 0 || bins > sequence::MAX_ALPHABET {
        return Err(usage(format!("--bins {bins} is outside 1..={}", sequence::MAX_ALPHABET)));
    }
    Ok(())
}

impl MineArgs {
    /// Validates every flag that is checkable without the input data.
    fn mining_config(&self) -> Result<MiningConfig, CliError> {
        if self.min_sup == 0 {
            return Err(usage("--min-sup must be at least 1"));
        }
        if self.max_pattern_len == 0 {
            return Err(usage("--max-pattern-len must be at least 1"));
        }
        if self.threads == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        if !(self.min_conf.is_finite() && (0.0..=1.0).contains(&self.min_conf)) {
            return Err(usage("--min-conf must lie in [0, 1]"));
        }
        let cfg = MiningConfig {
            conf_min: self.conf_min,
            surprise_min: self.surprise_min,
            tolerance: self.tolerance,
            p_min: self.p_min,
            p_max: self.p_max,
            d_max: self.d_max,
            min_seg_len: self.min_seg_len,
            mad: MadParams { b: self.mad_b, k: self.mad_k },
            mad_gate: !self.no_mad_gate,
            top_n: self.top_n,
        };
        cfg.validate().map_err(|err| usage(err.to_string()))?;
        Ok(cfg)
    }
}

fn cmd_mine(args: &MineArgs) -> CommandResult {
    let cfg = args.mining_config()?;
    let format = args.format.unwrap_or_else(|| io::infer_format(&args.input));
    if format == InputFormat::Csv {
        check_bins(args.bins)?;
    }

    let parse_start = Instant::now();
    let loaded = io::load_input(&args.input, Some(format), args.column.as_deref(), args.bins)
        .map_err(runtime)?;
    let parse_ms = parse_start.elapsed().as_secs_f64() * 1e3;

    let level_cap =
        default_level_cap(loaded.seq.len()).map_err(runtime)?.min(args.max_pattern_len);
    let constraints = TreeConstraints {
        level_cap,
        min_sup: args.min_sup,
        monotonic: args.monotonic,
        min_conf: args.min_conf,
    };

    let mut outcome =
        runner::mine_sequence(&loaded.seq, &constraints, &cfg, args.threads).map_err(runtime)?;
    outcome.timings.parse_ms = parse_ms;
    outcome.timings.total_ms += parse_ms;

    let pft_rows = report::pft_rows(&outcome.pft);
    let hit_rows = report::hit_rows(&outcome.hits, loaded.seq.alphabet());
    let run_manifest = RunManifest {
        tool: ToolInfo::current(),
        input: InputInfo {
            path: args.input.display().to_string(),
            format,
            column: args.column.clone(),
            bins: (format == InputFormat::Csv).then_some(args.bins),
        },
        discretization: loaded.discretization,
        constraints,
        mining: cfg,
        threads: args.threads,
        timings: outcome.timings,
    };

    if args.dump_tree {
        println!("{}", outcome.tree.dump(loaded.seq.alphabet()));
    }
    print!("{}", report::render_stdout(&pft_rows, &hit_rows)?);

    if let Some(path) = &args.out_csv {
        write_file(path, &report::to_csv(&report::HIT_HEADER, &hit_rows)?)?;
        write_file(&path.with_extension("pft.csv"), &report::to_csv(&report::PFT_HEADER, &pft_rows)?)?;
        write_file(&path.with_extension("manifest.json"), &to_json(&run_manifest)?)?;
    }
    if let Some(path) = &args.out_json {
        write_file(path, &report::render_json(&run_manifest, &pft_rows, &hit_rows)?)?;
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> CommandResult {
    if args.alphabet == 0 || args.alphabet > 25 {
        return Err(usage("--alphabet must lie in 1..=25; one letter is reserved for the plant"));
    }
    if args.l_max == 0 {
        return Err(usage("--l-max must be at least 1"));
    }
    if args.repeats == 0 {
        return Err(usage("--repeats must be at least 1"));
    }
    let points =
        bench::plan(&args.lengths, &args.periods, args.length, args.period).map_err(usage)?;
    let settings = bench::BenchSettings {
        seed: args.seed,
        alphabet: args.alphabet,
        l_max: args.l_max,
        repeats: args.repeats,
    };
    let rows = bench::sweep(&points, &settings)?;
    let csv = report::to_csv(&bench::BENCH_HEADER, &rows)?;
    match &args.out {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_discretize(args: &DiscretizeArgs) -> CommandResult {
    check_bins(args.bins)?;
    let values = io::read_numeric_column(&args.input, args.column.as_deref()).map_err(runtime)?;
    let (seq, spec) = sequence::discretize(&values, args.bins).map_err(runtime)?;
    if spec.observed_min == spec.observed_max {
        eprintln!(
            "warning: {} is constant; every value maps to one symbol",
            args.column.as_deref().unwrap_or("the column")
        );
    }

    let mut text = seq.render();
    text.push('\n');
    write_file(&args.output, &text)?;

    let sidecar = DiscretizeManifest {
        tool: ToolInfo::current(),
        input: InputInfo {
            path: args.input.display().to_string(),
            format: InputFormat::Csv,
            column: args.column.clone(),
            bins: Some(args.bins),
        },
        discretization: spec,
    };
    write_file(&args.output.with_extension("spec.json"), &to_json(&sidecar)?)?;
    Ok(())
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(CliError::Runtime)
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .context("serializing manifest")
        .map_err(CliError::Runtime)?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mine_args(extra: &[&str]) -> MineArgs {
        let mut argv = vec!["rarepat", "mine", "--input", "s.txt"];
        argv.extend_from_slice(extra);
        match Cli::try_parse_from(argv).unwrap().command {
            Command::Mine(args) => args,
            _ => unreachable!(),
        }
    }

    #[test]
    fn defaults_match_the_documented_contract() {
        let args = mine_args(&[]);
        assert_eq!(args.bins, 8);
        assert_eq!(args.min_sup, 2);
        assert!(!args.monotonic);
        assert_eq!(args.max_pattern_len, 32);
        assert_eq!(args.mad_k, 1.0);
        assert_eq!(args.mad_b, 1.4826);
        assert_eq!(args.threads, 1);
        let cfg = args.mining_config().unwrap();
        assert_eq!(cfg, MiningConfig::default());
    }

    #[test]
    fn bad_flag_values_are_usage_errors() {
        for extra in [
            ["--conf-min", "1.5"],
            ["--min-sup", "0"],
            ["--threads", "0"],
            ["--tolerance", "1"],
            ["--max-pattern-len", "0"],
        ] {
            let err = mine_args(&extra).mining_config().unwrap_err();
            assert_eq!(err.exit_code(), 2, "{extra:?}");
        }
    }

    #[test]
    fn gate_flag_inverts_into_the_config() {
        let cfg = mine_args(&["--no-mad-gate"]).mining_config().unwrap();
        assert!(!cfg.mad_gate);
    }

    #[test]
    fn unknown_flags_fail_to_parse() {
        assert!(Cli::try_parse_from(["rarepat", "mine", "--input", "s.txt", "--bogus"]).is_err());
        assert!(Cli::try_parse_from(["rarepat"]).is_err());
    }
}
