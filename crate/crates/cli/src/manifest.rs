//! Run manifests. Every report embeds (or sits next to) the exact
//! configuration that produced it, so [`replay`] can regenerate the same
//! rows from the original input file.

use std::path::Path;

use anyhow::{ensure, Context, Result};
use rarepat_core::sequence::DiscretizationSpec;
use rarepat_core::{MiningConfig, TreeConstraints};
use serde::{Deserialize, Serialize};

use crate::io::{self, InputFormat};
use crate::report::{self, HitRow, PftRow};
use crate::runner;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub path: String,
    pub format: InputFormat,
    /// CSV column selector (name or 0-based index), when the input is CSV.
    pub column: Option<String>,
    /// Discretization bin count, when the input is CSV.
    pub bins: Option<usize>,
}

/// Wall-clock milliseconds per pipeline stage. Informational only: replays
/// compare rows, never timings.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StageTimings {
    pub parse_ms: f64,
    pub tree_ms: f64,
    pub stats_ms: f64,
    pub mine_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: ToolInfo,
    pub input: InputInfo,
    pub discretization: Option<DiscretizationSpec>,
    /// Tree constraints as resolved against the input length.
    pub constraints: TreeConstraints,
    pub mining: MiningConfig,
    pub threads: usize,
    pub timings: StageTimings,
}

/// Sidecar written by the discretize command next to its symbol file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretizeManifest {
    pub tool: ToolInfo,
    pub input: InputInfo,
    pub discretization: DiscretizationSpec,
}

/// Re-runs the pipeline a manifest describes against its recorded input
/// file and returns the regenerated report rows.
pub fn replay(manifest: &RunManifest) -> Result<(Vec<PftRow>, Vec<HitRow>)> {
    let path = Path::new(&manifest.input.path);
    let loaded = io::load_input(
        path,
        Some(manifest.input.format),
        manifest.input.column.as_deref(),
        manifest.input.bins.unwrap_or(8),
    )
    .with_context(|| format!("replaying input {}", manifest.input.path))?;
    ensure!(
        loaded.discretization == manifest.discretization,
        "input discretizes differently now; the file changed since the manifest was written"
    );
    let outcome =
        runner::mine_sequence(&loaded.seq, &manifest.constraints, &manifest.mining, manifest.threads)?;
    Ok((
        report::pft_rows(&outcome.pft),
        report::hit_rows(&outcome.hits, loaded.seq.alphabet()),
    ))
}

pub fn read_run_manifest(path: &Path) -> Result<RunManifest> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading manifest {}", path.display()))?;
    let manifest = serde_json::from_str(&text)
        .with_context(|| format!("parsing manifest {}", path.display()))?;
    Ok(manifest)
}
