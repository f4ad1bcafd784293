//! Drives the core pipeline stage by stage, measuring each one and fanning
//! candidate mining out over a bounded number of threads.
//!
//! Parallelism never changes the output: candidates are split into
//! contiguous chunks, each worker mines its chunk in order, and results are
//! reassembled in chunk order before scoring. The merged list is identical
//! to what a single thread produces.

use std::time::Instant;

use anyhow::Result;
use rarepat_core::mining::{self, Candidate, Segment};
use rarepat_core::pattern_tree::build_tree;
use rarepat_core::stats;
use rarepat_core::{FrequencyStats, MiningConfig, PatternTree, PeriodicHit, SymbolSequence, TreeConstraints};

use crate::manifest::StageTimings;

/// Everything one mining run produces, plus how long each stage took.
/// `timings.parse_ms` is the caller's to fill; the runner never sees the
/// raw input.
#[derive(Debug)]
pub struct MineOutcome {
    pub tree: PatternTree,
    pub pft: Vec<FrequencyStats>,
    pub hits: Vec<PeriodicHit>,
    pub timings: StageTimings,
}

fn millis_since(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs tree construction, the frequency table, the outlier gate, period
/// mining, and scoring. `threads` caps the workers used for period mining;
/// values of 0 and 1 both mean sequential.
pub fn mine_sequence(
    seq: &SymbolSequence,
    constraints: &TreeConstraints,
    cfg: &MiningConfig,
    threads: usize,
) -> Result<MineOutcome> {
    let n = seq.len();
    cfg.validate_for_len(n)?;
    let mut timings = StageTimings::default();
    let run_start = Instant::now();

    let stage = Instant::now();
    let tree = build_tree(seq, constraints)?;
    timings.tree_ms = millis_since(stage);

    let stage = Instant::now();
    let pft = stats::compute_pft(&tree, &cfg.mad)?;
    timings.stats_ms = millis_since(stage);

    let stage = Instant::now();
    let candidates = mining::candidate_outliers(&tree, &pft, cfg)?;
    let mined = mine_candidates(candidates, n, cfg, threads)?;
    let hits = mining::score_and_select(mined, cfg)?;
    timings.mine_ms = millis_since(stage);

    timings.total_ms = millis_since(run_start);
    Ok(MineOutcome { tree, pft, hits, timings })
}

fn mine_candidates(
    candidates: Vec<Candidate>,
    n: usize,
    cfg: &MiningConfig,
    threads: usize,
) -> Result<Vec<(Candidate, Vec<Segment>)>> {
    let workers = threads.max(1).min(candidates.len().max(1));
    let segments: Vec<rarepat_core::Result<Vec<Segment>>> = if workers <= 1 {
        candidates
            .iter()
            .map(|c| mining::mine_periods(&c.positions, c.pattern.len(), n, cfg))
            .collect()
    } else {
        let chunk = candidates.len().div_ceil(workers);
        std::thread::scope(|scope| {
            let handles: Vec<_> = candidates
                .chunks(chunk)
                .map(|batch| {
                    scope.spawn(move || {
                        batch
                            .iter()
                            .map(|c| mining::mine_periods(&c.positions, c.pattern.len(), n, cfg))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|handle| handle.join().expect("mining worker panicked"))
                .collect()
        })
    };
    candidates
        .into_iter()
        .zip(segments)
        .map(|(candidate, result)| Ok((candidate, result?)))
        .collect()
}
