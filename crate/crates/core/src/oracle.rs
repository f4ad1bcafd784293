//! Exhaustive reference implementation used to validate the tree-backed
//! pipeline.
//!
//! [`reference_mine`] enumerates every substring up to a length bound by
//! direct nested scanning, with no trie involved, then feeds the resulting
//! pattern map through the same statistics, gating, period-mining, and
//! scoring code as the production pipeline. Differences between the two can
//! therefore only come from tree construction or pruning, which is exactly
//! what [`assert_equivalence`] isolates.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::mining::{self, MiningConfig, PeriodicHit, PipelineOutput};
use crate::sequence::{Alphabet, Symbol, SymbolSequence};
use crate::stats::{self, FrequencyStats};
use crate::{Error, Result};

/// Output of the reference miner.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Every substring of length `1..=l_max` with support at least
    /// `min_sup`, mapped to its occurrence positions.
    pub patterns: BTreeMap<Vec<Symbol>, Vec<usize>>,
    pub pft: Vec<FrequencyStats>,
    pub hits: Vec<PeriodicHit>,
}

/// Mines `seq` exhaustively: every substring of length up to `l_max` is
/// collected by nested scan, filtered by `min_sup`, and run through the
/// shared gate, period-mining, and scoring stages under `cfg`.
pub fn reference_mine(
    seq: &SymbolSequence,
    l_max: usize,
    min_sup: usize,
    cfg: &MiningConfig,
) -> Result<OracleResult> {
    if l_max == 0 {
        return Err(Error::InvalidConstraints("length bound must be at least 1"));
    }
    if min_sup == 0 {
        return Err(Error::InvalidConstraints("minimum support must be at least 1"));
    }
    let n = seq.len();
    cfg.validate_for_len(n)?;

    let symbols = seq.symbols();
    let mut patterns: BTreeMap<Vec<Symbol>, Vec<usize>> = BTreeMap::new();
    for len in 1..=l_max.min(n) {
        for start in 0..=(n - len) {
            patterns
                .entry(symbols[start..start + len].to_vec())
                .or_default()
                .push(start);
        }
    }
    patterns.retain(|_, positions| positions.len() >= min_sup);

    let pft =
        stats::pft_from_lengths(patterns.iter().map(|(p, pos)| (p.len(), pos.len())), &cfg.mad)?;
    let candidates = mining::candidates_from_entries(
        patterns.iter().map(|(p, pos)| (p.clone(), pos.len(), pos.as_slice())),
        &pft,
        cfg,
    )?;
    let mut mined = Vec::with_capacity(candidates.len());
    for candidate in candidates {
        let segments = mining::mine_periods(&candidate.positions, candidate.pattern.len(), n, cfg)?;
        mined.push((candidate, segments));
    }
    let hits = mining::score_and_select(mined, cfg)?;
    Ok(OracleResult { patterns, pft, hits })
}

/// First divergence between a reference run and a pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub enum EquivalenceError {
    PatternMissing { pattern: String, only_in: &'static str },
    PositionsDiffer { pattern: String },
    TableSizeDiffers { oracle: usize, pipeline: usize },
    TableRowDiffers { pattern_len: usize, field: &'static str },
    HitCountDiffers { oracle: usize, pipeline: usize },
    HitDiffers { index: usize, field: &'static str },
}

impl core::fmt::Display for EquivalenceError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EquivalenceError::PatternMissing { pattern, only_in } => {
                write!(f, "pattern {pattern:?} present only in the {only_in} result")
            }
            EquivalenceError::PositionsDiffer { pattern } => {
                write!(f, "position vectors differ for pattern {pattern:?}")
            }
            EquivalenceError::TableSizeDiffers { oracle, pipeline } => {
                write!(f, "frequency table has {oracle} rows in the oracle, {pipeline} in the pipeline")
            }
            EquivalenceError::TableRowDiffers { pattern_len, field } => {
                write!(f, "frequency row for length {pattern_len} differs in {field}")
            }
            EquivalenceError::HitCountDiffers { oracle, pipeline } => {
                write!(f, "{oracle} oracle hits vs {pipeline} pipeline hits")
            }
            EquivalenceError::HitDiffers { index, field } => {
                write!(f, "hit #{index} differs in {field}")
            }
        }
    }
}

impl core::error::Error for EquivalenceError {}

/// Compares a reference run against a pipeline run: retained patterns with
/// their positions, the frequency table, and the final hit list must all
/// agree. Returns the first divergence found.
///
/// Both runs must share the same length bound, minimum support, and mining
/// configuration, and the tree's monotonic prune must be off; the reference
/// has no equivalent of it.
pub fn assert_equivalence(
    oracle: &OracleResult,
    pipeline: &PipelineOutput,
    alphabet: &Alphabet,
) -> core::result::Result<(), EquivalenceError> {
    let tree_patterns: BTreeMap<Vec<Symbol>, &[usize]> =
        pipeline.tree.entries().map(|e| (e.pattern, e.positions)).collect();

    for (pattern, positions) in &oracle.patterns {
        match tree_patterns.get(pattern) {
            None => {
                return Err(EquivalenceError::PatternMissing {
                    pattern: alphabet.render(pattern),
                    only_in: "oracle",
                })
            }
            Some(tree_positions) if *tree_positions != positions.as_slice() => {
                return Err(EquivalenceError::PositionsDiffer {
                    pattern: alphabet.render(pattern),
                })
            }
            Some(_) => {}
        }
    }
    for pattern in tree_patterns.keys() {
        if !oracle.patterns.contains_key(pattern) {
            return Err(EquivalenceError::PatternMissing {
                pattern: alphabet.render(pattern),
                only_in: "pipeline",
            });
        }
    }

    if oracle.pft.len() != pipeline.pft.len() {
        return Err(EquivalenceError::TableSizeDiffers {
            oracle: oracle.pft.len(),
            pipeline: pipeline.pft.len(),
        });
    }
    for (a, b) in oracle.pft.iter().zip(&pipeline.pft) {
        let field = if a.pattern_len != b.pattern_len {
            Some("pattern_len")
        } else if a.n_patterns != b.n_patterns {
            Some("n_patterns")
        } else if a.mean != b.mean {
            Some("mean")
        } else if a.median != b.median {
            Some("median")
        } else if a.mad != b.mad {
            Some("mad")
        } else {
            None
        };
        if let Some(field) = field {
            return Err(EquivalenceError::TableRowDiffers { pattern_len: a.pattern_len, field });
        }
    }

    if oracle.hits.len() != pipeline.hits.len() {
        return Err(EquivalenceError::HitCountDiffers {
            oracle: oracle.hits.len(),
            pipeline: pipeline.hits.len(),
        });
    }
    for (index, (a, b)) in oracle.hits.iter().zip(&pipeline.hits).enumerate() {
        let field = if a.pattern != b.pattern {
            Some("pattern")
        } else if a.period != b.period {
            Some("period")
        } else if a.start != b.start {
            Some("start")
        } else if a.end != b.end {
            Some("end")
        } else if a.count != b.count {
            Some("count")
        } else if a.f_max != b.f_max {
            Some("f_max")
        } else if a.confidence != b.confidence {
            Some("confidence")
        } else if a.surprise != b.surprise {
            Some("surprise")
        } else {
            None
        };
        if let Some(field) = field {
            return Err(EquivalenceError::HitDiffers { index, field });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mining::run_pipeline;
    use crate::pattern_tree::TreeConstraints;
    use crate::sequence::{parse_symbols, ParseMode};

    fn constraints(level_cap: usize, min_sup: usize) -> TreeConstraints {
        TreeConstraints { level_cap, min_sup, monotonic: false, min_conf: 0.5 }
    }

    fn permissive() -> MiningConfig {
        MiningConfig {
            conf_min: 0.0,
            surprise_min: 0.0,
            min_seg_len: Some(0),
            ..MiningConfig::default()
        }
    }

    #[test]
    fn reference_positions_match_hand_scan() {
        let seq = parse_symbols("xyaexybdxyzdxybdxyzdxbyyxyzy", ParseMode::Plain).unwrap();
        let result = reference_mine(&seq, 2, 1, &permissive()).unwrap();
        let xy: Vec<Symbol> =
            "xy".chars().map(|c| seq.alphabet().symbol(c).unwrap()).collect();
        assert_eq!(result.patterns[&xy], [0, 4, 8, 12, 16, 24]);
    }

    #[test]
    fn tree_and_reference_agree_on_abab() {
        let seq = parse_symbols("abab", ParseMode::Plain).unwrap();
        let cfg = permissive();
        let pipeline = run_pipeline(&seq, &constraints(2, 1), &cfg).unwrap();
        let oracle = reference_mine(&seq, 2, 1, &cfg).unwrap();
        assert_eq!(assert_equivalence(&oracle, &pipeline, seq.alphabet()), Ok(()));
    }

    #[test]
    fn support_threshold_mismatch_is_reported() {
        let seq = parse_symbols("abab", ParseMode::Plain).unwrap();
        let cfg = permissive();
        let pipeline = run_pipeline(&seq, &constraints(2, 2), &cfg).unwrap();
        let oracle = reference_mine(&seq, 2, 1, &cfg).unwrap();
        assert_eq!(
            assert_equivalence(&oracle, &pipeline, seq.alphabet()),
            Err(EquivalenceError::PatternMissing { pattern: "ba".into(), only_in: "oracle" })
        );
    }

    #[test]
    fn reference_validates_bounds() {
        let seq = parse_symbols("abab", ParseMode::Plain).unwrap();
        assert!(reference_mine(&seq, 0, 1, &permissive()).is_err());
        assert!(reference_mine(&seq, 2, 0, &permissive()).is_err());
    }

    #[test]
    fn length_bound_may_exceed_sequence_length() {
        let seq = parse_symbols("aa", ParseMode::Plain).unwrap();
        let result = reference_mine(&seq, 10, 1, &permissive()).unwrap();
        // Substring lengths clamp at the sequence length.
        assert_eq!(result.patterns.len(), 2);
    }
}
