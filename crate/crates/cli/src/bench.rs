//! Benchmark sweeps: the tree-backed miner against the exhaustive reference
//! on generated sequences, reported as CSV timing rows.

use std::hint::black_box;
use std::time::Instant;

use anyhow::Result;
use rarepat_core::sequence::{parse_symbols, ParseMode};
use rarepat_core::{mining, oracle, MiningConfig, TreeConstraints};
use serde::Serialize;

use crate::gen;

pub const BENCH_HEADER: [&str; 4] = ["series_len", "period", "algo", "millis"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepPoint {
    pub series_len: usize,
    pub period: usize,
}

/// One timing measurement. Field order matches [`BENCH_HEADER`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub series_len: usize,
    pub period: usize,
    pub algo: &'static str,
    pub millis: String,
}

#[derive(Debug, Clone, Copy)]
pub struct BenchSettings {
    pub seed: u64,
    /// Background alphabet size; the planted glyph comes on top of it.
    pub alphabet: usize,
    /// Pattern length bound shared by both algorithms.
    pub l_max: usize,
    /// Repetitions per point; the reported time is the fastest.
    pub repeats: usize,
}

/// Resolves the sweep axis from the flag values. Exactly one of `lengths`
/// and `periods` may be given; neither means a default length sweep.
pub fn plan(
    lengths: &[usize],
    periods: &[usize],
    fixed_len: usize,
    fixed_period: usize,
) -> Result<Vec<SweepPoint>, String> {
    if !lengths.is_empty() && !periods.is_empty() {
        return Err("pick one sweep axis: --lengths or --periods, not both".into());
    }
    let points: Vec<SweepPoint> = if !periods.is_empty() {
        periods.iter().map(|&p| SweepPoint { series_len: fixed_len, period: p }).collect()
    } else if !lengths.is_empty() {
        lengths.iter().map(|&n| SweepPoint { series_len: n, period: fixed_period }).collect()
    } else {
        [1000, 5000, 10000]
            .iter()
            .map(|&n| SweepPoint { series_len: n, period: fixed_period })
            .collect()
    };
    for point in &points {
        if point.series_len < 2 {
            return Err(format!("series length {} is too short to mine", point.series_len));
        }
        if point.period == 0 {
            return Err("period 0 is not a period".into());
        }
        if point.period >= point.series_len {
            return Err(format!(
                "period {} does not fit a series of length {}",
                point.period, point.series_len
            ));
        }
    }
    Ok(points)
}

fn timed(run: impl FnOnce() -> Result<()>) -> Result<f64> {
    let start = Instant::now();
    run()?;
    Ok(start.elapsed().as_secs_f64() * 1e3)
}

/// Runs both miners at every sweep point and returns two rows per point,
/// tree first. Sequence generation is a pure function of the settings and
/// the point order, so a fixed seed reproduces the exact inputs.
pub fn sweep(points: &[SweepPoint], settings: &BenchSettings) -> Result<Vec<BenchRow>> {
    let mut rng = gen::rng(settings.seed);
    let mut rows = Vec::with_capacity(points.len() * 2);
    let cfg = MiningConfig::default();

    for point in points {
        let background = gen::random(&mut rng, point.series_len, settings.alphabet);
        let planted = gen::plant(background, point.period, point.period / 2, 'z');
        let seq = parse_symbols(&planted.text, ParseMode::Plain)?;
        let level_cap = settings.l_max.min((seq.len() / 2).max(1));
        let constraints =
            TreeConstraints { level_cap, min_sup: 2, monotonic: false, min_conf: 0.5 };

        let mut tree_ms = f64::INFINITY;
        let mut oracle_ms = f64::INFINITY;
        for _ in 0..settings.repeats.max(1) {
            tree_ms = tree_ms.min(timed(|| {
                black_box(mining::run_pipeline(&seq, &constraints, &cfg)?);
                Ok(())
            })?);
            oracle_ms = oracle_ms.min(timed(|| {
                black_box(oracle::reference_mine(&seq, level_cap, constraints.min_sup, &cfg)?);
                Ok(())
            })?);
        }

        for (algo, ms) in [("tree", tree_ms), ("oracle", oracle_ms)] {
            rows.push(BenchRow {
                series_len: point.series_len,
                period: point.period,
                algo,
                millis: format!("{ms:.3}"),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_plan_is_the_three_point_length_sweep() {
        let points = plan(&[], &[], 2000, 50).unwrap();
        assert_eq!(points.len(), 3);
        assert_eq!(points[0], SweepPoint { series_len: 1000, period: 50 });
        assert_eq!(points[2], SweepPoint { series_len: 10000, period: 50 });
    }

    #[test]
    fn period_sweep_holds_the_length_fixed() {
        let points = plan(&[], &[10, 20, 40], 500, 50).unwrap();
        assert!(points.iter().all(|p| p.series_len == 500));
        assert_eq!(points.iter().map(|p| p.period).collect::<Vec<_>>(), vec![10, 20, 40]);
    }

    #[test]
    fn invalid_sweeps_are_rejected() {
        assert!(plan(&[1000], &[10], 2000, 50).is_err());
        assert!(plan(&[0], &[], 2000, 50).is_err());
        assert!(plan(&[], &[0], 2000, 50).is_err());
        assert!(plan(&[], &[600], 500, 50).is_err());
        assert!(plan(&[40], &[], 2000, 50).is_err());
    }

    #[test]
    fn sweep_emits_two_rows_per_point_tree_first() {
        let points = plan(&[], &[20, 30], 200, 50).unwrap();
        let settings = BenchSettings { seed: 7, alphabet: 4, l_max: 4, repeats: 1 };
        let rows = sweep(&points, &settings).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].algo, "tree");
        assert_eq!(rows[1].algo, "oracle");
        assert_eq!(rows[0].series_len, 200);
        assert_eq!(rows[0].period, 20);
        assert!(rows.iter().all(|r| r.millis.parse::<f64>().unwrap() >= 0.0));
    }
}
