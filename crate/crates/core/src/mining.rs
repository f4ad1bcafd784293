//! Outlier-pattern selection and tolerance-window periodicity mining.
//!
//! Mining proceeds in three steps over a finalized tree and its frequency
//! table:
//!
//! * [`candidate_outliers`] keeps patterns whose frequency is strictly below
//!   `k * MAD` of their length class (the rare ones) and whose occurrence
//!   span is wide enough to possibly hold a periodic segment.
//! * [`mine_periods`] scans each candidate's position vector for periodic
//!   segments: every (anchor occurrence, later occurrence) pair proposes a
//!   period, and a slot walk collects occurrences sitting within `tolerance`
//!   of the ideal grid.
//! * [`score_and_select`] converts segments to confidence via the maximum
//!   repetition count that fits the segment, applies the surprise and
//!   confidence thresholds, and ranks what is left.
//!
//! Confidence of a segment starting at `i_st`, ending at `i_end`, with
//! period `p` and pattern length `L` is `f / f_max` where
//! `f_max = (i_end + 1 - L - i_st) / p + 1` counts the slots the segment can
//! hold. Surprise of a pattern with frequency `f` against its length-class
//! mean is `1 - f / mu`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::pattern_tree::{build_tree, PatternTree, TreeConstraints};
use crate::sequence::{Symbol, SymbolSequence};
use crate::stats::{self, FrequencyStats, MadParams};
use crate::{Error, Result};

/// Thresholds and windows for one mining run. Fields left `None` resolve
/// against the sequence at run time.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MiningConfig {
    /// Keep a hit only when confidence is strictly greater than this.
    pub conf_min: f64,
    /// Keep a hit only when surprise is strictly greater than this. Ignored
    /// while `mad_gate` is off: with outlier selection disabled the run
    /// ranks plain frequent patterns, where a surprise cut has no meaning.
    pub surprise_min: f64,
    /// Slot tolerance `t`: an occurrence matches a slot when it lies within
    /// `t` positions of the ideal grid point. Must stay below `p_min` so
    /// neighbouring slots cannot trade occurrences freely.
    pub tolerance: usize,
    /// Smallest period to consider, at least 1.
    pub p_min: usize,
    /// Largest period to consider; `None` means the sequence length.
    pub p_max: Option<usize>,
    /// A segment ends once the gap between consecutive matched occurrences
    /// exceeds this; `None` means twice the resolved `p_max`.
    pub d_max: Option<usize>,
    /// Minimum segment span. `None` is period-relative: a segment at period
    /// `p` must span at least `2p` (and the pre-period candidate span gate
    /// uses `2 * p_min`). An explicit value is absolute in both places.
    pub min_seg_len: Option<usize>,
    /// MAD scale constant and gate multiplier.
    pub mad: MadParams,
    /// The outlier gate itself. Disabling it ranks every retained pattern by
    /// confidence alone, which reproduces plain frequent-pattern mining.
    pub mad_gate: bool,
    /// Report at most this many hits.
    pub top_n: usize,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig {
            conf_min: 0.5,
            surprise_min: 0.5,
            tolerance: 0,
            p_min: 1,
            p_max: None,
            d_max: None,
            min_seg_len: None,
            mad: MadParams::default(),
            mad_gate: true,
            top_n: 50,
        }
    }
}

impl MiningConfig {
    /// Checks every field that does not depend on the sequence length.
    pub fn validate(&self) -> Result<()> {
        if !(self.conf_min.is_finite() && (0.0..=1.0).contains(&self.conf_min)) {
            return Err(Error::InvalidConfig("conf_min must lie in [0, 1]"));
        }
        if !(self.surprise_min.is_finite() && (0.0..=1.0).contains(&self.surprise_min)) {
            return Err(Error::InvalidConfig("surprise_min must lie in [0, 1]"));
        }
        if self.p_min == 0 {
            return Err(Error::InvalidConfig("p_min must be at least 1"));
        }
        if let Some(p_max) = self.p_max {
            if p_max < self.p_min {
                return Err(Error::InvalidConfig("p_max must not be below p_min"));
            }
        }
        if self.tolerance >= self.p_min {
            return Err(Error::InvalidConfig("tolerance must be smaller than p_min"));
        }
        if self.top_n == 0 {
            return Err(Error::InvalidConfig("top_n must be at least 1"));
        }
        self.mad.validate()
    }

    /// Full validation against a concrete sequence length.
    pub fn validate_for_len(&self, n: usize) -> Result<()> {
        self.validate()?;
        if n > 0 {
            if let Some(p_max) = self.p_max {
                if p_max > n {
                    return Err(Error::InvalidConfig("p_max exceeds sequence length"));
                }
            }
        }
        Ok(())
    }

    /// Effective period ceiling for a length-`n` sequence.
    pub fn resolved_p_max(&self, n: usize) -> usize {
        self.p_max.unwrap_or(n)
    }

    /// Effective occurrence-gap ceiling for a length-`n` sequence.
    pub fn resolved_d_max(&self, n: usize) -> usize {
        self.d_max.unwrap_or(2 * self.resolved_p_max(n))
    }

    /// Span floor for emitted segments at period `p`.
    fn segment_span_floor(&self, p: usize) -> usize {
        self.min_seg_len.unwrap_or(2 * p)
    }

    /// Span floor for the pre-period candidate gate, where no period exists
    /// yet; the weakest requirement any admissible period could impose.
    fn candidate_span_floor(&self) -> usize {
        self.min_seg_len.unwrap_or(2 * self.p_min)
    }
}

/// A retained pattern that survived the outlier gate.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub pattern: Vec<Symbol>,
    /// Start index of every occurrence, strictly increasing.
    pub positions: Vec<usize>,
    /// Global occurrence count; equals `positions.len()`.
    pub frequency: usize,
    /// `1 - frequency / mean(length class)`.
    pub surprise: f64,
}

/// A periodic run of occurrences of one pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub period: usize,
    /// Index of the first matched occurrence.
    pub start: usize,
    /// Last sequence index covered: last matched occurrence plus pattern
    /// length minus one.
    pub end: usize,
    /// Matched occurrences in this segment; never exceeds the slot count
    /// between `start` and `end`.
    pub count: usize,
}

/// One reported hit: a candidate pattern with one of its periodic segments.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicHit {
    pub pattern: Vec<Symbol>,
    pub period: usize,
    pub start: usize,
    pub end: usize,
    /// Matched occurrences within the segment.
    pub count: usize,
    /// Slots the segment could hold; `count <= f_max` always.
    pub f_max: usize,
    /// `count / f_max`, in `(0, 1]`.
    pub confidence: f64,
    /// Surprise of the pattern (not segment-specific).
    pub surprise: f64,
}

/// Everything a pipeline run produces.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub tree: PatternTree,
    pub pft: Vec<FrequencyStats>,
    pub hits: Vec<PeriodicHit>,
}

/// Maximum number of pattern repetitions that fit a segment: the count of
/// slots `i_st + k * p` whose occurrence would still end inside the segment.
///
/// # Errors
///
/// [`Error::InvalidSegment`] when `period` is zero or the segment cannot
/// hold a single occurrence; [`Error::InvalidPattern`] for a zero-length
/// pattern.
pub fn f_max(i_st: usize, i_end: usize, pattern_len: usize, period: usize) -> Result<usize> {
    if pattern_len == 0 {
        return Err(Error::InvalidPattern("pattern length must be at least 1"));
    }
    if period == 0 {
        return Err(Error::InvalidSegment("period must be at least 1"));
    }
    if i_end + 1 < i_st + pattern_len {
        return Err(Error::InvalidSegment("segment shorter than the pattern"));
    }
    Ok((i_end + 1 - pattern_len - i_st) / period + 1)
}

/// Slots on the grid `start + k * period` up to and including the one at or
/// before `last_occurrence`; both arguments are occurrence start indices.
fn slots_between(start: usize, last_occurrence: usize, period: usize) -> usize {
    (last_occurrence - start) / period + 1
}

/// Applies the outlier gate to every retained pattern of a tree.
///
/// A pattern qualifies when its frequency is strictly below `k * MAD` of its
/// length class (skipped when the gate is disabled) and its occurrence span
/// strictly exceeds the candidate span floor. Output is ordered by pattern
/// length, then lexicographically.
pub fn candidate_outliers(
    tree: &PatternTree,
    pft: &[FrequencyStats],
    cfg: &MiningConfig,
) -> Result<Vec<Candidate>> {
    candidates_from_entries(
        tree.entries().map(|e| (e.pattern, e.support, e.positions)),
        pft,
        cfg,
    )
}

/// Gate logic shared by the tree pipeline and the exhaustive reference
/// implementation, so equivalence tests isolate the tree as the unit under
/// test.
pub(crate) fn candidates_from_entries<'a>(
    entries: impl IntoIterator<Item = (Vec<Symbol>, usize, &'a [usize])>,
    pft: &[FrequencyStats],
    cfg: &MiningConfig,
) -> Result<Vec<Candidate>> {
    cfg.validate()?;
    let span_floor = cfg.candidate_span_floor();
    let mut out: Vec<Candidate> = Vec::new();
    for (pattern, support, positions) in entries {
        debug_assert_eq!(support, positions.len());
        let row = pft
            .iter()
            .find(|r| r.pattern_len == pattern.len())
            .ok_or(Error::InvalidStats("frequency table lacks a row for a pattern length"))?;
        if cfg.mad_gate && (support as f64) >= cfg.mad.k * row.mad {
            continue;
        }
        let span = match (positions.first(), positions.last()) {
            (Some(&first), Some(&last)) => last - first + pattern.len(),
            _ => continue,
        };
        if span <= span_floor {
            continue;
        }
        let surprise = stats::surprise(support as f64, row.mean)?;
        out.push(Candidate { pattern, positions: positions.to_vec(), frequency: support, surprise });
    }
    out.sort_by(|a, b| (a.pattern.len(), &a.pattern).cmp(&(b.pattern.len(), &b.pattern)));
    Ok(out)
}

/// Walks the slot grid `start + k * period` from one anchor occurrence and
/// returns the matched segment, or `None` when fewer than two occurrences
/// match.
///
/// Each slot takes at most one occurrence: the one closest to its grid
/// point among those within `tolerance`, strictly after the previous match,
/// and within `d_max` of it (ties go to the earlier occurrence). A slot
/// with no such occurrence is a hole; the walk continues until the window
/// floor is past `d_max` reach of the last match or past the last
/// occurrence. Growing the tolerance can therefore only add matches, never
/// end the walk earlier.
///
/// Occurrences matched early (before their grid point) can inflate the
/// count past the slot capacity of the walked span, by at most one; the
/// repair drops one interior match rather than shrinking the span.
pub fn match_slots(
    positions: &[usize],
    anchor_idx: usize,
    period: usize,
    pattern_len: usize,
    n: usize,
    cfg: &MiningConfig,
) -> Option<Segment> {
    let start = positions[anchor_idx];
    let last_position = *positions.last().expect("non-empty by anchor access");
    let t = cfg.tolerance;
    let d_max = cfg.resolved_d_max(n);

    debug_assert!(period >= 1 && t < period);
    debug_assert!(pattern_len >= 1);

    let mut matched: Vec<usize> = alloc::vec![start];
    let mut next = anchor_idx + 1;

    for k in 1usize.. {
        let expected = match k.checked_mul(period).and_then(|d| start.checked_add(d)) {
            Some(e) => e,
            None => break,
        };
        if expected > last_position + t {
            break;
        }
        let window_lo = expected.saturating_sub(t);
        let last = *matched.last().expect("anchor always matched");
        // Every occurrence this slot (or any later slot) could take lies at
        // or beyond window_lo; once that is out of d_max reach, stop.
        if window_lo > last + d_max {
            break;
        }
        while next < positions.len() && (positions[next] < window_lo || positions[next] <= last) {
            next += 1;
        }
        let mut pick = None;
        let mut best = usize::MAX;
        let mut i = next;
        while i < positions.len() && positions[i] <= expected + t {
            if positions[i] - last <= d_max {
                let d = positions[i].abs_diff(expected);
                if d < best {
                    best = d;
                    pick = Some(i);
                }
            }
            i += 1;
        }
        if let Some(i) = pick {
            matched.push(positions[i]);
            // Positions skipped over lie below the new match and can never
            // serve a later slot.
            next = i + 1;
        }
    }

    repair_overcount(&mut matched, period, d_max);

    if matched.len() < 2 {
        return None;
    }
    let last = *matched.last().unwrap();
    Some(Segment { period, start, end: last + pattern_len - 1, count: matched.len() })
}

/// Restores `count <= slot capacity of the span` after a walk whose early
/// matches overfilled it.
///
/// The walk matches strictly increasing slots, so the count exceeds the
/// capacity by at most one, and only when the final match ran early. The
/// dropped match is the latest interior one whose removal keeps neighbours
/// within `d_max`; when no interior match can go, the tail is popped until
/// the count fits the span it walks.
fn repair_overcount(matched: &mut Vec<usize>, period: usize, d_max: usize) {
    let start = matched[0];
    let slots = slots_between(start, *matched.last().unwrap(), period);
    if matched.len() <= slots {
        return;
    }
    debug_assert_eq!(matched.len(), slots + 1);
    for i in (1..matched.len() - 1).rev() {
        if matched[i + 1] - matched[i - 1] <= d_max {
            matched.remove(i);
            return;
        }
    }
    while matched.len() >= 2
        && matched.len() > slots_between(start, *matched.last().unwrap(), period)
    {
        matched.pop();
    }
}

/// Finds every periodic segment in one candidate's position vector.
///
/// Each (anchor, later occurrence) pair proposes the period between them;
/// periods outside `[p_min, p_max]` are skipped. A segment is emitted when
/// at least two occurrences match and its span reaches the period's span
/// floor. A segment fully contained in an already-emitted segment of the
/// same period with at least its count is suppressed; a denser contained
/// segment survives, since a wider walk on another grid phase can hold
/// fewer matches.
pub fn mine_periods(
    positions: &[usize],
    pattern_len: usize,
    n: usize,
    cfg: &MiningConfig,
) -> Result<Vec<Segment>> {
    cfg.validate_for_len(n)?;
    if pattern_len == 0 {
        return Err(Error::InvalidPattern("pattern length must be at least 1"));
    }
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSegment("positions must be strictly increasing"));
    }
    if let Some(&last) = positions.last() {
        if last + pattern_len > n {
            return Err(Error::InvalidSegment("occurrence runs past the sequence end"));
        }
    }

    let p_max = cfg.resolved_p_max(n);
    let mut segments: Vec<Segment> = Vec::new();

    for anchor in 0..positions.len() {
        for later in (anchor + 1)..positions.len() {
            let period = positions[later] - positions[anchor];
            if period < cfg.p_min {
                continue;
            }
            if period > p_max {
                break;
            }
            let Some(seg) = match_slots(positions, anchor, period, pattern_len, n, cfg) else {
                continue;
            };
            let span = seg.end - seg.start + 1;
            if span < cfg.segment_span_floor(period) {
                continue;
            }
            let dominated = segments.iter().any(|kept| {
                kept.period == seg.period
                    && kept.start <= seg.start
                    && seg.end <= kept.end
                    && kept.count >= seg.count
            });
            if !dominated {
                segments.push(seg);
            }
        }
    }
    Ok(segments)
}

/// Scores mined segments and applies the selection thresholds.
///
/// A hit is kept when its confidence strictly exceeds `conf_min` and, with
/// the MAD gate on, its pattern's surprise strictly exceeds `surprise_min`.
/// The result is ordered by surprise, then confidence, then pattern length
/// (all descending), then pattern, period, and start (ascending), and is
/// truncated to `top_n`.
pub fn score_and_select(
    mined: Vec<(Candidate, Vec<Segment>)>,
    cfg: &MiningConfig,
) -> Result<Vec<PeriodicHit>> {
    cfg.validate()?;
    let mut hits: Vec<PeriodicHit> = Vec::new();
    for (candidate, segments) in mined {
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for seg in segments {
            if !seen.insert((seg.period, seg.start)) {
                continue;
            }
            let slots = f_max(seg.start, seg.end, candidate.pattern.len(), seg.period)?;
            debug_assert!(seg.count <= slots);
            let confidence = seg.count as f64 / slots as f64;
            if confidence <= cfg.conf_min {
                continue;
            }
            if cfg.mad_gate && candidate.surprise <= cfg.surprise_min {
                continue;
            }
            hits.push(PeriodicHit {
                pattern: candidate.pattern.clone(),
                period: seg.period,
                start: seg.start,
                end: seg.end,
                count: seg.count,
                f_max: slots,
                confidence,
                surprise: candidate.surprise,
            });
        }
    }
    hits.sort_by(|a, b| {
        b.surprise
            .total_cmp(&a.surprise)
            .then(b.confidence.total_cmp(&a.confidence))
            .then(b.pattern.len().cmp(&a.pattern.len()))
            .then(a.pattern.cmp(&b.pattern))
            .then(a.period.cmp(&b.period))
            .then(a.start.cmp(&b.start))
    });
    hits.truncate(cfg.top_n);
    Ok(hits)
}

/// Runs the whole pipeline: tree, frequency table, gate, period mining,
/// scoring. An empty sequence yields empty output rather than an error.
pub fn run_pipeline(
    seq: &SymbolSequence,
    constraints: &TreeConstraints,
    cfg: &MiningConfig,
) -> Result<PipelineOutput> {
    let n = seq.len();
    cfg.validate_for_len(n)?;
    let tree = build_tree(seq, constraints)?;
    let pft = stats::compute_pft(&tree, &cfg.mad)?;
    let candidates = candidate_outliers(&tree, &pft, cfg)?;
    let mut mined = Vec::with_capacity(candidates.len());
    for candidate in candidates {
        let segments = mine_periods(&candidate.positions, candidate.pattern.len(), n, cfg)?;
        mined.push((candidate, segments));
    }
    let hits = score_and_select(mined, cfg)?;
    Ok(PipelineOutput { tree, pft, hits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{parse_symbols, ParseMode};

    fn sym(code: u8) -> Symbol {
        // Symbol construction is crate-internal; tests mint codes directly.
        Symbol::new(code)
    }

    fn cfg() -> MiningConfig {
        MiningConfig::default()
    }

    #[test]
    fn f_max_goldens() {
        assert_eq!(f_max(0, 25, 2, 4).unwrap(), 7);
        assert_eq!(f_max(0, 10, 2, 3).unwrap(), 4);
        // A segment holding exactly one occurrence.
        assert_eq!(f_max(5, 7, 3, 2).unwrap(), 1);
    }

    #[test]
    fn f_max_rejects_degenerate_segments() {
        assert!(matches!(f_max(0, 10, 0, 2), Err(Error::InvalidPattern(_))));
        assert!(matches!(f_max(0, 10, 2, 0), Err(Error::InvalidSegment(_))));
        assert!(matches!(f_max(8, 8, 2, 3), Err(Error::InvalidSegment(_))));
    }

    #[test]
    fn confidence_six_sevenths_prints_as_golden() {
        let conf = 6.0 / f_max(0, 25, 2, 4).unwrap() as f64;
        assert_eq!(format!("{conf:.4}"), "0.8571");
    }

    #[test]
    fn candidate_gate_admits_rare_and_rejects_extreme_frequencies() {
        let supports: [usize; 13] = [1, 2, 4, 5, 7, 8, 200, 250, 270, 1100, 1105, 1200, 1500];
        // Thirteen single-symbol patterns with synthetic, widely spread
        // position vectors; only the frequency distribution matters here.
        let store: Vec<(Vec<Symbol>, Vec<usize>)> = supports
            .iter()
            .enumerate()
            .map(|(i, &s)| (vec![sym(i as u8)], (0..s).map(|k| k * 10).collect()))
            .collect();
        let pft = stats::pft_from_lengths(
            store.iter().map(|(p, pos)| (p.len(), pos.len())),
            &MadParams::default(),
        )
        .unwrap();

        let mut config = cfg();
        config.mad.k = 3.0;
        config.min_seg_len = Some(0);
        let candidates = candidates_from_entries(
            store.iter().map(|(p, pos)| (p.clone(), pos.len(), pos.as_slice())),
            &pft,
            &config,
        )
        .unwrap();

        // 3 * MAD = 871.7688: everything at or above 1100 is too frequent.
        let kept: Vec<usize> = candidates.iter().map(|c| c.frequency).collect();
        assert_eq!(kept, [1, 2, 4, 5, 7, 8, 200, 250, 270]);
        for c in &candidates {
            assert!(c.surprise < 1.0);
        }
    }

    #[test]
    fn candidate_gate_disabled_keeps_frequent_patterns() {
        let store: Vec<(Vec<Symbol>, Vec<usize>)> = vec![
            (vec![sym(0)], (0..50).map(|k| k * 4).collect()),
            (vec![sym(1)], vec![0, 30]),
        ];
        let pft = stats::pft_from_lengths(
            store.iter().map(|(p, pos)| (p.len(), pos.len())),
            &MadParams::default(),
        )
        .unwrap();
        let mut config = cfg();
        config.mad_gate = false;
        let candidates = candidates_from_entries(
            store.iter().map(|(p, pos)| (p.clone(), pos.len(), pos.as_slice())),
            &pft,
            &config,
        )
        .unwrap();
        assert_eq!(candidates.len(), 2);
        // The frequent pattern scores negative surprise but stays in.
        assert!(candidates[0].surprise < 0.0);
    }

    #[test]
    fn worked_series_xy_segment() {
        let mut config = cfg();
        config.d_max = Some(8);
        let positions = [0usize, 4, 8, 12, 16, 24];
        let segments = mine_periods(&positions, 2, 28, &config).unwrap();
        assert!(
            segments.contains(&Segment { period: 4, start: 0, end: 25, count: 6 }),
            "expected the period-4 segment, got {segments:?}"
        );
        // Sub-segments of the period-4 run are dominated and suppressed.
        assert!(!segments.iter().any(|s| s.period == 4 && s.start > 0));
    }

    #[test]
    fn tolerance_window_matches_drifted_occurrence() {
        let mut config = cfg();
        config.tolerance = 1;
        config.p_min = 2;
        config.d_max = Some(6);
        let positions = [0usize, 5, 9, 15];
        let segments = mine_periods(&positions, 1, 16, &config).unwrap();
        assert!(
            segments.contains(&Segment { period: 5, start: 0, end: 15, count: 4 }),
            "slot at 10 should take the occurrence at 9: {segments:?}"
        );
    }

    #[test]
    fn gap_rule_stops_extension() {
        let mut config = cfg();
        config.d_max = Some(4);
        config.min_seg_len = Some(2);
        // The occurrence at 12 is 8 past the previous match; the segment
        // must stop at 4.
        let positions = [0usize, 4, 12];
        let segments = mine_periods(&positions, 1, 13, &config).unwrap();
        assert!(segments.contains(&Segment { period: 4, start: 0, end: 4, count: 2 }));
        assert!(!segments.iter().any(|s| s.period == 4 && s.end > 4));
    }

    #[test]
    fn single_occurrence_mines_nothing() {
        assert!(mine_periods(&[3], 1, 10, &cfg()).unwrap().is_empty());
        assert!(mine_periods(&[], 1, 10, &cfg()).unwrap().is_empty());
    }

    #[test]
    fn bare_pair_needs_span_floor() {
        // Default floor is 2p: a two-occurrence segment spans p + 1 < 2p.
        let positions = [2usize, 9];
        assert!(mine_periods(&positions, 1, 12, &cfg()).unwrap().is_empty());
        let mut config = cfg();
        config.min_seg_len = Some(8);
        let segments = mine_periods(&positions, 1, 12, &config).unwrap();
        assert_eq!(segments, [Segment { period: 7, start: 2, end: 9, count: 2 }]);
    }

    #[test]
    fn early_matched_walk_drops_an_interior_match() {
        let mut config = cfg();
        config.tolerance = 1;
        config.p_min = 2;
        config.min_seg_len = Some(0);
        // The slot at 8 takes the occurrence at 7, inflating the count past
        // the two slots the walked span holds. The repair gives up the
        // interior match at 4, not the span.
        let seg = match_slots(&[0, 4, 7], 0, 4, 1, 8, &config).unwrap();
        assert_eq!(seg, Segment { period: 4, start: 0, end: 7, count: 2 });
    }

    #[test]
    fn slot_takes_closest_occurrence_not_earliest() {
        let mut config = cfg();
        config.tolerance = 1;
        config.p_min = 2;
        config.min_seg_len = Some(0);
        // The slot at 10 sees both 9 and 10; taking 9 would shrink the span
        // to one slot and destroy the segment. Count must not drop when the
        // tolerance grows from 0 to 1.
        let seg = match_slots(&[0, 9, 10], 0, 10, 1, 11, &config).unwrap();
        assert_eq!(seg, Segment { period: 10, start: 0, end: 10, count: 2 });
    }

    #[test]
    fn drift_run_keeps_count_by_dropping_one_interior() {
        let mut config = cfg();
        config.tolerance = 1;
        config.p_min = 2;
        config.min_seg_len = Some(0);
        // Both occurrences past the pinned slot at 10 run one early, so four
        // matches land in a three-slot span; dropping 19 leaves a valid
        // three-count segment over the full walk.
        let seg = match_slots(&[0, 10, 19, 29], 0, 10, 1, 30, &config).unwrap();
        assert_eq!(seg, Segment { period: 10, start: 0, end: 29, count: 3 });
    }

    #[test]
    fn positions_must_increase_and_fit() {
        assert!(matches!(
            mine_periods(&[4, 4], 1, 10, &cfg()),
            Err(Error::InvalidSegment(_))
        ));
        assert!(matches!(
            mine_periods(&[2, 9], 2, 10, &cfg()),
            Err(Error::InvalidSegment(_))
        ));
    }

    #[test]
    fn config_validation_catches_bad_ranges() {
        let mut c = cfg();
        c.p_min = 0;
        assert!(c.validate().is_err());

        let mut c = cfg();
        c.tolerance = 1; // p_min stays 1
        assert!(c.validate().is_err());

        let mut c = cfg();
        c.p_max = Some(3);
        assert!(c.validate_for_len(2).is_err());

        let mut c = cfg();
        c.conf_min = 1.5;
        assert!(c.validate().is_err());

        let mut c = cfg();
        c.top_n = 0;
        assert!(c.validate().is_err());
    }

    fn one_candidate_hit(conf_min: f64, surprise: f64, surprise_min: f64) -> usize {
        // Candidate with a single segment of confidence exactly 0.5:
        // count 2 over f_max 4 (length 1, period 5, span 0..15).
        let candidate = Candidate {
            pattern: vec![sym(0)],
            positions: vec![0, 15],
            frequency: 2,
            surprise,
        };
        let seg = Segment { period: 5, start: 0, end: 15, count: 2 };
        let mut config = cfg();
        config.conf_min = conf_min;
        config.surprise_min = surprise_min;
        score_and_select(vec![(candidate, vec![seg])], &config).unwrap().len()
    }

    #[test]
    fn selection_thresholds_are_strict() {
        // Confidence equal to conf_min is excluded; just below is included.
        assert_eq!(one_candidate_hit(0.5, 0.9, 0.5), 0);
        assert_eq!(one_candidate_hit(0.4999, 0.9, 0.5), 1);
        // Surprise equal to surprise_min is excluded.
        assert_eq!(one_candidate_hit(0.4, 0.5, 0.5), 0);
        assert_eq!(one_candidate_hit(0.4, 0.5001, 0.5), 1);
    }

    #[test]
    fn ranking_orders_and_breaks_ties() {
        let mk = |pattern: Vec<Symbol>, surprise: f64, period: usize, count: usize, end: usize| {
            (
                Candidate { pattern, positions: vec![0, end], frequency: 2, surprise },
                vec![Segment { period, start: 0, end, count }],
            )
        };
        // Same pattern at periods 50 and 100, both confidence 1; then a
        // lower-surprise two-symbol pattern.
        let mined = vec![
            mk(vec![sym(2)], 0.94, 100, 2, 100),
            mk(vec![sym(2)], 0.94, 50, 3, 100),
            mk(vec![sym(0), sym(1)], 0.92, 50, 3, 101),
        ];
        let mut config = cfg();
        config.surprise_min = 0.0;
        config.conf_min = 0.0;
        config.min_seg_len = Some(0);
        let hits = score_and_select(mined, &config).unwrap();
        assert_eq!(hits.len(), 3);
        assert_eq!((hits[0].period, hits[0].surprise), (50, 0.94));
        assert_eq!((hits[1].period, hits[1].surprise), (100, 0.94));
        assert_eq!(hits[2].surprise, 0.92);
    }

    #[test]
    fn published_hit_tables_rank_by_descending_surprise() {
        // Shape regression for the report ordering: the reference result
        // tables list surprise non-increasing from top to bottom.
        let published = [
            0.9639, 0.9639, 0.9639, 0.9279, 0.9099, 0.9096, 0.9096, 0.819, 0.8181, 0.727,
        ];
        assert!(published.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn pipeline_finds_planted_rare_symbol() {
        // Frequent "ab" background with a rare "z" overwritten every 50
        // positions; the planted symbol must rank first at its true period.
        let mut text: Vec<u8> = (0..200).map(|i| if i % 2 == 0 { b'a' } else { b'b' }).collect();
        for pos in [10usize, 60, 110, 160] {
            text[pos] = b'z';
        }
        let text = String::from_utf8(text).unwrap();
        let seq = parse_symbols(&text, ParseMode::Plain).unwrap();

        let constraints = TreeConstraints {
            level_cap: 8,
            min_sup: 2,
            monotonic: false,
            min_conf: 0.5,
        };
        let mut config = cfg();
        config.surprise_min = 0.9;
        let out = run_pipeline(&seq, &constraints, &config).unwrap();
        let top = &out.hits[0];
        assert_eq!(seq.alphabet().render(&top.pattern), "z");
        assert_eq!(top.period, 50);
        assert_eq!(top.count, 4);
        assert_eq!(top.confidence, 1.0);
        assert!(top.surprise > 0.9);
    }

    #[test]
    fn pipeline_accepts_empty_sequence() {
        let alphabet = crate::sequence::Alphabet::new(vec!['a']).unwrap();
        let seq = SymbolSequence::new(Vec::new(), alphabet).unwrap();
        let constraints = TreeConstraints { level_cap: 1, min_sup: 1, monotonic: false, min_conf: 0.5 };
        let out = run_pipeline(&seq, &constraints, &cfg()).unwrap();
        assert!(out.hits.is_empty());
        assert!(out.pft.is_empty());
    }

    #[test]
    fn hit_counts_use_in_segment_frequency() {
        // The pattern occurs 7 times globally but only 4 sit on the mined
        // grid; the hit reports the in-segment count.
        let positions = [0usize, 10, 20, 30, 33, 47, 90];
        let mut config = cfg();
        config.p_min = 10;
        config.tolerance = 0;
        config.d_max = Some(12);
        let segments = mine_periods(&positions, 1, 100, &config).unwrap();
        let seg10 = segments
            .iter()
            .find(|s| s.period == 10 && s.start == 0)
            .expect("period-10 segment");
        assert_eq!(seg10.count, 4);
        assert_eq!(seg10.end, 30);
    }
}
