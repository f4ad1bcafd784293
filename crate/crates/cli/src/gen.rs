//! Deterministic sequence generators for benchmarks and planted-recovery
//! tests. Everything is a pure function of the seed and shape parameters,
//! so two runs with the same flags produce byte-identical inputs.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Background of `a` and `b` tiles: "abab...", truncated to `n`.
pub fn tiled(n: usize) -> String {
    let mut out = String::with_capacity(n);
    for i in 0..n {
        out.push(if i % 2 == 0 { 'a' } else { 'b' });
    }
    out
}

/// Uniform random letters `a`, `b`, ... over `alphabet` distinct symbols.
pub fn random(rng: &mut ChaCha8Rng, n: usize, alphabet: usize) -> String {
    assert!((1..=26).contains(&alphabet), "alphabet must fit in a..z");
    (0..n).map(|_| (b'a' + rng.random_range(0..alphabet as u8)) as char).collect()
}

/// A background string with one rare glyph overwritten at a fixed period.
#[derive(Debug, Clone)]
pub struct Planted {
    pub text: String,
    pub glyph: char,
    pub period: usize,
    pub phase: usize,
    /// How many positions were overwritten.
    pub count: usize,
}

/// Overwrites `background` with `glyph` at `phase`, `phase + period`, ...
///
/// The background's own symbols stay untouched elsewhere, so which of them
/// gets replaced is controlled by the parity of `phase` and `period` when
/// the background is tiled.
pub fn plant(background: String, period: usize, phase: usize, glyph: char) -> Planted {
    assert!(period >= 1, "period must be at least 1");
    let mut bytes = background.into_bytes();
    let mut count = 0;
    let mut at = phase;
    while at < bytes.len() {
        bytes[at] = glyph as u8;
        count += 1;
        at += period;
    }
    let text = String::from_utf8(bytes).expect("ascii in, ascii out");
    Planted { text, glyph, period, phase, count }
}
