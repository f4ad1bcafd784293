//! Symbol sequences and the two ways of producing them: parsing symbolic
//! text and equal-width binning of numeric series.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest alphabet a sequence may use. Symbol codes are `u8`, so 256 is the
/// natural ceiling and matches what discretization can meaningfully resolve.
pub const MAX_ALPHABET: usize = 256;

/// A single sequence element, stored as an index into its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    /// Index of this symbol in its alphabet.
    #[inline]
    pub fn code(self) -> u8 {
        self.0
    }

    #[cfg(test)]
    pub(crate) fn new(code: u8) -> Self {
        Symbol(code)
    }
}

/// An ordered set of distinct glyphs. A symbol's code is its position here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    glyphs: Vec<char>,
    index: BTreeMap<char, u8>,
}

impl Alphabet {
    /// Builds an alphabet from distinct glyphs, in the given order.
    pub fn new(glyphs: Vec<char>) -> Result<Self> {
        if glyphs.is_empty() {
            return Err(Error::EmptyInput);
        }
        if glyphs.len() > MAX_ALPHABET {
            return Err(Error::AlphabetOverflow { distinct: glyphs.len() });
        }
        let mut index = BTreeMap::new();
        for (i, &g) in glyphs.iter().enumerate() {
            if index.insert(g, i as u8).is_some() {
                return Err(Error::InvalidPattern("duplicate glyph in alphabet"));
            }
        }
        Ok(Alphabet { glyphs, index })
    }

    /// Number of glyphs; always in `1..=256`.
    pub fn size(&self) -> usize {
        self.glyphs.len()
    }

    /// Glyph for a symbol code. Panics if the symbol belongs to a larger
    /// alphabet than this one.
    pub fn glyph(&self, s: Symbol) -> char {
        self.glyphs[s.0 as usize]
    }

    /// Symbol for a glyph, if the glyph is part of this alphabet.
    pub fn symbol(&self, g: char) -> Option<Symbol> {
        self.index.get(&g).map(|&c| Symbol(c))
    }

    /// Renders a pattern of symbols as a string of glyphs.
    pub fn render(&self, pattern: &[Symbol]) -> String {
        pattern.iter().map(|&s| self.glyph(s)).collect()
    }

    /// Default glyph table for discretized data: letters first, then digits
    /// and punctuation, then Latin letters. Supports the full 256-symbol
    /// range. Quotes, commas, and backslashes are excluded so rendered
    /// patterns stay delimiter-safe in reports.
    pub fn default_glyphs(count: usize) -> Result<Vec<char>> {
        if count == 0 {
            return Err(Error::EmptyInput);
        }
        if count > MAX_ALPHABET {
            return Err(Error::AlphabetOverflow { distinct: count });
        }
        let pool = ('A'..='Z')
            .chain('a'..='z')
            .chain('0'..='9')
            .chain("!#$%&()*+-./:;<=>?@[]^_`{|}~".chars())
            .chain((0x00C0u32..0x0200).filter_map(char::from_u32));
        Ok(pool.take(count).collect())
    }
}

/// Input layout accepted by [`parse_symbols`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    /// Every non-whitespace character is one symbol.
    Plain,
    /// Like `Plain`, but lines starting with `>` are record headers and are
    /// skipped entirely.
    Fasta,
}

/// How a numeric series was mapped onto an alphabet. Kept alongside mining
/// output so a run can be reproduced from its report.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DiscretizationSpec {
    pub bin_count: usize,
    /// Only equal-width binning is implemented; the field keeps report
    /// formats honest about what produced the symbols.
    pub strategy: BinStrategy,
    pub observed_min: f64,
    pub observed_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum BinStrategy {
    EqualWidth,
}

/// A sequence of symbols plus the alphabet they are drawn from.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSequence {
    symbols: Vec<Symbol>,
    alphabet: Alphabet,
    source_name: String,
}

impl SymbolSequence {
    /// Builds a sequence from pre-validated parts. Every symbol code must be
    /// below the alphabet size.
    pub fn new(symbols: Vec<Symbol>, alphabet: Alphabet) -> Result<Self> {
        let size = alphabet.size();
        if let Some(bad) = symbols.iter().position(|s| (s.0 as usize) >= size) {
            return Err(Error::InvalidValue { index: bad });
        }
        Ok(SymbolSequence { symbols, alphabet, source_name: String::new() })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Free-form label describing where the data came from (path, column).
    pub fn source_name(&self) -> &str {
        &self.source_name
    }

    pub fn set_source_name(&mut self, name: impl Into<String>) {
        self.source_name = name.into();
    }

    /// Renders the sequence back to one glyph per symbol. Parsing the result
    /// with [`ParseMode::Plain`] yields the same glyph stream.
    pub fn render(&self) -> String {
        self.alphabet.render(&self.symbols)
    }
}

/// Parses symbolic text into a sequence. The alphabet is the set of distinct
/// characters in first-appearance order; whitespace never becomes a symbol.
///
/// # Errors
///
/// [`Error::EmptyInput`] when no usable characters remain,
/// [`Error::AlphabetOverflow`] past 256 distinct characters.
pub fn parse_symbols(text: &str, mode: ParseMode) -> Result<SymbolSequence> {
    let mut glyphs: Vec<char> = Vec::new();
    let mut index: BTreeMap<char, u8> = BTreeMap::new();
    let mut symbols: Vec<Symbol> = Vec::new();

    for line in text.lines() {
        if matches!(mode, ParseMode::Fasta) && line.starts_with('>') {
            continue;
        }
        for ch in line.chars() {
            if ch.is_whitespace() {
                continue;
            }
            let code = match index.get(&ch) {
                Some(&c) => c,
                None => {
                    if glyphs.len() >= MAX_ALPHABET {
                        return Err(Error::AlphabetOverflow { distinct: glyphs.len() + 1 });
                    }
                    let c = glyphs.len() as u8;
                    glyphs.push(ch);
                    index.insert(ch, c);
                    c
                }
            };
            symbols.push(Symbol(code));
        }
    }

    if symbols.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(SymbolSequence { symbols, alphabet: Alphabet { glyphs, index }, source_name: String::new() })
}

/// Equal-width binning of a numeric series onto `bin_count` symbols labelled
/// `A`, `B`, ... in bin order.
///
/// Bin edges split `[min, max]` into `bin_count` equal widths; a value maps
/// to `floor((v - min) / width)`, and the maximum value clamps into the top
/// bin. A constant series maps everything to the first symbol.
///
/// # Errors
///
/// [`Error::EmptyInput`] for an empty slice, [`Error::InvalidValue`] for the
/// first NaN or infinity, [`Error::InvalidBinCount`] when `bin_count` is zero
/// or above 256.
pub fn discretize(values: &[f64], bin_count: usize) -> Result<(SymbolSequence, DiscretizationSpec)> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if bin_count == 0 || bin_count > MAX_ALPHABET {
        return Err(Error::InvalidBinCount { bins: bin_count });
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidValue { index });
    }

    let mut min = values[0];
    let mut max = values[0];
    for &v in &values[1..] {
        if v < min {
            min = v;
        }
        if v > max {
            max = v;
        }
    }

    let width = (max - min) / bin_count as f64;
    let top = bin_count - 1;
    let symbols: Vec<Symbol> = values
        .iter()
        .map(|&v| {
            // width == 0.0 means a constant series; everything lands in bin 0.
            // The quotient is non-negative, so the cast truncation is floor.
            let bin = if width > 0.0 { (((v - min) / width) as usize).min(top) } else { 0 };
            Symbol(bin as u8)
        })
        .collect();

    let alphabet = Alphabet::new(Alphabet::default_glyphs(bin_count)?)?;
    let spec = DiscretizationSpec {
        bin_count,
        strategy: BinStrategy::EqualWidth,
        observed_min: min,
        observed_max: max,
    };
    Ok((SymbolSequence { symbols, alphabet, source_name: String::new() }, spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(seq: &SymbolSequence) -> String {
        seq.render()
    }

    #[test]
    fn parse_plain_assigns_first_appearance_codes() {
        let seq = parse_symbols("abab", ParseMode::Plain).unwrap();
        assert_eq!(seq.len(), 4);
        assert_eq!(seq.alphabet().size(), 2);
        assert_eq!(seq.alphabet().glyph(Symbol(0)), 'a');
        assert_eq!(seq.alphabet().glyph(Symbol(1)), 'b');
        assert_eq!(
            seq.symbols(),
            &[Symbol(0), Symbol(1), Symbol(0), Symbol(1)]
        );
    }

    #[test]
    fn parse_fasta_skips_headers_and_whitespace() {
        let seq = parse_symbols(">rec1\nxy ae\nxyb", ParseMode::Fasta).unwrap();
        assert_eq!(seq.len(), 7);
        assert_eq!(render(&seq), "xyaexyb");
        assert_eq!(seq.alphabet().size(), 5);
    }

    #[test]
    fn parse_empty_and_whitespace_only_fail() {
        assert_eq!(parse_symbols("", ParseMode::Plain), Err(Error::EmptyInput));
        assert_eq!(parse_symbols(" \n\t ", ParseMode::Plain), Err(Error::EmptyInput));
        assert_eq!(parse_symbols(">only-a-header\n", ParseMode::Fasta), Err(Error::EmptyInput));
    }

    #[test]
    fn parse_overflows_past_256_distinct_chars() {
        let text: String = (0..300u32).filter_map(char::from_u32).filter(|c| !c.is_whitespace()).collect();
        assert!(text.chars().count() > 256);
        match parse_symbols(&text, ParseMode::Plain) {
            Err(Error::AlphabetOverflow { distinct }) => assert_eq!(distinct, 257),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn worked_series_has_seven_symbols() {
        let seq = parse_symbols("xyaexybdxyzdxybdxyzdxbyyxyzy", ParseMode::Plain).unwrap();
        assert_eq!(seq.len(), 28);
        assert_eq!(seq.alphabet().size(), 7);
        // First-appearance order fixes the codes.
        let order: String = (0..7).map(|c| seq.alphabet().glyph(Symbol(c))).collect();
        assert_eq!(order, "xyaebdz");
    }

    #[test]
    fn discretize_two_bins() {
        let (seq, spec) = discretize(&[1.0, 1.0, 9.0, 9.0], 2).unwrap();
        assert_eq!(render(&seq), "AABB");
        assert_eq!(spec.bin_count, 2);
        assert_eq!(spec.observed_min, 1.0);
        assert_eq!(spec.observed_max, 9.0);
    }

    #[test]
    fn discretize_constant_series_is_single_symbol() {
        let (seq, _) = discretize(&[3.3, 3.3, 3.3], 4).unwrap();
        assert_eq!(render(&seq), "AAA");
    }

    #[test]
    fn discretize_follows_floor_rule_and_clamps_max() {
        // width = 2.5; 2.5/2.5 lands exactly on bin 1 and 10.0 clamps into
        // the top bin instead of producing bin 4.
        let (seq, _) = discretize(&[0.0, 2.5, 5.0, 7.5, 10.0], 4).unwrap();
        assert_eq!(render(&seq), "ABCDD");
    }

    #[test]
    fn discretize_rejects_bad_input() {
        assert_eq!(discretize(&[], 4), Err(Error::EmptyInput));
        assert_eq!(discretize(&[1.0], 0), Err(Error::InvalidBinCount { bins: 0 }));
        assert_eq!(discretize(&[1.0], 300), Err(Error::InvalidBinCount { bins: 300 }));
        assert_eq!(
            discretize(&[1.0, f64::NAN, 2.0], 2),
            Err(Error::InvalidValue { index: 1 })
        );
        assert_eq!(
            discretize(&[f64::INFINITY], 2),
            Err(Error::InvalidValue { index: 0 })
        );
    }

    #[test]
    fn default_glyphs_are_distinct_up_to_256() {
        let glyphs = Alphabet::default_glyphs(256).unwrap();
        assert_eq!(glyphs.len(), 256);
        let mut sorted = glyphs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 256, "glyph table must not repeat");
        assert_eq!(&glyphs[..4], &['A', 'B', 'C', 'D']);
    }

    #[test]
    fn render_parse_round_trip() {
        let seq = parse_symbols("xyaexybdxyzdxybdxyzdxbyyxyzy", ParseMode::Plain).unwrap();
        let back = parse_symbols(&seq.render(), ParseMode::Plain).unwrap();
        assert_eq!(back, seq);
    }
}
