//! Detection of rarely occurring periodic patterns in symbol sequences.
//!
//! The pipeline mines a discretized (or natively symbolic) series in five
//! stages:
//!
//! 1. [`sequence`]: turn raw text or numeric samples into a [`SymbolSequence`]
//!    over a small alphabet.
//! 2. [`pattern_tree`]: build a position-annotated pattern trie holding every
//!    substring up to a level cap, pruned by minimum support.
//! 3. [`stats`]: summarize pattern frequencies per length (mean, median,
//!    median absolute deviation) into a frequency table.
//! 4. [`mining`]: keep patterns whose frequency falls below the scaled MAD of
//!    their length class, scan their position vectors for periodic segments
//!    under a tolerance window, and rank the survivors by surprise and
//!    confidence.
//! 5. [`oracle`]: an exhaustive reference implementation of the same
//!    contract, used to cross-check the trie-backed miner.
//!
//! The crate is `no_std` (with `alloc`); anything that touches files, clocks,
//! or threads lives in the companion CLI crate.
//!
//! ```
//! use rarepat_core::{mining, pattern_tree, sequence};
//!
//! let seq = sequence::parse_symbols("xyaexybdxyzdxybdxyzdxbyyxyzy", sequence::ParseMode::Plain)?;
//! let constraints = pattern_tree::TreeConstraints::for_sequence_len(seq.len())?;
//! let mut cfg = mining::MiningConfig::default();
//! cfg.mad_gate = false; // rank every retained pattern, not just rare ones
//! cfg.conf_min = 0.5;
//! cfg.d_max = Some(8);
//! let out = mining::run_pipeline(&seq, &constraints, &cfg)?;
//! assert!(out
//!     .hits
//!     .iter()
//!     .any(|h| h.period == 4 && h.count == 6 && seq.alphabet().render(&h.pattern) == "xy"));
//! # Ok::<(), rarepat_core::Error>(())
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod mining;
pub mod oracle;
pub mod pattern_tree;
pub mod sequence;
pub mod stats;

pub use error::Error;
pub use mining::{MiningConfig, PeriodicHit, PipelineOutput};
pub use pattern_tree::{PatternTree, TreeConstraints};
pub use sequence::{Alphabet, Symbol, SymbolSequence};
pub use stats::FrequencyStats;

/// Convenience alias used across the crate.
pub type Result<T> = core::result::Result<T, Error>;
