//! Position-annotated pattern trie with construction-time constraints.
//!
//! Every substring of the sequence up to the level cap `q` is inserted once
//! per occurrence; a node's position vector lists the start index of every
//! occurrence of the pattern spelled by the path from the root. Construction
//! inserts everything first, then a finalize pass prunes nodes that violate
//! minimum support (and, when enabled, the monotonic confidence constraint).
//! Pruning a node removes its whole subtree: a pattern can only be retained
//! if every prefix is retained, which keeps prefix support monotonic.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::sequence::{Alphabet, Symbol, SymbolSequence};
use crate::{Error, Result};

/// Construction constraints for [`build_tree`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TreeConstraints {
    /// Level cap `q`: no pattern longer than this is materialized.
    pub level_cap: usize,
    /// Minimum occurrence count for a pattern to survive finalization.
    pub min_sup: usize,
    /// Enables the monotonic confidence prune. Off by default: the measure
    /// `(N - sup) / (N - q)` penalizes high-support nodes, which is rarely
    /// what exploratory mining wants, but it is kept available for parity
    /// with constraint-based tree builds.
    pub monotonic: bool,
    /// Threshold for the monotonic prune; a node is dropped when its
    /// monotonic confidence is strictly below this.
    pub min_conf: f64,
}

impl TreeConstraints {
    /// Default constraints for a sequence of length `n`: level cap
    /// `max(1, n/2)`, minimum support 2, monotonic prune disabled.
    pub fn for_sequence_len(n: usize) -> Result<Self> {
        Ok(TreeConstraints {
            level_cap: default_level_cap(n)?,
            min_sup: 2,
            monotonic: false,
            min_conf: 0.5,
        })
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.level_cap == 0 {
            return Err(Error::InvalidConstraints("level cap must be at least 1"));
        }
        if n > 0 && self.level_cap > n {
            return Err(Error::InvalidConstraints("level cap exceeds sequence length"));
        }
        if self.min_sup == 0 {
            return Err(Error::InvalidConstraints("minimum support must be at least 1"));
        }
        if !(self.min_conf.is_finite() && (0.0..=1.0).contains(&self.min_conf)) {
            return Err(Error::InvalidConstraints("min_conf must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Default level cap: half the sequence length, never below 1.
pub fn default_level_cap(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    Ok((n / 2).max(1))
}

/// One trie node. The path from the root spells the pattern; `positions`
/// holds every start index of that pattern, strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternNode {
    symbol: Symbol,
    positions: Vec<usize>,
    children: BTreeMap<u8, PatternNode>,
}

impl PatternNode {
    fn new(symbol: Symbol) -> Self {
        PatternNode { symbol, positions: Vec::new(), children: BTreeMap::new() }
    }

    pub fn symbol(&self) -> Symbol {
        self.symbol
    }

    /// Occurrence count; always `positions().len()`.
    pub fn support(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}

/// The finalized trie. The root is implicit: it represents the empty pattern
/// occurring at every index, and only its children are materialized.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternTree {
    children: BTreeMap<u8, PatternNode>,
    sequence_len: usize,
    constraints: TreeConstraints,
}

/// Builds and finalizes the trie for `seq` under `constraints`.
///
/// Construction cost is `O(N * q * log A)` for alphabet size `A`; memory is
/// bounded by one position entry per (start, length) pair.
pub fn build_tree(seq: &SymbolSequence, constraints: &TreeConstraints) -> Result<PatternTree> {
    constraints.validate(seq.len())?;

    let symbols = seq.symbols();
    let n = symbols.len();
    let q = constraints.level_cap;
    let mut root: BTreeMap<u8, PatternNode> = BTreeMap::new();

    for start in 0..n {
        let mut children = &mut root;
        for offset in 0..q.min(n - start) {
            let sym = symbols[start + offset];
            let node =
                children.entry(sym.code()).or_insert_with(|| PatternNode::new(sym));
            node.positions.push(start);
            children = &mut node.children;
        }
    }

    // The monotonic measure is undefined at N == q (zero denominator); the
    // prune is skipped there rather than dividing by zero.
    let monotonic = (constraints.monotonic && n > q)
        .then(|| (n as f64, (n - q) as f64, constraints.min_conf));
    prune(&mut root, constraints.min_sup, monotonic);

    Ok(PatternTree { children: root, sequence_len: n, constraints: constraints.clone() })
}

fn prune(
    children: &mut BTreeMap<u8, PatternNode>,
    min_sup: usize,
    monotonic: Option<(f64, f64, f64)>,
) {
    children.retain(|_, node| {
        if node.support() < min_sup {
            return false;
        }
        if let Some((n, denom, min_conf)) = monotonic {
            if (n - node.support() as f64) / denom < min_conf {
                return false;
            }
        }
        true
    });
    for node in children.values_mut() {
        prune(&mut node.children, min_sup, monotonic);
    }
}

impl PatternTree {
    pub fn sequence_len(&self) -> usize {
        self.sequence_len
    }

    pub fn constraints(&self) -> &TreeConstraints {
        &self.constraints
    }

    /// True when no pattern survived finalization.
    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    /// Positions of an exact pattern, or `None` when the pattern was pruned
    /// or never occurred.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidPattern`] for the empty pattern; the implicit root is
    /// not addressable.
    pub fn lookup_positions(&self, pattern: &[Symbol]) -> Result<Option<&[usize]>> {
        if pattern.is_empty() {
            return Err(Error::InvalidPattern("the empty pattern is not addressable"));
        }
        let mut children = &self.children;
        let mut found: Option<&PatternNode> = None;
        for sym in pattern {
            match children.get(&sym.code()) {
                Some(node) => {
                    children = &node.children;
                    found = Some(node);
                }
                None => return Ok(None),
            }
        }
        Ok(found.map(|n| n.positions.as_slice()))
    }

    /// Depth-first enumeration of every retained pattern, children in symbol
    /// order, parents before children. For equal-length patterns the order
    /// is lexicographic by symbol code.
    pub fn entries(&self) -> Patterns<'_> {
        let mut stack: Vec<(&PatternNode, usize)> = Vec::new();
        for node in self.children.values().rev() {
            stack.push((node, 0));
        }
        Patterns { stack, path: Vec::new() }
    }

    /// Text rendering for golden tests and debugging: one line per pattern,
    /// `pattern<TAB>support<TAB>comma-joined positions`, in [`Self::entries`]
    /// order.
    pub fn dump(&self, alphabet: &Alphabet) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        for entry in self.entries() {
            let _ = write!(out, "{}\t{}\t", alphabet.render(&entry.pattern), entry.support);
            for (i, p) in entry.positions.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{p}");
            }
            out.push('\n');
        }
        out
    }
}

/// One retained pattern yielded by [`PatternTree::entries`].
#[derive(Debug, Clone, PartialEq)]
pub struct PatternEntry<'t> {
    pub pattern: Vec<Symbol>,
    pub support: usize,
    pub positions: &'t [usize],
}

/// Iterator over retained patterns; see [`PatternTree::entries`].
pub struct Patterns<'t> {
    stack: Vec<(&'t PatternNode, usize)>,
    path: Vec<Symbol>,
}

impl<'t> Iterator for Patterns<'t> {
    type Item = PatternEntry<'t>;

    fn next(&mut self) -> Option<Self::Item> {
        let (node, depth) = self.stack.pop()?;
        self.path.truncate(depth);
        self.path.push(node.symbol);
        for child in node.children.values().rev() {
            self.stack.push((child, depth + 1));
        }
        Some(PatternEntry {
            pattern: self.path.clone(),
            support: node.support(),
            positions: &node.positions,
        })
    }
}
