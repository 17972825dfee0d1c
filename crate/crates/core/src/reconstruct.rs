//! Rebuilding a universal Costas matrix from its frequency matrix.
//!
//! The first column of the frequency matrix gives the size of every
//! first-element block. Blocks are searched in ascending order of first
//! element; each array found is expanded into its polymorphs and every
//! polymorph not yet placed goes into its own block while that block has
//! room. A block's search stops as soon as the block is full, and blocks
//! already filled by polymorphs of earlier finds are never searched.

use std::collections::HashSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::permutation::Permutation;
use crate::search::{self, SearchConfig, SearchError};
use crate::ucm::{build_ucfm, UniversalCostasFrequencyMatrix, UniversalCostasMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("frequency matrix is incomplete; reconstruction needs a complete one")]
    Incomplete,
    #[error(
        "inconsistent frequency matrix: first column sums to {expected} but {what} sums to {found}"
    )]
    SumMismatch {
        expected: u64,
        what: String,
        found: u64,
    },
    #[error("inconsistent frequency matrix: block {block} search exhausted with {missing} row(s) unfilled")]
    BlockStarved { block: usize, missing: u64 },
    #[error("inconsistent frequency matrix: the reconstructed rows do not reproduce it")]
    Mismatch,
}

/// Number of arrays described by a frequency matrix: the sum of its first
/// column, which must agree with every other row and column sum.
pub fn derive_count(ucfm: &UniversalCostasFrequencyMatrix) -> Result<u64, ReconstructError> {
    let columns = ucfm.column_sums();
    let expected = columns[0];
    let mismatch = |what: String, found: u64| ReconstructError::SumMismatch {
        expected,
        what,
        found,
    };
    for (k, &sum) in columns.iter().enumerate().skip(1) {
        if sum != expected {
            return Err(mismatch(format!("column {}", k + 1), sum));
        }
    }
    for (i, sum) in ucfm.row_sums().into_iter().enumerate() {
        if sum != expected {
            return Err(mismatch(format!("row {}", i + 1), sum));
        }
    }
    Ok(expected)
}

/// Per-block capacities and the rows placed so far.
#[derive(Debug, Clone)]
pub struct BlockLedger {
    total: u64,
    remaining: Vec<u64>,
    blocks: Vec<Vec<Permutation>>,
    placed: HashSet<Permutation>,
}

impl BlockLedger {
    /// Capacities from the first column of `ucfm`.
    pub fn new(ucfm: &UniversalCostasFrequencyMatrix) -> Self {
        let n = ucfm.order();
        let remaining: Vec<u64> = (1..=n).map(|v| ucfm.get(v, 1)).collect();
        let total = remaining.iter().sum();
        Self {
            total,
            blocks: remaining
                .iter()
                .map(|&c| Vec::with_capacity(c as usize))
                .collect(),
            remaining,
            placed: HashSet::with_capacity(total as usize),
        }
    }

    /// Capacity left in the block of 1-based first element `value`.
    pub fn remaining(&self, value: usize) -> u64 {
        self.remaining[value - 1]
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn placed_count(&self) -> usize {
        self.placed.len()
    }

    pub fn is_placed(&self, p: &Permutation) -> bool {
        self.placed.contains(p)
    }

    pub fn is_full(&self) -> bool {
        self.remaining.iter().all(|&r| r == 0)
    }

    /// Placed rows of one block, in discovery order.
    pub fn block(&self, value: usize) -> &[Permutation] {
        &self.blocks[value - 1]
    }

    /// Places `q` if it is new and its block has room.
    pub fn try_place(&mut self, q: Permutation) -> bool {
        let b = q.first() - 1;
        if self.remaining[b] == 0 || self.placed.contains(&q) {
            return false;
        }
        self.remaining[b] -= 1;
        self.placed.insert(q.clone());
        self.blocks[b].push(q);
        debug_assert_eq!(
            self.placed.len() as u64 + self.remaining.iter().sum::<u64>(),
            self.total
        );
        true
    }

    fn into_rows(self) -> Vec<Permutation> {
        self.blocks.into_iter().flatten().collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReconstructionStats {
    /// Search-tree nodes over all block searches.
    pub nodes: u64,
    /// Blocks whose search was started.
    pub blocks_searched: usize,
    /// Blocks found already full when their turn came.
    pub blocks_skipped: usize,
}

pub fn reconstruct_ucm(
    ucfm: &UniversalCostasFrequencyMatrix,
) -> Result<UniversalCostasMatrix, ReconstructError> {
    reconstruct_ucm_with(ucfm, &SearchConfig::default()).map(|(ucm, _)| ucm)
}

/// Reconstruction with an explicit search configuration; also returns the
/// search statistics.
pub fn reconstruct_ucm_with(
    ucfm: &UniversalCostasFrequencyMatrix,
    config: &SearchConfig,
) -> Result<(UniversalCostasMatrix, ReconstructionStats), ReconstructError> {
    if !ucfm.is_complete() {
        return Err(ReconstructError::Incomplete);
    }
    derive_count(ucfm)?;
    let n = ucfm.order();
    let mut ledger = BlockLedger::new(ucfm);
    let mut stats = ReconstructionStats::default();

    for first in 1..=n {
        if ledger.remaining(first) == 0 {
            stats.blocks_skipped += 1;
            continue;
        }
        stats.blocks_searched += 1;
        let search = search::search_with(n, Some(first), config, |values| {
            let p = Permutation::from_zero_based_unchecked(values.to_vec());
            if ledger.is_placed(&p) {
                return ControlFlow::Continue(());
            }
            for q in p.polymorphs() {
                ledger.try_place(q);
            }
            if ledger.remaining(first) == 0 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        stats.nodes += search.nodes;
        if ledger.remaining(first) > 0 {
            return Err(ReconstructError::BlockStarved {
                block: first,
                missing: ledger.remaining(first),
            });
        }
    }

    debug_assert!(ledger.is_full());
    let ucm = UniversalCostasMatrix::from_sorted_parts(n, ledger.into_rows(), true);
    if build_ucfm(&ucm).counts() != ucfm.counts() {
        return Err(ReconstructError::Mismatch);
    }
    Ok((ucm, stats))
}
