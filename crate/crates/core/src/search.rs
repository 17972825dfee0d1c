//! Exhaustive Costas enumeration by backtracking.
//!
//! Positions are filled left to right with values tried in ascending order,
//! so solutions come out lexicographically sorted. Every row of the
//! difference triangle is a bitmask: difference `δ` at distance `d` is bit
//! `δ + n - 1` of `masks[d]`, which turns both the duplicate test and the
//! computation of the legal values for the next position into a handful of
//! word operations. Forward checking refuses to descend into a prefix whose
//! next position has no legal value left.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use rayon::prelude::*;
use thiserror::Error;

use crate::permutation::Permutation;

/// Largest order the 64-bit difference masks can represent (`2n - 1 <= 63`).
pub const MAX_SUPPORTED_ORDER: usize = 32;

pub const DEFAULT_ORDER_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order must be at least 1")]
    EmptyOrder,
    #[error("order {order} exceeds the configured cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("first element {first} is outside 1..={order}")]
    FirstElementOutOfRange { first: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Factorial blow-up guard; clamped to [`MAX_SUPPORTED_ORDER`].
    pub order_cap: usize,
    pub forward_checking: bool,
    /// Search the first-element subtrees on the rayon pool. Output is
    /// identical to the sequential mode.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            order_cap: DEFAULT_ORDER_CAP,
            forward_checking: true,
            parallel: false,
        }
    }
}

impl SearchConfig {
    pub fn naive() -> Self {
        Self {
            forward_checking: false,
            ..Self::default()
        }
    }

    fn check(&self, n: usize, first: Option<usize>) -> Result<(), SearchError> {
        if n == 0 {
            return Err(SearchError::EmptyOrder);
        }
        let cap = self.order_cap.min(MAX_SUPPORTED_ORDER);
        if n > cap {
            return Err(SearchError::OrderTooLarge { order: n, cap });
        }
        if let Some(first) = first {
            if first == 0 || first > n {
                return Err(SearchError::FirstElementOutOfRange { first, order: n });
            }
        }
        Ok(())
    }
}

/// Partial assignment plus the bitmasks that make extending it O(n).
#[derive(Debug, Clone)]
pub struct SearchState {
    order: usize,
    prefix: Vec<u16>,
    used: u32,
    /// `masks[d]` for distances `1..n`; index 0 is unused.
    masks: Vec<u64>,
}

impl SearchState {
    pub fn new(order: usize) -> Self {
        assert!(
            (1..=MAX_SUPPORTED_ORDER).contains(&order),
            "order {order} outside 1..={MAX_SUPPORTED_ORDER}"
        );
        Self {
            order,
            prefix: Vec::with_capacity(order),
            used: 0,
            masks: vec![0; order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// 0-based values placed so far.
    pub fn prefix(&self) -> &[u16] {
        &self.prefix
    }

    pub fn used_values(&self) -> u32 {
        self.used
    }

    /// Difference mask for distance `d`, `1 <= d < n`.
    pub fn triangle_mask(&self, d: usize) -> u64 {
        self.masks[d]
    }

    pub fn is_complete(&self) -> bool {
        self.prefix.len() == self.order
    }

    fn full(&self) -> u32 {
        if self.order == 32 {
            u32::MAX
        } else {
            (1u32 << self.order) - 1
        }
    }

    /// Values (bit `v` = 0-based value `v`) that can occupy the next position
    /// without reusing a value or repeating a difference.
    pub fn candidates(&self) -> u32 {
        if self.is_complete() {
            return 0;
        }
        let j = self.prefix.len();
        let top = self.order - 1;
        let mut forbidden = 0u64;
        for d in 1..=j {
            let prev = self.prefix[j - d] as usize;
            // bit b of masks[d] forbids value b - (n - 1) + prev
            forbidden |= self.masks[d] >> (top - prev);
        }
        !(forbidden as u32 | self.used) & self.full()
    }

    /// Places 0-based `value` at the next position. The caller guarantees it
    /// is one of [`Self::candidates`].
    pub fn push(&mut self, value: u16) {
        debug_assert!(self.candidates() & (1 << value) != 0);
        let j = self.prefix.len();
        let offset = self.order as i32 - 1;
        for d in 1..=j {
            let delta = value as i32 - self.prefix[j - d] as i32;
            self.masks[d] |= 1u64 << (delta + offset);
        }
        self.used |= 1 << value;
        self.prefix.push(value);
    }

    pub fn pop(&mut self) -> Option<u16> {
        let value = self.prefix.pop()?;
        let j = self.prefix.len();
        let offset = self.order as i32 - 1;
        for d in 1..=j {
            let delta = value as i32 - self.prefix[j - d] as i32;
            self.masks[d] &= !(1u64 << (delta + offset));
        }
        self.used &= !(1 << value);
        Some(value)
    }
}

/// Counters from one search run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Prefixes descended into, complete ones included.
    pub nodes: u64,
    pub solutions: u64,
    /// The visitor asked to stop before the tree was exhausted.
    pub stopped: bool,
}

impl SearchStats {
    fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.solutions += other.solutions;
        self.stopped |= other.stopped;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub arrays: Vec<Permutation>,
    pub nodes: u64,
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.arrays.len()
    }
}

struct Walker<'a, F> {
    state: SearchState,
    forward_checking: bool,
    stats: SearchStats,
    visit: &'a mut F,
}

impl<F> Walker<'_, F>
where
    F: FnMut(&[u16]) -> ControlFlow<()>,
{
    /// Tries every value in `candidates` at the next position.
    fn extend(&mut self, mut candidates: u32) -> ControlFlow<()> {
        while candidates != 0 {
            let value = candidates.trailing_zeros() as u16;
            candidates &= candidates - 1;
            self.state.push(value);
            let flow = self.descend();
            self.state.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn descend(&mut self) -> ControlFlow<()> {
        if self.state.is_complete() {
            self.stats.nodes += 1;
            self.stats.solutions += 1;
            return (self.visit)(self.state.prefix());
        }
        let next = self.state.candidates();
        if self.forward_checking && next == 0 {
            return ControlFlow::Continue(());
        }
        self.stats.nodes += 1;
        self.extend(next)
    }
}

/// Depth-first search calling `visit` with each Costas array (0-based values)
/// in lexicographic order. Returning `Break` from `visit` ends the search.
pub fn search_with<F>(
    n: usize,
    first_element: Option<usize>,
    config: &SearchConfig,
    mut visit: F,
) -> Result<SearchStats, SearchError>
where
    F: FnMut(&[u16]) -> ControlFlow<()>,
{
    config.check(n, first_element)?;
    let mut walker = Walker {
        state: SearchState::new(n),
        forward_checking: config.forward_checking,
        stats: SearchStats::default(),
        visit: &mut visit,
    };
    let roots = match first_element {
        Some(first) => 1u32 << (first - 1),
        None => walker.state.candidates(),
    };
    if walker.extend(roots).is_break() {
        walker.stats.stopped = true;
    }
    Ok(walker.stats)
}

/// Number of Costas arrays of order `n`, without materialising them.
pub fn count_costas(n: usize, config: &SearchConfig) -> Result<u64, SearchError> {
    config.check(n, None)?;
    let firsts: Vec<usize> = (1..=n).collect();
    let count_one = |first: usize| {
        search_with(n, Some(first), config, |_| ControlFlow::Continue(()))
            .map(|stats| stats.solutions)
    };
    if config.parallel {
        firsts.into_par_iter().map(count_one).sum()
    } else {
        firsts.into_iter().map(count_one).sum()
    }
}

fn collect_subtree(
    n: usize,
    first: usize,
    config: &SearchConfig,
) -> Result<(Vec<Permutation>, SearchStats), SearchError> {
    let mut arrays = Vec::new();
    let stats = search_with(n, Some(first), config, |values| {
        arrays.push(Permutation::from_zero_based_unchecked(values.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok((arrays, stats))
}

/// Collects several first-element subtrees, concatenated in the order given.
fn collect_subtrees(
    n: usize,
    firsts: &[usize],
    config: &SearchConfig,
) -> Result<EnumerationResult, SearchError> {
    let parts: Vec<_> = if config.parallel {
        firsts
            .par_iter()
            .map(|&first| collect_subtree(n, first, config))
            .collect::<Result<_, _>>()?
    } else {
        firsts
            .iter()
            .map(|&first| collect_subtree(n, first, config))
            .collect::<Result<_, _>>()?
    };
    let mut total = SearchStats::default();
    let mut arrays = Vec::new();
    for (part, stats) in parts {
        arrays.extend(part);
        total.absorb(stats);
    }
    Ok(EnumerationResult {
        arrays,
        nodes: total.nodes,
    })
}

/// All Costas arrays of order `n`, optionally restricted to a 1-based first
/// element, in lexicographic order.
pub fn enumerate_costas(
    n: usize,
    first_element: Option<usize>,
) -> Result<EnumerationResult, SearchError> {
    enumerate_costas_with(n, first_element, &SearchConfig::default())
}

pub fn enumerate_costas_with(
    n: usize,
    first_element: Option<usize>,
    config: &SearchConfig,
) -> Result<EnumerationResult, SearchError> {
    config.check(n, first_element)?;
    match first_element {
        Some(first) => collect_subtrees(n, &[first], config),
        None => collect_subtrees(n, &(1..=n).collect::<Vec<_>>(), config),
    }
}

/// Symmetry-reduced enumeration: searches first elements `1..=ceil(n/2)`
/// only and recovers the rest by closing every hit under the dihedral group.
/// Complement maps first element `a` to `n + 1 - a`, so nothing is missed.
pub fn enumerate_all_via_symmetry(n: usize) -> Result<EnumerationResult, SearchError> {
    enumerate_all_via_symmetry_with(n, &SearchConfig::default())
}

pub fn enumerate_all_via_symmetry_with(
    n: usize,
    config: &SearchConfig,
) -> Result<EnumerationResult, SearchError> {
    config.check(n, None)?;
    let firsts: Vec<usize> = (1..=n.div_ceil(2)).collect();
    let seeds = collect_subtrees(n, &firsts, config)?;
    let mut closed = BTreeSet::new();
    for seed in &seeds.arrays {
        closed.extend(seed.polymorphs());
    }
    Ok(EnumerationResult {
        arrays: closed.into_iter().collect(),
        nodes: seeds.nodes,
    })
}
