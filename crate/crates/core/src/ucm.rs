//! Universal Costas matrices (every Costas array of one order stacked in
//! canonical order) and their frequency matrices, together with the
//! executable form of the structural theorems about both.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::permutation::Permutation;
use crate::search::{self, SearchConfig, SearchError};

/// Above this order `build_ucm_from_arrays` does not attempt to decide
/// completeness by counting; such sets are always treated as partial.
pub const COMPLETENESS_PROBE_MAX_ORDER: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UcmError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("no arrays given")]
    NoArrays,
    #[error("row {row} has order {found}, expected {expected}")]
    MixedOrders {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row} is not a Costas array: {array}")]
    NotCostas { row: usize, array: Permutation },
    #[error("row {row} duplicates an earlier row: {array}")]
    Duplicate { row: usize, array: Permutation },
    #[error("column {column} is outside 1..={order}")]
    ColumnOutOfRange { column: usize, order: usize },
    #[error("matrix order {ucm} does not match frequency matrix order {ucfm}")]
    OrderMismatch { ucm: usize, ucfm: usize },
}

/// All (or, when partial, some) distinct Costas arrays of one order, sorted
/// by first element and lexicographically within each first-element block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCostasMatrix {
    order: usize,
    rows: Vec<Permutation>,
    block_sizes: Vec<usize>,
    complete: bool,
}

impl UniversalCostasMatrix {
    /// Sorts `rows` canonically. Callers guarantee they are distinct Costas
    /// arrays of order `order`.
    pub(crate) fn from_sorted_parts(
        order: usize,
        mut rows: Vec<Permutation>,
        complete: bool,
    ) -> Self {
        rows.sort_unstable();
        let mut block_sizes = vec![0; order];
        for row in &rows {
            block_sizes[row.first() - 1] += 1;
        }
        Self {
            order,
            rows,
            block_sizes,
            complete,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> &[Permutation] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Permutation> {
        self.rows
    }

    /// Row count; `C(n)` when complete.
    pub fn count(&self) -> usize {
        self.rows.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of rows in each first-element block, indexed by value - 1.
    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// 1-based index of the last row of each block (`r_1 .. r_n`). An empty
    /// block repeats the previous boundary.
    pub fn block_ends(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .scan(0, |end, &size| {
                *end += size;
                Some(*end)
            })
            .collect()
    }

    /// Rows whose first element is the 1-based `value`.
    pub fn block(&self, value: usize) -> &[Permutation] {
        let start: usize = self.block_sizes[..value - 1].iter().sum();
        &self.rows[start..start + self.block_sizes[value - 1]]
    }

    /// Sum of 1-based column `k`.
    pub fn column_sum(&self, k: usize) -> Result<u64, UcmError> {
        if k == 0 || k > self.order {
            return Err(UcmError::ColumnOutOfRange {
                column: k,
                order: self.order,
            });
        }
        Ok(self.rows.iter().map(|r| r.value_at(k) as u64).sum())
    }

    fn column_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.order];
        for row in &self.rows {
            for (sum, &v) in sums.iter_mut().zip(row.as_zero_based()) {
                *sum += v as u64 + 1;
            }
        }
        sums
    }
}

impl fmt::Display for UniversalCostasMatrix {
    /// One row per line, the format of an arrays file.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Canonical UCM of every Costas array of order `n`.
pub fn build_ucm(n: usize) -> Result<UniversalCostasMatrix, UcmError> {
    build_ucm_with(n, &SearchConfig::default())
}

pub fn build_ucm_with(n: usize, config: &SearchConfig) -> Result<UniversalCostasMatrix, UcmError> {
    let result = search::enumerate_costas_with(n, None, config)?;
    Ok(UniversalCostasMatrix::from_sorted_parts(
        n,
        result.arrays,
        true,
    ))
}

/// Canonical UCM of an arbitrary set of distinct Costas arrays.
///
/// The result is flagged complete only if the order is small enough to count
/// all Costas arrays of that order and the set has exactly that many rows.
pub fn build_ucm_from_arrays(arrays: Vec<Permutation>) -> Result<UniversalCostasMatrix, UcmError> {
    let order = arrays.first().ok_or(UcmError::NoArrays)?.order();
    let mut seen = HashSet::with_capacity(arrays.len());
    for (i, array) in arrays.iter().enumerate() {
        let row = i + 1;
        if array.order() != order {
            return Err(UcmError::MixedOrders {
                row,
                expected: order,
                found: array.order(),
            });
        }
        if !array.is_costas() {
            return Err(UcmError::NotCostas {
                row,
                array: array.clone(),
            });
        }
        if !seen.insert(array) {
            return Err(UcmError::Duplicate {
                row,
                array: array.clone(),
            });
        }
    }
    let complete = order <= COMPLETENESS_PROBE_MAX_ORDER
        && search::count_costas(order, &SearchConfig::default())? == arrays.len() as u64;
    Ok(UniversalCostasMatrix::from_sorted_parts(
        order, arrays, complete,
    ))
}

/// `counts[i][k]` = how often value `i + 1` occurs in column `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCostasFrequencyMatrix {
    order: usize,
    counts: Vec<u64>,
    complete: bool,
}

impl UniversalCostasFrequencyMatrix {
    /// Row-major `n x n` counts with an explicit completeness flag.
    pub fn from_counts(order: usize, counts: Vec<u64>, complete: bool) -> Self {
        assert_eq!(counts.len(), order * order, "counts must be n x n");
        Self {
            order,
            counts,
            complete,
        }
    }

    /// Like [`Self::from_counts`], with completeness inferred: every row and
    /// column sum is equal and positive.
    pub fn from_counts_inferred(order: usize, counts: Vec<u64>) -> Self {
        let mut f = Self::from_counts(order, counts, false);
        let sums: BTreeSet<u64> = f.row_sums().into_iter().chain(f.column_sums()).collect();
        f.complete = sums.len() == 1 && sums.first().is_some_and(|&s| s > 0);
        f
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Entry at 1-based value `i` and 1-based column `k`.
    pub fn get(&self, i: usize, k: usize) -> u64 {
        self.counts[(i - 1) * self.order + (k - 1)]
    }

    /// Row-major counts.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.counts.chunks(self.order)
    }

    pub fn max(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (1..=self.order)
            .map(|k| (1..=self.order).map(|i| self.get(i, k)).sum())
            .collect()
    }

    /// `sum_i i * f[i][m]` for every column `m`: the column sums of the
    /// underlying matrix.
    pub fn weighted_column_sums(&self) -> Vec<u64> {
        (1..=self.order)
            .map(|m| (1..=self.order).map(|i| i as u64 * self.get(i, m)).sum())
            .collect()
    }

    /// First `(i, k)` (1-based) at which one of the eight reflections of the
    /// square disagrees with `f[i][k]`, if any.
    pub fn symmetry_violation(&self) -> Option<(usize, usize)> {
        let n = self.order;
        let m = |x: usize| n + 1 - x;
        for i in 1..=n {
            for k in 1..=n {
                let f = self.get(i, k);
                let images = [
                    (m(i), k),
                    (i, m(k)),
                    (m(i), m(k)),
                    (k, i),
                    (m(k), i),
                    (k, m(i)),
                    (m(k), m(i)),
                ];
                if images.iter().any(|&(a, b)| self.get(a, b) != f) {
                    return Some((i, k));
                }
            }
        }
        None
    }
}

/// Frequency matrix of `ucm`; the completeness flag is carried over.
pub fn build_ucfm(ucm: &UniversalCostasMatrix) -> UniversalCostasFrequencyMatrix {
    let n = ucm.order();
    let mut counts = vec![0u64; n * n];
    for row in ucm.rows() {
        for (k, &v) in row.as_zero_based().iter().enumerate() {
            counts[v as usize * n + k] += 1;
        }
    }
    UniversalCostasFrequencyMatrix::from_counts(n, counts, ucm.is_complete())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// Every row sums to `n(n+1)/2`.
    RowSums,
    /// Every column of the matrix has the same sum `S(n)`.
    EqualColumnSums,
    /// `2 S(n) = C(n) (n + 1)`.
    ColumnSumRatio,
    /// Every row and column of the frequency matrix sums to `C(n)`.
    FrequencySums,
    /// Eightfold reflection symmetry of the frequency matrix.
    FrequencySymmetry,
    /// `sum_k k f[k][m] = S(n)` for every column `m`.
    WeightedFrequencySums,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::RowSums,
        CheckKind::EqualColumnSums,
        CheckKind::ColumnSumRatio,
        CheckKind::FrequencySums,
        CheckKind::FrequencySymmetry,
        CheckKind::WeightedFrequencySums,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::RowSums => "row-sums",
            CheckKind::EqualColumnSums => "equal-column-sums",
            CheckKind::ColumnSumRatio => "column-sum-ratio",
            CheckKind::FrequencySums => "ucfm-row-column-sums",
            CheckKind::FrequencySymmetry => "ucfm-symmetry",
            CheckKind::WeightedFrequencySums => "ucfm-weighted-column-sums",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub order: usize,
    pub complete: bool,
    /// Row count of the matrix, `C(n)` when complete.
    pub count: u64,
    /// `n(n+1)/2`.
    pub row_sum: u64,
    /// Common column sum, if all columns agree.
    pub column_sum: Option<u64>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, kind: CheckKind) -> &Check {
        self.checks
            .iter()
            .find(|c| c.kind == kind)
            .expect("every check kind is reported")
    }

    /// `S(n) / C(n)`, which should be `(n + 1) / 2`.
    pub fn ratio(&self) -> Option<f64> {
        match (self.column_sum, self.count) {
            (Some(s), c) if c > 0 => Some(s as f64 / c as f64),
            _ => None,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order: {}", self.order)?;
        writeln!(f, "complete: {}", self.complete)?;
        writeln!(f, "C(n): {}", self.count)?;
        writeln!(f, "D(n): {}", self.row_sum)?;
        match self.column_sum {
            Some(s) => writeln!(f, "S(n): {s}")?,
            None => writeln!(f, "S(n): unequal")?,
        }
        if let Some(r) = self.ratio() {
            writeln!(f, "S(n)/C(n): {r}")?;
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.kind.name(), c.observed)?;
        }
        Ok(())
    }
}

fn distinct(values: impl IntoIterator<Item = u64>) -> BTreeSet<u64> {
    values.into_iter().collect()
}

fn show(values: &BTreeSet<u64>) -> String {
    let parts: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Runs every structural check against `ucm` and its frequency matrix.
///
/// `C(n)` is always the row count of `ucm`, so for partial sets the
/// frequency-sum check becomes an internal-consistency check.
pub fn verify_theorems(
    ucm: &UniversalCostasMatrix,
    ucfm: &UniversalCostasFrequencyMatrix,
) -> Result<VerificationReport, UcmError> {
    if ucm.order() != ucfm.order() {
        return Err(UcmError::OrderMismatch {
            ucm: ucm.order(),
            ucfm: ucfm.order(),
        });
    }
    let n = ucm.order() as u64;
    let count = ucm.count() as u64;
    let row_sum = n * (n + 1) / 2;
    let column_sums = ucm.column_sums();
    let distinct_columns = distinct(column_sums.iter().copied());
    let common = (distinct_columns.len() == 1).then(|| *distinct_columns.first().unwrap());

    let mut checks = Vec::with_capacity(CheckKind::ALL.len());

    let row_sums = distinct(
        ucm.rows()
            .iter()
            .map(|r| r.as_zero_based().iter().map(|&v| v as u64 + 1).sum()),
    );
    checks.push(Check {
        kind: CheckKind::RowSums,
        passed: row_sums.iter().all(|&s| s == row_sum),
        observed: format!("distinct row sums {} (expected {row_sum})", show(&row_sums)),
    });

    checks.push(Check {
        kind: CheckKind::EqualColumnSums,
        passed: common.is_some(),
        observed: format!("distinct column sums {}", show(&distinct_columns)),
    });

    checks.push(Check {
        kind: CheckKind::ColumnSumRatio,
        passed: common.is_some_and(|s| 2 * s == count * (n + 1)),
        observed: match common {
            Some(s) => format!("2*S = {} vs C*(n+1) = {}", 2 * s, count * (n + 1)),
            None => "no common column sum".to_string(),
        },
    });

    let freq_sums = distinct(ucfm.row_sums().into_iter().chain(ucfm.column_sums()));
    checks.push(Check {
        kind: CheckKind::FrequencySums,
        passed: freq_sums.iter().all(|&s| s == count),
        observed: format!(
            "distinct row/column sums {} (expected {count})",
            show(&freq_sums)
        ),
    });

    let violation = ucfm.symmetry_violation();
    checks.push(Check {
        kind: CheckKind::FrequencySymmetry,
        passed: violation.is_none(),
        observed: match violation {
            None => "all eight reflections agree".to_string(),
            Some((i, k)) => format!("asymmetric at ({i}, {k})"),
        },
    });

    let weighted = ucfm.weighted_column_sums();
    let distinct_weighted = distinct(weighted.iter().copied());
    checks.push(Check {
        kind: CheckKind::WeightedFrequencySums,
        passed: common.is_some() && weighted == column_sums,
        observed: format!("distinct weighted sums {}", show(&distinct_weighted)),
    });

    Ok(VerificationReport {
        order: ucm.order(),
        complete: ucm.is_complete(),
        count,
        row_sum,
        column_sum: common,
        checks,
    })
}
