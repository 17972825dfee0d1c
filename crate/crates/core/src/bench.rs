//! Runtime comparison of reconstruction from a given frequency matrix
//! against symmetry-reduced enumeration.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::reconstruct::{reconstruct_ucm_with, ReconstructError};
use crate::search::{enumerate_all_via_symmetry_with, SearchConfig, SearchError};
use crate::ucm::{build_ucfm, build_ucm_with, UcmError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("invalid order range {min}..={max}; need 4 <= min <= max")]
    BadRange { min: usize, max: usize },
    #[error("runs must be at least 1")]
    NoRuns,
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Ucm(#[from] UcmError),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
}

/// Timed runs per order when none is requested: 10 below order 13, 3 from
/// there on.
pub fn default_runs(n: usize) -> usize {
    if n < 13 {
        10
    } else {
        3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub mean_s: f64,
    pub min_s: f64,
    pub max_s: f64,
}

impl Timing {
    fn from_samples(samples: &[Duration]) -> Self {
        let secs: Vec<f64> = samples.iter().map(Duration::as_secs_f64).collect();
        Self {
            mean_s: secs.iter().sum::<f64>() / secs.len() as f64,
            min_s: secs.iter().copied().fold(f64::INFINITY, f64::min),
            max_s: secs.iter().copied().fold(0.0, f64::max),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub order: usize,
    pub runs: usize,
    pub arrays: usize,
    pub reconstruction: Timing,
    pub enumeration: Timing,
    pub reconstruction_nodes: u64,
    pub enumeration_nodes: u64,
    /// `100 * (1 - mean(reconstruction) / mean(enumeration))`
    pub improvement_pct: f64,
}

impl BenchRow {
    pub fn recomputed_improvement(&self) -> f64 {
        improvement(self.reconstruction.mean_s, self.enumeration.mean_s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Orders dropped because the two methods disagreed on the array set.
    pub invalid_orders: Vec<usize>,
}

pub fn improvement(reconstruction_mean: f64, enumeration_mean: f64) -> f64 {
    100.0 * (1.0 - reconstruction_mean / enumeration_mean)
}

/// Benchmarks every order in `min..=max`. `runs = None` uses
/// [`default_runs`]. The frequency matrix is built before timing starts, and
/// an order is only timed after both methods produced the same array set.
pub fn bench_compare(
    min: usize,
    max: usize,
    runs: Option<usize>,
    config: &SearchConfig,
) -> Result<BenchReport, BenchError> {
    if min < 4 || min > max {
        return Err(BenchError::BadRange { min, max });
    }
    if runs == Some(0) {
        return Err(BenchError::NoRuns);
    }
    let cap = config.order_cap.min(crate::search::MAX_SUPPORTED_ORDER);
    if max > cap {
        return Err(SearchError::OrderTooLarge { order: max, cap }.into());
    }
    let mut report = BenchReport {
        rows: Vec::new(),
        invalid_orders: Vec::new(),
    };
    for n in min..=max {
        let ucfm = build_ucfm(&build_ucm_with(n, config)?);

        // untimed validation pass, doubling as warm-up
        let (reconstructed, stats) = reconstruct_ucm_with(&ucfm, config)?;
        let enumerated = enumerate_all_via_symmetry_with(n, config)?;
        if reconstructed.rows() != enumerated.arrays.as_slice() {
            report.invalid_orders.push(n);
            continue;
        }

        let runs = runs.unwrap_or_else(|| default_runs(n));
        let mut rec_samples = Vec::with_capacity(runs);
        let mut enum_samples = Vec::with_capacity(runs);
        for _ in 0..runs {
            let start = Instant::now();
            let out = reconstruct_ucm_with(&ucfm, config)?;
            rec_samples.push(start.elapsed());
            drop(out);

            let start = Instant::now();
            let out = enumerate_all_via_symmetry_with(n, config)?;
            enum_samples.push(start.elapsed());
            drop(out);
        }
        let reconstruction = Timing::from_samples(&rec_samples);
        let enumeration = Timing::from_samples(&enum_samples);
        report.rows.push(BenchRow {
            order: n,
            runs,
            arrays: enumerated.count(),
            reconstruction,
            enumeration,
            reconstruction_nodes: stats.nodes,
            enumeration_nodes: enumerated.nodes,
            improvement_pct: improvement(reconstruction.mean_s, enumeration.mean_s),
        });
    }
    Ok(report)
}
