//! Text and image formats.
//!
//! * Arrays file: one permutation per line, 1-based values separated by
//!   spaces. Lines starting with `#` are comments; blank lines are skipped.
//! * UCFM CSV: `n` lines of `n` comma-separated non-negative integers, no
//!   header.
//! * Heatmap: binary greyscale PGM (`P5`), one pixel per matrix entry,
//!   scaled so the largest count maps to 255.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use log::warn;
use thiserror::Error;

use crate::permutation::{Permutation, PermutationError};
use crate::ucm::UniversalCostasFrequencyMatrix;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: cannot parse {token:?} as a positive integer")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: {source}")]
    BadPermutation {
        line: usize,
        #[source]
        source: PermutationError,
    },
    #[error("line {line}: order {found} differs from order {expected} of earlier lines")]
    MixedOrders {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: not a Costas array: {array}")]
    NotCostas { line: usize, array: Permutation },
    #[error("frequency matrix is empty")]
    EmptyMatrix,
    #[error("line {line}: expected {expected} cells, found {found}; the matrix must be square")]
    NotSquare {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: {token:?} is not an integer")]
    NonInteger {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("line {line}, column {column}: negative count {value}")]
    NegativeCell {
        line: usize,
        column: usize,
        value: i64,
    },
}

fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_text(path: &Path, text: &[u8]) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses an arrays file. Every data line must be a permutation of a common
/// order; with `require_costas` non-Costas lines are rejected too. Repeated
/// lines are kept and logged.
pub fn parse_arrays(text: &str, require_costas: bool) -> Result<Vec<Permutation>, FormatError> {
    let mut arrays = Vec::new();
    let mut first_seen: HashMap<Permutation, usize> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let values = trimmed
            .split_whitespace()
            .map(|token| {
                token.parse::<usize>().map_err(|_| FormatError::BadInteger {
                    line,
                    token: token.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let p = Permutation::from_one_based(&values)
            .map_err(|source| FormatError::BadPermutation { line, source })?;
        if let Some(expected) = arrays.first().map(Permutation::order) {
            if p.order() != expected {
                return Err(FormatError::MixedOrders {
                    line,
                    expected,
                    found: p.order(),
                });
            }
        }
        if require_costas && !p.is_costas() {
            return Err(FormatError::NotCostas { line, array: p });
        }
        if let Some(&earlier) = first_seen.get(&p) {
            warn!("line {line}: duplicate of line {earlier}: {p}");
        } else {
            first_seen.insert(p.clone(), line);
        }
        arrays.push(p);
    }
    Ok(arrays)
}

pub fn format_arrays(arrays: &[Permutation]) -> String {
    let mut out = String::new();
    for p in arrays {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

pub fn read_arrays(path: &Path, require_costas: bool) -> Result<Vec<Permutation>, FormatError> {
    parse_arrays(&read_text(path)?, require_costas)
}

pub fn write_arrays(arrays: &[Permutation], path: &Path) -> Result<(), FormatError> {
    write_text(path, format_arrays(arrays).as_bytes())
}

/// Parses a UCFM CSV; completeness is inferred from the sums.
pub fn parse_ucfm(text: &str) -> Result<UniversalCostasFrequencyMatrix, FormatError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let n = lines.len();
    if n == 0 {
        return Err(FormatError::EmptyMatrix);
    }
    let mut counts = Vec::with_capacity(n * n);
    for (line, content) in lines {
        let cells: Vec<&str> = content.split(',').map(str::trim).collect();
        if cells.len() != n {
            return Err(FormatError::NotSquare {
                line,
                expected: n,
                found: cells.len(),
            });
        }
        for (c, token) in cells.into_iter().enumerate() {
            let column = c + 1;
            let value: i64 = token.parse().map_err(|_| FormatError::NonInteger {
                line,
                column,
                token: token.to_string(),
            })?;
            if value < 0 {
                return Err(FormatError::NegativeCell {
                    line,
                    column,
                    value,
                });
            }
            counts.push(value as u64);
        }
    }
    Ok(UniversalCostasFrequencyMatrix::from_counts_inferred(
        n, counts,
    ))
}

pub fn format_ucfm(ucfm: &UniversalCostasFrequencyMatrix) -> String {
    let mut out = String::new();
    for row in ucfm.rows() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn read_ucfm(path: &Path) -> Result<UniversalCostasFrequencyMatrix, FormatError> {
    parse_ucfm(&read_text(path)?)
}

pub fn write_ucfm(ucfm: &UniversalCostasFrequencyMatrix, path: &Path) -> Result<(), FormatError> {
    write_text(path, format_ucfm(ucfm).as_bytes())
}

/// Pixel value for one count: `floor(255 * count / max + 1/2)`, 0 when the
/// matrix is all zero.
pub fn heatmap_pixel(count: u64, max: u64) -> u8 {
    if max == 0 {
        return 0;
    }
    let scaled = (510 * count as u128 + max as u128) / (2 * max as u128);
    scaled as u8
}

/// Binary PGM of `ucfm`: row `i` of the image is value `i`, top to bottom.
pub fn render_heatmap(ucfm: &UniversalCostasFrequencyMatrix) -> Vec<u8> {
    let n = ucfm.order();
    let max = ucfm.max();
    let header = format!("P5\n{n} {n}\n255\n");
    let mut out = Vec::with_capacity(header.len() + n * n);
    out.extend_from_slice(header.as_bytes());
    out.extend(ucfm.counts().iter().map(|&c| heatmap_pixel(c, max)));
    out
}

pub fn write_heatmap(
    ucfm: &UniversalCostasFrequencyMatrix,
    path: &Path,
) -> Result<(), FormatError> {
    write_text(path, &render_heatmap(ucfm))
}
