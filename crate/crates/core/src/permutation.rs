//! Permutations of `{1..n}`, the Costas property, difference triangles and
//! the dihedral polymorph group acting on them.
//!
//! Values are stored 0-based. Everything that crosses the API boundary as a
//! plain integer (constructors, `Display`, `to_one_based`) is 1-based.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("a permutation must have at least one element")]
    Empty,
    #[error("order {0} exceeds the supported maximum of {max}", max = u16::MAX)]
    TooLarge(usize),
    #[error("value {value} at position {position} is outside 1..={order}")]
    OutOfRange {
        position: usize,
        value: usize,
        order: usize,
    },
    #[error("value {value} appears more than once")]
    Repeated { value: usize },
    #[error("orbit of a non-Costas permutation requested: {0}")]
    NotCostas(Permutation),
    #[error("order {order} is degenerate: its orbit has {size} member(s), not 4 or 8")]
    DegenerateOrder { order: usize, size: usize },
}

/// A bijection on `{1..n}`; one candidate Costas array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Box<[u16]>,
}

impl Permutation {
    /// Builds a permutation from 1-based values, validating the bijection.
    pub fn from_one_based(values: &[usize]) -> Result<Self, PermutationError> {
        let n = values.len();
        if n == 0 {
            return Err(PermutationError::Empty);
        }
        if n > u16::MAX as usize {
            return Err(PermutationError::TooLarge(n));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for (position, &value) in values.iter().enumerate() {
            if value == 0 || value > n {
                return Err(PermutationError::OutOfRange {
                    position: position + 1,
                    value,
                    order: n,
                });
            }
            if std::mem::replace(&mut seen[value - 1], true) {
                return Err(PermutationError::Repeated { value });
            }
            out.push((value - 1) as u16);
        }
        Ok(Self {
            values: out.into_boxed_slice(),
        })
    }

    /// Builds a permutation from 0-based values.
    pub fn from_zero_based(values: Vec<u16>) -> Result<Self, PermutationError> {
        let one_based: Vec<usize> = values.iter().map(|&v| v as usize + 1).collect();
        Self::from_one_based(&one_based)
    }

    /// Callers guarantee `values` is a bijection on `0..values.len()`.
    pub(crate) fn from_zero_based_unchecked(values: Vec<u16>) -> Self {
        debug_assert!(is_bijection(&values));
        Self {
            values: values.into_boxed_slice(),
        }
    }

    pub fn identity(n: usize) -> Result<Self, PermutationError> {
        let values: Vec<usize> = (1..=n).collect();
        Self::from_one_based(&values)
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// 0-based values, indexed by 0-based position.
    pub fn as_zero_based(&self) -> &[u16] {
        &self.values
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.values.iter().map(|&v| v as usize + 1).collect()
    }

    /// 1-based value at 1-based `position`.
    pub fn value_at(&self, position: usize) -> usize {
        self.values[position - 1] as usize + 1
    }

    /// 1-based first element; the UCM block this permutation belongs to.
    pub fn first(&self) -> usize {
        self.values[0] as usize + 1
    }

    /// Binary matrix view indexed `[value][position]` (both 0-based):
    /// entry is 1 iff the permutation takes that value at that position.
    /// Summing these over the rows of a UCM gives its frequency matrix.
    pub fn binary_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.order();
        let mut m = vec![vec![0u8; n]; n];
        for (k, &v) in self.values.iter().enumerate() {
            m[v as usize][k] = 1;
        }
        m
    }

    /// True iff every row of the difference triangle has distinct entries.
    pub fn is_costas(&self) -> bool {
        is_costas_slice(&self.values)
    }

    pub fn difference_triangle(&self) -> DifferenceTriangle {
        let n = self.order();
        let rows = (1..n)
            .map(|d| {
                (0..n - d)
                    .map(|k| self.values[k + d] as i32 - self.values[k] as i32)
                    .collect()
            })
            .collect();
        DifferenceTriangle { rows }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.order()];
        for (k, &v) in self.values.iter().enumerate() {
            inv[v as usize] = k as u16;
        }
        Self::from_zero_based_unchecked(inv)
    }

    /// `k -> n + 1 - p(k)`
    pub fn complement(&self) -> Self {
        let top = self.order() as u16 - 1;
        Self::from_zero_based_unchecked(self.values.iter().map(|&v| top - v).collect())
    }

    /// `k -> p(n + 1 - k)`
    pub fn reverse(&self) -> Self {
        Self::from_zero_based_unchecked(self.values.iter().rev().copied().collect())
    }

    pub fn transform(&self, g: Dihedral) -> Self {
        let base = if g.inverts() {
            self.inverse()
        } else {
            self.clone()
        };
        let base = if g.reverses() { base.reverse() } else { base };
        if g.complements() {
            base.complement()
        } else {
            base
        }
    }

    /// Deduplicated closure under [`Dihedral::ALL`], first occurrence kept.
    /// Defined for every order and every permutation; see [`orbit`] for the
    /// checked variant.
    pub fn polymorphs(&self) -> Vec<Permutation> {
        let mut members: Vec<Permutation> = Vec::with_capacity(8);
        for g in Dihedral::ALL {
            let q = self.transform(g);
            if !members.contains(&q) {
                members.push(q);
            }
        }
        members
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

fn is_bijection(values: &[u16]) -> bool {
    let mut seen = vec![false; values.len()];
    values
        .iter()
        .all(|&v| (v as usize) < values.len() && !std::mem::replace(&mut seen[v as usize], true))
}

pub(crate) fn is_costas_slice(values: &[u16]) -> bool {
    let n = values.len();
    // differences live in [-(n-1), n-1], offset by n-1
    let mut seen = vec![false; 2 * n];
    for d in 1..n {
        seen.iter_mut().for_each(|s| *s = false);
        for k in 0..n - d {
            let idx = (values[k + d] as isize - values[k] as isize + n as isize - 1) as usize;
            if std::mem::replace(&mut seen[idx], true) {
                return false;
            }
        }
    }
    true
}

/// Row `d` (1-based distance) holds `p[k+d] - p[k]` for every valid `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceTriangle {
    rows: Vec<Vec<i32>>,
}

impl DifferenceTriangle {
    /// Number of rows, `n - 1`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Differences at distance `d`, `1 <= d <= n - 1`.
    pub fn row(&self, d: usize) -> &[i32] {
        &self.rows[d - 1]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i32]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn all_rows_distinct(&self) -> bool {
        self.rows.iter().all(|row| {
            let mut sorted = row.clone();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        })
    }
}

/// The eight symmetries of the square, realised on permutations as
/// compositions of inverse (transpose), reverse and complement. Inverse is
/// applied first, then reverse, then complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dihedral {
    Identity,
    Complement,
    Reverse,
    ReverseComplement,
    Inverse,
    InverseComplement,
    InverseReverse,
    InverseReverseComplement,
}

impl Dihedral {
    /// Fixed application order used for orbit generation.
    pub const ALL: [Dihedral; 8] = [
        Dihedral::Identity,
        Dihedral::Complement,
        Dihedral::Reverse,
        Dihedral::ReverseComplement,
        Dihedral::Inverse,
        Dihedral::InverseComplement,
        Dihedral::InverseReverse,
        Dihedral::InverseReverseComplement,
    ];

    fn inverts(self) -> bool {
        matches!(
            self,
            Dihedral::Inverse
                | Dihedral::InverseComplement
                | Dihedral::InverseReverse
                | Dihedral::InverseReverseComplement
        )
    }

    fn reverses(self) -> bool {
        matches!(
            self,
            Dihedral::Reverse
                | Dihedral::ReverseComplement
                | Dihedral::InverseReverse
                | Dihedral::InverseReverseComplement
        )
    }

    fn complements(self) -> bool {
        matches!(
            self,
            Dihedral::Complement
                | Dihedral::ReverseComplement
                | Dihedral::InverseComplement
                | Dihedral::InverseReverseComplement
        )
    }
}

/// Equivalence class of a Costas array under [`Dihedral`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    members: Vec<Permutation>,
}

impl Orbit {
    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn into_members(self) -> Vec<Permutation> {
        self.members
    }
}

/// Orbit of a Costas permutation of order `n >= 3`.
///
/// For `n <= 2` the closure has 1 or 2 members; that size is reported in
/// [`PermutationError::DegenerateOrder`].
pub fn orbit(p: &Permutation) -> Result<Orbit, PermutationError> {
    if !p.is_costas() {
        return Err(PermutationError::NotCostas(p.clone()));
    }
    let members = p.polymorphs();
    if p.order() <= 2 {
        return Err(PermutationError::DegenerateOrder {
            order: p.order(),
            size: members.len(),
        });
    }
    debug_assert!(members.len() == 4 || members.len() == 8);
    Ok(Orbit { members })
}
