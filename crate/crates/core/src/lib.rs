//! Costas arrays, universal Costas matrices and their frequency matrices.
//!
//! * [`permutation`]: permutations, the Costas test, difference triangles and
//!   dihedral orbits.
//! * [`search`]: bitmask backtracking enumeration.
//! * [`ucm`]: canonical matrices of all arrays of one order, frequency
//!   matrices and the structural checks that hold for them.
//! * [`reconstruct`]: rebuilding a matrix from its frequency matrix.
//! * [`io`]: arrays files, frequency-matrix CSV and PGM heatmaps.
//! * [`bench`]: runtime comparison of reconstruction against enumeration.

pub mod bench;
pub mod io;
pub mod permutation;
pub mod reconstruct;
pub mod search;
pub mod ucm;

pub use permutation::{orbit, DifferenceTriangle, Dihedral, Orbit, Permutation, PermutationError};
pub use reconstruct::{derive_count, reconstruct_ucm, BlockLedger, ReconstructError};
pub use search::{
    enumerate_all_via_symmetry, enumerate_costas, EnumerationResult, SearchConfig, SearchError,
    SearchState,
};
pub use ucm::{
    build_ucfm, build_ucm, build_ucm_from_arrays, verify_theorems, UcmError,
    UniversalCostasFrequencyMatrix, UniversalCostasMatrix, VerificationReport,
};
