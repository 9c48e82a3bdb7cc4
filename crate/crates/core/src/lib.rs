//! Combinatorial moduli of once-marked curves: chord-diagram catalogues,
//! exact boundary operators, and rational homology.
//!
//! A gluing of a `2n`-gon into a closed oriented surface is encoded by a
//! chord diagram (equivalently a Gaussian word); rotation classes of such
//! diagrams with all vertex degrees at least three are the cells of the
//! combinatorial moduli space of genus-`g` curves with one marked point.
//! This crate enumerates the catalogue of cells per genus, assembles the
//! rational boundary operators from chord deletions, and computes exact
//! ranks, Betti numbers and Euler characteristics, all in integer and
//! rational arithmetic.

pub mod cache;
pub mod chain_complex;
pub mod diagram;
pub mod enumeration;
pub mod exact_linalg;
pub mod invariants;
pub mod labels;
pub mod word;

/// Arbitrary-precision integer used wherever exactness is authoritative.
pub type Int = num::BigInt;

/// Exact rational scalar for Euler characteristics and coefficient checks.
pub type Rational = num::rational::Ratio<i64>;

/// Exact matrix over [`Int`], the authoritative rank backend.
pub type IntMatrix = exact_linalg::ExactMatrix<Int>;

pub use chain_complex::{
    boundary_matrix, build_complex, mutation_check, verify_d2, BoundaryMatrix, ChainComplexData,
    Face, FaceIncidence, Marking,
};
pub use diagram::{ChordDiagram, DeletionResult, Parity, Permutation, SymmetryInfo};
pub use enumeration::{
    build_catalog, build_catalog_with_budget, brute_force_oracle, enumerate_cells, Catalog, Cell,
    CellClass, CellRef,
};
pub use exact_linalg::{betti, BettiReport};
pub use invariants::{euler, EulerReport};
pub use word::GaussianWord;
