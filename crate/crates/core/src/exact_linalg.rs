//! Exact rank computation over the rationals and Betti number assembly.
//!
//! Ranks are computed by fraction-free (Bareiss) elimination, generic over
//! the integer scalar; the crate-root alias [`crate::Int`] instantiates it
//! with arbitrary-precision integers, which the boundary matrices of the
//! shipped catalogues require nothing less than on principle: no floating
//! point ever enters this module.

use std::collections::BTreeMap;

use num::{Integer, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain_complex::ChainComplexData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("negative Betti number {value} in dimension {dim}: inconsistent matrices")]
    NegativeBetti { dim: usize, value: i64 },
}

/// Scalar admissible for fraction-free elimination.
pub trait Entry: Clone + Integer + Signed {}

impl<T: Clone + Integer + Signed> Entry for T {}

/// Dense exact matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Entry> ExactMatrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: std::iter::repeat_with(T::zero).take(rows * cols).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        debug_assert!(rows.iter().all(|row| row.len() == c));
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_triples<I>(rows: usize, cols: usize, triples: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in triples {
            *m.get_mut(r, c) = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        t
    }

    /// Rank over the rationals via Bareiss elimination with row/column
    /// pivot search. All arithmetic stays in the integers; the interleaved
    /// divisions are exact by the Bareiss identity.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let steps = m.rows.min(m.cols);
        let mut prev = T::one();
        for k in 0..steps {
            // Pivot search over the untouched block.
            let mut pivot = None;
            'search: for r in k..m.rows {
                for c in k..m.cols {
                    if !m.get(r, c).is_zero() {
                        pivot = Some((r, c));
                        break 'search;
                    }
                }
            }
            let Some((pr, pc)) = pivot else {
                return k;
            };
            m.swap_rows(k, pr);
            m.swap_cols(k, pc);
            for r in k + 1..m.rows {
                for c in k + 1..m.cols {
                    let num = m.get(r, c).clone() * m.get(k, k).clone()
                        - m.get(r, k).clone() * m.get(k, c).clone();
                    debug_assert!(num.is_multiple_of(&prev));
                    *m.get_mut(r, c) = num / prev.clone();
                }
                *m.get_mut(r, k) = T::zero();
            }
            prev = m.get(k, k).clone();
        }
        steps
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

/// Converts an assembled boundary matrix into exact form.
pub fn exact_from_boundary<T: Entry + From<i64>>(
    m: &crate::chain_complex::BoundaryMatrix,
) -> ExactMatrix<T> {
    ExactMatrix::from_triples(
        m.rows.len(),
        m.cols.len(),
        m.entries.iter().map(|&(r, c, v)| (r, c, T::from(v))),
    )
}

/// Exact rank of a boundary matrix over the rationals.
pub fn boundary_rank(m: &crate::chain_complex::BoundaryMatrix) -> usize {
    exact_from_boundary::<crate::Int>(m).rank()
}

/// Betti data of one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub dim: usize,
    /// Number of cells, `dim C_k`.
    pub cells: usize,
    /// Rank of the operator out of this dimension.
    pub rank_out: usize,
    /// Rank of the operator coming in from dimension `k + 1`.
    pub rank_in: usize,
    pub betti: usize,
}

/// Betti numbers of a chain complex, with the Euler cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub rows: Vec<BettiRow>,
    /// Alternating sum of Betti numbers.
    pub euler_from_betti: i64,
    /// Alternating sum of cell counts; must agree with the above.
    pub euler_from_cells: i64,
}

impl BettiReport {
    pub fn betti(&self, dim: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.dim == dim).map(|r| r.betti)
    }

    pub fn rank_out(&self, dim: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.dim == dim).map(|r| r.rank_out)
    }
}

/// Computes `b_k = dim C_k - rk d_k - rk d_(k+1)` over all dimensions of
/// the complex, with ranks taken as zero beyond its range.
pub fn betti(cc: &ChainComplexData) -> Result<BettiReport, LinalgError> {
    let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
    for (&k, m) in &cc.matrices {
        ranks.insert(k, boundary_rank(m));
    }
    let mut rows = Vec::new();
    for (&dim, &cells) in &cc.cells_per_dim {
        let rank_out = ranks.get(&dim).copied().unwrap_or(0);
        let rank_in = ranks.get(&(dim + 1)).copied().unwrap_or(0);
        let b = cells as i64 - rank_out as i64 - rank_in as i64;
        if b < 0 {
            return Err(LinalgError::NegativeBetti { dim, value: b });
        }
        rows.push(BettiRow {
            dim,
            cells,
            rank_out,
            rank_in,
            betti: b as usize,
        });
    }
    let euler_from_betti = rows
        .iter()
        .map(|r| sign_pow(r.dim) * r.betti as i64)
        .sum();
    let euler_from_cells = rows
        .iter()
        .map(|r| sign_pow(r.dim) * r.cells as i64)
        .sum();
    debug_assert_eq!(euler_from_betti, euler_from_cells);
    Ok(BettiReport {
        rows,
        euler_from_betti,
        euler_from_cells,
    })
}

fn sign_pow(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn m64(rows: Vec<Vec<i64>>) -> ExactMatrix<i64> {
        ExactMatrix::from_rows(rows)
    }

    #[test]
    fn rank_of_trivial_matrices() {
        assert_eq!(ExactMatrix::<i64>::zero(7, 3).rank(), 0);
        assert_eq!(ExactMatrix::<i64>::identity(5).rank(), 5);
        assert_eq!(ExactMatrix::<Int>::identity(5).rank(), 5);
    }

    #[test]
    fn rank_detects_dependent_rows() {
        let m = m64(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn rank_needs_column_pivoting() {
        let m = m64(vec![vec![0, 0, 1], vec![0, 0, 2], vec![0, 0, 3]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn bareiss_survives_growth() {
        // Hilbert-like integer matrix with large intermediate products.
        let n = 8;
        let rows: Vec<Vec<Int>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| Int::from(((r + c) as i64).pow(3) + 1))
                    .collect()
            })
            .collect();
        let m = ExactMatrix::from_rows(rows);
        // Cubes plus one span a four-dimensional polynomial family.
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn single_cell_complex_has_betti_one() {
        use crate::chain_complex::BoundaryMatrix;
        let cc = ChainComplexData {
            genus: 0,
            cells_per_dim: [(0usize, 1usize)].into_iter().collect(),
            matrices: [(
                0usize,
                BoundaryMatrix {
                    k: 0,
                    rows: vec![],
                    cols: vec!["c".into()],
                    entries: vec![],
                },
            )]
            .into_iter()
            .collect(),
        };
        let report = betti(&cc).unwrap();
        assert_eq!(report.betti(0), Some(1));
    }
}
