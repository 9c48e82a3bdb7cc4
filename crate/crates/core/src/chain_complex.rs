//! Boundary operators of the rational cellular chain complex.
//!
//! Deleting chord `j` from a cell's diagram either leaves the genus (the
//! child is a face cell) or drops it (the face lies outside the open moduli
//! space and is discarded). Kept faces enter the boundary with a signed
//! weight built from three ingredients: the simplicial sign `(-1)^(j-1)`,
//! the parity `p` of the renumbering that matches the child's induced
//! numeration to the face representative's numeration, and a multiplicity
//! `q * |orbit| / r` where `r` and `q` are the rotation-group orders of the
//! parent and the face and `|orbit|` is the size of the deleted chord's
//! orbit under the parent's symmetry.
//!
//! Chords of one orbit produce identical contributions (for odd-symmetric
//! parents, non-fixed chords contribute zero), so each orbit is counted
//! once when a matrix column is assembled. Boundaries never cross between
//! odd-symmetric cells and the rest: the two families form complementary
//! subcomplexes.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ChordDiagram, Parity, SymmetryInfo};
use crate::enumeration::{Catalog, CellClass, CellRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face {word} of cell {parent} (chord {chord}) missing from catalogue")]
    FaceNotInCatalog {
        parent: String,
        chord: usize,
        word: String,
    },
    #[error("chord {chord} out of range for cell {parent}")]
    ChordOutOfRange { parent: String, chord: usize },
}

/// Where a deletion lands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Face {
    /// Genus dropped; the face is outside the open moduli space.
    Discarded,
    Cell(CellRef),
}

/// One chord deletion of one parent cell, with its coefficient.
#[derive(Debug, Clone)]
pub struct FaceIncidence {
    pub parent: CellRef,
    /// 1-based chord in the parent representative's numeration.
    pub deleted_chord: usize,
    pub face: Face,
    /// Identification parity used for the sign, when one enters the rule.
    pub sign_parity: Option<Parity>,
    /// Per-chord coefficient; orbit mates carry equal values.
    pub alpha: i64,
    /// Size of the deleted chord's orbit under the parent symmetry.
    pub orbit_len: usize,
}

/// A choice of rigid representative (a rotation of the canonical diagram)
/// for every catalogue cell. Coefficients depend on the choice only through
/// a per-cell sign, so ranks and `d∘d = 0` do not.
#[derive(Debug, Clone)]
pub struct Marking {
    reps: BTreeMap<usize, Vec<ChordDiagram>>,
}

impl Marking {
    /// Every cell represented by its canonical diagram.
    pub fn canonical(catalog: &Catalog) -> Marking {
        Self::build(catalog, |_, _| 0)
    }

    /// Every cell represented by a seeded random rotation of its canonical
    /// diagram; exercises representative independence.
    pub fn randomized(catalog: &Catalog, seed: u64) -> Marking {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut shifts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (r, cell) in catalog.iter_cells() {
            shifts
                .entry(r.dim)
                .or_default()
                .push(rng.gen_range(0..2 * cell.chord_count()));
        }
        Self::build(catalog, |r, _| shifts[&r.dim][r.idx])
    }

    fn build(catalog: &Catalog, mut shift: impl FnMut(CellRef, &ChordDiagram) -> usize) -> Marking {
        let mut reps: BTreeMap<usize, Vec<ChordDiagram>> = BTreeMap::new();
        for (r, cell) in catalog.iter_cells() {
            let canonical = cell.diagram();
            let s = shift(r, &canonical);
            reps.entry(r.dim).or_default().push(canonical.rotate(s));
        }
        Marking { reps }
    }

    pub fn rep(&self, r: CellRef) -> &ChordDiagram {
        &self.reps[&r.dim][r.idx]
    }
}

/// Computes the incidence of deleting chord `j` from `parent`.
pub fn boundary_coefficient(
    catalog: &Catalog,
    marking: &Marking,
    parent: CellRef,
    j: usize,
) -> Result<FaceIncidence, ComplexError> {
    let cell = catalog.cell(parent);
    let rep = marking.rep(parent);
    let sym = rep.symmetry();
    incidence_with_sym(catalog, marking, parent, rep, &sym, j)
}

fn incidence_with_sym(
    catalog: &Catalog,
    marking: &Marking,
    parent: CellRef,
    rep: &ChordDiagram,
    sym: &SymmetryInfo,
    j: usize,
) -> Result<FaceIncidence, ComplexError> {
    let cell = catalog.cell(parent);
    let deletion = rep
        .delete_chord(j)
        .map_err(|_| ComplexError::ChordOutOfRange {
            parent: cell.id.clone(),
            chord: j,
        })?;
    let orbit_len = sym.chord_perm.orbit_of(j - 1).len();
    if !deletion.genus_preserved {
        return Ok(FaceIncidence {
            parent,
            deleted_chord: j,
            face: Face::Discarded,
            sign_parity: None,
            alpha: 0,
            orbit_len,
        });
    }
    let face_ref = catalog.find_diagram(&deletion.child).ok_or_else(|| {
        ComplexError::FaceNotInCatalog {
            parent: cell.id.clone(),
            chord: j,
            word: deletion.child.canonicalize().0.render(),
        }
    })?;
    let face_cell = catalog.cell(face_ref);
    let face_rep = marking.rep(face_ref);
    let (alpha, parity) = coefficient(
        &deletion.child,
        j,
        cell.class,
        sym.order,
        orbit_len,
        face_cell.class,
        face_cell.aut.order,
        face_rep,
    );
    Ok(FaceIncidence {
        parent,
        deleted_chord: j,
        face: Face::Cell(face_ref),
        sign_parity: parity,
        alpha,
        orbit_len,
    })
}

/// Coefficient of one kept deletion against a chosen face representative.
///
/// The value already carries the orbit weight `q * orbit_len / r`; the
/// assembled matrix therefore counts each orbit once.
fn coefficient(
    child: &ChordDiagram,
    j: usize,
    parent_class: CellClass,
    parent_order: usize,
    orbit_len: usize,
    face_class: CellClass,
    face_order: usize,
    face_rep: &ChordDiagram,
) -> (i64, Option<Parity>) {
    let r = parent_order as i64;
    let q = face_order as i64;
    match (parent_class.is_odd(), face_class.is_odd()) {
        (true, _) if orbit_len > 1 => (0, None),
        (true, false) => {
            // A fixed chord of an odd-symmetric parent passes the odd
            // generator down to the child, so this cannot happen.
            unreachable!("fixed-chord face of an odd-symmetric cell must be odd-symmetric");
        }
        // Odd cells bound only odd cells and vice versa.
        (false, true) => (0, None),
        (false, false) => {
            let parities = child.isomorphism_parities(face_rep);
            assert_eq!(
                parities.len(),
                1,
                "identification parity must be unambiguous for a non-odd face"
            );
            let p = *parities.iter().next().unwrap();
            let weight = q * orbit_len as i64;
            assert_eq!(weight % r, 0, "orbit weight must come out integral");
            (chord_sign(j, p) * (weight / r), Some(p))
        }
        (true, true) => {
            // Fixed chord of an odd-symmetric parent; the identification
            // carries both parities, resolved by the smallest rotation.
            assert_eq!(
                q % r,
                0,
                "face symmetry order must be a multiple of the parent's"
            );
            let p = child
                .isomorphisms(face_rep)
                .first()
                .expect("face representative must be isomorphic to the child")
                .parity();
            (chord_sign(j, p) * (q / r), Some(p))
        }
    }
}

fn chord_sign(j: usize, p: Parity) -> i64 {
    if (j + p.exponent()) % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Exact integer matrix of one boundary operator in cell bases.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryMatrix {
    /// Source dimension: the operator maps `k`-chains to `(k-1)`-chains.
    pub k: usize,
    /// Face cell ids (dimension `k - 1`), row order.
    pub rows: Vec<String>,
    /// Source cell ids (dimension `k`), column order.
    pub cols: Vec<String>,
    /// Sparse `(row, col, value)` triples, row-major sorted.
    pub entries: Vec<(usize, usize, i64)>,
}

impl BoundaryMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols.len()]; self.rows.len()];
        for &(r, c, v) in &self.entries {
            m[r][c] = v;
        }
        m
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }
}

/// Builds the matrix of the boundary operator out of dimension `k`.
pub fn boundary_matrix(
    catalog: &Catalog,
    marking: &Marking,
    k: usize,
) -> Result<BoundaryMatrix, ComplexError> {
    let sources = catalog.cells(k);
    let faces = catalog.cells(k.wrapping_sub(1));
    let rows: Vec<String> = faces.iter().map(|c| c.id.clone()).collect();
    let cols: Vec<String> = sources.iter().map(|c| c.id.clone()).collect();

    let mut entries: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (idx, _) in sources.iter().enumerate() {
        let parent = CellRef { dim: k, idx };
        let rep = marking.rep(parent);
        let sym = rep.symmetry();
        for orbit in sym.chord_perm.orbits() {
            // Every chord of an orbit must agree on face and coefficient;
            // the orbit then contributes once.
            let mut agreed: Option<(Face, i64)> = None;
            for &c in &orbit {
                let inc = incidence_with_sym(catalog, marking, parent, rep, &sym, c + 1)?;
                match &agreed {
                    None => agreed = Some((inc.face, inc.alpha)),
                    Some((face, a)) => {
                        assert_eq!(*face, inc.face, "orbit mates must share a face");
                        assert_eq!(*a, inc.alpha, "orbit mates must share a coefficient");
                    }
                }
            }
            let (face, alpha) = agreed.expect("orbits are nonempty");
            if alpha == 0 {
                continue;
            }
            if let Face::Cell(f) = face {
                debug_assert_eq!(f.dim + 1, k);
                let entry = entries.entry((f.idx, idx)).or_insert(0);
                *entry += alpha;
            }
        }
    }
    entries.retain(|_, v| *v != 0);
    Ok(BoundaryMatrix {
        k,
        rows,
        cols,
        entries: entries.into_iter().map(|((r, c), v)| (r, c, v)).collect(),
    })
}

/// All boundary operators of a catalogue.
#[derive(Debug, Clone)]
pub struct ChainComplexData {
    pub genus: usize,
    /// Cell counts per dimension.
    pub cells_per_dim: BTreeMap<usize, usize>,
    /// `k ->` matrix of the operator out of dimension `k`.
    pub matrices: BTreeMap<usize, BoundaryMatrix>,
}

impl ChainComplexData {
    pub fn dims(&self) -> Vec<usize> {
        self.cells_per_dim.keys().copied().collect()
    }

    pub fn matrix(&self, k: usize) -> Option<&BoundaryMatrix> {
        self.matrices.get(&k)
    }
}

/// Builds every boundary matrix of the catalogue under a marking.
pub fn build_complex(catalog: &Catalog, marking: &Marking) -> Result<ChainComplexData, ComplexError> {
    let mut matrices = BTreeMap::new();
    for dim in catalog.dims() {
        matrices.insert(dim, boundary_matrix(catalog, marking, dim)?);
    }
    Ok(ChainComplexData {
        genus: catalog.genus,
        cells_per_dim: catalog
            .dims()
            .into_iter()
            .map(|d| (d, catalog.cells(d).len()))
            .collect(),
        matrices,
    })
}

/// Outcome of checking `d_(k-1) ∘ d_k = 0` for one consecutive pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct D2Entry {
    pub k: usize,
    pub ok: bool,
    /// First offending (column, row) of the product when not ok.
    pub offending: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct D2Report {
    pub pairs: Vec<D2Entry>,
}

impl D2Report {
    pub fn all_ok(&self) -> bool {
        self.pairs.iter().all(|e| e.ok)
    }
}

/// Verifies that adjacent boundary operators compose to zero, exactly.
pub fn verify_d2(cc: &ChainComplexData) -> D2Report {
    let mut pairs = Vec::new();
    let dims = cc.dims();
    for &k in &dims {
        if !cc.matrices.contains_key(&(k - 1)) {
            continue;
        }
        let inner = &cc.matrices[&(k - 1)];
        let outer = &cc.matrices[&k];
        pairs.push(compose_is_zero(k, inner, outer));
    }
    D2Report { pairs }
}

fn compose_is_zero(k: usize, inner: &BoundaryMatrix, outer: &BoundaryMatrix) -> D2Entry {
    let a = inner.to_dense();
    let b = outer.to_dense();
    let rows = inner.rows.len();
    let mid = inner.cols.len();
    debug_assert_eq!(mid, outer.rows.len());
    for (col, _) in outer.cols.iter().enumerate() {
        for row in 0..rows {
            let mut acc: i128 = 0;
            for m in 0..mid {
                acc += a[row][m] as i128 * b[m][col] as i128;
            }
            if acc != 0 {
                return D2Entry {
                    k,
                    ok: false,
                    offending: Some((col, row)),
                };
            }
        }
    }
    D2Entry {
        k,
        ok: true,
        offending: None,
    }
}

/// Mutation probe: how many single-entry sign flips of the operator out of
/// dimension `k` break the `d∘d = 0` identity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MutationReport {
    pub k: usize,
    pub entries_tested: usize,
    pub entries_breaking: usize,
}

/// Flips the sign of each nonzero entry of `d_k` in turn and recounts the
/// composition checks around it. A healthy complex loses `d∘d = 0` on such
/// flips, which shows the verification has teeth.
pub fn mutation_check(cc: &ChainComplexData, k: usize) -> MutationReport {
    let base = &cc.matrices[&k];
    let mut breaking = 0;
    for i in 0..base.entries.len() {
        let mut mutated = cc.clone();
        let m = mutated.matrices.get_mut(&k).unwrap();
        m.entries[i].2 = -m.entries[i].2;
        if !verify_d2(&mutated).all_ok() {
            breaking += 1;
        }
    }
    MutationReport {
        k,
        entries_tested: base.entries.len(),
        entries_breaking: breaking,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::build_catalog;

    #[test]
    fn genus_one_boundary_is_zero() {
        let catalog = build_catalog(1).unwrap();
        let marking = Marking::canonical(&catalog);
        let cc = build_complex(&catalog, &marking).unwrap();
        // The lone 2-cell has an odd-symmetric face, so its column is zero.
        let m2 = cc.matrix(2).unwrap();
        assert_eq!(m2.shape(), (1, 1));
        assert!(m2.entries.is_empty());
        let m1 = cc.matrix(1).unwrap();
        assert_eq!(m1.shape(), (0, 1));
        assert!(verify_d2(&cc).all_ok());
    }

    #[test]
    fn discarded_faces_get_zero() {
        let catalog = build_catalog(1).unwrap();
        let marking = Marking::canonical(&catalog);
        // Deleting either chord of the 1-dimensional cell drops the genus.
        let parent = CellRef { dim: 1, idx: 0 };
        for j in 1..=2 {
            let inc = boundary_coefficient(&catalog, &marking, parent, j).unwrap();
            assert_eq!(inc.face, Face::Discarded);
            assert_eq!(inc.alpha, 0);
        }
    }

    #[test]
    fn chord_sign_convention() {
        // (-1)^(j + p - 1): even identification keeps the simplicial sign.
        assert_eq!(chord_sign(1, Parity::Even), 1);
        assert_eq!(chord_sign(2, Parity::Even), -1);
        assert_eq!(chord_sign(1, Parity::Odd), -1);
        assert_eq!(chord_sign(6, Parity::Odd), 1);
    }
}
