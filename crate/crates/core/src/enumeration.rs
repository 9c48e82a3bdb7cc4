//! Catalogue enumeration: rotation classes of one-face gluings by genus.
//!
//! A gluing of a `2n`-gon is a cell of the combinatorial moduli space when
//! its glued graph has the requested genus and every vertex has degree at
//! least three (critical graphs never carry free or subdividing vertices).
//! One face is automatic: the polygon interior is the single complement disk.

use std::collections::BTreeMap;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ChordDiagram, Parity, SymmetryInfo};
use crate::word::GaussianWord;

/// Default work budget: projected elementary steps across all matchings.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Catalogue JSON schema version; bump on any layout change.
pub const SCHEMA_VERSION: u32 = 1;

const MIN_VERTEX_DEGREE: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("size limit exceeded: projected work {projected} over budget {budget}")]
    SizeLimitExceeded { projected: u128, budget: u128 },
}

/// How a cell quotient sits over its simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellClass {
    /// Trivial rotation group: the cell is an honest simplex.
    Simple,
    /// Nontrivial group inducing an even chord permutation.
    SpecialEven,
    /// Nontrivial group inducing an odd chord permutation.
    SpecialOdd,
}

impl CellClass {
    pub fn of(aut: &SymmetryInfo) -> CellClass {
        if aut.order == 1 {
            CellClass::Simple
        } else if aut.parity == Parity::Even {
            CellClass::SpecialEven
        } else {
            CellClass::SpecialOdd
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, CellClass::SpecialOdd)
    }
}

impl std::fmt::Display for CellClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CellClass::Simple => f.write_str("simple"),
            CellClass::SpecialEven => f.write_str("special_even"),
            CellClass::SpecialOdd => f.write_str("special_odd"),
        }
    }
}

/// One catalogue entry.
#[derive(Debug, Clone)]
pub struct Cell {
    /// Stable identifier `g{genus}-n{chords}-{ordinal}`.
    pub id: String,
    /// Canonical (lex-min over rotations) word of the rotation class.
    pub word: GaussianWord,
    /// Cell dimension, `chords - 1`.
    pub dim: usize,
    pub aut: SymmetryInfo,
    pub class: CellClass,
}

impl Cell {
    pub fn chord_count(&self) -> usize {
        self.dim + 1
    }

    pub fn diagram(&self) -> ChordDiagram {
        ChordDiagram::from(&self.word)
    }
}

/// Position of a cell inside a catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub dim: usize,
    pub idx: usize,
}

/// The full cell catalogue of one genus.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub genus: usize,
    pub cells_by_dim: BTreeMap<usize, Vec<Cell>>,
    index: HashMap<GaussianWord, CellRef>,
}

impl Catalog {
    pub fn cell(&self, r: CellRef) -> &Cell {
        &self.cells_by_dim[&r.dim][r.idx]
    }

    /// Looks a cell up by the canonical word of its class.
    pub fn find_by_canonical_word(&self, word: &GaussianWord) -> Option<CellRef> {
        self.index.get(word).copied()
    }

    /// Looks a diagram up by canonicalizing it first.
    pub fn find_diagram(&self, d: &ChordDiagram) -> Option<CellRef> {
        self.find_by_canonical_word(&d.canonicalize().0)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.cells_by_dim.keys().copied().collect()
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells_by_dim.get(&dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn total_cells(&self) -> usize {
        self.cells_by_dim.values().map(Vec::len).sum()
    }

    pub fn iter_cells(&self) -> impl Iterator<Item = (CellRef, &Cell)> {
        self.cells_by_dim.iter().flat_map(|(&dim, cells)| {
            cells
                .iter()
                .enumerate()
                .map(move |(idx, c)| (CellRef { dim, idx }, c))
        })
    }

    fn from_cells(genus: usize, mut by_dim: BTreeMap<usize, Vec<Cell>>) -> Catalog {
        let mut index = HashMap::new();
        for (&dim, cells) in by_dim.iter_mut() {
            for (idx, cell) in cells.iter().enumerate() {
                index.insert(cell.word.clone(), CellRef { dim, idx });
            }
        }
        Catalog {
            genus,
            cells_by_dim: by_dim,
            index,
        }
    }
}

/// Double factorial `(2n-1)!!`, the number of matchings on `2n` points.
pub fn matching_count(n: usize) -> u128 {
    let mut acc: u128 = 1;
    let mut k: u128 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(k);
        k += 2;
    }
    acc
}

/// Chord-count range that can carry genus-`g` cells: at least `2g` chords
/// (one vertex) and at most `6g - 3` (3-valent graphs).
pub fn chord_range(genus: usize) -> std::ops::RangeInclusive<usize> {
    if genus == 0 {
        // No stable cells; kept for API totality.
        return 1..=0;
    }
    2 * genus..=6 * genus - 3
}

fn is_cell(d: &ChordDiagram, genus: usize) -> bool {
    d.min_vertex_degree() >= MIN_VERTEX_DEGREE && d.genus() == Ok(genus)
}

/// Visits every perfect matching on `0..2n` extending `mate`, in
/// lexicographic order of pair choices.
fn for_each_matching<F: FnMut(&[usize])>(mate: &mut [usize], f: &mut F) {
    const FREE: usize = usize::MAX;
    let m = mate.len();
    let Some(i) = (0..m).find(|&i| mate[i] == FREE) else {
        f(mate);
        return;
    };
    for j in i + 1..m {
        if mate[j] == FREE {
            mate[i] = j;
            mate[j] = i;
            for_each_matching(mate, f);
            mate[i] = FREE;
            mate[j] = FREE;
        }
    }
}

fn collect_cells_with_root(n: usize, genus: usize, first_mate: usize) -> Vec<GaussianWord> {
    const FREE: usize = usize::MAX;
    let mut mate = vec![FREE; 2 * n];
    mate[0] = first_mate;
    mate[first_mate] = 0;
    let mut found = Vec::new();
    for_each_matching(&mut mate, &mut |full| {
        let d = ChordDiagram::from_mates(full.to_vec());
        if d.is_canonical() && is_cell(&d, genus) {
            found.push(d.standard_word());
        }
    });
    found
}

/// Enumerates all cells with `n` chords and the given genus, one per
/// rotation class, ordered by canonical word.
///
/// The search walks every matching but keeps only rotation-canonical ones,
/// so each class is produced exactly once with no dedup set. The top split
/// on the mate of position 0 feeds the worker pool.
pub fn enumerate_cells(n: usize, genus: usize) -> Vec<Cell> {
    if n == 0 {
        return Vec::new();
    }
    let mut words: Vec<GaussianWord> = (1..2 * n)
        .into_par_iter()
        .flat_map_iter(|first_mate| collect_cells_with_root(n, genus, first_mate))
        .collect();
    words.sort_unstable();
    words
        .into_iter()
        .enumerate()
        .map(|(i, word)| make_cell(genus, n, i, word))
        .collect()
}

fn make_cell(genus: usize, n: usize, ordinal: usize, word: GaussianWord) -> Cell {
    let aut = ChordDiagram::from(&word).symmetry();
    let class = CellClass::of(&aut);
    Cell {
        id: format!("g{}-n{}-{}", genus, n, ordinal + 1),
        word,
        dim: n - 1,
        aut,
        class,
    }
}

/// Deliberately naive oracle: iterate all `(2n-1)!!` matchings, canonicalize
/// each, dedupe, and filter. Limited to `n <= 7`; test and verification use
/// only.
pub fn brute_force_oracle(n: usize, genus: usize) -> Result<Vec<GaussianWord>, EnumerationError> {
    if n > 7 {
        return Err(EnumerationError::SizeLimitExceeded {
            projected: matching_count(n),
            budget: matching_count(7),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut mate = vec![usize::MAX; 2 * n];
    for_each_matching(&mut mate, &mut |full| {
        let d = ChordDiagram::from_mates(full.to_vec());
        if is_cell(&d, genus) {
            seen.insert(d.canonicalize().0);
        }
    });
    Ok(seen.into_iter().collect())
}

/// Builds the complete catalogue of a genus across all chord counts.
pub fn build_catalog(genus: usize) -> Result<Catalog, EnumerationError> {
    build_catalog_with_budget(genus, DEFAULT_BUDGET)
}

/// As [`build_catalog`], refusing up front when the projected matching count
/// exceeds `budget`. Pass `u128::MAX` to override the guard.
pub fn build_catalog_with_budget(genus: usize, budget: u128) -> Result<Catalog, EnumerationError> {
    let range = chord_range(genus);
    let projected: u128 = range.clone().map(matching_count).sum();
    if projected > budget {
        return Err(EnumerationError::SizeLimitExceeded { projected, budget });
    }
    let mut by_dim = BTreeMap::new();
    for n in range {
        let cells = enumerate_cells(n, genus);
        if !cells.is_empty() {
            by_dim.insert(n - 1, cells);
        }
    }
    Ok(Catalog::from_cells(genus, by_dim))
}

/// Serialized cell record; field set is the stable on-disk schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellRecord {
    pub id: String,
    pub word: String,
    pub dim: usize,
    pub aut_order: usize,
    pub aut_parity: Parity,
    pub class: CellClass,
}

impl From<&Cell> for CellRecord {
    fn from(c: &Cell) -> Self {
        CellRecord {
            id: c.id.clone(),
            word: c.word.render(),
            dim: c.dim,
            aut_order: c.aut.order,
            aut_parity: c.aut.parity,
            class: c.class,
        }
    }
}

/// Serialized catalogue document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogDoc {
    pub genus: usize,
    pub cells: Vec<CellRecord>,
}

impl CatalogDoc {
    pub fn from_catalog(catalog: &Catalog) -> CatalogDoc {
        CatalogDoc {
            genus: catalog.genus,
            cells: catalog
                .iter_cells()
                .map(|(_, c)| CellRecord::from(c))
                .collect(),
        }
    }

    /// Reconstructs a catalogue, recomputing symmetry data from the words
    /// and verifying the recorded fields.
    pub fn into_catalog(self) -> Result<Catalog, String> {
        let mut by_dim: BTreeMap<usize, Vec<Cell>> = BTreeMap::new();
        for rec in &self.cells {
            let word = GaussianWord::parse(&rec.word).map_err(|e| e.to_string())?;
            let n = word.chord_count();
            if n == 0 || rec.dim != n - 1 {
                return Err(format!("cell {}: dim {} does not match word", rec.id, rec.dim));
            }
            let cell = make_cell(self.genus, n, by_dim.entry(rec.dim).or_default().len(), word);
            if cell.id != rec.id
                || cell.aut.order != rec.aut_order
                || cell.aut.parity != rec.aut_parity
                || cell.class != rec.class
            {
                return Err(format!("cell {}: recorded fields disagree with word", rec.id));
            }
            by_dim.get_mut(&rec.dim).unwrap().push(cell);
        }
        Ok(Catalog::from_cells(self.genus, by_dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_catalog() {
        let cells = enumerate_cells(2, 1);
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].word.render(), "1212");
        assert_eq!(cells[0].aut.order, 4);

        let cells = enumerate_cells(3, 1);
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].word.render(), "123123");
        assert_eq!(cells[0].aut.order, 6);

        let catalog = build_catalog(1).unwrap();
        assert_eq!(catalog.total_cells(), 2);
        assert_eq!(catalog.dims(), vec![1, 2]);
    }

    #[test]
    fn four_chord_genus_two_classes() {
        let cells = enumerate_cells(4, 2);
        let words: Vec<String> = cells.iter().map(|c| c.word.render()).collect();
        assert_eq!(words, ["12123434", "12132434", "12134234", "12341234"]);
        let ids: Vec<&str> = cells.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["g2-n4-1", "g2-n4-2", "g2-n4-3", "g2-n4-4"]);
    }

    #[test]
    fn no_genus_two_cells_below_four_chords() {
        assert!(enumerate_cells(3, 2).is_empty());
    }

    #[test]
    fn oracle_rejects_large_inputs() {
        assert!(matches!(
            brute_force_oracle(8, 2),
            Err(EnumerationError::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn oracle_matches_enumeration_small() {
        for (n, g) in [(2, 1), (3, 1), (4, 2), (5, 2), (6, 2), (4, 1), (5, 1)] {
            let oracle = brute_force_oracle(n, g).unwrap();
            let cells: Vec<GaussianWord> =
                enumerate_cells(n, g).into_iter().map(|c| c.word).collect();
            assert_eq!(oracle, cells, "n={n} g={g}");
        }
    }

    #[test]
    fn degree_filter_excludes_free_edges() {
        // A free (degree-1) edge keeps the genus but is not a cell.
        let d = ChordDiagram::from(&GaussianWord::parse("1123452345").unwrap());
        assert_eq!(d.genus().unwrap(), 2);
        assert_eq!(d.min_vertex_degree(), 1);
        assert!(!is_cell(&d, 2));
        assert!(enumerate_cells(5, 2)
            .iter()
            .all(|c| c.word.render() != d.canonicalize().0.render()));
    }

    #[test]
    fn budget_guard_refuses_large_genus() {
        assert!(matches!(
            build_catalog(3),
            Err(EnumerationError::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn catalog_doc_round_trip() {
        let catalog = build_catalog(1).unwrap();
        let doc = CatalogDoc::from_catalog(&catalog);
        let json = serde_json::to_string(&doc).unwrap();
        let back: CatalogDoc = serde_json::from_str(&json).unwrap();
        let rebuilt = back.into_catalog().unwrap();
        assert_eq!(rebuilt.total_cells(), catalog.total_cells());
        assert_eq!(rebuilt.dims(), catalog.dims());
    }

    #[test]
    fn matching_counts() {
        assert_eq!(matching_count(1), 1);
        assert_eq!(matching_count(4), 105);
        assert_eq!(matching_count(9), 34_459_425);
    }
}
