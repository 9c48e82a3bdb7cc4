//! Customary literature labels for the genus-2 catalogue.
//!
//! The genus-2 cells carry well-known names of the form `gamma(k)_l`, where
//! `k` is the chord count and `l` an ordinal in the traditional listing.
//! That listing order is not the canonical-word order used for cell ids, so
//! the correspondence ships as a curated table. It is used for annotated
//! output only; no pass/fail decision reads it.

use std::collections::HashMap;

use crate::diagram::ChordDiagram;
use crate::enumeration::{Catalog, CellRef};
use crate::word::GaussianWord;

/// Embedded label table: `(label, word, aut_order)`.
const TABLE: &str = include_str!("../data/g2_reference_labels.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelEntry {
    pub label: String,
    pub word: GaussianWord,
    pub aut_order: usize,
}

/// Parses the embedded table.
pub fn reference_labels() -> Vec<LabelEntry> {
    parse_table(TABLE).expect("embedded label table is well-formed")
}

/// Parses a label table from text (tab-separated `label word aut_order`).
pub fn parse_table(text: &str) -> Result<Vec<LabelEntry>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split('\t');
        let (Some(label), Some(word), Some(order)) = (parts.next(), parts.next(), parts.next())
        else {
            return Err(format!("line {}: expected three tab-separated fields", lineno + 1));
        };
        let word = GaussianWord::parse(word).map_err(|e| format!("line {}: {e}", lineno + 1))?;
        let aut_order = order
            .parse::<usize>()
            .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        out.push(LabelEntry {
            label: label.to_string(),
            word,
            aut_order,
        });
    }
    Ok(out)
}

/// Maps catalogue cells to their customary labels. Entries whose class is
/// missing from the catalogue are skipped.
pub fn annotate(catalog: &Catalog) -> HashMap<CellRef, String> {
    let mut map = HashMap::new();
    for entry in reference_labels() {
        let canonical = ChordDiagram::from(&entry.word).canonicalize().0;
        if let Some(r) = catalog.find_by_canonical_word(&canonical) {
            map.insert(r, entry.label);
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_parses_and_has_full_census() {
        let entries = reference_labels();
        assert_eq!(entries.len(), 160);
        let per_count = |n: usize| {
            entries
                .iter()
                .filter(|e| e.word.chord_count() == n)
                .count()
        };
        assert_eq!(per_count(9), 9);
        assert_eq!(per_count(8), 29);
        assert_eq!(per_count(7), 52);
        assert_eq!(per_count(6), 45);
        assert_eq!(per_count(5), 21);
        assert_eq!(per_count(4), 4);
    }

    #[test]
    fn recorded_symmetry_orders_match_computation() {
        for entry in reference_labels() {
            let d = ChordDiagram::from(&entry.word);
            assert_eq!(
                d.symmetry().order,
                entry.aut_order,
                "label {}",
                entry.label
            );
            assert_eq!(d.genus().unwrap(), 2, "label {}", entry.label);
        }
    }
}
