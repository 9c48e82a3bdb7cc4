//! Euler characteristics of a catalogue, plain and orbifold.

use num::rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::enumeration::Catalog;
use crate::Rational;

/// Reference orbifold Euler characteristics for once-marked moduli spaces,
/// from the classical genus table.
const REFERENCE_TABLE: [(usize, (i64, i64)); 2] = [(1, (-1, 12)), (2, (1, 120))];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    /// Alternating sum of cell counts.
    pub plain_chi: i64,
    /// Alternating sum of `1 / |Aut|` over cells, exact.
    pub orbifold_chi: Rational,
    /// Table value when the genus has one.
    pub hz_reference: Option<Rational>,
}

impl EulerReport {
    pub fn matches_reference(&self) -> Option<bool> {
        self.hz_reference.map(|r| r == self.orbifold_chi)
    }
}

/// Reference value for a genus, when tabulated.
pub fn hz_reference(genus: usize) -> Option<Rational> {
    REFERENCE_TABLE
        .iter()
        .find(|(g, _)| *g == genus)
        .map(|&(_, (n, d))| Ratio::new(n, d))
}

/// Computes both Euler characteristics of a catalogue.
pub fn euler(catalog: &Catalog) -> EulerReport {
    let mut plain: i64 = 0;
    let mut orbifold = Ratio::new(0, 1);
    for (_, cell) in catalog.iter_cells() {
        let sign = if cell.dim % 2 == 0 { 1i64 } else { -1i64 };
        plain += sign;
        orbifold += Ratio::new(sign, cell.aut.order as i64);
    }
    EulerReport {
        plain_chi: plain,
        orbifold_chi: orbifold,
        hz_reference: hz_reference(catalog.genus),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::build_catalog;

    #[test]
    fn genus_one_orbifold_chi() {
        // 1/6 from the 2-cell, -1/4 from the 1-cell.
        let report = euler(&build_catalog(1).unwrap());
        assert_eq!(report.plain_chi, 0);
        assert_eq!(report.orbifold_chi, Ratio::new(-1, 12));
        assert_eq!(report.matches_reference(), Some(true));
    }

    #[test]
    fn empty_catalog_is_zero() {
        use crate::enumeration::CatalogDoc;
        let empty = CatalogDoc {
            genus: 5,
            cells: vec![],
        }
        .into_catalog()
        .unwrap();
        let report = euler(&empty);
        assert_eq!(report.plain_chi, 0);
        assert_eq!(report.orbifold_chi, Ratio::new(0, 1));
        assert_eq!(report.hz_reference, None);
    }
}
