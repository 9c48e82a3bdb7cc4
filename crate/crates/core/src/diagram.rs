//! Chord diagrams: perfect matchings on cyclically ordered polygon sides.
//!
//! A diagram on `2n` positions encodes the gluing of a `2n`-gon into a closed
//! oriented surface: position `i` is glued to position `mate(i)` with
//! orientation reversed. Position `0` carries the start mark; the identity of
//! a gluing is the rotation class of its diagram.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::word::GaussianWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("chord {chord} out of range 1..={chords}")]
    ChordOutOfRange { chord: usize, chords: usize },
    #[error("vertex count parity violation for {chords} chords and {vertices} vertices")]
    ParityViolation { chords: usize, vertices: usize },
    #[error("diagrams are not isomorphic")]
    NotIsomorphic,
}

/// Permutation parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_transposition_count(k: usize) -> Parity {
        if k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Sign exponent: 0 for even, 1 for odd.
    pub fn exponent(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn compose(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// A permutation of `0..n` stored as an image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&v| {
                v < seen.len() && !std::mem::replace(&mut seen[v], true)
            })
        });
        Permutation(images)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = 0;
        for start in 0..self.0.len() {
            if !seen[start] {
                cycles += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = self.0[i];
                }
            }
        }
        cycles
    }

    /// Parity: a cycle of length L contributes L-1 transpositions.
    pub fn parity(&self) -> Parity {
        Parity::of_transposition_count(self.0.len() - self.cycle_count())
    }

    /// Orbit of `i` under iterating the permutation, in iteration order.
    pub fn orbit_of(&self, i: usize) -> Vec<usize> {
        let mut orbit = vec![i];
        let mut j = self.0[i];
        while j != i {
            orbit.push(j);
            j = self.0[j];
        }
        orbit
    }

    /// All orbits, each listed from its smallest element, ordered by it.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if !seen[start] {
                let orbit = self.orbit_of(start);
                for &v in &orbit {
                    seen[v] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut images: Vec<usize> = (0..self.0.len()).collect();
        for v in images.iter_mut() {
            let mut x = *v;
            for _ in 0..k {
                x = self.0[x];
            }
            *v = x;
        }
        Permutation(images)
    }
}

/// The cyclic rotation symmetry of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryInfo {
    /// Size of the rotation group.
    pub order: usize,
    /// Smallest rotation step preserving the matching (`2n` when trivial).
    pub min_step: usize,
    /// Chord permutation induced by rotating by `min_step` (0-based chords).
    pub chord_perm: Permutation,
    /// Parity of `chord_perm`; shared by every generator of the group.
    pub parity: Parity,
}

impl SymmetryInfo {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// A chord diagram: fixed-point-free involution on positions `0..2n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    mate: Vec<usize>,
}

impl ChordDiagram {
    pub fn from_mates(mate: Vec<usize>) -> Self {
        debug_assert!(mate.iter().enumerate().all(|(i, &j)| j != i && mate[j] == i));
        ChordDiagram { mate }
    }

    pub fn positions(&self) -> usize {
        self.mate.len()
    }

    pub fn chord_count(&self) -> usize {
        self.mate.len() / 2
    }

    pub fn mate(&self, i: usize) -> usize {
        self.mate[i]
    }

    /// Standard chord label (0-based) of each position, by first occurrence.
    pub fn position_labels(&self) -> Vec<usize> {
        let m = self.mate.len();
        let mut labels = vec![usize::MAX; m];
        let mut next = 0;
        for i in 0..m {
            if labels[i] == usize::MAX {
                labels[i] = next;
                labels[self.mate[i]] = next;
                next += 1;
            }
        }
        labels
    }

    /// First/second position of each chord in standard numeration.
    pub fn chord_endpoints(&self) -> Vec<(usize, usize)> {
        let labels = self.position_labels();
        let mut ends = vec![(usize::MAX, usize::MAX); self.chord_count()];
        for (pos, &c) in labels.iter().enumerate() {
            if ends[c].0 == usize::MAX {
                ends[c].0 = pos;
            } else {
                ends[c].1 = pos;
            }
        }
        ends
    }

    /// The word read clockwise from the mark in standard numeration.
    pub fn standard_word(&self) -> GaussianWord {
        let labels = self
            .position_labels()
            .into_iter()
            .map(|c| c as u32 + 1)
            .collect();
        GaussianWord::from_standard_unchecked(labels)
    }

    /// Moves the mark: position `i` of the result is position `i + s` of self.
    pub fn rotate(&self, s: usize) -> ChordDiagram {
        let m = self.mate.len();
        let s = s % m;
        let mut mate = vec![0usize; m];
        for i in 0..m {
            // position i+s pairs with mate[i+s]; shift both back by s
            mate[i] = (self.mate[(i + s) % m] + m - s) % m;
        }
        ChordDiagram { mate }
    }

    fn rotation_fixes(&self, s: usize) -> bool {
        let m = self.mate.len();
        (0..m).all(|i| self.mate[(i + s) % m] == (self.mate[i] + s) % m)
    }

    /// Lexicographically smallest standard word over all rotations, plus the
    /// smallest rotation achieving it.
    pub fn canonicalize(&self) -> (GaussianWord, usize) {
        let m = self.mate.len();
        let mut best = self.standard_word();
        let mut best_s = 0;
        for s in 1..m {
            let w = self.rotate(s).standard_word();
            if w < best {
                best = w;
                best_s = s;
            }
        }
        (best, best_s)
    }

    /// True when no rotation yields a strictly smaller standard word.
    ///
    /// Equivalent to `canonicalize().1 == 0` but allocation-free and with
    /// early exit; this is the hot path of catalogue enumeration.
    pub fn is_canonical(&self) -> bool {
        let m = self.mate.len();
        let n = self.chord_count();
        let base = self.position_labels();
        let mut relabel = vec![usize::MAX; n];
        for s in 1..m {
            for r in relabel.iter_mut() {
                *r = usize::MAX;
            }
            let mut next = 0;
            for i in 0..m {
                let c = base[(i + s) % m];
                if relabel[c] == usize::MAX {
                    relabel[c] = next;
                    next += 1;
                }
                match relabel[c].cmp(&base[i]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    /// Corner classes under the gluing identification. Corner `k` sits
    /// between sides `k-1` and `k`; gluing sides `i` and `j` identifies
    /// corner `i` with corner `j+1` and corner `i+1` with corner `j`.
    pub fn corner_classes(&self) -> Vec<usize> {
        let m = self.mate.len();
        let mut uf = UnionFind::new(m);
        for i in 0..m {
            let j = self.mate[i];
            if i < j {
                uf.union(i, (j + 1) % m);
                uf.union((i + 1) % m, j);
            }
        }
        (0..m).map(|i| uf.find(i)).collect()
    }

    /// Number of vertices of the glued graph.
    pub fn vertex_count(&self) -> usize {
        let classes = self.corner_classes();
        let mut roots: Vec<usize> = classes.clone();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Vertex degrees (class sizes of the corner identification).
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let classes = self.corner_classes();
        let mut counts = std::collections::HashMap::new();
        for c in classes {
            *counts.entry(c).or_insert(0usize) += 1;
        }
        let mut degs: Vec<usize> = counts.into_values().collect();
        degs.sort_unstable();
        degs
    }

    pub fn min_vertex_degree(&self) -> usize {
        self.vertex_degrees().first().copied().unwrap_or(0)
    }

    /// Genus from the Euler relation `V - E + F = 2 - 2g` with `E = n`,
    /// `F = 1`.
    pub fn genus(&self) -> Result<usize, DiagramError> {
        let n = self.chord_count();
        let v = self.vertex_count();
        let num = n + 1 - v;
        if num % 2 != 0 {
            return Err(DiagramError::ParityViolation {
                chords: n,
                vertices: v,
            });
        }
        Ok(num / 2)
    }

    /// The cyclic rotation group of the diagram.
    pub fn symmetry(&self) -> SymmetryInfo {
        let m = self.mate.len();
        let mut min_step = m;
        for s in 1..m {
            if m % s == 0 && self.rotation_fixes(s) {
                min_step = s;
                break;
            }
        }
        let order = m / min_step;
        let chord_perm = self.rotation_chord_perm(min_step);
        let parity = chord_perm.parity();
        SymmetryInfo {
            order,
            min_step,
            chord_perm,
            parity,
        }
    }

    /// Chord permutation induced by a matching-preserving rotation.
    fn rotation_chord_perm(&self, s: usize) -> Permutation {
        let m = self.mate.len();
        let labels = self.position_labels();
        let ends = self.chord_endpoints();
        let images = ends
            .iter()
            .map(|&(p, _)| labels[(p + s) % m])
            .collect();
        Permutation::new(images)
    }

    /// Deletes chord `j` (1-based standard label), closing up the cyclic
    /// order. The mark stays put: remaining positions keep their order.
    pub fn delete_chord(&self, j: usize) -> Result<DeletionResult, DiagramError> {
        let n = self.chord_count();
        if j < 1 || j > n || n < 2 {
            return Err(DiagramError::ChordOutOfRange { chord: j, chords: n });
        }
        let m = self.mate.len();
        let ends = self.chord_endpoints();
        let (p, q) = ends[j - 1];
        let mut new_index = vec![usize::MAX; m];
        let mut next = 0;
        for i in 0..m {
            if i != p && i != q {
                new_index[i] = next;
                next += 1;
            }
        }
        let mut mate = vec![0usize; m - 2];
        for i in 0..m {
            if i != p && i != q {
                mate[new_index[i]] = new_index[self.mate[i]];
            }
        }
        let child = ChordDiagram::from_mates(mate);

        // Chords keep their first-occurrence order under deletion, so the
        // child's standard numeration coincides with the induced one.
        let parent_labels: Vec<usize> = (1..=n).filter(|&c| c != j).collect();
        debug_assert_eq!(child.chord_count(), parent_labels.len());
        debug_assert!({
            let child_ends = child.chord_endpoints();
            let old_positions: Vec<usize> =
                (0..m).filter(|&i| i != p && i != q).collect();
            let labels = self.position_labels();
            child_ends
                .iter()
                .enumerate()
                .all(|(c, &(cp, _))| labels[old_positions[cp]] + 1 == parent_labels[c])
        });

        let genus_preserved = child.genus() == self.genus();
        Ok(DeletionResult {
            child,
            parent_labels,
            deleted: j,
            genus_preserved,
        })
    }

    /// Parities of the chord-label bijections over all rotations carrying
    /// `self` onto `target`, reading labels in standard numeration on both
    /// sides. Empty set when the diagrams are not rotation-equivalent.
    pub fn isomorphism_parities(&self, target: &ChordDiagram) -> BTreeSet<Parity> {
        self.isomorphisms(target)
            .into_iter()
            .map(|p| p.parity())
            .collect()
    }

    /// All label bijections `self -> target` realized by rotations.
    pub fn isomorphisms(&self, target: &ChordDiagram) -> Vec<Permutation> {
        let m = self.mate.len();
        if m != target.mate.len() {
            return Vec::new();
        }
        let ends = self.chord_endpoints();
        let target_labels = target.position_labels();
        let mut out = Vec::new();
        for s in 0..m {
            if (0..m).all(|i| target.mate[(i + s) % m] == (self.mate[i] + s) % m) {
                let images = ends
                    .iter()
                    .map(|&(p, _)| target_labels[(p + s) % m])
                    .collect();
                out.push(Permutation::new(images));
            }
        }
        out
    }
}

impl From<&GaussianWord> for ChordDiagram {
    fn from(w: &GaussianWord) -> Self {
        let m = w.len();
        let mut first = std::collections::HashMap::new();
        let mut mate = vec![usize::MAX; m];
        for (i, &l) in w.labels().iter().enumerate() {
            match first.get(&l) {
                None => {
                    first.insert(l, i);
                }
                Some(&p) => {
                    mate[p] = i;
                    mate[i] = p;
                }
            }
        }
        ChordDiagram::from_mates(mate)
    }
}

impl fmt::Debug for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChordDiagram({})", self.standard_word())
    }
}

/// Result of deleting one chord.
#[derive(Debug, Clone)]
pub struct DeletionResult {
    /// The diagram after deletion, mark inherited.
    pub child: ChordDiagram,
    /// Original label of each child chord (child chords in standard order).
    /// Applying the induced renumbering to these gives `1..n`, which equals
    /// the child's own standard numeration.
    pub parent_labels: Vec<usize>,
    /// The deleted chord (1-based).
    pub deleted: usize,
    /// Whether the child's genus equals the parent's.
    pub genus_preserved: bool,
}

impl DeletionResult {
    /// Induced label of a child chord (1-based child standard label in,
    /// induced label out). By the first-occurrence-order argument these
    /// coincide, which the constructor debug-checks.
    pub fn induced_label(&self, child_chord: usize) -> usize {
        let parent = self.parent_labels[child_chord - 1];
        if parent < self.deleted {
            parent
        } else {
            parent - 1
        }
    }
}

/// Parities of induced-vs-target numeration identifications.
///
/// `child` must be rotation-equivalent to `target`; the set has one element
/// for targets with trivial or even symmetry and both for odd-symmetric ones.
pub fn identification_parity(
    child: &DeletionResult,
    target: &ChordDiagram,
) -> Result<BTreeSet<Parity>, DiagramError> {
    let parities = child.child.isomorphism_parities(target);
    if parities.is_empty() {
        return Err(DiagramError::NotIsomorphic);
    }
    Ok(parities)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(text: &str) -> ChordDiagram {
        ChordDiagram::from(&GaussianWord::parse(text).unwrap())
    }

    #[test]
    fn word_diagram_round_trip() {
        for text in ["1122", "1212", "12341234", "123142345678697895"] {
            let w = GaussianWord::parse(text).unwrap();
            assert_eq!(ChordDiagram::from(&w).standard_word(), w);
        }
    }

    #[test]
    fn vertex_counts_from_corner_tracing() {
        // Hand-traced classes for 1122: {0,2}, {1}, {3}.
        assert_eq!(diagram("1122").vertex_count(), 3);
        assert_eq!(diagram("1212").vertex_count(), 1);
        assert_eq!(diagram("11").vertex_count(), 2);
        // A 3-valent genus-2 graph has 6 vertices and 9 edges.
        assert_eq!(diagram("123142345678697895").vertex_count(), 6);
    }

    #[test]
    fn genus_of_small_gluings() {
        assert_eq!(diagram("11").genus().unwrap(), 0);
        assert_eq!(diagram("1122").genus().unwrap(), 0);
        assert_eq!(diagram("1212").genus().unwrap(), 1);
        assert_eq!(diagram("12341234").genus().unwrap(), 2);
        assert_eq!(diagram("123142345678697895").genus().unwrap(), 2);
    }

    #[test]
    fn canonical_form_is_rotation_invariant() {
        let d = diagram("12341234");
        let (canon, s) = d.canonicalize();
        assert_eq!(canon.render(), "12341234");
        assert_eq!(s, 0);
        for s in 0..8 {
            assert_eq!(d.rotate(s).canonicalize().0, canon);
        }
        // Matching {(0,2),(1,3)} started anywhere normalizes to 1212.
        let d = ChordDiagram::from_mates(vec![2, 3, 0, 1]);
        assert_eq!(d.canonicalize().0.render(), "1212");
    }

    #[test]
    fn is_canonical_matches_canonicalize() {
        for text in ["1122", "1212", "12132434", "1231435425", "12341234"] {
            let d = diagram(text);
            for s in 0..d.positions() {
                let r = d.rotate(s);
                assert_eq!(r.is_canonical(), r.canonicalize().1 == 0, "{text} s={s}");
            }
        }
    }

    #[test]
    fn symmetry_of_named_diagrams() {
        let s = diagram("12341234").symmetry();
        assert_eq!(s.order, 8);
        assert_eq!(s.min_step, 1);
        assert_eq!(s.parity, Parity::Odd);
        // Rotation by 1 cycles the four chords.
        assert_eq!(s.chord_perm.images(), &[1, 2, 3, 0]);

        let s = diagram("1234512345").symmetry();
        assert_eq!(s.order, 10);

        let s = diagram("12123434").symmetry();
        assert_eq!(s.order, 2);
        assert_eq!(s.parity, Parity::Even);
        assert_eq!(s.chord_perm.images(), &[2, 3, 0, 1]);

        let s = diagram("123142345678697895").symmetry();
        assert_eq!(s.order, 2);

        assert!(diagram("1231234567586784").symmetry().is_trivial());
    }

    #[test]
    fn symmetry_rotation_invariant() {
        for text in ["12341234", "1234512345", "12123434", "123142345678697895"] {
            let d = diagram(text);
            let base = d.symmetry();
            for s in 0..d.positions() {
                let r = d.rotate(s).symmetry();
                assert_eq!(r.order, base.order);
                assert_eq!(r.parity, base.parity);
            }
        }
    }

    #[test]
    fn deletion_examples() {
        let res = diagram("1212").delete_chord(2).unwrap();
        assert_eq!(res.child.standard_word().render(), "11");
        assert_eq!(res.child.genus().unwrap(), 0);
        assert!(!res.genus_preserved);

        let res = diagram("12341234").delete_chord(1).unwrap();
        assert_eq!(res.child.canonicalize().0.render(), "123123");
        assert_eq!(res.child.genus().unwrap(), 1);
        assert!(!res.genus_preserved);

        // Deleting any chord drops n by one.
        let d = diagram("123142345678697895");
        for j in 1..=9 {
            let res = d.delete_chord(j).unwrap();
            assert_eq!(res.child.chord_count(), 8);
            assert!(res.child.genus().unwrap() <= 2);
        }
    }

    #[test]
    fn deletion_rejects_out_of_range() {
        assert!(matches!(
            diagram("1212").delete_chord(3),
            Err(DiagramError::ChordOutOfRange { .. })
        ));
        assert!(matches!(
            diagram("11").delete_chord(1),
            Err(DiagramError::ChordOutOfRange { .. })
        ));
    }

    #[test]
    fn induced_labels_shift_down() {
        let d = diagram("1231435425");
        let res = d.delete_chord(3).unwrap();
        assert_eq!(res.parent_labels, vec![1, 2, 4, 5]);
        assert_eq!(
            (1..=4).map(|c| res.induced_label(c)).collect::<Vec<_>>(),
            vec![1, 2, 3, 4]
        );
    }

    #[test]
    fn identification_parity_identity_is_even() {
        let d = diagram("1231435425");
        let res = d.delete_chord(2).unwrap();
        // The child happens to be its own class representative here.
        let target = diagram("12132434");
        let parities = identification_parity(&res, &target).unwrap();
        assert_eq!(parities.len(), 1);
    }

    #[test]
    fn identification_parity_rejects_non_isomorphic() {
        let res = diagram("1212").delete_chord(1).unwrap();
        let target = diagram("1122");
        assert!(matches!(
            identification_parity(&res, &target),
            Err(DiagramError::NotIsomorphic)
        ));
    }

    #[test]
    fn odd_symmetric_targets_have_both_parities() {
        let d = diagram("12341234");
        let parities = d.isomorphism_parities(&d);
        assert_eq!(parities.len(), 2);
    }
}
