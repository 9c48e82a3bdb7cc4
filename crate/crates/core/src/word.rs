//! Gaussian words: double-occurrence sequences encoding polygon-side gluings.
//!
//! A word over `n` chord labels has length `2n` and every label appears
//! exactly twice. Words are kept in *standard numeration*: reading from the
//! start, label `k`'s first occurrence precedes label `k+1`'s first
//! occurrence, and the labels are exactly `1..=n`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input")]
    EmptyInput,
    #[error("word length {0} is odd")]
    OddLength(usize),
    #[error("label {0} does not occur exactly twice")]
    NonDoubleOccurrence(u32),
    #[error("invalid token {0:?}")]
    InvalidToken(String),
}

/// A double-occurrence word in standard numeration.
///
/// Construction always validates and relabels, so a value of this type is a
/// well-formed gluing description by construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianWord {
    labels: Vec<u32>,
}

impl GaussianWord {
    /// Parses a word from text. Bare digits (`"12341234"`) cover labels 1..=9;
    /// the delimited form (`"1.2.3.4.1.2.3.4"`) is required beyond that.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(ParseError::EmptyInput);
        }
        let raw: Vec<u32> = if text.contains('.') {
            text.split('.')
                .map(|tok| {
                    let tok = tok.trim();
                    match tok.parse::<u32>() {
                        Ok(v) if v >= 1 => Ok(v),
                        _ => Err(ParseError::InvalidToken(tok.to_string())),
                    }
                })
                .collect::<Result<_, _>>()?
        } else {
            text.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d >= 1 => Ok(d),
                    _ => Err(ParseError::InvalidToken(c.to_string())),
                })
                .collect::<Result<_, _>>()?
        };
        Self::from_labels(&raw)
    }

    /// Validates a raw label sequence and relabels it into standard
    /// numeration (labels renamed by order of first occurrence).
    pub fn from_labels(raw: &[u32]) -> Result<Self, ParseError> {
        if raw.is_empty() {
            return Err(ParseError::EmptyInput);
        }
        if raw.len() % 2 != 0 {
            return Err(ParseError::OddLength(raw.len()));
        }
        let mut counts = std::collections::HashMap::new();
        for &l in raw {
            *counts.entry(l).or_insert(0u32) += 1;
        }
        for (&l, &c) in &counts {
            if c != 2 {
                return Err(ParseError::NonDoubleOccurrence(l));
            }
        }
        // Relabel by first occurrence.
        let mut rename = std::collections::HashMap::new();
        let mut next = 0u32;
        let labels = raw
            .iter()
            .map(|&l| {
                *rename.entry(l).or_insert_with(|| {
                    next += 1;
                    next
                })
            })
            .collect();
        Ok(GaussianWord { labels })
    }

    /// Builds a word from labels already known to be standard (debug-checked).
    pub(crate) fn from_standard_unchecked(labels: Vec<u32>) -> Self {
        debug_assert!(is_standard(&labels), "labels not in standard numeration");
        GaussianWord { labels }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn chord_count(&self) -> usize {
        self.labels.len() / 2
    }

    /// Renders the word: bare digits when all labels fit in one digit,
    /// dot-delimited otherwise.
    pub fn render(&self) -> String {
        if self.chord_count() <= 9 {
            self.labels.iter().map(|l| l.to_string()).collect()
        } else {
            self.labels
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

fn is_standard(labels: &[u32]) -> bool {
    let mut seen = 0u32;
    for &l in labels {
        if l == seen + 1 {
            seen += 1;
        } else if l == 0 || l > seen {
            return false;
        }
    }
    labels.len() == 2 * seen as usize
}

impl fmt::Display for GaussianWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for GaussianWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussianWord({})", self.render())
    }
}

impl FromStr for GaussianWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bare_word() {
        let w = GaussianWord::parse("12341234").unwrap();
        assert_eq!(w.chord_count(), 4);
        assert_eq!(w.render(), "12341234");
    }

    #[test]
    fn parses_smallest_words() {
        assert_eq!(GaussianWord::parse("1122").unwrap().render(), "1122");
        assert_eq!(GaussianWord::parse("11").unwrap().chord_count(), 1);
    }

    #[test]
    fn relabels_to_standard() {
        // Consistent double-occurrence input gets renamed by first occurrence.
        assert_eq!(GaussianWord::parse("2121").unwrap().render(), "1212");
        assert_eq!(GaussianWord::parse("343411").unwrap().render(), "121233");
    }

    #[test]
    fn rejects_single_occurrence() {
        assert!(matches!(
            GaussianWord::parse("1213"),
            Err(ParseError::NonDoubleOccurrence(_))
        ));
    }

    #[test]
    fn rejects_odd_and_empty() {
        assert_eq!(GaussianWord::parse(""), Err(ParseError::EmptyInput));
        assert!(matches!(
            GaussianWord::parse("121"),
            Err(ParseError::OddLength(3))
        ));
    }

    #[test]
    fn rejects_zero_digit() {
        assert!(matches!(
            GaussianWord::parse("1020"),
            Err(ParseError::InvalidToken(_))
        ));
    }

    #[test]
    fn delimited_words_round_trip() {
        let text = "1.2.3.4.5.6.7.8.9.10.1.2.3.4.5.6.7.8.9.10";
        let w = GaussianWord::parse(text).unwrap();
        assert_eq!(w.chord_count(), 10);
        assert_eq!(w.render(), text);
        assert_eq!(GaussianWord::parse(&w.render()).unwrap(), w);
    }
}
