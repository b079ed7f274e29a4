use crate::error::{Error, Result};
use crate::words::{word_count, Alphabet, Symbol, Word};

/// An ordering of `n`-words: a complete `(n, k)` De Bruijn sequence, or a
/// prefix of one (for the infinite stream, `k` is `None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DBSequence {
    n: usize,
    k: Option<Symbol>,
    words: Vec<Word>,
}

impl DBSequence {
    /// Fails if a word has the wrong length or a symbol outside `[k]`.
    /// Does not check any De Bruijn property; see [`crate::verify::check_db`].
    pub fn new(n: usize, k: Option<Symbol>, words: Vec<Word>) -> Result<Self> {
        let alphabet = k.map_or(Alphabet::Unbounded, Alphabet::Bounded);
        for (i, w) in words.iter().enumerate() {
            if w.len() != n {
                return Err(Error::invalid(format!(
                    "word {i} ({w}) has length {}, expected {n}",
                    w.len()
                )));
            }
            alphabet.check(w)?;
        }
        Ok(DBSequence { n, k, words })
    }

    pub(crate) fn from_parts_unchecked(n: usize, k: Option<Symbol>, words: Vec<Word>) -> Self {
        DBSequence { n, k, words }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Option<Symbol> {
        self.k
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    /// Holds `k^n` words (not a De Bruijn check).
    pub fn is_complete(&self) -> bool {
        match self.k.and_then(|k| word_count(self.n, k)) {
            Some(total) => self.words.len() == total,
            None => false,
        }
    }

    /// Whether `self` is a proper prefix of `other`.
    pub fn is_strict_prefix_of(&self, other: &DBSequence) -> bool {
        self.n == other.n && self.len() < other.len() && other.words[..self.len()] == self.words[..]
    }
}
