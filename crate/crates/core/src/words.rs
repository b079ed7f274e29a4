//! Symbols, words, and the orderings and transforms between sequence variants.
//!
//! Words are stored left to right: index 0 is the leftmost (first) symbol, so
//! `rotate_left` maps `σx` to `xσ` and the successor of a word in a De Bruijn
//! ordering drops index 0 and appends at the end.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sequence::DBSequence;

/// A single alphabet symbol. Bounded alphabets use `0..k`.
pub type Symbol = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `[k] = {0, .., k-1}`, `k >= 1`.
    Bounded(Symbol),
    /// Every non-negative integer.
    Unbounded,
}

impl Alphabet {
    pub fn bound(self) -> Option<Symbol> {
        match self {
            Alphabet::Bounded(k) => Some(k),
            Alphabet::Unbounded => None,
        }
    }

    pub fn contains(self, symbol: Symbol) -> bool {
        match self {
            Alphabet::Bounded(k) => symbol < k,
            Alphabet::Unbounded => true,
        }
    }

    /// Fails with the first symbol of `w` that is not in the alphabet.
    pub fn check(self, w: &Word) -> Result<()> {
        if let Alphabet::Bounded(k) = self {
            if let Some(&symbol) = w.iter().find(|&&s| s >= k) {
                return Err(Error::SymbolOutOfRange { symbol, k });
            }
        }
        Ok(())
    }
}

/// The four prefer-max / prefer-min sequences and their reversals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceVariant {
    Pmx,
    Pmn,
    Rpmx,
    Rpmn,
}

impl SequenceVariant {
    pub const ALL: [SequenceVariant; 4] = [
        SequenceVariant::Pmx,
        SequenceVariant::Pmn,
        SequenceVariant::Rpmx,
        SequenceVariant::Rpmn,
    ];

    /// Whether the variant is a reversal of its prefer-max/min origin.
    pub fn is_reversed(self) -> bool {
        matches!(self, SequenceVariant::Rpmx | SequenceVariant::Rpmn)
    }

    /// Whether the variant is the symbol-complement of the max variant.
    pub fn is_complemented(self) -> bool {
        matches!(self, SequenceVariant::Pmn | SequenceVariant::Rpmn)
    }

    pub fn name(self) -> &'static str {
        match self {
            SequenceVariant::Pmx => "pmx",
            SequenceVariant::Pmn => "pmn",
            SequenceVariant::Rpmx => "rpmx",
            SequenceVariant::Rpmn => "rpmn",
        }
    }
}

impl fmt::Display for SequenceVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pmx" => Ok(SequenceVariant::Pmx),
            "pmn" => Ok(SequenceVariant::Pmn),
            "rpmx" => Ok(SequenceVariant::Rpmx),
            "rpmn" => Ok(SequenceVariant::Rpmn),
            other => Err(Error::invalid(format!("unknown variant `{other}`"))),
        }
    }
}

/// A finite sequence of symbols.
///
/// `Ord` is the lexicographic order with the prefix rule, the same as
/// [`lex_compare`].
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `symbol^len`.
    pub fn repeat(symbol: Symbol, len: usize) -> Self {
        Word(vec![symbol; len])
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }

    pub fn max_symbol(&self) -> Option<Symbol> {
        self.0.iter().copied().max()
    }

    /// Writes the word as contiguous decimal digits when `digits` is set,
    /// otherwise as comma-separated integers.
    pub fn write_to(&self, out: &mut impl fmt::Write, digits: bool) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if !digits && i > 0 {
                out.write_char(',')?;
            }
            write!(out, "{s}")?;
        }
        Ok(())
    }

    pub fn render(&self, digits: bool) -> String {
        let mut s = String::with_capacity(self.len() * if digits { 1 } else { 3 });
        self.write_to(&mut s, digits).expect("writing to a String");
        s
    }
}

impl std::ops::Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Digits when every symbol is below 10, comma-separated integers otherwise.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.0.iter().all(|&s| s < 10);
        self.write_to(f, digits)
    }
}

/// Parses `"0120"` (one digit per symbol) or `"10,2,0"` (comma-separated).
/// The empty string is ε.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<Symbol>()
                        .map_err(|_| Error::invalid(format!("bad symbol `{t}` in word `{s}`")))
                })
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::invalid(format!("bad digit `{c}` in word `{s}`")))
                })
                .collect()
        }
    }
}

/// `k^n`, or `None` if it overflows `usize`.
pub fn word_count(n: usize, k: Symbol) -> Option<usize> {
    let n = u32::try_from(n).ok()?;
    (k as usize).checked_pow(n)
}

/// Base-`k` value of `w`, most significant symbol first. Symbols must be `< k`.
pub fn rank(w: &[Symbol], k: Symbol) -> usize {
    w.iter()
        .fold(0usize, |acc, &s| acc * k as usize + s as usize)
}

/// Inverse of [`rank`] for `n`-words.
pub fn unrank(mut r: usize, n: usize, k: Symbol) -> Word {
    let k = k as usize;
    let mut v = vec![0; n];
    for slot in v.iter_mut().rev() {
        *slot = (r % k) as Symbol;
        r /= k;
    }
    Word(v)
}

pub fn reverse(w: &Word) -> Word {
    w.iter().rev().copied().collect()
}

/// `σx ↦ xσ`. ε maps to itself.
pub fn rotate_left(w: &Word) -> Word {
    let mut v = w.0.clone();
    if !v.is_empty() {
        v.rotate_left(1);
    }
    Word(v)
}

/// Co-lexicographic order: compares right to left; a suffix is smaller than
/// any word extending it. Equals `lex_compare(R(a), R(b))`.
pub fn colex_compare(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.iter()
        .rev()
        .zip(b.iter().rev())
        .map(|(x, y)| x.cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// Lexicographic order; a proper prefix is smaller.
pub fn lex_compare(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.cmp(b)
}

/// `σ ↦ k-1-σ` symbol-wise.
pub fn complement(w: &Word, k: Symbol) -> Result<Word> {
    Alphabet::Bounded(k).check(w)?;
    Ok(w.iter().map(|&s| k - 1 - s).collect())
}

/// Converts a complete sequence between the four variants.
///
/// Reversal maps word `i` to `R(w_{N-1-i})`; complementing maps each symbol
/// `σ` to `k-1-σ`. The two commute.
pub fn transform_sequence(
    seq: &DBSequence,
    from: SequenceVariant,
    to: SequenceVariant,
) -> Result<DBSequence> {
    let k = seq
        .k()
        .ok_or_else(|| Error::invalid("transform needs a bounded alphabet"))?;
    if !seq.is_complete() {
        return Err(Error::invalid(format!(
            "sequence has {} words, expected {}^{}",
            seq.len(),
            k,
            seq.n()
        )));
    }
    if from == to {
        return Ok(seq.clone());
    }
    let flip = from.is_reversed() != to.is_reversed();
    let negate = from.is_complemented() != to.is_complemented();

    let mut words: Vec<Word> = if flip {
        seq.words().iter().rev().map(reverse).collect()
    } else {
        seq.words().to_vec()
    };
    if negate {
        for w in &mut words {
            for s in w.0.iter_mut() {
                *s = k - 1 - *s;
            }
        }
    }
    DBSequence::new(seq.n(), Some(k), words)
}

/// Aperiodic and lexicographically minimal among its rotations.
pub fn is_lyndon(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    // Duval's scan: `i` tracks the comparison position inside the current
    // period; the word is Lyndon iff the period at the end is the full length.
    let mut i = 0;
    for j in 1..w.len() {
        match w[i].cmp(&w[j]) {
            Ordering::Less => i = 0,
            Ordering::Equal => i += 1,
            Ordering::Greater => return Ok(false),
        }
    }
    Ok(i == 0)
}
