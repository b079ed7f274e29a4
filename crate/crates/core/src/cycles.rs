//! Key-words and their rotation cycles.
//!
//! A key-word is the co-lexicographically largest rotation in its rotation
//! class. Every non-zero key-word splits uniquely as `0^l (σ+1) w`, and its
//! cycle runs from `first = w 0^l (σ+1)` to `last = (σ+1) w 0^l` by left
//! rotations.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::words::{rotate_left, Symbol, Word};

/// Start index of the lexicographically largest rotation of `s`.
///
/// Two-candidate scan (Booth / Shiloach style): `i` and `j` are the two best
/// starts seen so far and `len` the length of their common prefix. Linear in
/// `s.len()`.
fn max_rotation_start(s: &[Symbol]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut len) = (0usize, 1usize, 0usize);
    while i < n && j < n && len < n {
        let a = s[(i + len) % n];
        let b = s[(j + len) % n];
        match a.cmp(&b) {
            Ordering::Equal => {
                len += 1;
                continue;
            }
            Ordering::Less => i += len + 1,
            Ordering::Greater => j += len + 1,
        }
        if i == j {
            j += 1;
        }
        len = 0;
    }
    i.min(j)
}

/// The colex-maximal rotation of `w`.
///
/// Colex order on rotations of `w` is lex order on rotations of `R(w)`, so
/// this takes the lex-max rotation of the reversed word and reverses it back.
pub fn keyword_of(w: &Word) -> Word {
    let n = w.len();
    if n == 0 {
        return Word::empty();
    }
    let reversed: Vec<Symbol> = w.iter().rev().copied().collect();
    let start = max_rotation_start(&reversed);
    (0..n).rev().map(|i| reversed[(start + i) % n]).collect()
}

/// True iff no rotation of `w` is colex-greater than `w`.
pub fn is_keyword(w: &Word) -> bool {
    keyword_of(w) == *w
}

/// The split `0^zeros · head · tail` of a key-word. `head` is `σ+1 >= 1`, or
/// `None` for `0^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyWordDecomposition {
    pub zeros: usize,
    pub head: Option<Symbol>,
    pub tail: Word,
}

impl KeyWordDecomposition {
    pub fn len(&self) -> usize {
        self.zeros + usize::from(self.head.is_some()) + self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `0^l (σ+1) w`.
    pub fn key(&self) -> Word {
        let mut v = vec![0; self.zeros];
        v.extend(self.head);
        v.extend_from_slice(&self.tail);
        Word::new(v)
    }

    /// `w 0^l (σ+1)`; `0^n` for the zero key.
    pub fn first(&self) -> Word {
        let mut v = self.tail.as_slice().to_vec();
        v.extend(std::iter::repeat_n(0, self.zeros));
        v.extend(self.head);
        Word::new(v)
    }

    /// `(σ+1) w 0^l`; `0^n` for the zero key.
    pub fn last(&self) -> Word {
        let mut v: Vec<Symbol> = self.head.into_iter().collect();
        v.extend_from_slice(&self.tail);
        v.extend(std::iter::repeat_n(0, self.zeros));
        Word::new(v)
    }

    /// `σ w 0^l`, the word the cycle is spliced after when joining. `None`
    /// for the zero key, which seeds the ordering.
    pub fn anchor(&self) -> Option<Word> {
        let head = self.head?;
        let mut v = vec![head - 1];
        v.extend_from_slice(&self.tail);
        v.extend(std::iter::repeat_n(0, self.zeros));
        Some(Word::new(v))
    }
}

pub fn decompose(key: &Word) -> Result<KeyWordDecomposition> {
    if key.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !is_keyword(key) {
        return Err(Error::invalid(format!("{key} is not a key-word")));
    }
    let zeros = key.iter().take_while(|&&s| s == 0).count();
    if zeros == key.len() {
        return Ok(KeyWordDecomposition {
            zeros,
            head: None,
            tail: Word::empty(),
        });
    }
    Ok(KeyWordDecomposition {
        zeros,
        head: Some(key[zeros]),
        tail: Word::from(&key[zeros + 1..]),
    })
}

/// The rotation class of one key-word, in cycle order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    key: Word,
    index_hint: Option<usize>,
    members: Vec<Word>,
}

impl Cycle {
    pub fn key(&self) -> &Word {
        &self.key
    }

    pub fn first(&self) -> &Word {
        &self.members[0]
    }

    pub fn last(&self) -> &Word {
        self.members.last().expect("cycles are non-empty")
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Ordinal `m` of the key-word in colex order, when known.
    pub fn index_hint(&self) -> Option<usize> {
        self.index_hint
    }

    pub fn with_index(mut self, m: usize) -> Self {
        self.index_hint = Some(m);
        self
    }
}

/// The cycle containing `w`. Periodic classes yield fewer than `n` members.
pub fn cycle_of(w: &Word) -> Cycle {
    let key = keyword_of(w);
    let parts = decompose(&key).expect("keyword_of returns a key-word");
    let first = parts.first();
    let mut members = vec![first.clone()];
    let mut cur = rotate_left(&first);
    while cur != first {
        let next = rotate_left(&cur);
        members.push(cur);
        cur = next;
    }
    Cycle {
        key,
        index_hint: None,
        members,
    }
}

/// All key-words of `[k]^n` in strictly increasing colex order.
///
/// Scans `[k]^n` in colex order directly (an odometer whose leftmost symbol
/// moves fastest) and keeps the key-words, so no sort is needed.
pub fn enumerate_keywords(n: usize, k: Symbol) -> Vec<Word> {
    if n == 0 || k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        let w = Word::new(cur.clone());
        if is_keyword(&w) {
            out.push(w);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            cur[i] += 1;
            if cur[i] < k {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}
