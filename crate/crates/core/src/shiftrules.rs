//! Successor functions that compute the next word from the current word
//! alone, in `O(n)` space.
//!
//! [`succ`] walks `rpmx(n, k)` from `0^n`, or the infinite `rpmx(n)` over the
//! unbounded alphabet. The other three variants are conjugates of it:
//! complementing gives `rpmn`, and reversing the direction of travel (with
//! each word reversed) gives `pmx` and `pmn`.

use crate::cycles::{decompose, keyword_of};
use crate::error::{Error, Result};
use crate::words::{complement, reverse, Alphabet, SequenceVariant, Symbol, Word};

/// `w` is the last word of its cycle.
pub fn is_last(w: &Word) -> bool {
    if w.is_empty() {
        return false;
    }
    let key = keyword_of(w);
    let parts = decompose(&key).expect("keyword_of returns a key-word");
    parts.last() == *w
}

/// Which branch of [`succ`] applies to `σw`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuccCase {
    /// `last((σ+1)w)`: emit `w(σ+1)`.
    Increment,
    /// `¬last((σ+1)w) ∧ last(σw)`: emit `w0`.
    Reset,
    /// Otherwise: emit `wσ`, the rotation.
    Rotate,
}

/// Case analysis of [`succ`] for a non-empty word, ignoring alphabet bounds.
pub fn succ_case(w: &Word) -> Result<SuccCase> {
    let sigma = w.first().ok_or(Error::EmptyWord)?;
    let bumped = sigma
        .checked_add(1)
        .ok_or_else(|| Error::invalid(format!("symbol {sigma} has no successor")))?;
    let mut raised = w.as_slice().to_vec();
    raised[0] = bumped;
    Ok(if is_last(&Word::new(raised)) {
        SuccCase::Increment
    } else if is_last(w) {
        SuccCase::Reset
    } else {
        SuccCase::Rotate
    })
}

/// `(k-1) 0^{n-1}`, the final word of `rpmx(n, k)`.
pub fn rpmx_terminal(n: usize, k: Symbol) -> Word {
    let mut v = vec![0; n];
    if n > 0 {
        v[0] = k.saturating_sub(1);
    }
    Word::new(v)
}

/// Successor of `w` in `rpmx(n, k)` (bounded) or `rpmx(n)` (unbounded).
///
/// Returns `Ok(None)` at the terminal word `(k-1)0^{n-1}` of a bounded
/// alphabet.
pub fn succ(w: &Word, alphabet: Alphabet) -> Result<Option<Word>> {
    let sigma = w.first().ok_or(Error::EmptyWord)?;
    alphabet.check(w)?;
    if let Alphabet::Bounded(k) = alphabet {
        if *w == rpmx_terminal(w.len(), k) {
            return Ok(None);
        }
    }
    let appended = match succ_case(w)? {
        SuccCase::Increment => sigma + 1,
        SuccCase::Reset => 0,
        SuccCase::Rotate => sigma,
    };
    let mut v = Vec::with_capacity(w.len());
    v.extend_from_slice(&w[1..]);
    v.push(appended);
    Ok(Some(Word::new(v)))
}

/// Successor in `rpmn(n, k)`: `complement ∘ succ ∘ complement`.
pub fn next(w: &Word, k: Symbol) -> Result<Option<Word>> {
    let flipped = complement(w, k)?;
    succ(&flipped, Alphabet::Bounded(k))?
        .map(|s| complement(&s, k))
        .transpose()
}

/// Finds `p = τ·R(w)[..n-1]` with `rule(p) = R(w)` and returns `R(p)`.
///
/// If `rule` walks a sequence `S`, this walks the reversal of `S` with every
/// word reversed. At most one `τ` can match since `rule` is injective.
fn reversed_predecessor(
    w: &Word,
    k: Symbol,
    rule: impl Fn(&Word) -> Result<Option<Word>>,
) -> Result<Option<Word>> {
    Alphabet::Bounded(k).check(w)?;
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let target = reverse(w);
    let mut candidate = Vec::with_capacity(w.len());
    candidate.push(0);
    candidate.extend_from_slice(&target[..w.len() - 1]);
    let mut candidate = Word::new(candidate);
    for tau in 0..k {
        candidate = {
            let mut v = candidate.into_vec();
            v[0] = tau;
            Word::new(v)
        };
        if rule(&candidate)?.as_ref() == Some(&target) {
            return Ok(Some(reverse(&candidate)));
        }
    }
    Ok(None)
}

/// Successor in `pmn(n, k)`, defined by: if `next(σ1..σn) = σ2..σn+1` then
/// `next_inv(σn+1..σ2) = σn..σ1`. `Ok(None)` at the final word `(k-1)^n`.
pub fn next_inv(w: &Word, k: Symbol) -> Result<Option<Word>> {
    reversed_predecessor(w, k, |p| next(p, k))
}

/// Successor in `pmx(n, k)`: `R(p)` where `succ(p) = R(w)`. `Ok(None)` at
/// the final word `0^n`.
pub fn pmx_successor(w: &Word, k: Symbol) -> Result<Option<Word>> {
    reversed_predecessor(w, k, |p| succ(p, Alphabet::Bounded(k)))
}

/// A successor function for one of the four variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftRule {
    variant: SequenceVariant,
    alphabet: Alphabet,
}

impl ShiftRule {
    /// Only `rpmx` is defined over the unbounded alphabet; the others need
    /// `k` to complement or to search predecessors.
    pub fn new(variant: SequenceVariant, alphabet: Alphabet) -> Result<Self> {
        match (variant, alphabet) {
            (_, Alphabet::Bounded(0)) => Err(Error::invalid("alphabet size must be >= 1")),
            (SequenceVariant::Rpmx, _) | (_, Alphabet::Bounded(_)) => {
                Ok(ShiftRule { variant, alphabet })
            }
            (v, Alphabet::Unbounded) => Err(Error::invalid(format!(
                "{v} has no shift rule over the unbounded alphabet"
            ))),
        }
    }

    pub fn variant(&self) -> SequenceVariant {
        self.variant
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn successor(&self, w: &Word) -> Result<Option<Word>> {
        match (self.variant, self.alphabet) {
            (SequenceVariant::Rpmx, a) => succ(w, a),
            (_, Alphabet::Unbounded) => unreachable!("rejected in ShiftRule::new"),
            (SequenceVariant::Rpmn, Alphabet::Bounded(k)) => next(w, k),
            (SequenceVariant::Pmn, Alphabet::Bounded(k)) => next_inv(w, k),
            (SequenceVariant::Pmx, Alphabet::Bounded(k)) => pmx_successor(w, k),
        }
    }

    /// First word of the variant's sequence.
    pub fn start(&self, n: usize) -> Word {
        let top = self.alphabet.bound().map_or(0, |k| k - 1);
        let mut v = vec![0; n];
        match self.variant {
            SequenceVariant::Rpmx => {}
            SequenceVariant::Rpmn => v.fill(top),
            SequenceVariant::Pmx => {
                if let Some(s) = v.last_mut() {
                    *s = top;
                }
            }
            SequenceVariant::Pmn => {
                v.fill(top);
                if let Some(s) = v.last_mut() {
                    *s = 0;
                }
            }
        }
        Word::new(v)
    }

    /// Iterates the sequence from [`ShiftRule::start`]. Infinite for the
    /// unbounded alphabet.
    pub fn walk(&self, n: usize) -> Walk {
        Walk {
            rule: *self,
            current: (n > 0).then(|| self.start(n)),
        }
    }
}

/// Iterator returned by [`ShiftRule::walk`].
#[derive(Debug, Clone)]
pub struct Walk {
    rule: ShiftRule,
    current: Option<Word>,
}

impl Iterator for Walk {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.take()?;
        self.current = self.rule.successor(&cur).ok().flatten();
        Some(cur)
    }
}
