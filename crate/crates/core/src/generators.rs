//! Constructions that serve as cross-oracles for the cycle-joining build:
//! greedy prefer-max / prefer-min, Lyndon-word concatenation, and the
//! infinite `rpmx(n)` stream.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::joining;
use crate::sequence::DBSequence;
use crate::shiftrules::ShiftRule;
use crate::words::{
    is_lyndon, rank, transform_sequence, unrank, word_count, Alphabet, SequenceVariant, Symbol,
    Word,
};

/// Greedy prefer-max (`pmx`) or prefer-min (`pmn`).
///
/// Starts at `0^{n-1}(k-1)` (resp. `(k-1)^{n-1}0`) and keeps appending the
/// largest (resp. smallest) symbol whose word is not yet used.
pub fn greedy(n: usize, k: Symbol, variant: SequenceVariant) -> Result<DBSequence> {
    let prefer_max = match variant {
        SequenceVariant::Pmx => true,
        SequenceVariant::Pmn => false,
        other => {
            return Err(Error::invalid(format!(
                "greedy builds pmx or pmn, not {other}"
            )))
        }
    };
    if n == 0 || k == 0 {
        return Err(Error::invalid(format!(
            "need n >= 1 and k >= 1, got n={n} k={k}"
        )));
    }
    let total = word_count(n, k).ok_or(Error::TooLarge { n, k })?;
    let top = k - 1;
    let mut start = vec![if prefer_max { 0 } else { top }; n];
    start[n - 1] = if prefer_max { top } else { 0 };

    let mut used = vec![false; total];
    let mut words = Vec::with_capacity(total);
    let mut cur = Word::new(start);
    used[rank(&cur, k)] = true;
    loop {
        let mut cand = cur.as_slice()[1..].to_vec();
        cand.push(0);
        let pick = |tau: Symbol, cand: &mut Vec<Symbol>| {
            cand[n - 1] = tau;
            !used[rank(cand, k)]
        };
        let chosen = if prefer_max {
            (0..k).rev().find(|&t| pick(t, &mut cand))
        } else {
            (0..k).find(|&t| pick(t, &mut cand))
        };
        words.push(cur);
        let Some(tau) = chosen else { break };
        cand[n - 1] = tau;
        used[rank(&cand, k)] = true;
        cur = Word::new(cand);
    }
    Ok(DBSequence::from_parts_unchecked(n, Some(k), words))
}

/// Lyndon words over `[k]` of length at most `n`, in lexicographic order.
///
/// Successor step: repeat the current word periodically out to length `n`,
/// strip trailing `k-1` symbols, and increment the last symbol.
#[derive(Debug, Clone)]
pub struct LyndonWords {
    n: usize,
    k: Symbol,
    buf: Vec<Symbol>,
    started: bool,
}

impl LyndonWords {
    pub fn new(n: usize, k: Symbol) -> Self {
        LyndonWords {
            n,
            k,
            buf: Vec::with_capacity(n),
            started: false,
        }
    }
}

impl Iterator for LyndonWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.n == 0 || self.k == 0 {
            return None;
        }
        if !self.started {
            self.started = true;
            self.buf.push(0);
            return Some(Word::from(&self.buf[..]));
        }
        let len = self.buf.len();
        if len == 0 {
            return None;
        }
        for i in len..self.n {
            let s = self.buf[i % len];
            self.buf.push(s);
        }
        while self.buf.last() == Some(&(self.k - 1)) {
            self.buf.pop();
        }
        let last = self.buf.last_mut()?;
        *last += 1;
        Some(Word::from(&self.buf[..]))
    }
}

/// Lyndon words over `[k]` whose length divides `n`, in lexicographic order.
pub fn fkm_lyndon_words(n: usize, k: Symbol) -> Vec<Word> {
    LyndonWords::new(n, k)
        .filter(|w| n.is_multiple_of(w.len()))
        .collect()
}

/// Same list as [`fkm_lyndon_words`], by filtering every word of each
/// divisor length through [`is_lyndon`] and sorting.
pub fn lyndon_words_by_filter(n: usize, k: Symbol) -> Vec<Word> {
    let mut out = Vec::new();
    for d in (1..=n).filter(|&d| n.is_multiple_of(d)) {
        let Some(count) = word_count(d, k) else {
            continue;
        };
        for r in 0..count {
            let w = unrank(r, d, k);
            if is_lyndon(&w).unwrap_or(false) {
                out.push(w);
            }
        }
    }
    out.sort();
    out
}

/// Concatenation of [`fkm_lyndon_words`]: the cyclic symbol stream of
/// `pmn(n, k)`, `k^n` symbols long.
pub fn fkm_sequence(n: usize, k: Symbol) -> Vec<Symbol> {
    LyndonWords::new(n, k)
        .filter(|w| n.is_multiple_of(w.len()))
        .flat_map(Word::into_vec)
        .collect()
}

/// Infinite `rpmx(n)` over the unbounded alphabet, starting at `0^n`.
pub fn rpmx_stream(n: usize) -> crate::shiftrules::Walk {
    ShiftRule::new(SequenceVariant::Rpmx, Alphabet::Unbounded)
        .expect("rpmx has an unbounded shift rule")
        .walk(n)
}

/// The first `limit` words of `rpmx(n)`.
pub fn stream_rpmx(n: usize, limit: usize) -> DBSequence {
    DBSequence::from_parts_unchecked(n, None, rpmx_stream(n).take(limit).collect())
}

/// Last symbol of each word: word `i` ends at stream position `i`.
pub fn word_stream_to_symbols(seq: &DBSequence) -> Vec<Symbol> {
    seq.words().iter().filter_map(Word::last).collect()
}

/// Inverse of [`word_stream_to_symbols`] for a cyclic stream: word `i` is
/// the window `σ_{i-n+1} .. σ_i`, indices taken modulo the stream length.
pub fn symbols_to_words(symbols: &[Symbol], n: usize, k: Symbol) -> Result<DBSequence> {
    let len = symbols.len();
    if len == 0 {
        return DBSequence::new(n, Some(k), Vec::new());
    }
    let words = (0..len)
        .map(|i| {
            (0..n)
                .map(|j| symbols[(i + len * n - (n - 1) + j) % len])
                .collect::<Word>()
        })
        .collect();
    DBSequence::new(n, Some(k), words)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Greedy,
    CycleJoin,
    ShiftRule,
    Fkm,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Greedy,
        Method::CycleJoin,
        Method::ShiftRule,
        Method::Fkm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Greedy => "greedy",
            Method::CycleJoin => "cycle-join",
            Method::ShiftRule => "shift-rule",
            Method::Fkm => "fkm",
        }
    }

    /// The variant this method builds without a transform.
    pub fn native_variant(self) -> SequenceVariant {
        match self {
            Method::Greedy => SequenceVariant::Pmx,
            Method::CycleJoin => SequenceVariant::Rpmx,
            Method::ShiftRule => SequenceVariant::Rpmx,
            Method::Fkm => SequenceVariant::Pmn,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown method `{s}`")))
    }
}

/// What to generate: a complete `(n, k)` sequence, or with `k = None` a
/// `limit`-word prefix of the infinite `rpmx(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub method: Method,
    pub variant: SequenceVariant,
    pub n: usize,
    pub k: Option<Symbol>,
    pub limit: Option<usize>,
}

impl GeneratorSpec {
    pub fn complete(method: Method, variant: SequenceVariant, n: usize, k: Symbol) -> Self {
        GeneratorSpec {
            method,
            variant,
            n,
            k: Some(k),
            limit: None,
        }
    }

    pub fn generate(&self) -> Result<DBSequence> {
        if self.n == 0 {
            return Err(Error::invalid("n must be >= 1"));
        }
        let Some(k) = self.k else {
            if self.variant != SequenceVariant::Rpmx {
                return Err(Error::invalid(format!(
                    "the unbounded stream exists only for rpmx, not {}",
                    self.variant
                )));
            }
            if self.method != Method::ShiftRule {
                return Err(Error::invalid(format!(
                    "the unbounded stream is generated by shift-rule, not {}",
                    self.method
                )));
            }
            let limit = self
                .limit
                .ok_or_else(|| Error::invalid("an unbounded stream needs a limit"))?;
            return Ok(stream_rpmx(self.n, limit));
        };
        if k == 0 {
            return Err(Error::invalid("k must be >= 1"));
        }
        let seq = match self.method {
            Method::Greedy => {
                let native = if self.variant.is_complemented() {
                    SequenceVariant::Pmn
                } else {
                    SequenceVariant::Pmx
                };
                let seq = greedy(self.n, k, native)?;
                transform_sequence(&seq, native, self.variant)?
            }
            Method::CycleJoin => {
                let seq = joining::build(self.n, k, false)?.sequence();
                transform_sequence(&seq, SequenceVariant::Rpmx, self.variant)?
            }
            Method::ShiftRule => {
                word_count(self.n, k).ok_or(Error::TooLarge { n: self.n, k })?;
                let rule = ShiftRule::new(self.variant, Alphabet::Bounded(k))?;
                DBSequence::from_parts_unchecked(self.n, Some(k), rule.walk(self.n).collect())
            }
            Method::Fkm => {
                word_count(self.n, k).ok_or(Error::TooLarge { n: self.n, k })?;
                let seq = symbols_to_words(&fkm_sequence(self.n, k), self.n, k)?;
                transform_sequence(&seq, SequenceVariant::Pmn, self.variant)?
            }
        };
        Ok(match self.limit {
            Some(limit) if limit < seq.len() => {
                let mut words = seq.into_words();
                words.truncate(limit);
                DBSequence::from_parts_unchecked(self.n, Some(k), words)
            }
            _ => seq,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn strings(seq: &DBSequence) -> Vec<String> {
        seq.words().iter().map(|w| w.to_string()).collect()
    }

    fn digits(symbols: &[Symbol]) -> String {
        symbols.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn greedy_examples() {
        let pmx = greedy(3, 3, SequenceVariant::Pmx).unwrap();
        assert_eq!(pmx.len(), 27);
        assert_eq!(&strings(&pmx)[..4], ["002", "022", "222", "221"]);
        let pmn = greedy(3, 3, SequenceVariant::Pmn).unwrap();
        assert_eq!(&strings(&pmn)[..4], ["220", "200", "000", "001"]);
        assert_eq!(
            strings(&greedy(1, 2, SequenceVariant::Pmx).unwrap()),
            ["1", "0"]
        );
        assert!(greedy(3, 3, SequenceVariant::Rpmx).is_err());
    }

    #[test]
    fn lyndon_examples() {
        let got: Vec<String> = fkm_lyndon_words(3, 3)
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(
            got,
            ["0", "001", "002", "011", "012", "021", "022", "1", "112", "122", "2"]
        );
        assert_eq!(fkm_lyndon_words(2, 2), vec![w("0"), w("01"), w("1")]);
        assert_eq!(fkm_lyndon_words(5, 1), vec![w("0")]);
    }

    #[test]
    fn lyndon_generator_matches_filter() {
        for n in 1..=7 {
            for k in 1..=4 {
                if word_count(n, k).unwrap() > 20_000 {
                    continue;
                }
                assert_eq!(
                    fkm_lyndon_words(n, k),
                    lyndon_words_by_filter(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn fkm_examples() {
        assert_eq!(digits(&fkm_sequence(3, 3)), "000100201101202102211121222");
        assert_eq!(digits(&fkm_sequence(1, 5)), "01234");
        assert_eq!(digits(&fkm_sequence(2, 2)), "0011");
    }

    #[test]
    fn stream_examples() {
        assert_eq!(
            strings(&stream_rpmx(3, 8)),
            ["000", "001", "010", "101", "011", "111", "110", "100"]
        );
        assert_eq!(strings(&stream_rpmx(1, 5)), ["0", "1", "2", "3", "4"]);
        assert_eq!(stream_rpmx(3, 27).words()[26], w("200"));
        assert_eq!(stream_rpmx(3, 28).words()[27], w("003"));
    }

    #[test]
    fn symbol_stream_round_trip() {
        let pmn = greedy(3, 3, SequenceVariant::Pmn).unwrap();
        let symbols = word_stream_to_symbols(&pmn);
        assert_eq!(digits(&symbols), "000100201101202102211121222");
        assert_eq!(symbols_to_words(&symbols, 3, 3).unwrap(), pmn);
        let pmx = greedy(3, 3, SequenceVariant::Pmx).unwrap();
        assert_eq!(digits(&word_stream_to_symbols(&pmx)[..3]), "222");
        let one = DBSequence::new(3, Some(3), vec![w("012")]).unwrap();
        assert_eq!(word_stream_to_symbols(&one), vec![2]);
    }

    #[test]
    fn spec_dispatch() {
        for method in Method::ALL {
            for variant in SequenceVariant::ALL {
                let seq = GeneratorSpec::complete(method, variant, 3, 3)
                    .generate()
                    .unwrap();
                let again = GeneratorSpec::complete(Method::Greedy, variant, 3, 3)
                    .generate()
                    .unwrap();
                assert_eq!(seq, again, "{method} {variant}");
            }
        }
        let stream = GeneratorSpec {
            method: Method::ShiftRule,
            variant: SequenceVariant::Rpmx,
            n: 2,
            k: None,
            limit: Some(5),
        };
        assert_eq!(stream.generate().unwrap().len(), 5);
        let bad = GeneratorSpec {
            variant: SequenceVariant::Pmn,
            ..stream
        };
        assert!(bad.generate().is_err());
    }
}
