//! Checks against the De Bruijn definition, between constructions, and over
//! the nesting structure of a cycle-joining trace.
//!
//! Every check reports the first failing position, so output is
//! reproducible. No check relies on another construction being correct.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::cycles::{cycle_of, decompose};
use crate::error::{Error, Result};
use crate::joining::{self, EmbeddingRelation, JoinTrace};
use crate::sequence::DBSequence;
use crate::shiftrules::rpmx_terminal;
use crate::words::{unrank, word_count, Alphabet, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub position: usize,
    pub words: Vec<Word>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub n: usize,
    pub k: Option<Symbol>,
    pub pass: bool,
    /// Always present when `pass` is false.
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    fn passed(name: impl Into<String>, n: usize, k: Option<Symbol>) -> Self {
        CheckReport {
            name: name.into(),
            n,
            k,
            pass: true,
            counterexample: None,
        }
    }

    fn failed(name: impl Into<String>, n: usize, k: Option<Symbol>, cx: Counterexample) -> Self {
        CheckReport {
            name: name.into(),
            n,
            k,
            pass: false,
            counterexample: Some(cx),
        }
    }

    fn from_outcome(
        name: impl Into<String>,
        n: usize,
        k: Option<Symbol>,
        outcome: Option<Counterexample>,
    ) -> Self {
        match outcome {
            None => Self::passed(name, n, k),
            Some(cx) => Self::failed(name, n, k, cx),
        }
    }

    fn digits(&self) -> bool {
        match self.k {
            Some(k) => k <= 10,
            None => self
                .counterexample
                .iter()
                .flat_map(|c| &c.words)
                .all(|w| w.iter().all(|&s| s < 10)),
        }
    }

    /// One line: `PASS name n=3 k=3` or
    /// `FAIL name n=3 k=3 position=0 words=001 000 detail=...`.
    pub fn to_text(&self) -> String {
        let mut line = format!(
            "{} {} n={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.n
        );
        if let Some(k) = self.k {
            line.push_str(&format!(" k={k}"));
        }
        if let Some(cx) = &self.counterexample {
            let digits = self.digits();
            let words: Vec<String> = cx.words.iter().map(|w| w.render(digits)).collect();
            line.push_str(&format!(
                " position={} words={} detail={}",
                cx.position,
                words.join(" "),
                cx.detail
            ));
        }
        line
    }

    pub fn to_json(&self) -> Value {
        let digits = self.digits();
        let counterexample = self.counterexample.as_ref().map(|cx| {
            json!({
                "position": cx.position,
                "words": cx.words.iter().map(|w| w.render(digits)).collect::<Vec<_>>(),
                "detail": cx.detail,
            })
        });
        json!({
            "name": self.name,
            "params": { "n": self.n, "k": self.k },
            "pass": self.pass,
            "counterexample": counterexample,
        })
    }
}

fn cx(position: usize, words: Vec<Word>, detail: impl Into<String>) -> Option<Counterexample> {
    Some(Counterexample {
        position,
        words,
        detail: detail.into(),
    })
}

/// Checks that `seq` is an `(n, k)` De Bruijn sequence: `k^n` distinct
/// `n`-words over `[k]`, each `τw` followed by some `wσ`, and the last word
/// `τx` followed cyclically by the first word `xσ`.
pub fn check_db(seq: &DBSequence, n: usize, k: Symbol) -> CheckReport {
    CheckReport::from_outcome("db", n, Some(k), db_violation(seq, n, k))
}

fn db_violation(seq: &DBSequence, n: usize, k: Symbol) -> Option<Counterexample> {
    let words = seq.words();
    let expected = word_count(n, k);
    if expected != Some(words.len()) {
        let expected = expected.map_or_else(|| "overflow".to_string(), |e| e.to_string());
        return cx(
            words.len(),
            Vec::new(),
            format!("expected {expected} words, found {}", words.len()),
        );
    }
    let mut seen = HashSet::with_capacity(words.len());
    for (i, w) in words.iter().enumerate() {
        if w.len() != n {
            return cx(
                i,
                vec![w.clone()],
                format!("word has length {}, expected {n}", w.len()),
            );
        }
        if Alphabet::Bounded(k).check(w).is_err() {
            return cx(i, vec![w.clone()], format!("symbol outside [{k}]"));
        }
        if !seen.insert(w) {
            return cx(i, vec![w.clone()], "repeated word");
        }
        if let Some(next) = words.get(i + 1) {
            if w[1..] != next[..n - 1] {
                return cx(i, vec![w.clone(), next.clone()], "overlap broken");
            }
        }
    }
    if let (Some(last), Some(first)) = (words.last(), words.first()) {
        if last[1..] != first[..n - 1] {
            return cx(
                words.len() - 1,
                vec![last.clone(), first.clone()],
                "wraparound overlap broken",
            );
        }
    }
    None
}

/// Identical word lists; reports the first mismatching position.
pub fn check_equal(a: &DBSequence, b: &DBSequence) -> CheckReport {
    let outcome = match a.words().iter().zip(b.words()).position(|(x, y)| x != y) {
        Some(i) => cx(
            i,
            vec![a.words()[i].clone(), b.words()[i].clone()],
            "words differ",
        ),
        None if a.len() != b.len() => cx(
            a.len().min(b.len()),
            Vec::new(),
            format!("lengths differ: {} vs {}", a.len(), b.len()),
        ),
        None if a.n() != b.n() => cx(0, Vec::new(), "word lengths differ"),
        None => None,
    };
    CheckReport::from_outcome("equal", a.n(), a.k(), outcome)
}

/// `D(n, k)` is a strict prefix of `D(n, k+1)` for every `1 <= k < k_max`.
pub fn check_onion(n: usize, k_max: Symbol) -> Result<CheckReport> {
    check_onion_with("onion", n, k_max, |n, k| {
        Ok(joining::build(n, k, false)?.sequence())
    })
}

/// [`check_onion`] over any family of sequences.
pub fn check_onion_with(
    name: &str,
    n: usize,
    k_max: Symbol,
    build: impl Fn(usize, Symbol) -> Result<DBSequence>,
) -> Result<CheckReport> {
    if n == 0 || k_max < 2 {
        return Err(Error::invalid(format!(
            "onion check needs n >= 1 and k_max >= 2, got n={n} k_max={k_max}"
        )));
    }
    let mut smaller = build(n, 1)?;
    for k in 1..k_max {
        let larger = build(n, k + 1)?;
        if !smaller.is_strict_prefix_of(&larger) {
            let i = smaller
                .words()
                .iter()
                .zip(larger.words())
                .position(|(x, y)| x != y)
                .unwrap_or(smaller.len().min(larger.len()));
            let words = [smaller.words().get(i), larger.words().get(i)]
                .into_iter()
                .flatten()
                .cloned()
                .collect();
            return Ok(CheckReport::failed(
                name,
                n,
                Some(k_max),
                Counterexample {
                    position: i,
                    words,
                    detail: format!("k={k} sequence is not a strict prefix of k={}", k + 1),
                },
            ));
        }
        smaller = larger;
    }
    Ok(CheckReport::passed(name, n, Some(k_max)))
}

type StructureCheck = fn(&JoinTrace) -> Result<Option<Counterexample>>;

/// Runs the structural suite and reports the first violated property by
/// name, or a single pass.
pub fn check_structure(trace: &JoinTrace) -> Result<CheckReport> {
    let reports = structure_reports(trace)?;
    let (n, k) = (trace.n(), Some(trace.k()));
    Ok(match reports.into_iter().find(|r| !r.pass) {
        None => CheckReport::passed("structure", n, k),
        Some(r) => {
            let mut cx = r
                .counterexample
                .expect("failing reports carry a counterexample");
            cx.detail = format!("{}: {}", r.name, cx.detail);
            CheckReport::failed("structure", n, k, cx)
        }
    })
}

/// Each structural property of a traced build as its own report, in a fixed
/// order. Properties after a failing one are still evaluated.
pub fn structure_reports(trace: &JoinTrace) -> Result<Vec<CheckReport>> {
    let records = trace
        .cycles()
        .ok_or_else(|| Error::invalid("structure checks need a trace built with recording"))?;
    let checks: [(&str, StructureCheck); 8] = [
        ("successor-property", successor_property),
        ("terminal-word", terminal_word),
        ("first-word-progression", first_word_progression),
        ("parenthesis", parenthesis),
        ("successor-key", successor_key),
        ("immediate-embedding-key", immediate_embedding_key),
        ("embedding-zero-replacement", embedding_zero_replacement),
        ("increment-order", increment_order),
    ];
    debug_assert!(!records.is_empty());
    checks
        .iter()
        .map(|(name, f)| {
            Ok(CheckReport::from_outcome(
                *name,
                trace.n(),
                Some(trace.k()),
                f(trace)?,
            ))
        })
        .collect()
}

/// Starts at `0^n`; every `τw` is followed by some `wσ`.
fn successor_property(t: &JoinTrace) -> Result<Option<Counterexample>> {
    let n = t.n();
    let first = t.word_at(0).unwrap_or_default();
    if first != Word::repeat(0, n) {
        return Ok(cx(
            0,
            vec![first],
            "ordering does not start at the zero word",
        ));
    }
    let mut prev = first;
    for (i, w) in t.words().enumerate().skip(1) {
        if prev[1..] != w[..n - 1] {
            return Ok(cx(i - 1, vec![prev, w], "overlap broken"));
        }
        prev = w;
    }
    Ok(None)
}

/// Ends in `(k-1) 0^{n-1}`.
fn terminal_word(t: &JoinTrace) -> Result<Option<Counterexample>> {
    let expected = rpmx_terminal(t.n(), t.k());
    let last = t.word_at(t.len() - 1).unwrap_or_default();
    Ok((last != expected).then(|| Counterexample {
        position: t.len() - 1,
        words: vec![last, expected],
        detail: "final word is not (k-1)0^(n-1)".into(),
    }))
}

/// `m < r` implies `first(C_m)` precedes `first(C_r)`.
fn first_word_progression(t: &JoinTrace) -> Result<Option<Counterexample>> {
    let c = t.cycles().expect("traced");
    for pair in c.windows(2) {
        if pair[0].open_position >= pair[1].open_position {
            return Ok(cx(
                pair[1].open_position,
                vec![pair[0].first.clone(), pair[1].first.clone()],
                format!(
                    "first word of cycle {} does not precede that of cycle {}",
                    pair[0].index, pair[1].index
                ),
            ));
        }
    }
    Ok(None)
}

/// For `m < r`, `C_r` follows `C_m` or nests inside it.
///
/// Once first words are known to be in cycle order, the cycles opening
/// inside `C_m` are exactly a contiguous run `m+1..j`; every pair in that
/// run must classify as embedded and `C_j` must classify as following. All
/// remaining pairs open after `last(C_m)` and follow by construction.
fn parenthesis(t: &JoinTrace) -> Result<Option<Counterexample>> {
    if first_word_progression(t)?.is_some() {
        return pairwise_parenthesis(t);
    }
    let c = t.cycles().expect("traced");
    for m in 0..c.len() {
        let mut r = m + 1;
        while r < c.len() && c[r].open_position < c[m].close_position {
            if let Some(v) = parenthesis_pair(t, r, m)? {
                return Ok(Some(v));
            }
            r += 1;
        }
        if r < c.len() {
            if let Some(v) = parenthesis_pair(t, r, m)? {
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

fn pairwise_parenthesis(t: &JoinTrace) -> Result<Option<Counterexample>> {
    let count = t.cycles().expect("traced").len();
    for m in 0..count {
        for r in m + 1..count {
            if let Some(v) = parenthesis_pair(t, r, m)? {
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

fn parenthesis_pair(t: &JoinTrace, r: usize, m: usize) -> Result<Option<Counterexample>> {
    let c = t.cycles().expect("traced");
    Ok(match t.embedding_relation(r, m)? {
        EmbeddingRelation::OrderViolation => cx(
            c[r].open_position,
            vec![
                c[m].first.clone(),
                c[m].last.clone(),
                c[r].first.clone(),
                c[r].last.clone(),
            ],
            format!("cycle {r} neither follows nor nests inside cycle {m}"),
        ),
        _ => None,
    })
}

/// If `first(C_r)` directly follows `last(C_m)` and `key_m = 0^l(σ+1)w`,
/// then `key_r = 0^l(σ+2)w`.
fn successor_key(t: &JoinTrace) -> Result<Option<Counterexample>> {
    let c = t.cycles().expect("traced");
    for cm in c.iter().skip(1) {
        let Some(after) = t.word_at(cm.close_position + 1) else {
            continue;
        };
        let r = t.cycle_index_of(&after)?;
        if c[r].first != after || r == cm.index {
            continue;
        }
        let parts = decompose(&cm.key)?;
        let mut expected = parts.key().into_vec();
        expected[parts.zeros] += 1;
        let expected = Word::new(expected);
        if c[r].key != expected {
            return Ok(cx(
                cm.close_position + 1,
                vec![cm.key.clone(), c[r].key.clone(), expected],
                format!(
                    "cycle {r} follows cycle {} but its key is not the head increment",
                    cm.index
                ),
            ));
        }
    }
    Ok(None)
}

/// Splits `key = 0^i (σ+1) 0^j w` with `w` empty or starting non-zero.
fn split_head_zeros(key: &Word) -> Option<(usize, usize, Word)> {
    let i = key.iter().position(|&s| s != 0)?;
    let j = key[i + 1..].iter().take_while(|&&s| s == 0).count();
    Some((i, j, Word::from(&key[i + 1 + j..])))
}

/// For `C_r` immediately embedded in `C_m` with `key_r = 0^i(σ+1)0^j w`:
/// `key_m = 0^{i+1+j} w`, and every member of `C_m` placed after `last(C_r)`
/// reads `0^{j2} w 0^{i+1+j1}` with `j1 + j2 = j`.
fn immediate_embedding_key(t: &JoinTrace) -> Result<Option<Counterexample>> {
    let c = t.cycles().expect("traced");
    for cr in c {
        let Some(m) = t.immediate_container(cr.index)? else {
            continue;
        };
        let cm = &c[m];
        let Some((i, j, w)) = split_head_zeros(&cr.key) else {
            return Ok(cx(
                cr.open_position,
                vec![cr.key.clone()],
                "embedded cycle has the zero key",
            ));
        };
        let mut expected = vec![0; i + 1 + j];
        expected.extend_from_slice(&w);
        let expected = Word::new(expected);
        if cm.key != expected {
            return Ok(cx(
                cr.open_position,
                vec![cr.key.clone(), cm.key.clone(), expected],
                format!(
                    "cycle {} immediately embeds cycle {} with the wrong key",
                    m, cr.index
                ),
            ));
        }
        let allowed: HashSet<Word> = (0..=j)
            .map(|j2| {
                let mut v = vec![0; j2];
                v.extend_from_slice(&w);
                v.extend(std::iter::repeat_n(0, i + 1 + (j - j2)));
                Word::new(v)
            })
            .collect();
        for u in cycle_of(&cm.key).members() {
            let pos = t.position_of(u)?;
            if pos > cr.close_position && !allowed.contains(u) {
                return Ok(cx(
                    pos,
                    vec![u.clone(), cr.key.clone(), cm.key.clone()],
                    format!(
                        "member of cycle {m} after cycle {} has the wrong shape",
                        cr.index
                    ),
                ));
            }
        }
    }
    Ok(None)
}

/// For `C_r` `t`-embedded in `C_m` with `key_r = uv`, `u` the shortest prefix
/// holding `t` non-zero symbols: `key_m = 0^{|u|} v`.
fn embedding_zero_replacement(t: &JoinTrace) -> Result<Option<Counterexample>> {
    let c = t.cycles().expect("traced");
    for cr in c {
        let mut depth = 0;
        let mut cur = cr.index;
        while let Some(m) = t.immediate_container(cur)? {
            depth += 1;
            cur = m;
            let prefix_len = cr
                .key
                .iter()
                .enumerate()
                .filter(|(_, &s)| s != 0)
                .nth(depth - 1)
                .map(|(idx, _)| idx + 1);
            let expected = prefix_len.map(|p| {
                let mut v = vec![0; p];
                v.extend_from_slice(&cr.key[p..]);
                Word::new(v)
            });
            if expected.as_ref() != Some(&c[m].key) {
                let mut words = vec![cr.key.clone(), c[m].key.clone()];
                words.extend(expected);
                return Ok(cx(
                    cr.open_position,
                    words,
                    format!(
                        "cycle {} is {depth}-embedded in cycle {m} with the wrong key",
                        cr.index
                    ),
                ));
            }
        }
    }
    Ok(None)
}

/// `τw` precedes `(τ+1)w` whenever `τ+1 < k`.
fn increment_order(t: &JoinTrace) -> Result<Option<Counterexample>> {
    let (n, k) = (t.n(), t.k());
    let total = t.len();
    let stride = word_count(n - 1, k).expect("k^(n-1) <= k^n");
    for r in 0..total {
        let tau = r / stride;
        if tau + 1 >= k as usize {
            continue;
        }
        let lower = unrank(r, n, k);
        let upper = unrank(r + stride, n, k);
        let (pl, pu) = (t.position_of(&lower)?, t.position_of(&upper)?);
        if pl >= pu {
            return Ok(cx(
                pu,
                vec![lower, upper],
                "raising the first symbol moved the word earlier",
            ));
        }
    }
    Ok(None)
}
