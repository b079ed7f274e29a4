//! Cycle-joining construction of `D(n, k) = rpmx(n, k)`.
//!
//! Start from `(0^n)`. Walk the key-words in colex order; for key-word
//! `0^l (σ+1) w` splice its whole cycle `w 0^l (σ+1), ..., (σ+1) w 0^l`
//! immediately after the word `σ w 0^l`, which is always already placed.
//!
//! The ordering is a doubly linked list indexed by word rank, so each splice
//! costs `O(|cycle|)` and the full build `O(n k^n)`.

use crate::cycles::{cycle_of, decompose, enumerate_keywords};
use crate::error::{Error, Result};
use crate::sequence::DBSequence;
use crate::words::{rank, unrank, word_count, Alphabet, Symbol, Word};

const NIL: usize = usize::MAX;

/// Incremental builder exposing each intermediate ordering `D_m`.
#[derive(Debug, Clone)]
pub struct JoinBuilder {
    n: usize,
    k: Symbol,
    keys: Vec<Word>,
    next: Vec<usize>,
    prev: Vec<usize>,
    placed: Vec<bool>,
    head: usize,
    tail: usize,
    inserted: usize,
    anchors: Vec<Option<Word>>,
}

impl JoinBuilder {
    /// Starts with `D_0 = (0^n)`.
    pub fn new(n: usize, k: Symbol) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::invalid(format!(
                "need n >= 1 and k >= 1, got n={n} k={k}"
            )));
        }
        let total = word_count(n, k).ok_or(Error::TooLarge { n, k })?;
        let mut b = JoinBuilder {
            n,
            k,
            keys: enumerate_keywords(n, k),
            next: vec![NIL; total],
            prev: vec![NIL; total],
            placed: vec![false; total],
            head: 0,
            tail: 0,
            inserted: 1,
            anchors: vec![None],
        };
        b.placed[0] = true;
        Ok(b)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Symbol {
        self.k
    }

    /// Number of cycles placed so far (`m + 1` for `D_m`).
    pub fn cycles_inserted(&self) -> usize {
        self.inserted
    }

    pub fn cycle_total(&self) -> usize {
        self.keys.len()
    }

    pub fn is_complete(&self) -> bool {
        self.inserted == self.keys.len()
    }

    /// Key-word of the next cycle to insert.
    pub fn next_key(&self) -> Option<&Word> {
        self.keys.get(self.inserted)
    }

    /// Inserts the next cycle after its canonical anchor. Returns its ordinal.
    pub fn step(&mut self) -> Option<usize> {
        let key = self.next_key()?;
        let anchor = decompose(key)
            .expect("enumerated key-words decompose")
            .anchor()
            .expect("only the zero key lacks an anchor, and it seeds the ordering");
        debug_assert!(
            self.placed[rank(&anchor, self.k)],
            "anchor {anchor} not yet placed"
        );
        Some(self.splice_after(&anchor))
    }

    /// Inserts the next cycle after an arbitrary placed word instead of its
    /// canonical anchor. Produces non-canonical traces, e.g. for exercising
    /// the structure checks.
    pub fn step_with_anchor(&mut self, anchor: &Word) -> Result<usize> {
        if self.is_complete() {
            return Err(Error::invalid("all cycles already inserted"));
        }
        if anchor.len() != self.n
            || Alphabet::Bounded(self.k).check(anchor).is_err()
            || !self.placed[rank(anchor, self.k)]
        {
            return Err(Error::NotFound(anchor.clone()));
        }
        Ok(self.splice_after(anchor))
    }

    fn splice_after(&mut self, anchor: &Word) -> usize {
        let m = self.inserted;
        let cycle = cycle_of(&self.keys[m]);
        let mut cursor = rank(anchor, self.k);
        let after = self.next[cursor];
        for member in cycle.members() {
            let r = rank(member, self.k);
            self.placed[r] = true;
            self.prev[r] = cursor;
            self.next[cursor] = r;
            cursor = r;
        }
        self.next[cursor] = after;
        if after == NIL {
            self.tail = cursor;
        } else {
            self.prev[after] = cursor;
        }
        self.anchors.push(Some(anchor.clone()));
        self.inserted += 1;
        m
    }

    fn ranks(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.next.len());
        let mut cur = self.head;
        while cur != NIL {
            out.push(cur);
            cur = self.next[cur];
        }
        out
    }

    /// The current ordering `D_m`.
    pub fn ordering(&self) -> Vec<Word> {
        self.ranks()
            .into_iter()
            .map(|r| unrank(r, self.n, self.k))
            .collect()
    }

    pub fn last_word(&self) -> Word {
        unrank(self.tail, self.n, self.k)
    }

    /// Completes any remaining canonical insertions and freezes the ordering.
    pub fn finish(mut self, record_trace: bool) -> JoinTrace {
        while self.step().is_some() {}
        let order = self.ranks();
        let mut position = vec![NIL; order.len()];
        for (i, &r) in order.iter().enumerate() {
            position[r] = i;
        }
        let log = record_trace.then(|| CycleLog::new(&self, &position));
        JoinTrace {
            n: self.n,
            k: self.k,
            order,
            position,
            log,
        }
    }
}

/// Builds `D(n, k)`. With `record_trace` off, per-cycle records are dropped
/// and only the ordering and its position index are kept.
pub fn build(n: usize, k: Symbol, record_trace: bool) -> Result<JoinTrace> {
    Ok(JoinBuilder::new(n, k)?.finish(record_trace))
}

/// One inserted cycle with its final extent in `D(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRecord {
    pub index: usize,
    pub key: Word,
    pub first: Word,
    pub last: Word,
    /// Word the cycle was spliced after; `None` for `C_0`.
    pub anchor: Option<Word>,
    /// Position of `first` in the completed ordering.
    pub open_position: usize,
    /// Position of `last` in the completed ordering.
    pub close_position: usize,
}

#[derive(Debug, Clone)]
struct CycleLog {
    records: Vec<CycleRecord>,
    cycle_of_rank: Vec<u32>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl CycleLog {
    fn new(b: &JoinBuilder, position: &[usize]) -> Self {
        let mut cycle_of_rank = vec![u32::MAX; position.len()];
        let mut records = Vec::with_capacity(b.keys.len());
        for (m, key) in b.keys.iter().enumerate() {
            let cycle = cycle_of(key);
            for member in cycle.members() {
                cycle_of_rank[rank(member, b.k)] = m as u32;
            }
            records.push(CycleRecord {
                index: m,
                key: key.clone(),
                first: cycle.first().clone(),
                last: cycle.last().clone(),
                anchor: b.anchors[m].clone(),
                open_position: position[rank(cycle.first(), b.k)],
                close_position: position[rank(cycle.last(), b.k)],
            });
        }
        let (parent, depth) = nest(&records);
        CycleLog {
            records,
            cycle_of_rank,
            parent,
            depth,
        }
    }
}

/// Innermost strictly enclosing extent of each cycle, by a stack scan over
/// extents sorted by opening position.
fn nest(records: &[CycleRecord]) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut by_open: Vec<usize> = (0..records.len()).collect();
    by_open.sort_by_key(|&m| records[m].open_position);
    let mut parent = vec![None; records.len()];
    let mut depth = vec![0; records.len()];
    let mut stack: Vec<usize> = Vec::new();
    for c in by_open {
        let rc = &records[c];
        while let Some(&top) = stack.last() {
            if records[top].close_position < rc.open_position {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&top) = stack.last() {
            let rt = &records[top];
            if rt.open_position < rc.open_position && rc.close_position < rt.close_position {
                parent[c] = Some(top);
                depth[c] = depth[top] + 1;
            }
        }
        stack.push(c);
    }
    (parent, depth)
}

/// How cycle `C_r` sits relative to an earlier cycle `C_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingRelation {
    /// `last(C_m) < first(C_r)`.
    Follows,
    /// `first(C_m) < first(C_r) <= last(C_r) < last(C_m)`, through a chain of
    /// `depth` immediate embeddings.
    Embedded { depth: usize },
    /// Neither: the extents cross. Never produced by a canonical build.
    OrderViolation,
}

/// A completed cycle-joining ordering with optional per-cycle records.
#[derive(Debug, Clone)]
pub struct JoinTrace {
    n: usize,
    k: Symbol,
    order: Vec<usize>,
    position: Vec<usize>,
    log: Option<CycleLog>,
}

impl JoinTrace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Symbol {
        self.k
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn word_at(&self, position: usize) -> Option<Word> {
        self.order.get(position).map(|&r| unrank(r, self.n, self.k))
    }

    pub fn words(&self) -> impl DoubleEndedIterator<Item = Word> + ExactSizeIterator + '_ {
        self.order.iter().map(|&r| unrank(r, self.n, self.k))
    }

    /// 0-based position of `w` in the ordering.
    pub fn position_of(&self, w: &Word) -> Result<usize> {
        if w.len() != self.n || Alphabet::Bounded(self.k).check(w).is_err() {
            return Err(Error::NotFound(w.clone()));
        }
        match self.position[rank(w, self.k)] {
            NIL => Err(Error::NotFound(w.clone())),
            p => Ok(p),
        }
    }

    pub fn sequence(&self) -> DBSequence {
        DBSequence::from_parts_unchecked(self.n, Some(self.k), self.words().collect())
    }

    pub fn is_traced(&self) -> bool {
        self.log.is_some()
    }

    /// Per-cycle records in key-word order, when traced.
    pub fn cycles(&self) -> Option<&[CycleRecord]> {
        self.log.as_ref().map(|l| &l.records[..])
    }

    fn log(&self) -> Result<&CycleLog> {
        self.log
            .as_ref()
            .ok_or_else(|| Error::invalid("trace was built without recording"))
    }

    /// Ordinal of the cycle containing `w`.
    pub fn cycle_index_of(&self, w: &Word) -> Result<usize> {
        let log = self.log()?;
        if w.len() != self.n || Alphabet::Bounded(self.k).check(w).is_err() {
            return Err(Error::NotFound(w.clone()));
        }
        Ok(log.cycle_of_rank[rank(w, self.k)] as usize)
    }

    /// The cycle that immediately embeds `C_r`, if any.
    pub fn immediate_container(&self, r: usize) -> Result<Option<usize>> {
        let log = self.log()?;
        log.parent
            .get(r)
            .copied()
            .ok_or_else(|| Error::invalid(format!("no cycle {r}")))
    }

    /// Classifies `C_r` against `C_m` for `m < r` from the recorded extents.
    pub fn embedding_relation(&self, r: usize, m: usize) -> Result<EmbeddingRelation> {
        let log = self.log()?;
        let count = log.records.len();
        if r >= count || m >= count {
            return Err(Error::invalid(format!(
                "cycle ordinals {m}, {r} out of range (have {count})"
            )));
        }
        if m >= r {
            return Err(Error::invalid(format!("expected m < r, got m={m} r={r}")));
        }
        let (cm, cr) = (&log.records[m], &log.records[r]);
        if cm.close_position < cr.open_position {
            return Ok(EmbeddingRelation::Follows);
        }
        let nested = cm.open_position < cr.open_position
            && cr.open_position <= cr.close_position
            && cr.close_position < cm.close_position;
        if !nested {
            return Ok(EmbeddingRelation::OrderViolation);
        }
        let mut cur = r;
        let mut depth = 0;
        while let Some(p) = log.parent[cur] {
            depth += 1;
            if p == m {
                return Ok(EmbeddingRelation::Embedded { depth });
            }
            cur = p;
        }
        Ok(EmbeddingRelation::OrderViolation)
    }

    /// Nesting depth of `C_r` below the top level.
    pub fn depth(&self, r: usize) -> Result<usize> {
        let log = self.log()?;
        log.depth
            .get(r)
            .copied()
            .ok_or_else(|| Error::invalid(format!("no cycle {r}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn strings(words: impl IntoIterator<Item = Word>) -> Vec<String> {
        words.into_iter().map(|w| w.to_string()).collect()
    }

    const D33: [&str; 27] = [
        "000", "001", "010", "101", "011", "111", "110", "100", "002", "021", "210", "102", "020",
        "201", "012", "121", "211", "112", "120", "202", "022", "221", "212", "122", "222", "220",
        "200",
    ];

    #[test]
    fn build_examples() {
        let t = build(3, 3, true).unwrap();
        assert_eq!(strings(t.words()), D33);
        assert_eq!(strings(build(4, 1, false).unwrap().words()), ["0000"]);
        assert_eq!(
            strings(build(3, 2, false).unwrap().words()),
            ["000", "001", "010", "101", "011", "111", "110", "100"]
        );
        assert_eq!(
            strings(build(2, 2, false).unwrap().words()),
            ["00", "01", "11", "10"]
        );
        assert_eq!(
            strings(build(1, 3, false).unwrap().words()),
            ["0", "1", "2"]
        );
        assert!(build(0, 3, false).is_err());
    }

    #[test]
    fn positions() {
        let t = build(3, 3, false).unwrap();
        assert_eq!(t.position_of(&w("000")).unwrap(), 0);
        assert_eq!(t.position_of(&w("200")).unwrap(), 26);
        assert_eq!(t.position_of(&w("002")).unwrap(), 8);
        assert_eq!(t.position_of(&w("003")), Err(Error::NotFound(w("003"))));
        assert_eq!(t.position_of(&w("00")), Err(Error::NotFound(w("00"))));
    }

    #[test]
    fn embedding_examples() {
        let t = build(3, 3, true).unwrap();
        assert_eq!(
            t.embedding_relation(5, 4).unwrap(),
            EmbeddingRelation::Embedded { depth: 1 }
        );
        assert_eq!(
            t.embedding_relation(3, 1).unwrap(),
            EmbeddingRelation::Embedded { depth: 2 }
        );
        assert_eq!(
            t.embedding_relation(4, 1).unwrap(),
            EmbeddingRelation::Follows
        );
        assert!(matches!(
            t.embedding_relation(1, 4),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            t.embedding_relation(11, 4),
            Err(Error::InvalidInput(_))
        ));
        let untraced = build(3, 3, false).unwrap();
        assert!(untraced.embedding_relation(5, 4).is_err());
    }

    #[test]
    fn records_match_parenthesization() {
        // (0 000 ) (1 001 010 (2 101 011 (3 111 ) 110 ) 100 ) (4 002 (5 021 210 102 ) 020 ...
        let t = build(3, 3, true).unwrap();
        let c = t.cycles().unwrap();
        assert_eq!(c.len(), 11);
        assert_eq!((c[2].open_position, c[2].close_position), (3, 6));
        assert_eq!(c[5].anchor, Some(w("002")));
        assert_eq!(c[8].first, w("202"));
        assert_eq!(c[8].last, w("220"));
        assert_eq!(c[10].anchor, Some(w("122")));
        assert_eq!(t.immediate_container(10).unwrap(), Some(8));
        assert_eq!(t.immediate_container(4).unwrap(), None);
    }

    #[test]
    fn every_intermediate_ordering_keeps_the_successor_property() {
        for n in 1..=5 {
            for k in 1..=3 {
                let mut b = JoinBuilder::new(n, k).unwrap();
                loop {
                    let d = b.ordering();
                    assert_eq!(d[0], Word::repeat(0, n));
                    for pair in d.windows(2) {
                        assert_eq!(pair[0][1..], pair[1][..n - 1], "{} -> {}", pair[0], pair[1]);
                    }
                    let last = d.last().unwrap();
                    assert!(last[1..].iter().all(|&s| s == 0), "D_m ends in {last}");
                    if b.step().is_none() {
                        break;
                    }
                }
                let mut terminal = vec![0; n];
                terminal[0] = k - 1;
                assert_eq!(b.last_word(), Word::new(terminal));
            }
        }
    }

    #[test]
    fn wrong_anchor_is_rejected_when_absent() {
        let mut b = JoinBuilder::new(3, 3).unwrap();
        assert!(matches!(
            b.step_with_anchor(&w("222")),
            Err(Error::NotFound(_))
        ));
        assert!(b.step_with_anchor(&w("000")).is_ok());
    }
}
