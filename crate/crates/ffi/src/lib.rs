//! C ABI over `dbseq`.
//!
//! Words cross the boundary as `uint32_t` arrays of length `n`. Sequences
//! and join traces are opaque handles owned by the caller and released with
//! their `_free` function. Every function returns a [`DbsStatus`]; outputs
//! go through pointer arguments and are written only on `DBS_STATUS_OK`.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dbseq::generators::{stream_rpmx, word_stream_to_symbols, GeneratorSpec, Method};
use dbseq::joining::{self, JoinTrace};
use dbseq::words::word_count;
use dbseq::{cycles, shiftrules, verify};
use dbseq::{Alphabet, DBSequence, Error, SequenceVariant, Symbol, Word};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The input word is the final word of its sequence.
    EndOfSequence = 3,
    /// More than `max_words` words would be materialized.
    ResourceLimit = 4,
    NotFound = 5,
    BufferTooSmall = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

pub const DBS_METHOD_GREEDY: u32 = 0;
pub const DBS_METHOD_CYCLE_JOIN: u32 = 1;
pub const DBS_METHOD_SHIFT_RULE: u32 = 2;
pub const DBS_METHOD_FKM: u32 = 3;

pub const DBS_VARIANT_PMX: u32 = 0;
pub const DBS_VARIANT_PMN: u32 = 1;
pub const DBS_VARIANT_RPMX: u32 = 2;
pub const DBS_VARIANT_RPMN: u32 = 3;

/// Used when a `max_words` argument is 0.
pub const DBS_DEFAULT_MAX_WORDS: usize = 1 << 22;

/// Opaque word list: a complete `(n, k)` sequence or a stream prefix.
pub struct DbsSequence(DBSequence);

/// Opaque cycle-joining trace with per-cycle records.
pub struct DbsTrace(JoinTrace);

/// One inserted cycle. Its first word sits at `open_position`, its last at
/// `close_position`, and its anchor (if any) at `open_position - 1`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DbsCycleInfo {
    pub index: usize,
    pub open_position: usize,
    pub close_position: usize,
    pub has_anchor: bool,
}

type FfiResult<T> = Result<T, DbsStatus>;

fn status_of(e: Error) -> DbsStatus {
    match e {
        Error::NotFound(_) => DbsStatus::NotFound,
        Error::TooLarge { .. } => DbsStatus::ResourceLimit,
        _ => DbsStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> FfiResult<()>) -> DbsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DbsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => DbsStatus::Internal,
    }
}

fn method_of(code: u32) -> FfiResult<Method> {
    Method::ALL
        .get(code as usize)
        .copied()
        .ok_or(DbsStatus::InvalidArgument)
}

fn variant_of(code: u32) -> FfiResult<SequenceVariant> {
    match code {
        DBS_VARIANT_PMX => Ok(SequenceVariant::Pmx),
        DBS_VARIANT_PMN => Ok(SequenceVariant::Pmn),
        DBS_VARIANT_RPMX => Ok(SequenceVariant::Rpmx),
        DBS_VARIANT_RPMN => Ok(SequenceVariant::Rpmn),
        _ => Err(DbsStatus::InvalidArgument),
    }
}

fn check_size(n: usize, k: Symbol, max_words: usize) -> FfiResult<()> {
    let max = if max_words == 0 {
        DBS_DEFAULT_MAX_WORDS
    } else {
        max_words
    };
    if n == 0 || k == 0 {
        return Err(DbsStatus::InvalidArgument);
    }
    match word_count(n, k) {
        Some(c) if c <= max => Ok(()),
        _ => Err(DbsStatus::ResourceLimit),
    }
}

unsafe fn deref<'a, T>(p: *const T) -> FfiResult<&'a T> {
    p.as_ref().ok_or(DbsStatus::NullPointer)
}

unsafe fn read_word(p: *const u32, n: usize) -> FfiResult<Word> {
    if n == 0 {
        return Err(DbsStatus::InvalidArgument);
    }
    if p.is_null() {
        return Err(DbsStatus::NullPointer);
    }
    Ok(Word::from(std::slice::from_raw_parts(p, n)))
}

unsafe fn write_out<T>(p: *mut T, value: T) -> FfiResult<()> {
    if p.is_null() {
        return Err(DbsStatus::NullPointer);
    }
    p.write(value);
    Ok(())
}

unsafe fn write_symbols(p: *mut u32, symbols: &[Symbol]) -> FfiResult<()> {
    if p.is_null() {
        return Err(DbsStatus::NullPointer);
    }
    ptr::copy_nonoverlapping(symbols.as_ptr(), p, symbols.len());
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn dbs_status_message(status: u32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer argument\0",
        2 => b"invalid argument\0",
        3 => b"end of sequence\0",
        4 => b"resource limit exceeded\0",
        5 => b"not found\0",
        6 => b"buffer too small\0",
        7 => b"internal error\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

/// Builds the complete `(n, k)` sequence of `variant` with `method`.
/// `max_words` bounds `k^n`; 0 selects [`DBS_DEFAULT_MAX_WORDS`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_generate(
    method: u32,
    variant: u32,
    n: usize,
    k: u32,
    max_words: usize,
    out: *mut *mut DbsSequence,
) -> DbsStatus {
    guarded(|| {
        let (method, variant) = (method_of(method)?, variant_of(variant)?);
        check_size(n, k, max_words)?;
        let seq = GeneratorSpec::complete(method, variant, n, k)
            .generate()
            .map_err(status_of)?;
        write_out(out, boxed(DbsSequence(seq)))
    })
}

/// The first `limit` words of the infinite `rpmx(n)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_stream_rpmx(
    n: usize,
    limit: usize,
    max_words: usize,
    out: *mut *mut DbsSequence,
) -> DbsStatus {
    guarded(|| {
        let max = if max_words == 0 {
            DBS_DEFAULT_MAX_WORDS
        } else {
            max_words
        };
        if n == 0 || limit == 0 {
            return Err(DbsStatus::InvalidArgument);
        }
        if limit > max {
            return Err(DbsStatus::ResourceLimit);
        }
        write_out(out, boxed(DbsSequence(stream_rpmx(n, limit))))
    })
}

/// # Safety
/// `seq` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn dbs_sequence_free(seq: *mut DbsSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// # Safety
/// `seq` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_sequence_len(seq: *const DbsSequence, out: *mut usize) -> DbsStatus {
    guarded(|| write_out(out, deref(seq)?.0.len()))
}

/// Word length `n`.
///
/// # Safety
/// `seq` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_sequence_n(seq: *const DbsSequence, out: *mut usize) -> DbsStatus {
    guarded(|| write_out(out, deref(seq)?.0.n()))
}

/// Copies word `index` into `out[0..n]`.
///
/// # Safety
/// `seq` must be a live handle; `out` must hold `n` symbols.
#[no_mangle]
pub unsafe extern "C" fn dbs_sequence_word(
    seq: *const DbsSequence,
    index: usize,
    out: *mut u32,
) -> DbsStatus {
    guarded(|| {
        let w = deref(seq)?
            .0
            .words()
            .get(index)
            .ok_or(DbsStatus::InvalidArgument)?;
        write_symbols(out, w)
    })
}

/// Copies the symbol stream (last symbol of each word) into `out`, which
/// holds `capacity` symbols; needs `capacity >= len`.
///
/// # Safety
/// `seq` must be a live handle; `out` must hold `capacity` symbols.
#[no_mangle]
pub unsafe extern "C" fn dbs_sequence_symbols(
    seq: *const DbsSequence,
    out: *mut u32,
    capacity: usize,
) -> DbsStatus {
    guarded(|| {
        let seq = deref(seq)?;
        if capacity < seq.0.len() {
            return Err(DbsStatus::BufferTooSmall);
        }
        write_symbols(out, &word_stream_to_symbols(&seq.0))
    })
}

unsafe fn step(
    word: *const u32,
    n: usize,
    out: *mut u32,
    rule: impl FnOnce(&Word) -> dbseq::Result<Option<Word>>,
) -> DbsStatus {
    guarded(|| {
        let w = read_word(word, n)?;
        match rule(&w).map_err(status_of)? {
            Some(next) => write_symbols(out, &next),
            None => Err(DbsStatus::EndOfSequence),
        }
    })
}

/// Successor in `rpmx(n, k)`; `k = 0` selects the unbounded alphabet.
///
/// # Safety
/// `word` and `out` must each hold `n` symbols.
#[no_mangle]
pub unsafe extern "C" fn dbs_succ(word: *const u32, n: usize, k: u32, out: *mut u32) -> DbsStatus {
    let alphabet = if k == 0 {
        Alphabet::Unbounded
    } else {
        Alphabet::Bounded(k)
    };
    step(word, n, out, |w| shiftrules::succ(w, alphabet))
}

/// Successor in `rpmn(n, k)`.
///
/// # Safety
/// `word` and `out` must each hold `n` symbols.
#[no_mangle]
pub unsafe extern "C" fn dbs_next(word: *const u32, n: usize, k: u32, out: *mut u32) -> DbsStatus {
    step(word, n, out, |w| shiftrules::next(w, k))
}

/// Successor in `pmn(n, k)`.
///
/// # Safety
/// `word` and `out` must each hold `n` symbols.
#[no_mangle]
pub unsafe extern "C" fn dbs_next_inv(
    word: *const u32,
    n: usize,
    k: u32,
    out: *mut u32,
) -> DbsStatus {
    step(word, n, out, |w| shiftrules::next_inv(w, k))
}

/// Successor in `pmx(n, k)`.
///
/// # Safety
/// `word` and `out` must each hold `n` symbols.
#[no_mangle]
pub unsafe extern "C" fn dbs_pmx_successor(
    word: *const u32,
    n: usize,
    k: u32,
    out: *mut u32,
) -> DbsStatus {
    step(word, n, out, |w| shiftrules::pmx_successor(w, k))
}

/// Whether `word` is the last word of its cycle.
///
/// # Safety
/// `word` must hold `n` symbols; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_is_last(word: *const u32, n: usize, out: *mut bool) -> DbsStatus {
    guarded(|| write_out(out, shiftrules::is_last(&read_word(word, n)?)))
}

/// The key-word of the cycle containing `word`.
///
/// # Safety
/// `word` and `out` must each hold `n` symbols.
#[no_mangle]
pub unsafe extern "C" fn dbs_keyword_of(word: *const u32, n: usize, out: *mut u32) -> DbsStatus {
    guarded(|| write_symbols(out, &cycles::keyword_of(&read_word(word, n)?)))
}

/// Runs cycle joining for `(n, k)` with per-cycle records.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_join_build(
    n: usize,
    k: u32,
    max_words: usize,
    out: *mut *mut DbsTrace,
) -> DbsStatus {
    guarded(|| {
        check_size(n, k, max_words)?;
        let trace = joining::build(n, k, true).map_err(status_of)?;
        write_out(out, boxed(DbsTrace(trace)))
    })
}

/// # Safety
/// `trace` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn dbs_trace_free(trace: *mut DbsTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// Number of words, `k^n`.
///
/// # Safety
/// `trace` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_trace_len(trace: *const DbsTrace, out: *mut usize) -> DbsStatus {
    guarded(|| write_out(out, deref(trace)?.0.len()))
}

/// Copies the word at `position` into `out[0..n]`.
///
/// # Safety
/// `trace` must be a live handle; `out` must hold `n` symbols.
#[no_mangle]
pub unsafe extern "C" fn dbs_trace_word(
    trace: *const DbsTrace,
    position: usize,
    out: *mut u32,
) -> DbsStatus {
    guarded(|| {
        let w = deref(trace)?
            .0
            .word_at(position)
            .ok_or(DbsStatus::InvalidArgument)?;
        write_symbols(out, &w)
    })
}

/// Position of `word` in the ordering.
///
/// # Safety
/// `trace` must be a live handle; `word` must hold `n` symbols; `out` must
/// be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_trace_position_of(
    trace: *const DbsTrace,
    word: *const u32,
    n: usize,
    out: *mut usize,
) -> DbsStatus {
    guarded(|| {
        let trace = deref(trace)?;
        let pos = trace
            .0
            .position_of(&read_word(word, n)?)
            .map_err(status_of)?;
        write_out(out, pos)
    })
}

/// # Safety
/// `trace` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_trace_cycle_count(
    trace: *const DbsTrace,
    out: *mut usize,
) -> DbsStatus {
    guarded(|| write_out(out, deref(trace)?.0.cycles().map_or(0, <[_]>::len)))
}

/// # Safety
/// `trace` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_trace_cycle(
    trace: *const DbsTrace,
    index: usize,
    out: *mut DbsCycleInfo,
) -> DbsStatus {
    guarded(|| {
        let records = deref(trace)?.0.cycles().unwrap_or_default();
        let c = records.get(index).ok_or(DbsStatus::InvalidArgument)?;
        write_out(
            out,
            DbsCycleInfo {
                index: c.index,
                open_position: c.open_position,
                close_position: c.close_position,
                has_anchor: c.anchor.is_some(),
            },
        )
    })
}

/// Copies the key-word of cycle `index` into `out[0..n]`.
///
/// # Safety
/// `trace` must be a live handle; `out` must hold `n` symbols.
#[no_mangle]
pub unsafe extern "C" fn dbs_trace_cycle_key(
    trace: *const DbsTrace,
    index: usize,
    out: *mut u32,
) -> DbsStatus {
    guarded(|| {
        let records = deref(trace)?.0.cycles().unwrap_or_default();
        let c = records.get(index).ok_or(DbsStatus::InvalidArgument)?;
        write_symbols(out, &c.key)
    })
}

/// The trace's ordering as a new sequence handle.
///
/// # Safety
/// `trace` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_trace_sequence(
    trace: *const DbsTrace,
    out: *mut *mut DbsSequence,
) -> DbsStatus {
    guarded(|| {
        let seq = deref(trace)?.0.sequence();
        write_out(out, boxed(DbsSequence(seq)))
    })
}

/// Sets `*pass` to whether `seq` is an `(n, k)` De Bruijn sequence, `n`
/// taken from the handle.
///
/// # Safety
/// `seq` must be a live handle; `pass` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_check_db(
    seq: *const DbsSequence,
    k: u32,
    pass: *mut bool,
) -> DbsStatus {
    guarded(|| {
        let seq = &deref(seq)?.0;
        write_out(pass, verify::check_db(seq, seq.n(), k).pass)
    })
}

/// Sets `*pass` to whether every structural property of the join holds.
///
/// # Safety
/// `trace` must be a live handle; `pass` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dbs_check_structure(trace: *const DbsTrace, pass: *mut bool) -> DbsStatus {
    guarded(|| {
        let report = verify::check_structure(&deref(trace)?.0).map_err(status_of)?;
        write_out(pass, report.pass)
    })
}
