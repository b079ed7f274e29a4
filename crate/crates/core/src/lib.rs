//! De Bruijn sequence construction and cross-verification.
//!
//! Four independent constructions of the reversed prefer-max sequence
//! `rpmx(n, k)` live here:
//!
//! * [`joining`]: splice rotation cycles into a growing ordering, one cycle per
//!   key-word, in co-lexicographic order of the key-words;
//! * [`shiftrules`]: a stateless successor function that needs only the
//!   current word (also over the unbounded alphabet, where it walks the
//!   infinite "onion" sequence);
//! * [`generators::greedy`]: the classical prefer-max / prefer-min greedy
//!   search;
//! * [`generators::fkm_sequence`]: lexicographic concatenation of Lyndon
//!   words.
//!
//! The [`verify`] module checks each output against the De Bruijn definition
//! and against each other, and exercises the nesting structure of the
//! cycle-joining trace.
//!
//! ```
//! use dbseq::{joining, shiftrules, Alphabet, Word};
//!
//! let trace = joining::build(3, 2, false).unwrap();
//! let words: Vec<String> = trace.sequence().words().iter().map(|w| w.to_string()).collect();
//! assert_eq!(words, ["000", "001", "010", "101", "011", "111", "110", "100"]);
//!
//! let w: Word = "102".parse().unwrap();
//! let next = shiftrules::succ(&w, Alphabet::Bounded(3)).unwrap();
//! assert_eq!(next, Some("020".parse().unwrap()));
//! ```

pub mod cli;
pub mod cycles;
mod error;
pub mod generators;
pub mod joining;
mod sequence;
pub mod shiftrules;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use sequence::DBSequence;
pub use words::{Alphabet, SequenceVariant, Symbol, Word};
