use crate::words::{Symbol, Word};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A symbol lies outside the bounded alphabet `[k]`.
    #[error("symbol {symbol} is outside the alphabet [{k}]")]
    SymbolOutOfRange { symbol: Symbol, k: Symbol },

    #[error("operation is undefined on the empty word")]
    EmptyWord,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("word {0} is not present")]
    NotFound(Word),

    /// `k^n` does not fit in the address space.
    #[error("{k}^{n} words do not fit in memory")]
    TooLarge { n: usize, k: Symbol },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
