use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("ring parameter mismatch: left is (N={left_n}, q={left_q}), right is (N={right_n}, q={right_q})")]
    ParamMismatch {
        left_n: usize,
        left_q: u32,
        right_n: usize,
        right_q: u32,
    },

    #[error("polynomial is not invertible modulo 2 and X^N - 1")]
    NotInvertible,

    #[error("hensel lift precondition failed: supplied inverse is wrong modulo 2")]
    HenselPrecondition,

    #[error("no invertible f found after {0} draws")]
    KeygenExhausted(u32),

    #[error("residue {0} is outside [0, 16)")]
    ResidueOutOfRange(u32),

    #[error("assignment has length {got}, expected {expected}")]
    AssignmentLength { expected: usize, got: usize },

    #[error("q = {0} is below 16; four Witt bits are needed")]
    ModulusTooSmall(u32),

    #[error("bit count must be 2, 3 or 4, got {0}")]
    InvalidBitCount(u8),

    #[error("recovered g is inconsistent with h modulo 16; F is not a key solution")]
    InconsistentSolution,

    #[error("exhaustive search over 2^{n} assignments exceeds the budget of 2^{max}; use the groebner backend or export")]
    SearchBudget { n: usize, max: usize },

    #[error("{n} variables exceeds the {max}-variable limit of this backend")]
    TooManyVariables { n: usize, max: usize },

    #[error("groebner basis computation stopped after {pairs} pairs (limit reached)")]
    GroebnerBudget {
        pairs: usize,
        partial: Box<crate::solve::GroebnerBasis>,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
