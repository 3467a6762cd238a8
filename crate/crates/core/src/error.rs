use thiserror::Error;

use crate::syntax::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable index {index} out of range for arity {arity}")]
    Arity { index: usize, arity: usize },
    #[error("expected {expected} entries, found {found}")]
    Length { expected: usize, found: usize },
    #[error("term has a nonzero linear part")]
    NotOscillatory,
    #[error("gcd of an empty list")]
    EmptyGcd,
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("only existential sentences can be decided")]
    NonExistential,
    #[error("equality has {k} sine summands, enumeration is capped at {cap}")]
    CongruenceCap { k: usize, cap: usize },
}
