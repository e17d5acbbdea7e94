use alloc::string::String;

/// Every failure the engine reports.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Operands live in different alphabets or truncation degrees.
    #[error("incompatible context: {0}")]
    IncompatibleContext(String),
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Sizes of permutations, tuples or maps do not match the family.
    #[error("arity mismatch: {0}")]
    Arity(String),
    /// A composition slot outside `1..=n`.
    #[error("slot {slot} out of range 1..={arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    /// The monomial count would exceed the configured cap.
    #[error("monomial count {count} exceeds cap {cap}")]
    MonomialCap { count: u128, cap: u128 },
    /// A linear system of the solver has no solution.
    #[error("inconsistent linear system at degree {0}")]
    Inconsistent(u32),
    /// Text that does not follow one of the documented grammars.
    #[error("parse error: {0}")]
    Parse(String),
}
