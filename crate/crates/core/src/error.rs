//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is indistinguishable from zero at the stored precision")]
    IndistinguishableFromZero,
    #[error("cannot certify convergence: {0}")]
    CannotCertifyConvergence(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionError { expected: usize, got: usize },
    #[error("operation requires a ring with a multiplicative identity")]
    RequiresIdentity,
    #[error("operation requires a finite ring")]
    RequiresFiniteRing,
    #[error("ring homomorphism domain error: {0}")]
    HomDomainError(String),
    #[error("point does not belong to this group: {0}")]
    GroupMismatch(String),
    #[error("closed-form conjugation is unsupported for cocycle-law groups")]
    UnsupportedForCocycleLaw,
    #[error("operation requires a finite group model")]
    RequiresFiniteModel,
    #[error("pushforward compatibility fails at {0}")]
    NotCompatible(String),
    #[error("table is not a 2-cocycle; violated at {0}")]
    NotACocycle(String),
    #[error("enumeration too large: {0}")]
    TooLargeToEnumerate(String),
    #[error("cells overlap without nesting: {0}")]
    OverlapError(String),
    #[error("exponent {got} is not a refinement of {current}")]
    NotARefinement { current: i64, got: i64 },
    #[error("refinement too coarse: {0}")]
    RefinementTooCoarse(String),
    #[error("coordinate lies outside the p-adic integers: {0}")]
    OutsideIntegralDomain(String),
    #[error("gauge requires a form with p-adic integer entries")]
    GaugeRequiresIntegralForm,
    #[error("stored prefixes are too short to decide the distance")]
    NeedMorePrefix,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("degree {0} is not invertible in the coefficient ring")]
    NonInvertibleDegree(u32),
    #[error("series is not convergent on the requested domain: {0}")]
    NotConvergentOnDomain(String),
    #[error("evaluation point lies outside the certified domain: {0}")]
    OutsideDomain(String),
    #[error("composition requires inner series with zero constant term")]
    NonZeroConstantTerm,
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}
