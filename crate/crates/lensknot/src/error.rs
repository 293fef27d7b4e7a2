//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("invalid lens space parameters p={p}, q={q}: {reason}")]
    InvalidLens { p: u32, q: u32, reason: String },

    #[error("degenerate separation s ≡ 0 (mod {p}): both basepoints share a box")]
    DegenerateSeparation { p: u32 },

    #[error("K({p},{q},{h}) is not primitive: gcd({h},{p}) = {g}")]
    NotPrimitive { p: u32, q: u32, h: u32, g: u32 },

    #[error("cover order k = {k} > 1: full diagram labeling is only defined for k = 1")]
    CoverNontrivial { k: u32 },

    #[error("outside the verified family (q = p-1, h ∈ {{1,2}}): {what}")]
    OutOfVerifiedScope { what: String },

    #[error("p = {p} must be odd here (gcd(p-2, p) = 2 otherwise)")]
    EvenOrder { p: u32 },

    #[error("enumeration budget exceeded: k = {k} needs 2^{} subsets (limit k ≤ {limit})", 2 * k + 1)]
    OracleBudget { k: u32, limit: u32 },
}

pub type Result<T> = std::result::Result<T, KnotError>;
