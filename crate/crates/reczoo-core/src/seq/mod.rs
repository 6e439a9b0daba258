//! The monoids of finite exponent sequences under pointwise addition.
//!
//! A positive natural corresponds, by prime factorization, to the finite
//! sequence of its prime exponents; a positive rational to a finite sequence
//! of integers. Pointwise addition of sequences is multiplication of
//! numbers. These monoids are free commutative over infinitely many
//! generators, and their recognizable subsets factor through finite-index
//! partitions of the generators ([`GeneratorPartition`]) followed by a
//! recognizable subset of the finite-arity quotient ([`RecSeqSet`]).
//!
//! The submodules also carry the constructive side of the theory at desk
//! scale: the witness constructions separating naively computable sets from
//! recognizable ones, the length-growing rewrite for nonempty recognizable
//! subsets of the integer-sequence monoid, and the family of recognizers
//! indexed by arbitrary subsets of the generators.

use core::fmt;

use crate::rect::RectError;

mod expseq;
mod factor;
mod partition;
mod recseq;
mod special;
mod witness;

pub use expseq::{sigma_int, sigma_nat, ExpSeq};
pub use factor::Primes;
pub use partition::GeneratorPartition;
pub use recseq::{pullback_quotient, RecSeqLimits, RecSeqSet, SignedRationalSet};
pub use special::{
    m3_recognizer, saturation_check, separation_witness, sx_build, IndexSet, M3Recognizer,
    SaturationReport, SxRecognizer,
};
pub use witness::{
    in_exists_set, in_forall_set, in_length_set, nontrivial_witness, prop6_counterexample,
    prop7_lengthen, prop8_counterexample, CounterexampleKind, Predicate, PropertySpec,
};

/// Whether entries are non-negative (the natural-sequence monoid) or
/// arbitrary integers (the integer-sequence monoid).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Domain {
    Nat,
    Int,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Nat => "nat",
            Domain::Int => "int",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqError {
    DomainMismatch,
    /// A natural-domain sequence with a negative entry at the position.
    NegativeEntry(u64),
    /// Factorization input must be positive.
    NonPositive,
    /// Recomposition exceeds the integer range.
    Overflow,
    /// Zero is outside the multiplicative carrier.
    ZeroInput,
    /// Generator index 0 names the unit and carries no class.
    InvalidGeneratorIndex(i64),
    /// Opposite generator indices must share a class in an integer-domain
    /// partition, since negating a generator negates its contribution.
    SignConflict(u64),
    /// A partition class that no generator inhabits.
    EmptyClass(usize),
    ClassOutOfRange(usize),
    /// The quotient does not fit the partition.
    QuotientMismatch,
    /// A witness search exhausted its scan bound; the property is trivial
    /// or the certificate too weak.
    CertificateExhausted(u64),
    /// No valid seed sequence inside the set for the edit construction.
    SeedNotInX,
    NotAMember,
    /// A class map that misses some coarse class.
    ClassMapNotOnto(usize),
    Rect(RectError),
    Morphism(crate::morphism::MorphismError),
}

impl fmt::Display for SeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqError::DomainMismatch => write!(f, "sequence domains do not match"),
            SeqError::NegativeEntry(i) => {
                write!(f, "negative entry at position {i} in a natural sequence")
            }
            SeqError::NonPositive => write!(f, "input must be positive"),
            SeqError::Overflow => write!(f, "recomposition overflows the integer range"),
            SeqError::ZeroInput => write!(f, "zero is not in the carrier"),
            SeqError::InvalidGeneratorIndex(n) => write!(f, "invalid generator index {n}"),
            SeqError::SignConflict(i) => {
                write!(f, "generator indices +{i} and -{i} map to different classes")
            }
            SeqError::EmptyClass(c) => write!(f, "class {c} has no generators"),
            SeqError::ClassOutOfRange(c) => write!(f, "class id {c} out of range"),
            SeqError::QuotientMismatch => write!(f, "quotient does not match the partition"),
            SeqError::CertificateExhausted(bound) => {
                write!(f, "witness search exhausted (bound {bound})")
            }
            SeqError::SeedNotInX => write!(f, "no valid seed sequence in the set"),
            SeqError::NotAMember => write!(f, "sequence is not a member of the set"),
            SeqError::ClassMapNotOnto(c) => write!(f, "class map misses coarse class {c}"),
            SeqError::Rect(e) => write!(f, "{e}"),
            SeqError::Morphism(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SeqError {}

impl From<RectError> for SeqError {
    fn from(e: RectError) -> Self {
        SeqError::Rect(e)
    }
}

impl From<crate::morphism::MorphismError> for SeqError {
    fn from(e: crate::morphism::MorphismError) -> Self {
        SeqError::Morphism(e)
    }
}
