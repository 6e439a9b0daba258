//! Exact calculus of recognizable subsets of numeric monoids.
//!
//! A subset of a monoid is *recognizable* when it is the preimage of some
//! subset under a morphism onto a finite monoid. This crate provides the
//! finite side of that story as concrete, exact data structures:
//!
//! - [`monoid`]: explicit Cayley-table monoids with structural queries
//!   (idempotents, zero, unit group, omega powers) and a small catalog of
//!   test monoids,
//! - [`additive`]: ultimately periodic subsets of the naturals and periodic
//!   subsets of the integers, in canonical form, with Boolean algebra and
//!   conversions to and from recognizing morphisms,
//! - [`registry`]: the fixed finite lattices of recognizable subsets of the
//!   arbitrarily divisible number monoids, handled purely symbolically,
//! - [`rect`]: finite unions of component-wise rectangles, the normal form
//!   for recognizable subsets of finite direct products,
//! - [`seq`]: the monoids of finite exponent sequences under pointwise
//!   addition (the images of positive naturals and rationals under prime
//!   factorization), finite-index generator partitions, and the witness
//!   constructions that separate them from their projections.
//!
//! Everything is exact: no floating point anywhere. Values are immutable
//! after construction and all operations are pure.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod additive;
pub mod monoid;
pub mod morphism;
pub mod rect;
pub mod registry;
pub mod seq;

pub use additive::{PeriodicSet, UltimatelyPeriodicSet};
pub use monoid::{ElementIndex, FiniteMonoid, MonoidError};
pub use morphism::{MorphismError, MorphismSource, MorphismSpec};
pub use rect::{ComponentRep, CoordKind, CoordValue, RectError, RectLimits, RectUnion, SignSubset};
pub use registry::{Atom, CaseTag, NumberMonoidId, RegistryError, SymbolicSet};
pub use seq::{Domain, ExpSeq, GeneratorPartition, PropertySpec, RecSeqSet, SeqError};

/// Exact rational numbers used throughout the crate.
pub type Rational = num_rational::Ratio<i64>;
