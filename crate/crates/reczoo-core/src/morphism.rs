//! Finitely described morphisms into finite monoids.
//!
//! A [`MorphismSpec`] fixes a generated source monoid, the images of its
//! generators in a finite target, and an accepting subset of the target; the
//! recognized set is the preimage of the accepting subset.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::monoid::{ElementIndex, FiniteMonoid};

/// The source monoid, described by its generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismSource {
    /// Free monoid over an indexed alphabet `a_0 .. a_{n-1}`.
    FreeMonoid { alphabet_size: usize },
    /// The naturals under addition, generated by 1.
    Nat,
    /// The integers under addition, generated by 1 (so the image of 1 must
    /// be invertible in the target).
    Int,
}

impl MorphismSource {
    fn generator_count(&self) -> usize {
        match self {
            MorphismSource::FreeMonoid { alphabet_size } => *alphabet_size,
            MorphismSource::Nat | MorphismSource::Int => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismError {
    /// Image count does not match the source's generator count.
    GeneratorCountMismatch { expected: usize, got: usize },
    /// An image or accepting index is out of range for the target.
    IndexOutOfRange(usize),
    /// Source is the integers but the image of 1 has no inverse.
    GeneratorNotInvertible(usize),
    /// The operation requires a different source monoid.
    SourceMismatch,
}

impl fmt::Display for MorphismError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismError::GeneratorCountMismatch { expected, got } => {
                write!(f, "expected {expected} generator images, got {got}")
            }
            MorphismError::IndexOutOfRange(i) => write!(f, "element index {i} out of range"),
            MorphismError::GeneratorNotInvertible(g) => {
                write!(f, "generator image {g} is not invertible")
            }
            MorphismError::SourceMismatch => write!(f, "operation not defined for this source"),
        }
    }
}

impl core::error::Error for MorphismError {}

/// A morphism from a generated source into a finite monoid, together with an
/// accepting subset of the target.
#[derive(Debug, Clone)]
pub struct MorphismSpec {
    source: MorphismSource,
    target: FiniteMonoid,
    images: Vec<ElementIndex>,
    accepting: BTreeSet<ElementIndex>,
}

impl MorphismSpec {
    pub fn new(
        source: MorphismSource,
        target: FiniteMonoid,
        images: Vec<ElementIndex>,
        accepting: BTreeSet<ElementIndex>,
    ) -> Result<Self, MorphismError> {
        let expected = source.generator_count();
        if images.len() != expected {
            return Err(MorphismError::GeneratorCountMismatch {
                expected,
                got: images.len(),
            });
        }
        for &g in &images {
            if g.index() >= target.size() {
                return Err(MorphismError::IndexOutOfRange(g.index()));
            }
        }
        for &a in &accepting {
            if a.index() >= target.size() {
                return Err(MorphismError::IndexOutOfRange(a.index()));
            }
        }
        if source == MorphismSource::Int {
            let g = images[0];
            if target.invert(g).is_err() {
                return Err(MorphismError::GeneratorNotInvertible(g.index()));
            }
        }
        Ok(MorphismSpec {
            source,
            target,
            images,
            accepting,
        })
    }

    pub fn source(&self) -> &MorphismSource {
        &self.source
    }

    pub fn target(&self) -> &FiniteMonoid {
        &self.target
    }

    pub fn images(&self) -> &[ElementIndex] {
        &self.images
    }

    pub fn accepting(&self) -> &BTreeSet<ElementIndex> {
        &self.accepting
    }

    pub fn is_accepting(&self, e: ElementIndex) -> bool {
        self.accepting.contains(&e)
    }

    /// Image of a natural number under a `Nat`- or `Int`-sourced morphism.
    pub fn eval_nat(&self, n: u64) -> Result<ElementIndex, MorphismError> {
        match self.source {
            MorphismSource::Nat | MorphismSource::Int => Ok(self.target.pow(self.images[0], n)),
            MorphismSource::FreeMonoid { .. } => Err(MorphismError::SourceMismatch),
        }
    }

    /// Image of an integer under an `Int`-sourced morphism; negative numbers
    /// go through the inverse of the generator image.
    pub fn eval_int(&self, n: i64) -> Result<ElementIndex, MorphismError> {
        if self.source != MorphismSource::Int {
            return Err(MorphismError::SourceMismatch);
        }
        let g = self.images[0];
        if n >= 0 {
            Ok(self.target.pow(g, n as u64))
        } else {
            let inv = self
                .target
                .invert(g)
                .map_err(|_| MorphismError::GeneratorNotInvertible(g.index()))?;
            Ok(self.target.pow(inv, n.unsigned_abs()))
        }
    }

    /// Image of a word over the alphabet of a free-monoid source.
    pub fn eval_word(&self, word: &[usize]) -> Result<ElementIndex, MorphismError> {
        let MorphismSource::FreeMonoid { alphabet_size } = self.source else {
            return Err(MorphismError::SourceMismatch);
        };
        let mut acc = self.target.unit();
        for &letter in word {
            if letter >= alphabet_size {
                return Err(MorphismError::IndexOutOfRange(letter));
            }
            acc = self.target.mul(acc, self.images[letter]);
        }
        Ok(acc)
    }
}
