//! Finite-index partitions of the sequence generators and the summing
//! projection they induce.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{Domain, ExpSeq, SeqError};

/// A partition of the generator indices into `k` classes: finitely many
/// indices are mapped explicitly, everything else falls into the default
/// class (which is therefore infinite).
///
/// Natural-domain indices are positive; integer-domain indices are nonzero
/// and may be negative, but `+i` and `-i` must share a class: the generators
/// at `+i` and `-i` are inverse to each other, so any class-wise summing
/// morphism treats them together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorPartition {
    domain: Domain,
    k: usize,
    default_class: usize,
    explicit: BTreeMap<i64, usize>,
}

impl GeneratorPartition {
    pub fn new(
        domain: Domain,
        k: usize,
        default_class: usize,
        explicit: BTreeMap<i64, usize>,
    ) -> Result<Self, SeqError> {
        if k == 0 || default_class >= k {
            return Err(SeqError::ClassOutOfRange(default_class.max(k)));
        }
        for (&idx, &class) in &explicit {
            if class >= k {
                return Err(SeqError::ClassOutOfRange(class));
            }
            match domain {
                Domain::Nat if idx < 1 => return Err(SeqError::InvalidGeneratorIndex(idx)),
                Domain::Int if idx == 0 => return Err(SeqError::InvalidGeneratorIndex(0)),
                _ => {}
            }
        }
        if domain == Domain::Int {
            for (&idx, &class) in &explicit {
                if let Some(&other) = explicit.get(&(-idx)) {
                    if other != class {
                        return Err(SeqError::SignConflict(idx.unsigned_abs()));
                    }
                }
            }
        }
        // Entries that just restate the default carry no information.
        let explicit: BTreeMap<i64, usize> = explicit
            .into_iter()
            .filter(|&(_, class)| class != default_class)
            .collect();
        let mut hit: BTreeSet<usize> = explicit.values().copied().collect();
        hit.insert(default_class);
        for class in 0..k {
            if !hit.contains(&class) {
                return Err(SeqError::EmptyClass(class));
            }
        }
        Ok(GeneratorPartition {
            domain,
            k,
            default_class,
            explicit,
        })
    }

    /// The one-class partition.
    pub fn one_class(domain: Domain) -> Self {
        GeneratorPartition {
            domain,
            k: 1,
            default_class: 0,
            explicit: BTreeMap::new(),
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn class_count(&self) -> usize {
        self.k
    }

    pub fn default_class(&self) -> usize {
        self.default_class
    }

    pub fn explicit(&self) -> &BTreeMap<i64, usize> {
        &self.explicit
    }

    /// Largest position an explicit entry mentions; 0 when none do.
    pub fn support_max(&self) -> u64 {
        self.explicit
            .keys()
            .map(|&i| i.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Class of the generator at a 1-based position. In the integer domain
    /// the generators at `+i` and `-i` share a class by construction.
    pub fn position_class(&self, position: u64) -> usize {
        let p = position as i64;
        self.explicit
            .get(&p)
            .or_else(|| self.explicit.get(&(-p)))
            .copied()
            .unwrap_or(self.default_class)
    }

    /// The summing projection: coordinate `j` is the sum of the entries at
    /// the positions in class `j`. A monoid morphism onto tuples.
    pub fn project(&self, seq: &ExpSeq) -> Result<Vec<i64>, SeqError> {
        if seq.domain() != self.domain {
            return Err(SeqError::DomainMismatch);
        }
        let mut coords = vec![0i64; self.k];
        for position in 1..=seq.len() {
            coords[self.position_class(position)] += seq.entry(position);
        }
        Ok(coords)
    }

    /// Two positions beyond both `floor` and the explicit support; they are
    /// guaranteed to share the (infinite) default class.
    pub fn fresh_default_positions(&self, floor: u64) -> (u64, u64) {
        let base = floor.max(self.support_max());
        (base + 1, base + 2)
    }

    /// Common refinement: classes are the nonempty intersections. Returns
    /// the refined partition together with the maps sending each refined
    /// class to its class in `self` and in `other`.
    pub fn refine(
        &self,
        other: &GeneratorPartition,
    ) -> Result<(GeneratorPartition, Vec<usize>, Vec<usize>), SeqError> {
        if self.domain != other.domain {
            return Err(SeqError::DomainMismatch);
        }
        let default_pair = (self.default_class, other.default_class);
        let support: BTreeSet<u64> = self
            .explicit
            .keys()
            .chain(other.explicit.keys())
            .map(|&i| i.unsigned_abs())
            .collect();
        let mut pairs: BTreeSet<(usize, usize)> = support
            .iter()
            .map(|&pos| (self.position_class(pos), other.position_class(pos)))
            .collect();
        pairs.insert(default_pair);
        let ids: BTreeMap<(usize, usize), usize> = pairs
            .iter()
            .enumerate()
            .map(|(id, &pair)| (pair, id))
            .collect();
        let explicit = support
            .iter()
            .map(|&pos| {
                let pair = (self.position_class(pos), other.position_class(pos));
                (pos as i64, ids[&pair])
            })
            .collect();
        let refined = GeneratorPartition::new(
            self.domain,
            ids.len(),
            ids[&default_pair],
            explicit,
        )?;
        let mut h1 = vec![0; ids.len()];
        let mut h2 = vec![0; ids.len()];
        for (&(c1, c2), &id) in &ids {
            h1[id] = c1;
            h2[id] = c2;
        }
        Ok((refined, h1, h2))
    }
}
