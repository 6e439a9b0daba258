//! Finite exponent sequences under pointwise addition.

use alloc::vec;
use alloc::vec::Vec;

use super::{Domain, SeqError};

/// A finite sequence of exponents, 1-indexed, with no trailing zeros.
///
/// The length is the largest position with a nonzero entry; every later
/// position is implicitly zero. The empty sequence is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpSeq {
    domain: Domain,
    entries: Vec<i64>,
}

fn trim(entries: &mut Vec<i64>) {
    while entries.last() == Some(&0) {
        entries.pop();
    }
}

impl ExpSeq {
    pub fn new(domain: Domain, mut entries: Vec<i64>) -> Result<Self, SeqError> {
        if domain == Domain::Nat {
            if let Some(pos) = entries.iter().position(|&e| e < 0) {
                return Err(SeqError::NegativeEntry(pos as u64 + 1));
            }
        }
        trim(&mut entries);
        Ok(ExpSeq { domain, entries })
    }

    pub fn unit(domain: Domain) -> Self {
        ExpSeq {
            domain,
            entries: Vec::new(),
        }
    }

    /// The sequence with a single entry `value` at `position >= 1`.
    pub fn with_entry(domain: Domain, position: u64, value: i64) -> Result<Self, SeqError> {
        if position == 0 {
            return Err(SeqError::InvalidGeneratorIndex(0));
        }
        let mut entries = vec![0; position as usize];
        entries[position as usize - 1] = value;
        Self::new(domain, entries)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// The length `|sigma|`: every position beyond it holds zero.
    pub fn len(&self) -> u64 {
        self.entries.len() as u64
    }

    pub fn is_unit(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at a 1-based position; zero beyond the length.
    pub fn entry(&self, position: u64) -> i64 {
        if position == 0 || position > self.len() {
            0
        } else {
            self.entries[position as usize - 1]
        }
    }

    /// Pointwise sum, re-trimmed (integer entries can cancel).
    pub fn add(&self, other: &ExpSeq) -> Result<ExpSeq, SeqError> {
        if self.domain != other.domain {
            return Err(SeqError::DomainMismatch);
        }
        let n = self.entries.len().max(other.entries.len());
        let mut entries = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.entries.get(i).copied().unwrap_or(0);
            let b = other.entries.get(i).copied().unwrap_or(0);
            entries.push(a + b);
        }
        trim(&mut entries);
        Ok(ExpSeq {
            domain: self.domain,
            entries,
        })
    }

    /// The sequence with entry `value` placed at `position`, other entries
    /// unchanged.
    pub fn set_entry(&self, position: u64, value: i64) -> Result<ExpSeq, SeqError> {
        if position == 0 {
            return Err(SeqError::InvalidGeneratorIndex(0));
        }
        let mut entries = self.entries.clone();
        if entries.len() < position as usize {
            entries.resize(position as usize, 0);
        }
        entries[position as usize - 1] = value;
        Self::new(self.domain, entries)
    }
}

/// The natural-domain generator at index `n >= 1`; index 0 is the unit.
pub fn sigma_nat(n: u64) -> ExpSeq {
    if n == 0 {
        ExpSeq::unit(Domain::Nat)
    } else {
        ExpSeq::with_entry(Domain::Nat, n, 1).expect("positive position")
    }
}

/// The integer-domain generator at index `n`: a `+1` or `-1` entry at
/// position `|n|` depending on the sign of `n`; index 0 is the unit.
pub fn sigma_int(n: i64) -> ExpSeq {
    if n == 0 {
        ExpSeq::unit(Domain::Int)
    } else {
        ExpSeq::with_entry(Domain::Int, n.unsigned_abs(), n.signum()).expect("positive position")
    }
}
