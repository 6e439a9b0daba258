//! Prime factorization as exponent sequences, exactly.
//!
//! Position `i` of a sequence holds the exponent of the `i`-th prime
//! (position 1 is the prime 2). `factorize`/`recompose` carry the
//! isomorphism between positive naturals and natural sequences;
//! `rat_factorize`/`rat_recompose` the one between positive rationals and
//! integer sequences.

use alloc::vec::Vec;

use num_traits::Signed;

use super::{Domain, ExpSeq, SeqError};
use crate::Rational;

/// A growing prime table. Factorization needs the index of every prime it
/// meets, so the table is stateful and extends itself on demand.
#[derive(Debug, Clone, Default)]
pub struct Primes {
    list: Vec<u64>,
}

impl Primes {
    pub fn new() -> Self {
        Primes { list: Vec::new() }
    }

    fn grow(&mut self) {
        let mut candidate = self.list.last().map_or(2, |&p| p + 1);
        loop {
            if self.list.iter().take_while(|&&p| p * p <= candidate).all(|&p| candidate % p != 0) {
                self.list.push(candidate);
                return;
            }
            candidate += 1;
        }
    }

    /// The `i`-th prime, 1-based: `nth(1) = 2`.
    pub fn nth(&mut self, i: u64) -> u64 {
        while (self.list.len() as u64) < i {
            self.grow();
        }
        self.list[i as usize - 1]
    }

    /// 1-based index of a prime; `None` for non-primes.
    pub fn index_of(&mut self, p: u64) -> Option<u64> {
        while self.list.last().copied().unwrap_or(0) < p {
            self.grow();
        }
        self.list
            .binary_search(&p)
            .ok()
            .map(|i| i as u64 + 1)
    }

    /// Prime exponent sequence of a positive natural.
    pub fn factorize(&mut self, n: u64) -> Result<ExpSeq, SeqError> {
        if n == 0 {
            return Err(SeqError::NonPositive);
        }
        let mut rest = n;
        let mut factors: Vec<(u64, i64)> = Vec::new();
        let mut i = 1;
        loop {
            if rest == 1 {
                break;
            }
            let p = self.nth(i);
            if p * p > rest {
                // The remainder is prime.
                factors.push((rest, 1));
                break;
            }
            let mut exp = 0i64;
            while rest % p == 0 {
                rest /= p;
                exp += 1;
            }
            if exp > 0 {
                factors.push((p, exp));
            }
            i += 1;
        }
        let mut entries = Vec::new();
        for (p, exp) in factors {
            let idx = self.index_of(p).expect("factors are prime") as usize;
            if entries.len() < idx {
                entries.resize(idx, 0);
            }
            entries[idx - 1] += exp;
        }
        ExpSeq::new(Domain::Nat, entries)
    }

    /// Inverse of [`Primes::factorize`].
    pub fn recompose(&mut self, seq: &ExpSeq) -> Result<u64, SeqError> {
        if seq.domain() != Domain::Nat {
            return Err(SeqError::DomainMismatch);
        }
        let mut acc: u128 = 1;
        for position in 1..=seq.len() {
            let p = self.nth(position) as u128;
            for _ in 0..seq.entry(position) {
                acc = acc.checked_mul(p).ok_or(SeqError::Overflow)?;
                if acc > u64::MAX as u128 {
                    return Err(SeqError::Overflow);
                }
            }
        }
        Ok(acc as u64)
    }

    /// Signed prime exponent sequence of a positive rational.
    pub fn rat_factorize(&mut self, q: Rational) -> Result<ExpSeq, SeqError> {
        if !q.is_positive() {
            return Err(SeqError::NonPositive);
        }
        let num = self.factorize(*q.numer() as u64)?;
        let den = self.factorize(*q.denom() as u64)?;
        let n = num.len().max(den.len());
        let mut entries = Vec::with_capacity(n as usize);
        for position in 1..=n {
            entries.push(num.entry(position) - den.entry(position));
        }
        ExpSeq::new(Domain::Int, entries)
    }

    /// Inverse of [`Primes::rat_factorize`].
    pub fn rat_recompose(&mut self, seq: &ExpSeq) -> Result<Rational, SeqError> {
        if seq.domain() != Domain::Int {
            return Err(SeqError::DomainMismatch);
        }
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for position in 1..=seq.len() {
            let p = self.nth(position) as i128;
            let e = seq.entry(position);
            let side = if e >= 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                *side = side.checked_mul(p).ok_or(SeqError::Overflow)?;
                if *side > i64::MAX as i128 {
                    return Err(SeqError::Overflow);
                }
            }
        }
        Ok(Rational::new(num as i64, den as i64))
    }

    /// The primes dividing the numerator or denominator, as positions.
    pub fn support(seq: &ExpSeq) -> Vec<u64> {
        (1..=seq.len()).filter(|&i| seq.entry(i) != 0).collect()
    }
}
