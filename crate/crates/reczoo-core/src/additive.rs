//! Recognizable subsets of the additive naturals and integers.
//!
//! Subsets of the naturals recognized by finite monoids are exactly the
//! ultimately periodic sets; over the integers they are the periodic sets.
//! Both are kept in a canonical form (minimal period, then minimal
//! threshold), so structural equality coincides with extensional equality.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::monoid::FiniteMonoid;
use crate::morphism::{MorphismError, MorphismSource, MorphismSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdditiveError {
    ZeroPeriod,
    PrefixOutOfRange(u64),
    ResidueOutOfRange(u64),
    /// Parts describe the right set but are not in canonical form.
    NonCanonical,
}

impl fmt::Display for AdditiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdditiveError::ZeroPeriod => write!(f, "period must be positive"),
            AdditiveError::PrefixOutOfRange(n) => {
                write!(f, "prefix element {n} exceeds the threshold")
            }
            AdditiveError::ResidueOutOfRange(r) => {
                write!(f, "residue {r} not below the period")
            }
            AdditiveError::NonCanonical => write!(f, "set description is not canonical"),
        }
    }
}

impl core::error::Error for AdditiveError {}

/// An ultimately periodic subset of the naturals.
///
/// Membership of `n <= threshold` is read from `prefix`; membership of
/// `n > threshold` is `n mod period \in residues`. Canonical form: the period
/// is the minimal eventual period of the set, and the threshold is minimal
/// for that period.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UltimatelyPeriodicSet {
    threshold: u64,
    period: u64,
    prefix: BTreeSet<u64>,
    residues: BTreeSet<u64>,
}

fn check_parts(
    threshold: u64,
    period: u64,
    prefix: &BTreeSet<u64>,
    residues: &BTreeSet<u64>,
) -> Result<(), AdditiveError> {
    if period == 0 {
        return Err(AdditiveError::ZeroPeriod);
    }
    if let Some(&n) = prefix.iter().next_back() {
        if n > threshold {
            return Err(AdditiveError::PrefixOutOfRange(n));
        }
    }
    if let Some(&r) = residues.iter().next_back() {
        if r >= period {
            return Err(AdditiveError::ResidueOutOfRange(r));
        }
    }
    Ok(())
}

/// Minimal `d | period` such that the residue pattern is `d`-periodic on
/// `Z/period`, together with the restricted residue set.
fn minimize_period(period: u64, residues: &BTreeSet<u64>) -> (u64, BTreeSet<u64>) {
    for d in 1..=period {
        if period % d != 0 {
            continue;
        }
        let ok = (0..period).all(|r| residues.contains(&r) == residues.contains(&((r + d) % period)));
        if ok {
            let restricted = (0..d).filter(|r| residues.contains(r)).collect();
            return (d, restricted);
        }
    }
    unreachable!("the period itself always qualifies")
}

impl UltimatelyPeriodicSet {
    /// Builds the set described by the parts and canonicalizes it.
    pub fn new(
        threshold: u64,
        period: u64,
        prefix: BTreeSet<u64>,
        residues: BTreeSet<u64>,
    ) -> Result<Self, AdditiveError> {
        check_parts(threshold, period, &prefix, &residues)?;
        let (period, residues) = minimize_period(period, &residues);
        let mut threshold = threshold;
        let mut prefix = prefix;
        while threshold > 0 {
            let in_prefix = prefix.contains(&threshold);
            if in_prefix != residues.contains(&(threshold % period)) {
                break;
            }
            prefix.remove(&threshold);
            threshold -= 1;
        }
        Ok(UltimatelyPeriodicSet {
            threshold,
            period,
            prefix,
            residues,
        })
    }

    /// Accepts the parts only if they are already canonical.
    pub fn from_canonical_parts(
        threshold: u64,
        period: u64,
        prefix: BTreeSet<u64>,
        residues: BTreeSet<u64>,
    ) -> Result<Self, AdditiveError> {
        let canonical = Self::new(threshold, period, prefix.clone(), residues.clone())?;
        if canonical.threshold != threshold
            || canonical.period != period
            || canonical.prefix != prefix
            || canonical.residues != residues
        {
            return Err(AdditiveError::NonCanonical);
        }
        Ok(canonical)
    }

    pub fn empty() -> Self {
        UltimatelyPeriodicSet {
            threshold: 0,
            period: 1,
            prefix: BTreeSet::new(),
            residues: BTreeSet::new(),
        }
    }

    pub fn full() -> Self {
        UltimatelyPeriodicSet {
            threshold: 0,
            period: 1,
            prefix: BTreeSet::from([0]),
            residues: BTreeSet::from([0]),
        }
    }

    /// The singleton `{n}`.
    pub fn singleton(n: u64) -> Self {
        Self::new(n, 1, BTreeSet::from([n]), BTreeSet::new()).expect("valid parts")
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn prefix(&self) -> &BTreeSet<u64> {
        &self.prefix
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn member(&self, n: u64) -> bool {
        if n <= self.threshold {
            self.prefix.contains(&n)
        } else {
            self.residues.contains(&(n % self.period))
        }
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty() && self.residues.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full()
    }

    fn pointwise(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        let period = self.period.lcm(&other.period);
        let threshold = self.threshold.max(other.threshold);
        let prefix = (0..=threshold)
            .filter(|&n| f(self.member(n), other.member(n)))
            .collect();
        let residues = (0..period)
            .filter(|&r| {
                let n = threshold + 1 + (r + period - (threshold + 1) % period) % period;
                f(self.member(n), other.member(n))
            })
            .collect();
        Self::new(threshold, period, prefix, residues).expect("pointwise parts are valid")
    }

    pub fn union(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a && b)
    }

    pub fn complement(&self) -> Self {
        let prefix = (0..=self.threshold).filter(|n| !self.prefix.contains(n)).collect();
        let residues = (0..self.period).filter(|r| !self.residues.contains(r)).collect();
        Self::new(self.threshold, self.period, prefix, residues).expect("complement parts are valid")
    }

    /// The preimage of the accepting set under a morphism from the naturals.
    ///
    /// The power sequence of the generator image enters a lasso after at most
    /// `|target|` steps, which bounds the threshold and period of the result.
    pub fn from_morphism(spec: &MorphismSpec) -> Result<Self, MorphismError> {
        if spec.source() != &MorphismSource::Nat {
            return Err(MorphismError::SourceMismatch);
        }
        let g = spec.images()[0];
        let (tail, cycle) = spec.target().power_lasso(g);
        let hit = |n: u64| spec.is_accepting(spec.target().pow(g, n));
        let prefix = (0..=tail).filter(|&n| hit(n)).collect();
        let residues = (0..cycle)
            .filter(|&r| {
                let n = tail + 1 + (r + cycle - (tail + 1) % cycle) % cycle;
                hit(n)
            })
            .collect();
        Ok(Self::new(tail, cycle, prefix, residues).expect("lasso parts are valid"))
    }

    /// A recognizing morphism whose preimage is exactly this set: the
    /// transition monoid of the minimal unary lasso automaton for the set.
    ///
    /// The target has `t + p` elements where `t <= threshold + 1` is the
    /// minimal index from which the set is purely periodic.
    pub fn to_syntactic_morphism(&self) -> MorphismSpec {
        let p = self.period;
        let t = if self.threshold == 0 {
            // One free choice at 0: drop the tail state if 0 already follows
            // the residue rule.
            u64::from(self.prefix.contains(&0) != self.residues.contains(&0))
        } else {
            self.threshold + 1
        };
        let n = (t + p) as usize;
        let reduce = |e: u64| -> usize {
            if e < t + p {
                e as usize
            } else {
                (t + (e - t) % p) as usize
            }
        };
        let rows: Vec<Vec<usize>> = (0..n as u64)
            .map(|a| (0..n as u64).map(|b| reduce(a + b)).collect())
            .collect();
        let target = FiniteMonoid::new(0, rows).expect("successor powers form a monoid");
        let image = target.element(reduce(1)).expect("in range");
        let accepting = (0..n as u64)
            .filter(|&e| self.member(e))
            .map(|e| target.element(e as usize).expect("in range"))
            .collect();
        MorphismSpec::new(MorphismSource::Nat, target, vec![image], accepting)
            .expect("constructed spec is valid")
    }
}

/// A periodic subset of the integers: a union of residue classes modulo the
/// period, with the period minimal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodicSet {
    period: u64,
    residues: BTreeSet<u64>,
}

impl PeriodicSet {
    pub fn new(period: u64, residues: BTreeSet<u64>) -> Result<Self, AdditiveError> {
        if period == 0 {
            return Err(AdditiveError::ZeroPeriod);
        }
        if let Some(&r) = residues.iter().next_back() {
            if r >= period {
                return Err(AdditiveError::ResidueOutOfRange(r));
            }
        }
        let (period, residues) = minimize_period(period, &residues);
        Ok(PeriodicSet { period, residues })
    }

    pub fn from_canonical_parts(period: u64, residues: BTreeSet<u64>) -> Result<Self, AdditiveError> {
        let canonical = Self::new(period, residues.clone())?;
        if canonical.period != period || canonical.residues != residues {
            return Err(AdditiveError::NonCanonical);
        }
        Ok(canonical)
    }

    pub fn empty() -> Self {
        PeriodicSet {
            period: 1,
            residues: BTreeSet::new(),
        }
    }

    pub fn full() -> Self {
        PeriodicSet {
            period: 1,
            residues: BTreeSet::from([0]),
        }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    /// Membership via the mathematical modulus, so negative `n` works.
    pub fn member(&self, n: i64) -> bool {
        self.residues.contains(&(n.rem_euclid(self.period as i64) as u64))
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.period == 1 && !self.residues.is_empty()
    }

    fn pointwise(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        let period = self.period.lcm(&other.period);
        let residues = (0..period)
            .filter(|&r| f(self.member(r as i64), other.member(r as i64)))
            .collect();
        Self::new(period, residues).expect("pointwise parts are valid")
    }

    pub fn union(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.pointwise(other, |a, b| a && b)
    }

    pub fn complement(&self) -> Self {
        let residues = (0..self.period).filter(|r| !self.residues.contains(r)).collect();
        Self::new(self.period, residues).expect("complement parts are valid")
    }

    /// The preimage of the accepting set under a morphism from the integers.
    /// The period of the result divides the order of the generator image in
    /// the unit group of the target.
    pub fn from_morphism(spec: &MorphismSpec) -> Result<Self, MorphismError> {
        if spec.source() != &MorphismSource::Int {
            return Err(MorphismError::SourceMismatch);
        }
        let g = spec.images()[0];
        if spec.target().invert(g).is_err() {
            return Err(MorphismError::GeneratorNotInvertible(g.index()));
        }
        let order = spec.target().order_of_invertible(g);
        let residues = (0..order)
            .filter(|&r| spec.is_accepting(spec.target().pow(g, r)))
            .collect();
        Ok(Self::new(order, residues).expect("order parts are valid"))
    }

    /// A recognizing morphism into the cyclic group of order `period` whose
    /// preimage is exactly this set.
    pub fn to_morphism(&self) -> MorphismSpec {
        let target = FiniteMonoid::cyclic(self.period as usize);
        let image = target.element(1 % self.period as usize).expect("in range");
        let accepting = self
            .residues
            .iter()
            .map(|&r| target.element(r as usize).expect("in range"))
            .collect();
        MorphismSpec::new(MorphismSource::Int, target, vec![image], accepting)
            .expect("cyclic spec is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn evens() -> UltimatelyPeriodicSet {
        UltimatelyPeriodicSet::new(0, 2, BTreeSet::from([0]), BTreeSet::from([0])).unwrap()
    }

    fn mult(k: u64) -> UltimatelyPeriodicSet {
        UltimatelyPeriodicSet::new(0, k, BTreeSet::from([0]), BTreeSet::from([0])).unwrap()
    }

    #[test]
    fn membership_basics() {
        assert!(evens().member(4));
        assert!(!evens().member(7));
        assert!(!UltimatelyPeriodicSet::empty().member(0));
        assert!(!UltimatelyPeriodicSet::empty().member(12));
    }

    #[test]
    fn prefix_overrides_below_threshold() {
        // {1} together with multiples of 3 above 10.
        let u = UltimatelyPeriodicSet::new(
            10,
            3,
            BTreeSet::from([1, 3, 6, 9]),
            BTreeSet::from([0]),
        )
        .unwrap();
        assert!(u.member(1));
        assert!(u.member(6));
        assert!(!u.member(2));
        assert!(u.member(12));
        assert!(!u.member(13));
    }

    #[test]
    fn canonicalization_reduces_period_and_threshold() {
        // Evens written with period 4 and a redundant threshold.
        let u = UltimatelyPeriodicSet::new(
            5,
            4,
            BTreeSet::from([0, 2, 4]),
            BTreeSet::from([0, 2]),
        )
        .unwrap();
        assert_eq!(u, evens());
        assert_eq!(u.period(), 2);
        assert_eq!(u.threshold(), 0);
    }

    #[test]
    fn from_canonical_parts_rejects_redundancy() {
        let err = UltimatelyPeriodicSet::from_canonical_parts(
            0,
            4,
            BTreeSet::from([0]),
            BTreeSet::from([0, 2]),
        )
        .unwrap_err();
        assert_eq!(err, AdditiveError::NonCanonical);
    }

    #[test]
    fn union_of_evens_and_multiples_of_three() {
        let u = evens().union(&mult(3));
        assert_eq!(u.period(), 6);
        assert_eq!(u.residues(), &BTreeSet::from([0, 2, 3, 4]));
        for n in 0..=100 {
            assert_eq!(u.member(n), n % 2 == 0 || n % 3 == 0, "n = {n}");
        }
    }

    #[test]
    fn complement_of_evens_is_odds() {
        let odds = evens().complement();
        assert_eq!(odds.residues(), &BTreeSet::from([1]));
        assert!(evens().intersect(&odds).is_empty());
        assert!(evens().union(&odds).is_full());
    }

    #[test]
    fn from_morphism_examples() {
        use crate::monoid::FiniteMonoid;
        use crate::morphism::{MorphismSource, MorphismSpec};

        let z3 = FiniteMonoid::cyclic(3);
        let spec = MorphismSpec::new(
            MorphismSource::Nat,
            z3.clone(),
            alloc::vec![z3.element(1).unwrap()],
            BTreeSet::from([z3.unit()]),
        )
        .unwrap();
        let u = UltimatelyPeriodicSet::from_morphism(&spec).unwrap();
        assert_eq!(u, mult(3));
        for n in 0..=30 {
            assert_eq!(u.member(n), spec.is_accepting(z3.pow(z3.element(1).unwrap(), n)));
        }

        let m3 = FiniteMonoid::m3();
        let p = m3.element(1).unwrap();
        let spec = MorphismSpec::new(
            MorphismSource::Nat,
            m3.clone(),
            alloc::vec![p],
            BTreeSet::from([p]),
        )
        .unwrap();
        let u = UltimatelyPeriodicSet::from_morphism(&spec).unwrap();
        assert_eq!(u, UltimatelyPeriodicSet::singleton(1));
        assert_eq!(u.threshold(), 1);
        assert_eq!(u.prefix(), &BTreeSet::from([1]));
        assert!(u.residues().is_empty());

        let all: BTreeSet<_> = m3.elements().collect();
        let spec = MorphismSpec::new(MorphismSource::Nat, m3, alloc::vec![p], all).unwrap();
        assert!(UltimatelyPeriodicSet::from_morphism(&spec).unwrap().is_full());
    }

    #[test]
    fn syntactic_morphism_sizes_and_round_trips() {
        let spec = evens().to_syntactic_morphism();
        assert_eq!(spec.target().size(), 2);
        assert_eq!(UltimatelyPeriodicSet::from_morphism(&spec).unwrap(), evens());

        let spec = UltimatelyPeriodicSet::full().to_syntactic_morphism();
        assert_eq!(spec.target().size(), 1);

        let one = UltimatelyPeriodicSet::singleton(1);
        let spec = one.to_syntactic_morphism();
        assert_eq!(spec.target().size(), 3);
        assert_eq!(UltimatelyPeriodicSet::from_morphism(&spec).unwrap(), one);
    }

    #[test]
    fn periodic_membership_with_negatives() {
        let odds = PeriodicSet::new(2, BTreeSet::from([1])).unwrap();
        assert!(odds.member(-3));
        assert!(!odds.member(-4));
        assert!(odds.member(5));
    }

    #[test]
    fn periodic_union_example() {
        let a = PeriodicSet::new(2, BTreeSet::from([1])).unwrap();
        let b = PeriodicSet::new(3, BTreeSet::from([0])).unwrap();
        let u = a.union(&b);
        assert_eq!(u.period(), 6);
        assert_eq!(u.residues(), &BTreeSet::from([0, 1, 3, 5]));
        for n in -60..=60 {
            assert_eq!(u.member(n), n.rem_euclid(2) == 1 || n.rem_euclid(3) == 0);
        }
    }

    #[test]
    fn periodic_complement_and_canonical() {
        assert!(PeriodicSet::full().complement().is_empty());
        let doubled = PeriodicSet::new(4, BTreeSet::from([0, 2])).unwrap();
        assert_eq!(doubled.period(), 2);
        assert_eq!(
            PeriodicSet::from_canonical_parts(4, BTreeSet::from([0, 2])).unwrap_err(),
            AdditiveError::NonCanonical
        );
    }

    #[test]
    fn periodic_from_morphism() {
        use crate::monoid::FiniteMonoid;
        use crate::morphism::{MorphismSource, MorphismSpec};

        let z2 = FiniteMonoid::cyclic(2);
        let one = z2.element(1).unwrap();
        let spec = MorphismSpec::new(
            MorphismSource::Int,
            z2.clone(),
            alloc::vec![one],
            BTreeSet::from([one]),
        )
        .unwrap();
        let p = PeriodicSet::from_morphism(&spec).unwrap();
        for n in -20..=20 {
            assert_eq!(p.member(n), n.rem_euclid(2) == 1);
        }

        let spec = MorphismSpec::new(MorphismSource::Int, z2, alloc::vec![one], BTreeSet::new())
            .unwrap();
        assert!(PeriodicSet::from_morphism(&spec).unwrap().is_empty());
    }

    #[test]
    fn periodic_round_trip_through_cyclic_morphism() {
        let p = PeriodicSet::new(6, BTreeSet::from([1, 4, 5])).unwrap();
        let spec = p.to_morphism();
        assert_eq!(PeriodicSet::from_morphism(&spec).unwrap(), p);
    }
}
