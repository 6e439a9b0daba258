//! Witness constructions separating sequence sets from their projections.
//!
//! For a non-trivial property of the entries (or of the length), the sets
//! "the length satisfies P", "every entry satisfies P" and "some entry
//! satisfies P" cannot be recognizable: for any finite-index generator
//! partition these constructors produce two sequences with equal projections
//! on opposite sides of the set. The constructions only ever need two
//! positions pigeonholed into the infinite default class.

use alloc::boxed::Box;
use alloc::string::String;

use super::{Domain, ExpSeq, GeneratorPartition, RecSeqSet, SeqError};

/// A decidable predicate on integers, by name.
#[derive(Debug, Clone)]
pub enum Predicate {
    Even,
    Odd,
    MultipleOf(i64),
    NonNegative,
    /// Primality by trial division (negative numbers are not prime).
    Prime,
    Negated(Box<Predicate>),
    /// Arbitrary total predicate, for tests and negative controls.
    Fn(fn(i64) -> bool),
}

impl Predicate {
    pub fn eval(&self, n: i64) -> bool {
        match self {
            Predicate::Even => n.rem_euclid(2) == 0,
            Predicate::Odd => n.rem_euclid(2) == 1,
            Predicate::MultipleOf(k) => n.rem_euclid(k.abs()) == 0,
            Predicate::NonNegative => n >= 0,
            Predicate::Prime => is_prime(n),
            Predicate::Negated(inner) => !inner.eval(n),
            Predicate::Fn(f) => f(n),
        }
    }
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2i64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A property of numbers together with a scan-based non-triviality
/// certificate: witnesses on both sides of the property are found by
/// scanning at most `scan_limit` candidates past any bound, and every
/// witness is re-checked against the predicate before use. A trivial
/// property simply runs the scan dry.
#[derive(Debug, Clone)]
pub struct PropertySpec {
    name: String,
    domain: Domain,
    predicate: Predicate,
    scan_limit: u64,
}

impl PropertySpec {
    pub fn new(
        name: impl Into<String>,
        domain: Domain,
        predicate: Predicate,
        scan_limit: u64,
    ) -> Self {
        PropertySpec {
            name: name.into(),
            domain,
            predicate,
            scan_limit,
        }
    }

    pub fn even(domain: Domain) -> Self {
        Self::new("even", domain, Predicate::Even, 64)
    }

    pub fn odd(domain: Domain) -> Self {
        Self::new("odd", domain, Predicate::Odd, 64)
    }

    pub fn multiple_of(domain: Domain, k: i64) -> Self {
        Self::new("multiple-of-k", domain, Predicate::MultipleOf(k), 64 + 2 * k.unsigned_abs())
    }

    pub fn nonneg() -> Self {
        Self::new("nonneg", Domain::Int, Predicate::NonNegative, 64)
    }

    /// Primality with the certificate certified up to the given bound: the
    /// scan window is sized so that searches below the bound always land on
    /// a prime gap.
    pub fn prime_with_bound(bound: u64) -> Self {
        Self::new("prime", Domain::Nat, Predicate::Prime, bound)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn holds(&self, n: i64) -> bool {
        self.predicate.eval(n)
    }

    pub fn negated(&self) -> PropertySpec {
        PropertySpec {
            name: alloc::format!("not-{}", self.name),
            domain: self.domain,
            predicate: Predicate::Negated(Box::new(self.predicate.clone())),
            scan_limit: self.scan_limit,
        }
    }

    /// Candidate enumeration for the certificate scan: upward for the
    /// naturals, outward by magnitude for the integers.
    fn candidates(&self, above: i64) -> impl Iterator<Item = i64> + '_ {
        let domain = self.domain;
        (1..=self.scan_limit as i64).flat_map(move |step| {
            let up = above + step;
            match domain {
                Domain::Nat => alloc::vec![up],
                Domain::Int => alloc::vec![up, -up],
            }
        })
    }

    /// Some `n` beyond `above` (in magnitude, for the integers) with the
    /// property; `None` when the scan window is exhausted.
    pub fn witness_true(&self, above: i64) -> Option<i64> {
        self.candidates(above).find(|&n| self.holds(n))
    }

    pub fn witness_false(&self, above: i64) -> Option<i64> {
        self.candidates(above).find(|&n| !self.holds(n))
    }
}

/// Which of the three non-recognizable set shapes a counterexample targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CounterexampleKind {
    /// `{sigma : P(|sigma|)}` (natural domain only).
    Length,
    /// `{sigma : every entry satisfies P}`.
    Forall,
    /// `{sigma : some entry satisfies P}`.
    Exists,
}

/// Membership in the length set, evaluated directly.
pub fn in_length_set(p: &PropertySpec, seq: &ExpSeq) -> bool {
    p.holds(seq.len() as i64)
}

/// Membership in the forall set: every entry up to the length, and zero
/// (the value at the infinitely many positions beyond the length).
pub fn in_forall_set(p: &PropertySpec, seq: &ExpSeq) -> bool {
    p.holds(0) && (1..=seq.len()).all(|i| p.holds(seq.entry(i)))
}

/// Membership in the exists set; dual to the forall set of the negation.
pub fn in_exists_set(p: &PropertySpec, seq: &ExpSeq) -> bool {
    p.holds(0) || (1..=seq.len()).any(|i| p.holds(seq.entry(i)))
}

/// The smallest triple `n1 < n2 < n3` with `P(n1)`, `not P(n2)`, `P(n3)`
/// and the generators at `n1` and `n3` in the same partition class.
///
/// The scan is lexicographic from 1, so explicit same-class pairs are found
/// before the guaranteed default-class pair beyond the support. Natural
/// domain only; `bound` caps every scanned candidate.
pub fn nontrivial_witness(
    p: &PropertySpec,
    part: &GeneratorPartition,
    bound: u64,
) -> Result<(u64, u64, u64), SeqError> {
    if p.domain() != Domain::Nat || part.domain() != Domain::Nat {
        return Err(SeqError::DomainMismatch);
    }
    for n1 in 1..=bound {
        if !p.holds(n1 as i64) {
            continue;
        }
        let Some(n2) = (n1 + 1..=bound).find(|&n| !p.holds(n as i64)) else {
            break;
        };
        if let Some(n3) = (n2 + 1..=bound)
            .find(|&n| p.holds(n as i64) && part.position_class(n) == part.position_class(n1))
        {
            return Ok((n1, n2, n3));
        }
    }
    Err(SeqError::CertificateExhausted(bound))
}

/// A property triple without the class constraint: values `(n1, n2, n3)`
/// with `P(n1)`, `not P(n2)`, `P(n3)` and `n1 != n3`. Callers have already
/// established `P(0)`, so zero serves as `n1`. Over the integers the triple
/// need not be ordered (the non-negativity property has all its failures
/// below all its successes), and the entry-edit construction does not need
/// an order.
fn property_triple(p: &PropertySpec, bound: u64) -> Result<(i64, i64, i64), SeqError> {
    debug_assert!(p.holds(0));
    let n2 = p.witness_false(0).ok_or(SeqError::CertificateExhausted(bound))?;
    let n3 = p
        .witness_true(n2.abs())
        .ok_or(SeqError::CertificateExhausted(bound))?;
    Ok((0, n2, n3))
}

fn check_domains(
    p: &PropertySpec,
    part: &GeneratorPartition,
    domain: Domain,
) -> Result<(), SeqError> {
    if p.domain() != domain || part.domain() != domain {
        return Err(SeqError::DomainMismatch);
    }
    Ok(())
}

/// Builds `(s1, s2)` with `s1` in the target set, `s2` outside it, and
/// equal projections under the partition.
///
/// The length kind places the triple's generators directly; the forall kind
/// edits two same-class positions from `(n1, n3)` to `(n2, n1 + n3 - n2)`;
/// the exists kind goes through complement duality on the negated property.
pub fn prop6_counterexample(
    kind: CounterexampleKind,
    p: &PropertySpec,
    part: &GeneratorPartition,
    seed: Option<&ExpSeq>,
    bound: u64,
) -> Result<(ExpSeq, ExpSeq), SeqError> {
    check_domains(p, part, Domain::Nat)?;
    match kind {
        CounterexampleKind::Length => {
            let (n1, n2, n3) = nontrivial_witness(p, part, bound)?;
            let s1 = super::sigma_nat(n2).add(&super::sigma_nat(n3))?;
            let s2 = super::sigma_nat(n1).add(&super::sigma_nat(n2))?;
            Ok((s1, s2))
        }
        CounterexampleKind::Forall => forall_pair(p, part, seed, bound, Domain::Nat),
        CounterexampleKind::Exists => {
            // Seeds describe forall-kind members and do not transfer to the
            // complemented set.
            let negated = p.negated();
            let (t1, t2) = prop6_counterexample(
                CounterexampleKind::Forall,
                &negated,
                part,
                None,
                bound,
            )?;
            // t1 is in the forall set of not-P, i.e. outside the exists set
            // of P; t2 is inside it.
            Ok((t2, t1))
        }
    }
}

/// The shared forall-kind edit, over either domain.
fn forall_pair(
    p: &PropertySpec,
    part: &GeneratorPartition,
    seed: Option<&ExpSeq>,
    bound: u64,
    domain: Domain,
) -> Result<(ExpSeq, ExpSeq), SeqError> {
    if !p.holds(0) {
        // Every sequence has zero entries beyond its length, so the forall
        // set is empty and no seed exists. A property with no satisfying
        // values at all is trivial and reported as a certificate failure.
        return Err(if p.witness_true(0).is_none() {
            SeqError::CertificateExhausted(bound)
        } else {
            SeqError::SeedNotInX
        });
    }
    match seed {
        Some(s1) => {
            if s1.domain() != domain || !in_forall_set(p, s1) {
                return Err(SeqError::SeedNotInX);
            }
            // Look for two same-class positions whose values admit a
            // failing middle value.
            let horizon = s1.len().max(part.support_max()) + 2;
            for i in 1..=horizon {
                for j in i + 1..=horizon {
                    if part.position_class(i) != part.position_class(j) {
                        continue;
                    }
                    let (a, b) = (s1.entry(i), s1.entry(j));
                    if let Some(n2) = middle_failure(p, a, b, domain) {
                        let s2 = s1.set_entry(i, n2)?.set_entry(j, a + b - n2)?;
                        return Ok((s1.clone(), s2));
                    }
                }
            }
            Err(SeqError::SeedNotInX)
        }
        None => {
            let (n1, n2, n3) = property_triple(p, bound)?;
            let (i, j) = part.fresh_default_positions(0);
            let s1 = ExpSeq::unit(domain).set_entry(i, n1)?.set_entry(j, n3)?;
            let s2 = ExpSeq::unit(domain).set_entry(i, n2)?.set_entry(j, n1 + n3 - n2)?;
            Ok((s1, s2))
        }
    }
}

/// Some failing value `n2` compatible with rewriting entries `(a, b)` to
/// `(n2, a + b - n2)`: in the natural domain both new entries must stay
/// non-negative.
fn middle_failure(p: &PropertySpec, a: i64, b: i64, domain: Domain) -> Option<i64> {
    match domain {
        Domain::Nat => (0..=a + b).find(|&n| !p.holds(n)),
        Domain::Int => {
            let m = a.abs() + b.abs();
            (-m..=m).find(|&n| !p.holds(n)).or_else(|| p.witness_false(m))
        }
    }
}

/// Integer-domain counterexamples for the forall and exists sets.
pub fn prop8_counterexample(
    kind: CounterexampleKind,
    p: &PropertySpec,
    part: &GeneratorPartition,
    bound: u64,
) -> Result<(ExpSeq, ExpSeq), SeqError> {
    check_domains(p, part, Domain::Int)?;
    match kind {
        CounterexampleKind::Length => Err(SeqError::DomainMismatch),
        CounterexampleKind::Forall => forall_pair(p, part, None, bound, Domain::Int),
        CounterexampleKind::Exists => {
            let negated = p.negated();
            let (t1, t2) = prop8_counterexample(CounterexampleKind::Forall, &negated, part, bound)?;
            Ok((t2, t1))
        }
    }
}

/// Rewrites a member of a nonempty integer-sequence set into a member of
/// length greater than `p`: a `+1` and a `-1` are placed at two fresh
/// positions in the same (default) class, so the projection is unchanged
/// and membership is preserved.
pub fn prop7_lengthen(set: &RecSeqSet, seq: &ExpSeq, p: u64) -> Result<ExpSeq, SeqError> {
    if set.domain() != Domain::Int || seq.domain() != Domain::Int {
        return Err(SeqError::DomainMismatch);
    }
    if !set.member(seq)? {
        return Err(SeqError::NotAMember);
    }
    if seq.len() > p {
        return Ok(seq.clone());
    }
    let (n, n_prime) = set.partition().fresh_default_positions(p.max(seq.len()));
    let lengthened = seq.set_entry(n, 1)?.set_entry(n_prime, -1)?;
    debug_assert!(lengthened.len() > p);
    Ok(lengthened)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rect::{ComponentRep, CoordKind, RectUnion};
    use alloc::collections::BTreeMap;

    fn even_nat() -> PropertySpec {
        PropertySpec::even(Domain::Nat)
    }

    fn example_partition() -> GeneratorPartition {
        GeneratorPartition::new(Domain::Nat, 2, 0, BTreeMap::from([(2, 1), (6, 1)])).unwrap()
    }

    #[test]
    fn witness_triple_prefers_the_smallest() {
        let triple = nontrivial_witness(&even_nat(), &example_partition(), 100).unwrap();
        assert_eq!(triple, (2, 3, 6));

        let one_class = GeneratorPartition::one_class(Domain::Nat);
        let triple = nontrivial_witness(
            &PropertySpec::multiple_of(Domain::Nat, 3),
            &one_class,
            100,
        )
        .unwrap();
        assert_eq!(triple, (3, 4, 6));
    }

    #[test]
    fn constant_properties_exhaust_the_certificate() {
        let always = PropertySpec::new("always", Domain::Nat, Predicate::Fn(|_| true), 16);
        assert_eq!(
            nontrivial_witness(&always, &GeneratorPartition::one_class(Domain::Nat), 50),
            Err(SeqError::CertificateExhausted(50))
        );
        assert!(matches!(
            prop6_counterexample(
                CounterexampleKind::Length,
                &always,
                &GeneratorPartition::one_class(Domain::Nat),
                None,
                50
            ),
            Err(SeqError::CertificateExhausted(_))
        ));
    }

    #[test]
    fn length_kind_matches_the_worked_example() {
        let part = example_partition();
        let (s1, s2) = prop6_counterexample(
            CounterexampleKind::Length,
            &even_nat(),
            &part,
            None,
            100,
        )
        .unwrap();
        assert_eq!(s1.len(), 6);
        assert_eq!(s2.len(), 3);
        assert!(in_length_set(&even_nat(), &s1));
        assert!(!in_length_set(&even_nat(), &s2));
        assert_eq!(part.project(&s1).unwrap(), part.project(&s2).unwrap());
        assert_eq!(part.project(&s1).unwrap(), alloc::vec![1, 1]);
    }

    #[test]
    fn forall_kind_produces_a_verified_pair() {
        let part = example_partition();
        let (s1, s2) = prop6_counterexample(
            CounterexampleKind::Forall,
            &even_nat(),
            &part,
            None,
            100,
        )
        .unwrap();
        assert!(in_forall_set(&even_nat(), &s1));
        assert!(!in_forall_set(&even_nat(), &s2));
        assert_eq!(part.project(&s1).unwrap(), part.project(&s2).unwrap());
        assert!((1..=s2.len()).any(|i| s2.entry(i) % 2 != 0));
    }

    #[test]
    fn exists_kind_goes_through_duality() {
        let part = example_partition();
        let odd = PropertySpec::odd(Domain::Nat);
        let (s1, s2) =
            prop6_counterexample(CounterexampleKind::Exists, &odd, &part, None, 100).unwrap();
        assert!(in_exists_set(&odd, &s1));
        assert!(!in_exists_set(&odd, &s2));
        assert_eq!(part.project(&s1).unwrap(), part.project(&s2).unwrap());
        assert!((1..=s1.len()).any(|i| s1.entry(i) % 2 == 1));
        assert!((1..=s2.len()).all(|i| s2.entry(i) % 2 == 0));
    }

    #[test]
    fn forall_kind_with_a_user_seed() {
        let part = example_partition();
        // Seed with entries 2 and 4 on the same-class positions 2 and 6.
        let seed = ExpSeq::unit(Domain::Nat)
            .set_entry(2, 2)
            .unwrap()
            .set_entry(6, 4)
            .unwrap();
        let (s1, s2) = prop6_counterexample(
            CounterexampleKind::Forall,
            &even_nat(),
            &part,
            Some(&seed),
            100,
        )
        .unwrap();
        assert_eq!(s1, seed);
        assert!(!in_forall_set(&even_nat(), &s2));
        assert_eq!(part.project(&s1).unwrap(), part.project(&s2).unwrap());
    }

    #[test]
    fn seeds_outside_the_set_are_rejected() {
        let part = example_partition();
        let bad_seed = ExpSeq::new(Domain::Nat, alloc::vec![1]).unwrap();
        assert_eq!(
            prop6_counterexample(
                CounterexampleKind::Forall,
                &even_nat(),
                &part,
                Some(&bad_seed),
                100
            )
            .unwrap_err(),
            SeqError::SeedNotInX
        );
        // Odd fails at zero, so the forall set is empty.
        assert_eq!(
            prop6_counterexample(
                CounterexampleKind::Forall,
                &PropertySpec::odd(Domain::Nat),
                &part,
                None,
                100
            )
            .unwrap_err(),
            SeqError::SeedNotInX
        );
    }

    #[test]
    fn prop8_nonneg_forall_gains_a_negative_entry() {
        let part = GeneratorPartition::one_class(Domain::Int);
        let (s1, s2) = prop8_counterexample(
            CounterexampleKind::Forall,
            &PropertySpec::nonneg(),
            &part,
            100,
        )
        .unwrap();
        let nonneg = PropertySpec::nonneg();
        assert!(in_forall_set(&nonneg, &s1));
        assert!(!in_forall_set(&nonneg, &s2));
        assert!((1..=s2.len()).any(|i| s2.entry(i) < 0));
        assert_eq!(part.project(&s1).unwrap(), part.project(&s2).unwrap());
    }

    #[test]
    fn prop8_exists_via_duality() {
        let part = GeneratorPartition::new(Domain::Int, 2, 0, BTreeMap::from([(3, 1)])).unwrap();
        let odd = PropertySpec::odd(Domain::Int);
        let (s1, s2) =
            prop8_counterexample(CounterexampleKind::Exists, &odd, &part, 100).unwrap();
        assert!(in_exists_set(&odd, &s1));
        assert!(!in_exists_set(&odd, &s2));
        assert_eq!(part.project(&s1).unwrap(), part.project(&s2).unwrap());
    }

    #[test]
    fn degenerate_kind_property_combinations_are_rejected() {
        // Entries beyond the length are zero, so when the property holds at
        // zero the exists set is everything and when it fails at zero the
        // forall set is empty; neither admits a separating pair.
        let part = GeneratorPartition::one_class(Domain::Int);
        let even = PropertySpec::even(Domain::Int);
        assert_eq!(
            prop8_counterexample(CounterexampleKind::Exists, &even, &part, 100).unwrap_err(),
            SeqError::SeedNotInX
        );
        let odd = PropertySpec::odd(Domain::Int);
        assert_eq!(
            prop8_counterexample(CounterexampleKind::Forall, &odd, &part, 100).unwrap_err(),
            SeqError::SeedNotInX
        );
    }

    #[test]
    fn lengthening_preserves_membership_and_grows() {
        let set = RecSeqSet::full(Domain::Int);
        let seq = super::super::sigma_int(1);
        let longer = prop7_lengthen(&set, &seq, 3).unwrap();
        assert_eq!(longer.entries(), &[1, 0, 0, 1, -1]);
        assert!(longer.len() > 3);
        assert!(set.member(&longer).unwrap());

        // Already long enough: unchanged.
        let long = ExpSeq::new(Domain::Int, alloc::vec![0, 0, 0, 0, 2]).unwrap();
        assert_eq!(prop7_lengthen(&set, &long, 3).unwrap(), long);
    }

    #[test]
    fn lengthening_rejects_non_members() {
        let partition = GeneratorPartition::one_class(Domain::Int);
        let quotient = RectUnion::new(
            alloc::vec![CoordKind::Int],
            alloc::vec![alloc::vec![ComponentRep::Per(
                crate::additive::PeriodicSet::new(2, alloc::collections::BTreeSet::from([1]))
                    .unwrap()
            )]],
        )
        .unwrap();
        let odd_sum = RecSeqSet::new(partition, quotient).unwrap();
        let even_seq = ExpSeq::new(Domain::Int, alloc::vec![2]).unwrap();
        assert_eq!(
            prop7_lengthen(&odd_sum, &even_seq, 3).unwrap_err(),
            SeqError::NotAMember
        );
        // A member really does lengthen while staying inside.
        let member = ExpSeq::new(Domain::Int, alloc::vec![1]).unwrap();
        let longer = prop7_lengthen(&odd_sum, &member, 4).unwrap();
        assert!(longer.len() > 4);
        assert!(odd_sum.member(&longer).unwrap());
    }
}
