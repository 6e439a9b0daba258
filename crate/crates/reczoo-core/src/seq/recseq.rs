//! Recognizable subsets of the sequence monoids: a finite-index generator
//! partition plus a recognizable subset of the finite-arity quotient.
//!
//! A set is exactly the preimage of its quotient part under the summing
//! projection. Boolean operations refine the two partitions to a common one,
//! pull both quotients back along the class maps, and then work inside the
//! rectangle algebra.

use alloc::vec;
use alloc::vec::Vec;

use super::{Domain, ExpSeq, GeneratorPartition, Primes, SeqError};
use crate::rect::{
    hom_preimage_to_rectangles, ComponentRep, CoordKind, CoordValue, RectError, RectLimits,
    RectUnion, SignSubset,
};
use crate::Rational;

/// Caps for the refined arity and the pulled-back rectangle count; the De
/// Morgan expansion behind complement and equality is exponential in both.
#[derive(Debug, Clone, Copy)]
pub struct RecSeqLimits {
    pub max_refined_arity: usize,
    pub max_rects: usize,
}

impl Default for RecSeqLimits {
    fn default() -> Self {
        RecSeqLimits {
            max_refined_arity: 6,
            max_rects: 64,
        }
    }
}

impl RecSeqLimits {
    fn rect_limits(self) -> RectLimits {
        RectLimits {
            max_arity: self.max_refined_arity,
            max_rects: self.max_rects,
        }
    }
}

fn kind_for(domain: Domain) -> CoordKind {
    match domain {
        Domain::Nat => CoordKind::Nat,
        Domain::Int => CoordKind::Int,
    }
}

/// Preimage of a quotient set under the coordinate-summing map `h`.
///
/// Coarse coordinate `J` constrains the sum of the fine coordinates mapped
/// to it; the constraint is converted to rectangles through the component's
/// own recognizing morphism, with one generator per fine coordinate, and
/// the per-coordinate unions are combined across `J` by cartesian product.
pub fn pullback_quotient(
    quotient: &RectUnion,
    h: &[usize],
    domain: Domain,
    max_rects: usize,
) -> Result<RectUnion, SeqError> {
    let coarse_arity = quotient.arity();
    for coarse in 0..coarse_arity {
        if !h.contains(&coarse) {
            return Err(SeqError::ClassMapNotOnto(coarse));
        }
    }
    let kind = kind_for(domain);
    let fine_signature = vec![kind; h.len()];
    let mut rects: Vec<Vec<ComponentRep>> = Vec::new();
    for rect in quotient.rects() {
        // Per coarse coordinate: the rectangles constraining its block.
        let mut blocks: Vec<(Vec<usize>, RectUnion)> = Vec::with_capacity(coarse_arity);
        for (coarse, component) in rect.iter().enumerate() {
            let block: Vec<usize> = (0..h.len()).filter(|&i| h[i] == coarse).collect();
            let ru = match component {
                ComponentRep::Up(u) => {
                    let spec = u.to_syntactic_morphism();
                    hom_preimage_to_rectangles(
                        spec.target(),
                        &vec![spec.images()[0]; block.len()],
                        spec.accepting(),
                        &vec![CoordKind::Nat; block.len()],
                    )?
                }
                ComponentRep::Per(p) => {
                    let spec = p.to_morphism();
                    hom_preimage_to_rectangles(
                        spec.target(),
                        &vec![spec.images()[0]; block.len()],
                        spec.accepting(),
                        &vec![CoordKind::Int; block.len()],
                    )?
                }
                _ => return Err(SeqError::QuotientMismatch),
            };
            blocks.push((block, ru));
        }
        // Cartesian product across the blocks.
        let mut choice = vec![0usize; blocks.len()];
        if blocks.iter().any(|(_, ru)| ru.is_empty()) {
            continue;
        }
        'product: loop {
            let mut fine_rect: Vec<Option<ComponentRep>> = vec![None; h.len()];
            for ((block, ru), &c) in blocks.iter().zip(&choice) {
                for (slot, component) in block.iter().zip(&ru.rects()[c]) {
                    fine_rect[*slot] = Some(component.clone());
                }
            }
            rects.push(fine_rect.into_iter().map(|c| c.expect("onto map fills every slot")).collect());
            if rects.len() > max_rects {
                return Err(SeqError::Rect(RectError::BlowupCapExceeded {
                    arity: h.len(),
                    rects: rects.len(),
                }));
            }
            let mut pos = 0;
            loop {
                if pos == blocks.len() {
                    break 'product;
                }
                choice[pos] += 1;
                if choice[pos] < blocks[pos].1.rects().len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }
    Ok(RectUnion::new(fine_signature, rects)?)
}

/// A recognizable subset of a sequence monoid.
#[derive(Debug, Clone)]
pub struct RecSeqSet {
    partition: GeneratorPartition,
    quotient: RectUnion,
}

impl RecSeqSet {
    pub fn new(partition: GeneratorPartition, quotient: RectUnion) -> Result<Self, SeqError> {
        let kind = kind_for(partition.domain());
        if quotient.arity() != partition.class_count()
            || quotient.signature().iter().any(|&k| k != kind)
        {
            return Err(SeqError::QuotientMismatch);
        }
        Ok(RecSeqSet { partition, quotient })
    }

    pub fn full(domain: Domain) -> Self {
        let partition = GeneratorPartition::one_class(domain);
        let quotient = RectUnion::full(vec![kind_for(domain)]).expect("arity 1");
        RecSeqSet { partition, quotient }
    }

    pub fn empty(domain: Domain) -> Self {
        let partition = GeneratorPartition::one_class(domain);
        let quotient = RectUnion::empty(vec![kind_for(domain)]).expect("arity 1");
        RecSeqSet { partition, quotient }
    }

    pub fn domain(&self) -> Domain {
        self.partition.domain()
    }

    pub fn partition(&self) -> &GeneratorPartition {
        &self.partition
    }

    pub fn quotient(&self) -> &RectUnion {
        &self.quotient
    }

    fn point(&self, coords: &[i64]) -> Vec<CoordValue> {
        coords
            .iter()
            .map(|&v| match self.domain() {
                Domain::Nat => CoordValue::Nat(v as u64),
                Domain::Int => CoordValue::Int(v),
            })
            .collect()
    }

    /// Membership: project, then test the quotient.
    pub fn member(&self, seq: &ExpSeq) -> Result<bool, SeqError> {
        let coords = self.partition.project(seq)?;
        Ok(self.quotient.member(&self.point(&coords))?)
    }

    /// Membership of a positive natural through its prime factorization.
    pub fn nat_member(&self, primes: &mut Primes, n: u64) -> Result<bool, SeqError> {
        if self.domain() != Domain::Nat {
            return Err(SeqError::DomainMismatch);
        }
        self.member(&primes.factorize(n)?)
    }

    /// Membership of a positive rational through its signed factorization.
    pub fn rat_member(&self, primes: &mut Primes, q: Rational) -> Result<bool, SeqError> {
        if self.domain() != Domain::Int {
            return Err(SeqError::DomainMismatch);
        }
        self.member(&primes.rat_factorize(q)?)
    }

    /// Every class of a partition is inhabited, so the summing projection is
    /// onto the quotient's coordinate space and the set is empty exactly
    /// when its quotient is.
    pub fn is_empty(&self) -> bool {
        self.quotient.is_empty()
    }

    fn aligned(
        &self,
        other: &RecSeqSet,
        limits: RecSeqLimits,
    ) -> Result<(GeneratorPartition, RectUnion, RectUnion), SeqError> {
        if self.domain() != other.domain() {
            return Err(SeqError::DomainMismatch);
        }
        let (refined, h1, h2) = self.partition.refine(&other.partition)?;
        if refined.class_count() > limits.max_refined_arity {
            return Err(SeqError::Rect(RectError::BlowupCapExceeded {
                arity: refined.class_count(),
                rects: 0,
            }));
        }
        let qa = pullback_quotient(&self.quotient, &h1, self.domain(), limits.max_rects)?;
        let qb = pullback_quotient(&other.quotient, &h2, self.domain(), limits.max_rects)?;
        Ok((refined, qa, qb))
    }

    pub fn union_with(&self, other: &RecSeqSet, limits: RecSeqLimits) -> Result<RecSeqSet, SeqError> {
        let (refined, qa, qb) = self.aligned(other, limits)?;
        RecSeqSet::new(refined, qa.union(&qb)?)
    }

    pub fn union(&self, other: &RecSeqSet) -> Result<RecSeqSet, SeqError> {
        self.union_with(other, RecSeqLimits::default())
    }

    pub fn intersect_with(
        &self,
        other: &RecSeqSet,
        limits: RecSeqLimits,
    ) -> Result<RecSeqSet, SeqError> {
        let (refined, qa, qb) = self.aligned(other, limits)?;
        RecSeqSet::new(refined, qa.intersect(&qb)?)
    }

    pub fn intersect(&self, other: &RecSeqSet) -> Result<RecSeqSet, SeqError> {
        self.intersect_with(other, RecSeqLimits::default())
    }

    pub fn complement_with(&self, limits: RecSeqLimits) -> Result<RecSeqSet, SeqError> {
        if self.partition.class_count() > limits.max_refined_arity {
            return Err(SeqError::Rect(RectError::BlowupCapExceeded {
                arity: self.partition.class_count(),
                rects: self.quotient.rects().len(),
            }));
        }
        let quotient = self.quotient.complement_with(limits.rect_limits())?;
        RecSeqSet::new(self.partition.clone(), quotient)
    }

    pub fn complement(&self) -> Result<RecSeqSet, SeqError> {
        self.complement_with(RecSeqLimits::default())
    }

    pub fn equal_with(&self, other: &RecSeqSet, limits: RecSeqLimits) -> Result<bool, SeqError> {
        let (_, qa, qb) = self.aligned(other, limits)?;
        Ok(qa.equal_with(&qb, limits.rect_limits())?)
    }

    pub fn equal(&self, other: &RecSeqSet) -> Result<bool, SeqError> {
        self.equal_with(other, RecSeqLimits::default())
    }
}

/// A recognizable subset of the nonzero rationals: finitely many pairs of a
/// positive part and a sign constraint, one of which must match.
#[derive(Debug, Clone)]
pub struct SignedRationalSet {
    pairs: Vec<(RecSeqSet, SignSubset)>,
}

impl SignedRationalSet {
    pub fn new(pairs: Vec<(RecSeqSet, SignSubset)>) -> Result<Self, SeqError> {
        if pairs.iter().any(|(s, _)| s.domain() != Domain::Int) {
            return Err(SeqError::DomainMismatch);
        }
        Ok(SignedRationalSet { pairs })
    }

    /// The single-pair representation `pos_part x signs`.
    pub fn single(pos_part: RecSeqSet, signs: SignSubset) -> Result<Self, SeqError> {
        Self::new(vec![(pos_part, signs)])
    }

    pub fn pairs(&self) -> &[(RecSeqSet, SignSubset)] {
        &self.pairs
    }

    pub fn member(&self, primes: &mut Primes, q: Rational) -> Result<bool, SeqError> {
        use num_traits::Zero;
        if q.is_zero() {
            return Err(SeqError::ZeroInput);
        }
        let sign: i8 = if q > Rational::zero() { 1 } else { -1 };
        let magnitude = if sign == 1 { q } else { -q };
        let seq = primes.rat_factorize(magnitude)?;
        for (pos_part, signs) in &self.pairs {
            if signs.member(sign) && pos_part.member(&seq)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::additive::{PeriodicSet, UltimatelyPeriodicSet};
    use crate::seq::{sigma_int, sigma_nat};
    use alloc::collections::{BTreeMap, BTreeSet};

    fn evens_up() -> UltimatelyPeriodicSet {
        UltimatelyPeriodicSet::new(0, 2, BTreeSet::from([0]), BTreeSet::from([0])).unwrap()
    }

    fn mult3_up() -> UltimatelyPeriodicSet {
        UltimatelyPeriodicSet::new(0, 3, BTreeSet::from([0]), BTreeSet::from([0])).unwrap()
    }

    /// "The class of position `pos` has a sum in `u`."
    fn tracked_sum_set(pos: u64, u: UltimatelyPeriodicSet) -> RecSeqSet {
        let partition = GeneratorPartition::new(
            Domain::Nat,
            2,
            0,
            BTreeMap::from([(pos as i64, 1)]),
        )
        .unwrap();
        let quotient = RectUnion::new(
            vec![CoordKind::Nat, CoordKind::Nat],
            vec![vec![
                ComponentRep::full(CoordKind::Nat),
                ComponentRep::Up(u),
            ]],
        )
        .unwrap();
        RecSeqSet::new(partition, quotient).unwrap()
    }

    #[test]
    fn membership_via_projection() {
        let s = tracked_sum_set(1, evens_up());
        let two_ones = sigma_nat(1).add(&sigma_nat(1)).unwrap();
        assert!(s.member(&two_ones).unwrap());
        assert!(!s.member(&sigma_nat(1)).unwrap());
        assert!(s.member(&sigma_nat(5)).unwrap());

        assert!(!RecSeqSet::empty(Domain::Nat).member(&two_ones).unwrap());
        assert!(RecSeqSet::full(Domain::Nat).member(&two_ones).unwrap());
    }

    #[test]
    fn pullback_splits_evens_across_two_coordinates() {
        let quotient = RectUnion::new(
            vec![CoordKind::Nat],
            vec![vec![ComponentRep::Up(evens_up())]],
        )
        .unwrap();
        let pulled = pullback_quotient(&quotient, &[0, 0], Domain::Nat, 64).unwrap();
        for a in 0..=6u64 {
            for b in 0..=6u64 {
                let got = pulled
                    .member(&[CoordValue::Nat(a), CoordValue::Nat(b)])
                    .unwrap();
                assert_eq!(got, (a + b) % 2 == 0, "({a}, {b})");
            }
        }
    }

    #[test]
    fn pullback_of_singleton_block_is_extensionally_unchanged() {
        let u = UltimatelyPeriodicSet::new(2, 3, BTreeSet::from([1]), BTreeSet::from([0, 2]))
            .unwrap();
        let quotient = RectUnion::new(
            vec![CoordKind::Nat],
            vec![vec![ComponentRep::Up(u.clone())]],
        )
        .unwrap();
        let pulled = pullback_quotient(&quotient, &[0], Domain::Nat, 64).unwrap();
        for n in 0..=30u64 {
            assert_eq!(pulled.member(&[CoordValue::Nat(n)]).unwrap(), u.member(n));
        }
    }

    #[test]
    fn pullback_of_full_is_full() {
        let quotient = RectUnion::full(vec![CoordKind::Int]).unwrap();
        let pulled = pullback_quotient(&quotient, &[0, 0, 0], Domain::Int, 64).unwrap();
        assert!(pulled
            .equal_with(
                &RectUnion::full(vec![CoordKind::Int; 3]).unwrap(),
                RectLimits { max_arity: 6, max_rects: 64 }
            )
            .unwrap());
    }

    #[test]
    fn pullback_requires_onto_maps() {
        let quotient = RectUnion::full(vec![CoordKind::Nat, CoordKind::Nat]).unwrap();
        assert_eq!(
            pullback_quotient(&quotient, &[0, 0], Domain::Nat, 64).unwrap_err(),
            SeqError::ClassMapNotOnto(1)
        );
    }

    #[test]
    fn union_with_complement_is_full() {
        let s = tracked_sum_set(2, evens_up());
        let c = s.complement().unwrap();
        let u = s.union(&c).unwrap();
        assert!(u.equal(&RecSeqSet::full(Domain::Nat)).unwrap());
        assert!(s.intersect(&c).unwrap().is_empty());
    }

    #[test]
    fn exponent_constraints_on_factorized_numbers() {
        let mut primes = Primes::new();
        // v2 even (position 1) intersected with v3 multiple of 3 (position 2).
        let a = tracked_sum_set(1, evens_up());
        let b = tracked_sum_set(2, mult3_up());
        let both = a.intersect(&b).unwrap();
        // 72 = 2^3 * 3^2: v2 = 3 is odd.
        assert!(!both.nat_member(&mut primes, 72).unwrap());
        // 108 = 2^2 * 3^3.
        assert!(both.nat_member(&mut primes, 108).unwrap());

        assert!(a.nat_member(&mut primes, 12).unwrap());
        assert!(!a.nat_member(&mut primes, 8).unwrap());
        assert!(a.nat_member(&mut primes, 1).unwrap());
    }

    #[test]
    fn union_with_empty_is_extensionally_unchanged() {
        let s = tracked_sum_set(1, evens_up());
        let u = s.union(&RecSeqSet::empty(Domain::Nat)).unwrap();
        for n in 0..100u64 {
            let seq = sigma_nat(n % 7).add(&sigma_nat(n % 11)).unwrap();
            assert_eq!(u.member(&seq).unwrap(), s.member(&seq).unwrap());
        }
        assert!(u.equal(&s).unwrap());
    }

    #[test]
    fn equality_across_different_partitions() {
        let s1 = tracked_sum_set(2, evens_up());
        // Same set, with an extra class that the quotient leaves
        // unconstrained.
        let partition = GeneratorPartition::new(
            Domain::Nat,
            3,
            0,
            BTreeMap::from([(2, 1), (5, 2)]),
        )
        .unwrap();
        let quotient = RectUnion::new(
            vec![CoordKind::Nat; 3],
            vec![vec![
                ComponentRep::full(CoordKind::Nat),
                ComponentRep::Up(evens_up()),
                ComponentRep::full(CoordKind::Nat),
            ]],
        )
        .unwrap();
        let s2 = RecSeqSet::new(partition, quotient).unwrap();
        assert!(s1.equal(&s2).unwrap());
    }

    #[test]
    fn singleton_sum_set_is_not_empty() {
        let one = UltimatelyPeriodicSet::singleton(1);
        let s = tracked_sum_set(3, one);
        assert!(!s.is_empty());
        assert!(!s.equal(&RecSeqSet::empty(Domain::Nat)).unwrap());
        assert!(s.member(&sigma_nat(3)).unwrap());
    }

    #[test]
    fn signed_rational_membership() {
        let mut primes = Primes::new();
        let negative_only =
            SignedRationalSet::single(RecSeqSet::full(Domain::Int), SignSubset {
                plus: false,
                minus: true,
            })
            .unwrap();
        assert!(negative_only.member(&mut primes, Rational::new(-3, 4)).unwrap());
        assert!(!negative_only.member(&mut primes, Rational::new(3, 4)).unwrap());

        // v2 even on the magnitude, positive sign.
        let partition =
            GeneratorPartition::new(Domain::Int, 2, 0, BTreeMap::from([(1, 1)])).unwrap();
        let v2_even = PeriodicSet::new(2, BTreeSet::from([0])).unwrap();
        let quotient = RectUnion::new(
            vec![CoordKind::Int, CoordKind::Int],
            vec![vec![
                ComponentRep::full(CoordKind::Int),
                ComponentRep::Per(v2_even),
            ]],
        )
        .unwrap();
        let pos_part = RecSeqSet::new(partition, quotient).unwrap();
        let s = SignedRationalSet::single(pos_part, SignSubset {
            plus: true,
            minus: false,
        })
        .unwrap();
        assert!(s.member(&mut primes, Rational::new(4, 9)).unwrap());
        assert!(!s.member(&mut primes, Rational::new(-4, 9)).unwrap());
        assert!(!s.member(&mut primes, Rational::new(2, 9)).unwrap());
        assert_eq!(
            s.member(&mut primes, Rational::new(0, 1)).unwrap_err(),
            SeqError::ZeroInput
        );
    }
}
