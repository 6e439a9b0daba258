//! Recognizers indexed by arbitrary generator subsets, and the saturation
//! check for morphisms factoring through a generator partition.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{Domain, ExpSeq, GeneratorPartition, SeqError};
use crate::monoid::{ElementIndex, FiniteMonoid};

/// A finite or cofinite set of generator indices (positions, 1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSet {
    Finite(BTreeSet<u64>),
    /// All positions except the listed ones.
    Cofinite(BTreeSet<u64>),
}

impl IndexSet {
    pub fn contains(&self, position: u64) -> bool {
        match self {
            IndexSet::Finite(s) => s.contains(&position),
            IndexSet::Cofinite(s) => !s.contains(&position),
        }
    }
}

/// The morphism into the three-element monoid `{1, p, 0}` with `p^2 = 0`
/// that recognizes exactly the single-generator sequences with index in a
/// chosen set: each such generator maps to `p`, all others to `0`, and the
/// preimage of `{p}` is the chosen family. One recognizer per arbitrary
/// subset of the generators, which is what makes the recognizable sets of
/// an infinitely generated monoid uncountable.
#[derive(Debug, Clone)]
pub struct M3Recognizer {
    monoid: FiniteMonoid,
    indices: IndexSet,
}

pub fn m3_recognizer(indices: IndexSet) -> M3Recognizer {
    M3Recognizer {
        monoid: FiniteMonoid::m3(),
        indices,
    }
}

impl M3Recognizer {
    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn indices(&self) -> &IndexSet {
        &self.indices
    }

    /// Image of the generator at a position: `p` inside the set, `0` out.
    pub fn generator_image(&self, position: u64) -> ElementIndex {
        let idx = if self.indices.contains(position) { 1 } else { 2 };
        self.monoid.element(idx).expect("m3 indices")
    }

    /// Image of a natural sequence: the product of the generator images,
    /// with multiplicities.
    pub fn eval(&self, seq: &ExpSeq) -> Result<ElementIndex, SeqError> {
        if seq.domain() != Domain::Nat {
            return Err(SeqError::DomainMismatch);
        }
        let mut acc = self.monoid.unit();
        for position in 1..=seq.len() {
            let image = self.generator_image(position);
            acc = self
                .monoid
                .mul(acc, self.monoid.pow(image, seq.entry(position) as u64));
        }
        Ok(acc)
    }

    /// Membership in the preimage of `{p}`.
    pub fn accepts(&self, seq: &ExpSeq) -> Result<bool, SeqError> {
        Ok(self.eval(seq)?.index() == 1)
    }
}

/// Outcome of checking that a set is saturated by its generator partition:
/// every two words with the same projection agree on membership.
#[derive(Debug, Clone)]
pub struct SaturationReport {
    pub words_checked: u64,
    pub class_count: usize,
    /// Pairs of words with equal projections on opposite sides of the set.
    pub violations: Vec<(Vec<usize>, Vec<usize>)>,
}

impl SaturationReport {
    pub fn is_saturated(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `X = preimage(projection(X))` on all words up to `max_len`, where
/// the alphabet partition groups letters with equal images and `X` is the
/// accepting preimage. Non-commutative: words project to words of classes.
pub fn saturation_check(
    target: &FiniteMonoid,
    letter_images: &[ElementIndex],
    accepting: &BTreeSet<ElementIndex>,
    max_len: usize,
) -> SaturationReport {
    // Letters with the same image share a class.
    let mut class_of_image: BTreeMap<usize, usize> = BTreeMap::new();
    let mut letter_class = Vec::with_capacity(letter_images.len());
    for &img in letter_images {
        let next = class_of_image.len();
        let class = *class_of_image.entry(img.index()).or_insert(next);
        letter_class.push(class);
    }

    // For each projected word, an example word on each side of the set.
    struct Bucket {
        inside: Option<Vec<usize>>,
        outside: Option<Vec<usize>>,
    }
    struct Scan<'a> {
        target: &'a FiniteMonoid,
        letter_images: &'a [ElementIndex],
        letter_class: &'a [usize],
        accepting: &'a BTreeSet<ElementIndex>,
        max_len: usize,
        word: Vec<usize>,
        class_word: Vec<usize>,
        buckets: BTreeMap<Vec<usize>, Bucket>,
        words_checked: u64,
    }
    impl Scan<'_> {
        // Depth-first over all words, mutating shared buffers; words are
        // only cloned when a bucket records its first example on a side.
        fn visit(&mut self, value: ElementIndex) {
            self.words_checked += 1;
            let inside = self.accepting.contains(&value);
            let bucket = match self.buckets.get_mut(self.class_word.as_slice()) {
                Some(b) => b,
                None => self
                    .buckets
                    .entry(self.class_word.clone())
                    .or_insert(Bucket {
                        inside: None,
                        outside: None,
                    }),
            };
            let side = if inside {
                &mut bucket.inside
            } else {
                &mut bucket.outside
            };
            if side.is_none() {
                *side = Some(self.word.clone());
            }
            if self.word.len() < self.max_len {
                for letter in 0..self.letter_images.len() {
                    self.word.push(letter);
                    self.class_word.push(self.letter_class[letter]);
                    self.visit(self.target.mul(value, self.letter_images[letter]));
                    self.word.pop();
                    self.class_word.pop();
                }
            }
        }
    }

    let mut scan = Scan {
        target,
        letter_images,
        letter_class: &letter_class,
        accepting,
        max_len,
        word: Vec::new(),
        class_word: Vec::new(),
        buckets: BTreeMap::new(),
        words_checked: 0,
    };
    scan.visit(target.unit());

    let violations = scan
        .buckets
        .into_values()
        .filter_map(|b| match (b.inside, b.outside) {
            (Some(w_in), Some(w_out)) => Some((w_in, w_out)),
            _ => None,
        })
        .collect();
    SaturationReport {
        words_checked: scan.words_checked,
        class_count: class_of_image.len(),
        violations,
    }
}

/// The recognizer for the family indexed by a bounded subset `X` of the
/// nonzero integers: a sequence is a member when its entries sum to 1 over
/// the tracked positions `{|n| : n in X}` and to 0 everywhere else.
///
/// Note the tracked positions only see `|n|`: two subsets with the same
/// absolute values produce the same recognizer, and the target tuple
/// `(1, 0)` is not representable as a union of rectangles of periodic sets
/// (singletons of the integers are not periodic), so this family is kept
/// as its own type rather than a [`super::RecSeqSet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SxRecognizer {
    tracked: BTreeSet<u64>,
    partition: GeneratorPartition,
    target: (i64, i64),
}

/// Builds the recognizer for `X`; index 0 names the unit generator and is
/// rejected.
pub fn sx_build(x: &BTreeSet<i64>) -> Result<SxRecognizer, SeqError> {
    if x.contains(&0) {
        return Err(SeqError::InvalidGeneratorIndex(0));
    }
    let tracked: BTreeSet<u64> = x.iter().map(|&n| n.unsigned_abs()).collect();
    let partition = if tracked.is_empty() {
        GeneratorPartition::one_class(Domain::Int)
    } else {
        GeneratorPartition::new(
            Domain::Int,
            2,
            0,
            tracked.iter().map(|&p| (p as i64, 1usize)).collect(),
        )?
    };
    Ok(SxRecognizer {
        tracked,
        partition,
        target: (1, 0),
    })
}

impl SxRecognizer {
    pub fn tracked(&self) -> &BTreeSet<u64> {
        &self.tracked
    }

    pub fn partition(&self) -> &GeneratorPartition {
        &self.partition
    }

    pub fn target(&self) -> (i64, i64) {
        self.target
    }

    pub fn member(&self, seq: &ExpSeq) -> Result<bool, SeqError> {
        if seq.domain() != Domain::Int {
            return Err(SeqError::DomainMismatch);
        }
        let mut tracked_sum = 0i64;
        let mut rest_sum = 0i64;
        for position in 1..=seq.len() {
            if self.tracked.contains(&position) {
                tracked_sum += seq.entry(position);
            } else {
                rest_sum += seq.entry(position);
            }
        }
        Ok((tracked_sum, rest_sum) == self.target)
    }
}

/// A sequence in exactly one of the two sets, when one exists. The two
/// recognizers coincide exactly when they track the same positions, in
/// which case there is nothing to separate.
pub fn separation_witness(a: &SxRecognizer, b: &SxRecognizer) -> Option<ExpSeq> {
    let position = a
        .tracked
        .symmetric_difference(&b.tracked)
        .next()
        .copied()?;
    Some(super::sigma_int(position as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::{MorphismSource, MorphismSpec};
    use crate::seq::{sigma_int, sigma_nat};

    #[test]
    fn m3_images_and_products() {
        let rec = m3_recognizer(IndexSet::Finite(BTreeSet::from([1, 3])));
        assert!(rec.accepts(&sigma_nat(1)).unwrap());
        assert!(!rec.accepts(&sigma_nat(2)).unwrap());
        // Two tracked generators multiply to p * p = 0.
        let both = sigma_nat(1).add(&sigma_nat(3)).unwrap();
        assert_eq!(rec.eval(&both).unwrap().index(), 2);
        assert!(!rec.accepts(&both).unwrap());
        // The unit maps to the unit.
        assert_eq!(rec.eval(&ExpSeq::unit(Domain::Nat)).unwrap().index(), 0);
    }

    #[test]
    fn m3_empty_and_cofinite_index_sets() {
        let empty = m3_recognizer(IndexSet::Finite(BTreeSet::new()));
        for n in 1..=6 {
            assert!(!empty.accepts(&sigma_nat(n)).unwrap());
        }
        let cofinite = m3_recognizer(IndexSet::Cofinite(BTreeSet::from([2])));
        assert!(!cofinite.accepts(&sigma_nat(2)).unwrap());
        assert!(cofinite.accepts(&sigma_nat(5)).unwrap());
    }

    #[test]
    fn saturation_of_an_image_factoring_morphism() {
        let z2 = FiniteMonoid::cyclic(2);
        let one = z2.element(1).unwrap();
        // a and b share an image, c differs.
        let report = saturation_check(
            &z2,
            &[one, one, z2.unit()],
            &BTreeSet::from([z2.unit()]),
            4,
        );
        assert!(report.is_saturated());
        assert_eq!(report.class_count, 2);
        assert!(report.words_checked > 100);
    }

    #[test]
    fn saturation_is_trivial_for_full_accepting() {
        let m3 = FiniteMonoid::m3();
        let p = m3.element(1).unwrap();
        let all: BTreeSet<_> = m3.elements().collect();
        let report = saturation_check(&m3, &[p, m3.unit()], &all, 3);
        assert!(report.is_saturated());
    }

    #[test]
    fn single_letter_saturation_matches_the_unary_view() {
        use crate::additive::UltimatelyPeriodicSet;
        let m3 = FiniteMonoid::m3();
        let p = m3.element(1).unwrap();
        let accepting = BTreeSet::from([p]);
        let report = saturation_check(&m3, &[p], &accepting, 5);
        assert!(report.is_saturated());
        let spec = MorphismSpec::new(
            MorphismSource::Nat,
            m3.clone(),
            vec![p],
            accepting,
        )
        .unwrap();
        let up = UltimatelyPeriodicSet::from_morphism(&spec).unwrap();
        for n in 0..=5u64 {
            assert_eq!(up.member(n), n == 1);
        }
    }

    #[test]
    fn sx_members_track_the_right_sums() {
        let s = sx_build(&BTreeSet::from([2])).unwrap();
        assert!(s.member(&sigma_int(2)).unwrap());
        assert!(!s.member(&sigma_int(1)).unwrap());
        // Entry elsewhere breaks the rest-sum.
        let with_noise = sigma_int(2).add(&sigma_int(5)).unwrap();
        assert!(!s.member(&with_noise).unwrap());
        // Cancelling noise keeps membership.
        let cancelled = sigma_int(2)
            .add(&sigma_int(5))
            .unwrap()
            .add(&sigma_int(-7))
            .unwrap();
        // positions 5 and 7 both untracked: sum 1 - 1 = 0.
        assert!(s.member(&cancelled).unwrap());
    }

    #[test]
    fn sx_of_the_empty_set_is_empty() {
        let s = sx_build(&BTreeSet::new()).unwrap();
        for n in [1i64, 2, 3, -4] {
            assert!(!s.member(&sigma_int(n)).unwrap());
        }
        assert!(!s.member(&ExpSeq::unit(Domain::Int)).unwrap());
    }

    #[test]
    fn sx_rejects_index_zero() {
        assert_eq!(
            sx_build(&BTreeSet::from([0, 2])).unwrap_err(),
            SeqError::InvalidGeneratorIndex(0)
        );
    }

    #[test]
    fn separation_of_distinct_position_sets() {
        let a = sx_build(&BTreeSet::from([1])).unwrap();
        let b = sx_build(&BTreeSet::from([2])).unwrap();
        let w = separation_witness(&a, &b).unwrap();
        assert_ne!(a.member(&w).unwrap(), b.member(&w).unwrap());

        // Equal position sets are the same recognizer; nothing separates.
        let c = sx_build(&BTreeSet::from([-2])).unwrap();
        assert_eq!(separation_witness(&b, &c), None);
        assert_eq!(b, c);
    }
}
