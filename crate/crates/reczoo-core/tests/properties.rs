//! Property tests for the algebraic laws the library is built around.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use reczoo_core::monoid::{self, FiniteMonoid};
use reczoo_core::morphism::{MorphismSource, MorphismSpec};
use reczoo_core::rect::{
    hom_preimage_to_rectangles, morphism_preimage_member, ComponentRep, CoordKind, CoordValue,
    RectLimits, RectUnion,
};
use reczoo_core::seq::{
    in_exists_set, in_forall_set, in_length_set, prop6_counterexample, prop8_counterexample,
    pullback_quotient, sigma_nat, CounterexampleKind, Domain, ExpSeq, GeneratorPartition, Primes,
    PropertySpec, RecSeqSet,
};
use reczoo_core::{PeriodicSet, Rational, UltimatelyPeriodicSet};

fn up_strategy(max_period: u64, max_threshold: u64) -> impl Strategy<Value = UltimatelyPeriodicSet> {
    (1..=max_period, 0..=max_threshold).prop_flat_map(|(p, n0)| {
        (
            proptest::collection::btree_set(0..p, 0..=(p as usize)),
            proptest::collection::btree_set(0..=n0, 0..=(n0 as usize + 1)),
        )
            .prop_map(move |(residues, prefix)| {
                UltimatelyPeriodicSet::new(n0, p, prefix, residues).expect("valid parts")
            })
    })
}

fn periodic_strategy(max_period: u64) -> impl Strategy<Value = PeriodicSet> {
    (1..=max_period).prop_flat_map(|p| {
        proptest::collection::btree_set(0..p, 0..=(p as usize))
            .prop_map(move |residues| PeriodicSet::new(p, residues).expect("valid parts"))
    })
}

fn expseq_strategy(domain: Domain, max_len: usize) -> impl Strategy<Value = ExpSeq> {
    let entry = match domain {
        Domain::Nat => (0i64..6).boxed(),
        Domain::Int => (-5i64..6).boxed(),
    };
    proptest::collection::vec(entry, 0..=max_len)
        .prop_map(move |entries| ExpSeq::new(domain, entries).expect("valid entries"))
}

fn partition_strategy(domain: Domain) -> impl Strategy<Value = GeneratorPartition> {
    proptest::collection::btree_map(1i64..=20, 0usize..4, 0..6).prop_map(move |raw| {
        // Densify the class labels so that no class is empty; the default
        // class is relabeled 0.
        let mut labels: Vec<usize> = raw.values().copied().collect();
        labels.push(0);
        labels.sort_unstable();
        labels.dedup();
        let explicit: BTreeMap<i64, usize> = raw
            .into_iter()
            .map(|(idx, class)| {
                let dense = labels.binary_search(&class).expect("label present");
                let key = if domain == Domain::Int && idx % 3 == 0 { -idx } else { idx };
                (key, dense)
            })
            .collect();
        let zero_dense = labels.binary_search(&0).expect("0 pushed above");
        GeneratorPartition::new(domain, labels.len(), zero_dense, explicit)
            .expect("densified partition is valid")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn up_canonicalization_is_idempotent(u in up_strategy(12, 20)) {
        let again = UltimatelyPeriodicSet::new(
            u.threshold(),
            u.period(),
            u.prefix().clone(),
            u.residues().clone(),
        ).unwrap();
        prop_assert_eq!(&again, &u);
    }

    #[test]
    fn up_round_trips_through_its_syntactic_morphism(u in up_strategy(12, 20)) {
        let spec = u.to_syntactic_morphism();
        prop_assert!(spec.target().size() as u64 <= u.threshold() + 1 + u.period());
        let back = UltimatelyPeriodicSet::from_morphism(&spec).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn up_boolean_ops_match_pointwise_membership(
        a in up_strategy(10, 12),
        b in up_strategy(10, 12),
    ) {
        let union = a.union(&b);
        let inter = a.intersect(&b);
        let compl = a.complement();
        for n in 0..=1000u64 {
            prop_assert_eq!(union.member(n), a.member(n) || b.member(n));
            prop_assert_eq!(inter.member(n), a.member(n) && b.member(n));
            prop_assert_eq!(compl.member(n), !a.member(n));
        }
    }

    #[test]
    fn up_de_morgan_holds_structurally(
        a in up_strategy(8, 10),
        b in up_strategy(8, 10),
    ) {
        let lhs = a.union(&b).complement();
        let rhs = a.complement().intersect(&b.complement());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn periodic_ops_match_pointwise_membership(
        a in periodic_strategy(10),
        b in periodic_strategy(10),
    ) {
        let union = a.union(&b);
        let inter = a.intersect(&b);
        let compl = a.complement();
        for n in -500..=500i64 {
            prop_assert_eq!(union.member(n), a.member(n) || b.member(n));
            prop_assert_eq!(inter.member(n), a.member(n) && b.member(n));
            prop_assert_eq!(compl.member(n), !a.member(n));
        }
    }

    #[test]
    fn periodic_canonicalization_is_idempotent(p in periodic_strategy(12)) {
        let again = PeriodicSet::new(p.period(), p.residues().clone()).unwrap();
        prop_assert_eq!(&again, &p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn nat_seq_add_laws(
        a in expseq_strategy(Domain::Nat, 8),
        b in expseq_strategy(Domain::Nat, 8),
        c in expseq_strategy(Domain::Nat, 8),
    ) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&ExpSeq::unit(Domain::Nat)).unwrap(), a);
    }

    #[test]
    fn int_seq_add_laws(
        a in expseq_strategy(Domain::Int, 8),
        b in expseq_strategy(Domain::Int, 8),
        c in expseq_strategy(Domain::Int, 8),
    ) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&ExpSeq::unit(Domain::Int)).unwrap(), a);
    }

    #[test]
    fn projection_is_a_monoid_morphism(
        part in partition_strategy(Domain::Int),
        a in expseq_strategy(Domain::Int, 24),
        b in expseq_strategy(Domain::Int, 24),
    ) {
        let sum = part.project(&a.add(&b).unwrap()).unwrap();
        let separate: Vec<i64> = part
            .project(&a).unwrap()
            .iter()
            .zip(part.project(&b).unwrap())
            .map(|(x, y)| x + y)
            .collect();
        prop_assert_eq!(sum, separate);
    }

    #[test]
    fn refinement_class_maps_recover_coarse_sums(
        p1 in partition_strategy(Domain::Nat),
        p2 in partition_strategy(Domain::Nat),
        seq in expseq_strategy(Domain::Nat, 24),
    ) {
        let (refined, h1, h2) = p1.refine(&p2).unwrap();
        let fine = refined.project(&seq).unwrap();
        for (coarse, h) in [(&p1, &h1), (&p2, &h2)] {
            let mut sums = vec![0i64; coarse.class_count()];
            for (id, &v) in fine.iter().enumerate() {
                sums[h[id]] += v;
            }
            prop_assert_eq!(sums, coarse.project(&seq).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_is_multiplicative(m in 1u64..10_000, n in 1u64..10_000) {
        let mut primes = Primes::new();
        let lhs = primes.factorize(m * n).unwrap();
        let rhs = primes
            .factorize(m).unwrap()
            .add(&primes.factorize(n).unwrap())
            .unwrap();
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert_eq!(primes.recompose(&lhs).unwrap(), m * n);
    }

    #[test]
    fn rational_factorization_is_multiplicative(
        (a, b) in (1i64..200, 1i64..200),
        (c, d) in (1i64..200, 1i64..200),
    ) {
        let mut primes = Primes::new();
        let q = Rational::new(a, b);
        let r = Rational::new(c, d);
        let lhs = primes.rat_factorize(q * r).unwrap();
        let rhs = primes
            .rat_factorize(q).unwrap()
            .add(&primes.rat_factorize(r).unwrap())
            .unwrap();
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert_eq!(primes.rat_recompose(&lhs).unwrap(), q * r);
    }

    #[test]
    fn pullback_satisfies_the_extensional_law(
        u in up_strategy(6, 4),
        seq in expseq_strategy(Domain::Nat, 12),
    ) {
        // Coarse: one class summing everything; fine: positions split by
        // parity of position into two classes.
        let coarse = GeneratorPartition::one_class(Domain::Nat);
        let fine = GeneratorPartition::new(
            Domain::Nat,
            2,
            0,
            (1..=12i64).filter(|i| i % 2 == 0).map(|i| (i, 1usize)).collect::<BTreeMap<_, _>>(),
        )
        .unwrap();
        let quotient = RectUnion::new(
            vec![CoordKind::Nat],
            vec![vec![ComponentRep::Up(u)]],
        )
        .unwrap();
        // Both fine classes sum into the single coarse class.
        let h = vec![0usize, 0];
        let pulled = pullback_quotient(&quotient, &h, Domain::Nat, 256).unwrap();
        let fine_point: Vec<CoordValue> = fine
            .project(&seq).unwrap()
            .iter()
            .map(|&v| CoordValue::Nat(v as u64))
            .collect();
        let coarse_point: Vec<CoordValue> = coarse
            .project(&seq).unwrap()
            .iter()
            .map(|&v| CoordValue::Nat(v as u64))
            .collect();
        prop_assert_eq!(
            pulled.member(&fine_point).unwrap(),
            quotient.member(&coarse_point).unwrap()
        );
    }
}

/// Pool of small targets for randomized morphism tests.
fn small_targets() -> Vec<FiniteMonoid> {
    vec![
        FiniteMonoid::trivial(),
        FiniteMonoid::cyclic(2),
        FiniteMonoid::cyclic(3),
        FiniteMonoid::cyclic(4),
        FiniteMonoid::m3(),
        FiniteMonoid::cyclic(2).adjoin_zero().unwrap(),
        FiniteMonoid::cyclic(2).direct_product(&FiniteMonoid::cyclic(3)),
        FiniteMonoid::m3().direct_product(&FiniteMonoid::cyclic(2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn morphism_preimages_are_ultimately_periodic(
        target_idx in 0usize..8,
        g_raw in 0usize..12,
        accepting_mask in 0u32..4096,
    ) {
        let target = &small_targets()[target_idx];
        let g = target.element(g_raw % target.size()).unwrap();
        let accepting: BTreeSet<_> = target
            .elements()
            .filter(|e| accepting_mask & (1 << e.index()) != 0)
            .collect();
        let spec = MorphismSpec::new(
            MorphismSource::Nat,
            target.clone(),
            vec![g],
            accepting,
        ).unwrap();
        let up = UltimatelyPeriodicSet::from_morphism(&spec).unwrap();
        for n in 0..=60u64 {
            prop_assert_eq!(up.member(n), spec.is_accepting(target.pow(g, n)));
        }
    }

    #[test]
    fn periodic_preimage_period_divides_the_generator_order(
        order in 1usize..7,
        g_raw in 0usize..7,
        accepting_mask in 0u32..128,
    ) {
        let target = FiniteMonoid::cyclic(order);
        let g = target.element(g_raw % order).unwrap();
        let accepting: BTreeSet<_> = target
            .elements()
            .filter(|e| accepting_mask & (1 << e.index()) != 0)
            .collect();
        let spec = MorphismSpec::new(
            MorphismSource::Int,
            target.clone(),
            vec![g],
            accepting,
        ).unwrap();
        let p = PeriodicSet::from_morphism(&spec).unwrap();
        let g_order = target.element_order(g).unwrap();
        prop_assert_eq!(g_order % p.period(), 0);
        for n in -30..=30i64 {
            prop_assert_eq!(p.member(n), spec.is_accepting(spec.eval_int(n).unwrap()));
        }
    }

    #[test]
    fn rectangle_preimages_agree_with_direct_evaluation(
        target_idx in 0usize..8,
        g_raws in proptest::collection::vec(0usize..12, 1..=3),
        accepting_mask in 0u32..4096,
    ) {
        let target = &small_targets()[target_idx];
        let gens: Vec<_> = g_raws
            .iter()
            .map(|&r| target.element(r % target.size()).unwrap())
            .collect();
        let commute = gens.iter().enumerate().all(|(i, &a)| {
            gens.iter().skip(i + 1).all(|&b| target.mul(a, b) == target.mul(b, a))
        });
        prop_assume!(commute);
        let accepting: BTreeSet<_> = target
            .elements()
            .filter(|e| accepting_mask & (1 << e.index()) != 0)
            .collect();
        let kinds = vec![CoordKind::Nat; gens.len()];
        let rects = hom_preimage_to_rectangles(target, &gens, &accepting, &kinds).unwrap();
        // No rectangle survives normalization with an empty component.
        for rect in rects.rects() {
            prop_assert!(rect.iter().all(|c| !c.is_empty()));
        }
        let side = 9u64;
        let mut point = vec![0u64; gens.len()];
        loop {
            let coords: Vec<CoordValue> = point.iter().map(|&v| CoordValue::Nat(v)).collect();
            let direct =
                morphism_preimage_member(target, &gens, &accepting, &kinds, &coords).unwrap();
            prop_assert_eq!(rects.member(&coords).unwrap(), direct);
            let mut pos = 0;
            loop {
                if pos == point.len() {
                    return Ok(());
                }
                point[pos] += 1;
                if point[pos] <= side {
                    break;
                }
                point[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn rectangle_boolean_laws_hold_on_grids(
        a_mask in 0u32..4096,
        b_mask in 0u32..4096,
    ) {
        let z2 = FiniteMonoid::cyclic(2);
        let z3 = FiniteMonoid::cyclic(3);
        let target = z2.direct_product(&z3);
        // Generators of orders 2 and 3, so the cell grid stays small.
        let one = target.element(3).unwrap();
        let other = target.element(1).unwrap();
        let kinds = vec![CoordKind::Nat, CoordKind::Nat];
        let build = |mask: u32| {
            let accepting: BTreeSet<_> = target
                .elements()
                .filter(|e| mask & (1 << e.index()) != 0)
                .collect();
            hom_preimage_to_rectangles(&target, &[one, other], &accepting, &kinds).unwrap()
        };
        let a = build(a_mask);
        let b = build(b_mask);
        let limits = RectLimits { max_arity: 4, max_rects: 32 };
        let double = a.complement_with(limits).unwrap().complement_with(limits).unwrap();
        prop_assert!(double.equal_with(&a, limits).unwrap());
        for x in 0..=12u64 {
            for y in 0..=12u64 {
                let pt = [CoordValue::Nat(x), CoordValue::Nat(y)];
                let am = a.member(&pt).unwrap();
                let bm = b.member(&pt).unwrap();
                prop_assert_eq!(a.union(&b).unwrap().member(&pt).unwrap(), am || bm);
                prop_assert_eq!(a.intersect(&b).unwrap().member(&pt).unwrap(), am && bm);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop6_outputs_reverify_independently(
        part in partition_strategy(Domain::Nat),
        kind_raw in 0usize..3,
        prop_raw in 0usize..3,
    ) {
        let kind = [
            CounterexampleKind::Length,
            CounterexampleKind::Forall,
            CounterexampleKind::Exists,
        ][kind_raw];
        let p = match prop_raw {
            0 => PropertySpec::even(Domain::Nat),
            1 => PropertySpec::odd(Domain::Nat),
            _ => PropertySpec::multiple_of(Domain::Nat, 3),
        };
        match prop6_counterexample(kind, &p, &part, None, 500) {
            Ok((s1, s2)) => {
                let (inside, outside) = match kind {
                    CounterexampleKind::Length => {
                        (in_length_set(&p, &s1), in_length_set(&p, &s2))
                    }
                    CounterexampleKind::Forall => {
                        (in_forall_set(&p, &s1), in_forall_set(&p, &s2))
                    }
                    CounterexampleKind::Exists => {
                        (in_exists_set(&p, &s1), in_exists_set(&p, &s2))
                    }
                };
                prop_assert!(inside);
                prop_assert!(!outside);
                prop_assert_eq!(part.project(&s1).unwrap(), part.project(&s2).unwrap());
            }
            Err(e) => {
                // Only the degenerate kind/property combinations may refuse.
                let zero_ok = p.holds(0);
                let degenerate = match kind {
                    CounterexampleKind::Length => false,
                    CounterexampleKind::Forall => !zero_ok,
                    CounterexampleKind::Exists => zero_ok,
                };
                prop_assert!(degenerate, "unexpected refusal: {e:?}");
            }
        }
    }

    #[test]
    fn prop8_outputs_reverify_independently(
        part in partition_strategy(Domain::Int),
        kind_raw in 0usize..2,
        prop_raw in 0usize..3,
    ) {
        let kind = [CounterexampleKind::Forall, CounterexampleKind::Exists][kind_raw];
        let p = match prop_raw {
            0 => PropertySpec::even(Domain::Int),
            1 => PropertySpec::nonneg(),
            _ => PropertySpec::multiple_of(Domain::Int, 3),
        };
        match prop8_counterexample(kind, &p, &part, 500) {
            Ok((s1, s2)) => {
                let (inside, outside) = match kind {
                    CounterexampleKind::Forall => {
                        (in_forall_set(&p, &s1), in_forall_set(&p, &s2))
                    }
                    _ => (in_exists_set(&p, &s1), in_exists_set(&p, &s2)),
                };
                prop_assert!(inside);
                prop_assert!(!outside);
                prop_assert_eq!(part.project(&s1).unwrap(), part.project(&s2).unwrap());
            }
            Err(e) => {
                let zero_ok = p.holds(0);
                let degenerate = match kind {
                    CounterexampleKind::Forall => !zero_ok,
                    _ => zero_ok,
                };
                prop_assert!(degenerate, "unexpected refusal: {e:?}");
            }
        }
    }

    #[test]
    fn recseq_union_and_complement_respect_membership(
        u in up_strategy(4, 2),
        seqs in proptest::collection::vec(expseq_strategy(Domain::Nat, 10), 8),
    ) {
        let partition = GeneratorPartition::new(
            Domain::Nat,
            2,
            0,
            BTreeMap::from([(2i64, 1usize), (5, 1)]),
        )
        .unwrap();
        let quotient = RectUnion::new(
            vec![CoordKind::Nat, CoordKind::Nat],
            vec![vec![ComponentRep::full(CoordKind::Nat), ComponentRep::Up(u)]],
        )
        .unwrap();
        let s = RecSeqSet::new(partition, quotient).unwrap();
        let complement = s.complement().unwrap();
        let both = s.union(&complement).unwrap();
        for seq in &seqs {
            prop_assert_eq!(s.member(seq).unwrap(), !complement.member(seq).unwrap());
            prop_assert!(both.member(seq).unwrap());
        }
    }
}

#[test]
fn catalog_divisibility_invariants() {
    for m in monoid::catalog(3).unwrap() {
        for g in m.elements() {
            let e = m.omega_power(g);
            assert!(m.is_idempotent(e));
            assert_eq!(e, m.factorial_power(g));
        }
        for d in m.divisible_elements() {
            assert!(m.is_idempotent(d));
        }
    }
}

#[test]
fn catalog_products_have_factorable_idempotents() {
    let z3 = FiniteMonoid::cyclic(3);
    let m3 = FiniteMonoid::m3();
    let prod = z3.direct_product(&m3);
    let got: BTreeSet<usize> = prod.idempotents().iter().map(|e| e.index()).collect();
    let expect: BTreeSet<usize> = z3
        .idempotents()
        .iter()
        .flat_map(|a| {
            m3.idempotents()
                .iter()
                .map(|b| a.index() * m3.size() + b.index())
                .collect::<Vec<_>>()
        })
        .collect();
    assert_eq!(got, expect);
}

#[test]
fn sigma_indexing_matches_prime_positions() {
    let mut primes = Primes::new();
    // sigma(i) is the factorization of the i-th prime.
    for i in 1..=10u64 {
        let p = primes.nth(i);
        assert_eq!(primes.factorize(p).unwrap(), sigma_nat(i));
    }
}
