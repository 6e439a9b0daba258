//! The brute-force verification harness.
//!
//! Each check enumerates or samples instances, compares a symbolic
//! representation against independent direct evaluation, and reports the
//! first counterexamples it finds. All randomness is seeded, so a report is
//! reproducible from its seed. Fault injection flips one targeted check to
//! prove the checks can fail.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use reczoo_core::monoid::{self, ElementIndex, FiniteMonoid};
use reczoo_core::morphism::{MorphismSource, MorphismSpec};
use reczoo_core::rect::{
    hom_preimage_to_rectangles, morphism_preimage_member, ComponentRep, CoordKind, CoordValue,
    RectUnion,
};
use reczoo_core::registry::{adjoin_zero_rec, divisibility_flag_audit, rec_lattice, NumberMonoidId};
use reczoo_core::seq::{
    in_exists_set, in_forall_set, in_length_set, prop6_counterexample, prop7_lengthen,
    prop8_counterexample, saturation_check, separation_witness, sx_build, CounterexampleKind,
    Domain, ExpSeq, GeneratorPartition, Predicate, Primes, PropertySpec, RecSeqSet, SeqError,
};
use reczoo_core::{PeriodicSet, UltimatelyPeriodicSet};

/// Negative controls: each mode corrupts exactly one check's comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FaultMode {
    /// Flips the direct evaluation at n = 1 in the ultimately-periodic check.
    UpMembership,
    /// Evaluates negative inputs without the inverse in the periodic check.
    PeriodicInverse,
    /// Injects a non-idempotent element into the divisible set.
    DivisibilityWitness,
    /// Drops the first rectangle before the grid comparison.
    MezeiCell,
    /// Perturbs one projection coordinate during witness re-verification.
    SequenceProjection,
    /// Drops the last element of every computed lattice.
    RegistryLattice,
}

impl FaultMode {
    pub const ALL: [FaultMode; 6] = [
        FaultMode::UpMembership,
        FaultMode::PeriodicInverse,
        FaultMode::DivisibilityWitness,
        FaultMode::MezeiCell,
        FaultMode::SequenceProjection,
        FaultMode::RegistryLattice,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            FaultMode::UpMembership => "up-membership",
            FaultMode::PeriodicInverse => "periodic-inverse",
            FaultMode::DivisibilityWitness => "divisibility-witness",
            FaultMode::MezeiCell => "mezei-cell",
            FaultMode::SequenceProjection => "sequence-projection",
            FaultMode::RegistryLattice => "registry-lattice",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<FaultMode> {
        FaultMode::ALL.into_iter().find(|m| m.cli_name() == name)
    }

    /// The check this fault targets.
    pub fn target(self) -> CheckId {
        match self {
            FaultMode::UpMembership => CheckId::Up,
            FaultMode::PeriodicInverse => CheckId::Periodic,
            FaultMode::DivisibilityWitness => CheckId::Divisibility,
            FaultMode::MezeiCell => CheckId::Mezei,
            FaultMode::SequenceProjection => CheckId::Sequence,
            FaultMode::RegistryLattice => CheckId::Registry,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckId {
    Up,
    Periodic,
    Divisibility,
    Mezei,
    Sequence,
    Registry,
}

impl CheckId {
    pub const ALL: [CheckId; 6] = [
        CheckId::Up,
        CheckId::Periodic,
        CheckId::Divisibility,
        CheckId::Mezei,
        CheckId::Sequence,
        CheckId::Registry,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            CheckId::Up => "up",
            CheckId::Periodic => "periodic",
            CheckId::Divisibility => "divisibility",
            CheckId::Mezei => "mezei",
            CheckId::Sequence => "sequence",
            CheckId::Registry => "registry",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.cli_name() == name)
    }

    fn statement(self) -> &'static str {
        match self {
            CheckId::Up => {
                "preimages from the naturals are ultimately periodic and round-trip \
                 through the syntactic morphism"
            }
            CheckId::Periodic => {
                "preimages from the integers are periodic with period dividing the \
                 generator order"
            }
            CheckId::Divisibility => {
                "omega powers are idempotent and equal the factorial power; factorial \
                 powers exhaust the divisible elements, all idempotent"
            }
            CheckId::Mezei => {
                "rectangle preimages agree with direct product-morphism evaluation on \
                 full grids, and the rectangle algebra obeys the Boolean laws"
            }
            CheckId::Sequence => {
                "witness pairs re-verify independently, lengthening preserves \
                 membership while growing the prime support, morphisms are saturated \
                 by their generator partitions, and bounded index families separate"
            }
            CheckId::Registry => {
                "the finite lattices match their goldens, are closed under Boolean \
                 operations, and double under zero adjunction"
            }
        }
    }
}

/// Bounds and switches for a verification run.
#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub seed: u64,
    pub fault: Option<FaultMode>,
    /// Exhaustive monoid enumeration cap (at most 3).
    pub max_exhaustive_size: usize,
    /// Membership comparison range for the ultimately-periodic check.
    pub up_max_n: u64,
    /// Accepting subsets are enumerated exhaustively up to this monoid size
    /// and sampled (64 per generator) beyond it.
    pub exhaustive_subset_size: usize,
    /// Symmetric membership range for the periodic check.
    pub periodic_range: i64,
    pub mezei_specs: usize,
    pub mezei_k_max: usize,
    pub saturation_morphisms: usize,
    pub saturation_max_len: usize,
    pub witness_trials: usize,
    pub lengthen_trials: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            seed: 0xA11CE,
            fault: None,
            max_exhaustive_size: 3,
            up_max_n: 60,
            exhaustive_subset_size: 6,
            periodic_range: 500,
            mezei_specs: 220,
            mezei_k_max: 3,
            saturation_morphisms: 110,
            saturation_max_len: 6,
            witness_trials: 120,
            lengthen_trials: 30,
        }
    }
}

impl OracleConfig {
    /// A faster configuration for the negative-control sweeps.
    pub fn quick(seed: u64, fault: Option<FaultMode>) -> Self {
        OracleConfig {
            seed,
            fault,
            up_max_n: 24,
            periodic_range: 48,
            mezei_specs: 30,
            saturation_morphisms: 12,
            saturation_max_len: 4,
            witness_trials: 24,
            lengthen_trials: 6,
            ..OracleConfig::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: CheckId,
    pub statement: String,
    pub params: String,
    pub instances: u64,
    pub failures: Vec<String>,
    pub wall_ms: u128,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub fault: Option<FaultMode>,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {} (seed {})", self.suite, self.seed);
        if let Some(fault) = self.fault {
            let _ = writeln!(out, "fault injected: {}", fault.cli_name());
        }
        for check in &self.checks {
            let verdict = if check.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "[{verdict}] {}: {} instances in {} ms ({})",
                check.id.cli_name(),
                check.instances,
                check.wall_ms,
                check.params,
            );
            for failure in check.failures.iter().take(5) {
                let _ = writeln!(out, "       counterexample: {failure}");
            }
        }
        let overall = if self.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "overall: {overall}");
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// A bounded failure recorder: keeps the first few counterexamples.
struct Failures {
    list: Vec<String>,
    total: u64,
}

impl Failures {
    fn new() -> Self {
        Failures {
            list: Vec::new(),
            total: 0,
        }
    }

    fn push(&mut self, message: impl FnOnce() -> String) {
        self.total += 1;
        if self.list.len() < 8 {
            self.list.push(message());
        }
    }
}

fn finish(
    id: CheckId,
    params: String,
    instances: u64,
    failures: Failures,
    start: Instant,
) -> CheckRecord {
    let mut list = failures.list;
    if failures.total > list.len() as u64 {
        list.push(format!("... and {} more", failures.total - list.len() as u64));
    }
    CheckRecord {
        id,
        statement: id.statement().to_string(),
        params,
        instances,
        failures: list,
        wall_ms: start.elapsed().as_millis(),
    }
}

fn catalog_for(cfg: &OracleConfig) -> Vec<FiniteMonoid> {
    monoid::catalog(cfg.max_exhaustive_size).expect("catalog size is capped in the config")
}

fn monoid_label(m: &FiniteMonoid) -> String {
    m.name().map_or_else(|| format!("size-{}", m.size()), str::to_string)
}

/// Accepting subsets: exhaustive for small monoids, seeded samples beyond.
fn accepting_subsets(
    m: &FiniteMonoid,
    cfg: &OracleConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<BTreeSet<ElementIndex>> {
    if m.size() <= cfg.exhaustive_subset_size {
        (0u64..(1 << m.size()))
            .map(|mask| {
                m.elements()
                    .filter(|e| mask & (1 << e.index()) != 0)
                    .collect()
            })
            .collect()
    } else {
        (0..64)
            .map(|_| {
                m.elements()
                    .filter(|_| rng.random_bool(0.5))
                    .collect()
            })
            .collect()
    }
}

/// Membership characterization over the naturals, both directions.
pub fn verify_up_characterization(cfg: &OracleConfig) -> CheckRecord {
    let start = Instant::now();
    let fault = cfg.fault == Some(FaultMode::UpMembership);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5550);
    let mut failures = Failures::new();
    let mut instances = 0u64;

    // Forward: every morphism preimage is an ultimately periodic set that
    // matches direct evaluation.
    for m in catalog_for(cfg) {
        for g in m.elements() {
            for accepting in accepting_subsets(&m, cfg, &mut rng) {
                instances += 1;
                let spec =
                    MorphismSpec::new(MorphismSource::Nat, m.clone(), vec![g], accepting.clone())
                        .expect("catalog specs are valid");
                let up = UltimatelyPeriodicSet::from_morphism(&spec).expect("nat source");
                let canonical = UltimatelyPeriodicSet::new(
                    up.threshold(),
                    up.period(),
                    up.prefix().clone(),
                    up.residues().clone(),
                )
                .expect("canonical parts");
                if canonical != up {
                    failures.push(|| format!("non-canonical output for {}", monoid_label(&m)));
                    continue;
                }
                for n in 0..=cfg.up_max_n {
                    let mut direct = spec.is_accepting(m.pow(g, n));
                    if fault && n == 1 {
                        direct = !direct;
                    }
                    if up.member(n) != direct {
                        let label = monoid_label(&m);
                        failures.push(|| {
                            format!("{label} g={} acc-size={} at n={n}", g, accepting.len())
                        });
                        break;
                    }
                }
            }
        }
    }

    // Backward: every canonical set with small parameters round-trips
    // through its syntactic morphism.
    let mut seen = BTreeSet::new();
    for period in 1..=6u64 {
        for threshold in 0..=6u64 {
            for residue_mask in 0u64..(1 << period) {
                for prefix_mask in 0u64..(1 << (threshold + 1)) {
                    let residues = (0..period).filter(|r| residue_mask & (1 << r) != 0).collect();
                    let prefix = (0..=threshold).filter(|n| prefix_mask & (1 << n) != 0).collect();
                    let u = UltimatelyPeriodicSet::new(threshold, period, prefix, residues)
                        .expect("valid parts");
                    if !seen.insert(u.clone()) {
                        continue;
                    }
                    instances += 1;
                    let spec = u.to_syntactic_morphism();
                    let back = UltimatelyPeriodicSet::from_morphism(&spec).expect("nat source");
                    if back != u {
                        failures.push(|| format!("round-trip failed for {u:?}"));
                    }
                }
            }
        }
    }

    let params = format!(
        "catalog + membership on n <= {}, round-trips for p <= 6, n0 <= 6{}",
        cfg.up_max_n,
        if cfg.up_max_n == 0 { " (vacuous membership comparison)" } else { "" },
    );
    finish(CheckId::Up, params, instances, failures, start)
}

/// Membership characterization over the integers via finite groups.
pub fn verify_periodic_characterization(cfg: &OracleConfig) -> CheckRecord {
    let start = Instant::now();
    let fault = cfg.fault == Some(FaultMode::PeriodicInverse);
    let mut failures = Failures::new();
    let mut instances = 0u64;

    for m in catalog_for(cfg) {
        if !m.is_group() || m.size() > 6 {
            continue;
        }
        for g in m.elements() {
            let order = m.element_order(g).expect("group");
            for mask in 0u64..(1 << m.size()) {
                let accepting: BTreeSet<ElementIndex> = m
                    .elements()
                    .filter(|e| mask & (1 << e.index()) != 0)
                    .collect();
                instances += 1;
                let spec =
                    MorphismSpec::new(MorphismSource::Int, m.clone(), vec![g], accepting.clone())
                        .expect("group elements are invertible");
                let periodic = PeriodicSet::from_morphism(&spec).expect("int source");
                if order % periodic.period() != 0 {
                    let label = monoid_label(&m);
                    failures.push(|| {
                        format!("{label}: period {} does not divide order {order}", periodic.period())
                    });
                    continue;
                }
                for n in -cfg.periodic_range..=cfg.periodic_range {
                    let direct = if fault && n < 0 {
                        // Corrupted route: forgets the inverse.
                        spec.is_accepting(m.pow(g, n.unsigned_abs()))
                    } else {
                        spec.is_accepting(spec.eval_int(n).expect("int source"))
                    };
                    if periodic.member(n) != direct {
                        let label = monoid_label(&m);
                        failures.push(|| format!("{label} g={g} mask={mask} at n={n}"));
                        break;
                    }
                }
            }
        }
    }

    let params = format!(
        "catalog groups of order <= 6, all accepting subsets, |n| <= {}",
        cfg.periodic_range
    );
    finish(CheckId::Periodic, params, instances, failures, start)
}

/// Idempotent-power facts on the whole catalog.
pub fn verify_divisibility_lemma(cfg: &OracleConfig) -> CheckRecord {
    let start = Instant::now();
    let fault = cfg.fault == Some(FaultMode::DivisibilityWitness);
    let mut failures = Failures::new();
    let mut instances = 0u64;

    for m in catalog_for(cfg) {
        for g in m.elements() {
            instances += 1;
            let omega = m.omega_power(g);
            if !m.is_idempotent(omega) || omega != m.factorial_power(g) {
                let label = monoid_label(&m);
                failures.push(|| format!("{label}: omega power of {g} is inconsistent"));
            }
        }
        let mut divisible = m.divisible_elements();
        if fault {
            if let Some(bad) = m.elements().find(|&e| !m.is_idempotent(e)) {
                divisible.insert(bad);
            }
        }
        for e in divisible {
            instances += 1;
            if !m.is_idempotent(e) {
                let label = monoid_label(&m);
                failures.push(|| format!("{label}: divisible element {e} is not idempotent"));
            }
        }
    }

    let params = "full catalog (exhaustive strata + curated + products)".to_string();
    finish(CheckId::Divisibility, params, instances, failures, start)
}

/// Per-coordinate membership masks for one rectangle over a grid.
struct GridRect {
    masks: Vec<Vec<bool>>,
}

fn grid_values(kind: CoordKind, side: u64) -> Vec<CoordValue> {
    match kind {
        CoordKind::Nat => (0..=side).map(CoordValue::Nat).collect(),
        CoordKind::Int => (-(side as i64)..=side as i64).map(CoordValue::Int).collect(),
        _ => unreachable!("grids only cover numeric coordinates"),
    }
}

/// Randomized constructive-direction checks against direct evaluation.
pub fn verify_mezei(cfg: &OracleConfig) -> CheckRecord {
    let start = Instant::now();
    let fault = cfg.fault == Some(FaultMode::MezeiCell);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x3E2E);
    let mut failures = Failures::new();
    let mut instances = 0u64;
    let catalog = catalog_for(cfg);

    for spec_index in 0..cfg.mezei_specs {
        let m = catalog.choose(&mut rng).expect("catalog nonempty").clone();
        let k = rng.random_range(1..=cfg.mezei_k_max);
        // Random commuting generator images; a constant tuple always works.
        let mut gens: Vec<ElementIndex> = Vec::new();
        'search: for _ in 0..40 {
            let candidate: Vec<ElementIndex> = (0..k)
                .map(|_| m.element(rng.random_range(0..m.size())).expect("in range"))
                .collect();
            let commutes = candidate.iter().enumerate().all(|(i, &a)| {
                candidate[i + 1..]
                    .iter()
                    .all(|&b| m.mul(a, b) == m.mul(b, a))
            });
            if commutes {
                gens = candidate;
                break 'search;
            }
        }
        if gens.is_empty() {
            let g = m.element(rng.random_range(0..m.size())).expect("in range");
            gens = vec![g; k];
        }
        let kinds: Vec<CoordKind> = gens
            .iter()
            .map(|&g| {
                if m.invert(g).is_ok() && rng.random_bool(0.4) {
                    CoordKind::Int
                } else {
                    CoordKind::Nat
                }
            })
            .collect();
        let accepting: BTreeSet<ElementIndex> =
            m.elements().filter(|_| rng.random_bool(0.5)).collect();

        let rects = match hom_preimage_to_rectangles(&m, &gens, &accepting, &kinds) {
            Ok(r) => r,
            Err(e) => {
                failures.push(|| format!("spec {spec_index}: construction failed: {e}"));
                continue;
            }
        };
        let mut rect_list: Vec<Vec<ComponentRep>> = rects.rects().to_vec();
        if fault && !rect_list.is_empty() {
            rect_list.remove(0);
        }

        // Grid side: max tail + 3 * lcm of the cycles.
        let mut tail_max = 0u64;
        let mut lcm = 1u64;
        for &g in &gens {
            let (t, c) = m.power_lasso(g);
            tail_max = tail_max.max(t);
            lcm = num_integer::lcm(lcm, c);
        }
        let side = tail_max + 3 * lcm;
        let axes: Vec<Vec<CoordValue>> = kinds.iter().map(|&kind| grid_values(kind, side)).collect();

        // Cache per-rectangle membership along each axis.
        let grid_rects: Vec<GridRect> = rect_list
            .iter()
            .map(|rect| GridRect {
                masks: rect
                    .iter()
                    .zip(&axes)
                    .map(|(component, axis)| {
                        axis.iter()
                            .map(|&v| component.member(v).expect("kind-checked"))
                            .collect()
                    })
                    .collect(),
            })
            .collect();

        instances += 1;
        let mut point = vec![0usize; k];
        let mut mismatch = false;
        let mut spot_checks = 0u32;
        'grid: loop {
            let coords: Vec<CoordValue> =
                point.iter().zip(&axes).map(|(&i, axis)| axis[i]).collect();
            let direct = morphism_preimage_member(&m, &gens, &accepting, &kinds, &coords)
                .expect("matching kinds");
            let from_rects = grid_rects
                .iter()
                .any(|r| r.masks.iter().zip(&point).all(|(mask, &i)| mask[i]));
            if direct != from_rects {
                mismatch = true;
                let label = monoid_label(&m);
                failures.push(|| format!("spec {spec_index} over {label}: mismatch at {coords:?}"));
                break 'grid;
            }
            // Exercise the library membership route on a few points too.
            if spot_checks < 16 && !fault {
                spot_checks += 1;
                if rects.member(&coords).expect("kind-checked") != from_rects {
                    mismatch = true;
                    failures.push(|| format!("spec {spec_index}: cached masks disagree with rect membership"));
                    break 'grid;
                }
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    break 'grid;
                }
                point[pos] += 1;
                if point[pos] < axes[pos].len() {
                    break;
                }
                point[pos] = 0;
                pos += 1;
            }
        }
        let _ = mismatch;

        // Boolean laws on small unions of the same signature.
        if rects.rects().len() <= 6 && !fault {
            let other_accepting: BTreeSet<ElementIndex> =
                m.elements().filter(|_| rng.random_bool(0.5)).collect();
            if let Ok(other) = hom_preimage_to_rectangles(&m, &gens, &other_accepting, &kinds) {
                if other.rects().len() <= 6 {
                    instances += 1;
                    let limits = reczoo_core::rect::RectLimits {
                        max_arity: 4,
                        max_rects: 64,
                    };
                    let ok = (|| -> Result<bool, reczoo_core::rect::RectError> {
                        let a = &rects;
                        let b = &other;
                        let double = a.complement_with(limits)?.complement_with(limits)?;
                        if !double.equal_with(a, limits)? {
                            return Ok(false);
                        }
                        let de_morgan = a
                            .union(b)?
                            .complement_with(limits)?
                            .equal_with(&a.complement_with(limits)?.intersect(&b.complement_with(limits)?)?, limits)?;
                        Ok(de_morgan)
                    })();
                    match ok {
                        Ok(true) => {}
                        Ok(false) => {
                            failures.push(|| format!("spec {spec_index}: Boolean law violated"))
                        }
                        Err(reczoo_core::rect::RectError::BlowupCapExceeded { .. }) => {}
                        Err(e) => failures.push(|| format!("spec {spec_index}: {e}")),
                    }
                }
            }
        }
    }

    let params = format!(
        "{} seeded specs, k <= {}, grids [0, t+3*lcm]^k",
        cfg.mezei_specs, cfg.mezei_k_max
    );
    finish(CheckId::Mezei, params, instances, failures, start)
}

fn random_partition(
    rng: &mut ChaCha8Rng,
    domain: Domain,
    max_classes: usize,
    support_limit: u64,
) -> GeneratorPartition {
    let support_size = rng.random_range(0..=6);
    let mut raw = std::collections::BTreeMap::new();
    for _ in 0..support_size {
        let index = rng.random_range(1..=support_limit) as i64;
        let class = rng.random_range(0..max_classes);
        raw.insert(index, class);
    }
    // Densify labels so no class is empty.
    let mut labels: Vec<usize> = raw.values().copied().collect();
    labels.push(0);
    labels.sort_unstable();
    labels.dedup();
    let explicit: std::collections::BTreeMap<i64, usize> = raw
        .into_iter()
        .map(|(idx, class)| {
            let dense = labels.binary_search(&class).expect("present");
            let key = if domain == Domain::Int && rng.random_bool(0.25) {
                -idx
            } else {
                idx
            };
            (key, dense)
        })
        .collect();
    let default = labels.binary_search(&0).expect("pushed");
    GeneratorPartition::new(domain, labels.len(), default, explicit)
        .expect("densified partitions are valid")
}

fn expected_rejection(p: &PropertySpec, kind: CounterexampleKind, err: &SeqError) -> bool {
    let zero_ok = p.holds(0);
    match err {
        SeqError::CertificateExhausted(_) => true,
        SeqError::SeedNotInX => match kind {
            CounterexampleKind::Length => false,
            CounterexampleKind::Forall => !zero_ok,
            CounterexampleKind::Exists => zero_ok,
        },
        _ => false,
    }
}

/// Witness constructors, lengthening, saturation and index-family
/// separation, all re-verified by direct evaluation.
pub fn verify_sequence_props(cfg: &OracleConfig) -> CheckRecord {
    let start = Instant::now();
    let fault = cfg.fault == Some(FaultMode::SequenceProjection);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5EC5);
    let mut failures = Failures::new();
    let mut instances = 0u64;
    let catalog = catalog_for(cfg);
    let mut primes = Primes::new();

    // Perturbs the second projection when the fault is active.
    let reverify = |p: &PropertySpec,
                    part: &GeneratorPartition,
                    kind: CounterexampleKind,
                    s1: &ExpSeq,
                    s2: &ExpSeq|
     -> Result<(), String> {
        let (inside, outside) = match kind {
            CounterexampleKind::Length => (in_length_set(p, s1), in_length_set(p, s2)),
            CounterexampleKind::Forall => (in_forall_set(p, s1), in_forall_set(p, s2)),
            CounterexampleKind::Exists => (in_exists_set(p, s1), in_exists_set(p, s2)),
        };
        if !inside {
            return Err("s1 is not in the set".to_string());
        }
        if outside {
            return Err("s2 is in the set".to_string());
        }
        let pi1 = part.project(s1).map_err(|e| e.to_string())?;
        let mut pi2 = part.project(s2).map_err(|e| e.to_string())?;
        if fault {
            pi2[0] += 1;
        }
        if pi1 != pi2 {
            return Err(format!("projections differ: {pi1:?} vs {pi2:?}"));
        }
        Ok(())
    };

    // Witness constructors over both domains.
    let nat_props = [
        PropertySpec::even(Domain::Nat),
        PropertySpec::multiple_of(Domain::Nat, 3),
        PropertySpec::prime_with_bound(1000),
    ];
    let int_props = [
        PropertySpec::even(Domain::Int),
        PropertySpec::multiple_of(Domain::Int, 3),
        PropertySpec::nonneg(),
    ];
    let mut produced = 0u64;
    let mut rejected = 0u64;
    while instances < cfg.witness_trials as u64 {
        let part_nat = random_partition(&mut rng, Domain::Nat, 5, 50);
        for p in &nat_props {
            for kind in [
                CounterexampleKind::Length,
                CounterexampleKind::Forall,
                CounterexampleKind::Exists,
            ] {
                instances += 1;
                match prop6_counterexample(kind, p, &part_nat, None, 2000) {
                    Ok((s1, s2)) => {
                        produced += 1;
                        if let Err(why) = reverify(p, &part_nat, kind, &s1, &s2) {
                            failures.push(|| format!("{} {kind:?}: {why}", p.name()));
                        }
                    }
                    Err(e) if expected_rejection(p, kind, &e) => rejected += 1,
                    Err(e) => failures.push(|| format!("{} {kind:?}: unexpected {e}", p.name())),
                }
            }
        }
        let part_int = random_partition(&mut rng, Domain::Int, 5, 50);
        for p in &int_props {
            for kind in [CounterexampleKind::Forall, CounterexampleKind::Exists] {
                instances += 1;
                match prop8_counterexample(kind, p, &part_int, 2000) {
                    Ok((s1, s2)) => {
                        produced += 1;
                        if let Err(why) = reverify(p, &part_int, kind, &s1, &s2) {
                            failures.push(|| format!("{} {kind:?}: {why}", p.name()));
                        }
                    }
                    Err(e) if expected_rejection(p, kind, &e) => rejected += 1,
                    Err(e) => failures.push(|| format!("{} {kind:?}: unexpected {e}", p.name())),
                }
            }
        }
    }
    if produced == 0 {
        failures.push(|| "no witness pair was ever produced".to_string());
    }

    // A trivial property must exhaust its certificate everywhere.
    let trivial = PropertySpec::new("always", Domain::Nat, Predicate::Fn(|_| true), 32);
    for kind in [
        CounterexampleKind::Length,
        CounterexampleKind::Forall,
        CounterexampleKind::Exists,
    ] {
        instances += 1;
        match prop6_counterexample(kind, &trivial, &GeneratorPartition::one_class(Domain::Nat), None, 200)
        {
            Err(SeqError::CertificateExhausted(_)) => rejected += 1,
            other => failures.push(|| format!("trivial property {kind:?}: got {other:?}")),
        }
    }

    // Lengthening: strict growth, preserved membership, growing support.
    for trial in 0..cfg.lengthen_trials {
        let part = random_partition(&mut rng, Domain::Int, 3, 8);
        let entries: Vec<i64> = (0..rng.random_range(0..5))
            .map(|_| rng.random_range(-3..=3))
            .collect();
        let seq0 = ExpSeq::new(Domain::Int, entries).expect("int entries");
        let coords = part.project(&seq0).expect("same domain");
        let quotient_rect: Vec<ComponentRep> = coords
            .iter()
            .map(|&v| {
                let p = rng.random_range(1..=4u64);
                ComponentRep::Per(
                    PeriodicSet::new(p, BTreeSet::from([v.rem_euclid(p as i64) as u64]))
                        .expect("valid parts"),
                )
            })
            .collect();
        let quotient = RectUnion::new(
            vec![CoordKind::Int; part.class_count()],
            vec![quotient_rect],
        )
        .expect("matching signature");
        let set = RecSeqSet::new(part, quotient).expect("matching partition");

        let mut current = seq0;
        for step in 0..5 {
            instances += 1;
            let target = current.len().max(step as u64);
            match prop7_lengthen(&set, &current, target) {
                Ok(next) => {
                    if next.len() <= target {
                        failures.push(|| format!("lengthen trial {trial}: no growth at step {step}"));
                        break;
                    }
                    match set.member(&next) {
                        Ok(true) => {}
                        other => {
                            failures.push(|| {
                                format!("lengthen trial {trial}: membership lost at step {step}: {other:?}")
                            });
                            break;
                        }
                    }
                    // The rewrite touches fresh positions, so the rational
                    // picks up primes outside the previous support.
                    let before: BTreeSet<u64> = Primes::support(&current).into_iter().collect();
                    let after: BTreeSet<u64> = Primes::support(&next).into_iter().collect();
                    if !after.is_superset(&before) || after.len() <= before.len() {
                        failures.push(|| format!("lengthen trial {trial}: support did not grow"));
                        break;
                    }
                    let q_before = primes.rat_recompose(&current);
                    let q_after = primes.rat_recompose(&next);
                    if let (Ok(a), Ok(b)) = (q_before, q_after) {
                        if a == b {
                            failures.push(|| format!("lengthen trial {trial}: rational unchanged"));
                            break;
                        }
                    }
                    current = next;
                }
                Err(e) => {
                    failures.push(|| format!("lengthen trial {trial} step {step}: {e}"));
                    break;
                }
            }
        }
    }

    // Saturation of random finitely generated morphisms.
    for morphism_index in 0..cfg.saturation_morphisms {
        let m = catalog.choose(&mut rng).expect("catalog nonempty");
        let alphabet = rng.random_range(1..=8usize);
        let images: Vec<ElementIndex> = (0..alphabet)
            .map(|_| m.element(rng.random_range(0..m.size())).expect("in range"))
            .collect();
        let accepting: BTreeSet<ElementIndex> =
            m.elements().filter(|_| rng.random_bool(0.5)).collect();
        instances += 1;
        let report = saturation_check(m, &images, &accepting, cfg.saturation_max_len);
        if !report.is_saturated() {
            let label = monoid_label(m);
            failures.push(|| {
                format!(
                    "morphism {morphism_index} into {label}: {} violations",
                    report.violations.len()
                )
            });
        }
    }

    // Bounded index-family separation: subsets of [-5, 5] without zero, at
    // most three elements each. Families tracking the same positions are
    // the same recognizer (the construction only sees |n|) and are verified
    // to coincide; all others must separate.
    let universe: Vec<i64> = (-5..=5).filter(|&n| n != 0).collect();
    let mut subsets: Vec<BTreeSet<i64>> = vec![BTreeSet::new()];
    for size in 1..=3usize {
        let mut next = Vec::new();
        for s in subsets.iter().filter(|s| s.len() == size - 1) {
            for &n in &universe {
                if s.iter().next_back().is_none_or(|&last| n > last) {
                    let mut bigger = s.clone();
                    bigger.insert(n);
                    next.push(bigger);
                }
            }
        }
        subsets.extend(next);
    }
    let recognizers: Vec<_> = subsets
        .iter()
        .map(|x| sx_build(x).expect("no zero in the universe"))
        .collect();
    let mut separated = 0u64;
    let mut identified = 0u64;
    for i in 0..recognizers.len() {
        for j in i + 1..recognizers.len() {
            instances += 1;
            let (a, b) = (&recognizers[i], &recognizers[j]);
            match separation_witness(a, b) {
                Some(w) => {
                    let in_a = a.member(&w).expect("int domain");
                    let in_b = b.member(&w).expect("int domain");
                    if in_a == in_b {
                        failures.push(|| {
                            format!("families {:?} and {:?} did not separate", subsets[i], subsets[j])
                        });
                    } else {
                        separated += 1;
                    }
                }
                None => {
                    if a.tracked() != b.tracked() {
                        failures.push(|| {
                            format!("no witness for distinct positions {:?} vs {:?}", subsets[i], subsets[j])
                        });
                    } else {
                        identified += 1;
                    }
                }
            }
        }
    }

    let params = format!(
        "witness trials {produced} produced / {rejected} rejected; lengthening x{}; \
         saturation x{} (words <= {}); separation {separated} separated / {identified} \
         same-position pairs",
        cfg.lengthen_trials, cfg.saturation_morphisms, cfg.saturation_max_len
    );
    finish(CheckId::Sequence, params, instances, failures, start)
}

/// Golden lattices, Boolean closure and the zero-adjunction doubling law.
pub fn verify_registry(cfg: &OracleConfig) -> CheckRecord {
    let start = Instant::now();
    let fault = cfg.fault == Some(FaultMode::RegistryLattice);
    let mut failures = Failures::new();
    let mut instances = 0u64;

    let goldens: [(NumberMonoidId, &[&str]); 11] = [
        (NumberMonoidId::AddRat, &["∅", "Q"]),
        (NumberMonoidId::AddReal, &["∅", "R"]),
        (NumberMonoidId::AddComplex, &["∅", "C"]),
        (NumberMonoidId::AddRatNonNeg, &["∅", "{0}", "Q>0", "Q>=0"]),
        (NumberMonoidId::AddRealNonNeg, &["∅", "{0}", "R>0", "R>=0"]),
        (NumberMonoidId::MulRealPos, &["∅", "R>0"]),
        (
            NumberMonoidId::MulRealNonZero,
            &["∅", "R<0", "R>0", "R\\{0}"],
        ),
        (
            NumberMonoidId::MulReal,
            &["∅", "{0}", "R<0", "R<=0", "R>0", "R>=0", "R\\{0}", "R"],
        ),
        (NumberMonoidId::MulComplexNonZero, &["∅", "C\\{0}"]),
        (NumberMonoidId::MulComplex, &["∅", "{0}", "C\\{0}", "C"]),
        (NumberMonoidId::SignZ2, &["∅", "{+1}", "{-1}", "{+1,-1}"]),
    ];
    for (id, expected) in goldens {
        instances += 1;
        let mut lattice = rec_lattice(id).expect("finite lattice");
        if fault {
            lattice.pop();
        }
        let got: Vec<String> = lattice.iter().map(|s| s.to_string()).collect();
        if got != expected {
            failures.push(|| format!("{}: got {:?}", id.cli_name(), got));
            continue;
        }
        // Boolean closure inside the lattice.
        for &a in &lattice {
            instances += 1;
            if !lattice.contains(&a.complement()) {
                failures.push(|| format!("{}: complement of {a} escapes", id.cli_name()));
            }
            for &b in &lattice {
                let u = a.union(b).expect("same monoid");
                let i = a.intersect(b).expect("same monoid");
                if !lattice.contains(&u) || !lattice.contains(&i) {
                    failures.push(|| format!("{}: {a} and {b} escape", id.cli_name()));
                }
            }
        }
    }

    // Divisible groups have exactly the trivial lattice.
    for id in NumberMonoidId::ALL {
        if id.arbitrarily_divisible() && id.is_group() {
            instances += 1;
            let lattice = rec_lattice(id).expect("divisible groups are registered finite");
            if lattice.len() != 2 {
                failures.push(|| format!("{}: expected the trivial lattice", id.cli_name()));
            }
        }
    }

    // Zero adjunction doubles without collisions.
    for (source, target) in [
        (NumberMonoidId::MulRealNonZero, NumberMonoidId::MulReal),
        (NumberMonoidId::MulComplexNonZero, NumberMonoidId::MulComplex),
    ] {
        instances += 1;
        let base = rec_lattice(source).expect("finite");
        let doubled = adjoin_zero_rec(&base).expect("source has no zero");
        let expected = rec_lattice(target).expect("finite");
        let got: BTreeSet<_> = doubled.iter().copied().collect();
        let want: BTreeSet<_> = expected.iter().copied().collect();
        if doubled.len() != 2 * base.len() || got != want {
            failures.push(|| format!("zero adjunction of {} is off", source.cli_name()));
        }
    }

    // The audit table must be fully verified and agree with the flags.
    for entry in divisibility_flag_audit() {
        instances += 1;
        if !entry.verified {
            failures.push(|| format!("audit not verified for {}", entry.id.cli_name()));
        }
        if entry.arbitrarily_divisible != entry.id.arbitrarily_divisible() {
            failures.push(|| format!("audit flag mismatch for {}", entry.id.cli_name()));
        }
    }

    let params = "golden lattices, closure, doubling, audit".to_string();
    finish(CheckId::Registry, params, instances, failures, start)
}

pub fn run_check(id: CheckId, cfg: &OracleConfig) -> CheckRecord {
    match id {
        CheckId::Up => verify_up_characterization(cfg),
        CheckId::Periodic => verify_periodic_characterization(cfg),
        CheckId::Divisibility => verify_divisibility_lemma(cfg),
        CheckId::Mezei => verify_mezei(cfg),
        CheckId::Sequence => verify_sequence_props(cfg),
        CheckId::Registry => verify_registry(cfg),
    }
}

pub fn verify_all(cfg: &OracleConfig) -> VerificationReport {
    VerificationReport {
        suite: "all".to_string(),
        seed: cfg.seed,
        fault: cfg.fault,
        checks: CheckId::ALL.iter().map(|&id| run_check(id, cfg)).collect(),
    }
}

pub fn verify_one(id: CheckId, cfg: &OracleConfig) -> VerificationReport {
    VerificationReport {
        suite: id.cli_name().to_string(),
        seed: cfg.seed,
        fault: cfg.fault,
        checks: vec![run_check(id, cfg)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> OracleConfig {
        OracleConfig::quick(7, None)
    }

    #[test]
    fn clean_run_passes_every_check() {
        let report = verify_all(&quick());
        assert!(report.passed(), "{}", report.render_text());
        for check in &report.checks {
            assert!(check.instances > 0, "{:?} ran nothing", check.id);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = verify_all(&quick());
        let b = verify_all(&quick());
        assert_eq!(a.render_text(), b.render_text());
        for (x, y) in a.checks.iter().zip(&b.checks) {
            assert_eq!(x.instances, y.instances);
        }
    }

    #[test]
    fn each_fault_trips_exactly_its_target() {
        for fault in FaultMode::ALL {
            let cfg = OracleConfig::quick(7, Some(fault));
            let report = verify_all(&cfg);
            for check in &report.checks {
                let should_fail = check.id == fault.target();
                assert_eq!(
                    !check.passed(),
                    should_fail,
                    "fault {:?} vs check {:?}:\n{}",
                    fault,
                    check.id,
                    report.render_text(),
                );
            }
        }
    }
}
