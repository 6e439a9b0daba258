//! The fixed registry of numeric monoids whose recognizable subsets form a
//! finite lattice, handled purely symbolically.
//!
//! Reals and complex numbers never appear as computational values. A carrier
//! is split into finitely many sign cases (zero / positive / negative, or
//! zero / nonzero for the complex numbers), and every set in a finite
//! lattice is a union of such cases, named by an [`Atom`]. All reasoning is
//! case analysis on these tags; there is no floating point anywhere.

use alloc::collections::BTreeSet;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::monoid::{ElementIndex, FiniteMonoid};
use crate::Rational;

/// The closed enumeration of registry monoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NumberMonoidId {
    /// (Z>=0, +, 0)
    AddNat,
    /// (Z, +, 0)
    AddInt,
    /// (Q>=0, +, 0)
    AddRatNonNeg,
    /// (Q, +, 0)
    AddRat,
    /// (R>=0, +, 0)
    AddRealNonNeg,
    /// (R, +, 0)
    AddReal,
    /// (C, +, 0)
    AddComplex,
    /// (N \ {0}, x, 1)
    MulNatPos,
    /// (Z, x, 1)
    MulInt,
    /// (Z \ {0}, x, 1)
    MulIntNonZero,
    /// (Z>0, x, 1) — the same carrier as `MulNatPos`, kept as its own name
    MulIntPos,
    /// (Q>0, x, 1)
    MulRatPos,
    /// (Q \ {0}, x, 1)
    MulRatNonZero,
    /// (Q, x, 1)
    MulRat,
    /// (R>0, x, 1)
    MulRealPos,
    /// (R \ {0}, x, 1)
    MulRealNonZero,
    /// (R, x, 1)
    MulReal,
    /// (C \ {0}, x, 1)
    MulComplexNonZero,
    /// (C, x, 1)
    MulComplex,
    /// ({+1, -1}, x, 1)
    SignZ2,
}

/// Sign case of a carrier element; the atoms of the symbolic case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    Zero,
    Positive,
    Negative,
    /// Used for carriers without an order (the complex numbers).
    NonZero,
}

/// How a carrier splits into cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    /// Ordered line containing zero: Z, Q, R.
    FullLine,
    /// Non-negative half line including zero.
    NonNegative,
    /// Strictly positive half line.
    PositiveOnly,
    /// Ordered line with zero removed.
    NonZeroLine,
    /// Complex plane.
    Complex,
    /// Complex plane with zero removed.
    ComplexNonZero,
    /// The two-element sign group.
    Sign,
}

impl Carrier {
    pub fn cases(self) -> &'static [CaseTag] {
        match self {
            Carrier::FullLine => &[CaseTag::Zero, CaseTag::Positive, CaseTag::Negative],
            Carrier::NonNegative => &[CaseTag::Zero, CaseTag::Positive],
            Carrier::PositiveOnly => &[CaseTag::Positive],
            Carrier::NonZeroLine => &[CaseTag::Positive, CaseTag::Negative],
            Carrier::Complex => &[CaseTag::Zero, CaseTag::NonZero],
            Carrier::ComplexNonZero => &[CaseTag::NonZero],
            Carrier::Sign => &[CaseTag::Positive, CaseTag::Negative],
        }
    }
}

/// Named subsets of a carrier. Only atoms meaningful for the carrier are
/// admissible; admissible atoms correspond one-to-one with unions of the
/// carrier's cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Empty,
    All,
    /// The singleton `{0}`.
    Zero,
    Positive,
    Negative,
    NonNegative,
    NonPositive,
    NonZero,
}

impl Atom {
    pub const ALL: [Atom; 8] = [
        Atom::Empty,
        Atom::All,
        Atom::Zero,
        Atom::Positive,
        Atom::Negative,
        Atom::NonNegative,
        Atom::NonPositive,
        Atom::NonZero,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            Atom::Empty => "empty",
            Atom::All => "all",
            Atom::Zero => "zero",
            Atom::Positive => "positive",
            Atom::Negative => "negative",
            Atom::NonNegative => "nonnegative",
            Atom::NonPositive => "nonpositive",
            Atom::NonZero => "nonzero",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<Atom> {
        Atom::ALL.into_iter().find(|a| a.cli_name() == name)
    }
}

/// Case set denoted by an atom on a carrier, or `None` when inadmissible.
///
/// An atom is admissible when its meaning is exactly one of the carrier's
/// case unions and no smaller atom names the same union (for instance
/// `NonNegative` means all of `R>=0` and is therefore written `All` there).
fn atom_cases(carrier: Carrier, atom: Atom) -> Option<BTreeSet<CaseTag>> {
    use Atom::*;
    use CaseTag as C;
    let set = |tags: &[CaseTag]| Some(tags.iter().copied().collect());
    match (carrier, atom) {
        (_, Empty) => set(&[]),
        (_, All) => Some(carrier.cases().iter().copied().collect()),
        (Carrier::FullLine, Zero) => set(&[C::Zero]),
        (Carrier::FullLine, Positive) => set(&[C::Positive]),
        (Carrier::FullLine, Negative) => set(&[C::Negative]),
        (Carrier::FullLine, NonNegative) => set(&[C::Zero, C::Positive]),
        (Carrier::FullLine, NonPositive) => set(&[C::Zero, C::Negative]),
        (Carrier::FullLine, NonZero) => set(&[C::Positive, C::Negative]),
        (Carrier::NonNegative, Zero) => set(&[C::Zero]),
        (Carrier::NonNegative, Positive) => set(&[C::Positive]),
        (Carrier::NonZeroLine, Positive) => set(&[C::Positive]),
        (Carrier::NonZeroLine, Negative) => set(&[C::Negative]),
        (Carrier::Complex, Zero) => set(&[C::Zero]),
        (Carrier::Complex, NonZero) => set(&[C::NonZero]),
        (Carrier::Sign, Positive) => set(&[C::Positive]),
        (Carrier::Sign, Negative) => set(&[C::Negative]),
        _ => None,
    }
}

/// Inverse of [`atom_cases`]: the atom naming a union of carrier cases.
fn cases_to_atom(carrier: Carrier, cases: &BTreeSet<CaseTag>) -> Atom {
    for atom in Atom::ALL {
        if atom_cases(carrier, atom).as_ref() == Some(cases) {
            return atom;
        }
    }
    unreachable!("every union of carrier cases is named by an atom")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegistryError {
    /// The monoid's recognizable subsets do not form a finite lattice.
    RecNotFinite(NumberMonoidId),
    /// The atom does not name a subset of this carrier.
    AtomInadmissible(NumberMonoidId, Atom),
    /// Zero adjunction requested on a monoid that already has a zero.
    SourceHasZero(NumberMonoidId),
    /// The registry has no zero extension for this monoid.
    NoZeroExtension(NumberMonoidId),
    /// Sets from different monoids were mixed in one operation.
    MixedMonoids,
    EmptyInput,
}

impl fmt::Display for RegistryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegistryError::RecNotFinite(id) => {
                write!(f, "recognizable subsets of {} are not a finite lattice", id.cli_name())
            }
            RegistryError::AtomInadmissible(id, atom) => {
                write!(f, "atom {} is not admissible for {}", atom.cli_name(), id.cli_name())
            }
            RegistryError::SourceHasZero(id) => {
                write!(f, "{} already has a zero element", id.cli_name())
            }
            RegistryError::NoZeroExtension(id) => {
                write!(f, "no zero extension registered for {}", id.cli_name())
            }
            RegistryError::MixedMonoids => write!(f, "sets belong to different monoids"),
            RegistryError::EmptyInput => write!(f, "empty input"),
        }
    }
}

impl core::error::Error for RegistryError {}

impl NumberMonoidId {
    pub const ALL: [NumberMonoidId; 20] = [
        NumberMonoidId::AddNat,
        NumberMonoidId::AddInt,
        NumberMonoidId::AddRatNonNeg,
        NumberMonoidId::AddRat,
        NumberMonoidId::AddRealNonNeg,
        NumberMonoidId::AddReal,
        NumberMonoidId::AddComplex,
        NumberMonoidId::MulNatPos,
        NumberMonoidId::MulInt,
        NumberMonoidId::MulIntNonZero,
        NumberMonoidId::MulIntPos,
        NumberMonoidId::MulRatPos,
        NumberMonoidId::MulRatNonZero,
        NumberMonoidId::MulRat,
        NumberMonoidId::MulRealPos,
        NumberMonoidId::MulRealNonZero,
        NumberMonoidId::MulReal,
        NumberMonoidId::MulComplexNonZero,
        NumberMonoidId::MulComplex,
        NumberMonoidId::SignZ2,
    ];

    pub fn carrier(self) -> Carrier {
        use NumberMonoidId::*;
        match self {
            AddNat | AddRatNonNeg | AddRealNonNeg => Carrier::NonNegative,
            AddInt | MulInt | MulRat | MulReal => Carrier::FullLine,
            AddRat | AddReal => Carrier::FullLine,
            AddComplex | MulComplex => Carrier::Complex,
            MulNatPos | MulIntPos | MulRatPos | MulRealPos => Carrier::PositiveOnly,
            MulIntNonZero | MulRatNonZero | MulRealNonZero => Carrier::NonZeroLine,
            MulComplexNonZero => Carrier::ComplexNonZero,
            SignZ2 => Carrier::Sign,
        }
    }

    /// Every element has a k-th root for every positive k. Note that the
    /// full complex plane qualifies: zero roots to zero and every other
    /// number has complex roots.
    pub fn arbitrarily_divisible(self) -> bool {
        use NumberMonoidId::*;
        matches!(
            self,
            AddRatNonNeg | AddRat | AddRealNonNeg | AddReal | AddComplex
                | MulRealPos
                | MulComplexNonZero
                | MulComplex
        )
    }

    pub fn is_group(self) -> bool {
        use NumberMonoidId::*;
        matches!(
            self,
            AddInt | AddRat | AddReal | AddComplex
                | MulRatPos
                | MulRatNonZero
                | MulRealPos
                | MulRealNonZero
                | MulComplexNonZero
                | SignZ2
        )
    }

    /// Whether the carrier contains an absorbing element (the number 0 for
    /// the multiplicative monoids that keep it; no additive monoid has one).
    pub fn has_zero(self) -> bool {
        use NumberMonoidId::*;
        matches!(self, MulInt | MulRat | MulReal | MulComplex)
    }

    pub fn rec_is_finite(self) -> bool {
        use NumberMonoidId::*;
        matches!(
            self,
            AddRatNonNeg | AddRat | AddRealNonNeg | AddReal | AddComplex
                | MulRealPos
                | MulRealNonZero
                | MulReal
                | MulComplexNonZero
                | MulComplex
                | SignZ2
        )
    }

    /// The registry monoid obtained by adjoining the number 0, if present.
    pub fn zero_extension(self) -> Option<NumberMonoidId> {
        use NumberMonoidId::*;
        match self {
            MulIntNonZero => Some(MulInt),
            MulRatNonZero => Some(MulRat),
            MulRealNonZero => Some(MulReal),
            MulComplexNonZero => Some(MulComplex),
            _ => None,
        }
    }

    /// Stable CLI-facing name.
    pub fn cli_name(self) -> &'static str {
        use NumberMonoidId::*;
        match self {
            AddNat => "add:Z>=0",
            AddInt => "add:Z",
            AddRatNonNeg => "add:Q>=0",
            AddRat => "add:Q",
            AddRealNonNeg => "add:R>=0",
            AddReal => "add:R",
            AddComplex => "add:C",
            MulNatPos => "mul:N>0",
            MulInt => "mul:Z",
            MulIntNonZero => "mul:Z*",
            MulIntPos => "mul:Z>0",
            MulRatPos => "mul:Q>0",
            MulRatNonZero => "mul:Q*",
            MulRat => "mul:Q",
            MulRealPos => "mul:R>0",
            MulRealNonZero => "mul:R*",
            MulReal => "mul:R",
            MulComplexNonZero => "mul:C*",
            MulComplex => "mul:C",
            SignZ2 => "sign:Z2",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<NumberMonoidId> {
        NumberMonoidId::ALL.into_iter().find(|id| id.cli_name() == name)
    }

    /// Carrier symbol used when printing sets, e.g. `R>=0` or `Q`.
    pub fn carrier_symbol(self) -> &'static str {
        use NumberMonoidId::*;
        match self {
            AddNat => "Z>=0",
            AddInt => "Z",
            AddRatNonNeg => "Q>=0",
            AddRat => "Q",
            AddRealNonNeg => "R>=0",
            AddReal => "R",
            AddComplex => "C",
            MulNatPos => "N>0",
            MulInt => "Z",
            MulIntNonZero => "Z\\{0}",
            MulIntPos => "Z>0",
            MulRatPos => "Q>0",
            MulRatNonZero => "Q\\{0}",
            MulRat => "Q",
            MulRealPos => "R>0",
            MulRealNonZero => "R\\{0}",
            MulReal => "R",
            MulComplexNonZero => "C\\{0}",
            MulComplex => "C",
            SignZ2 => "{+1,-1}",
        }
    }

    /// Number-set letter of the carrier, e.g. `R` for both `R` and `R>=0`.
    fn letter(self) -> &'static str {
        use NumberMonoidId::*;
        match self {
            AddNat | AddInt | MulInt | MulIntNonZero | MulIntPos => "Z",
            MulNatPos => "N",
            AddRatNonNeg | AddRat | MulRatPos | MulRatNonZero | MulRat => "Q",
            AddRealNonNeg | AddReal | MulRealPos | MulRealNonZero | MulReal => "R",
            AddComplex | MulComplexNonZero | MulComplex => "C",
            SignZ2 => "",
        }
    }
}

impl fmt::Display for NumberMonoidId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

/// A named subset of a registry monoid's carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolicSet {
    monoid: NumberMonoidId,
    atom: Atom,
}

impl SymbolicSet {
    pub fn new(monoid: NumberMonoidId, atom: Atom) -> Result<Self, RegistryError> {
        if atom_cases(monoid.carrier(), atom).is_none() {
            return Err(RegistryError::AtomInadmissible(monoid, atom));
        }
        Ok(SymbolicSet { monoid, atom })
    }

    pub fn monoid(self) -> NumberMonoidId {
        self.monoid
    }

    pub fn atom(self) -> Atom {
        self.atom
    }

    pub fn cases(self) -> BTreeSet<CaseTag> {
        atom_cases(self.monoid.carrier(), self.atom).expect("admissibility checked at construction")
    }

    pub fn contains_case(self, case: CaseTag) -> bool {
        self.cases().contains(&case)
    }

    pub fn is_empty(self) -> bool {
        self.atom == Atom::Empty
    }

    fn from_cases(monoid: NumberMonoidId, cases: &BTreeSet<CaseTag>) -> Self {
        SymbolicSet {
            monoid,
            atom: cases_to_atom(monoid.carrier(), cases),
        }
    }

    pub fn union(self, other: Self) -> Result<Self, RegistryError> {
        if self.monoid != other.monoid {
            return Err(RegistryError::MixedMonoids);
        }
        let cases = self.cases().union(&other.cases()).copied().collect();
        Ok(Self::from_cases(self.monoid, &cases))
    }

    pub fn intersect(self, other: Self) -> Result<Self, RegistryError> {
        if self.monoid != other.monoid {
            return Err(RegistryError::MixedMonoids);
        }
        let cases = self.cases().intersection(&other.cases()).copied().collect();
        Ok(Self::from_cases(self.monoid, &cases))
    }

    pub fn complement(self) -> Self {
        let all: BTreeSet<CaseTag> = self.monoid.carrier().cases().iter().copied().collect();
        let cases = all.difference(&self.cases()).copied().collect();
        Self::from_cases(self.monoid, &cases)
    }
}

impl fmt::Display for SymbolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.monoid.letter();
        let s = match (self.monoid.carrier(), self.atom) {
            (_, Atom::Empty) => return f.write_str("∅"),
            (_, Atom::All) => return f.write_str(self.monoid.carrier_symbol()),
            (_, Atom::Zero) => return f.write_str("{0}"),
            (Carrier::Sign, Atom::Positive) => return f.write_str("{+1}"),
            (Carrier::Sign, Atom::Negative) => return f.write_str("{-1}"),
            (_, Atom::Positive) => ">0",
            (_, Atom::Negative) => "<0",
            (_, Atom::NonNegative) => ">=0",
            (_, Atom::NonPositive) => "<=0",
            (_, Atom::NonZero) => "\\{0}",
        };
        write!(f, "{x}{s}")
    }
}

fn sets(monoid: NumberMonoidId, atoms: &[Atom]) -> Vec<SymbolicSet> {
    atoms
        .iter()
        .map(|&atom| SymbolicSet::new(monoid, atom).expect("registry atoms are admissible"))
        .collect()
}

/// The exact finite lattice of recognizable subsets, in a fixed documented
/// order (empty set first, full carrier last).
pub fn rec_lattice(id: NumberMonoidId) -> Result<Vec<SymbolicSet>, RegistryError> {
    use Atom::*;
    use NumberMonoidId::*;
    if !id.rec_is_finite() {
        return Err(RegistryError::RecNotFinite(id));
    }
    let atoms: &[Atom] = match id {
        AddRat | AddReal | AddComplex | MulRealPos | MulComplexNonZero => &[Empty, All],
        AddRatNonNeg | AddRealNonNeg => &[Empty, Zero, Positive, All],
        MulRealNonZero => &[Empty, Negative, Positive, All],
        MulReal => &[
            Empty,
            Zero,
            Negative,
            NonPositive,
            Positive,
            NonNegative,
            NonZero,
            All,
        ],
        MulComplex => &[Empty, Zero, NonZero, All],
        SignZ2 => &[Empty, Positive, Negative, All],
        _ => unreachable!("rec_is_finite filtered the rest"),
    };
    Ok(sets(id, atoms))
}

/// Recognizing data for a member of a finite lattice: a tiny monoid, the
/// image of every carrier case, and the accepting subset whose preimage is
/// the set.
#[derive(Debug, Clone)]
pub struct LatticeRecognizer {
    pub monoid: FiniteMonoid,
    pub case_images: Vec<(CaseTag, ElementIndex)>,
    pub accepting: BTreeSet<ElementIndex>,
}

impl LatticeRecognizer {
    /// The cases whose image lands in the accepting set, i.e. the preimage
    /// described symbolically.
    pub fn preimage_cases(&self) -> BTreeSet<CaseTag> {
        self.case_images
            .iter()
            .filter(|(_, e)| self.accepting.contains(e))
            .map(|(c, _)| *c)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct RecognizabilityVerdict {
    pub recognizable: bool,
    /// Present exactly when recognizable.
    pub recognizer: Option<LatticeRecognizer>,
    /// The full lattice, for reference either way.
    pub lattice: Vec<SymbolicSet>,
}

/// Builds the canonical recognizer for each registry monoid with a finite
/// lattice: the trivial monoid for the arbitrarily divisible groups, the
/// two-element semilattice for the non-negative half lines and the complex
/// zero split, the sign group for the ordered nonzero carriers, and the sign
/// group with a zero adjoined for the full real line under multiplication.
fn case_monoid(id: NumberMonoidId) -> (FiniteMonoid, Vec<(CaseTag, ElementIndex)>) {
    use NumberMonoidId::*;
    match id {
        AddRat | AddReal | AddComplex | MulRealPos | MulComplexNonZero => {
            let m = FiniteMonoid::trivial();
            let unit = m.unit();
            let images = id.carrier().cases().iter().map(|&c| (c, unit)).collect();
            (m, images)
        }
        AddRatNonNeg | AddRealNonNeg => {
            let m = FiniteMonoid::trivial().adjoin_zero().expect("no zero yet");
            let e = m.element(1).expect("in range");
            (m.clone(), vec![(CaseTag::Zero, m.unit()), (CaseTag::Positive, e)])
        }
        MulRealNonZero | SignZ2 => {
            let m = FiniteMonoid::cyclic(2);
            let flip = m.element(1).expect("in range");
            (
                m.clone(),
                vec![(CaseTag::Positive, m.unit()), (CaseTag::Negative, flip)],
            )
        }
        MulReal => {
            let m = FiniteMonoid::cyclic(2).adjoin_zero().expect("no zero yet");
            let flip = m.element(1).expect("in range");
            let zero = m.element(2).expect("in range");
            (
                m.clone(),
                vec![
                    (CaseTag::Zero, zero),
                    (CaseTag::Positive, m.unit()),
                    (CaseTag::Negative, flip),
                ],
            )
        }
        MulComplex => {
            let m = FiniteMonoid::trivial().adjoin_zero().expect("no zero yet");
            let zero = m.element(1).expect("in range");
            (
                m.clone(),
                vec![(CaseTag::Zero, zero), (CaseTag::NonZero, m.unit())],
            )
        }
        _ => unreachable!("only finite-lattice monoids have case recognizers"),
    }
}

/// Decides membership of the set in the monoid's finite lattice. Returns the
/// recognizing data when the set is recognizable, and always returns the
/// lattice for reference.
pub fn is_recognizable(s: SymbolicSet) -> Result<RecognizabilityVerdict, RegistryError> {
    let lattice = rec_lattice(s.monoid())?;
    let recognizable = lattice.contains(&s);
    let recognizer = recognizable.then(|| {
        let (monoid, case_images) = case_monoid(s.monoid());
        let cases = s.cases();
        let accepting = case_images
            .iter()
            .filter(|(c, _)| cases.contains(c))
            .map(|(_, e)| *e)
            .collect();
        LatticeRecognizer {
            monoid,
            case_images,
            accepting,
        }
    });
    Ok(RecognizabilityVerdict {
        recognizable,
        recognizer,
        lattice,
    })
}

/// The lattice of the zero extension: every set kept as-is plus every set
/// with the adjoined zero added.
pub fn adjoin_zero_rec(lattice: &[SymbolicSet]) -> Result<Vec<SymbolicSet>, RegistryError> {
    let first = lattice.first().ok_or(RegistryError::EmptyInput)?;
    let id = first.monoid();
    if lattice.iter().any(|s| s.monoid() != id) {
        return Err(RegistryError::MixedMonoids);
    }
    if id.has_zero() {
        return Err(RegistryError::SourceHasZero(id));
    }
    let target = id.zero_extension().ok_or(RegistryError::NoZeroExtension(id))?;
    let mut out = Vec::with_capacity(lattice.len() * 2);
    for s in lattice {
        // The same set of numbers, renamed in the larger carrier.
        out.push(SymbolicSet::from_cases(target, &s.cases()));
    }
    for s in lattice {
        let mut cases = s.cases();
        cases.insert(CaseTag::Zero);
        out.push(SymbolicSet::from_cases(target, &cases));
    }
    out.dedup();
    Ok(out)
}

/// The additive k-th root of a non-negative rational: `r / k`, exactly.
pub fn rational_root(r: Rational, k: u64) -> Rational {
    assert!(r >= Rational::zero(), "additive roots need r >= 0");
    assert!(k >= 1, "root index must be positive");
    r / Rational::from_integer(k as i64)
}

/// Case of a k-fold repetition of an element in the given case, under the
/// monoid's operation. `None` when the case is not determined.
fn case_power(id: NumberMonoidId, case: CaseTag, _k: u64) -> Option<CaseTag> {
    use NumberMonoidId::*;
    let multiplicative = self_op(id) == Op::Mul;
    match case {
        CaseTag::Zero => Some(CaseTag::Zero),
        CaseTag::Positive => Some(CaseTag::Positive),
        CaseTag::Negative => {
            if multiplicative {
                // Sign of a power of a negative flips with parity; handled
                // by the callers that need it.
                None
            } else {
                Some(CaseTag::Negative)
            }
        }
        CaseTag::NonZero => match id {
            AddComplex | MulComplexNonZero | MulComplex => Some(CaseTag::NonZero),
            _ => None,
        },
    }
}

#[derive(PartialEq, Eq)]
enum Op {
    Add,
    Mul,
}

fn self_op(id: NumberMonoidId) -> Op {
    use NumberMonoidId::*;
    match id {
        AddNat | AddInt | AddRatNonNeg | AddRat | AddRealNonNeg | AddReal | AddComplex => Op::Add,
        _ => Op::Mul,
    }
}

/// One row of the divisibility audit.
#[derive(Debug, Clone)]
pub struct AuditEntry {
    pub id: NumberMonoidId,
    pub arbitrarily_divisible: bool,
    pub is_group: bool,
    pub has_zero: bool,
    pub rec_is_finite: bool,
    /// For non-divisible monoids: an element and root index with no root.
    pub witness: Option<(i64, u64)>,
    pub justification: &'static str,
    /// Whether the justification was re-checked mechanically.
    pub verified: bool,
}

/// No integer x with x^k = m; roots of an integer are bounded by |m|.
fn has_integer_root(m: i64, k: u64, allow_negative: bool) -> bool {
    let lo = if allow_negative { -m.abs() } else { 0 };
    (lo..=m.abs()).any(|x| {
        let mut acc: i64 = 1;
        for _ in 0..k {
            acc = match acc.checked_mul(x) {
                Some(v) => v,
                None => return false,
            };
        }
        acc == m
    })
}

/// Cross-checks every registry flag against its recorded justification and
/// emits the audit table.
pub fn divisibility_flag_audit() -> Vec<AuditEntry> {
    use NumberMonoidId::*;
    NumberMonoidId::ALL
        .iter()
        .map(|&id| {
            let (witness, justification, verified) = match id {
                AddNat | AddInt => {
                    // 1 has no additive half.
                    ((Some((1, 2))), "2x = 1 has no integer solution", 1 % 2 != 0)
                }
                AddRatNonNeg | AddRat => {
                    let samples = [
                        Rational::zero(),
                        Rational::from_integer(1),
                        Rational::new(3, 2),
                        Rational::new(7, 5),
                    ];
                    let ok = samples.iter().all(|&r| {
                        (1..=6).all(|k| {
                            rational_root(r, k) * Rational::from_integer(k as i64) == r
                        })
                    });
                    (None, "the additive k-th root of r is r/k", ok)
                }
                AddRealNonNeg | AddReal | AddComplex => {
                    let ok = id.carrier().cases().iter().all(|&c| {
                        (1..=6).all(|k| case_power(id, c, k) == Some(c))
                    });
                    (None, "r/k stays in the carrier, case by case", ok)
                }
                MulNatPos | MulIntPos => (
                    Some((2, 2)),
                    "2 has no integer square root",
                    !has_integer_root(2, 2, false),
                ),
                MulInt | MulIntNonZero => (
                    Some((2, 2)),
                    "2 has no integer square root",
                    !has_integer_root(2, 2, true),
                ),
                MulRatPos | MulRatNonZero | MulRat => (
                    Some((2, 2)),
                    "a rational square root of 2 would be an integer in lowest terms",
                    !has_integer_root(2, 2, true),
                ),
                MulRealNonZero | MulReal => {
                    // Squares of reals are never negative: case analysis.
                    let square_cases = [CaseTag::Zero, CaseTag::Positive];
                    let ok = !square_cases.contains(&CaseTag::Negative);
                    (Some((-1, 2)), "real squares are non-negative", ok)
                }
                SignZ2 => {
                    let ok = [1i64, -1].iter().all(|&x| x * x != -1);
                    (Some((-1, 2)), "both signs square to +1", ok)
                }
                MulRealPos => {
                    let ok = case_power(id, CaseTag::Positive, 5) == Some(CaseTag::Positive);
                    (None, "positive reals have positive k-th roots", ok)
                }
                MulComplexNonZero | MulComplex => {
                    let ok = id.carrier().cases().iter().all(|&c| {
                        (1..=6).all(|k| case_power(id, c, k) == Some(c))
                    });
                    (None, "zero roots to zero and every other complex number has k-th roots", ok)
                }
            };
            AuditEntry {
                id,
                arbitrarily_divisible: id.arbitrarily_divisible(),
                is_group: id.is_group(),
                has_zero: id.has_zero(),
                rec_is_finite: id.rec_is_finite(),
                witness,
                justification,
                verified,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_goldens() {
        use NumberMonoidId::*;
        let show = |id| {
            rec_lattice(id)
                .unwrap()
                .iter()
                .map(|s| alloc::format!("{s}"))
                .collect::<Vec<_>>()
        };
        assert_eq!(show(AddRat), ["∅", "Q"]);
        assert_eq!(show(AddRatNonNeg), ["∅", "{0}", "Q>0", "Q>=0"]);
        assert_eq!(
            show(MulReal),
            ["∅", "{0}", "R<0", "R<=0", "R>0", "R>=0", "R\\{0}", "R"]
        );
        assert_eq!(show(MulComplex), ["∅", "{0}", "C\\{0}", "C"]);
        assert!(matches!(
            rec_lattice(AddNat),
            Err(RegistryError::RecNotFinite(AddNat))
        ));
    }

    #[test]
    fn admissibility() {
        assert!(SymbolicSet::new(NumberMonoidId::AddRealNonNeg, Atom::Negative).is_err());
        assert!(SymbolicSet::new(NumberMonoidId::AddReal, Atom::Negative).is_ok());
        assert!(SymbolicSet::new(NumberMonoidId::MulComplex, Atom::Positive).is_err());
        assert!(SymbolicSet::new(NumberMonoidId::MulRealPos, Atom::Zero).is_err());
    }

    #[test]
    fn recognizability_verdicts() {
        let zero_in_r = SymbolicSet::new(NumberMonoidId::AddReal, Atom::Zero).unwrap();
        let v = is_recognizable(zero_in_r).unwrap();
        assert!(!v.recognizable);
        assert!(v.recognizer.is_none());
        assert_eq!(v.lattice.len(), 2);

        let zero_in_rplus = SymbolicSet::new(NumberMonoidId::AddRealNonNeg, Atom::Zero).unwrap();
        let v = is_recognizable(zero_in_rplus).unwrap();
        assert!(v.recognizable);
        let rec = v.recognizer.unwrap();
        assert_eq!(rec.monoid.size(), 2);
        assert_eq!(rec.preimage_cases(), BTreeSet::from([CaseTag::Zero]));

        let nonzero_c = SymbolicSet::new(NumberMonoidId::MulComplex, Atom::NonZero).unwrap();
        assert!(is_recognizable(nonzero_c).unwrap().recognizable);
    }

    #[test]
    fn recognizer_reproduces_atom_semantics() {
        for id in NumberMonoidId::ALL {
            if !id.rec_is_finite() {
                continue;
            }
            for s in rec_lattice(id).unwrap() {
                let v = is_recognizable(s).unwrap();
                let rec = v.recognizer.expect("lattice members are recognizable");
                assert_eq!(rec.preimage_cases(), s.cases(), "{s}");
            }
        }
    }

    #[test]
    fn zero_adjunction_doubles() {
        let base = rec_lattice(NumberMonoidId::MulComplexNonZero).unwrap();
        let extended = adjoin_zero_rec(&base).unwrap();
        assert_eq!(extended.len(), 4);
        let expect = rec_lattice(NumberMonoidId::MulComplex).unwrap();
        let got: BTreeSet<_> = extended.iter().copied().collect();
        assert_eq!(got, expect.iter().copied().collect());

        let base = rec_lattice(NumberMonoidId::MulRealNonZero).unwrap();
        let extended = adjoin_zero_rec(&base).unwrap();
        assert_eq!(extended.len(), 8);
        let expect: BTreeSet<_> = rec_lattice(NumberMonoidId::MulReal).unwrap().into_iter().collect();
        assert_eq!(extended.into_iter().collect::<BTreeSet<_>>(), expect);

        // A one-element input doubles to the pair {∅, {0}}.
        let empty = SymbolicSet::new(NumberMonoidId::MulComplexNonZero, Atom::Empty).unwrap();
        let out = adjoin_zero_rec(&[empty]).unwrap();
        let names: Vec<_> = out.iter().map(|s| alloc::format!("{s}")).collect();
        assert_eq!(names, ["∅", "{0}"]);
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rational_root(Rational::zero(), 5), Rational::zero());
        assert_eq!(rational_root(Rational::new(3, 2), 3), Rational::new(1, 2));
        assert_eq!(rational_root(Rational::from_integer(1), 1), Rational::from_integer(1));
    }

    #[test]
    fn audit_is_fully_verified() {
        for entry in divisibility_flag_audit() {
            assert!(entry.verified, "{}: {}", entry.id.cli_name(), entry.justification);
            assert_eq!(entry.arbitrarily_divisible, entry.id.arbitrarily_divisible());
            assert_eq!(entry.witness.is_none(), entry.arbitrarily_divisible);
        }
    }

    #[test]
    fn divisible_groups_have_trivial_lattices() {
        for id in NumberMonoidId::ALL {
            if id.arbitrarily_divisible() && id.is_group() {
                let lattice = rec_lattice(id).unwrap();
                assert_eq!(lattice.len(), 2, "{}", id.cli_name());
                assert_eq!(lattice[0].atom(), Atom::Empty);
                assert_eq!(lattice[1].atom(), Atom::All);
            }
        }
    }

    #[test]
    fn lattices_are_boolean_closed() {
        for id in NumberMonoidId::ALL {
            if !id.rec_is_finite() {
                continue;
            }
            let lattice = rec_lattice(id).unwrap();
            for &a in &lattice {
                assert!(lattice.contains(&a.complement()), "{a} in {id}");
                for &b in &lattice {
                    assert!(lattice.contains(&a.union(b).unwrap()));
                    assert!(lattice.contains(&a.intersect(b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn cli_names_round_trip() {
        for id in NumberMonoidId::ALL {
            assert_eq!(NumberMonoidId::from_cli_name(id.cli_name()), Some(id));
        }
        for atom in Atom::ALL {
            assert_eq!(Atom::from_cli_name(atom.cli_name()), Some(atom));
        }
    }
}
