//! Finite unions of component-wise rectangles: the normal form for
//! recognizable subsets of finite direct products.
//!
//! Each coordinate carries its own kind of recognizable component (an
//! ultimately periodic set for a natural coordinate, a periodic set for an
//! integer coordinate, a symbolic registry set, or a sign subset), and a set
//! is a finite union of products of components. Union, intersection,
//! complement, emptiness and equality all stay inside this form; the
//! constructive direction converts a morphism on a finitely generated
//! commutative product into rectangles, one per combination of lasso cells.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::additive::{PeriodicSet, UltimatelyPeriodicSet};
use crate::monoid::{ElementIndex, FiniteMonoid};
use crate::registry::{CaseTag, NumberMonoidId, SymbolicSet};

/// Kind of one coordinate of a product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoordKind {
    /// Naturals under addition; components are ultimately periodic sets.
    Nat,
    /// Integers under addition; components are periodic sets.
    Int,
    /// A registry monoid; components are symbolic sets over it.
    Registry(NumberMonoidId),
    /// The sign group; components are subsets of `{+1, -1}`.
    Sign,
}

/// A point coordinate, matching the signature kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordValue {
    Nat(u64),
    Int(i64),
    Case(CaseTag),
    Sign(i8),
}

/// A subset of the sign group `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignSubset {
    pub plus: bool,
    pub minus: bool,
}

impl SignSubset {
    pub fn full() -> Self {
        SignSubset { plus: true, minus: true }
    }

    pub fn empty() -> Self {
        SignSubset { plus: false, minus: false }
    }

    pub fn is_empty(self) -> bool {
        !self.plus && !self.minus
    }

    pub fn member(self, sign: i8) -> bool {
        match sign {
            1 => self.plus,
            -1 => self.minus,
            _ => false,
        }
    }

    pub fn intersect(self, other: Self) -> Self {
        SignSubset {
            plus: self.plus && other.plus,
            minus: self.minus && other.minus,
        }
    }

    pub fn complement(self) -> Self {
        SignSubset {
            plus: !self.plus,
            minus: !self.minus,
        }
    }
}

/// One coordinate component of a rectangle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentRep {
    Up(UltimatelyPeriodicSet),
    Per(PeriodicSet),
    Sym(SymbolicSet),
    Sign(SignSubset),
}

impl ComponentRep {
    pub fn matches_kind(&self, kind: CoordKind) -> bool {
        match (self, kind) {
            (ComponentRep::Up(_), CoordKind::Nat) => true,
            (ComponentRep::Per(_), CoordKind::Int) => true,
            (ComponentRep::Sym(s), CoordKind::Registry(id)) => s.monoid() == id,
            (ComponentRep::Sign(_), CoordKind::Sign) => true,
            _ => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            ComponentRep::Up(u) => u.is_empty(),
            ComponentRep::Per(p) => p.is_empty(),
            ComponentRep::Sym(s) => s.is_empty(),
            ComponentRep::Sign(s) => s.is_empty(),
        }
    }

    pub fn full(kind: CoordKind) -> ComponentRep {
        match kind {
            CoordKind::Nat => ComponentRep::Up(UltimatelyPeriodicSet::full()),
            CoordKind::Int => ComponentRep::Per(PeriodicSet::full()),
            CoordKind::Registry(id) => ComponentRep::Sym(
                SymbolicSet::new(id, crate::registry::Atom::All).expect("All is always admissible"),
            ),
            CoordKind::Sign => ComponentRep::Sign(SignSubset::full()),
        }
    }

    /// `None` when the value does not match the component's kind.
    pub fn member(&self, value: CoordValue) -> Option<bool> {
        match (self, value) {
            (ComponentRep::Up(u), CoordValue::Nat(n)) => Some(u.member(n)),
            (ComponentRep::Per(p), CoordValue::Int(n)) => Some(p.member(n)),
            (ComponentRep::Sym(s), CoordValue::Case(c)) => {
                s.monoid().carrier().cases().contains(&c).then(|| s.contains_case(c))
            }
            (ComponentRep::Sign(s), CoordValue::Sign(v)) if v == 1 || v == -1 => {
                Some(s.member(v))
            }
            _ => None,
        }
    }

    fn intersect(&self, other: &ComponentRep) -> Option<ComponentRep> {
        match (self, other) {
            (ComponentRep::Up(a), ComponentRep::Up(b)) => Some(ComponentRep::Up(a.intersect(b))),
            (ComponentRep::Per(a), ComponentRep::Per(b)) => Some(ComponentRep::Per(a.intersect(b))),
            (ComponentRep::Sym(a), ComponentRep::Sym(b)) => {
                a.intersect(*b).ok().map(ComponentRep::Sym)
            }
            (ComponentRep::Sign(a), ComponentRep::Sign(b)) => {
                Some(ComponentRep::Sign(a.intersect(*b)))
            }
            _ => None,
        }
    }

    fn complement(&self) -> ComponentRep {
        match self {
            ComponentRep::Up(u) => ComponentRep::Up(u.complement()),
            ComponentRep::Per(p) => ComponentRep::Per(p.complement()),
            ComponentRep::Sym(s) => ComponentRep::Sym(s.complement()),
            ComponentRep::Sign(s) => ComponentRep::Sign(s.complement()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RectError {
    /// Signatures differ, or a rectangle/point does not match the signature.
    SignatureMismatch,
    /// A coordinate kind outside the operation's domain.
    KindMismatch { index: usize },
    /// Complement input exceeds the configured blow-up cap.
    BlowupCapExceeded { arity: usize, rects: usize },
    NonCommutativeGenerators(usize, usize),
    GeneratorNotInvertible(usize),
    EmptyArity,
}

impl fmt::Display for RectError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RectError::SignatureMismatch => write!(f, "signature mismatch"),
            RectError::KindMismatch { index } => {
                write!(f, "coordinate {index} has an unsupported kind")
            }
            RectError::BlowupCapExceeded { arity, rects } => write!(
                f,
                "complement cap exceeded: arity {arity}, {rects} rectangles"
            ),
            RectError::NonCommutativeGenerators(i, j) => {
                write!(f, "generator images {i} and {j} do not commute")
            }
            RectError::GeneratorNotInvertible(i) => {
                write!(f, "generator image {i} must be invertible for an integer coordinate")
            }
            RectError::EmptyArity => write!(f, "rectangle unions need at least one coordinate"),
        }
    }
}

impl core::error::Error for RectError {}

/// Caps on the exponential complement expansion. The defaults keep the
/// operation at desk scale; callers with larger but still bounded inputs
/// pass their own limits.
#[derive(Debug, Clone, Copy)]
pub struct RectLimits {
    pub max_arity: usize,
    pub max_rects: usize,
}

impl Default for RectLimits {
    fn default() -> Self {
        RectLimits {
            max_arity: 4,
            max_rects: 8,
        }
    }
}

/// A finite union of component-wise rectangles over a fixed signature.
///
/// Normal form: no rectangle has an empty component and no rectangle is
/// repeated; rectangles are kept sorted for deterministic output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectUnion {
    signature: Vec<CoordKind>,
    rects: Vec<Vec<ComponentRep>>,
}

impl RectUnion {
    pub fn new(
        signature: Vec<CoordKind>,
        rects: Vec<Vec<ComponentRep>>,
    ) -> Result<Self, RectError> {
        if signature.is_empty() {
            return Err(RectError::EmptyArity);
        }
        for rect in &rects {
            if rect.len() != signature.len() {
                return Err(RectError::SignatureMismatch);
            }
            for (component, &kind) in rect.iter().zip(&signature) {
                if !component.matches_kind(kind) {
                    return Err(RectError::SignatureMismatch);
                }
            }
        }
        let mut out = RectUnion { signature, rects };
        out.normalize();
        Ok(out)
    }

    pub fn empty(signature: Vec<CoordKind>) -> Result<Self, RectError> {
        Self::new(signature, Vec::new())
    }

    pub fn full(signature: Vec<CoordKind>) -> Result<Self, RectError> {
        let rect = signature.iter().map(|&k| ComponentRep::full(k)).collect();
        Self::new(signature, vec![rect])
    }

    pub fn signature(&self) -> &[CoordKind] {
        &self.signature
    }

    pub fn arity(&self) -> usize {
        self.signature.len()
    }

    pub fn rects(&self) -> &[Vec<ComponentRep>] {
        &self.rects
    }

    fn normalize(&mut self) {
        self.rects.retain(|rect| !rect.iter().any(ComponentRep::is_empty));
        self.rects.sort();
        self.rects.dedup();
    }

    pub fn member(&self, point: &[CoordValue]) -> Result<bool, RectError> {
        if point.len() != self.signature.len() {
            return Err(RectError::SignatureMismatch);
        }
        // Validate the point against the signature even when no rectangle
        // is present.
        for (i, (&v, &kind)) in point.iter().zip(&self.signature).enumerate() {
            if ComponentRep::full(kind).member(v).is_none() {
                return Err(RectError::KindMismatch { index: i });
            }
        }
        Ok(self.rects.iter().any(|rect| {
            rect.iter()
                .zip(point)
                .all(|(component, &v)| component.member(v).unwrap_or(false))
        }))
    }

    pub fn union(&self, other: &RectUnion) -> Result<RectUnion, RectError> {
        if self.signature != other.signature {
            return Err(RectError::SignatureMismatch);
        }
        let mut rects = self.rects.clone();
        rects.extend(other.rects.iter().cloned());
        RectUnion::new(self.signature.clone(), rects)
    }

    pub fn intersect(&self, other: &RectUnion) -> Result<RectUnion, RectError> {
        if self.signature != other.signature {
            return Err(RectError::SignatureMismatch);
        }
        let mut rects = Vec::new();
        for a in &self.rects {
            for b in &other.rects {
                let cells: Option<Vec<ComponentRep>> = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.intersect(y))
                    .collect();
                rects.push(cells.expect("same signature implies compatible components"));
            }
        }
        RectUnion::new(self.signature.clone(), rects)
    }

    /// Complement by De Morgan expansion: the complement of one rectangle is
    /// the union of `arity` rectangles with a single complemented coordinate,
    /// and those unions are intersected across rectangles. Exponential in the
    /// number of rectangles, hence the cap.
    pub fn complement_with(&self, limits: RectLimits) -> Result<RectUnion, RectError> {
        if self.arity() > limits.max_arity || self.rects.len() > limits.max_rects {
            return Err(RectError::BlowupCapExceeded {
                arity: self.arity(),
                rects: self.rects.len(),
            });
        }
        let mut result = RectUnion::full(self.signature.clone())?;
        for rect in &self.rects {
            let mut pieces = Vec::with_capacity(self.arity());
            for i in 0..self.arity() {
                let mut piece: Vec<ComponentRep> = self
                    .signature
                    .iter()
                    .map(|&k| ComponentRep::full(k))
                    .collect();
                piece[i] = rect[i].complement();
                pieces.push(piece);
            }
            let rect_complement = RectUnion::new(self.signature.clone(), pieces)?;
            result = result.intersect(&rect_complement)?;
        }
        Ok(result)
    }

    pub fn complement(&self) -> Result<RectUnion, RectError> {
        self.complement_with(RectLimits::default())
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Extensional equality via emptiness of the symmetric difference.
    pub fn equal_with(&self, other: &RectUnion, limits: RectLimits) -> Result<bool, RectError> {
        if self.signature != other.signature {
            return Err(RectError::SignatureMismatch);
        }
        let left = self.intersect(&other.complement_with(limits)?)?;
        let right = other.intersect(&self.complement_with(limits)?)?;
        Ok(left.union(&right)?.is_empty())
    }

    pub fn equal(&self, other: &RectUnion) -> Result<bool, RectError> {
        self.equal_with(other, RectLimits::default())
    }
}

/// Per-coordinate decomposition used by the constructive direction: the
/// cells partition the coordinate's values, each cell is a recognizable
/// component, and the morphism is constant on each cell with the recorded
/// representative exponent.
struct CoordCells {
    cells: Vec<(ComponentRep, u64)>,
}

fn nat_cells(target: &FiniteMonoid, g: ElementIndex) -> CoordCells {
    let (tail, cycle) = target.power_lasso(g);
    let mut cells = Vec::new();
    for n in 0..tail {
        cells.push((ComponentRep::Up(UltimatelyPeriodicSet::singleton(n)), n));
    }
    for c in 0..cycle {
        // {n >= tail : n = c (mod cycle)}
        let rep = tail + (c + cycle - tail % cycle) % cycle;
        let prefix = if tail % cycle == c {
            BTreeSet::from([tail])
        } else {
            BTreeSet::new()
        };
        let up = UltimatelyPeriodicSet::new(tail, cycle, prefix, BTreeSet::from([c]))
            .expect("cell parts are valid");
        cells.push((ComponentRep::Up(up), rep));
    }
    CoordCells { cells }
}

fn int_cells(
    target: &FiniteMonoid,
    g: ElementIndex,
    index: usize,
) -> Result<CoordCells, RectError> {
    if target.invert(g).is_err() {
        return Err(RectError::GeneratorNotInvertible(index));
    }
    let order = target.order_of_invertible(g);
    let cells = (0..order)
        .map(|c| {
            let per = PeriodicSet::new(order, BTreeSet::from([c])).expect("cell parts are valid");
            (ComponentRep::Per(per), c)
        })
        .collect();
    Ok(CoordCells { cells })
}

/// Converts the preimage of `accepting` under the morphism
/// `v -> g_1^(v_1) ... g_k^(v_k)` into a union of rectangles.
///
/// Requires the generator images to commute pairwise (the generated
/// submonoid is commutative, so the product order is immaterial) and, for
/// integer coordinates, to be invertible. Each coordinate is partitioned
/// into its lasso cells; every combination of cells on which the morphism
/// value is accepting contributes one rectangle.
pub fn hom_preimage_to_rectangles(
    target: &FiniteMonoid,
    gen_images: &[ElementIndex],
    accepting: &BTreeSet<ElementIndex>,
    kinds: &[CoordKind],
) -> Result<RectUnion, RectError> {
    if gen_images.len() != kinds.len() || kinds.is_empty() {
        return Err(if kinds.is_empty() {
            RectError::EmptyArity
        } else {
            RectError::SignatureMismatch
        });
    }
    for (i, &gi) in gen_images.iter().enumerate() {
        for (j, &gj) in gen_images.iter().enumerate().skip(i + 1) {
            if target.mul(gi, gj) != target.mul(gj, gi) {
                return Err(RectError::NonCommutativeGenerators(i, j));
            }
        }
    }
    let mut coords = Vec::with_capacity(kinds.len());
    for (i, (&kind, &g)) in kinds.iter().zip(gen_images).enumerate() {
        match kind {
            CoordKind::Nat => coords.push(nat_cells(target, g)),
            CoordKind::Int => coords.push(int_cells(target, g, i)?),
            _ => return Err(RectError::KindMismatch { index: i }),
        }
    }

    let mut rects = Vec::new();
    let mut choice = vec![0usize; coords.len()];
    'enumerate: loop {
        let mut value = target.unit();
        for (i, &c) in choice.iter().enumerate() {
            let rep = coords[i].cells[c].1;
            value = target.mul(value, target.pow(gen_images[i], rep));
        }
        if accepting.contains(&value) {
            let rect = coords
                .iter()
                .zip(&choice)
                .map(|(coord, &c)| coord.cells[c].0.clone())
                .collect();
            rects.push(rect);
        }
        // Odometer.
        let mut pos = 0;
        loop {
            if pos == coords.len() {
                break 'enumerate;
            }
            choice[pos] += 1;
            if choice[pos] < coords[pos].cells.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
    RectUnion::new(kinds.to_vec(), rects)
}

/// Direct evaluation of the same morphism used by
/// [`hom_preimage_to_rectangles`]: is `g_1^(v_1) ... g_k^(v_k)` accepting?
/// This is the independent route the rectangles are checked against.
pub fn morphism_preimage_member(
    target: &FiniteMonoid,
    gen_images: &[ElementIndex],
    accepting: &BTreeSet<ElementIndex>,
    kinds: &[CoordKind],
    point: &[CoordValue],
) -> Result<bool, RectError> {
    if gen_images.len() != kinds.len() || point.len() != kinds.len() {
        return Err(RectError::SignatureMismatch);
    }
    let mut value = target.unit();
    for (i, ((&kind, &g), &v)) in kinds.iter().zip(gen_images).zip(point).enumerate() {
        let power = match (kind, v) {
            (CoordKind::Nat, CoordValue::Nat(n)) => target.pow(g, n),
            (CoordKind::Int, CoordValue::Int(n)) => {
                if n >= 0 {
                    target.pow(g, n as u64)
                } else {
                    let inv = target
                        .invert(g)
                        .map_err(|_| RectError::GeneratorNotInvertible(i))?;
                    target.pow(inv, n.unsigned_abs())
                }
            }
            _ => return Err(RectError::KindMismatch { index: i }),
        };
        value = target.mul(value, power);
    }
    Ok(accepting.contains(&value))
}

/// Membership in the product of two single-generator morphism preimages,
/// evaluated directly: the cross-check harness for the rectangle route with
/// a product accepting set.
pub fn product_membership_oracle(
    specs: &[&crate::morphism::MorphismSpec],
    point: &[CoordValue],
) -> Result<bool, crate::morphism::MorphismError> {
    use crate::morphism::{MorphismError, MorphismSource};
    if specs.len() != point.len() {
        return Err(MorphismError::GeneratorCountMismatch {
            expected: specs.len(),
            got: point.len(),
        });
    }
    for (spec, &v) in specs.iter().zip(point) {
        let value = match (spec.source(), v) {
            (MorphismSource::Nat, CoordValue::Nat(n)) => spec.eval_nat(n)?,
            (MorphismSource::Int, CoordValue::Int(n)) => spec.eval_int(n)?,
            _ => return Err(MorphismError::SourceMismatch),
        };
        if !spec.is_accepting(value) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::Atom;

    fn evens() -> UltimatelyPeriodicSet {
        UltimatelyPeriodicSet::new(0, 2, BTreeSet::from([0]), BTreeSet::from([0])).unwrap()
    }

    fn mult3() -> UltimatelyPeriodicSet {
        UltimatelyPeriodicSet::new(0, 3, BTreeSet::from([0]), BTreeSet::from([0])).unwrap()
    }

    fn nat2() -> Vec<CoordKind> {
        vec![CoordKind::Nat, CoordKind::Nat]
    }

    fn up(u: UltimatelyPeriodicSet) -> ComponentRep {
        ComponentRep::Up(u)
    }

    fn all_nat() -> ComponentRep {
        ComponentRep::full(CoordKind::Nat)
    }

    fn point(a: u64, b: u64) -> [CoordValue; 2] {
        [CoordValue::Nat(a), CoordValue::Nat(b)]
    }

    fn evens_all_or_all_mult3() -> RectUnion {
        RectUnion::new(
            nat2(),
            vec![
                vec![up(evens()), all_nat()],
                vec![all_nat(), up(mult3())],
            ],
        )
        .unwrap()
    }

    #[test]
    fn membership_in_a_small_union() {
        let s = evens_all_or_all_mult3();
        assert!(s.member(&point(4, 5)).unwrap());
        assert!(!s.member(&point(3, 5)).unwrap());
        let empty = RectUnion::empty(nat2()).unwrap();
        assert!(!empty.member(&point(0, 0)).unwrap());
    }

    #[test]
    fn signature_is_enforced() {
        let s = evens_all_or_all_mult3();
        assert_eq!(
            s.member(&[CoordValue::Nat(1)]).unwrap_err(),
            RectError::SignatureMismatch
        );
        assert_eq!(
            s.member(&[CoordValue::Nat(1), CoordValue::Int(1)]).unwrap_err(),
            RectError::KindMismatch { index: 1 }
        );
    }

    #[test]
    fn complement_of_even_strip_is_odd_strip() {
        let s = RectUnion::new(nat2(), vec![vec![up(evens()), all_nat()]]).unwrap();
        let c = s.complement().unwrap();
        let odd = RectUnion::new(nat2(), vec![vec![up(evens().complement()), all_nat()]]).unwrap();
        assert_eq!(c, odd);
        for a in 0..=20 {
            for b in 0..=20 {
                assert_eq!(c.member(&point(a, b)).unwrap(), a % 2 == 1);
            }
        }
    }

    #[test]
    fn intersection_with_complement_is_empty() {
        let s = evens_all_or_all_mult3();
        let c = s.complement().unwrap();
        assert!(s.intersect(&c).unwrap().is_empty());
        assert!(!s.union(&c).unwrap().is_empty());
    }

    #[test]
    fn union_with_empty_is_identity() {
        let s = evens_all_or_all_mult3();
        let empty = RectUnion::empty(nat2()).unwrap();
        assert_eq!(s.union(&empty).unwrap(), s);
    }

    #[test]
    fn empty_component_drops_the_rectangle() {
        let contradiction = evens().intersect(&evens().complement());
        let s = RectUnion::new(nat2(), vec![vec![up(contradiction), all_nat()]]).unwrap();
        assert!(s.is_empty());
        let explicit_empty = RectUnion::empty(nat2()).unwrap();
        assert!(s.equal(&explicit_empty).unwrap());
    }

    #[test]
    fn even_strip_plus_odd_strip_is_everything() {
        let s = RectUnion::new(
            nat2(),
            vec![
                vec![up(evens()), all_nat()],
                vec![up(evens().complement()), all_nat()],
            ],
        )
        .unwrap();
        let full = RectUnion::full(nat2()).unwrap();
        assert!(s.equal(&full).unwrap());
        for a in 0..=30 {
            for b in 0..=30 {
                assert!(s.member(&point(a, b)).unwrap());
            }
        }
    }

    #[test]
    fn complement_cap_is_enforced() {
        let s = evens_all_or_all_mult3();
        let err = s
            .complement_with(RectLimits {
                max_arity: 4,
                max_rects: 1,
            })
            .unwrap_err();
        assert_eq!(
            err,
            RectError::BlowupCapExceeded { arity: 2, rects: 2 }
        );
    }

    #[test]
    fn parity_preimage_is_the_diagonal_union() {
        let z2 = FiniteMonoid::cyclic(2);
        let one = z2.element(1).unwrap();
        let accepting = BTreeSet::from([z2.unit()]);
        let s = hom_preimage_to_rectangles(&z2, &[one, one], &accepting, &nat2()).unwrap();
        for a in 0..=6 {
            for b in 0..=6 {
                let direct = morphism_preimage_member(
                    &z2,
                    &[one, one],
                    &accepting,
                    &nat2(),
                    &point(a, b),
                )
                .unwrap();
                assert_eq!(s.member(&point(a, b)).unwrap(), direct);
                assert_eq!(direct, (a + b) % 2 == 0);
            }
        }
        let expect = RectUnion::new(
            nat2(),
            vec![
                vec![up(evens()), up(evens())],
                vec![up(evens().complement()), up(evens().complement())],
            ],
        )
        .unwrap();
        assert!(s.equal(&expect).unwrap());
    }

    #[test]
    fn accepting_everything_gives_the_full_rectangle() {
        let z2 = FiniteMonoid::cyclic(2);
        let one = z2.element(1).unwrap();
        let accepting: BTreeSet<_> = z2.elements().collect();
        let s = hom_preimage_to_rectangles(&z2, &[one, one], &accepting, &nat2()).unwrap();
        assert!(s.equal(&RectUnion::full(nat2()).unwrap()).unwrap());
    }

    #[test]
    fn m3_power_preimage_is_a_singleton() {
        let m3 = FiniteMonoid::m3();
        let p = m3.element(1).unwrap();
        let accepting = BTreeSet::from([p]);
        let s =
            hom_preimage_to_rectangles(&m3, &[p], &accepting, &[CoordKind::Nat]).unwrap();
        let expect = RectUnion::new(
            vec![CoordKind::Nat],
            vec![vec![up(UltimatelyPeriodicSet::singleton(1))]],
        )
        .unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn int_coordinates_need_invertible_images() {
        let m3 = FiniteMonoid::m3();
        let p = m3.element(1).unwrap();
        let err = hom_preimage_to_rectangles(&m3, &[p], &BTreeSet::new(), &[CoordKind::Int])
            .unwrap_err();
        assert_eq!(err, RectError::GeneratorNotInvertible(0));
    }

    #[test]
    fn int_preimage_matches_direct_evaluation() {
        let z4 = FiniteMonoid::cyclic(4);
        let one = z4.element(1).unwrap();
        let two = z4.element(2).unwrap();
        let accepting = BTreeSet::from([z4.unit(), two]);
        let kinds = vec![CoordKind::Int, CoordKind::Nat];
        let s = hom_preimage_to_rectangles(&z4, &[one, two], &accepting, &kinds).unwrap();
        for a in -12..=12i64 {
            for b in 0..=12u64 {
                let pt = [CoordValue::Int(a), CoordValue::Nat(b)];
                let direct =
                    morphism_preimage_member(&z4, &[one, two], &accepting, &kinds, &pt).unwrap();
                assert_eq!(s.member(&pt).unwrap(), direct, "({a}, {b})");
            }
        }
    }

    #[test]
    fn noncommuting_generators_are_rejected() {
        // The full transformation table on 2 points contains non-commuting
        // constants? Constants commute with nothing except themselves; use
        // the 2-element left-zero-ish fragment inside a 4-element monoid:
        // simplest concrete witness is the syntactic monoid of {ab} over
        // 2 letters, but a direct table is shorter.
        let rows = vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 1, 1],
            vec![2, 2, 2, 2],
            vec![3, 1, 2, 3],
        ];
        let m = FiniteMonoid::new(0, rows).unwrap();
        let a = m.element(1).unwrap();
        let b = m.element(2).unwrap();
        assert_ne!(m.mul(a, b), m.mul(b, a));
        let err = hom_preimage_to_rectangles(
            &m,
            &[a, b],
            &BTreeSet::new(),
            &[CoordKind::Nat, CoordKind::Nat],
        )
        .unwrap_err();
        assert_eq!(err, RectError::NonCommutativeGenerators(0, 1));
    }

    #[test]
    fn product_oracle_trivial_cases() {
        use crate::morphism::{MorphismSource, MorphismSpec};
        let trivial = FiniteMonoid::trivial();
        let spec_true = MorphismSpec::new(
            MorphismSource::Nat,
            trivial.clone(),
            vec![trivial.unit()],
            BTreeSet::from([trivial.unit()]),
        )
        .unwrap();
        let spec_false = MorphismSpec::new(
            MorphismSource::Nat,
            trivial.clone(),
            vec![trivial.unit()],
            BTreeSet::new(),
        )
        .unwrap();
        let pt = [CoordValue::Nat(3), CoordValue::Nat(7)];
        assert!(product_membership_oracle(&[&spec_true, &spec_true], &pt).unwrap());
        assert!(!product_membership_oracle(&[&spec_true, &spec_false], &pt).unwrap());
    }

    #[test]
    fn registry_and_sign_components() {
        let sig = vec![
            CoordKind::Registry(NumberMonoidId::AddRealNonNeg),
            CoordKind::Sign,
        ];
        let s = RectUnion::new(
            sig.clone(),
            vec![vec![
                ComponentRep::Sym(
                    SymbolicSet::new(NumberMonoidId::AddRealNonNeg, Atom::Positive).unwrap(),
                ),
                ComponentRep::Sign(SignSubset {
                    plus: true,
                    minus: false,
                }),
            ]],
        )
        .unwrap();
        assert!(s
            .member(&[CoordValue::Case(CaseTag::Positive), CoordValue::Sign(1)])
            .unwrap());
        assert!(!s
            .member(&[CoordValue::Case(CaseTag::Zero), CoordValue::Sign(1)])
            .unwrap());
        assert!(!s
            .member(&[CoordValue::Case(CaseTag::Positive), CoordValue::Sign(-1)])
            .unwrap());
        // NonZero is not a case of this carrier.
        assert!(s
            .member(&[CoordValue::Case(CaseTag::NonZero), CoordValue::Sign(1)])
            .is_err());
    }
}
