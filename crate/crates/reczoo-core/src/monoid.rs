//! Explicit finite monoids given by their Cayley tables.
//!
//! Elements are dense indices `0..size`; the table is the universal encoding
//! of a finite monoid. Structural queries (idempotents, zero, unit group,
//! omega powers, direct products) and a small catalog of monoids used by the
//! verification harness live here.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Index of an element in its parent [`FiniteMonoid`], bound-checked at
/// construction via [`FiniteMonoid::element`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementIndex(usize);

impl ElementIndex {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidError {
    /// Associativity fails at the witness triple `(i, j, k)`.
    NotAssociative(usize, usize, usize),
    /// The unit law fails at the witness element.
    UnitLawFails(usize),
    /// A table entry or requested element is outside `0..size`.
    IndexOutOfRange(usize),
    /// `adjoin_zero` called on a monoid that already has a zero.
    AlreadyHasZero,
    /// The element has no two-sided inverse.
    NotInvertible(usize),
    /// An operation that requires a group was called on a non-group.
    NotAGroup,
    /// Exhaustive enumeration requested beyond the supported size.
    SizeTooLargeForExhaustive(usize),
}

impl fmt::Display for MonoidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidError::NotAssociative(i, j, k) => {
                write!(f, "not associative at ({i}, {j}, {k})")
            }
            MonoidError::UnitLawFails(i) => write!(f, "unit law fails at element {i}"),
            MonoidError::IndexOutOfRange(i) => write!(f, "element index {i} out of range"),
            MonoidError::AlreadyHasZero => write!(f, "monoid already has a zero element"),
            MonoidError::NotInvertible(g) => write!(f, "element {g} has no inverse"),
            MonoidError::NotAGroup => write!(f, "monoid is not a group"),
            MonoidError::SizeTooLargeForExhaustive(n) => {
                write!(f, "exhaustive enumeration capped at size 3, got {n}")
            }
        }
    }
}

impl core::error::Error for MonoidError {}

/// A finite monoid as an explicit multiplication table.
///
/// `table[i * size + j]` is the index of `i . j`. Both monoid laws are
/// checked at construction, so every value of this type is a monoid.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    unit: usize,
    table: Vec<usize>,
    name: Option<String>,
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "FiniteMonoid({n}, size {})", self.size),
            None => write!(f, "FiniteMonoid(size {})", self.size),
        }
    }
}

impl FiniteMonoid {
    /// Validates a Cayley table and returns the monoid.
    ///
    /// Checks, in order: all entries in range, the unit law, associativity.
    pub fn new(unit: usize, rows: Vec<Vec<usize>>) -> Result<Self, MonoidError> {
        let size = rows.len();
        if size == 0 {
            return Err(MonoidError::IndexOutOfRange(0));
        }
        if unit >= size {
            return Err(MonoidError::IndexOutOfRange(unit));
        }
        let mut table = Vec::with_capacity(size * size);
        for row in &rows {
            if row.len() != size {
                return Err(MonoidError::IndexOutOfRange(row.len()));
            }
            for &e in row {
                if e >= size {
                    return Err(MonoidError::IndexOutOfRange(e));
                }
                table.push(e);
            }
        }
        let m = FiniteMonoid {
            size,
            unit,
            table,
            name: None,
        };
        for i in 0..size {
            if m.raw(unit, i) != i || m.raw(i, unit) != i {
                return Err(MonoidError::UnitLawFails(i));
            }
        }
        for i in 0..size {
            for j in 0..size {
                for k in 0..size {
                    if m.raw(m.raw(i, j), k) != m.raw(i, m.raw(j, k)) {
                        return Err(MonoidError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> ElementIndex {
        ElementIndex(self.unit)
    }

    /// Bound-checked element constructor.
    pub fn element(&self, index: usize) -> Result<ElementIndex, MonoidError> {
        if index < self.size {
            Ok(ElementIndex(index))
        } else {
            Err(MonoidError::IndexOutOfRange(index))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementIndex> + '_ {
        (0..self.size).map(ElementIndex)
    }

    fn raw(&self, i: usize, j: usize) -> usize {
        self.table[i * self.size + j]
    }

    pub fn mul(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        assert!(a.0 < self.size && b.0 < self.size, "element out of range");
        ElementIndex(self.raw(a.0, b.0))
    }

    /// `m^e` by repeated squaring; `m^0` is the unit.
    pub fn pow(&self, m: ElementIndex, e: u64) -> ElementIndex {
        let mut base = m;
        let mut exp = e;
        let mut acc = self.unit();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_idempotent(&self, e: ElementIndex) -> bool {
        self.mul(e, e) == e
    }

    /// All idempotents; always contains the unit.
    pub fn idempotents(&self) -> BTreeSet<ElementIndex> {
        self.elements().filter(|&e| self.is_idempotent(e)).collect()
    }

    /// The unique absorbing element, if present. By convention the zero must
    /// be distinct from the unit, so the trivial monoid has none.
    pub fn find_zero(&self) -> Option<ElementIndex> {
        self.elements().find(|&z| {
            z.0 != self.unit
                && self
                    .elements()
                    .all(|m| self.mul(z, m) == z && self.mul(m, z) == z)
        })
    }

    /// Adjoins a fresh absorbing element as the last index.
    pub fn adjoin_zero(&self) -> Result<FiniteMonoid, MonoidError> {
        if self.find_zero().is_some() {
            return Err(MonoidError::AlreadyHasZero);
        }
        let n = self.size;
        let mut rows = vec![vec![0; n + 1]; n + 1];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = if i == n || j == n { n } else { self.raw(i, j) };
            }
        }
        let m = FiniteMonoid::new(self.unit, rows).expect("zero adjunction preserves the laws");
        Ok(match &self.name {
            Some(name) => m.with_name(format!("{name}+0")),
            None => m,
        })
    }

    /// Elements with a two-sided inverse.
    pub fn unit_group(&self) -> BTreeSet<ElementIndex> {
        self.elements()
            .filter(|&g| self.try_invert(g).is_some())
            .collect()
    }

    pub fn is_group(&self) -> bool {
        self.unit_group().len() == self.size
    }

    fn try_invert(&self, g: ElementIndex) -> Option<ElementIndex> {
        self.elements()
            .find(|&y| self.mul(g, y) == self.unit() && self.mul(y, g) == self.unit())
    }

    pub fn invert(&self, g: ElementIndex) -> Result<ElementIndex, MonoidError> {
        self.try_invert(g).ok_or(MonoidError::NotInvertible(g.0))
    }

    /// Order of `g` in a group: the least `i >= 1` with `g^i` the unit.
    pub fn element_order(&self, g: ElementIndex) -> Result<u64, MonoidError> {
        if !self.is_group() {
            return Err(MonoidError::NotAGroup);
        }
        Ok(self.order_of_invertible(g))
    }

    /// Order of an invertible element within the unit group. The caller must
    /// ensure `g` is invertible, otherwise the power sequence never returns
    /// to the unit and this panics after `size + 1` steps.
    pub(crate) fn order_of_invertible(&self, g: ElementIndex) -> u64 {
        let mut x = g;
        for i in 1..=self.size as u64 + 1 {
            if x == self.unit() {
                return i;
            }
            x = self.mul(x, g);
        }
        panic!("element {g} is not invertible");
    }

    /// The eventual cycle of the power sequence `m^0, m^1, ...`: returns
    /// `(tail, cycle)` with `m^a = m^b` iff `a = b` or both `a, b >= tail`
    /// and `a = b (mod cycle)`. `tail <= size` and `cycle <= size`.
    pub fn power_lasso(&self, m: ElementIndex) -> (u64, u64) {
        let mut seen: Vec<ElementIndex> = vec![self.unit()];
        let mut x = self.unit();
        loop {
            x = self.mul(x, m);
            if let Some(i) = seen.iter().position(|&y| y == x) {
                let j = seen.len();
                return (i as u64, (j - i) as u64);
            }
            seen.push(x);
        }
    }

    /// The unique idempotent among the powers of `m`.
    ///
    /// Detects the lasso `m^i = m^j` (`i < j <= size + 1`) and returns `m^k`
    /// for the smallest `k >= max(i, 1)` divisible by `j - i`; that power is
    /// idempotent and equals `m^(size!)`, which is re-checked by direct
    /// exponentiation.
    pub fn omega_power(&self, m: ElementIndex) -> ElementIndex {
        let (tail, cycle) = self.power_lasso(m);
        let i = tail.max(1);
        let k = i.div_ceil(cycle) * cycle;
        let e = self.pow(m, k);
        assert!(self.is_idempotent(e), "omega power must be idempotent");
        // The lasso entry never exceeds size, so size! reaches the cycle.
        assert!(tail <= self.size as u64);
        assert_eq!(e, self.factorial_power(m), "omega power must equal m^(size!)");
        e
    }

    /// `m^(size!)`, computed as `((m^2)^3)^4...` to avoid materializing the
    /// factorial.
    pub fn factorial_power(&self, m: ElementIndex) -> ElementIndex {
        let mut x = m;
        for i in 2..=self.size as u64 {
            x = self.pow(x, i);
        }
        x
    }

    /// `{ x : some y has y^(size!) = x }`. Every such element is idempotent.
    pub fn divisible_elements(&self) -> BTreeSet<ElementIndex> {
        self.elements().map(|y| self.factorial_power(y)).collect()
    }

    /// Direct product with row-major element encoding `i1 * |M2| + i2`.
    pub fn direct_product(&self, other: &FiniteMonoid) -> FiniteMonoid {
        let n1 = self.size;
        let n2 = other.size;
        let n = n1 * n2;
        let mut rows = vec![vec![0; n]; n];
        for a1 in 0..n1 {
            for a2 in 0..n2 {
                for b1 in 0..n1 {
                    for b2 in 0..n2 {
                        rows[a1 * n2 + a2][b1 * n2 + b2] =
                            self.raw(a1, b1) * n2 + other.raw(a2, b2);
                    }
                }
            }
        }
        let m = FiniteMonoid::new(self.unit * n2 + other.unit, rows)
            .expect("product of monoids is a monoid");
        match (&self.name, &other.name) {
            (Some(a), Some(b)) => m.with_name(format!("{a}x{b}")),
            _ => m,
        }
    }

    /// Pairs a product element index back into its components.
    pub fn split_product_index(e: ElementIndex, size2: usize) -> (usize, usize) {
        (e.0 / size2, e.0 % size2)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.raw(i, j)).collect())
            .collect()
    }

    /// Canonical table under relabelings that fix the unit; used to
    /// deduplicate the exhaustive strata up to isomorphism. Only intended
    /// for very small monoids.
    fn canonical_table(&self) -> Vec<usize> {
        let others: Vec<usize> = (0..self.size).filter(|&i| i != self.unit).collect();
        let mut best: Option<Vec<usize>> = None;
        for perm in permutations(&others) {
            // Relabeling: unit stays put, others permuted.
            let mut map = vec![0; self.size];
            map[self.unit] = 0;
            for (pos, &orig) in perm.iter().enumerate() {
                map[orig] = pos + 1;
            }
            let mut relabeled = vec![0; self.size * self.size];
            for i in 0..self.size {
                for j in 0..self.size {
                    relabeled[map[i] * self.size + map[j]] = map[self.raw(i, j)];
                }
            }
            if best.as_ref().is_none_or(|b| relabeled < *b) {
                best = Some(relabeled);
            }
        }
        best.expect("at least the identity relabeling")
    }

    /// The trivial one-element monoid.
    pub fn trivial() -> FiniteMonoid {
        FiniteMonoid::new(0, vec![vec![0]])
            .expect("trivial monoid")
            .with_name("1")
    }

    /// Cyclic group of order `n` with generator 1 and unit 0.
    pub fn cyclic(n: usize) -> FiniteMonoid {
        assert!(n >= 1);
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteMonoid::new(0, rows)
            .expect("cyclic group")
            .with_name(format!("Z{n}"))
    }

    /// The three-element monoid `{1, p, 0}` with `p^2 = 0` and `0` absorbing.
    /// Elements: 0 = unit, 1 = p, 2 = zero.
    pub fn m3() -> FiniteMonoid {
        FiniteMonoid::new(0, vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]])
            .expect("m3")
            .with_name("M3")
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// All monoids of size `n <= 3` up to isomorphism, with the unit at index 0.
///
/// The unit row and column are forced, so only the `(n-1)^2` remaining
/// entries are enumerated and filtered by associativity.
pub fn enumerate_monoids(n: usize) -> Result<Vec<FiniteMonoid>, MonoidError> {
    if n == 0 || n > 3 {
        return Err(MonoidError::SizeTooLargeForExhaustive(n));
    }
    let free = (n - 1) * (n - 1);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut counters = vec![0usize; free];
    loop {
        let mut rows = vec![vec![0; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = if i == 0 {
                    j
                } else if j == 0 {
                    i
                } else {
                    counters[(i - 1) * (n - 1) + (j - 1)]
                };
            }
        }
        if let Ok(m) = FiniteMonoid::new(0, rows) {
            if seen.insert(m.canonical_table()) {
                out.push(m.with_name(format!("E{}#{}", n, seen.len())));
            }
        }
        // Odometer over the free entries.
        let mut pos = 0;
        loop {
            if pos == free {
                return Ok(out);
            }
            counters[pos] += 1;
            if counters[pos] < n {
                break;
            }
            counters[pos] = 0;
            pos += 1;
        }
    }
}

/// The verification catalog: exhaustive strata of sizes `1..=max_exhaustive`
/// (deduplicated up to isomorphism), the curated list (cyclic groups Z2..Z6,
/// M3, each cyclic group with a zero adjoined), and pairwise direct products
/// of the non-trivial members up to size 12.
pub fn catalog(max_exhaustive: usize) -> Result<Vec<FiniteMonoid>, MonoidError> {
    if max_exhaustive > 3 {
        return Err(MonoidError::SizeTooLargeForExhaustive(max_exhaustive));
    }
    let mut base = Vec::new();
    for n in 1..=max_exhaustive {
        base.extend(enumerate_monoids(n)?);
    }
    for n in 2..=6 {
        base.push(FiniteMonoid::cyclic(n));
    }
    base.push(FiniteMonoid::m3());
    for n in 2..=6 {
        base.push(
            FiniteMonoid::cyclic(n)
                .adjoin_zero()
                .expect("cyclic groups have no zero"),
        );
    }
    let mut out = base.clone();
    for i in 0..base.len() {
        for j in i..base.len() {
            let (a, b) = (&base[i], &base[j]);
            if a.size() > 1 && b.size() > 1 && a.size() * b.size() <= 12 {
                out.push(a.direct_product(b));
            }
        }
    }
    Ok(out)
}
