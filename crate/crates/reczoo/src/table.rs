//! Text rendering for the recognizable-subset tables and lattices.

use std::fmt::Write as _;

use reczoo_core::registry::{rec_lattice, Atom, NumberMonoidId, RegistryError, SymbolicSet};

fn set_list(sets: &[SymbolicSet]) -> String {
    let names: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", names.join(", "))
}

/// The sets of a finite additive lattice in table order: the full carrier
/// right after the empty set, then the proper nonempty subsets.
fn additive_row_sets(id: NumberMonoidId) -> Vec<SymbolicSet> {
    [Atom::Empty, Atom::All, Atom::Zero, Atom::Positive]
        .iter()
        .filter_map(|&atom| SymbolicSet::new(id, atom).ok())
        .filter(|s| rec_lattice(id).expect("finite lattice").contains(s))
        .collect()
}

/// The two-block summary table: recognizable subsets of the additive number
/// monoids, then of the multiplicative monoids with finite lattices.
pub fn table1() -> String {
    use NumberMonoidId::*;
    let mut out = String::new();
    let _ = writeln!(out, "Recognizable subsets of additive monoids (X, +, 0)");
    let _ = writeln!(out);
    let _ = writeln!(out, "  {:<6} {}", "X", "Rec(X)");
    let additive: [(NumberMonoidId, Option<&str>); 7] = [
        (AddInt, Some("periodic sets")),
        (AddRat, None),
        (AddReal, None),
        (AddComplex, None),
        (AddNat, Some("ultimately periodic sets")),
        (AddRatNonNeg, None),
        (AddRealNonNeg, None),
    ];
    for (id, family) in additive {
        let description = match family {
            Some(text) => text.to_string(),
            None => set_list(&additive_row_sets(id)),
        };
        let _ = writeln!(out, "  {:<6} {}", id.carrier_symbol(), description);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "Recognizable subsets of multiplicative monoids (X, ×, 1)");
    let _ = writeln!(out);
    let _ = writeln!(out, "  {:<6} {}", "X", "Rec(X)");
    for id in [MulRealPos, MulComplexNonZero, MulReal, MulComplex] {
        let sets = rec_lattice(id).expect("finite lattice");
        let _ = writeln!(out, "  {:<6} {}", id.carrier_symbol(), set_list(&sets));
    }
    out
}

fn operation_symbols(id: NumberMonoidId) -> (&'static str, &'static str) {
    use NumberMonoidId::*;
    match id {
        AddNat | AddInt | AddRatNonNeg | AddRat | AddRealNonNeg | AddReal | AddComplex => {
            ("+", "0")
        }
        _ => ("×", "1"),
    }
}

pub fn lattice_header(id: NumberMonoidId) -> String {
    let (op, unit) = operation_symbols(id);
    format!("Rec(({}, {op}, {unit}))", id.carrier_symbol())
}

/// One line per lattice member, in the registry's documented order.
pub fn lattice_text(id: NumberMonoidId) -> Result<String, RegistryError> {
    let mut out = String::new();
    let _ = writeln!(out, "{}", lattice_header(id));
    for s in rec_lattice(id)? {
        let _ = writeln!(out, "  {s}");
    }
    Ok(out)
}
