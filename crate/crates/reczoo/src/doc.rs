//! Structured set-description documents (JSON).
//!
//! Every set value has a document form tagged by `kind`. Parsers reject
//! descriptions that are not in canonical form unless normalization is
//! requested, so a document is always a faithful spelling of its set.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use reczoo_core::additive::AdditiveError;
use reczoo_core::rect::{ComponentRep, CoordKind, RectUnion, SignSubset};
use reczoo_core::registry::{Atom, NumberMonoidId, SymbolicSet};
use reczoo_core::seq::{Domain, ExpSeq, GeneratorPartition, RecSeqSet};
use reczoo_core::{PeriodicSet, UltimatelyPeriodicSet};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{context}: not canonical (use --normalize to re-canonicalize)")]
    NonCanonical { context: String },
    #[error("invalid document: {0}")]
    Invalid(String),
}

fn invalid(e: impl std::fmt::Display) -> DocError {
    DocError::Invalid(e.to_string())
}

/// The on-disk form of every set value, tagged by `kind`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum SetDocument {
    #[serde(rename = "up")]
    Up {
        threshold: u64,
        period: u64,
        prefix: Vec<u64>,
        residues: Vec<u64>,
    },
    #[serde(rename = "periodic")]
    Periodic { period: u64, residues: Vec<u64> },
    #[serde(rename = "sign")]
    Sign { plus: bool, minus: bool },
    #[serde(rename = "lattice_atom")]
    LatticeAtom { monoid: String, atom: String },
    #[serde(rename = "rect_union")]
    RectUnion {
        signature: Vec<String>,
        rects: Vec<Vec<SetDocument>>,
    },
    #[serde(rename = "partition")]
    Partition {
        domain: String,
        k: usize,
        default_class: usize,
        explicit: BTreeMap<String, usize>,
    },
    #[serde(rename = "recseq")]
    RecSeq {
        domain: String,
        partition: Box<SetDocument>,
        quotient: Box<SetDocument>,
    },
    #[serde(rename = "expseq")]
    ExpSeq { domain: String, entries: Vec<i64> },
}

/// A parsed and validated set value.
#[derive(Debug, Clone)]
pub enum TypedSet {
    Up(UltimatelyPeriodicSet),
    Periodic(PeriodicSet),
    Sign(SignSubset),
    Atom(SymbolicSet),
    Rect(RectUnion),
    Partition(GeneratorPartition),
    RecSeq(RecSeqSet),
    Seq(ExpSeq),
}

impl TypedSet {
    pub fn kind_name(&self) -> &'static str {
        match self {
            TypedSet::Up(_) => "up",
            TypedSet::Periodic(_) => "periodic",
            TypedSet::Sign(_) => "sign",
            TypedSet::Atom(_) => "lattice_atom",
            TypedSet::Rect(_) => "rect_union",
            TypedSet::Partition(_) => "partition",
            TypedSet::RecSeq(_) => "recseq",
            TypedSet::Seq(_) => "expseq",
        }
    }
}

pub fn parse_domain(s: &str) -> Result<Domain, DocError> {
    match s {
        "nat" => Ok(Domain::Nat),
        "int" => Ok(Domain::Int),
        other => Err(DocError::Invalid(format!("unknown domain '{other}'"))),
    }
}

fn domain_name(d: Domain) -> String {
    d.to_string()
}

pub fn parse_coord_kind(s: &str) -> Result<CoordKind, DocError> {
    match s {
        "nat" => Ok(CoordKind::Nat),
        "int" => Ok(CoordKind::Int),
        "sign" => Ok(CoordKind::Sign),
        other => match other.strip_prefix("sym:").and_then(NumberMonoidId::from_cli_name) {
            Some(id) => Ok(CoordKind::Registry(id)),
            None => Err(DocError::Invalid(format!("unknown coordinate kind '{other}'"))),
        },
    }
}

fn coord_kind_name(kind: CoordKind) -> String {
    match kind {
        CoordKind::Nat => "nat".into(),
        CoordKind::Int => "int".into(),
        CoordKind::Sign => "sign".into(),
        CoordKind::Registry(id) => format!("sym:{}", id.cli_name()),
    }
}

pub fn parse_monoid_id(s: &str) -> Result<NumberMonoidId, DocError> {
    NumberMonoidId::from_cli_name(s)
        .ok_or_else(|| DocError::Invalid(format!("unknown monoid '{s}'")))
}

pub fn parse_atom(s: &str) -> Result<Atom, DocError> {
    Atom::from_cli_name(s).ok_or_else(|| DocError::Invalid(format!("unknown atom '{s}'")))
}

fn additive_error(context: &str, e: AdditiveError) -> DocError {
    match e {
        AdditiveError::NonCanonical => DocError::NonCanonical {
            context: context.to_string(),
        },
        other => invalid(other),
    }
}

/// Builds the typed value a document describes. With `normalize` the parts
/// are re-canonicalized; without it, non-canonical parts are an error.
pub fn from_document(doc: &SetDocument, normalize: bool) -> Result<TypedSet, DocError> {
    match doc {
        SetDocument::Up {
            threshold,
            period,
            prefix,
            residues,
        } => {
            let prefix: BTreeSet<u64> = prefix.iter().copied().collect();
            let residues: BTreeSet<u64> = residues.iter().copied().collect();
            let set = if normalize {
                UltimatelyPeriodicSet::new(*threshold, *period, prefix, residues)
                    .map_err(invalid)?
            } else {
                UltimatelyPeriodicSet::from_canonical_parts(*threshold, *period, prefix, residues)
                    .map_err(|e| additive_error("up set", e))?
            };
            Ok(TypedSet::Up(set))
        }
        SetDocument::Periodic { period, residues } => {
            let residues: BTreeSet<u64> = residues.iter().copied().collect();
            let set = if normalize {
                PeriodicSet::new(*period, residues).map_err(invalid)?
            } else {
                PeriodicSet::from_canonical_parts(*period, residues)
                    .map_err(|e| additive_error("periodic set", e))?
            };
            Ok(TypedSet::Periodic(set))
        }
        SetDocument::Sign { plus, minus } => Ok(TypedSet::Sign(SignSubset {
            plus: *plus,
            minus: *minus,
        })),
        SetDocument::LatticeAtom { monoid, atom } => {
            let id = parse_monoid_id(monoid)?;
            let atom = parse_atom(atom)?;
            Ok(TypedSet::Atom(SymbolicSet::new(id, atom).map_err(invalid)?))
        }
        SetDocument::RectUnion { signature, rects } => {
            let kinds: Vec<CoordKind> = signature
                .iter()
                .map(|s| parse_coord_kind(s))
                .collect::<Result<_, _>>()?;
            let mut parsed_rects = Vec::with_capacity(rects.len());
            for rect in rects {
                let mut components = Vec::with_capacity(rect.len());
                for component_doc in rect {
                    components.push(component_from_document(component_doc, normalize)?);
                }
                parsed_rects.push(components);
            }
            Ok(TypedSet::Rect(
                RectUnion::new(kinds, parsed_rects).map_err(invalid)?,
            ))
        }
        SetDocument::Partition {
            domain,
            k,
            default_class,
            explicit,
        } => {
            let domain = parse_domain(domain)?;
            let mut map = BTreeMap::new();
            for (key, class) in explicit {
                let index: i64 = key
                    .parse()
                    .map_err(|_| DocError::Invalid(format!("bad generator index '{key}'")))?;
                map.insert(index, *class);
            }
            let part =
                GeneratorPartition::new(domain, *k, *default_class, map.clone()).map_err(invalid)?;
            if !normalize && part.explicit() != &map {
                return Err(DocError::NonCanonical {
                    context: "partition (explicit entries restating the default class)".into(),
                });
            }
            Ok(TypedSet::Partition(part))
        }
        SetDocument::RecSeq {
            domain,
            partition,
            quotient,
        } => {
            let domain = parse_domain(domain)?;
            let TypedSet::Partition(part) = from_document(partition, normalize)? else {
                return Err(DocError::Invalid("recseq.partition must be a partition".into()));
            };
            let TypedSet::Rect(quotient) = from_document(quotient, normalize)? else {
                return Err(DocError::Invalid("recseq.quotient must be a rect_union".into()));
            };
            if part.domain() != domain {
                return Err(DocError::Invalid("recseq domain disagrees with partition".into()));
            }
            Ok(TypedSet::RecSeq(
                RecSeqSet::new(part, quotient).map_err(invalid)?,
            ))
        }
        SetDocument::ExpSeq { domain, entries } => {
            let domain = parse_domain(domain)?;
            let seq = ExpSeq::new(domain, entries.clone()).map_err(invalid)?;
            if !normalize && seq.entries() != entries.as_slice() {
                return Err(DocError::NonCanonical {
                    context: "expseq (trailing zeros)".into(),
                });
            }
            Ok(TypedSet::Seq(seq))
        }
    }
}

fn component_from_document(doc: &SetDocument, normalize: bool) -> Result<ComponentRep, DocError> {
    match from_document(doc, normalize)? {
        TypedSet::Up(u) => Ok(ComponentRep::Up(u)),
        TypedSet::Periodic(p) => Ok(ComponentRep::Per(p)),
        TypedSet::Sign(s) => Ok(ComponentRep::Sign(s)),
        TypedSet::Atom(a) => Ok(ComponentRep::Sym(a)),
        other => Err(DocError::Invalid(format!(
            "a '{}' document cannot be a rectangle component",
            other.kind_name()
        ))),
    }
}

pub fn to_document(value: &TypedSet) -> SetDocument {
    match value {
        TypedSet::Up(u) => SetDocument::Up {
            threshold: u.threshold(),
            period: u.period(),
            prefix: u.prefix().iter().copied().collect(),
            residues: u.residues().iter().copied().collect(),
        },
        TypedSet::Periodic(p) => SetDocument::Periodic {
            period: p.period(),
            residues: p.residues().iter().copied().collect(),
        },
        TypedSet::Sign(s) => SetDocument::Sign {
            plus: s.plus,
            minus: s.minus,
        },
        TypedSet::Atom(a) => SetDocument::LatticeAtom {
            monoid: a.monoid().cli_name().to_string(),
            atom: a.atom().cli_name().to_string(),
        },
        TypedSet::Rect(r) => SetDocument::RectUnion {
            signature: r.signature().iter().map(|&k| coord_kind_name(k)).collect(),
            rects: r
                .rects()
                .iter()
                .map(|rect| rect.iter().map(component_to_document).collect())
                .collect(),
        },
        TypedSet::Partition(p) => SetDocument::Partition {
            domain: domain_name(p.domain()),
            k: p.class_count(),
            default_class: p.default_class(),
            explicit: p
                .explicit()
                .iter()
                .map(|(&idx, &class)| (idx.to_string(), class))
                .collect(),
        },
        TypedSet::RecSeq(s) => SetDocument::RecSeq {
            domain: domain_name(s.domain()),
            partition: Box::new(to_document(&TypedSet::Partition(s.partition().clone()))),
            quotient: Box::new(to_document(&TypedSet::Rect(s.quotient().clone()))),
        },
        TypedSet::Seq(s) => SetDocument::ExpSeq {
            domain: domain_name(s.domain()),
            entries: s.entries().to_vec(),
        },
    }
}

fn component_to_document(component: &ComponentRep) -> SetDocument {
    match component {
        ComponentRep::Up(u) => to_document(&TypedSet::Up(u.clone())),
        ComponentRep::Per(p) => to_document(&TypedSet::Periodic(p.clone())),
        ComponentRep::Sign(s) => to_document(&TypedSet::Sign(*s)),
        ComponentRep::Sym(a) => to_document(&TypedSet::Atom(*a)),
    }
}

pub fn parse_str(text: &str, normalize: bool) -> Result<TypedSet, DocError> {
    let doc: SetDocument = serde_json::from_str(text)?;
    from_document(&doc, normalize)
}

pub fn render(value: &TypedSet) -> String {
    serde_json::to_string_pretty(&to_document(value)).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evens_document_parses() {
        let text = r#"{"kind":"up","threshold":0,"period":2,"prefix":[0],"residues":[0]}"#;
        let TypedSet::Up(u) = parse_str(text, false).unwrap() else {
            panic!("expected an up set")
        };
        assert!(u.member(4));
        assert!(!u.member(7));
    }

    #[test]
    fn non_canonical_documents_are_rejected_without_normalize() {
        let text = r#"{"kind":"periodic","period":4,"residues":[0,2]}"#;
        assert!(matches!(
            parse_str(text, false),
            Err(DocError::NonCanonical { .. })
        ));
        let TypedSet::Periodic(p) = parse_str(text, true).unwrap() else {
            panic!("expected a periodic set")
        };
        assert_eq!(p.period(), 2);
    }

    #[test]
    fn malformed_documents_fail_with_parse_errors() {
        assert!(matches!(
            parse_str(r#"{"kind":"up","threshold":0}"#, false),
            Err(DocError::Parse(_))
        ));
        assert!(matches!(
            parse_str(r#"{"kind":"nonsense"}"#, false),
            Err(DocError::Parse(_))
        ));
    }

    #[test]
    fn documents_round_trip() {
        let text = r#"{
            "kind": "rect_union",
            "signature": ["nat", "sign", "sym:mul:R"],
            "rects": [[
                {"kind":"up","threshold":0,"period":2,"prefix":[0],"residues":[0]},
                {"kind":"sign","plus":true,"minus":false},
                {"kind":"lattice_atom","monoid":"mul:R","atom":"nonzero"}
            ]]
        }"#;
        let parsed = parse_str(text, false).unwrap();
        let rendered = render(&parsed);
        let reparsed = parse_str(&rendered, false).unwrap();
        let (TypedSet::Rect(a), TypedSet::Rect(b)) = (parsed, reparsed) else {
            panic!("expected rect unions")
        };
        assert_eq!(a, b);
    }

    #[test]
    fn recseq_documents_compose() {
        let text = r#"{
            "kind": "recseq",
            "domain": "nat",
            "partition": {"kind":"partition","domain":"nat","k":2,"default_class":0,"explicit":{"1":1}},
            "quotient": {
                "kind": "rect_union",
                "signature": ["nat","nat"],
                "rects": [[
                    {"kind":"up","threshold":0,"period":1,"prefix":[0],"residues":[0]},
                    {"kind":"up","threshold":0,"period":2,"prefix":[0],"residues":[0]}
                ]]
            }
        }"#;
        let TypedSet::RecSeq(s) = parse_str(text, false).unwrap() else {
            panic!("expected a recseq")
        };
        let mut primes = reczoo_core::seq::Primes::new();
        assert!(s.nat_member(&mut primes, 12).unwrap());
        assert!(!s.nat_member(&mut primes, 8).unwrap());
    }

    #[test]
    fn expseq_trailing_zeros_are_non_canonical() {
        let text = r#"{"kind":"expseq","domain":"int","entries":[1,0]}"#;
        assert!(matches!(
            parse_str(text, false),
            Err(DocError::NonCanonical { .. })
        ));
        let TypedSet::Seq(s) = parse_str(text, true).unwrap() else {
            panic!("expected a sequence")
        };
        assert_eq!(s.entries(), &[1]);
    }
}
