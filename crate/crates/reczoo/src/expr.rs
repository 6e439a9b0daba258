//! Inline set expressions: `union(...)`, `intersect(...)` and
//! `complement(...)` over document references (file paths).

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::doc::{self, TypedSet};

#[derive(Debug, Error)]
pub enum ExprError {
    #[error("expression syntax error at '{0}'")]
    Syntax(String),
    #[error("cannot read '{path}': {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Doc(#[from] doc::DocError),
    #[error("operands have different kinds: {0} vs {1}")]
    KindMismatch(&'static str, &'static str),
    #[error("'{0}' documents do not support set algebra")]
    Unsupported(&'static str),
    #[error("set operation failed: {0}")]
    Algebra(String),
}

#[derive(Debug)]
enum Expr {
    Path(String),
    Union(Box<Expr>, Box<Expr>),
    Intersect(Box<Expr>, Box<Expr>),
    Complement(Box<Expr>),
}

fn parse_expr(input: &str) -> Result<(Expr, &str), ExprError> {
    let input = input.trim_start();
    for (name, binary) in [("union", true), ("intersect", true), ("complement", false)] {
        if let Some(rest) = input.strip_prefix(name) {
            let rest = rest.trim_start();
            let Some(rest) = rest.strip_prefix('(') else {
                return Err(ExprError::Syntax(input.to_string()));
            };
            let (first, rest) = parse_expr(rest)?;
            let rest = rest.trim_start();
            if binary {
                let Some(rest) = rest.strip_prefix(',') else {
                    return Err(ExprError::Syntax(rest.to_string()));
                };
                let (second, rest) = parse_expr(rest)?;
                let rest = rest.trim_start();
                let Some(rest) = rest.strip_prefix(')') else {
                    return Err(ExprError::Syntax(rest.to_string()));
                };
                let node = if name == "union" {
                    Expr::Union(Box::new(first), Box::new(second))
                } else {
                    Expr::Intersect(Box::new(first), Box::new(second))
                };
                return Ok((node, rest));
            }
            let Some(rest) = rest.strip_prefix(')') else {
                return Err(ExprError::Syntax(rest.to_string()));
            };
            return Ok((Expr::Complement(Box::new(first)), rest));
        }
    }
    // A bare document reference runs to the next delimiter.
    let end = input
        .find([',', ')', '('])
        .unwrap_or(input.len());
    let path = input[..end].trim();
    if path.is_empty() || input[end..].starts_with('(') {
        return Err(ExprError::Syntax(input.to_string()));
    }
    Ok((Expr::Path(path.to_string()), &input[end..]))
}

fn load(path: &str, normalize: bool) -> Result<TypedSet, ExprError> {
    let text = fs::read_to_string(Path::new(path)).map_err(|source| ExprError::Io {
        path: path.to_string(),
        source,
    })?;
    Ok(doc::parse_str(&text, normalize)?)
}

fn alg(e: impl std::fmt::Display) -> ExprError {
    ExprError::Algebra(e.to_string())
}

pub fn union_sets(a: TypedSet, b: TypedSet) -> Result<TypedSet, ExprError> {
    match (a, b) {
        (TypedSet::Up(x), TypedSet::Up(y)) => Ok(TypedSet::Up(x.union(&y))),
        (TypedSet::Periodic(x), TypedSet::Periodic(y)) => Ok(TypedSet::Periodic(x.union(&y))),
        (TypedSet::Rect(x), TypedSet::Rect(y)) => Ok(TypedSet::Rect(x.union(&y).map_err(alg)?)),
        (TypedSet::RecSeq(x), TypedSet::RecSeq(y)) => {
            Ok(TypedSet::RecSeq(x.union(&y).map_err(alg)?))
        }
        (TypedSet::Atom(x), TypedSet::Atom(y)) => Ok(TypedSet::Atom(x.union(y).map_err(alg)?)),
        (a, b) => Err(ExprError::KindMismatch(a.kind_name(), b.kind_name())),
    }
}

pub fn intersect_sets(a: TypedSet, b: TypedSet) -> Result<TypedSet, ExprError> {
    match (a, b) {
        (TypedSet::Up(x), TypedSet::Up(y)) => Ok(TypedSet::Up(x.intersect(&y))),
        (TypedSet::Periodic(x), TypedSet::Periodic(y)) => Ok(TypedSet::Periodic(x.intersect(&y))),
        (TypedSet::Rect(x), TypedSet::Rect(y)) => {
            Ok(TypedSet::Rect(x.intersect(&y).map_err(alg)?))
        }
        (TypedSet::RecSeq(x), TypedSet::RecSeq(y)) => {
            Ok(TypedSet::RecSeq(x.intersect(&y).map_err(alg)?))
        }
        (TypedSet::Atom(x), TypedSet::Atom(y)) => Ok(TypedSet::Atom(x.intersect(y).map_err(alg)?)),
        (a, b) => Err(ExprError::KindMismatch(a.kind_name(), b.kind_name())),
    }
}

pub fn complement_set(a: TypedSet) -> Result<TypedSet, ExprError> {
    match a {
        TypedSet::Up(x) => Ok(TypedSet::Up(x.complement())),
        TypedSet::Periodic(x) => Ok(TypedSet::Periodic(x.complement())),
        TypedSet::Rect(x) => Ok(TypedSet::Rect(x.complement().map_err(alg)?)),
        TypedSet::RecSeq(x) => Ok(TypedSet::RecSeq(x.complement().map_err(alg)?)),
        TypedSet::Atom(x) => Ok(TypedSet::Atom(x.complement())),
        other => Err(ExprError::Unsupported(other.kind_name())),
    }
}

fn eval(expr: &Expr, normalize: bool) -> Result<TypedSet, ExprError> {
    match expr {
        Expr::Path(path) => load(path, normalize),
        Expr::Union(a, b) => union_sets(eval(a, normalize)?, eval(b, normalize)?),
        Expr::Intersect(a, b) => intersect_sets(eval(a, normalize)?, eval(b, normalize)?),
        Expr::Complement(a) => complement_set(eval(a, normalize)?),
    }
}

/// Parses and evaluates an inline expression over document paths.
pub fn evaluate(input: &str, normalize: bool) -> Result<TypedSet, ExprError> {
    let (expr, rest) = parse_expr(input)?;
    if !rest.trim().is_empty() {
        return Err(ExprError::Syntax(rest.to_string()));
    }
    eval(&expr, normalize)
}
