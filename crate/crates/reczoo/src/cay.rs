//! The Cayley-table text format.
//!
//! Line 1 is the size `n`, line 2 the 0-based unit index, and the next `n`
//! lines carry `n` space-separated element indices each, row `i` column `j`
//! giving `i . j`. Tokenization is whitespace-tolerant and `#` starts a
//! comment that runs to the end of its line.

use std::fmt::Write as _;

use reczoo_core::{FiniteMonoid, MonoidError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CayError {
    #[error("token {index}: expected a number, got '{token}'")]
    BadToken { index: usize, token: String },
    #[error("expected {expected} tokens, found {found}")]
    WrongTokenCount { expected: usize, found: usize },
    #[error("table is not a monoid: {0}")]
    NotAMonoid(#[from] MonoidError),
}

pub fn parse_cay(text: &str) -> Result<FiniteMonoid, CayError> {
    let tokens: Vec<&str> = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .collect();
    let number = |index: usize| -> Result<usize, CayError> {
        let token = tokens.get(index).copied().unwrap_or("");
        token.parse().map_err(|_| CayError::BadToken {
            index: index + 1,
            token: token.to_string(),
        })
    };
    if tokens.len() < 2 {
        return Err(CayError::WrongTokenCount {
            expected: 2,
            found: tokens.len(),
        });
    }
    let size = number(0)?;
    let unit = number(1)?;
    let expected = 2 + size * size;
    if tokens.len() != expected {
        return Err(CayError::WrongTokenCount {
            expected,
            found: tokens.len(),
        });
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..size {
        let mut row = Vec::with_capacity(size);
        for j in 0..size {
            row.push(number(2 + i * size + j)?);
        }
        rows.push(row);
    }
    Ok(FiniteMonoid::new(unit, rows)?)
}

pub fn write_cay(m: &FiniteMonoid) -> String {
    let mut out = String::new();
    if let Some(name) = m.name() {
        let _ = writeln!(out, "# {name}");
    }
    let _ = writeln!(out, "{}", m.size());
    let _ = writeln!(out, "{}", m.unit().index());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}
