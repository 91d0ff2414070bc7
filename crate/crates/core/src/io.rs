//! Plain-text square (`.ls`) and weight (`.wt`) files.
//!
//! Both formats are `n` lines of `n` whitespace-separated decimal integers.
//! Lines starting with `#` are comments and blank lines are ignored. Square
//! symbols must lie in `0..n`; weight entries may be any `i64`. Writing
//! emits single spaces and a trailing newline (the `Display` impls).

use std::path::Path;

use crate::error::{Error, Result};
use crate::latin::{LatinSquare, WeightMatrix};

fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row = trimmed
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|e| Error::Parse {
                    line: idx + 1,
                    message: format!("{tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_square(text: &str) -> Result<LatinSquare> {
    LatinSquare::from_rows(&parse_rows(text)?)
}

pub fn parse_weight(text: &str) -> Result<WeightMatrix> {
    WeightMatrix::from_rows(&parse_rows(text)?)
}

pub fn read_square(path: impl AsRef<Path>) -> Result<LatinSquare> {
    parse_square(&read(path.as_ref())?)
}

pub fn read_weight(path: impl AsRef<Path>) -> Result<WeightMatrix> {
    parse_weight(&read(path.as_ref())?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })
}
