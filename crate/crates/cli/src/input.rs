//! Matrix files: a header line `p n m`, then `n` rows of `m` integers.
//! A second matrix of the same shape may follow after a blank line. Lines
//! starting with `#` are ignored.

use comvar::{FieldMatrix, Modulus};

use crate::CliError;

pub fn parse_matrices(text: &str) -> Result<Vec<FieldMatrix>, CliError> {
    let bad = |msg: String| CliError::Config(format!("matrix file: {msg}"));
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.starts_with('#'))
        .peekable();
    while lines.peek() == Some(&"") {
        lines.next();
    }
    let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
    let dims: Vec<u64> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad(format!("bad header token {t:?}"))))
        .collect::<Result<_, _>>()?;
    let [p, rows, cols] = dims[..] else {
        return Err(bad(format!("header must be `p n m`, got {header:?}")));
    };
    let modulus = Modulus::new(p).map_err(|e| bad(e.to_string()))?;
    let (rows, cols) = (rows as usize, cols as usize);

    let mut blocks: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    for line in lines {
        if line.is_empty() {
            if !blocks.last().expect("nonempty").is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(format!("bad entry {t:?}"))))
            .collect::<Result<_, _>>()?;
        if row.len() != cols {
            return Err(bad(format!("expected {cols} entries per row, got {}", row.len())));
        }
        blocks.last_mut().expect("nonempty").push(row);
    }
    if blocks.last().is_some_and(Vec::is_empty) {
        blocks.pop();
    }
    if blocks.is_empty() || blocks.len() > 2 {
        return Err(bad(format!("expected one or two matrices, got {}", blocks.len())));
    }
    blocks
        .iter()
        .map(|b| {
            if b.len() != rows {
                return Err(bad(format!("expected {rows} rows, got {}", b.len())));
            }
            FieldMatrix::from_rows(modulus, b).map_err(|e| bad(e.to_string()))
        })
        .collect()
}
