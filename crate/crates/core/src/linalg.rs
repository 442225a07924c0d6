//! Exact Gaussian elimination over the rationals.

use thiserror::Error;

use crate::exact_ring::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearSystemError {
    #[error("system is inconsistent")]
    Inconsistent,
    #[error("system has a {0}-dimensional solution space")]
    Underdetermined(usize),
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
}

/// Solves `matrix * x = rhs`, requiring a unique solution.
///
/// The matrix may have more rows than columns; extra equations must be
/// consistent.
pub fn solve_unique(
    matrix: &[Vec<Rational>],
    rhs: &[Rational],
) -> Result<Vec<Rational>, LinearSystemError> {
    assert_eq!(matrix.len(), rhs.len(), "one right-hand side per equation");
    let cols = matrix.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(matrix.len());
    for (i, (row, b)) in matrix.iter().zip(rhs).enumerate() {
        if row.len() != cols {
            return Err(LinearSystemError::Ragged {
                row: i,
                expected: cols,
                found: row.len(),
            });
        }
        let mut augmented = row.clone();
        augmented.push(b.clone());
        rows.push(augmented);
    }

    let mut pivot_row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].recip().expect("pivot is nonzero");
        for x in rows[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = &*x - &(&factor * p);
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }

    if rows[pivot_row..].iter().any(|r| !r[cols].is_zero()) {
        return Err(LinearSystemError::Inconsistent);
    }
    if pivot_cols.len() < cols {
        return Err(LinearSystemError::Underdetermined(cols - pivot_cols.len()));
    }
    Ok(rows.into_iter().take(cols).map(|mut r| r.pop().expect("augmented")).collect())
}
