//! Dense GF(2) linear systems via reduced row echelon form.
//!
//! Rows are bit-packed; elimination uses word-wide xors. Column order is
//! fixed by the caller, which makes the returned solutions canonical (free
//! variables are set to zero).

use crate::bits::BitVec;

/// A dense matrix over GF(2), stored row-major as bit vectors.
pub struct Gf2Matrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl Gf2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: (0..nrows).map(|_| BitVec::zeros(ncols)).collect(),
            cols: ncols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }
}

/// Solve `A x = b` over GF(2).
///
/// Returns the canonical solution obtained from the reduced row echelon form
/// with left-to-right pivoting and all free variables zero, or `None` when
/// the system is inconsistent.
pub fn solve(a: &Gf2Matrix, b: &BitVec) -> Option<BitVec> {
    assert_eq!(a.nrows(), b.len(), "rhs length must match row count");
    let ncols = a.ncols();
    // Augmented rows: [A | b].
    let mut rows: Vec<BitVec> = a
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut aug = BitVec::zeros(ncols + 1);
            for c in row.ones() {
                aug.set(c, true);
            }
            aug.set(ncols, b.get(i));
            aug
        })
        .collect();

    let mut pivot_of_col = vec![usize::MAX; ncols];
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }

    // Any all-zero coefficient row with a set rhs bit is a contradiction.
    if rows[rank..].iter().any(|row| row.get(ncols)) {
        return None;
    }

    let mut x = BitVec::zeros(ncols);
    for col in 0..ncols {
        let r = pivot_of_col[col];
        if r != usize::MAX && rows[r].get(ncols) {
            x.set(col, true);
        }
    }
    Some(x)
}

/// Rank of a GF(2) matrix.
pub fn rank(a: &Gf2Matrix) -> usize {
    let mut rows = a.rows.clone();
    let mut rank = 0;
    for col in 0..a.ncols() {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        rank += 1;
    }
    rank
}
