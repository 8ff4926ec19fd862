//! Dense bit-packed matrices over GF(2).
//!
//! Rows are packed into `u64` words; elimination works a word at a time, so
//! the rank, kernel, and solve routines stay fast at the sizes the zigzag
//! pipeline produces (a few hundred rows at most).

use crate::error::{Error, Result};

/// A `rows x cols` matrix over GF(2), row-major, bit-packed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl GF2Matrix {
    /// The zero matrix of the given shape. Zero-dimensional shapes are fine.
    pub fn zero(rows: usize, cols: usize) -> GF2Matrix {
        let words_per_row = cols.div_ceil(64);
        GF2Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> GF2Matrix {
        let mut m = GF2Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from explicit 0/1 entries; every row must have equal length.
    pub fn from_rows(rows: &[Vec<u8>], cols: usize) -> Result<GF2Matrix> {
        let mut m = GF2Matrix::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "matrix row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    cols
                )));
            }
            for (j, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => {
                        return Err(Error::InvalidInput(format!(
                            "matrix entry ({i},{j}) is {e}, expected 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds from a predicate over index pairs.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> GF2Matrix {
        let mut m = GF2Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        let word = self.data[i * self.words_per_row + j / 64];
        (word >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let word = &mut self.data[i * self.words_per_row + j / 64];
        if bit {
            *word |= 1 << (j % 64);
        } else {
            *word &= !(1 << (j % 64));
        }
    }

    /// Explicit 0/1 entries, row-major.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    fn xor_rows(&mut self, target: usize, source: usize) {
        let (t, s) = (target * self.words_per_row, source * self.words_per_row);
        for w in 0..self.words_per_row {
            let v = self.data[s + w];
            self.data[t + w] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words_per_row {
            self.data
                .swap(a * self.words_per_row + w, b * self.words_per_row + w);
        }
    }

    /// Horizontal concatenation `[self | right]`; row counts must agree.
    pub fn hstack(&self, right: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.rows, right.rows, "hstack with mismatched row counts");
        let mut m = GF2Matrix::zero(self.rows, self.cols + right.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.set(i, j, true);
                }
            }
            for j in 0..right.cols {
                if right.get(i, j) {
                    m.set(i, self.cols + j, true);
                }
            }
        }
        m
    }

    /// Matrix product over GF(2); `self.cols` must equal `other.rows`.
    pub fn mul(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.cols, other.rows, "mul with mismatched shapes");
        let mut out = GF2Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (t, s) = (i * out.words_per_row, k * other.words_per_row);
                    for w in 0..out.words_per_row {
                        out.data[t + w] ^= other.data[s + w];
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot column of each
    /// eliminated row, in order.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_rows(r, row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of the right null space `{x : self * x = 0}`, one vector per
    /// row of the result (shape `nullity x cols`).
    pub fn kernel_basis(&self) -> GF2Matrix {
        let mut work = self.clone();
        let pivots = work.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = GF2Matrix::zero(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if work.get(r, f) {
                    basis.set(k, p, true);
                }
            }
        }
        basis
    }

    /// Solves `self * X = rhs` for one particular solution (free variables
    /// zero). `None` when inconsistent.
    pub fn solve(&self, rhs: &GF2Matrix) -> Option<GF2Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve with mismatched row counts");
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref();
        // A pivot landing in the rhs block means some row reads 0 = 1.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = GF2Matrix::zero(self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                if aug.get(r, self.cols + j) {
                    x.set(p, j, true);
                }
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<GF2Matrix> {
        if self.rows != self.cols || self.rank() != self.rows {
            return None;
        }
        self.solve(&GF2Matrix::identity(self.rows))
    }

    /// Row `i` as a packed bit vector.
    pub fn row_words(&self, i: usize) -> Vec<u64> {
        self.data[i * self.words_per_row..(i + 1) * self.words_per_row].to_vec()
    }

    /// Column `j` as a packed bit vector of length `rows`.
    pub fn column_words(&self, j: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.rows.div_ceil(64)];
        for i in 0..self.rows {
            if self.get(i, j) {
                out[i / 64] |= 1 << (i % 64);
            }
        }
        out
    }
}

/// Incremental GF(2) row space in echelon form, for rank growth and
/// membership tests. Vectors are packed bit rows of a fixed width.
pub struct Echelon {
    words: usize,
    // rows with pairwise distinct leading (lowest set) bit positions
    rows: Vec<(usize, Vec<u64>)>,
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

impl Echelon {
    pub fn new(width: usize) -> Echelon {
        Echelon {
            words: width.div_ceil(64),
            rows: Vec::new(),
        }
    }

    /// Reduces `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [u64]) {
        loop {
            let Some(lead) = leading_bit(v) else { return };
            let Some((_, row)) = self.rows.iter().find(|(l, _)| *l == lead) else {
                return;
            };
            for (a, b) in v.iter_mut().zip(row) {
                *a ^= b;
            }
        }
    }

    /// Reduces `v` and stores the remainder. Returns true when `v` was
    /// independent of the rows seen so far.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.words);
        self.reduce(&mut v);
        match leading_bit(&v) {
            Some(lead) => {
                self.rows.push((lead, v));
                true
            }
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}
