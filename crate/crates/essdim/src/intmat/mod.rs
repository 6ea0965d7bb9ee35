//! Exact arbitrary-precision integer matrices.
//!
//! Everything in this module is computed over `BigInt`: rank is found by
//! fraction-free (Bareiss) elimination, determinants are exact, and the
//! Smith normal form comes with the unimodular transformations that
//! produced it. Intermediate entries in these algorithms can grow well
//! past any fixed width, so there is no machine-integer fast path.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

mod snf;

pub use snf::SmithDecomposition;

/// Errors from matrix construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("shape mismatch in {op}: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("modulus must have absolute value at least 2, got {0}")]
    ModulusOutOfRange(BigInt),
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix parse error at row {row}, entry {entry}: {message}")]
    Parse {
        row: usize,
        entry: usize,
        message: String,
    },
}

/// A dense row-major matrix over the integers.
///
/// Empty dimensions are allowed; a `0 x m` or `n x 0` matrix has no entries
/// and rank zero. Values are immutable in spirit: all operations return new
/// matrices, and `IndexMut` exists only for convenient construction.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// The zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    /// The `n x n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Square matrix with the given diagonal, zero elsewhere.
    pub fn diagonal(diag: &[BigInt]) -> Self {
        let n = diag.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from rows, which must all have the same length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(MatrixError::RaggedRows {
                    row: i,
                    expected: ncols,
                    found: row.len(),
                });
            }
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "rows must have equal length"
        );
        IntMatrix::from_fn(nrows, ncols, |r, c| BigInt::from(rows[r][c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Iterates over the entries of row `r`.
    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Entrywise sum.
    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.shape_mismatch("add", other));
        }
        Ok(IntMatrix::from_fn(self.rows, self.cols, |r, c| {
            &self[(r, c)] + &other[(r, c)]
        }))
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(self.shape_mismatch("matmul", other));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a * &other[(k, c)];
                    out[(r, c)] += term;
                }
            }
        }
        Ok(out)
    }

    fn shape_mismatch(&self, op: &'static str, other: &IntMatrix) -> MatrixError {
        MatrixError::ShapeMismatch {
            op,
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut w = self.entries.clone();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if w[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !w[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            w.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &w[i * n + j] * &w[k * n + k] - &w[i * n + k] * &w[k * n + j];
                    w[i * n + j] = num / &prev;
                }
                w[i * n + k] = BigInt::zero();
            }
            prev = w[k * n + k].clone();
        }
        let det = w[(n - 1) * n + (n - 1)].clone();
        Ok(if sign < 0 { -det } else { det })
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank_rational(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        if rows == 0 || cols == 0 {
            return 0;
        }
        let mut w = self.entries.clone();
        let at = |w: &Vec<BigInt>, r: usize, c: usize| w[r * cols + c].clone();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..cols {
            let Some(pivot_row) = (rank..rows).find(|&r| !w[r * cols + col].is_zero()) else {
                continue;
            };
            if pivot_row != rank {
                for j in 0..cols {
                    w.swap(rank * cols + j, pivot_row * cols + j);
                }
            }
            let pivot = at(&w, rank, col);
            for r in rank + 1..rows {
                for c in col + 1..cols {
                    let num = &w[r * cols + c] * &pivot - &w[r * cols + col] * &w[rank * cols + c];
                    w[r * cols + c] = num / &prev;
                }
                w[r * cols + col] = BigInt::zero();
            }
            prev = pivot;
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Determinantal rank of the matrix modulo `m`: the largest `k` such
    /// that some `k x k` minor is not divisible by `m`.
    ///
    /// Computed through the elementary divisors: the gcd of all `k x k`
    /// minors is `d_1 * ... * d_k`, so the rank mod `m` is the largest `k`
    /// for which `m` does not divide that product. For prime `m` this
    /// equals the rank over the field with `m` elements.
    pub fn rank_mod(&self, m: &BigInt) -> Result<usize, MatrixError> {
        let modulus = m.abs();
        if modulus < BigInt::from(2) {
            return Err(MatrixError::ModulusOutOfRange(m.clone()));
        }
        let divisors = self.elementary_divisors();
        let mut product = BigInt::one();
        let mut rank = 0;
        for d in &divisors {
            product *= d;
            if (&product % &modulus).is_zero() {
                break;
            }
            rank += 1;
        }
        Ok(rank)
    }

    /// Smith normal form with unimodular transformations: `p * self * q = d`.
    pub fn smith_normal_form(&self) -> SmithDecomposition {
        snf::smith_normal_form(self)
    }

    /// The elementary divisors `d_1 | d_2 | ... | d_r`, all positive.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        snf::smith_normal_form(self).into_divisors()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Display for IntMatrix {
    /// Prints in the same text format the parser accepts: entries separated
    /// by spaces, rows by `"; "`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{}: {})", self.rows, self.cols, self)
    }
}

impl FromStr for IntMatrix {
    type Err = MatrixError;

    /// Parses the matrix text format: rows separated by `;` or newlines,
    /// entries by whitespace (commas also accepted), optional surrounding
    /// brackets ignored. Example: `"2 0; 1 1; 0 2"`.
    fn from_str(text: &str) -> Result<Self, MatrixError> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (row_idx, raw_row) in text.split([';', '\n']).enumerate() {
            let cleaned: String = raw_row
                .chars()
                .map(|ch| match ch {
                    '[' | ']' | ',' => ' ',
                    other => other,
                })
                .collect();
            let mut row = Vec::new();
            for (entry_idx, token) in cleaned.split_whitespace().enumerate() {
                let value = token.parse::<BigInt>().map_err(|_| MatrixError::Parse {
                    row: row_idx + 1,
                    entry: entry_idx + 1,
                    message: format!("`{token}` is not an integer"),
                })?;
                row.push(value);
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
        let expected = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != expected {
                return Err(MatrixError::RaggedRows {
                    row: i,
                    expected,
                    found: row.len(),
                });
            }
        }
        IntMatrix::from_rows(rows)
    }
}
