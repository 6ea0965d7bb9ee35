//! Constructive transcendence-independence certificates.
//!
//! From a matrix `v` whose rows are the valuations of functions
//! `f_1, ..., f_r`, we produce integer multipliers `Lambda` such that the
//! products `g_j = f_1^{Lambda_j1} * ... * f_r^{Lambda_jr}` have valuation
//! rows of the shape `(0, ..., 0, lambda, *, ..., *)` with the `lambda`
//! sitting in distinct columns. Those staircase rows are visibly linearly
//! independent, which certifies that `rank v` of the functions are
//! algebraically independent.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::intmat::IntMatrix;

use super::EdError;

/// Witness data produced by [`construct_independent`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceCertificate {
    lambda: BigInt,
    lambda_matrix: IntMatrix,
    row_select: Vec<usize>,
    col_select: Vec<usize>,
    g_exponents: IntMatrix,
}

impl IndependenceCertificate {
    /// The positive scale factor: the absolute determinant of the selected
    /// submatrix.
    pub fn lambda(&self) -> &BigInt {
        &self.lambda
    }

    /// The `s x r` multiplier matrix. Row `j` lists the powers of the
    /// input functions forming `g_j`.
    pub fn lambda_matrix(&self) -> &IntMatrix {
        &self.lambda_matrix
    }

    /// Input rows hosting the selected nonsingular submatrix.
    pub fn row_select(&self) -> &[usize] {
        &self.row_select
    }

    /// Columns of the selected nonsingular submatrix, in increasing order.
    pub fn col_select(&self) -> &[usize] {
        &self.col_select
    }

    /// The valuations of the certified functions: `lambda_matrix * v`.
    pub fn g_exponents(&self) -> &IntMatrix {
        &self.g_exponents
    }

    /// Rank of the certificate, i.e. how many independent elements it
    /// certifies.
    pub fn rank(&self) -> usize {
        self.row_select.len()
    }
}

/// Selects a maximal nonsingular submatrix of `v` by fraction-free
/// elimination (first usable row per column, columns scanned left to
/// right) and assembles the certificate from the scaled inverse
/// `lambda * V~^-1`, which is integral by the adjugate formula.
pub fn construct_independent(v: &IntMatrix) -> Result<IndependenceCertificate, EdError> {
    if v.is_zero() {
        return Err(EdError::ZeroValuationMatrix);
    }
    let (rows, cols) = (v.rows(), v.cols());

    let mut work = v.clone();
    let mut perm: Vec<usize> = (0..rows).collect();
    let mut row_select = Vec::new();
    let mut col_select = Vec::new();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !work[(r, col)].is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            for j in 0..cols {
                let tmp = work[(rank, j)].clone();
                work[(rank, j)] = work[(pivot_row, j)].clone();
                work[(pivot_row, j)] = tmp;
            }
            perm.swap(rank, pivot_row);
        }
        row_select.push(perm[rank]);
        col_select.push(col);
        let pivot = work[(rank, col)].clone();
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &work[(r, c)] * &pivot - &work[(r, col)] * &work[(rank, c)];
                work[(r, c)] = num / &prev;
            }
            work[(r, col)] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }

    let s = rank;
    let selected = IntMatrix::from_fn(s, s, |i, j| v[(row_select[i], col_select[j])].clone());
    let det = selected.det().expect("selected submatrix is square");
    debug_assert!(!det.is_zero());
    let lambda = det.abs();

    // lambda * V~^-1 = sign(det) * adj(V~)
    let scaled_inverse = IntMatrix::from_fn(s, s, |i, j| {
        let minor = IntMatrix::from_fn(s - 1, s - 1, |r, c| {
            let rr = if r < j { r } else { r + 1 };
            let cc = if c < i { c } else { c + 1 };
            selected[(rr, cc)].clone()
        });
        let cofactor = minor.det().expect("minor is square");
        let signed = if (i + j) % 2 == 0 { cofactor } else { -cofactor };
        if det.is_negative() {
            -signed
        } else {
            signed
        }
    });

    let mut lambda_matrix = IntMatrix::zeros(s, rows);
    for j in 0..s {
        for i in 0..s {
            lambda_matrix[(j, row_select[i])] = scaled_inverse[(j, i)].clone();
        }
    }

    let g_exponents = lambda_matrix.matmul(v).expect("shapes agree");

    #[cfg(debug_assertions)]
    {
        for j in 0..s {
            for (i, &c) in col_select.iter().enumerate() {
                let expected = if i == j { lambda.clone() } else { BigInt::zero() };
                debug_assert_eq!(g_exponents[(j, c)], expected);
            }
            for c in 0..col_select[j] {
                debug_assert!(g_exponents[(j, c)].is_zero());
            }
        }
    }

    Ok(IndependenceCertificate {
        lambda,
        lambda_matrix,
        row_select,
        col_select,
        g_exponents,
    })
}
