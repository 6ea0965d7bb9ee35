//! Smith normal form over the integers.
//!
//! `p * a * q = d` with `p`, `q` unimodular and `d` diagonal, the diagonal
//! entries positive and each dividing the next. Pivots are chosen as the
//! nonzero entry of smallest absolute value (ties broken in row-major
//! order), which keeps coefficient growth down and makes the output
//! deterministic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// The result of a Smith normal form computation.
///
/// Invariants: `p * input * q = d` exactly, `|det p| = |det q| = 1`, the
/// divisors are positive with `d_i | d_{i+1}`, and zero diagonal entries
/// come last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    p: IntMatrix,
    d: IntMatrix,
    q: IntMatrix,
    divisors: Vec<BigInt>,
    ones_count: usize,
}

impl SmithDecomposition {
    /// Left transformation (`rows x rows`, unimodular).
    pub fn p(&self) -> &IntMatrix {
        &self.p
    }

    /// The diagonal matrix, same shape as the input.
    pub fn d(&self) -> &IntMatrix {
        &self.d
    }

    /// Right transformation (`cols x cols`, unimodular).
    pub fn q(&self) -> &IntMatrix {
        &self.q
    }

    /// The nonzero diagonal entries `d_1 | d_2 | ... | d_r`.
    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Number of divisors equal to one.
    pub fn ones_count(&self) -> usize {
        self.ones_count
    }

    /// Number of nonzero divisors, i.e. the rank of the input.
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn into_divisors(self) -> Vec<BigInt> {
        self.divisors
    }
}

struct Reduction {
    d: IntMatrix,
    p: IntMatrix,
    q: IntMatrix,
}

impl Reduction {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.d.cols() {
            let tmp = self.d[(a, j)].clone();
            self.d[(a, j)] = self.d[(b, j)].clone();
            self.d[(b, j)] = tmp;
        }
        for j in 0..self.p.cols() {
            let tmp = self.p[(a, j)].clone();
            self.p[(a, j)] = self.p[(b, j)].clone();
            self.p[(b, j)] = tmp;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.d.rows() {
            let tmp = self.d[(i, a)].clone();
            self.d[(i, a)] = self.d[(i, b)].clone();
            self.d[(i, b)] = tmp;
        }
        for i in 0..self.q.rows() {
            let tmp = self.q[(i, a)].clone();
            self.q[(i, a)] = self.q[(i, b)].clone();
            self.q[(i, b)] = tmp;
        }
    }

    /// `row_i -= factor * row_k`, applied to `d` and `p`.
    fn row_sub(&mut self, i: usize, k: usize, factor: &BigInt) {
        for j in 0..self.d.cols() {
            let delta = factor * &self.d[(k, j)];
            self.d[(i, j)] -= delta;
        }
        for j in 0..self.p.cols() {
            let delta = factor * &self.p[(k, j)];
            self.p[(i, j)] -= delta;
        }
    }

    /// `col_j -= factor * col_k`, applied to `d` and `q`.
    fn col_sub(&mut self, j: usize, k: usize, factor: &BigInt) {
        for i in 0..self.d.rows() {
            let delta = factor * &self.d[(i, k)];
            self.d[(i, j)] -= delta;
        }
        for i in 0..self.q.rows() {
            let delta = factor * &self.q[(i, k)];
            self.q[(i, j)] -= delta;
        }
    }

    /// `col_j += col_k`, applied to `d` and `q`.
    fn col_add(&mut self, j: usize, k: usize) {
        for i in 0..self.d.rows() {
            let delta = self.d[(i, k)].clone();
            self.d[(i, j)] += delta;
        }
        for i in 0..self.q.rows() {
            let delta = self.q[(i, k)].clone();
            self.q[(i, j)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.d.cols() {
            let v = -self.d[(i, j)].clone();
            self.d[(i, j)] = v;
        }
        for j in 0..self.p.cols() {
            let v = -self.p[(i, j)].clone();
            self.p[(i, j)] = v;
        }
    }

    /// Nonzero entry of smallest absolute value in the submatrix starting
    /// at `(k, k)`, ties broken in row-major order.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.d.rows() {
            for j in k..self.d.cols() {
                let e = &self.d[(i, j)];
                if e.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.d[b].abs() <= e.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row `k` and column `k` outside the pivot. Returns false when
    /// the remaining submatrix is entirely zero.
    fn run_stage(&mut self, k: usize) -> bool {
        loop {
            let Some((pi, pj)) = self.find_pivot(k) else {
                return false;
            };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            let mut dirty = false;
            for i in k + 1..self.d.rows() {
                if self.d[(i, k)].is_zero() {
                    continue;
                }
                // truncated quotient leaves a remainder smaller than the pivot
                let factor = &self.d[(i, k)] / &self.d[(k, k)];
                self.row_sub(i, k, &factor);
                if !self.d[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..self.d.cols() {
                if self.d[(k, j)].is_zero() {
                    continue;
                }
                let factor = &self.d[(k, j)] / &self.d[(k, k)];
                self.col_sub(j, k, &factor);
                if !self.d[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                return true;
            }
        }
    }

    /// Diagonalizes the submatrix starting at `(start, start)`; returns the
    /// index one past the last nonzero diagonal entry.
    fn diagonalize(&mut self, start: usize) -> usize {
        let limit = self.d.rows().min(self.d.cols());
        for k in start..limit {
            if !self.run_stage(k) {
                return k;
            }
        }
        limit
    }
}

pub(super) fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let mut red = Reduction {
        d: a.clone(),
        p: IntMatrix::identity(a.rows()),
        q: IntMatrix::identity(a.cols()),
    };

    let mut rank = red.diagonalize(0);

    // Repair divisibility violations: pulling the next column in makes the
    // gcd the new pivot when the submatrix is rediagonalized.
    loop {
        let violation = (0..rank.saturating_sub(1))
            .find(|&i| !(&red.d[(i + 1, i + 1)] % &red.d[(i, i)]).is_zero());
        let Some(i) = violation else { break };
        red.col_add(i, i + 1);
        rank = red.diagonalize(i);
    }

    for i in 0..rank {
        if red.d[(i, i)].is_negative() {
            red.negate_row(i);
        }
    }

    let divisors: Vec<BigInt> = (0..rank).map(|i| red.d[(i, i)].clone()).collect();
    let ones_count = divisors.iter().filter(|d| d.is_one()).count();

    debug_assert_eq!(red.p.matmul(a).unwrap().matmul(&red.q).unwrap(), red.d);

    SmithDecomposition {
        p: red.p,
        d: red.d,
        q: red.q,
        divisors,
        ones_count,
    }
}
