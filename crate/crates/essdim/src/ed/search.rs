//! Brute-force search over monomial compressions.
//!
//! A choice of parameter valuations `U` (an `m x n` integer matrix) turns
//! the generic orbit coordinates into Laurent monomials with exponent
//! matrix `I + E*U`, whose rank is the transcendence degree of the field
//! they generate. The search minimizes that rank over all `U` with entries
//! bounded by `bound`, so it independently confirms the divisor-count
//! formula on small instances.
//!
//! The grid has `(2*bound+1)^(m*n)` points, so the scan earns its keep
//! with three sound prunes that leave the result bit-identical to the
//! naive enumeration:
//!
//! * rank evaluations stop as soon as they cannot beat the running
//!   minimum (`rank(I + E*U) >= n - rank E` caps how low anything can go,
//!   so the minimum pass stops when it reaches that floor);
//! * the minimum is located by growing max-norm shells, which finds deep
//!   cancellations without walking the whole box;
//! * the lexicographically first minimizer is then found by a second
//!   scan that only needs a rank threshold test per point, and when the
//!   minimum is rank zero it is assembled directly from the per-column
//!   solutions of `E*u_c = -e_c`, which are independent of one another.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::intmat::IntMatrix;

use super::TorusActionSpec;

/// The best compression found by [`compression_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressionWitness {
    parameter_valuations: IntMatrix,
    function_exponents: IntMatrix,
    achieved_rank: usize,
}

impl CompressionWitness {
    /// The minimizing matrix `U`, lexicographically smallest in row-major
    /// entry order among all minimizers.
    pub fn parameter_valuations(&self) -> &IntMatrix {
        &self.parameter_valuations
    }

    /// Exponent matrix `I + E*U` of the compressed coordinates.
    pub fn function_exponents(&self) -> &IntMatrix {
        &self.function_exponents
    }

    /// The minimum of `rank(I + E*U)` over the searched grid.
    pub fn achieved_rank(&self) -> usize {
        self.achieved_rank
    }
}

/// Exhaustive search over all `U` with entries of absolute value at most
/// `bound`; returns the minimum achieved rank together with the
/// lexicographically smallest witness.
pub fn compression_search(spec: &TorusActionSpec, bound: usize) -> CompressionWitness {
    let n = spec.coordinates();
    let m = spec.parameters();
    let e = spec.exponents();
    let cells = m * n;
    if cells == 0 {
        return finish(spec, vec![0; 0]);
    }
    let b = i64::try_from(bound).unwrap_or(i64::MAX);
    let floor = n.saturating_sub(e.rank_rational());

    let digits = match FastGrid::try_new(e, b) {
        Some(mut grid) => {
            let min_rank = pass_min_rank(&mut grid, cells, b, floor, n);
            if min_rank == 0 {
                zero_rank_witness(e, b)
            } else {
                pass_lex_witness(&mut grid, cells, b, min_rank)
            }
        }
        None => {
            let mut grid = BigGrid::new(e, b);
            let min_rank = pass_min_rank(&mut grid, cells, b, floor, n);
            if min_rank == 0 {
                zero_rank_witness(e, b)
            } else {
                pass_lex_witness(&mut grid, cells, b, min_rank)
            }
        }
    };
    finish(spec, digits)
}

fn finish(spec: &TorusActionSpec, digits: Vec<i64>) -> CompressionWitness {
    let (n, m) = (spec.coordinates(), spec.parameters());
    let u = IntMatrix::from_fn(m, n, |r, c| BigInt::from(digits[r * n + c]));
    let eu = spec.exponents().matmul(&u).expect("shapes agree");
    let function_exponents = IntMatrix::identity(n).add(&eu).expect("shapes agree");
    let achieved_rank = function_exponents.rank_rational();
    debug_assert!(achieved_rank + spec.exponents().smith_normal_form().ones_count() >= n);
    CompressionWitness {
        parameter_valuations: u,
        function_exponents,
        achieved_rank,
    }
}

trait Grid {
    /// Sets `U` to the given row-major digits and recomputes `I + E*U`.
    fn reset(&mut self, digits: &[i64]);
    /// Adds `delta` to one entry of `U`, updating `I + E*U` incrementally.
    fn apply(&mut self, digit: usize, delta: i64);
    /// `min(rank(I + E*U), cap)`, bailing out as soon as `cap` pivots are
    /// found.
    fn rank_capped(&mut self, cap: usize) -> usize;
}

/// Minimum rank over the box, scanning max-norm shells outward and
/// stopping once the linear-algebra floor is reached.
fn pass_min_rank(grid: &mut impl Grid, cells: usize, b: i64, floor: usize, n: usize) -> usize {
    let mut min_rank = n + 1;
    for s in 0..=b {
        let mut digits = vec![-s; cells];
        grid.reset(&digits);
        // number of digits sitting at magnitude s; only candidates with at
        // least one such digit are new to this shell
        let mut at_limit = cells;
        'candidates: loop {
            if at_limit > 0 || s == 0 {
                let r = grid.rank_capped(min_rank);
                if r < min_rank {
                    min_rank = r;
                    if min_rank <= floor {
                        return min_rank;
                    }
                }
            }
            let mut p = cells;
            loop {
                if p == 0 {
                    break 'candidates;
                }
                p -= 1;
                if digits[p] < s {
                    if digits[p] == -s {
                        at_limit -= 1;
                    }
                    digits[p] += 1;
                    grid.apply(p, 1);
                    if digits[p] == s {
                        at_limit += 1;
                    }
                    break;
                }
                digits[p] = -s;
                grid.apply(p, -2 * s);
            }
        }
    }
    min_rank
}

/// First point of the box, in row-major lexicographic order, achieving the
/// known minimum rank.
fn pass_lex_witness(grid: &mut impl Grid, cells: usize, b: i64, min_rank: usize) -> Vec<i64> {
    let mut digits = vec![-b; cells];
    grid.reset(&digits);
    loop {
        if grid.rank_capped(min_rank + 1) <= min_rank {
            return digits;
        }
        let mut p = cells;
        loop {
            assert!(p > 0, "the box contains a witness of the minimum rank");
            p -= 1;
            if digits[p] < b {
                digits[p] += 1;
                grid.apply(p, 1);
                break;
            }
            digits[p] = -b;
            grid.apply(p, -2 * b);
        }
    }
}

/// Lexicographically smallest `U` with `I + E*U = 0`. The columns of `U`
/// solve independent linear systems `E*u_c = -e_c`, so each column's
/// solution set is enumerated separately and the row-major minimum is
/// assembled greedily.
fn zero_rank_witness(e: &IntMatrix, b: i64) -> Vec<i64> {
    let (n, m) = (e.rows(), e.cols());
    let mut column_solutions: Vec<Vec<Vec<i64>>> = Vec::with_capacity(n);
    for c in 0..n {
        let target: Vec<BigInt> = (0..n)
            .map(|i| if i == c { BigInt::from(-1) } else { BigInt::zero() })
            .collect();
        let mut sols: Vec<Vec<i64>> = Vec::new();
        let mut x = vec![-b; m];
        let mut y: Vec<BigInt> = (0..n)
            .map(|i| (0..m).map(|k| &e[(i, k)] * x[k]).sum())
            .collect();
        loop {
            if y == target {
                sols.push(x.clone());
            }
            let mut p = m;
            let mut wrapped = false;
            loop {
                if p == 0 {
                    wrapped = true;
                    break;
                }
                p -= 1;
                if x[p] < b {
                    x[p] += 1;
                    for i in 0..n {
                        let delta = e[(i, p)].clone();
                        y[i] += delta;
                    }
                    break;
                }
                x[p] = -b;
                for i in 0..n {
                    let delta = &e[(i, p)] * (2 * b);
                    y[i] -= delta;
                }
            }
            if wrapped {
                break;
            }
        }
        assert!(!sols.is_empty(), "rank zero was achieved, so each column system is solvable");
        column_solutions.push(sols);
    }

    let mut digits = vec![0i64; m * n];
    let mut live: Vec<Vec<usize>> = column_solutions
        .iter()
        .map(|s| (0..s.len()).collect())
        .collect();
    for r in 0..m {
        for c in 0..n {
            let best = live[c]
                .iter()
                .map(|&i| column_solutions[c][i][r])
                .min()
                .expect("solution set is nonempty");
            live[c].retain(|&i| column_solutions[c][i][r] == best);
            digits[r * n + c] = best;
        }
    }
    digits
}

/// Machine-integer grid: exponents, `U` and `I + E*U` in `i64`, rank in
/// `i128` Bareiss elimination. Only constructed when a Hadamard-style
/// bound certifies that no intermediate minor can overflow.
struct FastGrid {
    n: usize,
    m: usize,
    e: Vec<i64>,
    mat: Vec<i64>,
    scratch: Vec<i128>,
}

impl FastGrid {
    fn try_new(e: &IntMatrix, b: i64) -> Option<FastGrid> {
        let (n, m) = (e.rows(), e.cols());
        let mut flat = Vec::with_capacity(n * m);
        for r in 0..n {
            for c in 0..m {
                flat.push(i64::try_from(&e[(r, c)]).ok()?);
            }
        }
        let max_row_sum = (0..n)
            .map(|r| {
                (0..m)
                    .map(|c| (flat[r * m + c].unsigned_abs() as u128).checked_mul(b as u128))
                    .try_fold(0u128, |acc, v| v.and_then(|v| acc.checked_add(v)))
            })
            .try_fold(0u128, |acc, v| v.map(|v| acc.max(v)))?;
        let max_entry = max_row_sum.checked_add(1)? as f64;
        // every minor the elimination touches is bounded by (sqrt(n) * max)^n
        let minor_bits = (n as f64) * ((n as f64).sqrt() * max_entry).log2();
        if minor_bits.is_nan() || minor_bits >= 60.0 {
            return None;
        }
        Some(FastGrid {
            n,
            m,
            e: flat,
            mat: vec![0; n * n],
            scratch: vec![0; n * n],
        })
    }
}

impl Grid for FastGrid {
    fn reset(&mut self, digits: &[i64]) {
        let (n, m) = (self.n, self.m);
        for i in 0..n {
            for j in 0..n {
                let mut acc = if i == j { 1 } else { 0 };
                for k in 0..m {
                    acc += self.e[i * m + k] * digits[k * n + j];
                }
                self.mat[i * n + j] = acc;
            }
        }
    }

    fn apply(&mut self, digit: usize, delta: i64) {
        let (n, m) = (self.n, self.m);
        let (row_u, col_u) = (digit / n, digit % n);
        for i in 0..n {
            self.mat[i * n + col_u] += self.e[i * m + row_u] * delta;
        }
    }

    fn rank_capped(&mut self, cap: usize) -> usize {
        let n = self.n;
        if cap == 0 {
            return 0;
        }
        let w = &mut self.scratch;
        for (dst, &src) in w.iter_mut().zip(self.mat.iter()) {
            *dst = src as i128;
        }
        let mut rank = 0;
        let mut row = 0;
        let mut prev: i128 = 1;
        for col in 0..n {
            let Some(pivot_row) = (row..n).find(|&r| w[r * n + col] != 0) else {
                continue;
            };
            if pivot_row != row {
                for j in col..n {
                    w.swap(row * n + j, pivot_row * n + j);
                }
            }
            rank += 1;
            if rank == cap {
                return cap;
            }
            let pivot = w[row * n + col];
            if rank + 1 == cap {
                // only existence of one more pivot matters; test the
                // eliminated entries lazily without storing them
                for r in row + 1..n {
                    for c in col + 1..n {
                        if w[r * n + c] * pivot != w[r * n + col] * w[row * n + c] {
                            return cap;
                        }
                    }
                }
                return rank;
            }
            for r in row + 1..n {
                for c in col + 1..n {
                    let num = w[r * n + c] * pivot - w[r * n + col] * w[row * n + c];
                    w[r * n + c] = num / prev;
                }
                w[r * n + col] = 0;
            }
            prev = pivot;
            row += 1;
            if row == n {
                break;
            }
        }
        rank
    }
}

/// Arbitrary-precision fallback for exponent matrices too large for the
/// machine-integer bound. Same scans, `BigInt` arithmetic.
struct BigGrid {
    n: usize,
    m: usize,
    e: IntMatrix,
    mat: Vec<BigInt>,
}

impl BigGrid {
    fn new(e: &IntMatrix, _b: i64) -> BigGrid {
        let n = e.rows();
        BigGrid {
            n,
            m: e.cols(),
            e: e.clone(),
            mat: vec![BigInt::zero(); n * n],
        }
    }
}

impl Grid for BigGrid {
    fn reset(&mut self, digits: &[i64]) {
        let (n, m) = (self.n, self.m);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::from(i64::from(i == j));
                for k in 0..m {
                    acc += &self.e[(i, k)] * digits[k * n + j];
                }
                self.mat[i * n + j] = acc;
            }
        }
    }

    fn apply(&mut self, digit: usize, delta: i64) {
        let (n, _) = (self.n, self.m);
        let (row_u, col_u) = (digit / n, digit % n);
        for i in 0..n {
            let d = &self.e[(i, row_u)] * delta;
            self.mat[i * n + col_u] += d;
        }
    }

    fn rank_capped(&mut self, cap: usize) -> usize {
        let n = self.n;
        if cap == 0 {
            return 0;
        }
        let mut w = self.mat.clone();
        let mut rank = 0;
        let mut row = 0;
        let mut prev = BigInt::from(1);
        for col in 0..n {
            let Some(pivot_row) = (row..n).find(|&r| !w[r * n + col].is_zero()) else {
                continue;
            };
            if pivot_row != row {
                for j in col..n {
                    w.swap(row * n + j, pivot_row * n + j);
                }
            }
            rank += 1;
            if rank == cap {
                return cap;
            }
            if rank + 1 == cap {
                for r in row + 1..n {
                    for c in col + 1..n {
                        if &w[r * n + c] * &w[row * n + col]
                            != &w[r * n + col] * &w[row * n + c]
                        {
                            return cap;
                        }
                    }
                }
                return rank;
            }
            for r in row + 1..n {
                for c in col + 1..n {
                    let num =
                        &w[r * n + c] * &w[row * n + col] - &w[r * n + col] * &w[row * n + c];
                    w[r * n + c] = num / &prev;
                }
                w[r * n + col] = BigInt::zero();
            }
            prev = w[row * n + col].clone();
            row += 1;
            if row == n {
                break;
            }
        }
        rank
    }
}
