//! Essential dimension of torus orbit functors and related invariants.
//!
//! A diagonal torus action on affine n-space is encoded by an integer
//! exponent matrix `E`: parameter `t_j` scales coordinate `i` by
//! `t_j^{e_ij}`. The essential dimension of the orbit functor is
//! `n - l`, where `l` counts the elementary divisors of `E` equal to one.
//! Everything else here (projective variants, rigid forms, hypersurfaces,
//! finite abelian groups, canonical dimension) reduces to a Smith normal
//! form computation plus bookkeeping, and the brute-force compression
//! search provides an independent check of the formula on small instances.

use num_bigint::BigInt;
use num_traits::One;

use crate::intmat::{IntMatrix, MatrixError};

mod abelian;
mod certificate;
mod search;

pub use abelian::{
    abelian_obstruction_check, ed_abelian, AbelianGroupSpec, EquivarianceViolation,
    ObstructionCongruence, ObstructionReport,
};
pub use certificate::{construct_independent, IndependenceCertificate};
pub use search::{compression_search, CompressionWitness};

/// Errors from essential-dimension computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EdError {
    #[error("dimension and degree must both be at least 1 (got m = {m}, d = {d})")]
    DegenerateForms { m: usize, d: usize },
    #[error("parameter matrix must be {expected_rows}x{expected_cols}, got {found_rows}x{found_cols}")]
    ParameterShape {
        expected_rows: usize,
        expected_cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("valuation matrix is zero; it certifies no independent elements")]
    ZeroValuationMatrix,
    #[error("modulus {0} is not a positive integer")]
    InvalidModulus(BigInt),
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("prime {prime} does not divide modulus {modulus}")]
    PrimeDoesNotDivide { prime: BigInt, modulus: BigInt },
    #[error("map component {index} is the zero polynomial")]
    ZeroComponent { index: usize },
    #[error("map component {index} must be a polynomial (no negative exponents)")]
    LaurentComponent { index: usize },
    #[error("expected {expected} map components in {expected} variables, got {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A diagonal torus action: `n` coordinates scaled through characters by
/// `m` torus parameters, with exponent matrix `E` of shape `n x m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusActionSpec {
    exponents: IntMatrix,
}

impl TorusActionSpec {
    pub fn new(exponents: IntMatrix) -> Self {
        TorusActionSpec { exponents }
    }

    /// Number of affine coordinates acted on (rows of `E`).
    pub fn coordinates(&self) -> usize {
        self.exponents.rows()
    }

    /// Number of torus parameters (columns of `E`).
    pub fn parameters(&self) -> usize {
        self.exponents.cols()
    }

    pub fn exponents(&self) -> &IntMatrix {
        &self.exponents
    }
}

/// Essential dimension of the orbit functor: `n` minus the number of unit
/// elementary divisors of the exponent matrix.
pub fn ed_torus(spec: &TorusActionSpec) -> usize {
    let snf = spec.exponents.smith_normal_form();
    spec.coordinates() - snf.ones_count()
}

/// Extends an exponent matrix for the action on projective space: the
/// overall scaling becomes one extra parameter, i.e. a column of ones.
pub fn extend_projective(e: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(e.rows(), e.cols() + 1, |r, c| {
        if c == e.cols() {
            BigInt::one()
        } else {
            e[(r, c)].clone()
        }
    })
}

/// Essential dimension of the induced action on projective space, i.e. of
/// the extended exponent matrix. The action lives on the projectivization
/// of `n`-space, so the matrix should have at least one row.
pub fn ed_projective(spec: &TorusActionSpec) -> usize {
    ed_torus(&TorusActionSpec::new(extend_projective(&spec.exponents)))
}

/// Canonical dimension of the action: `r - l` over the `r` elementary
/// divisors with `l` ones. Satisfies
/// `ed_torus = cd_torus + (n - r)`.
pub fn cd_torus(spec: &TorusActionSpec) -> usize {
    let snf = spec.exponents.smith_normal_form();
    snf.rank() - snf.ones_count()
}

/// Rank of `I + E*U` for a concrete choice of parameter valuations `U`
/// (shape `m x n`). This lower-bounds the essential dimension of the
/// orbit of the generic point, and is itself at least `n - rank(E)`.
pub fn rank_lower_bound(spec: &TorusActionSpec, u: &IntMatrix) -> Result<usize, EdError> {
    let (n, m) = (spec.coordinates(), spec.parameters());
    if u.rows() != m || u.cols() != n {
        return Err(EdError::ParameterShape {
            expected_rows: m,
            expected_cols: n,
            found_rows: u.rows(),
            found_cols: u.cols(),
        });
    }
    let eu = spec.exponents.matmul(u)?;
    let sum = IntMatrix::identity(n).add(&eu)?;
    let rank = sum.rank_rational();
    debug_assert!(rank + spec.exponents.rank_rational() >= n);
    Ok(rank)
}

/// Binomial coefficient, exact in `usize` (panics on overflow).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc
            .checked_mul(n - i)
            .expect("binomial coefficient overflow")
            / (i + 1);
    }
    acc
}

/// Rigid homogeneous forms: `d`-forms on an `m`-dimensional space with a
/// fixed frame of coordinate lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormsSpec {
    m: usize,
    d: usize,
    n_coeffs: usize,
}

impl FormsSpec {
    pub fn new(m: usize, d: usize) -> Result<Self, EdError> {
        if m == 0 || d == 0 {
            return Err(EdError::DegenerateForms { m, d });
        }
        Ok(FormsSpec {
            m,
            d,
            n_coeffs: binomial(m + d - 1, d),
        })
    }

    pub fn dimension(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Number of coefficients of a `d`-form in `m` variables.
    pub fn coefficient_count(&self) -> usize {
        self.n_coeffs
    }
}

/// Exponent matrix of the rescaling action on the coefficients of a
/// `d`-form in `m` variables: one row per monomial, listing all
/// compositions of `d` into `m` nonnegative parts in lexicographically
/// decreasing order, from `(d, 0, ..., 0)` down to `(0, ..., 0, d)`.
pub fn forms_matrix(m: usize, d: usize) -> Result<IntMatrix, EdError> {
    let spec = FormsSpec::new(m, d)?;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(spec.coefficient_count());
    let mut current = vec![0i64; m];
    compositions_desc(d as i64, 0, &mut current, &mut rows);
    let matrix = IntMatrix::from_rows(rows).expect("composition rows share a length");
    debug_assert_eq!(matrix.rows(), spec.coefficient_count());
    Ok(matrix)
}

fn compositions_desc(
    remaining: i64,
    index: usize,
    current: &mut Vec<i64>,
    out: &mut Vec<Vec<BigInt>>,
) {
    if index + 1 == current.len() {
        current[index] = remaining;
        out.push(current.iter().map(|&v| BigInt::from(v)).collect());
        return;
    }
    for value in (0..=remaining).rev() {
        current[index] = value;
        compositions_desc(remaining - value, index + 1, current, out);
    }
}

/// Essential dimension of rigid `d`-forms in `m` variables, computed from
/// the Smith normal form of the forms matrix. Equals
/// `C(m+d-1, d) - m + 1` for `d > 1` and `0` for `d = 1`.
pub fn ed_forms(m: usize, d: usize) -> Result<usize, EdError> {
    let matrix = forms_matrix(m, d)?;
    Ok(ed_torus(&TorusActionSpec::new(matrix)))
}

/// Essential dimension of degree-`d` hypersurfaces in a rigid frame on
/// projective `(m-1)`-space. Equals `C(m+d-1, d) - m`.
pub fn ed_hypersurface(m: usize, d: usize) -> Result<usize, EdError> {
    let matrix = forms_matrix(m, d)?;
    Ok(ed_projective(&TorusActionSpec::new(matrix)))
}
