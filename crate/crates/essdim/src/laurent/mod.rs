//! Laurent polynomials over the rationals and their monomial valuation.
//!
//! The valuation used throughout assigns to a nonzero Laurent polynomial
//! the lexicographically smallest exponent vector occurring in it. It is
//! the divisor-chain valuation for the nested coordinate hyperplanes
//! `x_1 = 0`, `x_1 = x_2 = 0`, ..., extended to rational functions by
//! `v(f/g) = v(f) - v(g)`. Coefficients only ever matter through being
//! nonzero, so exact rationals are enough for every identity checked here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::intmat::IntMatrix;

mod parse;

pub use parse::{parse_laurent, ParseError};

/// Errors from valuation and substitution operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("the zero polynomial has no valuation")]
    ZeroPolynomial,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("expected a polynomial, found negative exponent in term {0}")]
    NegativeExponent(ExponentVector),
    #[error("substitution image for variable {index} must be a single nonzero term")]
    NotMonomial { index: usize },
    #[error("expected {expected} entries, got {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("chain matrix must be upper triangular with unit diagonal")]
    NotUnitUpperTriangular,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// An element of the value group `Z^n`, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(coords: Vec<i64>) -> Self {
        ExponentVector(coords)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Row of the exponent vector as a `1 x n` integer matrix.
    pub fn to_row_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(1, self.0.len(), |_, c| BigInt::from(self.0[c]))
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, other: &ExponentVector) -> ExponentVector {
        assert_eq!(self.len(), other.len(), "exponent length mismatch");
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;

    fn sub(self, other: &ExponentVector) -> ExponentVector {
        assert_eq!(self.len(), other.len(), "exponent length mismatch");
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;

    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|&c| -c).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A Laurent polynomial: a finite map from exponent vectors in `Z^n` to
/// nonzero rational coefficients.
///
/// Terms are kept in a sorted map keyed by lexicographic order, so the
/// valuation is the first key, the initial exponent is the last, and equal
/// polynomials compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: BigRational) -> Self {
        let mut p = LaurentPoly::zero(nvars);
        p.add_term(ExponentVector::zero(nvars), value);
        p
    }

    /// A single term `coeff * x^exponents`.
    pub fn monomial(exponents: ExponentVector, coeff: BigRational) -> Self {
        let mut p = LaurentPoly::zero(exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    /// The variable `x_index` among `nvars` variables.
    pub fn variable(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut coords = vec![0; nvars];
        coords[index] = 1;
        LaurentPoly::monomial(ExponentVector::new(coords), BigRational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exp: ExponentVector, coeff: BigRational) {
        assert_eq!(exp.len(), self.nvars, "exponent length mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> LaurentPoly {
        if factor.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    /// Nonnegative integer power by repeated multiplication.
    pub fn pow(&self, exp: u32) -> LaurentPoly {
        let mut out = LaurentPoly::constant(self.nvars, BigRational::one());
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// The valuation: the lexicographically smallest exponent of a nonzero
    /// polynomial. The zero polynomial is rejected rather than mapped to a
    /// sentinel.
    pub fn valuation(&self) -> Result<ExponentVector, LaurentError> {
        self.terms
            .keys()
            .next()
            .cloned()
            .ok_or(LaurentError::ZeroPolynomial)
    }

    /// The initial exponent `in(f)`: the lexicographically largest exponent.
    /// Satisfies `in(f) = -v(f(x_1^-1, ..., x_n^-1))`.
    pub fn initial_exponent(&self) -> Result<ExponentVector, LaurentError> {
        self.terms
            .keys()
            .next_back()
            .cloned()
            .ok_or(LaurentError::ZeroPolynomial)
    }

    /// Substitutes a Laurent monomial for each variable. Exponent
    /// arithmetic is integer-linear: a term `x^e` maps to the product of
    /// the images raised to the `e_j`.
    pub fn substitute_monomials(&self, images: &[LaurentPoly]) -> Result<LaurentPoly, LaurentError> {
        if images.len() != self.nvars {
            return Err(LaurentError::CountMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let mut image_parts = Vec::with_capacity(images.len());
        let mut out_vars = self.nvars;
        for (index, image) in images.iter().enumerate() {
            let mut terms = image.terms();
            let (first, rest) = (terms.next(), terms.next());
            match (first, rest) {
                (Some((e, c)), None) => {
                    out_vars = e.len();
                    image_parts.push((e.clone(), c.clone()));
                }
                _ => return Err(LaurentError::NotMonomial { index }),
            }
        }
        if image_parts.iter().any(|(e, _)| e.len() != out_vars) {
            return Err(LaurentError::CountMismatch {
                expected: out_vars,
                found: image_parts
                    .iter()
                    .map(|(e, _)| e.len())
                    .find(|&l| l != out_vars)
                    .unwrap_or(out_vars),
            });
        }
        let mut out = LaurentPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut exp = ExponentVector::zero(out_vars);
            let mut coeff = c.clone();
            for (j, &power) in e.coords().iter().enumerate() {
                let (img_exp, img_coeff) = &image_parts[j];
                for (k, ie) in img_exp.coords().iter().enumerate() {
                    exp.0[k] += ie * power;
                }
                coeff *= rational_pow(img_coeff, power);
            }
            out.add_term(exp, coeff);
        }
        Ok(out)
    }

    /// Recenters a polynomial: returns `f(y + c)` as a polynomial in `y`.
    /// Composing with the valuation gives the order of vanishing along the
    /// hyperplane chain shifted to the point `c`.
    pub fn shift_center(&self, center: &[BigRational]) -> Result<LaurentPoly, LaurentError> {
        if center.len() != self.nvars {
            return Err(LaurentError::CountMismatch {
                expected: self.nvars,
                found: center.len(),
            });
        }
        if let Some((e, _)) = self.terms.iter().find(|(e, _)| e.coords().iter().any(|&c| c < 0)) {
            return Err(LaurentError::NegativeExponent(e.clone()));
        }
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = LaurentPoly::constant(self.nvars, c.clone());
            for (i, &power) in e.coords().iter().enumerate() {
                if power == 0 {
                    continue;
                }
                let shifted = LaurentPoly::variable(self.nvars, i)
                    .add(&LaurentPoly::constant(self.nvars, center[i].clone()));
                term = term.mul(&shifted.pow(power as u32));
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Renders the polynomial using the given variable names, largest
    /// exponent first. The output parses back to the same polynomial.
    pub fn to_expr_string(&self, vars: &[impl AsRef<str>]) -> String {
        assert_eq!(vars.len(), self.nvars, "variable count mismatch");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.is_zero() {
                let mut s = abs.numer().to_string();
                if !abs.denom().is_one() {
                    s.push('/');
                    s.push_str(&abs.denom().to_string());
                }
                factors.push(s);
            }
            for (j, &power) in e.coords().iter().enumerate() {
                if power == 0 {
                    continue;
                }
                if power == 1 {
                    factors.push(vars[j].as_ref().to_string());
                } else {
                    factors.push(format!("{}^{}", vars[j].as_ref(), power));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn rational_pow(q: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let power = u32::try_from(exp.unsigned_abs()).expect("exponent magnitude too large");
    let numer = q.numer().pow(power);
    let denom = q.denom().pow(power);
    if exp > 0 {
        BigRational::new(numer, denom)
    } else {
        BigRational::new(denom, numer)
    }
}

/// A quotient of Laurent polynomials with nonzero denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl RationalFunction {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self, LaurentError> {
        if denominator.is_zero() {
            return Err(LaurentError::ZeroDenominator);
        }
        if numerator.nvars() != denominator.nvars() {
            return Err(LaurentError::CountMismatch {
                expected: numerator.nvars(),
                found: denominator.nvars(),
            });
        }
        Ok(RationalFunction {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(poly: LaurentPoly) -> Self {
        let one = LaurentPoly::constant(poly.nvars(), BigRational::one());
        RationalFunction {
            numerator: poly,
            denominator: one,
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    /// `v(num) - v(den)`; well defined on the function because the
    /// valuation is a homomorphism.
    pub fn valuation(&self) -> Result<ExponentVector, LaurentError> {
        let num = self.numerator.valuation()?;
        let den = self.denominator.valuation().expect("nonzero by invariant");
        Ok(&num - &den)
    }
}

/// Stacks the valuations of the given functions as the rows of a matrix.
pub fn valuation_matrix(fs: &[RationalFunction]) -> Result<IntMatrix, LaurentError> {
    let mut rows = Vec::with_capacity(fs.len());
    for f in fs {
        rows.push(f.valuation()?);
    }
    let cols = rows.first().map_or(0, ExponentVector::len);
    Ok(IntMatrix::from_fn(rows.len(), cols, |r, c| {
        BigInt::from(rows[r].coords()[c])
    }))
}

/// Change-of-uniformizer matrix for monomial uniformizers on the
/// coordinate-hyperplane chain.
///
/// Row `i` of `chain` encodes the new uniformizer as the monomial
/// `x^(row i)`; the matrix must be upper triangular with unit diagonal.
/// The returned matrix `a` is built by clearing each unit row against the
/// chain rows in order, which makes it the exact inverse of `chain`, and
/// the valuation taken with the new uniformizers satisfies
/// `v'(f) = v(f) * a` for every nonzero `f`.
pub fn uniformizer_change_matrix(chain: &IntMatrix) -> Result<IntMatrix, LaurentError> {
    let n = chain.rows();
    if chain.cols() != n {
        return Err(LaurentError::NotUnitUpperTriangular);
    }
    for i in 0..n {
        if !chain[(i, i)].is_one() {
            return Err(LaurentError::NotUnitUpperTriangular);
        }
        for j in 0..i {
            if !chain[(i, j)].is_zero() {
                return Err(LaurentError::NotUnitUpperTriangular);
            }
        }
    }
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        // residual starts at the i-th unit vector; each step reads off the
        // next coordinate and clears it with the matching chain row
        let mut residual = vec![BigInt::zero(); n];
        residual[i] = BigInt::one();
        for j in i..n {
            let coeff = residual[j].clone();
            if coeff.is_zero() {
                continue;
            }
            for k in j..n {
                let delta = &coeff * &chain[(j, k)];
                residual[k] -= delta;
            }
            a[(i, j)] = coeff;
        }
        debug_assert!(residual.iter().all(Zero::is_zero));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly(text: &str, vars: &[&str]) -> LaurentPoly {
        parse_laurent(text, vars).unwrap()
    }

    #[test]
    fn valuation_is_lex_minimum() {
        let f = poly("x1^2*x2^-1 + 5*x1^3", &["x1", "x2"]);
        assert_eq!(f.valuation().unwrap(), ExponentVector::new(vec![2, -1]));
        let c = poly("7", &["x1", "x2", "x3"]);
        assert_eq!(c.valuation().unwrap(), ExponentVector::zero(3));
        let g = poly("x2 + x1", &["x1", "x2"]);
        assert_eq!(g.valuation().unwrap(), ExponentVector::new(vec![0, 1]));
    }

    #[test]
    fn valuation_of_zero_is_an_error() {
        let zero = poly("2*x1 - 2*x1", &["x1"]);
        assert!(zero.is_zero());
        assert_eq!(zero.valuation(), Err(LaurentError::ZeroPolynomial));
        assert_eq!(zero.initial_exponent(), Err(LaurentError::ZeroPolynomial));
    }

    #[test]
    fn initial_exponent_is_lex_maximum() {
        let f = poly("x1^2*x2^-1 + x1^3", &["x1", "x2"]);
        assert_eq!(
            f.initial_exponent().unwrap(),
            ExponentVector::new(vec![3, 0])
        );
        assert_eq!(
            poly("x2 + x1", &["x1", "x2"]).initial_exponent().unwrap(),
            ExponentVector::new(vec![1, 0])
        );
    }

    #[test]
    fn initial_exponent_matches_inversion_identity() {
        let f = poly("x1^2*x2^-1 + 5*x1^3 - x2^4", &["x1", "x2"]);
        let inverted = f
            .substitute_monomials(&[
                LaurentPoly::monomial(ExponentVector::new(vec![-1, 0]), BigRational::one()),
                LaurentPoly::monomial(ExponentVector::new(vec![0, -1]), BigRational::one()),
            ])
            .unwrap();
        assert_eq!(
            f.initial_exponent().unwrap(),
            -&inverted.valuation().unwrap()
        );
    }

    #[test]
    fn rational_function_valuations() {
        let vars = &["x1", "x2"];
        let f = RationalFunction::new(poly("x1^2", vars), poly("x2", vars)).unwrap();
        assert_eq!(f.valuation().unwrap(), ExponentVector::new(vec![2, -1]));

        let g = poly("x1 + 3*x2^2", vars);
        let same = RationalFunction::new(g.clone(), g).unwrap();
        assert_eq!(same.valuation().unwrap(), ExponentVector::zero(2));

        let h = RationalFunction::new(poly("x1 + x2", vars), poly("x1*x2", vars)).unwrap();
        assert_eq!(h.valuation().unwrap(), ExponentVector::new(vec![-1, 0]));
    }

    #[test]
    fn zero_numerator_and_denominator_are_rejected() {
        let vars = &["x1"];
        assert_eq!(
            RationalFunction::new(poly("x1", vars), LaurentPoly::zero(1)),
            Err(LaurentError::ZeroDenominator)
        );
        let f = RationalFunction::new(LaurentPoly::zero(1), poly("x1", vars)).unwrap();
        assert_eq!(f.valuation(), Err(LaurentError::ZeroPolynomial));
    }

    #[test]
    fn substitution_examples() {
        let vars = &["x1", "x2"];
        let f = poly("x1*x2", vars);
        let images = [
            LaurentPoly::variable(2, 0),
            LaurentPoly::monomial(ExponentVector::new(vec![-1, 0]), BigRational::one()),
        ];
        assert_eq!(
            f.substitute_monomials(&images).unwrap(),
            poly("1", vars)
        );

        let g = poly("x1^2", &["x1"]);
        let image = [LaurentPoly::monomial(
            ExponentVector::new(vec![1, 1]),
            BigRational::one(),
        )];
        assert_eq!(g.substitute_monomials(&image).unwrap(), poly("x1^2*x2^2", vars));

        let h = poly("x1 + x2", vars);
        let collide = [LaurentPoly::variable(2, 1), LaurentPoly::variable(2, 1)];
        assert_eq!(h.substitute_monomials(&collide).unwrap(), poly("2*x2", vars));
    }

    #[test]
    fn substitution_rejects_non_monomials() {
        let f = poly("x1", &["x1"]);
        assert_eq!(
            f.substitute_monomials(&[poly("x1 + 1", &["x1"])]),
            Err(LaurentError::NotMonomial { index: 0 })
        );
        assert!(matches!(
            f.substitute_monomials(&[]),
            Err(LaurentError::CountMismatch { .. })
        ));
    }

    #[test]
    fn substitution_scales_coefficients() {
        // x1^-1 with image 2*x1 becomes (1/2)*x1^-1
        let f = poly("x1^-1", &["x1"]);
        let image = [LaurentPoly::monomial(
            ExponentVector::new(vec![1]),
            rat(2, 1),
        )];
        assert_eq!(f.substitute_monomials(&image).unwrap(), poly("1/2*x1^-1", &["x1"]));
    }

    #[test]
    fn shift_center_examples() {
        let f = poly("x1 - 1", &["x1"]);
        let shifted = f.shift_center(&[rat(1, 1)]).unwrap();
        assert_eq!(shifted, poly("x1", &["x1"]));
        assert_eq!(shifted.valuation().unwrap(), ExponentVector::new(vec![1]));

        let vars = &["x1", "x2"];
        let g = poly("x1*x2", vars);
        let shifted = g.shift_center(&[rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(shifted, poly("1 + x1 + x2 + x1*x2", vars));
        assert_eq!(shifted.valuation().unwrap(), ExponentVector::zero(2));

        let h = poly("x1^2 - 2*x1 + 1", vars);
        let shifted = h.shift_center(&[rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(shifted, poly("x1^2", vars));
        assert_eq!(shifted.valuation().unwrap(), ExponentVector::new(vec![2, 0]));
    }

    #[test]
    fn shift_center_rejects_laurent_input() {
        let f = poly("x1^-1", &["x1"]);
        assert!(matches!(
            f.shift_center(&[rat(1, 1)]),
            Err(LaurentError::NegativeExponent(_))
        ));
    }

    #[test]
    fn valuation_matrix_examples() {
        let vars = &["x1", "x2"];
        let fs = [
            RationalFunction::from_poly(poly("x1", vars)),
            RationalFunction::from_poly(poly("x2", vars)),
        ];
        assert_eq!(valuation_matrix(&fs).unwrap(), IntMatrix::identity(2));

        let fs = [
            RationalFunction::from_poly(poly("x1*x2", vars)),
            RationalFunction::new(poly("x1", vars), poly("x2", vars)).unwrap(),
        ];
        assert_eq!(
            valuation_matrix(&fs).unwrap(),
            IntMatrix::from_i64(&[&[1, 1], &[1, -1]])
        );

        let fs = [
            RationalFunction::from_poly(poly("x1 + x2", vars)),
            RationalFunction::from_poly(poly("x1*x2", vars)),
        ];
        assert_eq!(
            valuation_matrix(&fs).unwrap(),
            IntMatrix::from_i64(&[&[0, 1], &[1, 1]])
        );
    }

    #[test]
    fn uniformizer_change_examples() {
        assert_eq!(
            uniformizer_change_matrix(&IntMatrix::identity(4)).unwrap(),
            IntMatrix::identity(4)
        );
        assert_eq!(
            uniformizer_change_matrix(&IntMatrix::from_i64(&[&[1, 2], &[0, 1]])).unwrap(),
            IntMatrix::from_i64(&[&[1, -2], &[0, 1]])
        );
        assert_eq!(
            uniformizer_change_matrix(&IntMatrix::from_i64(&[
                &[1, 1, 0],
                &[0, 1, 1],
                &[0, 0, 1]
            ]))
            .unwrap(),
            IntMatrix::from_i64(&[&[1, -1, 1], &[0, 1, -1], &[0, 0, 1]])
        );
    }

    #[test]
    fn uniformizer_change_validates_input() {
        for bad in [
            IntMatrix::from_i64(&[&[1, 0], &[1, 1]]),
            IntMatrix::from_i64(&[&[2, 0], &[0, 1]]),
            IntMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]),
        ] {
            assert_eq!(
                uniformizer_change_matrix(&bad),
                Err(LaurentError::NotUnitUpperTriangular)
            );
        }
    }

    #[test]
    fn expr_string_round_trips() {
        let vars = &["x1", "x2"];
        for text in [
            "x1^2*x2^-1 + 5*x1^3",
            "-3*x1 + 1/2*x2",
            "0",
            "7",
            "x1*x2 - x1 - x2 + 1",
        ] {
            let f = poly(text, vars);
            let rendered = f.to_expr_string(vars);
            assert_eq!(poly(&rendered, vars), f, "round trip failed for {text}");
        }
    }
}
