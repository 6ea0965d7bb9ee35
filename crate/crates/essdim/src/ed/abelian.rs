//! Finite abelian groups: rank via invariant factors, and the valuation
//! obstruction that pins the essential dimension of the diagonal root-of-
//! unity action from below.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intmat::IntMatrix;
use crate::laurent::{ExponentVector, LaurentPoly};

use super::EdError;

/// A finite abelian group presented as a product of cyclic groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    moduli: Vec<BigInt>,
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroupSpec {
    /// Accepts any list of positive moduli and normalizes it: the
    /// invariant factors are the elementary divisors of the diagonal
    /// matrix of moduli, with ones dropped.
    pub fn new(moduli: Vec<BigInt>) -> Result<Self, EdError> {
        if let Some(bad) = moduli.iter().find(|m| !m.is_positive()) {
            return Err(EdError::InvalidModulus(bad.clone()));
        }
        let divisors = IntMatrix::diagonal(&moduli).elementary_divisors();
        let invariant_factors: Vec<BigInt> =
            divisors.into_iter().filter(|d| !d.is_one()).collect();
        debug_assert_eq!(
            moduli.iter().product::<BigInt>(),
            invariant_factors.iter().product::<BigInt>(),
        );
        Ok(AbelianGroupSpec {
            moduli,
            invariant_factors,
        })
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    /// The normalized cyclic decomposition `d_1 | d_2 | ... | d_n`, all
    /// greater than one.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// The rank of the group, i.e. the number of invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Essential dimension of a finite abelian group: its rank.
pub fn ed_abelian(moduli: &[BigInt]) -> Result<usize, EdError> {
    Ok(AbelianGroupSpec::new(moduli.to_vec())?.rank())
}

/// A term of a map component that breaks equivariance under the diagonal
/// root-of-unity action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivarianceViolation {
    /// Index of the offending map component `f_j`.
    pub component: usize,
    /// Exponent vector of the offending term.
    pub term: ExponentVector,
    /// Coordinate whose congruence fails.
    pub coordinate: usize,
    /// The residue found, modulo the coordinate's modulus.
    pub residue: BigInt,
    /// The residue equivariance requires (1 on the diagonal, 0 off it).
    pub required: BigInt,
}

/// The mod-`p` part of an [`ObstructionReport`], present when the map is
/// equivariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCongruence {
    /// Whether the valuation matrix is congruent to the identity mod `p`.
    pub identity_mod_p: bool,
    /// Determinantal rank of the valuation matrix mod `p`.
    pub rank_mod_p: usize,
    /// Rank of the valuation matrix over the rationals.
    pub rank_rational: usize,
}

/// Outcome of [`abelian_obstruction_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    violations: Vec<EquivarianceViolation>,
    valuation_matrix: IntMatrix,
    congruence: Option<ObstructionCongruence>,
}

impl ObstructionReport {
    pub fn is_equivariant(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[EquivarianceViolation] {
        &self.violations
    }

    /// Valuations of the map components, stacked as rows.
    pub fn valuation_matrix(&self) -> &IntMatrix {
        &self.valuation_matrix
    }

    /// Congruence conclusions; `None` when the map is not equivariant.
    pub fn congruence(&self) -> Option<&ObstructionCongruence> {
        self.congruence.as_ref()
    }

    /// Whether the check established that the valuation matrix has full
    /// rank, so the map target has dimension at least `n`.
    pub fn full_rank_established(&self) -> bool {
        let n = self.valuation_matrix.rows();
        self.congruence
            .as_ref()
            .is_some_and(|c| c.rank_mod_p == n && c.rank_rational == n)
    }
}

fn is_prime(p: &BigInt) -> bool {
    let two = BigInt::from(2);
    if p < &two {
        return false;
    }
    let mut k = two.clone();
    while &k * &k <= *p {
        if (p % &k).is_zero() {
            return false;
        }
        k += 1;
    }
    true
}

/// Checks the valuation obstruction for a candidate compression of the
/// diagonal action of `Z/d_1 x ... x Z/d_n` on affine `n`-space.
///
/// Equivariance forces every term `x^e` of the component `f_j` to satisfy
/// `e_j = 1 (mod d_j)` and `e_i = 0 (mod d_i)` for `i != j`. When that
/// holds and `p` divides every modulus, the valuation matrix of the
/// components is the identity mod `p`, so it has full rank and the map
/// cannot compress below dimension `n`.
pub fn abelian_obstruction_check(
    moduli: &[BigInt],
    map_polys: &[LaurentPoly],
    p: &BigInt,
) -> Result<ObstructionReport, EdError> {
    if !is_prime(p) {
        return Err(EdError::NotPrime(p.clone()));
    }
    for modulus in moduli {
        if !modulus.is_positive() {
            return Err(EdError::InvalidModulus(modulus.clone()));
        }
        if !(modulus % p).is_zero() {
            return Err(EdError::PrimeDoesNotDivide {
                prime: p.clone(),
                modulus: modulus.clone(),
            });
        }
    }
    let n = moduli.len();
    if map_polys.len() != n || map_polys.iter().any(|f| f.nvars() != n) {
        return Err(EdError::ComponentCount {
            expected: n,
            found: map_polys.len(),
        });
    }
    for (index, f) in map_polys.iter().enumerate() {
        if f.is_zero() {
            return Err(EdError::ZeroComponent { index });
        }
        if f.terms().any(|(e, _)| e.coords().iter().any(|&c| c < 0)) {
            return Err(EdError::LaurentComponent { index });
        }
    }

    let mut violations = Vec::new();
    for (j, f) in map_polys.iter().enumerate() {
        for (term, _) in f.terms() {
            for (i, &exp) in term.coords().iter().enumerate() {
                let required = if i == j { BigInt::one() } else { BigInt::zero() };
                let residue = BigInt::from(exp).mod_floor(&moduli[i]);
                if residue != required {
                    violations.push(EquivarianceViolation {
                        component: j,
                        term: term.clone(),
                        coordinate: i,
                        residue,
                        required,
                    });
                }
            }
        }
    }

    let valuation_matrix = IntMatrix::from_fn(n, n, |r, c| {
        let v = map_polys[r].valuation().expect("components are nonzero");
        BigInt::from(v.coords()[c])
    });

    let congruence = if violations.is_empty() {
        let identity_mod_p = (0..n).all(|r| {
            (0..n).all(|c| {
                let expected = if r == c { BigInt::one() } else { BigInt::zero() };
                valuation_matrix[(r, c)].mod_floor(p) == expected.mod_floor(p)
            })
        });
        let rank_mod_p = valuation_matrix.rank_mod(p)?;
        let rank_rational = valuation_matrix.rank_rational();
        Some(ObstructionCongruence {
            identity_mod_p,
            rank_mod_p,
            rank_rational,
        })
    } else {
        None
    };

    Ok(ObstructionReport {
        violations,
        valuation_matrix,
        congruence,
    })
}
