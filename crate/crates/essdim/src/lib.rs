//! Exact computation of essential dimension for diagonal torus actions.
//!
//! The library has three layers:
//!
//! * [`intmat`] — arbitrary-precision integer matrices: exact rank,
//!   determinants, rank modulo an integer, and Smith normal form with
//!   unimodular transformations.
//! * [`laurent`] — Laurent polynomials over the rationals with the
//!   lexicographic monomial valuation, monomial substitution, center
//!   shifts, and the change-of-uniformizer matrix.
//! * [`ed`] — the essential dimension formulas built on the two: torus
//!   orbit functors, their projective variants, rigid homogeneous forms,
//!   hypersurfaces, finite abelian groups, canonical dimension,
//!   independence certificates, and a brute-force compression search.
//!
//! The `essdim` binary exposes every computation as a subcommand; see the
//! crate README for the full list.

pub mod ed;
pub mod intmat;
pub mod laurent;

pub use ed::{
    abelian_obstruction_check, cd_torus, compression_search, construct_independent, ed_abelian,
    ed_forms, ed_hypersurface, ed_projective, ed_torus, extend_projective, forms_matrix,
    rank_lower_bound, AbelianGroupSpec, CompressionWitness, EdError, FormsSpec,
    IndependenceCertificate, ObstructionReport, TorusActionSpec,
};
pub use intmat::{IntMatrix, MatrixError, SmithDecomposition};
pub use laurent::{
    parse_laurent, uniformizer_change_matrix, valuation_matrix, ExponentVector, LaurentError,
    LaurentPoly, ParseError, RationalFunction,
};
