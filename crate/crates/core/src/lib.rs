//! Exact combinatorics of weakly semi-magic squares of size three and the
//! zeros of the Clebsch-Gordan function defined on them.
//!
//! The arithmetic layers are generic over an exact integer scalar
//! ([`ExactInt`]): `i64`/`i128` for speed with overflow reported as an error,
//! or `BigInt` when values must never overflow. The aliases below fix the
//! usual choices.

pub mod binomial;
pub mod census;
pub mod cg;
pub mod error;
pub mod genfunc;
pub mod poly;
pub mod portrait;
pub mod quasipoly;
pub mod reduction;
pub mod scalar;
pub mod square;
pub mod symmetry;

use num_bigint::BigInt;

pub use crate::census::{
    detzero_comparison, export_csv, export_json, is_trivial_zero, parse_csv, star_union,
    trivial_census, zero_locus, zero_locus_with, CsvSort, DetZeroReport, TrivialCensus,
    ZeroCensus, ZeroRecord,
};
pub use crate::cg::{cg_hexagon, cg_series_oracle, cg_sum, cg_value, CgEvaluator, CgValue};
pub use crate::error::{Error, Result};
pub use crate::poly::{gf_add, gf_mul, series_coeffs, IntPolynomial, RationalGF};
pub use crate::quasipoly::{trivial_zero_quasipoly, QuasiPolynomial};
pub use crate::reduction::{min_entry, n3_count, partition_by_smallest, reduce, ReducedDecomposition};
pub use crate::scalar::ExactInt;
pub use crate::square::{
    determinant, enumerate, enumerate_with, from_topline_rc, h3, h3_closed, hex_region,
    topline_count, toplines, validate, H3Form, HexRegion, SemiMagicSquare, TopLine,
    DEFAULT_J_CAP,
};
pub use crate::symmetry::{
    apply, compose, orbit, orbit_decompose, stabilizer_class, verify_table1, GroupElement, Orbit,
    Perm3, StabilizerClass, Table1Report,
};

/// Whether sweeps over top lines may run on the rayon pool. Results are
/// identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Serial,
    Parallel,
}

pub type BigCg = CgValue<BigInt>;
pub type Poly = IntPolynomial<BigInt>;
pub type Poly64 = IntPolynomial<i64>;
pub type Gf = RationalGF<BigInt>;
pub type Gf64 = RationalGF<i64>;
pub type QuasiPoly = QuasiPolynomial<i64>;
pub type BigQuasiPoly = QuasiPolynomial<BigInt>;
