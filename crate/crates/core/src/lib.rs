//! Exact computation of the rational Betti numbers of unordered configuration
//! spaces `B_k(Σ)` for surfaces `Σ` of finite type.
//!
//! Three independent routes to the same numbers are provided and cross-checked:
//!
//! * [`ce`] — a brute-force homology oracle: the weighted Chevalley–Eilenberg
//!   complex of the surface is assembled block by block and its homology
//!   dimensions are computed with exact sparse linear algebra;
//! * [`formulas`] — closed binomial/trinomial formulas for every surface kind;
//! * [`engine`] — a generating-series pipeline built from truncated power
//!   series recurrences, together with fixed-genus polynomial extraction.
//!
//! All arithmetic is exact. The series and linear-algebra layers are generic
//! over the scalar type; everything downstream is pinned to arbitrary-precision
//! rationals via the aliases below.

pub mod algebra;
pub mod ce;
pub mod comb;
pub mod engine;
pub mod formulas;
pub mod linalg;
pub mod operators;
pub mod scalar;
pub mod series;
pub mod surface;
pub mod table;

pub use scalar::Scalar;
pub use surface::{GradedIndex, Surface};
pub use table::{BettiTable, Provenance};

/// Exact arbitrary-precision rational, the scalar used on every computation path.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision nonnegative integer holding a Betti number.
pub type BettiValue = num_bigint::BigUint;

/// Truncated power series over exact rationals.
pub type RatSeries = series::TruncatedSeries<Rat>;

/// Sparse matrix over exact rationals.
pub type RatMatrix = linalg::SparseMatrix<Rat>;
