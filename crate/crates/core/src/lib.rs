//! Exact multiplicity computations for codimension-2 Cohen-Macaulay and
//! codimension-3 Gorenstein graded algebras.
//!
//! Every multiplicity is computed by more than one independent route:
//!
//! * the Hilbert-series route ([`betti`]), which divides the K-polynomial of a
//!   graded Betti table by `(1 - s)^c`;
//! * closed formulas in the degree-matrix entries ([`cm2`], [`gor3`]);
//! * lattice-point counting on a monomial witness ideal ([`oracle`]) or the
//!   linkage/genus formula ([`gor3::linkage_check`]).
//!
//! The [`bounds`] module evaluates the multiplicity bounds in
//! denominator-cleared integer arithmetic and [`sweep`] enumerates bounded
//! ranges of degree matrices, checking every identity on each instance.
//!
//! No floating point is used anywhere.

pub mod betti;
pub mod bounds;
pub mod cm2;
pub mod evaluate;
pub mod gor3;
pub mod oracle;
mod parallel;
pub mod poly;
pub mod schema;
pub mod sweep;

mod bigint_json;

pub use betti::{BettiError, BettiTable, Purity, ShiftSummary};
pub use bounds::{BoundKind, BoundName, BoundVerdict};
pub use cm2::{DegreeMatrixCm2, MatrixError, UvData};
pub use evaluate::{Evaluation, RouteReport, TableEvaluation};
pub use gor3::DegreeMatrixGor3;
pub use oracle::{MonomialStaircase, OracleError};
pub use parallel::Parallelism;
pub use poly::KPolynomial;
pub use schema::{DegreeMatrix, InputDoc};
pub use sweep::{Check, Family, HuntConfig, HuntReport, HuntTarget, SweepConfig, SweepReport};
