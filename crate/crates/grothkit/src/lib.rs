//! Exact symbolic computation in beta-deformed Schubert calculus.
//!
//! The crate is organized bottom-up:
//!
//! * [`rootdata`] — Cartan matrices, Weyl groups as integer matrix groups,
//!   reduced words, the Demazure (star) product and Bruhat order;
//! * [`charring`] — the coefficient ring `Z[beta, beta^-1]`, exponential
//!   character ring elements with multiple variable blocks, exact division,
//!   the formal group law and Taylor expansion toward the classical limit;
//! * [`demazure`] — the three beta-deformed Demazure operator variants and
//!   the duality involution;
//! * [`nilhecke`] — the quadratic-relation Hecke algebra with central
//!   coefficients and its `h_i(c) = 1 + c T_i` generating factors;
//! * [`schubert`] — localization tables of Grothendieck classes for any
//!   finite type: the generating-product algorithm, the subset-sum formula,
//!   dual classes, coproduct structure constants, the classical double
//!   Schubert oracle, and a disk cache;
//! * [`typea`] — stable type-A polynomials: the staircase top class, the
//!   Demazure recursion, pipe dream enumeration with exact weights, and the
//!   staircase generating function;
//! * [`identities`] — a named catalog of identity checks with seeds, scopes
//!   and counterexample reporting.
//!
//! All arithmetic is exact; there are no floating point numbers anywhere.
//! Values are canonical on construction, so `==` is mathematical equality.

pub mod charring;
pub mod demazure;
pub mod identities;
pub mod nilhecke;
pub mod rootdata;
mod sample;
pub mod schubert;
pub mod typea;

pub use charring::{BetaScalar, Block, CharElement, SeriesElement};
pub use rootdata::{RootDatum, TypeLabel, WeylElem, WeylGroup};
