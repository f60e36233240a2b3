//! The exact coefficient and character rings everything else is built on.
//!
//! [`BetaScalar`] is a Laurent polynomial in the deformation parameter `beta`
//! with integer coefficients. [`CharElement`] is a finitely supported sum of
//! formal exponentials `e^{beta lambda}` over one or more variable blocks
//! (X, Y, Z), with `BetaScalar` coefficients; a two-block element is a stable
//! representative of a class in the tensor square of the character ring.
//!
//! Representations are canonical on construction (zero coefficients pruned,
//! terms ordered lexicographically), so `==` is mathematical equality and
//! serialization is byte-stable.

mod beta;
mod element;
pub mod latex;
mod series;

pub use beta::BetaScalar;
pub use element::{parse_rational, CharElement, SpecializedElement};
pub use series::{series_expand, SeriesElement};
pub(crate) use series::{
    qpoly_divide_linear, qpoly_mul, qpoly_substitute_linear, qpoly_weyl_maps, QPoly,
};

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Variable block label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Block {
    X,
    Y,
    Z,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Block::X => "X",
            Block::Y => "Y",
            Block::Z => "Z",
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CharError {
    #[error("block mismatch: {0}")]
    BlockMismatch(String),
    #[error("not divisible; remainder {remainder}")]
    NotDivisible { remainder: Box<CharElement> },
    #[error("denominator is not a unit monomial")]
    NonUnitDenominator,
    #[error("pole at beta = 0: nonzero coefficient at beta^{exponent}")]
    PoleAtBetaZero { exponent: i32 },
    #[error("division by zero while specializing beta")]
    DivisionByZero,
}
