//! Isobaric divided difference operators in the exponential character ring.
//!
//! Three variants act on a chosen variable block, leaving other blocks inert:
//!
//! * `pi_i f = beta (f - e^{-beta alpha_i} s_i f) / (1 - e^{-beta alpha_i})`
//! * `pihat_i f = -beta (f - s_i f) / (1 - e^{beta alpha_i})`
//! * `Pi_i f = -beta (f - s_i f) / (1 - e^{-beta alpha_i})`
//!
//! Each numerator is divisible exactly, so no rational functions ever appear.
//! `pihat_i = pi_i - beta` and `Pi_i` is the conjugate of `pihat_i` under the
//! exponent-negating involution. Composites along reduced words are
//! word-independent (the braid relations), which `apply_word` relies on;
//! `apply_word_raw` composes any word and exists so that the relations
//! themselves can be tested.

use crate::charring::{qpoly_divide_linear, qpoly_substitute_linear, qpoly_weyl_maps, QPoly};
use crate::charring::{BetaScalar, Block, CharElement, CharError};
use crate::rootdata::{RootDataError, WeylElem, WeylGroup};
use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorVariant {
    /// The ascending operator `pi_i`, with `pi_i^2 = beta pi_i`.
    Pi,
    /// The descending operator `pihat_i = pi_i - beta`.
    PiHat,
    /// The signed descending operator `Pi_i = -D pihat_i D` conjugate,
    /// with `Pi_i^2 = -beta Pi_i`.
    #[serde(rename = "Pi")]
    PiUpper,
}

impl fmt::Display for OperatorVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorVariant::Pi => "pi",
            OperatorVariant::PiHat => "pihat",
            OperatorVariant::PiUpper => "Pi",
        })
    }
}

impl std::str::FromStr for OperatorVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pi" => Ok(OperatorVariant::Pi),
            "pihat" => Ok(OperatorVariant::PiHat),
            "Pi" => Ok(OperatorVariant::PiUpper),
            other => Err(format!("unknown operator variant `{other}` (expected pi, pihat, Pi)")),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DemazureError {
    #[error("word {word:?} is not reduced")]
    NotReducedWord { word: Vec<usize> },
    #[error(transparent)]
    Root(#[from] RootDataError),
    #[error(transparent)]
    Char(#[from] CharError),
}

/// Apply one operator to the chosen block of `f`.
pub fn apply(
    group: &WeylGroup,
    variant: OperatorVariant,
    i: usize,
    block: Block,
    f: &CharElement,
) -> Result<CharElement, DemazureError> {
    let alpha = group.datum().simple_root(i)?;
    let s_i = group.elem_from_word(&[i])?;
    let sf = f.weyl_act(group, block, s_i)?;
    let (numerator, direction) = match variant {
        OperatorVariant::Pi => {
            let neg_alpha: Vec<i32> = alpha.iter().map(|a| -a).collect();
            let twisted = sf.mul_block_monomial(block, &neg_alpha);
            (f.try_sub(&twisted)?.scale(&BetaScalar::beta()), alpha)
        }
        OperatorVariant::PiHat => {
            let neg_alpha: Vec<i32> = alpha.iter().map(|a| -a).collect();
            (f.try_sub(&sf)?.scale(&BetaScalar::int(-1)).scale(&BetaScalar::beta()), neg_alpha)
        }
        OperatorVariant::PiUpper => {
            (f.try_sub(&sf)?.scale(&BetaScalar::int(-1)).scale(&BetaScalar::beta()), alpha)
        }
    };
    let quotient = numerator.divide_exact(block, &direction).unwrap_or_else(|e| {
        panic!("divided difference numerator must divide exactly, got {e}")
    });
    Ok(quotient)
}

/// Compose operators along a word, leftmost letter outermost: word `[1, 2]`
/// sends `f` to `op_1(op_2(f))`. The word must be reduced.
pub fn apply_word(
    group: &WeylGroup,
    variant: OperatorVariant,
    word: &[usize],
    block: Block,
    f: &CharElement,
) -> Result<CharElement, DemazureError> {
    if !group.is_reduced(word) {
        return Err(DemazureError::NotReducedWord { word: word.to_vec() });
    }
    apply_word_raw(group, variant, word, block, f)
}

/// Compose along an arbitrary word, reduced or not.
pub fn apply_word_raw(
    group: &WeylGroup,
    variant: OperatorVariant,
    word: &[usize],
    block: Block,
    f: &CharElement,
) -> Result<CharElement, DemazureError> {
    let mut out = f.clone();
    for &i in word.iter().rev() {
        out = apply(group, variant, i, block, &out)?;
    }
    Ok(out)
}

/// The composite operator for a group element, along its canonical reduced
/// word. Well defined by the braid relations.
pub fn apply_elem(
    group: &WeylGroup,
    variant: OperatorVariant,
    w: WeylElem,
    block: Block,
    f: &CharElement,
) -> Result<CharElement, DemazureError> {
    let word = group.word(w).to_vec();
    apply_word_raw(group, variant, &word, block, f)
}

/// The involution `D f = e^{-beta rho} fbar`, where `fbar` negates the
/// exponents of the chosen block. Satisfies `pihat_i = -D pi_i D`.
pub fn dual_involution(
    group: &WeylGroup,
    block: Block,
    f: &CharElement,
) -> Result<CharElement, DemazureError> {
    let bar = f.bar_block(block)?;
    let neg_rho: Vec<i32> = vec![-1; group.rank()];
    Ok(bar.mul_block_monomial(block, &neg_rho))
}

/// The classical divided difference `(p - s_i p)/alpha_i` on series
/// coefficients, acting on the variables of one block. Exact: the numerator
/// is always divisible.
pub(crate) fn qpoly_divided_difference(
    group: &WeylGroup,
    i: usize,
    block_pos: usize,
    nblocks: usize,
    p: &QPoly,
) -> QPoly {
    let rank = group.rank();
    let s_i = group.elem_from_word(&[i]).expect("index in range");
    let maps = qpoly_weyl_maps(group, s_i, block_pos, nblocks);
    let sp = qpoly_substitute_linear(p, &maps, p.width);
    let alpha = group.datum().simple_root(i).expect("index in range");
    let lin: Vec<(usize, BigRational)> = alpha
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(j, &a)| (block_pos * rank + j, BigRational::from(BigInt::from(a))))
        .collect();
    qpoly_divide_linear(&p.sub(&sp), &lin)
        .expect("antisymmetrized polynomial divides by its root direction")
}
