//! Demazure operators transported to localization families.
//!
//! A two-block element `f(X, Y)` restricts to the family of one-block values
//! `w -> f(wx, x)` over the Weyl group, and the restriction is injective. An
//! operator acting on the `X` or `Y` block therefore has a unique shadow on
//! such families, and the shadow only needs the values themselves: acting on
//! the first slot mixes the component at `w` with the one at `w s_i` across
//! the divisor `1 - e^{-beta w(alpha_i)}`, acting on the second slot mixes
//! `w` with `s_i w` twisted by `s_i` across the untranslated divisor. The
//! divisions are exact precisely on families satisfying the matching
//! congruences along reflections, which genuine localization families do.

use crate::charring::{BetaScalar, Block, CharError, CharElement};
use crate::demazure::OperatorVariant;
use crate::rootdata::WeylGroup;

/// Which block of the localized element an operator shadow acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum OpSlot {
    First,
    Second,
}

/// Restrict a two-block element to its localization family, in canonical
/// element order: the component at `w` maps the `X` exponents through `w`
/// and merges them with the `Y` exponents.
pub(crate) fn localize(group: &WeylGroup, f: &CharElement) -> Result<Vec<CharElement>, CharError> {
    group
        .elements()
        .map(|w| {
            f.substitute_block(group, Block::X, w, Block::Y)?
                .rename_block(Block::Y, Block::X)
        })
        .collect()
}

/// One operator on the first slot of a localization family.
pub(crate) fn first_slot(
    group: &WeylGroup,
    variant: OperatorVariant,
    i: usize,
    v: &[CharElement],
) -> Result<Vec<CharElement>, CharError> {
    let alpha = group.datum().simple_root(i).expect("generator index in range");
    let mut out = Vec::with_capacity(v.len());
    for w in group.elements() {
        let walpha = group.act(w, &alpha);
        let neg: Vec<i32> = walpha.iter().map(|a| -a).collect();
        let fw = &v[w.index()];
        let fws = &v[group.right_mul(w, i).index()];
        let value = match variant {
            OperatorVariant::Pi => {
                let twisted = fws.mul_block_monomial(Block::X, &neg);
                fw.try_sub(&twisted)?
                    .scale(&BetaScalar::beta())
                    .divide_exact(Block::X, &walpha)?
            }
            OperatorVariant::PiHat => fw
                .try_sub(fws)?
                .scale(&BetaScalar::monomial(1, -1))
                .divide_exact(Block::X, &neg)?,
            OperatorVariant::PiUpper => fw
                .try_sub(fws)?
                .scale(&BetaScalar::monomial(1, -1))
                .divide_exact(Block::X, &walpha)?,
        };
        out.push(value);
    }
    Ok(out)
}

/// One operator on the second slot of a localization family.
pub(crate) fn second_slot(
    group: &WeylGroup,
    variant: OperatorVariant,
    i: usize,
    v: &[CharElement],
) -> Result<Vec<CharElement>, CharError> {
    let alpha = group.datum().simple_root(i).expect("generator index in range");
    let neg: Vec<i32> = alpha.iter().map(|a| -a).collect();
    let s_i = group.left_mul(i, group.identity());
    let mut out = Vec::with_capacity(v.len());
    for w in group.elements() {
        let fw = &v[w.index()];
        let fsw = v[group.left_mul(i, w).index()].weyl_act(group, Block::X, s_i)?;
        let value = match variant {
            OperatorVariant::Pi => {
                let twisted = fsw.mul_block_monomial(Block::X, &neg);
                fw.try_sub(&twisted)?
                    .scale(&BetaScalar::beta())
                    .divide_exact(Block::X, &alpha)?
            }
            OperatorVariant::PiHat => fw
                .try_sub(&fsw)?
                .scale(&BetaScalar::monomial(1, -1))
                .divide_exact(Block::X, &neg)?,
            OperatorVariant::PiUpper => fw
                .try_sub(&fsw)?
                .scale(&BetaScalar::monomial(1, -1))
                .divide_exact(Block::X, &alpha)?,
        };
        out.push(value);
    }
    Ok(out)
}

/// Compose slot operators along a word, leftmost letter outermost, matching
/// the composition order of the ring-level operators.
pub(crate) fn slot_word(
    group: &WeylGroup,
    slot: OpSlot,
    variant: OperatorVariant,
    word: &[usize],
    v: &[CharElement],
) -> Result<Vec<CharElement>, CharError> {
    let mut cur = v.to_vec();
    for &i in word.iter().rev() {
        cur = match slot {
            OpSlot::First => first_slot(group, variant, i, &cur)?,
            OpSlot::Second => second_slot(group, variant, i, &cur)?,
        };
    }
    Ok(cur)
}
