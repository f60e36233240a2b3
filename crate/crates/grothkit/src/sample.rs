//! Seeded random ring elements for property checks and sampled verification.

use crate::charring::{BetaScalar, Block, CharElement};
use rand::Rng;

pub(crate) fn random_scalar(rng: &mut impl Rng, beta_lo: i32, beta_hi: i32) -> BetaScalar {
    let mut s = BetaScalar::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let e = rng.gen_range(beta_lo..=beta_hi);
        let c = rng.gen_range(-3..=3i64);
        s.add_term(e, c);
    }
    if s.is_zero() {
        BetaScalar::one()
    } else {
        s
    }
}

/// A nonzero element with a few terms, exponents bounded coordinate-wise and
/// scalar beta-powers within the given window.
pub(crate) fn random_element(
    rng: &mut impl Rng,
    rank: usize,
    blocks: &[Block],
    max_terms: usize,
    exp_bound: i32,
    beta_lo: i32,
    beta_hi: i32,
) -> CharElement {
    let width = rank * blocks.len();
    let mut out = CharElement::zero(rank, blocks.to_vec());
    for _ in 0..rng.gen_range(1..=max_terms) {
        let exp: Vec<i32> = (0..width)
            .map(|_| rng.gen_range(-exp_bound..=exp_bound))
            .collect();
        let c = random_scalar(rng, beta_lo, beta_hi);
        out.add_term(exp, &c);
    }
    if out.is_zero() {
        CharElement::one(rank, blocks.to_vec())
    } else {
        out
    }
}
