//! The nil-Hecke algebra with central coefficients.
//!
//! Elements are finite sums `sum_w c_w T_w` over a Weyl group, with
//! coefficients in the character ring and the quadratic relation
//! `T_i^2 = eps T_i` for a fixed sign `eps` in `{+beta, -beta}`. Products of
//! basis elements fold reduced words through the star (Demazure) product:
//! `T_u T_v = eps^{l(u)+l(v)-l(u*v)} T_{u*v}`.
//!
//! Coefficients are central here by construction. The operator algebra
//! generated by divided differences and multiplications is not: conjugating
//! an operator past a multiplication twists the coefficient by a reflection.
//! Mapping `T_w` to the operator `Pi_w` is an algebra homomorphism exactly
//! when coefficients are constants, which is the regime every h-product
//! expansion below lives in.

use crate::charring::{Block, CharElement, CharError};
use crate::rootdata::{WeylElem, WeylGroup};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// The scalar in the quadratic relation `T_i^2 = eps T_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadraticSign {
    PlusBeta,
    MinusBeta,
}

impl QuadraticSign {
    /// `eps^k` as a scalar.
    pub fn power(self, k: u32) -> crate::charring::BetaScalar {
        use crate::charring::BetaScalar;
        match self {
            QuadraticSign::PlusBeta => BetaScalar::beta_pow(k as i32),
            QuadraticSign::MinusBeta => BetaScalar::neg_beta_pow(k),
        }
    }
}

impl fmt::Display for QuadraticSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadraticSign::PlusBeta => "+beta",
            QuadraticSign::MinusBeta => "-beta",
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum HeckeError {
    #[error("quadratic signs differ")]
    SignMismatch,
    #[error("elements live over different root data")]
    GroupMismatch,
    #[error(transparent)]
    Char(#[from] CharError),
}

/// A central-coefficient nil-Hecke element `sum_w c_w T_w`. All coefficients
/// share one block shape (single block X by default; h-products for
/// generating functions use two blocks).
#[derive(Debug, Clone)]
pub struct HeckeElement {
    group: Arc<WeylGroup>,
    sign: QuadraticSign,
    blocks: Vec<Block>,
    terms: BTreeMap<WeylElem, CharElement>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.sign == other.sign
            && self.blocks == other.blocks
            && self.group.datum() == other.group.datum()
            && self.terms == other.terms
    }
}

impl HeckeElement {
    pub fn zero(group: Arc<WeylGroup>, sign: QuadraticSign, blocks: Vec<Block>) -> Self {
        HeckeElement { group, sign, blocks, terms: BTreeMap::new() }
    }

    pub fn one(group: Arc<WeylGroup>, sign: QuadraticSign, blocks: Vec<Block>) -> Self {
        let id = group.identity();
        let rank = group.rank();
        let mut out = Self::zero(group, sign, blocks.clone());
        out.add_term(id, &CharElement::one(rank, blocks));
        out
    }

    /// The basis element `T_w` with coefficient one.
    pub fn basis(
        group: Arc<WeylGroup>,
        sign: QuadraticSign,
        blocks: Vec<Block>,
        w: WeylElem,
    ) -> Self {
        let rank = group.rank();
        let mut out = Self::zero(group, sign, blocks.clone());
        out.add_term(w, &CharElement::one(rank, blocks));
        out
    }

    /// `1 + c T_i`.
    pub fn h_factor(
        group: Arc<WeylGroup>,
        sign: QuadraticSign,
        i: usize,
        c: &CharElement,
    ) -> Self {
        let id = group.identity();
        let s_i = group
            .elem_from_word(&[i])
            .expect("generator index in range");
        let rank = group.rank();
        let blocks = c.blocks().to_vec();
        let mut out = Self::zero(group, sign, blocks.clone());
        out.add_term(id, &CharElement::one(rank, blocks));
        out.add_term(s_i, c);
        out
    }

    /// The expanded product `h_{i_1}(c_1) h_{i_2}(c_2) ...`, leftmost factor
    /// first.
    pub fn h_product(
        group: Arc<WeylGroup>,
        sign: QuadraticSign,
        blocks: Vec<Block>,
        factors: &[(usize, CharElement)],
    ) -> Result<Self, HeckeError> {
        let mut acc = Self::one(group.clone(), sign, blocks);
        for (i, c) in factors {
            let f = Self::h_factor(group.clone(), sign, *i, c);
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn sign(&self) -> QuadraticSign {
        self.sign
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (WeylElem, &CharElement)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn coefficient(&self, w: WeylElem) -> CharElement {
        self.terms
            .get(&w)
            .cloned()
            .unwrap_or_else(|| CharElement::zero(self.group.rank(), self.blocks.clone()))
    }

    pub fn add_term(&mut self, w: WeylElem, c: &CharElement) {
        assert_eq!(c.blocks(), self.blocks.as_slice(), "coefficient block shape");
        assert_eq!(c.rank(), self.group.rank(), "coefficient rank");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().try_add(c).expect("same shape by invariant");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), HeckeError> {
        if self.sign != other.sign {
            return Err(HeckeError::SignMismatch);
        }
        if self.group.datum() != other.group.datum() || self.blocks != other.blocks {
            return Err(HeckeError::GroupMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, HeckeError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w, &-c);
        }
        Ok(out)
    }

    /// Multiply every coefficient by a central ring element.
    pub fn scale(&self, c: &CharElement) -> Self {
        let mut out = Self::zero(self.group.clone(), self.sign, self.blocks.clone());
        for (w, coef) in self.terms() {
            out.add_term(w, &coef.try_mul(c).expect("same shape by invariant"));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, HeckeError> {
        self.compatible(other)?;
        let g = &self.group;
        let mut out = Self::zero(self.group.clone(), self.sign, self.blocks.clone());
        for (u, cu) in self.terms() {
            for (v, cv) in other.terms() {
                let star = g.demazure_product(u, v);
                let k = (g.length(u) + g.length(v) - g.length(star)) as u32;
                let coef = cu
                    .try_mul(cv)
                    .expect("same shape by invariant")
                    .scale(&self.sign.power(k));
                out.add_term(star, &coef);
            }
        }
        Ok(out)
    }

    /// Act on every coefficient with a Weyl group element in one block.
    pub fn weyl_act_coefficients(&self, block: Block, w: WeylElem) -> Result<Self, HeckeError> {
        let mut out = Self::zero(self.group.clone(), self.sign, self.blocks.clone());
        for (u, c) in self.terms() {
            out.add_term(u, &c.weyl_act(&self.group, block, w)?);
        }
        Ok(out)
    }
}

impl Serialize for HeckeElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Term<'a> {
            word: &'a [usize],
            coef: &'a CharElement,
        }
        impl Serialize for Term<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("word", self.word)?;
                m.serialize_entry("coef", self.coef)?;
                m.end()
            }
        }
        struct Terms<'a>(&'a HeckeElement);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut s = serializer.serialize_seq(Some(self.0.terms.len()))?;
                for (w, c) in &self.0.terms {
                    s.serialize_element(&Term { word: self.0.group.word(*w), coef: c })?;
                }
                s.end()
            }
        }
        let mut m = serializer.serialize_map(Some(2))?;
        m.serialize_entry("sign", &self.sign.to_string())?;
        m.serialize_entry("terms", &Terms(self))?;
        m.end()
    }
}
