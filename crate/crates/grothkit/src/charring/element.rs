//! Multi-block exponential character ring elements.

use super::{BetaScalar, Block, CharError};
use crate::rootdata::{WeylElem, WeylGroup};
use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A finitely supported `Z[beta, beta^-1]`-combination of exponentials
/// `e^{beta lambda}`, where `lambda` is a tuple of weights, one per variable
/// block. Term keys concatenate the per-block exponent vectors in block-list
/// order; the order on keys (hence the canonical term order) is
/// lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawElement", into = "RawElement")]
pub struct CharElement {
    rank: usize,
    blocks: Vec<Block>,
    terms: BTreeMap<Vec<i32>, BetaScalar>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    exp: Vec<i32>,
    coef: BetaScalar,
}

#[derive(Serialize, Deserialize)]
struct RawElement {
    blocks: Vec<Block>,
    rank: usize,
    terms: Vec<RawTerm>,
}

impl TryFrom<RawElement> for CharElement {
    type Error = CharError;

    fn try_from(raw: RawElement) -> Result<Self, Self::Error> {
        if raw.blocks.is_empty() {
            return Err(CharError::BlockMismatch("element must have at least one block".into()));
        }
        let mut seen = Vec::new();
        for &b in &raw.blocks {
            if seen.contains(&b) {
                return Err(CharError::BlockMismatch(format!("duplicate block {b}")));
            }
            seen.push(b);
        }
        let width = raw.rank * raw.blocks.len();
        let mut out = CharElement::zero(raw.rank, raw.blocks);
        for term in raw.terms {
            if term.exp.len() != width {
                return Err(CharError::BlockMismatch(format!(
                    "exponent width {} does not match rank x blocks = {width}",
                    term.exp.len()
                )));
            }
            out.add_term(term.exp, &term.coef);
        }
        Ok(out)
    }
}

impl From<CharElement> for RawElement {
    fn from(e: CharElement) -> Self {
        RawElement {
            blocks: e.blocks.clone(),
            rank: e.rank,
            terms: e
                .terms
                .into_iter()
                .map(|(exp, coef)| RawTerm { exp, coef })
                .collect(),
        }
    }
}

impl CharElement {
    pub fn zero(rank: usize, blocks: Vec<Block>) -> Self {
        assert!(!blocks.is_empty(), "element must have at least one block");
        CharElement { rank, blocks, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, blocks: Vec<Block>) -> Self {
        Self::scalar(rank, blocks, BetaScalar::one())
    }

    /// A constant (exponent-free) element.
    pub fn scalar(rank: usize, blocks: Vec<Block>, c: BetaScalar) -> Self {
        let width = rank * blocks.len();
        let mut out = Self::zero(rank, blocks);
        out.add_term(vec![0; width], &c);
        out
    }

    /// A single term `c * e^{beta lambda}` with the full concatenated
    /// exponent vector `exp`.
    pub fn term(rank: usize, blocks: Vec<Block>, exp: Vec<i32>, c: BetaScalar) -> Self {
        let mut out = Self::zero(rank, blocks);
        assert_eq!(exp.len(), out.width(), "exponent width mismatch");
        out.add_term(exp, &c);
        out
    }

    /// A single term `c * e^{beta weight}` living in one block, zero exponents
    /// elsewhere.
    pub fn block_term(rank: usize, blocks: Vec<Block>, block: Block, weight: &[i32], c: BetaScalar) -> Self {
        let out = Self::zero(rank, blocks);
        let pos = out.block_position(block).expect("block not present");
        assert_eq!(weight.len(), rank, "weight has wrong rank");
        let mut exp = vec![0; out.width()];
        exp[pos * rank..(pos + 1) * rank].copy_from_slice(weight);
        Self::term(rank, out.blocks, exp, c)
    }

    pub fn from_terms(
        rank: usize,
        blocks: Vec<Block>,
        terms: impl IntoIterator<Item = (Vec<i32>, BetaScalar)>,
    ) -> Self {
        let mut out = Self::zero(rank, blocks);
        for (exp, c) in terms {
            assert_eq!(exp.len(), out.width(), "exponent width mismatch");
            out.add_term(exp, &c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Total exponent width, `rank * blocks.len()`.
    pub fn width(&self) -> usize {
        self.rank * self.blocks.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.width()])
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BetaScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i32]) -> BetaScalar {
        self.terms.get(exp).cloned().unwrap_or_else(BetaScalar::zero)
    }

    /// The constant term's scalar, i.e. the coefficient of the zero exponent.
    pub fn constant_coefficient(&self) -> BetaScalar {
        self.coefficient(&vec![0; self.width()])
    }

    /// `Some(c)` when the element is the constant `c` (possibly zero).
    pub fn as_constant(&self) -> Option<BetaScalar> {
        if self.is_zero() {
            return Some(BetaScalar::zero());
        }
        if self.terms.len() == 1 {
            let (exp, c) = self.terms.iter().next().unwrap();
            if exp.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn block_position(&self, block: Block) -> Option<usize> {
        self.blocks.iter().position(|&b| b == block)
    }

    fn block_slice<'a>(&self, exp: &'a [i32], pos: usize) -> &'a [i32] {
        &exp[pos * self.rank..(pos + 1) * self.rank]
    }

    pub fn add_term(&mut self, exp: Vec<i32>, c: &BetaScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exp.len(), self.width());
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_shape(&self, other: &Self) -> Result<(), CharError> {
        if self.rank != other.rank || self.blocks != other.blocks {
            return Err(CharError::BlockMismatch(format!(
                "cannot combine rank {} {:?} with rank {} {:?}",
                self.rank, self.blocks, other.rank, other.blocks
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CharError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (exp, c) in other.terms() {
            out.add_term(exp.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CharError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (exp, c) in other.terms() {
            out.add_term(exp.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CharError> {
        self.same_shape(other)?;
        let mut out = Self::zero(self.rank, self.blocks.clone());
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let exp: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Multiply every coefficient by the scalar `s`.
    pub fn scale(&self, s: &BetaScalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.rank, self.blocks.clone());
        }
        let mut out = Self::zero(self.rank, self.blocks.clone());
        for (exp, c) in self.terms() {
            out.add_term(exp.clone(), &(c * s));
        }
        out
    }

    /// Multiply by the single term `c * e^{beta exp}`.
    pub fn mul_term(&self, exp: &[i32], c: &BetaScalar) -> Self {
        assert_eq!(exp.len(), self.width());
        let mut out = Self::zero(self.rank, self.blocks.clone());
        if c.is_zero() {
            return out;
        }
        for (e, coef) in self.terms() {
            let shifted: Vec<i32> = e.iter().zip(exp).map(|(a, b)| a + b).collect();
            out.add_term(shifted, &(coef * c));
        }
        out
    }

    /// Multiply by `e^{beta weight}` placed in one block.
    pub fn mul_block_monomial(&self, block: Block, weight: &[i32]) -> Self {
        let pos = self.block_position(block).expect("block not present");
        assert_eq!(weight.len(), self.rank);
        let mut exp = vec![0; self.width()];
        exp[pos * self.rank..(pos + 1) * self.rank].copy_from_slice(weight);
        self.mul_term(&exp, &BetaScalar::one())
    }

    /// Apply a Weyl group element to the exponents of one block. This is a
    /// ring homomorphism (it permutes exponents linearly).
    pub fn weyl_act(&self, group: &WeylGroup, block: Block, w: WeylElem) -> Result<Self, CharError> {
        if group.rank() != self.rank {
            return Err(CharError::BlockMismatch(format!(
                "group rank {} does not match element rank {}",
                group.rank(),
                self.rank
            )));
        }
        let pos = self
            .block_position(block)
            .ok_or_else(|| CharError::BlockMismatch(format!("block {block} is not present")))?;
        let mut out = Self::zero(self.rank, self.blocks.clone());
        for (exp, c) in self.terms() {
            let acted = group.act(w, self.block_slice(exp, pos));
            let mut e = exp.clone();
            e[pos * self.rank..(pos + 1) * self.rank].copy_from_slice(&acted);
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Negate the exponents of one block (the "bar" involution on that block).
    pub fn bar_block(&self, block: Block) -> Result<Self, CharError> {
        let pos = self
            .block_position(block)
            .ok_or_else(|| CharError::BlockMismatch(format!("block {block} is not present")))?;
        let mut out = Self::zero(self.rank, self.blocks.clone());
        for (exp, c) in self.terms() {
            let mut e = exp.clone();
            for v in &mut e[pos * self.rank..(pos + 1) * self.rank] {
                *v = -*v;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Substitute the `src` block into `dst`: each `src` exponent `lambda`
    /// turns into an extra `w(lambda)` on the `dst` exponent, and `src`
    /// disappears from the block list. This is the localization substitution
    /// `src -> w . dst`.
    pub fn substitute_block(
        &self,
        group: &WeylGroup,
        src: Block,
        w: WeylElem,
        dst: Block,
    ) -> Result<Self, CharError> {
        if group.rank() != self.rank {
            return Err(CharError::BlockMismatch(format!(
                "group rank {} does not match element rank {}",
                group.rank(),
                self.rank
            )));
        }
        let spos = self
            .block_position(src)
            .ok_or_else(|| CharError::BlockMismatch(format!("source block {src} is not present")))?;
        let dpos = self
            .block_position(dst)
            .ok_or_else(|| CharError::BlockMismatch(format!("target block {dst} is not present")))?;
        if spos == dpos {
            return Err(CharError::BlockMismatch("source and target block coincide".into()));
        }
        let new_blocks: Vec<Block> = self
            .blocks
            .iter()
            .copied()
            .filter(|&b| b != src)
            .collect();
        let mut out = Self::zero(self.rank, new_blocks);
        for (exp, c) in self.terms() {
            let acted = group.act(w, self.block_slice(exp, spos));
            let mut e = Vec::with_capacity(out.width());
            for (pos, _) in self.blocks.iter().enumerate() {
                if pos == spos {
                    continue;
                }
                let slice = self.block_slice(exp, pos);
                if pos == dpos {
                    e.extend(slice.iter().zip(&acted).map(|(a, b)| a + b));
                } else {
                    e.extend_from_slice(slice);
                }
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Reinterpret one block label as another (the other label must be free).
    pub fn rename_block(&self, from: Block, to: Block) -> Result<Self, CharError> {
        if self.block_position(to).is_some() {
            return Err(CharError::BlockMismatch(format!("target block {to} already present")));
        }
        let pos = self
            .block_position(from)
            .ok_or_else(|| CharError::BlockMismatch(format!("block {from} is not present")))?;
        let mut blocks = self.blocks.clone();
        blocks[pos] = to;
        Ok(CharElement { rank: self.rank, blocks, terms: self.terms.clone() })
    }

    /// Exchange the exponent segments of two blocks, e.g. turn `f(X, Y)` into
    /// `f(Y, X)`.
    pub fn swap_blocks(&self, a: Block, b: Block) -> Result<Self, CharError> {
        let apos = self
            .block_position(a)
            .ok_or_else(|| CharError::BlockMismatch(format!("block {a} is not present")))?;
        let bpos = self
            .block_position(b)
            .ok_or_else(|| CharError::BlockMismatch(format!("block {b} is not present")))?;
        let mut out = Self::zero(self.rank, self.blocks.clone());
        for (exp, c) in self.terms() {
            let mut e = exp.clone();
            for k in 0..self.rank {
                e.swap(apos * self.rank + k, bpos * self.rank + k);
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Embed into a larger block list (superset, any order); new blocks get
    /// zero exponents.
    pub fn embed(&self, blocks: Vec<Block>) -> Result<Self, CharError> {
        for &b in &self.blocks {
            if !blocks.contains(&b) {
                return Err(CharError::BlockMismatch(format!(
                    "target block list does not contain {b}"
                )));
            }
        }
        let mut out = Self::zero(self.rank, blocks);
        for (exp, c) in self.terms() {
            let mut e = vec![0; out.width()];
            for (pos, &b) in self.blocks.iter().enumerate() {
                let tpos = out.block_position(b).unwrap();
                e[tpos * self.rank..(tpos + 1) * self.rank]
                    .copy_from_slice(self.block_slice(exp, pos));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Exact division by `1 - e^{-beta mu}` within the exponents of one
    /// block. Terms are grouped into cosets of the sublattice `Z mu`; within
    /// each coset the element is a univariate Laurent polynomial in
    /// `u = e^{-beta mu}`, which `1 - u` divides exactly if and only if its
    /// coefficients sum to zero. Otherwise the sum over each failing coset is
    /// returned as the remainder (the vanishing-at-`u = 1` criterion).
    pub fn divide_exact(&self, block: Block, mu: &[i32]) -> Result<Self, CharError> {
        assert_eq!(mu.len(), self.rank, "divisor weight has wrong rank");
        assert!(mu.iter().any(|&m| m != 0), "divisor weight must be nonzero");
        let pos = self
            .block_position(block)
            .ok_or_else(|| CharError::BlockMismatch(format!("block {block} is not present")))?;
        let pivot = mu.iter().position(|&m| m != 0).unwrap();
        let mp = mu[pivot];

        // Coset representative -> sorted map from u-power to coefficient.
        let mut cosets: BTreeMap<Vec<i32>, BTreeMap<i32, BetaScalar>> = BTreeMap::new();
        for (exp, c) in self.terms() {
            let lambda = self.block_slice(exp, pos);
            let k = lambda[pivot].div_euclid(mp);
            let mut rep = exp.clone();
            for (r, &m) in rep[pos * self.rank..(pos + 1) * self.rank]
                .iter_mut()
                .zip(mu)
            {
                *r -= k * m;
            }
            // lambda = rep + k mu, and e^{beta k mu} = u^{-k}.
            cosets.entry(rep).or_default().insert(-k, c.clone());
        }

        let mut quotient = Self::zero(self.rank, self.blocks.clone());
        let mut remainder = Self::zero(self.rank, self.blocks.clone());
        for (rep, coeffs) in cosets {
            let total = coeffs.values().fold(BetaScalar::zero(), |acc, c| &acc + c);
            if !total.is_zero() {
                remainder.add_term(rep, &total);
                continue;
            }
            // (1 - u) * sum q_j u^j has u^j coefficient q_j - q_{j-1}, so the
            // quotient coefficients are the partial sums of the dividend's.
            let mut partial = BetaScalar::zero();
            let hi = *coeffs.keys().next_back().unwrap();
            let lo = *coeffs.keys().next().unwrap();
            for j in lo..hi {
                if let Some(c) = coeffs.get(&j) {
                    partial += c;
                }
                if partial.is_zero() {
                    continue;
                }
                // u^j contributes exponent -j mu on top of the representative.
                let mut e = rep.clone();
                for (r, &m) in e[pos * self.rank..(pos + 1) * self.rank]
                    .iter_mut()
                    .zip(mu)
                {
                    *r -= j * m;
                }
                quotient.add_term(e, &partial);
            }
        }
        if !remainder.is_zero() {
            return Err(CharError::NotDivisible { remainder: Box::new(remainder) });
        }
        Ok(quotient)
    }

    /// The formal group law `a + b - beta a b`.
    pub fn fgl_oplus(&self, other: &Self) -> Result<Self, CharError> {
        let prod = self.try_mul(other)?.scale(&BetaScalar::beta());
        self.try_add(other)?.try_sub(&prod)
    }

    /// The formal inverse `-b (1 - beta b)^{-1}`, defined when `1 - beta b`
    /// is a unit (a single term with coefficient a signed power of `beta`).
    pub fn fgl_ominus(&self) -> Result<Self, CharError> {
        let one = Self::one(self.rank, self.blocks.clone());
        let denom = one.try_sub(&self.scale(&BetaScalar::beta()))?;
        if denom.terms.len() != 1 {
            return Err(CharError::NonUnitDenominator);
        }
        let (exp, c) = denom.terms.iter().next().unwrap();
        let (be, bc) = c.as_unit().ok_or(CharError::NonUnitDenominator)?;
        let inv_exp: Vec<i32> = exp.iter().map(|&e| -e).collect();
        let inv_coef = BetaScalar::monomial(-be, bc);
        Ok(self.mul_term(&inv_exp, &inv_coef).scale(&BetaScalar::int(-1)))
    }

    /// `a (-) b = a (+) ominus(b)`.
    pub fn fgl_ominus_binary(&self, other: &Self) -> Result<Self, CharError> {
        self.fgl_oplus(&other.fgl_ominus()?)
    }

    /// Evaluate `beta` at an exact rational value.
    pub fn specialize_beta(&self, value: &BigRational) -> Result<SpecializedElement, CharError> {
        let mut terms = BTreeMap::new();
        for (exp, c) in self.terms() {
            let v = c.eval(value)?;
            if !v.is_zero() {
                terms.insert(exp.clone(), v);
            }
        }
        Ok(SpecializedElement {
            rank: self.rank,
            blocks: self.blocks.clone(),
            terms,
        })
    }
}

impl fmt::Display for CharElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (exp, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (pos, b) in self.blocks.iter().enumerate() {
                let slice = self.block_slice(exp, pos);
                if slice.iter().any(|&e| e != 0) {
                    let coords: Vec<String> = slice.iter().map(|e| e.to_string()).collect();
                    write!(f, " {b}[{}]", coords.join(","))?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &CharElement {
    type Output = CharElement;

    fn add(self, rhs: &CharElement) -> CharElement {
        self.try_add(rhs).expect("block mismatch in +")
    }
}

impl Sub for &CharElement {
    type Output = CharElement;

    fn sub(self, rhs: &CharElement) -> CharElement {
        self.try_sub(rhs).expect("block mismatch in -")
    }
}

impl Mul for &CharElement {
    type Output = CharElement;

    fn mul(self, rhs: &CharElement) -> CharElement {
        self.try_mul(rhs).expect("block mismatch in *")
    }
}

impl Neg for &CharElement {
    type Output = CharElement;

    fn neg(self) -> CharElement {
        self.scale(&BetaScalar::int(-1))
    }
}

/// A character element after substituting a rational number for `beta`:
/// exponent vectors with exact rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecializedElement {
    rank: usize,
    blocks: Vec<Block>,
    terms: BTreeMap<Vec<i32>, BigRational>,
}

impl SpecializedElement {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Serialize for SpecializedElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Term<'a> {
            exp: &'a Vec<i32>,
            coef: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(exp, c)| Term { exp, coef: c.to_string() })
            .collect();
        let mut s = serializer.serialize_struct("SpecializedElement", 3)?;
        s.serialize_field("blocks", &self.blocks)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

/// Parse a rational like `1`, `-2/3` into an exact value.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from(n))
    }
}
