//! Expansion around `beta = 0` with exact rational coefficients.
//!
//! `series_expand` rewrites a character element as a series in `beta` whose
//! coefficients are polynomials in formal coordinates, one variable per block
//! entry: the scalar term `c beta^n e^{beta lambda}` contributes
//! `c beta^{n+m} lambda(v)^m / m!` for every `m >= 0`. The expansion is
//! bigraded by (beta power, polynomial degree), and each slot with degree at
//! most the truncation bound is computed exactly; negative beta powers are
//! checked in full (every degree) and must vanish, otherwise the pole is
//! reported rather than truncated away.

use super::{Block, CharElement, CharError};
use crate::rootdata::{WeylElem, WeylGroup};
use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A multivariate polynomial with exact rational coefficients over a fixed
/// number of formal variables. Used for beta-series coefficients and for
/// classical cross-checks; not part of the public API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct QPoly {
    pub width: usize,
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

impl QPoly {
    pub fn zero(width: usize) -> Self {
        QPoly { width, terms: BTreeMap::new() }
    }

    pub fn one(width: usize) -> Self {
        Self::constant(width, BigRational::one())
    }

    pub fn constant(width: usize, c: BigRational) -> Self {
        let mut p = Self::zero(width);
        p.add_term(vec![0; width], c);
        p
    }

    pub fn variable(width: usize, i: usize) -> Self {
        assert!(i < width);
        let mut exp = vec![0; width];
        exp[i] = 1;
        let mut p = Self::zero(width);
        p.add_term(exp, BigRational::one());
        p
    }

    /// The linear form with integer coefficients `coeffs[j]` on variable `j`.
    pub fn linear(coeffs: &[i32]) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut exp = vec![0; coeffs.len()];
                exp[j] = 1;
                p.add_term(exp, BigRational::from(BigInt::from(c)));
            }
        }
        p
    }

    /// The linear form with rational coefficients given sparsely.
    pub fn linear_form(width: usize, coeffs: &[(usize, BigRational)]) -> Self {
        let mut p = Self::zero(width);
        for (j, c) in coeffs {
            let mut exp = vec![0; width];
            exp[*j] = 1;
            p.add_term(exp, c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exp.len(), self.width);
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &QPoly) {
        assert_eq!(self.width, other.width);
        for (exp, c) in &other.terms {
            self.add_term(exp.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        assert_eq!(self.width, other.width);
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        let mut out = Self::zero(self.width);
        if c.is_zero() {
            return out;
        }
        for (exp, v) in &self.terms {
            out.add_term(exp.clone(), v * c);
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }
}

pub(crate) fn qpoly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    assert_eq!(a.width, b.width);
    let mut out = QPoly::zero(a.width);
    for (e1, c1) in &a.terms {
        for (e2, c2) in &b.terms {
            let exp: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            out.add_term(exp, c1 * c2);
        }
    }
    out
}

/// Apply a full linear change of variables: variable `i` becomes the linear
/// form `maps[i]` over `new_width` fresh variables.
pub(crate) fn qpoly_substitute_linear(
    p: &QPoly,
    maps: &[Vec<(usize, BigRational)>],
    new_width: usize,
) -> QPoly {
    assert_eq!(maps.len(), p.width);
    let forms: Vec<QPoly> = maps
        .iter()
        .map(|m| QPoly::linear_form(new_width, m))
        .collect();
    let mut out = QPoly::zero(new_width);
    for (exp, c) in &p.terms {
        let mut acc = QPoly::constant(new_width, c.clone());
        for (i, &e) in exp.iter().enumerate() {
            for _ in 0..e {
                acc = qpoly_mul(&acc, &forms[i]);
            }
        }
        out.add_assign(&acc);
    }
    out
}

/// Exact division by the linear form `lin` (given sparsely, first entry must
/// have a nonzero coefficient). Returns `None` when the division leaves a
/// remainder.
pub(crate) fn qpoly_divide_linear(p: &QPoly, lin: &[(usize, BigRational)]) -> Option<QPoly> {
    let (pivot, c_p) = lin
        .iter()
        .find(|(_, c)| !c.is_zero())
        .map(|(i, c)| (*i, c.clone()))
        .expect("divisor must be a nonzero linear form");
    let rest: Vec<(usize, BigRational)> = lin
        .iter()
        .filter(|(i, c)| *i != pivot && !c.is_zero())
        .cloned()
        .collect();
    let rest_poly = QPoly::linear_form(p.width, &rest);

    // Bucket by the pivot exponent; bucket polynomials are pivot-free.
    let mut buckets: BTreeMap<u32, QPoly> = BTreeMap::new();
    for (exp, c) in &p.terms {
        let d = exp[pivot];
        let mut e = exp.clone();
        e[pivot] = 0;
        buckets
            .entry(d)
            .or_insert_with(|| QPoly::zero(p.width))
            .add_term(e, c.clone());
    }
    let top = buckets.keys().next_back().copied().unwrap_or(0);

    // Matching coefficients of g = q * (c_p v + rest) + rem in the pivot
    // variable v gives q_{d-1} = (g_d - rest * q_d) / c_p descending from
    // q_top = 0, and rem = g_0 - rest * q_0.
    let inv = BigRational::one() / c_p;
    let mut q_parts: Vec<(u32, QPoly)> = Vec::new();
    let mut q_next = QPoly::zero(p.width);
    for d in (1..=top).rev() {
        let g_d = buckets.remove(&d).unwrap_or_else(|| QPoly::zero(p.width));
        let q_dm1 = g_d.sub(&qpoly_mul(&rest_poly, &q_next)).scale(&inv);
        if !q_dm1.is_zero() {
            q_parts.push((d - 1, q_dm1.clone()));
        }
        q_next = q_dm1;
    }
    let g_0 = buckets.remove(&0).unwrap_or_else(|| QPoly::zero(p.width));
    let rem = g_0.sub(&qpoly_mul(&rest_poly, &q_next));
    if !rem.is_zero() {
        return None;
    }
    let mut q = QPoly::zero(p.width);
    for (d, part) in q_parts {
        for (exp, c) in part.terms {
            let mut e = exp;
            e[pivot] = d;
            q.add_term(e, c);
        }
    }
    Some(q)
}

/// The linear substitution realizing the action of `w` on one block of
/// series variables: `(w lambda)(v) = lambda(v')` with `v'` given by the
/// transpose of the action matrix. Other blocks map identically.
pub(crate) fn qpoly_weyl_maps(
    group: &WeylGroup,
    w: WeylElem,
    block_pos: usize,
    nblocks: usize,
) -> Vec<Vec<(usize, BigRational)>> {
    let rank = group.rank();
    let width = rank * nblocks;
    let mat = group.matrix(w);
    let mut maps = Vec::with_capacity(width);
    for var in 0..width {
        let pos = var / rank;
        if pos != block_pos {
            maps.push(vec![(var, BigRational::one())]);
            continue;
        }
        let k = var % rank;
        let off = pos * rank;
        let mut form = Vec::new();
        for j in 0..rank {
            let m = mat[j * rank + k];
            if m != 0 {
                form.push((off + j, BigRational::from(BigInt::from(m))));
            }
        }
        maps.push(form);
    }
    maps
}

/// A character element expanded around `beta = 0`: for each beta power, an
/// exact polynomial coefficient in the block coordinates, with every stored
/// monomial of total degree at most the truncation bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesElement {
    rank: usize,
    blocks: Vec<Block>,
    truncation_degree: u32,
    coeffs: BTreeMap<i32, QPoly>,
}

impl SeriesElement {
    pub(crate) fn from_parts(
        rank: usize,
        blocks: Vec<Block>,
        truncation_degree: u32,
        coeffs: BTreeMap<i32, QPoly>,
    ) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        SeriesElement { rank, blocks, truncation_degree, coeffs }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn truncation_degree(&self) -> u32 {
        self.truncation_degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Beta powers with a nonzero coefficient, ascending.
    pub fn beta_support(&self) -> Vec<i32> {
        self.coeffs.keys().copied().collect()
    }

    pub(crate) fn beta_coefficient(&self, k: i32) -> QPoly {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| QPoly::zero(self.rank * self.blocks.len()))
    }

    /// The coefficient of `beta^0`: the classical limit.
    pub(crate) fn classical_limit(&self) -> QPoly {
        self.beta_coefficient(0)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CharError> {
        self.same_shape(other)?;
        let mut coeffs = self.coeffs.clone();
        for (k, p) in &other.coeffs {
            coeffs
                .entry(*k)
                .or_insert_with(|| QPoly::zero(p.width))
                .add_assign(p);
        }
        coeffs.retain(|_, p| !p.is_zero());
        Ok(SeriesElement { coeffs, ..self.clone() })
    }

    /// Product with truncation back to the common degree bound.
    pub fn try_mul(&self, other: &Self) -> Result<Self, CharError> {
        self.same_shape(other)?;
        let width = self.rank * self.blocks.len();
        let bound = self.truncation_degree;
        let mut coeffs: BTreeMap<i32, QPoly> = BTreeMap::new();
        for (k1, p1) in &self.coeffs {
            for (k2, p2) in &other.coeffs {
                let prod = qpoly_mul(p1, p2);
                let mut kept = QPoly::zero(width);
                for (exp, c) in prod.terms {
                    if exp.iter().sum::<u32>() <= bound {
                        kept.add_term(exp, c);
                    }
                }
                if !kept.is_zero() {
                    coeffs
                        .entry(k1 + k2)
                        .or_insert_with(|| QPoly::zero(width))
                        .add_assign(&kept);
                }
            }
        }
        coeffs.retain(|_, p| !p.is_zero());
        Ok(SeriesElement {
            rank: self.rank,
            blocks: self.blocks.clone(),
            truncation_degree: bound,
            coeffs,
        })
    }

    fn same_shape(&self, other: &Self) -> Result<(), CharError> {
        if self.rank != other.rank
            || self.blocks != other.blocks
            || self.truncation_degree != other.truncation_degree
        {
            return Err(CharError::BlockMismatch(
                "series shapes or truncation bounds differ".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for SeriesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let rank = self.rank;
        for (n, (k, poly)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => {}
                1 => f.write_str("b ")?,
                _ => write!(f, "b^{k} ")?,
            }
            f.write_str("(")?;
            for (m, (exp, c)) in poly.terms.iter().enumerate() {
                if m > 0 {
                    f.write_str(" + ")?;
                }
                write!(f, "{c}")?;
                for (i, &e) in exp.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let b = self.blocks[i / rank];
                    write!(f, " {}{}", b, i % rank + 1)?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Expand a character element as a beta-series with polynomial coefficients.
/// All slots of polynomial degree at most `truncation_degree` are exact, and
/// every negative beta power is computed in full so that poles can never hide
/// beyond the truncation bound.
pub fn series_expand(
    f: &CharElement,
    truncation_degree: u32,
) -> Result<SeriesElement, CharError> {
    let width = f.width();
    let d_max = truncation_degree as i32;
    let mut slots: BTreeMap<i32, QPoly> = BTreeMap::new();
    for (exp, scalar) in f.terms() {
        let lambda = QPoly::linear(exp);
        let n_min = scalar.min_exp().expect("stored scalars are nonzero");
        let m_cap = d_max.max(-1 - n_min);
        // powers[m] = lambda^m / m!
        let mut powers: Vec<QPoly> = Vec::with_capacity(m_cap as usize + 1);
        powers.push(QPoly::one(width));
        for m in 1..=m_cap {
            let p = qpoly_mul(powers.last().unwrap(), &lambda)
                .scale(&BigRational::new(BigInt::one(), BigInt::from(m)));
            powers.push(p);
        }
        for (n, c) in scalar.terms() {
            let c_rat = BigRational::from(BigInt::from(c));
            let m_hi = d_max.max(-1 - n);
            for m in 0..=m_hi {
                let add = powers[m as usize].scale(&c_rat);
                if add.is_zero() {
                    continue;
                }
                slots
                    .entry(n + m)
                    .or_insert_with(|| QPoly::zero(width))
                    .add_assign(&add);
            }
        }
    }
    slots.retain(|_, p| !p.is_zero());
    if let Some((&k, _)) = slots.iter().next() {
        if k < 0 {
            return Err(CharError::PoleAtBetaZero { exponent: k });
        }
    }
    Ok(SeriesElement {
        rank: f.rank(),
        blocks: f.blocks().to_vec(),
        truncation_degree,
        coeffs: slots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::BetaScalar;
    use crate::rootdata::{RootDatum, TypeLabel};

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn ratq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exponential_expansion() {
        // e^{beta lambda} = 1 + beta lambda + beta^2 lambda^2/2 + ...
        let f = CharElement::block_term(2, vec![Block::X], Block::X, &[1, -1], BetaScalar::one());
        let s = series_expand(&f, 2).unwrap();
        assert_eq!(s.beta_support(), vec![0, 1, 2]);
        assert_eq!(s.beta_coefficient(0), QPoly::one(2));
        assert_eq!(s.beta_coefficient(1), QPoly::linear(&[1, -1]));
        let lambda = QPoly::linear(&[1, -1]);
        assert_eq!(
            s.beta_coefficient(2),
            qpoly_mul(&lambda, &lambda).scale(&ratq(1, 2))
        );
    }

    #[test]
    fn cancelled_pole_expands() {
        // (1 - e^{beta mu})/beta = -mu - beta mu^2/2 - ... with no pole.
        let one = CharElement::one(2, vec![Block::X]);
        let e = CharElement::block_term(2, vec![Block::X], Block::X, &[0, 1], BetaScalar::one());
        let f = (&one - &e).scale(&BetaScalar::beta_pow(-1));
        let s = series_expand(&f, 2).unwrap();
        assert_eq!(s.beta_coefficient(0), QPoly::linear(&[0, -1]));
        let mu = QPoly::linear(&[0, 1]);
        assert_eq!(
            s.beta_coefficient(1),
            qpoly_mul(&mu, &mu).scale(&ratq(-1, 2))
        );
        // The beta^2 slot would have polynomial degree 3, beyond the bound.
        assert_eq!(s.beta_support(), vec![0, 1]);
    }

    #[test]
    fn pole_is_detected() {
        let f = CharElement::block_term(
            1,
            vec![Block::X],
            Block::X,
            &[1],
            BetaScalar::beta_pow(-1),
        );
        assert_eq!(
            series_expand(&f, 0).unwrap_err(),
            CharError::PoleAtBetaZero { exponent: -1 }
        );
        // Even a deep pole is seen at truncation degree 0.
        let g = CharElement::block_term(
            1,
            vec![Block::X],
            Block::X,
            &[1],
            BetaScalar::beta_pow(-3),
        );
        assert_eq!(
            series_expand(&g, 0).unwrap_err(),
            CharError::PoleAtBetaZero { exponent: -3 }
        );
    }

    #[test]
    fn expansion_is_multiplicative() {
        let f = CharElement::block_term(2, vec![Block::X], Block::X, &[2, 0], BetaScalar::beta());
        let one = CharElement::one(2, vec![Block::X]);
        let g = &one + &CharElement::block_term(2, vec![Block::X], Block::X, &[0, -1], BetaScalar::int(3));
        let lhs = series_expand(&(&f * &g), 3).unwrap();
        let rhs = series_expand(&f, 3)
            .unwrap()
            .try_mul(&series_expand(&g, 3).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn divide_by_difference_of_variables() {
        // (v0^2 - v1^2)/(v0 - v1) = v0 + v1.
        let v0 = QPoly::variable(2, 0);
        let v1 = QPoly::variable(2, 1);
        let num = qpoly_mul(&v0, &v0).sub(&qpoly_mul(&v1, &v1));
        let lin = vec![(0, rat(1)), (1, rat(-1))];
        let q = qpoly_divide_linear(&num, &lin).unwrap();
        let mut expect = v0.clone();
        expect.add_assign(&v1);
        assert_eq!(q, expect);
        // v0^2 + v1 is not divisible by v0 - v1.
        let mut bad = qpoly_mul(&v0, &v0);
        bad.add_assign(&v1);
        assert!(qpoly_divide_linear(&bad, &lin).is_none());
    }

    #[test]
    fn divide_by_general_linear_form() {
        // (2v0 + v1)(v0 - 3v1) / (2v0 + v1) = v0 - 3v1.
        let a = QPoly::linear(&[2, 1]);
        let b = QPoly::linear(&[1, -3]);
        let num = qpoly_mul(&a, &b);
        let lin = vec![(0, rat(2)), (1, rat(1))];
        assert_eq!(qpoly_divide_linear(&num, &lin).unwrap(), b);
    }

    #[test]
    fn linear_substitution() {
        // v0 v1 with v0 -> u0 + u1, v1 -> u0 - u1 gives u0^2 - u1^2.
        let p = qpoly_mul(&QPoly::variable(2, 0), &QPoly::variable(2, 1));
        let maps = vec![
            vec![(0, rat(1)), (1, rat(1))],
            vec![(0, rat(1)), (1, rat(-1))],
        ];
        let s = qpoly_substitute_linear(&p, &maps, 2);
        let u0 = QPoly::variable(2, 0);
        let u1 = QPoly::variable(2, 1);
        let expect = qpoly_mul(&u0, &u0).sub(&qpoly_mul(&u1, &u1));
        assert_eq!(s, expect);
    }

    #[test]
    fn weyl_substitution_matches_action() {
        let g = WeylGroup::new(RootDatum::standard(TypeLabel::A, 2).unwrap()).unwrap();
        let w = g.elem_from_word(&[1, 2]).unwrap();
        let f = CharElement::block_term(2, vec![Block::X], Block::X, &[1, 1], BetaScalar::one());
        let acted = f.weyl_act(&g, Block::X, w).unwrap();
        let direct = series_expand(&acted, 3).unwrap();
        let via_sub = series_expand(&f, 3).unwrap();
        let maps = qpoly_weyl_maps(&g, w, 0, 1);
        for k in 0..=3 {
            assert_eq!(
                direct.beta_coefficient(k),
                qpoly_substitute_linear(&via_sub.beta_coefficient(k), &maps, 2)
            );
        }
    }
}
