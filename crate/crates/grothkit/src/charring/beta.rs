//! Laurent polynomials in `beta` over the integers.

use super::CharError;
use num::{BigInt, BigRational, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element of `Z[beta, beta^-1]`, stored as exponent -> coefficient with no
/// zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BetaScalar {
    terms: BTreeMap<i32, i64>,
}

impl BetaScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The integer `c` as a scalar.
    pub fn int(c: i64) -> Self {
        Self::monomial(0, c)
    }

    pub fn beta() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * beta^k`.
    pub fn monomial(exp: i32, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exp, c);
        }
        BetaScalar { terms }
    }

    /// `beta^k`, with `k` possibly negative.
    pub fn beta_pow(exp: i32) -> Self {
        Self::monomial(exp, 1)
    }

    /// `(-beta)^k` for `k >= 0`.
    pub fn neg_beta_pow(exp: u32) -> Self {
        Self::monomial(exp as i32, if exp % 2 == 0 { 1 } else { -1 })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in pairs {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    /// `Some((exp, coeff))` when the scalar is a single term with coefficient
    /// plus or minus one, i.e. a unit of the Laurent ring.
    pub fn as_unit(&self) -> Option<(i32, i64)> {
        if self.terms.len() == 1 {
            let (&e, &c) = self.terms.iter().next().unwrap();
            if c == 1 || c == -1 {
                return Some((e, c));
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coefficient(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn add_term(&mut self, exp: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by `beta^k`.
    pub fn shift(&self, k: i32) -> Self {
        BetaScalar {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Evaluate at a rational value of `beta`. Negative powers of zero are a
    /// [`CharError::DivisionByZero`].
    pub fn eval(&self, value: &BigRational) -> Result<BigRational, CharError> {
        let mut out = BigRational::zero();
        for (&e, &c) in &self.terms {
            let power = if e >= 0 {
                num::pow::pow(value.clone(), e as usize)
            } else {
                if value.is_zero() {
                    return Err(CharError::DivisionByZero);
                }
                num::pow::pow(value.clone(), (-e) as usize).recip()
            };
            out += power * BigRational::from(BigInt::from(c));
        }
        Ok(out)
    }
}

impl fmt::Display for BetaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&e, &c)) in self.terms.iter().enumerate() {
            let lead = if k == 0 {
                if c < 0 { "-" } else { "" }
            } else if c < 0 {
                " - "
            } else {
                " + "
            };
            f.write_str(lead)?;
            let a = c.abs();
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => write!(f, "b")?,
                (1, _) => write!(f, "b^{e}")?,
                (_, 1) => write!(f, "{a}b")?,
                (_, _) => write!(f, "{a}b^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &BetaScalar {
    type Output = BetaScalar;

    fn add(self, rhs: &BetaScalar) -> BetaScalar {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl AddAssign<&BetaScalar> for BetaScalar {
    fn add_assign(&mut self, rhs: &BetaScalar) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &BetaScalar {
    type Output = BetaScalar;

    fn sub(self, rhs: &BetaScalar) -> BetaScalar {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &BetaScalar {
    type Output = BetaScalar;

    fn neg(self) -> BetaScalar {
        BetaScalar {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &BetaScalar {
    type Output = BetaScalar;

    fn mul(self, rhs: &BetaScalar) -> BetaScalar {
        let mut out = BetaScalar::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Serialize for BetaScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i32, i64)> = self.terms().collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BetaScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i32, i64)> = Vec::deserialize(deserializer)?;
        for window in pairs.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(D::Error::custom("beta exponents must be strictly increasing"));
            }
        }
        Ok(BetaScalar::from_pairs(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let b = BetaScalar::beta();
        let one = BetaScalar::one();
        let t = &(&b * &b) + &one;
        assert_eq!(t, BetaScalar::from_pairs([(0, 1), (2, 1)]));
        assert_eq!(&t - &t, BetaScalar::zero());
        assert_eq!(&-&b * &-&b, &b * &b);
        assert_eq!(&BetaScalar::beta_pow(-1) * &b, one);
    }

    #[test]
    fn neg_beta_pow_signs() {
        assert_eq!(BetaScalar::neg_beta_pow(0), BetaScalar::one());
        assert_eq!(BetaScalar::neg_beta_pow(1), BetaScalar::monomial(1, -1));
        assert_eq!(BetaScalar::neg_beta_pow(2), BetaScalar::monomial(2, 1));
    }

    #[test]
    fn unit_detection() {
        assert_eq!(BetaScalar::beta_pow(-3).as_unit(), Some((-3, 1)));
        assert_eq!(BetaScalar::monomial(2, -1).as_unit(), Some((2, -1)));
        assert_eq!(BetaScalar::int(2).as_unit(), None);
        assert_eq!(BetaScalar::from_pairs([(0, 1), (1, 1)]).as_unit(), None);
    }

    #[test]
    fn eval_rational() {
        use num::FromPrimitive;
        let t = BetaScalar::from_pairs([(-1, 1), (1, 2)]);
        let half = BigRational::from_f64(0.5).unwrap();
        assert_eq!(t.eval(&half).unwrap(), BigRational::from_i64(3).unwrap());
        assert_eq!(
            t.eval(&BigRational::zero()).unwrap_err(),
            CharError::DivisionByZero
        );
        assert!(BetaScalar::beta().eval(&BigRational::zero()).unwrap().is_zero());
    }

    #[test]
    fn display() {
        let t = BetaScalar::from_pairs([(-1, 1), (0, -2), (2, 3)]);
        assert_eq!(t.to_string(), "b^-1 - 2 + 3b^2");
        assert_eq!(BetaScalar::zero().to_string(), "0");
    }

    #[test]
    fn serde_round_trip() {
        let t = BetaScalar::from_pairs([(-1, 1), (2, -5)]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[[-1,1],[2,-5]]");
        let back: BetaScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
