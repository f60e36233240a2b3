//! LaTeX rendering for scalars and character elements.
//!
//! Two element renderers are provided: a generic exponential form that works
//! for any root datum, and a monomial form for callers that can convert
//! exponents to per-variable powers (type A does this to print `X_1 X_3^{-1}`
//! instead of weight-lattice exponentials).

use super::{BetaScalar, Block, CharElement};
use std::fmt::Write as _;

/// Render a scalar such as `\beta^{-1} - 2\beta`.
pub fn beta_scalar_latex(s: &BetaScalar) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (exp, c)) in s.terms().enumerate() {
        let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
        if n == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        out.push_str(&beta_power(exp, mag));
    }
    out
}

fn beta_power(exp: i32, mag: i64) -> String {
    let mut body = String::new();
    if mag != 1 || exp == 0 {
        write!(body, "{mag}").unwrap();
    }
    match exp {
        0 => {}
        1 => body.push_str("\\beta"),
        _ => write!(body, "\\beta^{{{exp}}}").unwrap(),
    }
    body
}

/// One rendered summand: a sign and the body with any magnitude-one
/// coefficient folded away when a variable part is present.
pub fn summand(c: &BetaScalar, vars: &str) -> (bool, String) {
    if vars.is_empty() {
        let s = beta_scalar_latex(c);
        return match s.strip_prefix('-') {
            Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => {
                (true, rest.to_string())
            }
            _ => (false, s),
        };
    }
    let mut terms = c.terms();
    let first = terms.next().expect("stored coefficients are nonzero");
    let single = terms.next().is_none();
    if single {
        let (exp, coef) = first;
        let negative = coef < 0;
        let mag = coef.abs();
        let coef_str = if mag == 1 && exp == 0 {
            String::new()
        } else {
            beta_power(exp, mag)
        };
        let body = if coef_str.is_empty() {
            vars.to_string()
        } else {
            format!("{coef_str} {vars}")
        };
        (negative, body)
    } else {
        (false, format!("({}) {vars}", beta_scalar_latex(c)))
    }
}

/// Join rendered summands into a sum, folding each sign into its separator.
pub fn join_summands(parts: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (n, (negative, body)) in parts.into_iter().enumerate() {
        if n == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The rendered variable part of each term, in canonical term order, with
/// each block exponent vector converted to per-variable powers by `convert`;
/// variables are named after the block (`X_1`, `Y_2`, ...) and a constant
/// term yields an empty string.
pub fn monomial_var_strings(
    f: &CharElement,
    convert: impl Fn(Block, &[i32]) -> Vec<i32>,
) -> Vec<String> {
    let rank = f.rank();
    let mut out = Vec::new();
    for (exp, _) in f.terms() {
        let mut vars = String::new();
        for (pos, &b) in f.blocks().iter().enumerate() {
            let powers = convert(b, &exp[pos * rank..(pos + 1) * rank]);
            for (i, &e) in powers.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !vars.is_empty() {
                    vars.push(' ');
                }
                match e {
                    1 => write!(vars, "{}_{{{}}}", b, i + 1).unwrap(),
                    _ => write!(vars, "{}_{{{}}}^{{{}}}", b, i + 1, e).unwrap(),
                }
            }
        }
        out.push(vars);
    }
    out
}

/// Render with each block exponent vector converted to per-variable powers by
/// `convert`; variables are named after the block (`X_1`, `Y_2`, ...).
pub fn monomial_latex(f: &CharElement, convert: impl Fn(Block, &[i32]) -> Vec<i32>) -> String {
    let vars = monomial_var_strings(f, convert);
    let parts = f
        .terms()
        .zip(&vars)
        .map(|((_, c), v)| summand(c, v))
        .collect();
    join_summands(parts)
}

/// The rendered `e^{\beta(...)}` part of each term, in canonical term order,
/// decorating the weight symbol with the block name when several blocks are
/// present; a constant term yields an empty string.
pub fn exponential_var_strings(f: &CharElement) -> Vec<String> {
    let rank = f.rank();
    let many = f.blocks().len() > 1;
    let mut out = Vec::new();
    for (exp, _) in f.terms() {
        let mut weight = String::new();
        for (pos, &b) in f.blocks().iter().enumerate() {
            for (i, &e) in exp[pos * rank..(pos + 1) * rank].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if weight.is_empty() {
                    if e < 0 {
                        weight.push('-');
                    }
                } else {
                    weight.push_str(if e < 0 { " - " } else { " + " });
                }
                if e.abs() != 1 {
                    write!(weight, "{}", e.abs()).unwrap();
                }
                if many {
                    write!(weight, "\\omega^{{{b}}}_{{{}}}", i + 1).unwrap();
                } else {
                    write!(weight, "\\omega_{{{}}}", i + 1).unwrap();
                }
            }
        }
        out.push(if weight.is_empty() {
            String::new()
        } else {
            format!("e^{{\\beta({weight})}}")
        });
    }
    out
}

/// Render in the generic exponential form `e^{\beta(2\omega_1 - \omega_2)}`,
/// decorating the weight symbol with the block name when several blocks are
/// present.
pub fn exponential_latex(f: &CharElement) -> String {
    let vars = exponential_var_strings(f);
    let parts = f
        .terms()
        .zip(&vars)
        .map(|((_, c), v)| summand(c, v))
        .collect();
    join_summands(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_rendering() {
        assert_eq!(beta_scalar_latex(&BetaScalar::zero()), "0");
        assert_eq!(beta_scalar_latex(&BetaScalar::one()), "1");
        assert_eq!(beta_scalar_latex(&BetaScalar::int(-3)), "-3");
        assert_eq!(beta_scalar_latex(&BetaScalar::beta_pow(-1)), "\\beta^{-1}");
        assert_eq!(
            beta_scalar_latex(&BetaScalar::from_pairs([(0, 1), (1, -2)])),
            "1 - 2\\beta"
        );
    }

    #[test]
    fn monomial_rendering() {
        // beta^{-1} - beta^{-1} X_1 X_3^{-1} under an identity conversion.
        let f = CharElement::from_terms(
            3,
            vec![Block::X],
            [
                (vec![0, 0, 0], BetaScalar::beta_pow(-1)),
                (vec![1, 0, -1], BetaScalar::monomial(-1, -1)),
            ],
        );
        let s = monomial_latex(&f, |_, e| e.to_vec());
        assert_eq!(s, "\\beta^{-1} - \\beta^{-1} X_{1} X_{3}^{-1}");
    }

    #[test]
    fn exponential_rendering() {
        let f = CharElement::from_terms(
            2,
            vec![Block::X],
            [
                (vec![0, 0], BetaScalar::one()),
                (vec![-1, 2], BetaScalar::int(1)),
            ],
        );
        // Canonical term order is lexicographic on exponents, so the term
        // with first coordinate -1 precedes the constant.
        assert_eq!(
            exponential_latex(&f),
            "e^{\\beta(-\\omega_{1} + 2\\omega_{2})} + 1"
        );
        let two_block = CharElement::term(
            1,
            vec![Block::X, Block::Y],
            vec![1, -1],
            BetaScalar::beta(),
        );
        assert_eq!(
            exponential_latex(&two_block),
            "\\beta e^{\\beta(\\omega^{X}_{1} - \\omega^{Y}_{1})}"
        );
    }
}
