//! Classical double Schubert polynomials, the exact cross-check at beta = 0.
//!
//! Everything here is ordinary polynomial algebra over the rationals: the top
//! polynomial is the staircase product, lower ones follow by divided
//! differences, and localization substitutes permuted variables. No character
//! rings, no beta; the code path is deliberately disjoint from the table
//! construction it checks.

use std::collections::BTreeMap;

use num::{BigRational, One};

use crate::charring::{
    qpoly_divide_linear, qpoly_mul, qpoly_substitute_linear, Block, QPoly, SeriesElement,
};

/// Exchange two variables of a polynomial.
pub(crate) fn qpoly_swap_vars(p: &QPoly, a: usize, b: usize) -> QPoly {
    let mut out = QPoly::zero(p.width);
    for (exp, c) in &p.terms {
        let mut e = exp.clone();
        e.swap(a, b);
        out.add_term(e, c.clone());
    }
    out
}

/// One-line form of the product `s_{i_1} ... s_{i_r}` in `S_n`: entry `k`
/// (0-based) is the image of `k + 1`.
fn one_line(n: usize, word: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    for &i in word {
        assert!(i >= 1 && i < n, "letter {i} out of range for S_{n}");
        p.swap(i - 1, i);
    }
    p
}

/// A reduced word for the permutation, by repeatedly removing descents.
fn reduced_word_of(mut p: Vec<usize>) -> Vec<usize> {
    let mut word = Vec::new();
    loop {
        match (0..p.len() - 1).find(|&k| p[k] > p[k + 1]) {
            Some(k) => {
                p.swap(k, k + 1);
                word.push(k + 1);
            }
            None => break,
        }
    }
    // The loop peels letters off the right of a reduced word.
    word.reverse();
    word
}

/// The divided difference in the x-block of a polynomial over
/// `x_1..x_n, y_1..y_n`: `(f - s_i f) / (x_i - x_{i+1})`. Always exact since
/// the numerator is antisymmetric in the two variables.
fn divided_difference_x(n: usize, i: usize, f: &QPoly) -> QPoly {
    let swapped = qpoly_swap_vars(f, i - 1, i);
    let numer = f.sub(&swapped);
    if numer.is_zero() {
        return QPoly::zero(2 * n);
    }
    let lin = [
        (i - 1, BigRational::one()),
        (i, -BigRational::one()),
    ];
    qpoly_divide_linear(&numer, &lin).expect("divided difference is exact")
}

/// The double Schubert polynomial of the permutation with the given word,
/// over `x_1..x_n, y_1..y_n`: the staircase product for the longest element,
/// then one divided difference per letter of a reduced word of `w^{-1} w_0`.
pub(crate) fn schubert_polynomial(n: usize, word: &[usize]) -> QPoly {
    let width = 2 * n;
    let mut top = QPoly::one(width);
    for i in 1..=n {
        for j in 1..=n - i {
            let mut factor = QPoly::zero(width);
            let mut xe = vec![0u32; width];
            xe[i - 1] = 1;
            factor.add_term(xe, BigRational::one());
            let mut ye = vec![0u32; width];
            ye[n + j - 1] = 1;
            factor.add_term(ye, -BigRational::one());
            top = qpoly_mul(&top, &factor);
        }
    }

    let w = one_line(n, word);
    let w0: Vec<usize> = (1..=n).rev().collect();
    // w^{-1} w_0 in one-line form: position k holds w^{-1}(w_0(k)).
    let mut inv = vec![0usize; n];
    for (pos, &v) in w.iter().enumerate() {
        inv[v - 1] = pos + 1;
    }
    let tail: Vec<usize> = w0.iter().map(|&v| inv[v - 1]).collect();
    let mut f = top;
    for &i in reduced_word_of(tail).iter().rev() {
        f = divided_difference_x(n, i, &f);
    }
    f
}

/// The substitution maps sending `t_i` to its expression in fundamental
/// weight coordinates of `sl_n`: `t_1 = v_1`, `t_i = v_i - v_{i-1}`,
/// `t_n = -v_{n-1}`.
pub(crate) fn fundamental_maps(n: usize) -> Vec<Vec<(usize, BigRational)>> {
    (1..=n)
        .map(|i| {
            let mut m = Vec::new();
            if i < n {
                m.push((i - 1, BigRational::one()));
            }
            if i > 1 {
                m.push((i - 2, -BigRational::one()));
            }
            m
        })
        .collect()
}

/// The localized classical double Schubert polynomial `S_u(w t, t)` in `S_n`,
/// as an exact polynomial in the variables `t_1, ..., t_n` (a series with the
/// single beta power zero). `w` and `u` are given by words in the adjacent
/// transpositions `s_1, ..., s_{n-1}`, not necessarily reduced.
pub fn classical_schubert_localization(n: usize, w: &[usize], u: &[usize]) -> SeriesElement {
    let poly = schubert_polynomial(n, u);
    let wp = one_line(n, w);
    let mut maps: Vec<Vec<(usize, BigRational)>> = Vec::with_capacity(2 * n);
    for i in 0..n {
        maps.push(vec![(wp[i] - 1, BigRational::one())]);
    }
    for j in 0..n {
        maps.push(vec![(j, BigRational::one())]);
    }
    let localized = qpoly_substitute_linear(&poly, &maps, n);
    let degree = localized.total_degree();
    let mut coeffs = BTreeMap::new();
    coeffs.insert(0, localized);
    SeriesElement::from_parts(n, vec![Block::X], degree, coeffs)
}
