//! The check bodies behind the catalog.
//!
//! Table-level checks read from a shared [`CheckContext`] holding, for every
//! group element `w`, the localization table of class values at the point
//! `w` together with its Möbius dual. The checks recompute nothing they can
//! cross-validate instead, so a corrupted context entry is observable.

use super::grid::{slot_word, OpSlot};
use super::{CheckName, IdentityError, Scope};
use crate::charring::{qpoly_substitute_linear, series_expand, BetaScalar, Block, CharElement};
use crate::demazure::{apply, apply_elem, apply_word_raw, dual_involution, OperatorVariant};
use crate::nilhecke::{HeckeElement, QuadraticSign};
use crate::rootdata::{WeylElem, WeylGroup};
use crate::sample::random_element;
use crate::schubert::{
    billey_table, coproduct, fundamental_maps, localization_table_hproduct,
    classical_schubert_localization, LocalizationTable,
};
use crate::typea::{
    enumerate_pipe_dreams, generating_function, grothendieck_poly, localization_pipe_dreams,
    one_line_from_word, GeneratingMode, PipeDream,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

/// What a check body reports back: how many witnesses it inspected and the
/// first counterexample it saw, if any.
pub(crate) struct Outcome {
    pub(crate) witnesses: u64,
    pub(crate) counterexample: Option<String>,
}

/// Accumulates witnesses and keeps the first counterexample.
struct Probe {
    witnesses: u64,
    counterexample: Option<String>,
}

impl Probe {
    fn new() -> Self {
        Probe { witnesses: 0, counterexample: None }
    }

    fn failed(&self) -> bool {
        self.counterexample.is_some()
    }

    fn check(&mut self, pass: bool, msg: impl FnOnce() -> String) {
        self.witnesses += 1;
        if !pass && self.counterexample.is_none() {
            self.counterexample = Some(msg());
        }
    }

    fn done(self) -> Outcome {
        Outcome { witnesses: self.witnesses, counterexample: self.counterexample }
    }
}

fn merge(results: Vec<(u64, Option<String>)>) -> Outcome {
    let mut out = Outcome { witnesses: 0, counterexample: None };
    for (witnesses, counterexample) in results {
        out.witnesses += witnesses;
        if out.counterexample.is_none() {
            out.counterexample = counterexample;
        }
    }
    out
}

/// Read-only localization data shared by the table-level checks: for every
/// point `w`, the table of class values `G_u(wx, x)` built by the generating
/// product, and its Möbius dual `g_u(wx, x)`.
pub(crate) struct CheckContext {
    pub(crate) tables: Vec<LocalizationTable>,
    pub(crate) duals: Vec<LocalizationTable>,
}

impl CheckContext {
    pub(crate) fn new(group: Arc<WeylGroup>) -> Result<Self, IdentityError> {
        let words: Vec<Vec<usize>> = group.elements().map(|w| group.word(w).to_vec()).collect();
        let tables = words
            .par_iter()
            .map(|word| localization_table_hproduct(&group, word))
            .collect::<Result<Vec<_>, _>>()?;
        let duals = tables.par_iter().map(LocalizationTable::dual).collect();
        Ok(CheckContext { tables, duals })
    }

    /// The class value `G_u(wx, x)`.
    fn t(&self, u: WeylElem, w: WeylElem) -> CharElement {
        self.tables[w.index()].value(u)
    }

    /// The dual class value `g_u(wx, x)`.
    fn g(&self, u: WeylElem, w: WeylElem) -> CharElement {
        self.duals[w.index()].value(u)
    }
}

pub(crate) struct CheckEnv<'a> {
    pub(crate) group: &'a Arc<WeylGroup>,
    pub(crate) ctx: Option<&'a CheckContext>,
    pub(crate) n: Option<usize>,
    pub(crate) seed: u64,
    pub(crate) scope: Scope,
}

impl CheckEnv<'_> {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn ctx(&self) -> &CheckContext {
        self.ctx.expect("tables are prepared for table-level checks")
    }

    /// Number of random ring elements an operator check draws.
    fn draws(&self) -> usize {
        match self.scope {
            Scope::Exhaustive => 3,
            Scope::Sampled(k) => k.max(1),
        }
    }

    fn random_poly(&self, rng: &mut ChaCha8Rng) -> CharElement {
        random_element(rng, self.group.rank(), &[Block::X], 2, 2, 0, 1)
    }

    fn single_cells(&self, rng: &mut ChaCha8Rng) -> Vec<WeylElem> {
        match self.scope {
            Scope::Exhaustive => self.group.elements().collect(),
            Scope::Sampled(k) => (0..k.max(1)).map(|_| random_elem(self.group, rng)).collect(),
        }
    }

    fn pair_cells(&self, rng: &mut ChaCha8Rng) -> Vec<(WeylElem, WeylElem)> {
        let g = self.group;
        match self.scope {
            Scope::Exhaustive => g
                .elements()
                .flat_map(|a| g.elements().map(move |b| (a, b)))
                .collect(),
            Scope::Sampled(k) => (0..k.max(1))
                .map(|_| (random_elem(g, rng), random_elem(g, rng)))
                .collect(),
        }
    }

    fn triple_cells(&self, rng: &mut ChaCha8Rng) -> Vec<(WeylElem, WeylElem, WeylElem)> {
        let g = self.group;
        match self.scope {
            Scope::Exhaustive => g
                .elements()
                .flat_map(|a| {
                    g.elements().flat_map(move |b| g.elements().map(move |c| (a, b, c)))
                })
                .collect(),
            Scope::Sampled(k) => (0..k.max(1))
                .map(|_| (random_elem(g, rng), random_elem(g, rng), random_elem(g, rng)))
                .collect(),
        }
    }
}

fn random_elem(g: &WeylGroup, rng: &mut ChaCha8Rng) -> WeylElem {
    WeylElem(rng.gen_range(0..g.size() as u32))
}

fn act(g: &WeylGroup, m: WeylElem, f: &CharElement) -> CharElement {
    f.weyl_act(g, Block::X, m).expect("values share the group's rank")
}

fn zero(g: &WeylGroup) -> CharElement {
    CharElement::zero(g.rank(), vec![Block::X])
}

fn one(g: &WeylGroup) -> CharElement {
    CharElement::one(g.rank(), vec![Block::X])
}

fn sign(k: usize) -> BetaScalar {
    BetaScalar::int(if k % 2 == 0 { 1 } else { -1 })
}

pub(crate) fn run(name: CheckName, env: &CheckEnv) -> Result<Outcome, IdentityError> {
    match name {
        CheckName::QuadraticBraid => quadratic_braid(env),
        CheckName::Annihilation => annihilation(env),
        CheckName::DConjugation => d_conjugation(env),
        CheckName::Leibniz => leibniz(env),
        CheckName::TopLeibniz => top_leibniz(env),
        CheckName::Symmetric1 => symmetric_1(env),
        CheckName::Symmetric2 => symmetric_2(env),
        CheckName::InversionUpper => inversion_upper(env),
        CheckName::DualBasisUpper => dual_basis(env, OpSlot::Second),
        CheckName::StarCauchyG => star_cauchy(env, StarSide::Classes),
        CheckName::ReducedCauchy => reduced_cauchy(env),
        CheckName::MobiusSigned => mobius_signed(env),
        CheckName::LocalizationValue => localization_value(env),
        CheckName::Billey => billey(env),
        CheckName::BilleyWordIndependence => billey_word_independence(env),
        CheckName::DualityGg => duality_gg(env),
        CheckName::ReducedCauchyDual => reduced_cauchy_dual(env),
        CheckName::Mobius => mobius(env),
        CheckName::InversionLower => inversion_lower(env),
        CheckName::DualBasisLower => dual_basis(env, OpSlot::First),
        CheckName::StarCauchyDual => star_cauchy(env, StarSide::Duals),
        CheckName::CoproductCoassoc => coproduct_coassoc(env),
        CheckName::YangBaxter => yang_baxter(env),
        CheckName::GfFactorization => gf_factorization(env),
        CheckName::GfComposition => gf_composition(env),
        CheckName::PipeDreamEquiv => pipe_dream_equiv(env),
        CheckName::LocalizationPipeDreamEquiv => localization_pipe_dream_equiv(env),
        CheckName::SupportNormalization => support_normalization(env),
        CheckName::ClassicalLimit => classical_limit(env),
    }
}

/// Each operator variant squares to its own scalar multiple, and opposite
/// alternating words of the braid length agree, for all three variants.
fn quadratic_braid(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let mut rng = env.rng();
    let mut p = Probe::new();
    let variants = [OperatorVariant::Pi, OperatorVariant::PiHat, OperatorVariant::PiUpper];
    for _ in 0..env.draws() {
        let f = env.random_poly(&mut rng);
        for variant in variants {
            let scalar = match variant {
                OperatorVariant::Pi => BetaScalar::beta(),
                _ => BetaScalar::monomial(1, -1),
            };
            for i in 1..=g.rank() {
                let once = apply(g, variant, i, Block::X, &f)?;
                let twice = apply(g, variant, i, Block::X, &once)?;
                p.check(twice == once.scale(&scalar), || {
                    format!("{variant}_{i} does not square to its scalar multiple")
                });
            }
            for i in 1..=g.rank() {
                for j in (i + 1)..=g.rank() {
                    let m = braid_order(g, i, j);
                    let lhs = apply_word_raw(g, variant, &alternating(i, j, m), Block::X, &f)?;
                    let rhs = apply_word_raw(g, variant, &alternating(j, i, m), Block::X, &f)?;
                    p.check(lhs == rhs, || {
                        format!("{variant} braid relation fails for the generator pair ({i}, {j})")
                    });
                }
            }
        }
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// Order of `s_i s_j`.
fn braid_order(g: &WeylGroup, i: usize, j: usize) -> usize {
    let step = g.left_mul(i, g.left_mul(j, g.identity()));
    let mut acc = step;
    let mut m = 1;
    while acc != g.identity() {
        acc = g.product(acc, step);
        m += 1;
    }
    m
}

fn alternating(i: usize, j: usize, m: usize) -> Vec<usize> {
    (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect()
}

/// The ascending and descending operators kill each other in both orders.
fn annihilation(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let mut rng = env.rng();
    let mut p = Probe::new();
    for _ in 0..env.draws() {
        let f = env.random_poly(&mut rng);
        for i in 1..=g.rank() {
            let hat = apply(g, OperatorVariant::PiHat, i, Block::X, &f)?;
            let up = apply(g, OperatorVariant::Pi, i, Block::X, &hat)?;
            p.check(up.is_zero(), || format!("pi_{i} pihat_{i} is not zero"));
            let asc = apply(g, OperatorVariant::Pi, i, Block::X, &f)?;
            let down = apply(g, OperatorVariant::PiHat, i, Block::X, &asc)?;
            p.check(down.is_zero(), || format!("pihat_{i} pi_{i} is not zero"));
        }
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The descending operator is minus the duality conjugate of the ascending
/// one.
fn d_conjugation(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let mut rng = env.rng();
    let mut p = Probe::new();
    for _ in 0..env.draws() {
        let f = env.random_poly(&mut rng);
        for i in 1..=g.rank() {
            let lhs = apply(g, OperatorVariant::PiHat, i, Block::X, &f)?;
            let df = dual_involution(g, Block::X, &f)?;
            let conj = dual_involution(g, Block::X, &apply(g, OperatorVariant::Pi, i, Block::X, &df)?)?;
            p.check(lhs == conj.scale(&BetaScalar::int(-1)), || {
                format!("pihat_{i} is not -D pi_{i} D")
            });
        }
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The twisted product rules of the ascending and descending operators.
fn leibniz(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let mut rng = env.rng();
    let mut p = Probe::new();
    for _ in 0..env.draws() {
        let f = env.random_poly(&mut rng);
        let h = env.random_poly(&mut rng);
        let product = &f * &h;
        for i in 1..=g.rank() {
            let s_i = g.left_mul(i, g.identity());
            let sf = act(g, s_i, &f);
            let hat_h = apply(g, OperatorVariant::PiHat, i, Block::X, &h)?;
            let lhs = apply(g, OperatorVariant::Pi, i, Block::X, &product)?;
            let rhs = &(&apply(g, OperatorVariant::Pi, i, Block::X, &f)? * &h) + &(&sf * &hat_h);
            p.check(lhs == rhs, || format!("the pi_{i} product rule fails"));
            let lhs = apply(g, OperatorVariant::PiHat, i, Block::X, &product)?;
            let rhs = &(&apply(g, OperatorVariant::PiHat, i, Block::X, &f)? * &h) + &(&sf * &hat_h);
            p.check(lhs == rhs, || format!("the pihat_{i} product rule fails"));
        }
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// Expanding `pihat_{w0}((w0 f) g)` over the group: the coefficient of the
/// term at `w` is `(-1)^{l(w w0)} pi_{w w0} f`.
fn top_leibniz(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let w0 = g.w0();
    let mut rng = env.rng();
    let mut p = Probe::new();
    for _ in 0..env.draws() {
        let f = env.random_poly(&mut rng);
        let h = env.random_poly(&mut rng);
        let w0f = act(g, w0, &f);
        let lhs = apply_elem(g, OperatorVariant::PiHat, w0, Block::X, &(&w0f * &h))?;
        let mut rhs = zero(g);
        for w in g.elements() {
            let ww0 = g.product(w, w0);
            let term = &apply_elem(g, OperatorVariant::Pi, ww0, Block::X, &f)?
                * &apply_elem(g, OperatorVariant::Pi, w, Block::X, &h)?;
            rhs = &rhs + &term.scale(&sign(g.length(ww0)));
        }
        p.check(lhs == rhs, || "the top product expansion has a wrong coefficient".into());
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The alternating double sum of descents, shifted by `e^{beta rho}`, is
/// invariant under the group.
fn symmetric_1(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let w0 = g.w0();
    let rho = g.datum().rho();
    let mut rng = env.rng();
    let mut p = Probe::new();
    for _ in 0..env.draws() {
        let f = env.random_poly(&mut rng);
        let h = env.random_poly(&mut rng);
        let mut total = zero(g);
        for w in g.elements() {
            let ww0 = g.product(w, w0);
            let term = &apply_elem(g, OperatorVariant::Pi, ww0, Block::X, &f)?
                * &apply_elem(g, OperatorVariant::Pi, w, Block::X, &h)?;
            total = &total + &term.scale(&sign(g.length(w)));
        }
        total = total.mul_block_monomial(Block::X, &rho);
        for i in 1..=g.rank() {
            let s_i = g.left_mul(i, g.identity());
            p.check(act(g, s_i, &total) == total, || {
                format!("the shifted alternating sum moves under s_{i}")
            });
        }
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The two pairings of signed descents against ascents agree and their
/// common value is invariant.
fn symmetric_2(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let w0 = g.w0();
    let mut rng = env.rng();
    let mut p = Probe::new();
    for _ in 0..env.draws() {
        let f = env.random_poly(&mut rng);
        let h = env.random_poly(&mut rng);
        let mut first = zero(g);
        let mut second = zero(g);
        for w in g.elements() {
            let ww0 = g.product(w, w0);
            first = &first
                + &(&apply_elem(g, OperatorVariant::PiUpper, ww0, Block::X, &f)?
                    * &apply_elem(g, OperatorVariant::Pi, w, Block::X, &h)?);
            second = &second
                + &(&apply_elem(g, OperatorVariant::PiUpper, w, Block::X, &f)?
                    * &apply_elem(g, OperatorVariant::Pi, ww0, Block::X, &h)?);
        }
        p.check(first == second, || "the two signed pairings differ".into());
        for i in 1..=g.rank() {
            let s_i = g.left_mul(i, g.identity());
            p.check(act(g, s_i, &first) == first, || {
                format!("the signed pairing moves under s_{i}")
            });
        }
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// Expanding a one-block element over the class basis through the signed
/// descents reproduces it at every point.
fn inversion_upper(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let mut rng = env.rng();
    let mut p = Probe::new();
    for u in env.single_cells(&mut rng) {
        let f = env.random_poly(&mut rng);
        let mut acc = zero(g);
        for w in g.elements() {
            let coeff = ctx.t(w, u);
            if coeff.is_zero() {
                continue;
            }
            let op = apply_elem(g, OperatorVariant::PiUpper, g.inverse(w), Block::X, &f)?;
            acc = &acc + &(&coeff * &act(g, u, &op));
        }
        p.check(acc == f, || {
            format!("the class expansion misses at the point {}", g.describe(u))
        });
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The class and dual bases are dual under the slot pairing: applying the
/// signed descent of `u^{-1}` to the second slot of a class family (or the
/// ascent of `u` to the first slot of a dual family) and restricting to the
/// diagonal gives the Kronecker delta.
fn dual_basis(env: &CheckEnv, slot: OpSlot) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let mut rng = env.rng();
    let cells = env.pair_cells(&mut rng);
    let id = g.identity();
    let results = cells
        .par_iter()
        .map(|&(u, v)| -> Result<(u64, Option<String>), IdentityError> {
            let (variant, word) = match slot {
                OpSlot::Second => (OperatorVariant::PiUpper, g.word(g.inverse(u))),
                OpSlot::First => (OperatorVariant::Pi, g.word(u)),
            };
            let family: Vec<CharElement> = g
                .elements()
                .map(|m| match slot {
                    OpSlot::Second => ctx.t(v, m),
                    OpSlot::First => ctx.g(v, m),
                })
                .collect();
            let out = slot_word(g, slot, variant, word, &family)?;
            let want = if u == v { one(g) } else { zero(g) };
            let bad = (out[id.index()] != want).then(|| {
                format!(
                    "the pairing of {} against the family of {} is not the Kronecker delta",
                    g.describe(u),
                    g.describe(v)
                )
            });
            Ok((1, bad))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(merge(results))
}

#[derive(Clone, Copy)]
enum StarSide {
    Classes,
    Duals,
}

/// The convolution over star factorizations reproduces the value at the
/// composite point, on the full two-point grid: classes carry `(-beta)` to
/// the length excess, duals carry `beta`.
fn star_cauchy(env: &CheckEnv, side: StarSide) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let value = |u: WeylElem, w: WeylElem| match side {
        StarSide::Classes => ctx.t(u, w),
        StarSide::Duals => ctx.g(u, w),
    };
    let excess_scalar = |u: WeylElem, v: WeylElem, w: WeylElem| {
        let excess = (g.length(u) + g.length(v) - g.length(w)) as u32;
        match side {
            StarSide::Classes => BetaScalar::neg_beta_pow(excess),
            StarSide::Duals => BetaScalar::beta_pow(excess as i32),
        }
    };
    let label = match side {
        StarSide::Classes => "class",
        StarSide::Duals => "dual",
    };
    match env.scope {
        Scope::Exhaustive => {
            let factorizations: Vec<Vec<(WeylElem, WeylElem)>> =
                g.elements().map(|w| g.star_factorizations(w)).collect();
            let points: Vec<(WeylElem, WeylElem)> = g
                .elements()
                .flat_map(|p| g.elements().map(move |q| (p, q)))
                .collect();
            let results = points
                .par_iter()
                .map(|&(p, q)| -> Result<(u64, Option<String>), IdentityError> {
                    let qp = g.product(q, p);
                    let acted: Vec<CharElement> =
                        g.elements().map(|v| act(g, q, &value(v, p))).collect();
                    let near: Vec<CharElement> = g.elements().map(|u| value(u, q)).collect();
                    let mut witnesses = 0;
                    let mut counterexample = None;
                    for w in g.elements() {
                        let mut rhs = zero(g);
                        for &(u, v) in &factorizations[w.index()] {
                            let term = &acted[v.index()] * &near[u.index()];
                            rhs = &rhs + &term.scale(&excess_scalar(u, v, w));
                        }
                        witnesses += 1;
                        if value(w, qp) != rhs && counterexample.is_none() {
                            counterexample = Some(format!(
                                "star convolution of the {label} {} over the points ({}, {}) \
                                 disagrees with the table at the point {}",
                                g.describe(w),
                                g.describe(p),
                                g.describe(q),
                                g.describe(qp)
                            ));
                        }
                    }
                    Ok((witnesses, counterexample))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(merge(results))
        }
        Scope::Sampled(_) => {
            let mut rng = env.rng();
            let mut p = Probe::new();
            for (w, a, b) in env.triple_cells(&mut rng) {
                let ba = g.product(b, a);
                let mut rhs = zero(g);
                for (u, v) in g.star_factorizations(w) {
                    let term = &act(g, b, &value(v, a)) * &value(u, b);
                    rhs = &rhs + &term.scale(&excess_scalar(u, v, w));
                }
                p.check(value(w, ba) == rhs, || {
                    format!(
                        "star convolution of the {label} {} over the points ({}, {}) disagrees \
                         with the table at the point {}",
                        g.describe(w),
                        g.describe(a),
                        g.describe(b),
                        g.describe(ba)
                    )
                });
                if p.failed() {
                    break;
                }
            }
            Ok(p.done())
        }
    }
}

/// The two shifted forms of the top class agree on the grid and both equal
/// the alternating convolution of classes against inverted classes.
fn reduced_cauchy(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let w0 = g.w0();
    let rho = g.datum().rho();
    let top_sign = sign(g.length(w0));
    let mut rng = env.rng();
    let cells = env.pair_cells(&mut rng);
    let results = cells
        .par_iter()
        .map(|&(p, q)| -> Result<(u64, Option<String>), IdentityError> {
            let qp = g.product(q, p);
            let first = act(g, q, &ctx.t(w0, p)).mul_block_monomial(Block::X, &g.act(qp, &rho));
            let second = act(g, qp, &ctx.t(w0, g.inverse(p)))
                .mul_block_monomial(Block::X, &g.act(q, &rho))
                .scale(&top_sign);
            let mut rhs = zero(g);
            for v in g.elements() {
                let u = g.product(w0, g.inverse(v));
                let term = &act(g, qp, &ctx.t(g.inverse(v), g.inverse(qp)))
                    * &act(g, q, &ctx.t(u, g.inverse(q)));
                rhs = &rhs + &term.mul_block_monomial(Block::X, &rho).scale(&sign(g.length(v)));
            }
            let mut witnesses = 0;
            let mut counterexample = None;
            let mut record = |pass: bool, what: &str| {
                witnesses += 1;
                if !pass && counterexample.is_none() {
                    counterexample = Some(format!(
                        "{what} at the grid point ({}, {})",
                        g.describe(p),
                        g.describe(q)
                    ));
                }
            };
            record(first == second, "the two shifted top-class forms differ");
            record(first == rhs, "the alternating convolution misses the top class");
            Ok((witnesses, counterexample))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(merge(results))
}

/// The signed Möbius expansion of a shifted class over the inverted classes
/// above it, together with the constancy criterion: the ascent of `u`
/// flattens the family of `w` exactly when `u` dominates `w`.
fn mobius_signed(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let rho = g.datum().rho();
    let mut rng = env.rng();
    let cells = env.pair_cells(&mut rng);
    let mut by_class: BTreeMap<WeylElem, Vec<WeylElem>> = BTreeMap::new();
    for &(w, u) in &cells {
        by_class.entry(w).or_default().push(u);
    }
    let groups: Vec<(WeylElem, Vec<WeylElem>)> = by_class.into_iter().collect();
    let results = groups
        .par_iter()
        .map(|(w, points)| -> Result<(u64, Option<String>), IdentityError> {
            let w = *w;
            let lw = g.length(w);
            let family: Vec<CharElement> = g.elements().map(|m| ctx.t(w, m)).collect();
            let mut witnesses = 0;
            let mut counterexample = None;
            for &u in points {
                let lhs = ctx.t(w, u).mul_block_monomial(Block::X, &g.act(u, &rho));
                let mut rhs = zero(g);
                for v in g.bruhat_upper(w) {
                    let scalar = BetaScalar::monomial(
                        (g.length(v) - lw) as i32,
                        if g.length(v) % 2 == 0 { 1 } else { -1 },
                    );
                    let term = act(g, u, &ctx.t(g.inverse(v), g.inverse(u)))
                        .mul_block_monomial(Block::X, &rho);
                    rhs = &rhs + &term.scale(&scalar);
                }
                witnesses += 1;
                if lhs != rhs && counterexample.is_none() {
                    counterexample = Some(format!(
                        "the signed Möbius expansion of the class {} fails at the point {}",
                        g.describe(w),
                        g.describe(u)
                    ));
                }
                let flattened =
                    slot_word(g, OpSlot::First, OperatorVariant::Pi, g.word(u), &family)?;
                let constant = flattened.iter().all(|c| c == &flattened[0]);
                witnesses += 1;
                if constant != g.bruhat_leq(w, u) && counterexample.is_none() {
                    counterexample = Some(format!(
                        "the ascent of {} applied to the family of {} is {}constant",
                        g.describe(u),
                        g.describe(w),
                        if constant { "" } else { "not " }
                    ));
                }
            }
            Ok((witnesses, counterexample))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(merge(results))
}

/// The group action is assembled from class values and signed descents: the
/// translate of any element equals the class-weighted sum of its descents.
fn localization_value(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let mut rng = env.rng();
    let mut p = Probe::new();
    for u in env.single_cells(&mut rng) {
        let f = env.random_poly(&mut rng);
        let point = g.inverse(u);
        let mut acc = zero(g);
        for w in g.elements() {
            let coeff = act(g, u, &ctx.t(w, point));
            if coeff.is_zero() {
                continue;
            }
            let op = apply_elem(g, OperatorVariant::PiUpper, g.inverse(w), Block::X, &f)?;
            acc = &acc + &(&coeff * &op);
        }
        p.check(acc == act(g, u, &f), || {
            format!("the assembled action of {} misses its translate", g.describe(u))
        });
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The subset-sum tables agree with the shared product tables cell by cell.
fn billey(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    match env.scope {
        Scope::Exhaustive => {
            let points: Vec<WeylElem> = g.elements().collect();
            let results = points
                .par_iter()
                .map(|&w| -> Result<(u64, Option<String>), IdentityError> {
                    let recomputed = billey_table(g, g.word(w))?;
                    let mut witnesses = 0;
                    let mut counterexample = None;
                    for u in g.elements() {
                        witnesses += 1;
                        if recomputed.value(u) != ctx.t(u, w) && counterexample.is_none() {
                            counterexample = Some(format!(
                                "the subset sum at the point {} disagrees with the product \
                                 table at the class {}",
                                g.describe(w),
                                g.describe(u)
                            ));
                        }
                    }
                    Ok((witnesses, counterexample))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(merge(results))
        }
        Scope::Sampled(_) => {
            let mut rng = env.rng();
            let mut p = Probe::new();
            let cells = env.pair_cells(&mut rng);
            for (u, w) in cells {
                let recomputed = billey_table(g, g.word(w))?;
                p.check(recomputed.value(u) == ctx.t(u, w), || {
                    format!(
                        "the subset sum at the point {} disagrees with the product table at \
                         the class {}",
                        g.describe(w),
                        g.describe(u)
                    )
                });
                if p.failed() {
                    break;
                }
            }
            Ok(p.done())
        }
    }
}

/// Both algorithms give the same table over every reduced word of every
/// element, so the localization depends only on the element.
fn billey_word_independence(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let mut rng = env.rng();
    let points = env.single_cells(&mut rng);
    let results = points
        .par_iter()
        .map(|&w| -> Result<(u64, Option<String>), IdentityError> {
            let mut witnesses = 0;
            let mut counterexample = None;
            for word in g.reduced_words(w) {
                for (table, algorithm) in [
                    (billey_table(g, &word)?, "subset-sum"),
                    (localization_table_hproduct(g, &word)?, "product"),
                ] {
                    witnesses += 1;
                    let differs = g.elements().find(|&u| table.value(u) != ctx.t(u, w));
                    if let Some(u) = differs {
                        if counterexample.is_none() {
                            counterexample = Some(format!(
                                "the {algorithm} table over the word {word:?} of {} differs \
                                 at the class {}",
                                g.describe(w),
                                g.describe(u)
                            ));
                        }
                    }
                }
            }
            Ok((witnesses, counterexample))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(merge(results))
}

/// A shifted class equals the sign-twisted translate of the inverted dual
/// class, cell by cell.
fn duality_gg(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let rho = g.datum().rho();
    let mut rng = env.rng();
    let mut p = Probe::new();
    for (w, u) in env.pair_cells(&mut rng) {
        let lhs = ctx.t(w, u).mul_block_monomial(Block::X, &g.act(u, &rho));
        let rhs = act(g, u, &ctx.g(g.inverse(w), g.inverse(u)))
            .mul_block_monomial(Block::X, &rho)
            .scale(&sign(g.length(w)));
        p.check(lhs == rhs, || {
            format!(
                "the class {} and the inverted dual disagree at the point {}",
                g.describe(w),
                g.describe(u)
            )
        });
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The top class factors through the duals: at every grid point it is the
/// convolution of dual values against complementary classes.
fn reduced_cauchy_dual(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let w0 = g.w0();
    let mut rng = env.rng();
    let cells = env.pair_cells(&mut rng);
    let results = cells
        .par_iter()
        .map(|&(p, q)| -> Result<(u64, Option<String>), IdentityError> {
            let qp = g.product(q, p);
            let lhs = act(g, q, &ctx.t(w0, p));
            let mut rhs = zero(g);
            for v in g.elements() {
                let u = g.product(w0, g.inverse(v));
                rhs = &rhs + &(&ctx.g(v, qp) * &act(g, q, &ctx.t(u, g.inverse(q))));
            }
            let bad = (lhs != rhs).then(|| {
                format!(
                    "the dual convolution misses the top class at the grid point ({}, {})",
                    g.describe(p),
                    g.describe(q)
                )
            });
            Ok((1, bad))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(merge(results))
}

/// Möbius inversion between the two bases, in both directions, cell by cell.
fn mobius(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let mut rng = env.rng();
    let mut p = Probe::new();
    for (w, u) in env.pair_cells(&mut rng) {
        let lw = g.length(w);
        let mut from_duals = zero(g);
        let mut from_classes = zero(g);
        for v in g.bruhat_upper(w) {
            let excess = (g.length(v) - lw) as u32;
            from_duals = &from_duals + &ctx.g(v, u).scale(&BetaScalar::beta_pow(excess as i32));
            from_classes =
                &from_classes + &ctx.t(v, u).scale(&BetaScalar::neg_beta_pow(excess));
        }
        p.check(ctx.t(w, u) == from_duals, || {
            format!(
                "summing the duals over v >= {} misses the class at the point {}",
                g.describe(w),
                g.describe(u)
            )
        });
        p.check(ctx.g(w, u) == from_classes, || {
            format!(
                "summing the classes over v >= {} misses the dual at the point {}",
                g.describe(w),
                g.describe(u)
            )
        });
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// Expanding a one-block element over the dual basis through the ascents
/// reproduces its translate at every point.
fn inversion_lower(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let mut rng = env.rng();
    let mut p = Probe::new();
    for v in env.single_cells(&mut rng) {
        let f = env.random_poly(&mut rng);
        let mut acc = zero(g);
        for w in g.elements() {
            let coeff = ctx.g(w, v);
            if coeff.is_zero() {
                continue;
            }
            acc = &acc + &(&coeff * &apply_elem(g, OperatorVariant::Pi, w, Block::X, &f)?);
        }
        p.check(acc == act(g, v, &f), || {
            format!("the dual expansion misses at the point {}", g.describe(v))
        });
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// Refining the coproduct on either tensor leg gives the same triple
/// constants, and the coproduct of a generator has its three fixed terms.
fn coproduct_coassoc(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let mut rng = env.rng();
    let mut p = Probe::new();
    let id = g.identity();
    for i in 1..=g.rank() {
        let s_i = g.left_mul(i, id);
        let expected = vec![
            (id, s_i, BetaScalar::one()),
            (s_i, id, BetaScalar::one()),
            (s_i, s_i, BetaScalar::monomial(1, -1)),
        ];
        p.check(coproduct(g, s_i) == expected, || {
            format!("the coproduct of s_{i} is not 1 tensor + tensor 1 - beta tensor")
        });
    }
    for w in env.single_cells(&mut rng) {
        let mut left: BTreeMap<(WeylElem, WeylElem, WeylElem), BetaScalar> = BTreeMap::new();
        let mut right: BTreeMap<(WeylElem, WeylElem, WeylElem), BetaScalar> = BTreeMap::new();
        for (u, v, c) in coproduct(g, w) {
            for (a, b, c2) in coproduct(g, u) {
                let prod = &c * &c2;
                left.entry((a, b, v)).and_modify(|acc| *acc += &prod).or_insert(prod);
            }
            for (b, z, c2) in coproduct(g, v) {
                let prod = &c * &c2;
                right.entry((u, b, z)).and_modify(|acc| *acc += &prod).or_insert(prod);
            }
        }
        left.retain(|_, c| !c.is_zero());
        right.retain(|_, c| !c.is_zero());
        p.check(left == right, || {
            format!("the coproduct refinements of {} differ", g.describe(w))
        });
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The composition law, far commutation and the three-factor exchange of
/// the `h` generating factors, with central parameters composed under the
/// formal group law.
fn yang_baxter(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let rank = g.rank();
    let mut rng = env.rng();
    let mut p = Probe::new();
    let h = |i: usize, c: &CharElement| {
        HeckeElement::h_factor(g.clone(), QuadraticSign::MinusBeta, i, c)
    };
    for _ in 0..env.draws() {
        let a = env.random_poly(&mut rng);
        let b = env.random_poly(&mut rng);
        let ab = a.fgl_oplus(&b)?;
        for i in 1..=rank {
            let lhs = h(i, &a).mul(&h(i, &b))?;
            p.check(lhs.try_sub(&h(i, &ab))?.is_zero(), || {
                format!("h_{i} factors do not compose under the formal group law")
            });
        }
        for i in 1..=rank {
            for j in (i + 2)..=rank {
                let lhs = h(i, &a).mul(&h(j, &b))?;
                let rhs = h(j, &b).mul(&h(i, &a))?;
                p.check(lhs.try_sub(&rhs)?.is_zero(), || {
                    format!("distant factors h_{i} and h_{j} do not commute")
                });
            }
        }
        for i in 1..rank {
            let lhs = h(i, &a).mul(&h(i + 1, &ab))?.mul(&h(i, &b))?;
            let rhs = h(i + 1, &b).mul(&h(i, &ab))?.mul(&h(i + 1, &a))?;
            p.check(lhs.try_sub(&rhs)?.is_zero(), || {
                format!("the exchange relation fails at the pair ({i}, {})", i + 1)
            });
        }
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The staircase product's coefficients are exactly the polynomials of the
/// recursion.
fn gf_factorization(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let n = env.n.expect("type A only");
    let gf = generating_function(n, GeneratingMode::StaircaseProduct);
    let mut rng = env.rng();
    let mut p = Probe::new();
    for w in env.single_cells(&mut rng) {
        let perm = one_line_from_word(n, g.word(w));
        p.check(gf.coefficient(w) == grothendieck_poly(n, &perm), || {
            format!(
                "the staircase coefficient at {} is not the recursion polynomial",
                g.describe(w)
            )
        });
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The generating function composes across a middle alphabet: with scalars
/// moved across three blocks, the copy in `(Y, Z)` times the copy in
/// `(X, Y)` reproduces the copy in `(X, Z)` coefficient by coefficient.
fn gf_composition(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let n = env.n.expect("type A only");
    let gf = generating_function(n, GeneratingMode::StaircaseProduct);
    let wide = vec![Block::X, Block::Y, Block::Z];
    let mut xy = HeckeElement::zero(g.clone(), QuadraticSign::MinusBeta, wide.clone());
    let mut yz = HeckeElement::zero(g.clone(), QuadraticSign::MinusBeta, wide.clone());
    let mut xz = HeckeElement::zero(g.clone(), QuadraticSign::MinusBeta, wide.clone());
    for (w, c) in gf.terms() {
        xy.add_term(w, &c.embed(wide.clone())?);
        let shifted = c
            .rename_block(Block::Y, Block::Z)?
            .rename_block(Block::X, Block::Y)?
            .embed(wide.clone())?;
        yz.add_term(w, &shifted);
        xz.add_term(w, &c.rename_block(Block::Y, Block::Z)?.embed(wide.clone())?);
    }
    let product = yz.mul(&xy)?;
    let mut rng = env.rng();
    let mut p = Probe::new();
    for w in env.single_cells(&mut rng) {
        p.check(product.coefficient(w) == xz.coefficient(w), || {
            format!(
                "the composed generating function differs at the coefficient of {}",
                g.describe(w)
            )
        });
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// Pipe dream weights sum to the polynomial of the permutation they trace.
fn pipe_dream_equiv(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let n = env.n.expect("type A only");
    let mut rng = env.rng();
    let mut p = Probe::new();
    for w in env.single_cells(&mut rng) {
        let perm = one_line_from_word(n, g.word(w));
        let mut total = CharElement::zero(n - 1, vec![Block::X, Block::Y]);
        for (_, weight) in enumerate_pipe_dreams(n, &perm) {
            total = &total + &weight;
        }
        p.check(total == grothendieck_poly(n, &perm), || {
            format!("the pipe dream sum for {} misses the polynomial", g.describe(w))
        });
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// The reduced pipe dreams of a permutation, in enumeration order.
fn reduced_bases(g: &WeylGroup, n: usize, w: WeylElem) -> Vec<PipeDream> {
    let perm = one_line_from_word(n, g.word(w));
    enumerate_pipe_dreams(n, &perm)
        .into_iter()
        .filter(|(d, _)| !d.has_marks() && d.crossing_count() == g.length(w))
        .map(|(d, _)| d)
        .collect()
}

/// Overlay sums over every reduced base reproduce the localization table of
/// the traced element at every class.
fn localization_pipe_dream_equiv(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let n = env.n.expect("type A only");
    match env.scope {
        Scope::Exhaustive => {
            let points: Vec<WeylElem> = g.elements().collect();
            let results = points
                .par_iter()
                .map(|&w| -> Result<(u64, Option<String>), IdentityError> {
                    let bases = reduced_bases(g, n, w);
                    if bases.is_empty() {
                        return Ok((
                            1,
                            Some(format!("no reduced pipe dream traces {}", g.describe(w))),
                        ));
                    }
                    let mut witnesses = 0;
                    let mut counterexample = None;
                    'outer: for base in &bases {
                        for u in g.elements() {
                            let perm_u = one_line_from_word(n, g.word(u));
                            let got = localization_pipe_dreams(base, &perm_u)?;
                            witnesses += 1;
                            if got != ctx.t(u, w) {
                                counterexample = Some(format!(
                                    "the overlay sum over a base for {} disagrees with the \
                                     table at the class {}",
                                    g.describe(w),
                                    g.describe(u)
                                ));
                                break 'outer;
                            }
                        }
                    }
                    Ok((witnesses, counterexample))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(merge(results))
        }
        Scope::Sampled(k) => {
            let mut rng = env.rng();
            let mut p = Probe::new();
            for _ in 0..k.max(1) {
                let w = random_elem(g, &mut rng);
                let u = random_elem(g, &mut rng);
                let bases = reduced_bases(g, n, w);
                if bases.is_empty() {
                    p.check(false, || {
                        format!("no reduced pipe dream traces {}", g.describe(w))
                    });
                    break;
                }
                let base = &bases[rng.gen_range(0..bases.len())];
                let perm_u = one_line_from_word(n, g.word(u));
                let got = localization_pipe_dreams(base, &perm_u)?;
                p.check(got == ctx.t(u, w), || {
                    format!(
                        "the overlay sum over a base for {} disagrees with the table at the \
                         class {}",
                        g.describe(w),
                        g.describe(u)
                    )
                });
                if p.failed() {
                    break;
                }
            }
            Ok(p.done())
        }
    }
}

/// Tables are supported below their point in Bruhat order, and the table at
/// the identity is the delta at the identity.
fn support_normalization(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let id = g.identity();
    let mut rng = env.rng();
    let mut p = Probe::new();
    let id_table = &ctx.tables[id.index()];
    p.check(
        id_table.support() == vec![id] && id_table.value(id).is_one(),
        || "the table at the identity is not the delta at the identity".into(),
    );
    for w in env.single_cells(&mut rng) {
        for u in ctx.tables[w.index()].support() {
            p.check(g.bruhat_leq(u, w), || {
                format!(
                    "the class {} survives at the point {} without preceding it",
                    g.describe(u),
                    g.describe(w)
                )
            });
        }
        if p.failed() {
            break;
        }
    }
    Ok(p.done())
}

/// Setting beta to zero in a table entry recovers the localized classical
/// double Schubert polynomial computed by an independent oracle.
fn classical_limit(env: &CheckEnv) -> Result<Outcome, IdentityError> {
    let g = env.group;
    let ctx = env.ctx();
    let n = env.n.expect("type A only");
    let rank = g.rank();
    let maps = fundamental_maps(n);
    let truncation = (n * (n - 1) / 2 + 1) as u32;
    let mut rng = env.rng();
    let cells = env.pair_cells(&mut rng);
    let results = cells
        .par_iter()
        .map(|&(w, u)| -> Result<(u64, Option<String>), IdentityError> {
            let oracle = classical_schubert_localization(n, g.word(w), g.word(u));
            let projected = qpoly_substitute_linear(&oracle.beta_coefficient(0), &maps, rank);
            let value = ctx.t(u, w);
            let pass = if value.is_zero() {
                projected.is_zero()
            } else {
                series_expand(&value, truncation)?.beta_coefficient(0) == projected
            };
            let bad = (!pass).then(|| {
                format!(
                    "the beta-zero limit at (class {}, point {}) is not the classical value",
                    g.describe(u),
                    g.describe(w)
                )
            });
            Ok((1, bad))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(merge(results))
}
