//! End-to-end scenarios pinning the worked values and running the full
//! identity catalog at fixed scales. Every comparison is exact, and each
//! scenario carries a wall-clock budget. Scenarios run one at a time so the
//! budgets are not charged for each other's work.

use grothkit::identities::{
    fault_injection_selftest, run_catalog, verify, CheckDatum, CheckKind, CheckName, CheckSpec,
    Scope, CATALOG,
};
use grothkit::schubert::{
    billey_sum, billey_table, coproduct, dual_localization_table, localization_table_hproduct,
};
use grothkit::typea::{
    enumerate_pipe_dreams, generating_function, grothendieck_poly, localization_pipe_dreams,
    one_line_from_word, sym_group, t_weight, GeneratingMode, PipeDream, Tile,
};
use grothkit::{BetaScalar, Block, CharElement, RootDatum, TypeLabel, WeylElem, WeylGroup};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, MutexGuard, OnceLock};
use std::time::{Duration, Instant};

fn lock() -> MutexGuard<'static, ()> {
    static LOCK: OnceLock<Mutex<()>> = OnceLock::new();
    LOCK.get_or_init(|| Mutex::new(()))
        .lock()
        .unwrap_or_else(|e| e.into_inner())
}

fn finish(started: Instant, budget_secs: u64, label: &str) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= Duration::from_secs(budget_secs),
        "{label} exceeded its {budget_secs}s budget: {elapsed:?}"
    );
    println!("{label}: pass in {elapsed:?}");
}

fn group(label: TypeLabel, rank: usize) -> Arc<WeylGroup> {
    Arc::new(WeylGroup::new(RootDatum::standard(label, rank).unwrap()).unwrap())
}

/// `X_i / X_j` as a one-block exponential monomial over `S_n` coordinates.
fn x_ratio(n: usize, i: usize, j: usize) -> CharElement {
    let mut weight = t_weight(n, i);
    for (a, b) in weight.iter_mut().zip(t_weight(n, j)) {
        *a -= b;
    }
    CharElement::one(n - 1, vec![Block::X]).mul_block_monomial(Block::X, &weight)
}

/// `beta^{-1} (1 - X_i / X_j)`.
fn bracket(n: usize, i: usize, j: usize) -> CharElement {
    (&CharElement::one(n - 1, vec![Block::X]) - &x_ratio(n, i, j))
        .scale(&BetaScalar::beta_pow(-1))
}

#[test]
fn worked_localization_values_for_single_and_double_words() {
    let _guard = lock();
    let started = Instant::now();
    let g = group(TypeLabel::A, 3);
    let s2 = g.elem_from_word(&[2]).unwrap();

    let pair_value = {
        let a = bracket(4, 2, 3);
        let b = bracket(4, 1, 2);
        &(&a + &b) - &(&a * &b).scale(&BetaScalar::beta())
    };
    let goldens: [(&[usize], CharElement); 4] = [
        (&[2, 1], bracket(4, 2, 3)),
        (&[1, 2], bracket(4, 1, 3)),
        (&[2, 1, 2], pair_value),
        (&[1, 2, 1], bracket(4, 1, 3)),
    ];
    for (word, golden) in &goldens {
        let table = localization_table_hproduct(&g, word).unwrap();
        assert_eq!(table.value(s2), *golden, "table value over {word:?}");
        assert_eq!(
            billey_sum(&g, word, s2).unwrap(),
            *golden,
            "subset sum over {word:?}"
        );
    }
    assert_eq!(
        goldens[2].1, goldens[3].1,
        "the braid-related words name one ring element"
    );
    finish(started, 1, "worked localization values");
}

#[test]
fn three_term_polynomial_agrees_across_all_three_routes() {
    let _guard = lock();
    let started = Instant::now();
    use Tile::{Bump, Cross, MarkedCross};

    let one = CharElement::one(2, vec![Block::X, Block::Y]);
    // `Y_top / X_bottom` over the two-block alphabet.
    let ratio = |top: usize, bottom: usize| {
        let y = t_weight(3, top);
        let x: Vec<i32> = t_weight(3, bottom).iter().map(|c| -c).collect();
        one.mul_block_monomial(Block::X, &x)
            .mul_block_monomial(Block::Y, &y)
    };
    let a = &one - &ratio(1, 2);
    let b = &one - &ratio(2, 1);
    let inv = BetaScalar::beta_pow(-1);
    let golden = &(&a.scale(&inv) + &b.scale(&inv)) - &(&a * &b).scale(&inv);

    let perm = [1, 3, 2];
    assert_eq!(grothendieck_poly(3, &perm), golden, "operator recursion");

    let dreams = enumerate_pipe_dreams(3, &perm);
    assert_eq!(dreams.len(), 3, "exactly three contributing tilings");
    let mut total = CharElement::zero(2, vec![Block::X, Block::Y]);
    for (_, weight) in &dreams {
        total = &total + weight;
    }
    assert_eq!(total, golden, "tile weight sum");
    for expected in [
        vec![vec![Bump, Bump], vec![Cross]],
        vec![vec![Bump, Cross], vec![Bump]],
        vec![vec![Bump, Cross], vec![MarkedCross]],
    ] {
        assert!(
            dreams.iter().any(|(d, _)| d.tiles() == expected.as_slice()),
            "missing tiling {expected:?}"
        );
    }
    assert!(
        PipeDream::new(3, vec![vec![Bump, MarkedCross], vec![Cross]]).is_err(),
        "the fourth candidate tiling is rejected"
    );

    let g3 = sym_group(3);
    let f = generating_function(3, GeneratingMode::StaircaseProduct);
    assert_eq!(
        f.coefficient(g3.elem_from_word(&[2]).unwrap()),
        golden,
        "generating coefficient"
    );
    finish(started, 1, "three-term polynomial routes");
}

#[test]
fn overlay_localization_matches_over_both_bases() {
    let _guard = lock();
    let started = Instant::now();
    use Tile::{Bump, Cross};
    let g = group(TypeLabel::A, 3);
    let u = g.elem_from_word(&[3]).unwrap();
    let target = one_line_from_word(4, &[3]);

    let first = PipeDream::new(
        4,
        vec![vec![Bump, Bump, Cross], vec![Cross, Bump], vec![Cross]],
    )
    .unwrap();
    let second = PipeDream::new(
        4,
        vec![vec![Bump, Cross, Bump], vec![Cross, Cross], vec![Bump]],
    )
    .unwrap();
    let traced = one_line_from_word(4, &[2, 3, 2]);
    for base in [&first, &second] {
        assert_eq!(base.permutation(), traced.as_slice());
        assert!(!base.has_marks());
    }

    let a = bracket(4, 3, 4);
    let b = bracket(4, 2, 3);
    let golden_first = &(&a + &b) - &(&a * &b).scale(&BetaScalar::beta());
    let golden_second = bracket(4, 2, 4);

    let value_first = localization_pipe_dreams(&first, &target).unwrap();
    let value_second = localization_pipe_dreams(&second, &target).unwrap();
    assert_eq!(value_first, golden_first, "first base");
    assert_eq!(value_second, golden_second, "second base");
    assert_eq!(
        value_first, value_second,
        "the two bases agree as ring elements"
    );

    for (base, value) in [(&first, &value_first), (&second, &value_second)] {
        assert_eq!(
            billey_sum(&g, &base.word(), u).unwrap(),
            *value,
            "subset sum over the base word {:?}",
            base.word()
        );
    }
    finish(started, 5, "overlay localization over both bases");
}

#[test]
fn product_and_subset_sum_tables_agree_on_all_reduced_words() {
    let _guard = lock();
    let started = Instant::now();
    let data = [
        (TypeLabel::A, 2, true),
        (TypeLabel::A, 3, true),
        (TypeLabel::B, 2, true),
        (TypeLabel::G, 2, false),
    ];
    for (label, rank, all_words) in data {
        let g = group(label, rank);
        for w in g.elements() {
            let reference = localization_table_hproduct(&g, g.word(w)).unwrap();
            let yardstick = billey_table(&g, g.word(w)).unwrap();
            for u in g.elements() {
                assert_eq!(
                    reference.value(u),
                    yardstick.value(u),
                    "{label:?}{rank} w={w:?} u={u:?}"
                );
            }
            if !all_words {
                continue;
            }
            for word in g.reduced_words(w) {
                for table in [
                    localization_table_hproduct(&g, &word).unwrap(),
                    billey_table(&g, &word).unwrap(),
                ] {
                    for u in g.elements() {
                        assert_eq!(
                            table.value(u),
                            reference.value(u),
                            "{label:?}{rank} word={word:?} u={u:?}"
                        );
                    }
                }
            }
        }
    }
    finish(started, 300, "two localization algorithms on every reduced word");
}

#[test]
fn identity_catalog_passes_at_scale() {
    let _guard = lock();
    let started = Instant::now();
    let seed = 7;

    for label in [TypeLabel::A, TypeLabel::B] {
        let datum = CheckDatum::General(RootDatum::standard(label, 2).unwrap());
        for report in run_catalog(&datum, seed, Scope::Exhaustive).unwrap() {
            assert!(
                report.passed(),
                "{label:?}2 {}: {:?}",
                report.name,
                report.counterexample
            );
        }
    }

    let g2 = CheckDatum::General(RootDatum::standard(TypeLabel::G, 2).unwrap());
    for report in run_catalog(&g2, seed, Scope::Sampled(20)).unwrap() {
        assert!(
            report.passed(),
            "G2 {}: {:?}",
            report.name,
            report.counterexample
        );
    }

    let a3 = CheckDatum::General(RootDatum::standard(TypeLabel::A, 3).unwrap());
    for name in CATALOG {
        let scope = match name.kind() {
            CheckKind::TableLevel => Scope::Exhaustive,
            CheckKind::Operator => Scope::Sampled(20),
        };
        let report = verify(&CheckSpec {
            name,
            datum: a3.clone(),
            seed,
            scope,
        })
        .unwrap();
        assert!(
            report.passed(),
            "A3 {}: {:?}",
            report.name,
            report.counterexample
        );
    }
    finish(started, 600, "identity catalog at scale");
}

#[test]
fn beta_zero_limit_recovers_the_classical_localization() {
    let _guard = lock();
    let started = Instant::now();
    let report = verify(&CheckSpec {
        name: CheckName::ClassicalLimit,
        datum: CheckDatum::TypeA(3),
        seed: 7,
        scope: Scope::Exhaustive,
    })
    .unwrap();
    assert!(report.passed(), "{:?}", report.counterexample);
    assert_eq!(report.witnesses_checked, 36, "every table cell is compared");
    finish(started, 30, "classical limit of every table entry");
}

#[test]
fn identity_table_is_delta_and_support_respects_bruhat_order() {
    let _guard = lock();
    let started = Instant::now();
    let g = group(TypeLabel::A, 2);
    let id = g.identity();

    let id_table = localization_table_hproduct(&g, &[]).unwrap();
    assert_eq!(id_table.num_entries(), 1);
    assert!(id_table.value(id).is_one());

    let rho = g.datum().rho();
    for w in g.elements() {
        let table = localization_table_hproduct(&g, g.word(w)).unwrap();
        for u in table.support() {
            assert!(g.bruhat_leq(u, w), "support {u:?} above {w:?}");
        }

        // The dual class of the identity is a pure exponential: read with
        // the point in the second slot, its value is e^{beta(w rho - rho)}.
        let dual = dual_localization_table(&g, g.word(g.inverse(w))).unwrap();
        let oriented = dual.value(id).weyl_act(&g, Block::X, w).unwrap();
        let mut diff = g.act(w, &rho);
        for (d, r) in diff.iter_mut().zip(&rho) {
            *d -= r;
        }
        let expected =
            CharElement::one(g.rank(), vec![Block::X]).mul_block_monomial(Block::X, &diff);
        assert_eq!(oriented, expected, "dual identity value at {w:?}");
    }
    finish(started, 10, "normalization and support");
}

#[test]
fn coproduct_generators_and_coassociativity() {
    let _guard = lock();
    let started = Instant::now();
    for (label, rank) in [(TypeLabel::A, 2), (TypeLabel::B, 2)] {
        let g = group(label, rank);
        let id = g.identity();
        for i in 1..=rank {
            let s = g.elem_from_word(&[i]).unwrap();
            assert_eq!(
                coproduct(&g, s),
                vec![
                    (id, s, BetaScalar::one()),
                    (s, id, BetaScalar::one()),
                    (s, s, BetaScalar::monomial(1, -1)),
                ],
                "{label:?}{rank} generator {i}"
            );
        }
        for w in g.elements() {
            let mut left: BTreeMap<(WeylElem, WeylElem, WeylElem), BetaScalar> = BTreeMap::new();
            let mut right: BTreeMap<(WeylElem, WeylElem, WeylElem), BetaScalar> = BTreeMap::new();
            for (u, v, c) in coproduct(&g, w) {
                for (x, y, c2) in coproduct(&g, u) {
                    let prod = &c * &c2;
                    left.entry((x, y, v))
                        .and_modify(|acc| *acc += &prod)
                        .or_insert(prod);
                }
                for (y, z, c2) in coproduct(&g, v) {
                    let prod = &c * &c2;
                    right
                        .entry((u, y, z))
                        .and_modify(|acc| *acc += &prod)
                        .or_insert(prod);
                }
            }
            left.retain(|_, c| !c.is_zero());
            right.retain(|_, c| !c.is_zero());
            assert_eq!(left, right, "{label:?}{rank} refinements at {w:?}");
        }
    }
    finish(started, 30, "coproduct golden and coassociativity");
}

#[test]
fn corrupted_table_entry_is_caught_and_named() {
    let _guard = lock();
    let started = Instant::now();
    let report = fault_injection_selftest(23).unwrap();
    assert!(!report.failures.is_empty(), "the corruption went unnoticed");
    let named = report.failures.iter().any(|f| {
        f.counterexample.as_deref().is_some_and(|c| {
            c.contains(&report.corrupted_table) && c.contains(&report.corrupted_entry)
        })
    });
    assert!(
        named,
        "no counterexample names the corrupted cell: {report:?}"
    );
    finish(started, 60, "fault injection selftest");
}
