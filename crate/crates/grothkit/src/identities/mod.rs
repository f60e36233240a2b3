//! A named catalog of identity checks with seeds, scopes and counterexample
//! reporting.
//!
//! Every identity the rest of the crate relies on is registered here under a
//! fixed name. A [`CheckSpec`] picks a name, a Weyl group datum, a seed and a
//! scope; [`verify`] runs the check and returns a [`CheckReport`] with a
//! pass/fail status, the number of witnesses inspected, and a counterexample
//! naming the failing cell whenever the status is fail.
//!
//! Identities in several sets of variables are evaluated through
//! localization: an element `f(X, Y)` is replaced by its family of values
//! `f(wx, x)` over the group, and identities mixing three blocks are read on
//! the grid indexed by pairs of points. The restriction is injective, so a
//! grid check of an identity is equivalent to the identity itself.
//!
//! Two kinds of scope exist. Operator identities hold for all ring elements;
//! `exhaustive` runs their index loops in full against a few seeded random
//! elements, while `sampled(k)` draws `k` random instances. Table-level
//! identities quantify over finitely many cells; `exhaustive` visits every
//! cell, `sampled(k)` visits `k` random ones.

mod checks;
mod grid;

use crate::charring::{CharElement, CharError};
use crate::demazure::DemazureError;
use crate::nilhecke::HeckeError;
use crate::rootdata::{RootDataError, RootDatum, TypeLabel, WeylElem, WeylGroup};
use crate::schubert::{LocalizationTable, SchubertError};
use crate::typea::TypeAError;
use checks::CheckContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("unknown check name `{0}`")]
    UnknownName(String),
    #[error("invalid scope `{0}` (expected `exhaustive` or `sampled(k)`)")]
    InvalidScope(String),
    #[error("infeasible scope for {name}: {reason}")]
    InfeasibleScope { name: CheckName, reason: String },
    #[error(transparent)]
    Root(#[from] RootDataError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Demazure(#[from] DemazureError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Schubert(#[from] SchubertError),
    #[error(transparent)]
    TypeA(#[from] TypeAError),
}

/// The fixed catalog of check names. Names are case sensitive: `_G` and
/// `_Pi` refer to the class basis and the signed descending operator, their
/// lowercase twins to the dual basis and the ascending operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckName {
    QuadraticBraid,
    Annihilation,
    DConjugation,
    Leibniz,
    TopLeibniz,
    Symmetric1,
    Symmetric2,
    InversionUpper,
    DualBasisUpper,
    StarCauchyG,
    ReducedCauchy,
    MobiusSigned,
    LocalizationValue,
    Billey,
    BilleyWordIndependence,
    DualityGg,
    ReducedCauchyDual,
    Mobius,
    InversionLower,
    DualBasisLower,
    StarCauchyDual,
    CoproductCoassoc,
    YangBaxter,
    GfFactorization,
    GfComposition,
    PipeDreamEquiv,
    LocalizationPipeDreamEquiv,
    SupportNormalization,
    ClassicalLimit,
}

/// All checks, in catalog order.
pub const CATALOG: [CheckName; 29] = [
    CheckName::QuadraticBraid,
    CheckName::Annihilation,
    CheckName::DConjugation,
    CheckName::Leibniz,
    CheckName::TopLeibniz,
    CheckName::Symmetric1,
    CheckName::Symmetric2,
    CheckName::InversionUpper,
    CheckName::DualBasisUpper,
    CheckName::StarCauchyG,
    CheckName::ReducedCauchy,
    CheckName::MobiusSigned,
    CheckName::LocalizationValue,
    CheckName::Billey,
    CheckName::BilleyWordIndependence,
    CheckName::DualityGg,
    CheckName::ReducedCauchyDual,
    CheckName::Mobius,
    CheckName::InversionLower,
    CheckName::DualBasisLower,
    CheckName::StarCauchyDual,
    CheckName::CoproductCoassoc,
    CheckName::YangBaxter,
    CheckName::GfFactorization,
    CheckName::GfComposition,
    CheckName::PipeDreamEquiv,
    CheckName::LocalizationPipeDreamEquiv,
    CheckName::SupportNormalization,
    CheckName::ClassicalLimit,
];

/// Whether a check quantifies over random ring elements or over the finitely
/// many cells of precomputed tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Operator,
    TableLevel,
}

impl CheckName {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::QuadraticBraid => "quadratic_braid",
            CheckName::Annihilation => "annihilation",
            CheckName::DConjugation => "d_conjugation",
            CheckName::Leibniz => "leibniz",
            CheckName::TopLeibniz => "top_leibniz",
            CheckName::Symmetric1 => "symmetric_1",
            CheckName::Symmetric2 => "symmetric_2",
            CheckName::InversionUpper => "inversion_Pi",
            CheckName::DualBasisUpper => "dual_basis_Pi",
            CheckName::StarCauchyG => "star_cauchy_G",
            CheckName::ReducedCauchy => "reduced_cauchy",
            CheckName::MobiusSigned => "mobius_signed",
            CheckName::LocalizationValue => "localization_value",
            CheckName::Billey => "billey",
            CheckName::BilleyWordIndependence => "billey_word_independence",
            CheckName::DualityGg => "duality_Gg",
            CheckName::ReducedCauchyDual => "reduced_cauchy_g",
            CheckName::Mobius => "mobius",
            CheckName::InversionLower => "inversion_pi",
            CheckName::DualBasisLower => "dual_basis_pi",
            CheckName::StarCauchyDual => "star_cauchy_g",
            CheckName::CoproductCoassoc => "coproduct_coassoc",
            CheckName::YangBaxter => "yang_baxter",
            CheckName::GfFactorization => "gf_factorization",
            CheckName::GfComposition => "gf_composition",
            CheckName::PipeDreamEquiv => "pipe_dream_equiv",
            CheckName::LocalizationPipeDreamEquiv => "localization_pipe_dream_equiv",
            CheckName::SupportNormalization => "support_normalization",
            CheckName::ClassicalLimit => "classical_limit",
        }
    }

    /// Checks formulated for the stable type-A polynomials only.
    pub fn type_a_only(self) -> bool {
        matches!(
            self,
            CheckName::YangBaxter
                | CheckName::GfFactorization
                | CheckName::GfComposition
                | CheckName::PipeDreamEquiv
                | CheckName::LocalizationPipeDreamEquiv
                | CheckName::ClassicalLimit
        )
    }

    pub fn kind(self) -> CheckKind {
        match self {
            CheckName::QuadraticBraid
            | CheckName::Annihilation
            | CheckName::DConjugation
            | CheckName::Leibniz
            | CheckName::TopLeibniz
            | CheckName::Symmetric1
            | CheckName::Symmetric2
            | CheckName::InversionUpper
            | CheckName::InversionLower
            | CheckName::LocalizationValue
            | CheckName::YangBaxter => CheckKind::Operator,
            _ => CheckKind::TableLevel,
        }
    }

    /// Whether the check reads the shared localization tables.
    fn needs_tables(self) -> bool {
        matches!(
            self,
            CheckName::InversionUpper
                | CheckName::DualBasisUpper
                | CheckName::StarCauchyG
                | CheckName::ReducedCauchy
                | CheckName::MobiusSigned
                | CheckName::LocalizationValue
                | CheckName::Billey
                | CheckName::BilleyWordIndependence
                | CheckName::DualityGg
                | CheckName::ReducedCauchyDual
                | CheckName::Mobius
                | CheckName::InversionLower
                | CheckName::DualBasisLower
                | CheckName::StarCauchyDual
                | CheckName::SupportNormalization
                | CheckName::LocalizationPipeDreamEquiv
                | CheckName::ClassicalLimit
        )
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CATALOG
            .iter()
            .copied()
            .find(|name| name.as_str() == s)
            .ok_or_else(|| IdentityError::UnknownName(s.to_string()))
    }
}

impl Serialize for CheckName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CheckName {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The group a check runs over: any supported root datum, or a symmetric
/// group `S_n` named by its number of strands.
#[derive(Debug, Clone)]
pub enum CheckDatum {
    General(RootDatum),
    TypeA(usize),
}

impl CheckDatum {
    /// Build the Weyl group; the second component is the strand count when
    /// the datum is of type A.
    fn realize(&self) -> Result<(Arc<WeylGroup>, Option<usize>), IdentityError> {
        match self {
            CheckDatum::General(datum) => {
                let n = (datum.label() == TypeLabel::A).then(|| datum.rank() + 1);
                Ok((Arc::new(WeylGroup::new(datum.clone())?), n))
            }
            CheckDatum::TypeA(n) => {
                let datum = RootDatum::standard(TypeLabel::A, n.saturating_sub(1))?;
                Ok((Arc::new(WeylGroup::new(datum)?), Some(*n)))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Exhaustive,
    Sampled(usize),
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Exhaustive => f.write_str("exhaustive"),
            Scope::Sampled(k) => write!(f, "sampled({k})"),
        }
    }
}

impl FromStr for Scope {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "exhaustive" {
            return Ok(Scope::Exhaustive);
        }
        if let Some(k) = s
            .strip_prefix("sampled(")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|k| k.parse::<usize>().ok())
        {
            return Ok(Scope::Sampled(k));
        }
        Err(IdentityError::InvalidScope(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct CheckSpec {
    pub name: CheckName,
    pub datum: CheckDatum,
    pub seed: u64,
    pub scope: Scope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: CheckName,
    pub status: CheckStatus,
    pub witnesses_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl CheckReport {
    fn assemble(name: CheckName, seed: u64, outcome: checks::Outcome, started: Instant) -> Self {
        let status = if outcome.counterexample.is_some() {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        };
        CheckReport {
            name,
            status,
            witnesses_checked: outcome.witnesses,
            counterexample: outcome.counterexample,
            seed,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

// Feasibility ceilings for exhaustive scopes: cells of a (point, point)
// grid, cells of a (class, point, point) grid, and the number of points an
// operator check may sweep with tables attached.
const MAX_EXHAUSTIVE_PAIR_GRID: usize = 20_000;
const MAX_EXHAUSTIVE_TRIPLE_GRID: usize = 50_000;
const MAX_EXHAUSTIVE_POINTS: usize = 150;

fn feasibility(
    name: CheckName,
    size: usize,
    n: Option<usize>,
    scope: Scope,
) -> Result<(), IdentityError> {
    let refuse = |reason: String| Err(IdentityError::InfeasibleScope { name, reason });
    if name.type_a_only() {
        let Some(n) = n else {
            return refuse("this check is only formulated for type A data".into());
        };
        if matches!(name, CheckName::GfFactorization | CheckName::GfComposition)
            && n > crate::typea::MAX_GENERATING_SIZE
        {
            return refuse(format!(
                "the generating function is capped at n = {}",
                crate::typea::MAX_GENERATING_SIZE
            ));
        }
        let heavy = matches!(
            name,
            CheckName::PipeDreamEquiv
                | CheckName::LocalizationPipeDreamEquiv
                | CheckName::ClassicalLimit
        );
        if heavy && n > 4 && scope == Scope::Exhaustive {
            return refuse(format!("exhaustive scope is capped at n = 4, got n = {n}"));
        }
    }
    if scope == Scope::Exhaustive {
        let cells = match name {
            CheckName::StarCauchyG | CheckName::StarCauchyDual => size.pow(3),
            CheckName::ReducedCauchy
            | CheckName::ReducedCauchyDual
            | CheckName::DualBasisUpper
            | CheckName::DualBasisLower
            | CheckName::MobiusSigned
            | CheckName::Mobius
            | CheckName::DualityGg => size.pow(2),
            _ => 0,
        };
        let ceiling = match name {
            CheckName::StarCauchyG | CheckName::StarCauchyDual => MAX_EXHAUSTIVE_TRIPLE_GRID,
            _ => MAX_EXHAUSTIVE_PAIR_GRID,
        };
        if cells > ceiling {
            return refuse(format!(
                "{cells} grid cells exceed the exhaustive ceiling of {ceiling}"
            ));
        }
        let sweeps_points = matches!(
            name,
            CheckName::InversionUpper | CheckName::InversionLower | CheckName::LocalizationValue
        );
        if sweeps_points && size > MAX_EXHAUSTIVE_POINTS {
            return refuse(format!(
                "{size} points exceed the exhaustive ceiling of {MAX_EXHAUSTIVE_POINTS}"
            ));
        }
    }
    Ok(())
}

/// Run one check.
pub fn verify(spec: &CheckSpec) -> Result<CheckReport, IdentityError> {
    let started = Instant::now();
    let (group, n) = spec.datum.realize()?;
    feasibility(spec.name, group.size(), n, spec.scope)?;
    let ctx = if spec.name.needs_tables() {
        Some(CheckContext::new(group.clone())?)
    } else {
        None
    };
    let env = checks::CheckEnv {
        group: &group,
        ctx: ctx.as_ref(),
        n,
        seed: spec.seed,
        scope: spec.scope,
    };
    let outcome = checks::run(spec.name, &env)?;
    Ok(CheckReport::assemble(spec.name, spec.seed, outcome, started))
}

/// Run every applicable catalog entry over one datum, sharing the read-only
/// localization tables. Checks run concurrently; reports come back in
/// catalog order. Entries restricted to type A are skipped on other data.
pub fn run_catalog(
    datum: &CheckDatum,
    seed: u64,
    scope: Scope,
) -> Result<Vec<CheckReport>, IdentityError> {
    let (group, n) = datum.realize()?;
    let names: Vec<CheckName> = CATALOG
        .iter()
        .copied()
        .filter(|name| n.is_some() || !name.type_a_only())
        .collect();
    for &name in &names {
        feasibility(name, group.size(), n, scope)?;
    }
    let ctx = if names.iter().any(|name| name.needs_tables()) {
        Some(CheckContext::new(group.clone())?)
    } else {
        None
    };
    names
        .par_iter()
        .map(|&name| {
            let started = Instant::now();
            let env = checks::CheckEnv {
                group: &group,
                ctx: ctx.as_ref(),
                n,
                seed,
                scope,
            };
            let outcome = checks::run(name, &env)?;
            Ok(CheckReport::assemble(name, seed, outcome, started))
        })
        .collect()
}

/// What [`fault_injection_selftest`] observed.
#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    /// The point whose table was corrupted, as a word.
    pub corrupted_table: String,
    /// The class whose value was changed, as a word.
    pub corrupted_entry: String,
    /// Failing reports among the table-consuming checks that were rerun.
    pub failures: Vec<CheckReport>,
}

/// Corrupt one coefficient of one precomputed table entry on the rank-2
/// type-A group and rerun the checks that cross-validate the tables. A sound
/// harness must catch the corruption: at least one rerun check fails and its
/// counterexample names the corrupted cell.
pub fn fault_injection_selftest(seed: u64) -> Result<SelftestReport, IdentityError> {
    let datum = CheckDatum::General(RootDatum::standard(TypeLabel::A, 2)?);
    let (group, n) = datum.realize()?;
    let mut ctx = CheckContext::new(group.clone())?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<(WeylElem, WeylElem)> = group
        .elements()
        .filter(|&w| group.length(w) > 0)
        .flat_map(|w| {
            ctx.tables[w.index()]
                .support()
                .into_iter()
                .map(move |u| (w, u))
        })
        .collect();
    let (point, class) = candidates[rng.gen_range(0..candidates.len())];
    corrupt_entry(&group, &mut ctx, point, class);

    let reruns = [
        CheckName::Billey,
        CheckName::LocalizationValue,
        CheckName::StarCauchyG,
        CheckName::Mobius,
    ];
    let mut failures = Vec::new();
    for name in reruns {
        let started = Instant::now();
        let env = checks::CheckEnv {
            group: &group,
            ctx: Some(&ctx),
            n,
            seed,
            scope: Scope::Exhaustive,
        };
        let outcome = checks::run(name, &env)?;
        let report = CheckReport::assemble(name, seed, outcome, started);
        if !report.passed() {
            failures.push(report);
        }
    }
    Ok(SelftestReport {
        corrupted_table: group.describe(point),
        corrupted_entry: group.describe(class),
        failures,
    })
}

/// Replace the table at `point` by a copy whose value at `class` is bumped
/// by one, going through the table's own serialization so no other state is
/// touched.
fn corrupt_entry(
    group: &Arc<WeylGroup>,
    ctx: &mut CheckContext,
    point: WeylElem,
    class: WeylElem,
) {
    let table = &ctx.tables[point.index()];
    let mut doc: serde_json::Value =
        serde_json::from_str(&table.to_json()).expect("tables serialize to valid JSON");
    let key = group
        .word(class)
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let bumped = &table.value(class) + &CharElement::one(group.rank(), vec![crate::Block::X]);
    doc["entries"][key.as_str()] =
        serde_json::to_value(&bumped).expect("elements serialize to valid JSON");
    ctx.tables[point.index()] = LocalizationTable::from_json(group, &doc.to_string())
        .expect("the corrupted table still parses");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_names_are_canonical() {
        assert_eq!(CATALOG.len(), 29);
        for name in CATALOG {
            assert_eq!(name.as_str().parse::<CheckName>().unwrap(), name);
            let json = serde_json::to_string(&name).unwrap();
            assert_eq!(json, format!("\"{}\"", name.as_str()));
            assert_eq!(serde_json::from_str::<CheckName>(&json).unwrap(), name);
        }
        let mut strings: Vec<&str> = CATALOG.iter().map(|n| n.as_str()).collect();
        strings.sort_unstable();
        strings.dedup();
        assert_eq!(strings.len(), 29, "names must be distinct");
        assert!("no_such_check".parse::<CheckName>().is_err());

        assert_eq!("exhaustive".parse::<Scope>().unwrap(), Scope::Exhaustive);
        assert_eq!("sampled(20)".parse::<Scope>().unwrap(), Scope::Sampled(20));
        assert!("sampled(-2)".parse::<Scope>().is_err());
        assert_eq!(Scope::Sampled(7).to_string(), "sampled(7)");
    }

    #[test]
    fn full_catalog_passes_on_s3() {
        let reports = run_catalog(&CheckDatum::TypeA(3), 7, Scope::Exhaustive).unwrap();
        assert_eq!(reports.len(), CATALOG.len());
        for (report, name) in reports.iter().zip(CATALOG) {
            assert_eq!(report.name, name, "catalog order is preserved");
            assert!(
                report.passed(),
                "{} failed: {:?}",
                report.name,
                report.counterexample
            );
            assert!(report.witnesses_checked > 0);
            assert_eq!(report.seed, 7);
        }
    }

    #[test]
    fn catalog_skips_type_a_entries_elsewhere() {
        let datum = CheckDatum::General(RootDatum::standard(TypeLabel::B, 2).unwrap());
        let reports = run_catalog(&datum, 5, Scope::Sampled(2)).unwrap();
        assert_eq!(
            reports.len(),
            CATALOG.iter().filter(|n| !n.type_a_only()).count()
        );
        assert!(reports.iter().all(CheckReport::passed));

        let spec = CheckSpec {
            name: CheckName::GfFactorization,
            datum,
            seed: 5,
            scope: Scope::Sampled(2),
        };
        assert!(matches!(
            verify(&spec),
            Err(IdentityError::InfeasibleScope { .. })
        ));
    }

    #[test]
    fn sampled_reports_record_their_seed() {
        let spec = CheckSpec {
            name: CheckName::Leibniz,
            datum: CheckDatum::General(RootDatum::standard(TypeLabel::G, 2).unwrap()),
            seed: 91,
            scope: Scope::Sampled(4),
        };
        let report = verify(&spec).unwrap();
        assert!(report.passed());
        assert_eq!(report.seed, 91);
        assert!(report.witnesses_checked >= 4);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"name\":\"leibniz\""));
        assert!(json.contains("\"status\":\"pass\""));
        assert!(!json.contains("counterexample"));
    }

    #[test]
    fn fault_injection_is_caught() {
        for seed in [3, 17] {
            let report = fault_injection_selftest(seed).unwrap();
            assert!(
                !report.failures.is_empty(),
                "corruption of ({}, {}) went unnoticed",
                report.corrupted_entry,
                report.corrupted_table
            );
            let billey = report
                .failures
                .iter()
                .find(|r| r.name == CheckName::Billey)
                .expect("the billey cross-check must catch a corrupted table");
            let cell = billey.counterexample.as_deref().unwrap();
            assert!(cell.contains(&report.corrupted_table));
            assert!(cell.contains(&report.corrupted_entry));
        }
    }
}
