//! Command-line surface over the library: compute, localize, pipedreams,
//! coproduct, verify, and cache management.
//!
//! Machine output is one JSON document on stdout; diagnostics go to stderr.
//! Exit codes: 0 on success (for `verify`, only when every requested check
//! passes), 1 for computation errors with a JSON error object on stdout,
//! 2 for usage errors. The only environment variables read are
//! `GROTHKIT_CACHE` (table cache root, empty disables) and
//! `GROTHKIT_THREADS` (worker thread count).

mod output;

use clap::{Args, Parser, Subcommand};
use grothkit::charring::latex::{join_summands, summand};
use grothkit::identities::{
    run_catalog, verify, CheckDatum, CheckName, CheckReport, CheckSpec, Scope,
};
use grothkit::schubert::{
    billey_sum, cache_dir, cached_localization_table, clear_cache, coproduct, list_cached_tables,
    localization_table_hproduct,
};
use grothkit::typea::{
    dual_poly, enumerate_pipe_dreams, grothendieck_poly, one_line_from_word, sym_group,
    word_from_one_line,
};
use grothkit::{Block, CharElement, RootDatum, TypeLabel, WeylElem, WeylGroup};
use output::{element_output, scalar_json, BetaMode, VarStyle};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "grothkit",
    version,
    about = "Exact beta-deformed Schubert calculus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a stable double Grothendieck polynomial or its dual
    Compute(ComputeArgs),
    /// Evaluate a class at a Weyl group point by both table algorithms
    Localize(LocalizeArgs),
    /// Enumerate the pipe dreams of a permutation with their weights
    Pipedreams(PipedreamsArgs),
    /// Expand the coproduct of a class into structure constants
    Coproduct(CoproductArgs),
    /// Run named identity checks and report pass or fail with witnesses
    Verify(VerifyArgs),
    /// Inspect or clear the on-disk localization table cache
    Cache(CacheArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Number of strands n of the symmetric group S_n
    #[arg(long)]
    n: usize,
    /// Target permutation in one-line notation, e.g. 1,3,2
    #[arg(long)]
    perm: Option<String>,
    /// Target as a comma-separated word in simple reflections, e.g. 2,1,2
    #[arg(long)]
    word: Option<String>,
    /// Compute the dual class instead of the Grothendieck polynomial
    #[arg(long)]
    dual: bool,
    /// Beta handling: "symbolic" or "value(q)" with an integer q
    #[arg(long, default_value = "symbolic")]
    beta: String,
}

#[derive(Args)]
struct LocalizeArgs {
    /// Root system type: A, B, C, D, or G
    #[arg(long = "type")]
    type_label: String,
    /// Rank of the root system
    #[arg(long)]
    rank: usize,
    /// Point w as a comma-separated word in simple reflections
    #[arg(long)]
    word: Option<String>,
    /// Point w in one-line notation (type A only)
    #[arg(long)]
    perm: Option<String>,
    /// Class u as a comma-separated word in simple reflections
    #[arg(long)]
    u: Option<String>,
    /// Class u in one-line notation (type A only)
    #[arg(long)]
    u_perm: Option<String>,
    /// Beta handling: "symbolic" or "value(q)" with an integer q
    #[arg(long, default_value = "symbolic")]
    beta: String,
    /// Skip the on-disk table cache for this invocation
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct PipedreamsArgs {
    /// Number of strands n of the symmetric group S_n
    #[arg(long)]
    n: usize,
    /// Target permutation in one-line notation
    #[arg(long)]
    perm: Option<String>,
    /// Target as a comma-separated word in simple reflections
    #[arg(long)]
    word: Option<String>,
    /// Beta handling: "symbolic" or "value(q)" with an integer q
    #[arg(long, default_value = "symbolic")]
    beta: String,
}

#[derive(Args)]
struct CoproductArgs {
    /// Root system type: A, B, C, D, or G
    #[arg(long = "type")]
    type_label: String,
    /// Rank of the root system
    #[arg(long)]
    rank: usize,
    /// Class as a comma-separated word in simple reflections
    #[arg(long)]
    word: Option<String>,
    /// Class in one-line notation (type A only)
    #[arg(long)]
    perm: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Catalog entry to run, or "all" for the whole catalog
    #[arg(long)]
    name: String,
    /// Root system type: A, B, C, D, or G
    #[arg(long = "type")]
    type_label: String,
    /// Rank of the root system
    #[arg(long)]
    rank: usize,
    /// Check scope: "exhaustive" or "sampled(k)"
    #[arg(long, default_value = "exhaustive")]
    scope: String,
    /// Randomization seed recorded in the reports
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand)]
enum CacheAction {
    /// List the cached table files for this library version
    List,
    /// Delete the cached table files for this library version
    Clear,
}

/// An argument problem (exit 2) or a failure of the requested computation
/// (exit 1 with a JSON error object).
#[derive(Debug)]
enum Failure {
    Usage(String),
    Computation(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn computation(err: impl ToString) -> Failure {
    Failure::Computation(err.to_string())
}

fn main() {
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        process::exit(2);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            process::exit(code);
        }
    };
    match dispatch(cli.command) {
        Ok((document, code)) => {
            print_document(&document);
            process::exit(code);
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            process::exit(2);
        }
        Err(Failure::Computation(msg)) => {
            print_document(&json!({ "error": { "message": msg } }));
            process::exit(1);
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("GROTHKIT_THREADS") else {
        return Ok(());
    };
    if raw.is_empty() {
        return Ok(());
    }
    let threads = raw
        .parse::<usize>()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("GROTHKIT_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn print_document(document: &Value) {
    let text = serde_json::to_string_pretty(document).expect("a value tree serializes");
    println!("{text}");
}

fn dispatch(command: Command) -> Result<(Value, i32), Failure> {
    match command {
        Command::Compute(a) => run_compute(a).map(|v| (v, 0)),
        Command::Localize(a) => run_localize(a).map(|v| (v, 0)),
        Command::Pipedreams(a) => run_pipedreams(a).map(|v| (v, 0)),
        Command::Coproduct(a) => run_coproduct(a).map(|v| (v, 0)),
        Command::Verify(a) => run_verify(a),
        Command::Cache(a) => run_cache(a).map(|v| (v, 0)),
    }
}

fn parse_csv(flag: &str, text: &str) -> Result<Vec<usize>, Failure> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| {
                usage(format!(
                    "{flag} must be a comma-separated list of positive integers, got {text:?}"
                ))
            })
        })
        .collect()
}

fn parse_beta(text: &str) -> Result<BetaMode, Failure> {
    BetaMode::from_str(text).map_err(usage)
}

fn build_group(type_label: &str, rank: usize) -> Result<(Arc<WeylGroup>, TypeLabel), Failure> {
    let label = TypeLabel::from_str(type_label).map_err(|e| usage(e.to_string()))?;
    let datum = RootDatum::standard(label, rank).map_err(|e| usage(e.to_string()))?;
    let group = WeylGroup::new(datum).map_err(|e| usage(e.to_string()))?;
    Ok((Arc::new(group), label))
}

fn validate_strands(n: usize) -> Result<(), Failure> {
    RootDatum::standard(TypeLabel::A, n.saturating_sub(1))
        .map(|_| ())
        .map_err(|_| usage(format!("--n {n} is outside the supported range 2..=5")))
}

/// The target of a type-A subcommand from exactly one of a one-line
/// permutation and a reflection word: the one-line form, the word as given
/// (derived when the permutation was the input), and the group element.
fn resolve_type_a_target(
    group: &WeylGroup,
    n: usize,
    perm: Option<&str>,
    word: Option<&str>,
) -> Result<(Vec<usize>, Vec<usize>, WeylElem), Failure> {
    match (perm, word) {
        (Some(_), Some(_)) => Err(usage("give exactly one of --perm and --word")),
        (None, None) => Err(usage("one of --perm or --word is required")),
        (Some(text), None) => {
            let perm = parse_csv("--perm", text)?;
            if perm.len() != n {
                return Err(usage(format!(
                    "--perm must list all of 1..={n}, got {} entries",
                    perm.len()
                )));
            }
            let given = word_from_one_line(&perm).map_err(|e| usage(e.to_string()))?;
            let w = group.elem_from_word(&given).map_err(|e| usage(e.to_string()))?;
            Ok((perm, given, w))
        }
        (None, Some(text)) => {
            let given = parse_csv("--word", text)?;
            let w = group.elem_from_word(&given).map_err(|e| usage(e.to_string()))?;
            Ok((one_line_from_word(n, &given), given, w))
        }
    }
}

/// A group element from exactly one of a word flag and a one-line flag; the
/// one-line form is only meaningful for the standard type-A datum.
fn element_from_flags(
    group: &WeylGroup,
    label: TypeLabel,
    word_flag: &str,
    word: Option<&str>,
    perm_flag: &str,
    perm: Option<&str>,
) -> Result<(Vec<usize>, WeylElem), Failure> {
    match (word, perm) {
        (Some(_), Some(_)) => Err(usage(format!(
            "give exactly one of {word_flag} and {perm_flag}"
        ))),
        (None, None) => Err(usage(format!(
            "one of {word_flag} or {perm_flag} is required"
        ))),
        (Some(text), None) => {
            let given = parse_csv(word_flag, text)?;
            let w = group.elem_from_word(&given).map_err(|e| usage(e.to_string()))?;
            Ok((given, w))
        }
        (None, Some(text)) => {
            if label != TypeLabel::A {
                return Err(usage(format!("{perm_flag} applies only to type A")));
            }
            let n = group.rank() + 1;
            let perm = parse_csv(perm_flag, text)?;
            if perm.len() != n {
                return Err(usage(format!(
                    "{perm_flag} must list all of 1..={n}, got {} entries",
                    perm.len()
                )));
            }
            let given = word_from_one_line(&perm).map_err(|e| usage(e.to_string()))?;
            let w = group.elem_from_word(&given).map_err(|e| usage(e.to_string()))?;
            Ok((given, w))
        }
    }
}

fn run_compute(a: ComputeArgs) -> Result<Value, Failure> {
    let mode = parse_beta(&a.beta)?;
    validate_strands(a.n)?;
    let group = sym_group(a.n);
    let (perm, _, w) = resolve_type_a_target(&group, a.n, a.perm.as_deref(), a.word.as_deref())?;
    let value = if a.dual {
        dual_poly(a.n, &perm)
    } else {
        grothendieck_poly(a.n, &perm)
    };
    let (value_json, latex) = element_output(&value, VarStyle::TypeA, mode).map_err(computation)?;
    Ok(json!({
        "command": "compute",
        "n": a.n,
        "class": if a.dual { "dual" } else { "grothendieck" },
        "permutation": perm,
        "word": group.word(w),
        "beta": mode.to_string(),
        "value": value_json,
        "latex": latex,
    }))
}

fn run_localize(a: LocalizeArgs) -> Result<Value, Failure> {
    let mode = parse_beta(&a.beta)?;
    let (group, label) = build_group(&a.type_label, a.rank)?;
    let (given, w) = element_from_flags(
        &group,
        label,
        "--word",
        a.word.as_deref(),
        "--perm",
        a.perm.as_deref(),
    )?;
    let (_, u) = element_from_flags(
        &group,
        label,
        "--u",
        a.u.as_deref(),
        "--u-perm",
        a.u_perm.as_deref(),
    )?;
    let table = if a.no_cache {
        localization_table_hproduct(&group, &given).map_err(computation)?
    } else {
        cached_localization_table(&group, &given).map_err(computation)?
    };
    let product_value = table.value(u);
    let subset_value = billey_sum(&group, &given, u).map_err(computation)?;
    let agree = product_value == subset_value;
    let style = if label == TypeLabel::A {
        VarStyle::TypeA
    } else {
        VarStyle::Weights
    };
    let (product_json, latex) =
        element_output(&product_value, style, mode).map_err(computation)?;
    let (subset_json, _) = element_output(&subset_value, style, mode).map_err(computation)?;
    Ok(json!({
        "command": "localize",
        "type": label.to_string(),
        "rank": a.rank,
        "given_word": given,
        "word": group.word(w),
        "u_word": group.word(u),
        "beta": mode.to_string(),
        "hproduct": product_json,
        "billey": subset_json,
        "agree": agree,
        "latex": latex,
    }))
}

fn run_pipedreams(a: PipedreamsArgs) -> Result<Value, Failure> {
    let mode = parse_beta(&a.beta)?;
    validate_strands(a.n)?;
    let group = sym_group(a.n);
    let (perm, _, w) = resolve_type_a_target(&group, a.n, a.perm.as_deref(), a.word.as_deref())?;
    let dreams = enumerate_pipe_dreams(a.n, &perm);
    let mut total = CharElement::zero(a.n - 1, vec![Block::X, Block::Y]);
    let mut items = Vec::new();
    for (dream, weight) in &dreams {
        total = &total + weight;
        let (weight_json, weight_latex) =
            element_output(weight, VarStyle::TypeA, mode).map_err(computation)?;
        items.push(json!({
            "tiles": serde_json::to_value(dream.tiles()).expect("tiles serialize"),
            "word": dream.word(),
            "crossings": dream.crossing_count(),
            "marked": dream.has_marks(),
            "weight": weight_json,
            "weight_latex": weight_latex,
            "ascii": dream.ascii(),
            "diagram": dream.latex(),
        }));
    }
    let (total_json, total_latex) =
        element_output(&total, VarStyle::TypeA, mode).map_err(computation)?;
    Ok(json!({
        "command": "pipedreams",
        "n": a.n,
        "permutation": perm,
        "word": group.word(w),
        "beta": mode.to_string(),
        "count": dreams.len(),
        "dreams": items,
        "value": total_json,
        "latex": total_latex,
    }))
}

/// `\mathfrak{G}` with the canonical word of `w` as its subscript.
fn class_symbol(group: &WeylGroup, w: WeylElem) -> String {
    let word = group.word(w);
    if word.is_empty() {
        return "\\mathfrak{G}_{e}".to_string();
    }
    let sub: String = word.iter().map(|i| format!("s_{{{i}}}")).collect();
    format!("\\mathfrak{{G}}_{{{sub}}}")
}

fn run_coproduct(a: CoproductArgs) -> Result<Value, Failure> {
    let (group, label) = build_group(&a.type_label, a.rank)?;
    let (_, w) = element_from_flags(
        &group,
        label,
        "--word",
        a.word.as_deref(),
        "--perm",
        a.perm.as_deref(),
    )?;
    let terms = coproduct(&group, w);
    let items: Vec<Value> = terms
        .iter()
        .map(|(u, v, c)| {
            json!({
                "u": group.word(*u),
                "v": group.word(*v),
                "coefficient": scalar_json(c),
            })
        })
        .collect();
    let latex = join_summands(
        terms
            .iter()
            .map(|(u, v, c)| {
                let vars = format!(
                    "{} \\otimes {}",
                    class_symbol(&group, *u),
                    class_symbol(&group, *v)
                );
                summand(c, &vars)
            })
            .collect(),
    );
    Ok(json!({
        "command": "coproduct",
        "type": label.to_string(),
        "rank": a.rank,
        "word": group.word(w),
        "terms": items,
        "latex": latex,
    }))
}

fn run_verify(a: VerifyArgs) -> Result<(Value, i32), Failure> {
    let label = TypeLabel::from_str(&a.type_label).map_err(|e| usage(e.to_string()))?;
    let datum = RootDatum::standard(label, a.rank).map_err(|e| usage(e.to_string()))?;
    let scope = Scope::from_str(&a.scope).map_err(|e| usage(e.to_string()))?;
    let datum = CheckDatum::General(datum);
    let reports: Vec<CheckReport> = if a.name == "all" {
        run_catalog(&datum, a.seed, scope).map_err(computation)?
    } else {
        let name = CheckName::from_str(&a.name).map_err(|e| usage(e.to_string()))?;
        let spec = CheckSpec {
            name,
            datum,
            seed: a.seed,
            scope,
        };
        vec![verify(&spec).map_err(computation)?]
    };
    let passed = reports.iter().all(|r| r.passed());
    let document = json!({
        "command": "verify",
        "type": label.to_string(),
        "rank": a.rank,
        "scope": scope.to_string(),
        "seed": a.seed,
        "passed": passed,
        "reports": serde_json::to_value(&reports).expect("reports serialize"),
    });
    if let Some(path) = &a.out {
        let text = serde_json::to_string_pretty(&document).expect("a value tree serializes");
        std::fs::write(path, text + "\n")
            .map_err(|e| computation(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok((document, if passed { 0 } else { 1 }))
}

fn run_cache(a: CacheArgs) -> Result<Value, Failure> {
    let root = match cache_dir() {
        Some(path) => Value::String(path.display().to_string()),
        None => Value::Null,
    };
    match a.action {
        CacheAction::List => {
            let files = list_cached_tables().map_err(computation)?;
            let names: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
            Ok(json!({
                "command": "cache",
                "action": "list",
                "root": root,
                "count": names.len(),
                "files": names,
            }))
        }
        CacheAction::Clear => {
            let removed = clear_cache().map_err(computation)?;
            Ok(json!({
                "command": "cache",
                "action": "clear",
                "root": root,
                "removed": removed,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_parsing() {
        assert_eq!(parse_csv("--word", "2,1,2").unwrap(), vec![2, 1, 2]);
        assert_eq!(parse_csv("--word", " 1 , 3 ").unwrap(), vec![1, 3]);
        assert_eq!(parse_csv("--word", "").unwrap(), Vec::<usize>::new());
        assert!(parse_csv("--word", "1,x").is_err());
        assert!(parse_csv("--word", "1,-2").is_err());
    }

    #[test]
    fn type_a_target_resolution() {
        let group = sym_group(3);
        let (perm, given, w) =
            resolve_type_a_target(&group, 3, Some("1,3,2"), None).unwrap();
        assert_eq!(perm, vec![1, 3, 2]);
        assert_eq!(given, vec![2]);
        assert_eq!(group.word(w), &[2]);
        let (perm, given, _) = resolve_type_a_target(&group, 3, None, Some("2,1,2")).unwrap();
        assert_eq!(perm, vec![3, 2, 1]);
        assert_eq!(given, vec![2, 1, 2]);
        assert!(resolve_type_a_target(&group, 3, Some("1,3,2"), Some("2")).is_err());
        assert!(resolve_type_a_target(&group, 3, None, None).is_err());
        assert!(resolve_type_a_target(&group, 3, Some("1,3"), None).is_err());
        assert!(resolve_type_a_target(&group, 3, Some("1,3,3"), None).is_err());
        assert!(resolve_type_a_target(&group, 3, None, Some("7")).is_err());
    }
}
