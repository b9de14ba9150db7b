//! Command-line front end.
//!
//! Exit status: 0 = computed, 1 = a verified property is violated,
//! 2 = input error (malformed documents, bad parameters, search guards).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::format_rational;
use crate::bollobas::{
    bollobas_sum, check_conditions, enumerated_separation_probability,
    exact_separation_probability, mc_separation_estimate, search_c_prime_violation,
    verify_disjointness_exact, PairSystem,
};
use crate::bounds::{
    cross_bound_product, ekr_bound, rwise_bound, star_family, tightness_example,
    uniform_ekr_bound,
};
use crate::compression::{compress_once, is_up_set, up_closure};
use crate::doc::{FamilyDocument, PairSystemDocument};
use crate::family::SetFamily;
use crate::predicates;
use crate::search::{
    max_cross_product, max_family_pairwise, max_family_rwise, max_family_uniform, CrossMode,
    PairwiseMode, RwiseMode, SearchOutcome, Witness,
};
use crate::{Error, Result};

#[derive(Parser)]
#[command(name = "setfam", version, about = "Intersecting-family verification and search")]
pub struct Cli {
    /// Emit machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for Monte Carlo sampling.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a predicate against a family or pair-system document.
    Verify(VerifyArgs),
    /// Apply the shifting operator or the full up-set closure.
    Compress(CompressArgs),
    /// Evaluate a closed-form bound.
    Bound(BoundArgs),
    /// Emit a canonical construction as a document.
    Construct(ConstructArgs),
    /// Run an exhaustive maximum-family search.
    Search(SearchArgs),
    /// Exact Bollobás sum of a pair-system document.
    Bsum { file: PathBuf },
    /// Separation probabilities, exact or Monte Carlo.
    Separate(SeparateArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Predicate name.
    predicate: Predicate,
    /// Family or pair-system documents (cross predicates take several).
    files: Vec<PathBuf>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Predicate {
    /// Every distinct pair meets in >= t elements.
    TIntersecting,
    /// Pairs meeting in < t elements have |A △ B| <= k − t.
    RelaxedPairwise,
    /// Closed under adding elements below the rank bound.
    UpSet,
    /// Every inter-family pair meets in >= t elements.
    CrossTIntersecting,
    /// Inter-family pairs meeting in < t elements have small symmetric difference.
    CrossRelaxed,
    /// Every r-tuple (with repetition) has a common element.
    RWise,
    /// r-tuples with empty intersection have |union − intersection| <= k.
    RelaxedRwise,
    /// Condition (1) across one or more families.
    ConditionOne,
    /// Talbot conditions (a), (b), (c), (c') of a pair system.
    Conditions,
    /// No permutation separates two distinct pairs (exhaustive, n <= 8).
    Disjoint,
}

#[derive(Args)]
struct CompressArgs {
    file: PathBuf,
    /// Shift element i (applies S_{i,k} once).
    #[arg(long, conflicts_with = "closure")]
    element: Option<u32>,
    /// Rank bound for the shift; defaults to the document's k.
    #[arg(long)]
    rank: Option<u32>,
    /// Iterate passes to the up-set fixpoint.
    #[arg(long)]
    closure: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    kind: BoundKind,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    /// Per-family rank bounds for the cross bound (comma separated).
    #[arg(long, value_delimiter = ',')]
    ranks: Vec<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    Ekr,
    Uniform,
    Cross,
    Rwise,
}

#[derive(Args)]
struct ConstructArgs {
    kind: ConstructKind,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    /// Ground size for the classic pair system.
    #[arg(long)]
    m: Option<u32>,
    /// Pair rank for the classic pair system.
    #[arg(long)]
    a: Option<u32>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    /// All sets of size <= k containing {1..t}.
    Star,
    /// The star plus the t subsets of [t] of size t−1.
    Tightness,
    /// All a-subsets of [m] paired with their complements.
    Classic,
}

#[derive(Args)]
struct SearchArgs {
    kind: SearchKind,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    ranks: Vec<u32>,
    #[arg(long, default_value = "relaxed")]
    mode: Mode,
    /// |A_i| for the cprime search.
    #[arg(long)]
    a: Option<u32>,
    /// |B_i| for the cprime search.
    #[arg(long)]
    b: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchKind {
    Pairwise,
    Uniform,
    Rwise,
    Cross,
    Cprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Relaxed,
}

#[derive(Args)]
struct SeparateArgs {
    file: PathBuf,
    /// Closed-form probabilities (default); with --enumerate, check them
    /// against exhaustive permutation counts.
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    enumerate: bool,
    /// Monte Carlo estimation.
    #[arg(long, conflicts_with = "exact")]
    mc: bool,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Serialize)]
struct VerifyReport {
    predicate: String,
    holds: bool,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct SearchReport {
    optimum: String,
    proof_complete: bool,
    nodes_explored: u64,
    witness: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    sum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reaches_lower_bound: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Verify(args) => verify(cli, args),
        Command::Compress(args) => compress(cli, args),
        Command::Bound(args) => bound(cli, args),
        Command::Construct(args) => construct(cli, args),
        Command::Search(args) => search(cli, args),
        Command::Bsum { file } => {
            let system = read_system(file)?;
            let sum = bollobas_sum(&system);
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "sum": format_rational(&sum) })
                );
            } else {
                println!("{}", format_rational(&sum));
            }
            Ok(0)
        }
        Command::Separate(args) => separate(cli, args),
    }
}

fn read_family(path: &PathBuf) -> Result<(SetFamily, Option<u32>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    let doc = FamilyDocument::parse(&text)?;
    let family = doc.to_family()?;
    Ok((family, doc.t))
}

fn read_system(path: &PathBuf) -> Result<PairSystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    PairSystemDocument::parse(&text)?.to_system()
}

fn missing(flag: &str) -> Error {
    Error::Document(format!("missing required flag --{flag}"))
}

fn one_file(files: &[PathBuf]) -> Result<&PathBuf> {
    match files {
        [f] => Ok(f),
        _ => Err(Error::Document(format!(
            "expected exactly one input file, got {}",
            files.len()
        ))),
    }
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<i32> {
    if args.files.is_empty() {
        return Err(Error::Document("no input files".into()));
    }
    let (name, holds, violations) = match args.predicate {
        Predicate::TIntersecting => {
            let (family, doc_t) = read_family(one_file(&args.files)?)?;
            let t = args.t.or(doc_t).ok_or_else(|| missing("t"))?;
            ("t-intersecting", predicates::is_t_intersecting(&family, t), vec![])
        }
        Predicate::RelaxedPairwise => {
            let (family, doc_t) = read_family(one_file(&args.files)?)?;
            let t = args.t.or(doc_t).ok_or_else(|| missing("t"))?;
            let k = args.k.unwrap_or(family.rank_bound());
            (
                "relaxed-pairwise",
                predicates::satisfies_relaxed_pairwise(&family, k, t),
                vec![],
            )
        }
        Predicate::UpSet => {
            let (family, _) = read_family(one_file(&args.files)?)?;
            ("up-set", is_up_set(&family), vec![])
        }
        Predicate::CrossTIntersecting => {
            let families = read_families(&args.files)?;
            let t = args.t.ok_or_else(|| missing("t"))?;
            let refs: Vec<&SetFamily> = families.iter().map(|(f, _)| f).collect();
            (
                "cross-t-intersecting",
                predicates::are_cross_t_intersecting(&refs, t),
                vec![],
            )
        }
        Predicate::CrossRelaxed => {
            let families = read_families(&args.files)?;
            let t = args.t.ok_or_else(|| missing("t"))?;
            let refs: Vec<&SetFamily> = families.iter().map(|(f, _)| f).collect();
            let ranks: Vec<u32> = refs.iter().map(|f| f.rank_bound()).collect();
            (
                "cross-relaxed",
                predicates::satisfies_cross_relaxed(&refs, &ranks, t)?,
                vec![],
            )
        }
        Predicate::RWise => {
            let (family, _) = read_family(one_file(&args.files)?)?;
            let r = args.r.ok_or_else(|| missing("r"))?;
            ("r-wise", predicates::is_r_wise_intersecting(&family, r), vec![])
        }
        Predicate::RelaxedRwise => {
            let (family, _) = read_family(one_file(&args.files)?)?;
            let r = args.r.ok_or_else(|| missing("r"))?;
            let k = args.k.unwrap_or(family.rank_bound());
            (
                "relaxed-rwise",
                predicates::satisfies_relaxed_rwise(&family, k, r),
                vec![],
            )
        }
        Predicate::ConditionOne => {
            let families = read_families(&args.files)?;
            let t = args.t.ok_or_else(|| missing("t"))?;
            let refs: Vec<&SetFamily> = families.iter().map(|(f, _)| f).collect();
            let k = args
                .k
                .unwrap_or_else(|| refs.iter().map(|f| f.rank_bound()).min().unwrap());
            (
                "condition-one",
                predicates::satisfies_condition_one(&refs, k, t),
                vec![],
            )
        }
        Predicate::Conditions => {
            let system = read_system(one_file(&args.files)?)?;
            let report = check_conditions(&system);
            let violations = report
                .violations
                .iter()
                .map(|(i, j, c)| format!("({i},{j}): {c:?}"))
                .collect();
            (
                "conditions",
                report.a_holds && report.b_holds && report.c_holds && report.c_prime_holds,
                violations,
            )
        }
        Predicate::Disjoint => {
            let system = read_system(one_file(&args.files)?)?;
            ("disjoint", verify_disjointness_exact(&system)?, vec![])
        }
    };
    let report = VerifyReport {
        predicate: name.to_string(),
        holds,
        violations,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("{holds}");
        for v in &report.violations {
            println!("violation {v}");
        }
    }
    Ok(if holds { 0 } else { 1 })
}

fn read_families(files: &[PathBuf]) -> Result<Vec<(SetFamily, Option<u32>)>> {
    files.iter().map(read_family).collect()
}

fn compress(cli: &Cli, args: &CompressArgs) -> Result<i32> {
    let (family, doc_t) = read_family(&args.file)?;
    let result = if args.closure {
        up_closure(&family)
    } else {
        let i = args.element.ok_or_else(|| missing("element"))?;
        let k = args.rank.unwrap_or(family.rank_bound());
        compress_once(&family, i, k)?
    };
    emit_family(cli, &result, doc_t, args.output.as_ref())
}

fn emit_family(
    cli: &Cli,
    family: &SetFamily,
    t: Option<u32>,
    output: Option<&PathBuf>,
) -> Result<i32> {
    let doc = FamilyDocument::from_family(family, t);
    let text = serde_json::to_string_pretty(&doc).unwrap();
    match output {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?,
        None => {
            if cli.json {
                println!("{text}");
            } else {
                println!("{family}");
            }
        }
    }
    Ok(0)
}

fn bound(cli: &Cli, args: &BoundArgs) -> Result<i32> {
    let value = match args.kind {
        BoundKind::Ekr => {
            let k = args.k.ok_or_else(|| missing("k"))?;
            let t = args.t.ok_or_else(|| missing("t"))?;
            ekr_bound(args.n, k, t)?.to_string()
        }
        BoundKind::Uniform => {
            let k = args.k.ok_or_else(|| missing("k"))?;
            let t = args.t.ok_or_else(|| missing("t"))?;
            let (v, regime) = uniform_ekr_bound(args.n, k, t)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "bound": v.to_string(), "regime_holds": regime })
                );
                return Ok(0);
            }
            println!("{v} (regime n >= (k-t+1)(t+1): {regime})");
            return Ok(0);
        }
        BoundKind::Cross => {
            let t = args.t.ok_or_else(|| missing("t"))?;
            if args.ranks.is_empty() {
                return Err(missing("ranks"));
            }
            cross_bound_product(args.n, &args.ranks, t)?.to_string()
        }
        BoundKind::Rwise => {
            let k = args.k.ok_or_else(|| missing("k"))?;
            rwise_bound(args.n, k)?.to_string()
        }
    };
    if cli.json {
        println!("{}", serde_json::json!({ "bound": value }));
    } else {
        println!("{value}");
    }
    Ok(0)
}

fn construct(cli: &Cli, args: &ConstructArgs) -> Result<i32> {
    match args.kind {
        ConstructKind::Star | ConstructKind::Tightness => {
            let n = args.n.ok_or_else(|| missing("n"))?;
            let k = args.k.ok_or_else(|| missing("k"))?;
            let t = args.t.ok_or_else(|| missing("t"))?;
            let family = match args.kind {
                ConstructKind::Star => star_family(n, k, t)?,
                _ => tightness_example(n, k, t)?,
            };
            emit_family(cli, &family, Some(t), args.output.as_ref())
        }
        ConstructKind::Classic => {
            let m = args.m.ok_or_else(|| missing("m"))?;
            let a = args.a.ok_or_else(|| missing("a"))?;
            let system = PairSystem::classic(m, a)?;
            let doc = PairSystemDocument::from_system(&system);
            let text = serde_json::to_string_pretty(&doc).unwrap();
            match &args.output {
                Some(path) => std::fs::write(path, text + "\n")
                    .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?,
                None => println!("{text}"),
            }
            Ok(0)
        }
    }
}

fn witness_json(witness: &Witness) -> serde_json::Value {
    match witness {
        Witness::Family(f) => {
            serde_json::to_value(FamilyDocument::from_family(f, None)).unwrap()
        }
        Witness::Families(fs) => serde_json::Value::Array(
            fs.iter()
                .map(|f| serde_json::to_value(FamilyDocument::from_family(f, None)).unwrap())
                .collect(),
        ),
        Witness::PairSystem(s) => {
            serde_json::to_value(PairSystemDocument::from_system(s)).unwrap()
        }
    }
}

fn print_search(cli: &Cli, outcome: &SearchOutcome, extra: SearchReport) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&extra).unwrap());
        return;
    }
    println!("optimum: {}", outcome.optimum);
    println!("proof_complete: {}", outcome.proof_complete);
    println!("nodes_explored: {}", outcome.nodes_explored);
    if let Some(sum) = &extra.sum {
        println!("sum: {sum}");
    }
    if let Some(r) = extra.reaches_lower_bound {
        println!("reaches_lower_bound: {r}");
    }
    if let Some(note) = &extra.note {
        println!("note: {note}");
    }
    match &outcome.witness {
        Witness::Family(f) => println!("witness: {f}"),
        Witness::Families(fs) => {
            for (i, f) in fs.iter().enumerate() {
                println!("witness F{}: {f}", i + 1);
            }
        }
        Witness::PairSystem(s) => {
            for (i, (a, b)) in s.pairs().iter().enumerate() {
                println!("witness pair {}: ({a}, {b})", i + 1);
            }
        }
    }
}

fn search(cli: &Cli, args: &SearchArgs) -> Result<i32> {
    let report_base = |o: &SearchOutcome| SearchReport {
        optimum: o.optimum.to_string(),
        proof_complete: o.proof_complete,
        nodes_explored: o.nodes_explored,
        witness: witness_json(&o.witness),
        sum: None,
        reaches_lower_bound: None,
        note: None,
    };
    match args.kind {
        SearchKind::Pairwise => {
            let k = args.k.ok_or_else(|| missing("k"))?;
            let t = args.t.ok_or_else(|| missing("t"))?;
            let mode = match args.mode {
                Mode::Strict => PairwiseMode::Strict,
                Mode::Relaxed => PairwiseMode::Relaxed,
            };
            let o = max_family_pairwise(args.n, k, t, mode)?;
            print_search(cli, &o, report_base(&o));
            Ok(0)
        }
        SearchKind::Uniform => {
            let k = args.k.ok_or_else(|| missing("k"))?;
            let t = args.t.ok_or_else(|| missing("t"))?;
            let o = max_family_uniform(args.n, k, t)?;
            print_search(cli, &o, report_base(&o));
            Ok(0)
        }
        SearchKind::Rwise => {
            let k = args.k.ok_or_else(|| missing("k"))?;
            let r = args.r.ok_or_else(|| missing("r"))?;
            let mode = match args.mode {
                Mode::Strict => RwiseMode::Strict,
                Mode::Relaxed => RwiseMode::Relaxed,
            };
            let o = max_family_rwise(args.n, k, r, mode)?;
            print_search(cli, &o, report_base(&o));
            Ok(0)
        }
        SearchKind::Cross => {
            let t = args.t.ok_or_else(|| missing("t"))?;
            if args.ranks.is_empty() {
                return Err(missing("ranks"));
            }
            let mode = match args.mode {
                Mode::Strict => CrossMode::Strict,
                Mode::Relaxed => CrossMode::Relaxed,
            };
            let o = max_cross_product(args.n, &args.ranks, t, mode)?;
            let mut report = report_base(&o);
            let bound = cross_bound_product(args.n, &args.ranks, t)?;
            if o.optimum > bound {
                report.note = Some("below n_0 candidate: optimum exceeds the product bound".into());
            }
            print_search(cli, &o, report);
            Ok(0)
        }
        SearchKind::Cprime => {
            let a = args.a.ok_or_else(|| missing("a"))?;
            let b = args.b.ok_or_else(|| missing("b"))?;
            let result = search_c_prime_violation(a, b, args.n)?;
            let mut report = report_base(&result.outcome);
            report.sum = Some(format_rational(&result.sum));
            report.reaches_lower_bound = Some(result.reaches_lower_bound);
            print_search(cli, &result.outcome, report);
            Ok(0)
        }
    }
}

fn separate(cli: &Cli, args: &SeparateArgs) -> Result<i32> {
    let system = read_system(&args.file)?;
    if args.mc {
        let est = mc_separation_estimate(&system, args.trials, args.seed, cli.threads());
        let rows: Vec<serde_json::Value> = est
            .hits_per_pair
            .iter()
            .zip(&est.point_estimates)
            .zip(&est.exact_reference)
            .map(|((hits, p), exact)| {
                serde_json::json!({
                    "hits": hits,
                    "estimate": format_rational(p),
                    "exact": format_rational(exact),
                })
            })
            .collect();
        if cli.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "trials": est.trials,
                    "seed": args.seed,
                    "pairs": rows,
                    "collision_detected": est.collision_detected,
                }))
                .unwrap()
            );
        } else {
            for (i, row) in rows.iter().enumerate() {
                println!(
                    "pair {}: hits {} estimate {} exact {}",
                    i + 1,
                    row["hits"],
                    row["estimate"].as_str().unwrap(),
                    row["exact"].as_str().unwrap()
                );
            }
            println!("collision_detected: {}", est.collision_detected);
        }
        return Ok(0);
    }
    // exact mode (default)
    let mut rows = Vec::new();
    for (a, b) in system.pairs() {
        let closed: BigRational = exact_separation_probability(a, b);
        let enumerated = if args.enumerate {
            Some(enumerated_separation_probability(a, b)?)
        } else {
            None
        };
        rows.push((closed, enumerated));
    }
    let mut all_match = true;
    if cli.json {
        let json_rows: Vec<serde_json::Value> = rows
            .iter()
            .map(|(c, e)| match e {
                Some(e) => {
                    if e != c {
                        all_match = false;
                    }
                    serde_json::json!({
                        "exact": format_rational(c),
                        "enumerated": format_rational(e),
                    })
                }
                None => serde_json::json!({ "exact": format_rational(c) }),
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({ "pairs": json_rows })).unwrap()
        );
    } else {
        for (i, (c, e)) in rows.iter().enumerate() {
            match e {
                Some(e) => {
                    if e != c {
                        all_match = false;
                    }
                    println!("pair {}: {} (enumerated {})", i + 1, format_rational(c), format_rational(e));
                }
                None => println!("pair {}: {}", i + 1, format_rational(c)),
            }
        }
    }
    Ok(if all_match { 0 } else { 1 })
}

impl Cli {
    fn threads(&self) -> usize {
        self.threads
    }
}
