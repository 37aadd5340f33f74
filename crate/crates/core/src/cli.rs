//! The `fincat` command line.
//!
//! Every analysis subcommand reads one category, given as a file path or as
//! `catalog:<name>`, and emits an [`AnalysisReport`]. Exit codes: 0 for a
//! completed analysis whatever its verdict, 2 for invalid input or usage, 3
//! when a search budget or size cap is exceeded. `suite` exits 1 when any
//! criterion fails.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog;
use crate::concrete::{
    automorphism_via_representation, bijections_to_json, check_star_condition, find_representation,
    ConcreteFinCat, DEFAULT_SIZE_CAP,
};
use crate::equivalence::{has_proper_autoequivalence, promote_to_isomorphism, Mode};
use crate::error::{Error, Result};
use crate::functor::{FinFunctor, FunctorCandidate};
use crate::io::{self, CategoryFile, Loaded};
use crate::quotient::{build_quotient, QuotientOptions};
use crate::report::{digest, AnalysisReport, Status};
use crate::search::{enumerate_autoequivalences, enumerate_automorphisms, SearchOptions, DEFAULT_BUDGET};
use crate::skeleton::compute_skeleton;
use crate::suite::{run_suite, Scope};

const CATALOG_PREFIX: &str = "catalog:";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "fincat", version, about = "Autoequivalence analysis for finite categories")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Maximum number of search nodes per enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Category file, or `catalog:<name>` (e.g. `catalog:p4`).
    pub input: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the category laws and report every violation.
    Validate(Input),
    /// Skeleton, chosen isomorphisms u_A and the retraction ν.
    Skeleton(Input),
    /// Enumerate autoequivalences.
    Autoequiv(Input),
    /// Enumerate automorphisms.
    Automorphisms(Input),
    /// Decide whether some autoequivalence is naturally isomorphic to no automorphism.
    Proper {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
    },
    /// Promote an equivalence to a naturally isomorphic isomorphism.
    Promote {
        #[command(flatten)]
        input: Input,
        /// Functor file `{"obj_map": {...}, "mor_map": {...}}`. Without it every
        /// autoequivalence is promoted.
        #[arg(long)]
        functor: Option<PathBuf>,
        /// Target category when it differs from the source.
        #[arg(long)]
        target: Option<String>,
    },
    /// Endofunctors modulo natural isomorphism and the image of the automorphisms.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 5)]
        max_objects: usize,
        #[arg(long, default_value_t = 16)]
        max_morphisms: usize,
    },
    /// Condition (*), representations of Q and transport of autoequivalences.
    Concrete {
        #[command(flatten)]
        input: Input,
        /// Largest underlying set for which bijections are enumerated.
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        size_cap: usize,
        /// Object to try as a representing object; default tries every object.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Write a catalog category as a canonical file.
    Gen {
        #[arg(long)]
        example: String,
    },
    /// Run the acceptance battery.
    Suite {
        #[arg(value_enum, default_value = "fast")]
        scope: ScopeArg,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Criterion,
    Oracle,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Criterion => Mode::Criterion,
            ModeArg::Oracle => Mode::Oracle,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Fast,
    #[value(name = "exhaustive-3")]
    Exhaustive3,
    Full,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::Fast => Scope::Fast,
            ScopeArg::Exhaustive3 => Scope::Exhaustive3,
            ScopeArg::Full => Scope::Full,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fincat: {e}");
            if e.is_invalid_input() {
                2
            } else {
                1
            }
        }
    }
}

/// Reads an input as raw bytes plus the loaded category.
fn load_input(input: &str) -> Result<(Vec<u8>, Loaded)> {
    if let Some(name) = input.strip_prefix(CATALOG_PREFIX) {
        let entry = catalog::catalog(name)?;
        let loaded = Loaded {
            category: entry.category(),
            concrete: entry.concrete().cloned(),
        };
        return Ok((name.as_bytes().to_vec(), loaded));
    }
    let bytes = fs::read(input)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Format(format!("`{input}` is not UTF-8")))?;
    let loaded = CategoryFile::parse(&text)?.load()?;
    Ok((bytes, loaded))
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn render(cli: &Cli, report: &AnalysisReport) -> String {
    match cli.format {
        Format::Json => report.to_json_string(),
        Format::Text => report.to_text(),
    }
}

/// Turns an analysis error into a report when it has a defined status.
fn error_report(command: &str, input_digest: String, e: &Error) -> Option<AnalysisReport> {
    let status = if e.is_budget() {
        Status::BudgetExceeded
    } else if e.is_invalid_input() {
        Status::InvalidInput
    } else {
        return None;
    };
    let mut report = AnalysisReport::new(command, input_digest);
    report.status = status;
    report.result = match e {
        Error::InvalidCategory(v) => json!({"error": e.to_string(), "violations": v.violations}),
        Error::InvalidFunctor(v) => json!({"error": e.to_string(), "violations": v.violations}),
        _ if command == "proper" && status == Status::BudgetExceeded => {
            json!({"error": e.to_string(), "verdict": "inconclusive"})
        }
        _ => json!({"error": e.to_string()}),
    };
    Some(report)
}

fn execute(cli: &Cli) -> Result<i32> {
    let opts = SearchOptions::with_budget(cli.budget);
    let start = Instant::now();
    let (command, input) = match &cli.command {
        Command::Gen { example } => return gen(cli, example),
        Command::Suite { scope, workers } => return suite(cli, (*scope).into(), opts.workers(*workers)),
        Command::Validate(i) => ("validate", i),
        Command::Skeleton(i) => ("skeleton", i),
        Command::Autoequiv(i) => ("autoequiv", i),
        Command::Automorphisms(i) => ("automorphisms", i),
        Command::Proper { input, .. } => ("proper", input),
        Command::Promote { input, .. } => ("promote", input),
        Command::Quotient { input, .. } => ("quotient", input),
        Command::Concrete { input, .. } => ("concrete", input),
    };
    let outcome = load_input(&input.input).and_then(|(bytes, loaded)| {
        let mut report = AnalysisReport::new(command, digest(&bytes));
        analyze(cli, &loaded, opts, &mut report).map(|_| report)
    });
    let mut report = match outcome {
        Ok(r) => r,
        Err(e) => {
            let input_digest = match fs::read(&input.input) {
                Ok(bytes) => digest(&bytes),
                Err(_) => digest(input.input.trim_start_matches(CATALOG_PREFIX).as_bytes()),
            };
            match error_report(command, input_digest, &e) {
                Some(r) => r,
                None => return Err(e),
            }
        }
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    emit(cli, &render(cli, &report))?;
    Ok(report.status.exit_code())
}

fn analyze(cli: &Cli, loaded: &Loaded, opts: SearchOptions, report: &mut AnalysisReport) -> Result<()> {
    let c = &loaded.category;
    match &cli.command {
        Command::Validate(_) => {
            report.result = json!({
                "valid": true,
                "objects": c.object_count(),
                "morphisms": c.morphism_count(),
                "nontrivial_composites": c.nontrivial_composites().len(),
                "iso_classes": c.iso_classes().classes.len(),
                "concrete": loaded.concrete.is_some(),
            });
        }
        Command::Skeleton(_) => {
            let sk = compute_skeleton(c)?;
            let inner = sk.verify_nu_inner()?;
            report.result = sk.to_json();
            report.witnesses = json!({"nu": sk.nu().to_json(), "u_natural": inner.to_json()});
        }
        Command::Autoequiv(_) => {
            let e = enumerate_autoequivalences(c, opts)?;
            let isomorphisms = e.functors.iter().filter(|f| f.classify().isomorphism).count();
            report.nodes_visited = e.nodes_visited;
            report.result = json!({"count": e.functors.len(), "isomorphisms": isomorphisms});
            report.witnesses = json!({"autoequivalences": functor_list(&e.functors)});
        }
        Command::Automorphisms(_) => {
            let e = enumerate_automorphisms(c, opts)?;
            report.nodes_visited = e.nodes_visited;
            report.result = json!({"count": e.functors.len()});
            report.witnesses = json!({"automorphisms": functor_list(&e.functors)});
        }
        Command::Proper { mode, .. } => {
            let analysis = has_proper_autoequivalence(c, (*mode).into(), opts)?;
            report.nodes_visited = analysis.nodes_visited;
            let mut result = analysis.to_json();
            if let Value::Object(map) = &mut result {
                map.remove("witness");
            }
            report.result = result;
            report.witnesses = json!({
                "proper_autoequivalence": analysis.witness.as_ref().map(FinFunctor::to_json),
            });
        }
        Command::Promote { functor, target, .. } => promote(c, functor.as_deref(), target.as_deref(), opts, report)?,
        Command::Quotient {
            max_objects,
            max_morphisms,
            ..
        } => {
            let q = build_quotient(
                c,
                QuotientOptions {
                    search: opts,
                    max_objects: *max_objects,
                    max_morphisms: *max_morphisms,
                },
            )?;
            report.nodes_visited = q.nodes_visited();
            report.result = q.to_json();
        }
        Command::Concrete {
            size_cap, witness, ..
        } => {
            let k = loaded.concrete.as_ref().ok_or_else(|| {
                Error::Precondition("input has no underlying block".into())
            })?;
            concrete(k, *size_cap, witness.as_deref(), opts, report)?;
        }
        Command::Gen { .. } | Command::Suite { .. } => unreachable!("handled before loading"),
    }
    Ok(())
}

fn functor_list(functors: &[FinFunctor]) -> Vec<Value> {
    functors.iter().map(FinFunctor::to_json).collect()
}

fn promote(
    source: &Arc<crate::category::FinCat>,
    functor: Option<&Path>,
    target: Option<&str>,
    opts: SearchOptions,
    report: &mut AnalysisReport,
) -> Result<()> {
    let target = match target {
        Some(t) => load_input(t)?.1.category,
        None => source.clone(),
    };
    let inputs = match functor {
        Some(path) => {
            let candidate: FunctorCandidate = serde_json::from_slice(&fs::read(path)?)?;
            vec![FinFunctor::from_candidate(source.clone(), target, &candidate)?]
        }
        None => {
            let e = enumerate_autoequivalences(source, opts)?;
            report.nodes_visited = e.nodes_visited;
            e.functors
        }
    };
    let mut outcomes = Vec::with_capacity(inputs.len());
    let mut promoted = 0;
    for pi in &inputs {
        let r = promote_to_isomorphism(pi)?;
        promoted += usize::from(r.is_promoted());
        let mut entry = r.to_json();
        if let Value::Object(map) = &mut entry {
            map.insert("pi".into(), pi.to_json());
        }
        outcomes.push(entry);
    }
    report.result = json!({
        "count": inputs.len(),
        "promoted": promoted,
        "obstructed": inputs.len() - promoted,
        "outcomes": outcomes.iter().map(|o| json!({
            "outcome": o["outcome"],
            "obstructions": o.get("obstructions").cloned().unwrap_or(json!([])),
        })).collect::<Vec<_>>(),
    });
    report.witnesses = json!({"promotions": outcomes});
    Ok(())
}

fn concrete(
    k: &ConcreteFinCat,
    size_cap: usize,
    witness: Option<&str>,
    opts: SearchOptions,
    report: &mut AnalysisReport,
) -> Result<()> {
    let c = k.cat();
    let failures = check_star_condition(k, size_cap)?;
    let candidates: Vec<usize> = match witness {
        Some(w) => vec![c.require_object(w)?],
        None => (0..c.object_count()).collect(),
    };
    let mut representing = Vec::new();
    for &w in &candidates {
        if let Some(rep) = find_representation(k, w, size_cap)? {
            representing.push((w, rep));
        }
    }
    let mut transports = Vec::new();
    if let (Some((w, _)), true) = (representing.first(), failures.is_empty()) {
        let autos = enumerate_autoequivalences(c, opts)?;
        report.nodes_visited = autos.nodes_visited;
        for pi in &autos.functors {
            let entry = match automorphism_via_representation(k, pi, *w, size_cap) {
                Ok((u, built)) => json!({
                    "pi": pi.to_json(),
                    "bijections": bijections_to_json(k, pi, &u),
                    "automorphism": built.functor.to_json(),
                    "comparison": built.comparison.to_json(),
                }),
                Err(e) if e.is_budget() => return Err(e),
                Err(e) => json!({"pi": pi.to_json(), "error": e.to_string()}),
            };
            transports.push(entry);
        }
    }
    report.result = json!({
        "star_condition": failures.is_empty(),
        "star_failures": failures.len(),
        "representing_objects": representing.iter().map(|(w, _)| c.object_name(*w)).collect::<Vec<_>>(),
        "transported": transports.iter().filter(|t| t.get("automorphism").is_some()).count(),
        "autoequivalences": transports.len(),
    });
    report.witnesses = json!({
        "star_failures": failures.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
        "representations": representing.iter().map(|(_, r)| r.to_json(k)).collect::<Vec<_>>(),
        "transports": transports,
    });
    Ok(())
}

fn gen(cli: &Cli, example: &str) -> Result<i32> {
    let entry = catalog::catalog(example)?;
    let loaded = Loaded {
        category: entry.category(),
        concrete: entry.concrete().cloned(),
    };
    emit(cli, &io::canonical_text(&loaded))?;
    Ok(0)
}

fn suite(cli: &Cli, scope: Scope, opts: SearchOptions) -> Result<i32> {
    let start = Instant::now();
    let summary = match run_suite(scope, opts) {
        Ok(s) => s,
        Err(e) => {
            let Some(mut report) = error_report("suite", digest(scope.as_str().as_bytes()), &e) else {
                return Err(e);
            };
            report.elapsed_ms = start.elapsed().as_millis() as u64;
            emit(cli, &render(cli, &report))?;
            return Ok(report.status.exit_code());
        }
    };
    let mut report = AnalysisReport::new("suite", digest(scope.as_str().as_bytes()));
    report.result = summary.to_json();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    let text = match cli.format {
        Format::Json => report.to_json_string(),
        Format::Text => summary.summary_lines().join("\n") + "\n",
    };
    emit(cli, &text)?;
    Ok(if summary.passed() { 0 } else { 1 })
}
