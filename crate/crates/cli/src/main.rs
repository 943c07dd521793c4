//! `semicon`: count, classify and enumerate finite meet semilattices.
//!
//! Exit codes: 0 success, 1 a checked claim failed, 2 invalid semilattice
//! or out-of-bound request, 3 I/O or parse error.

mod dot;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use semicon::congruence::all_meet_congruences_bounded;
use semicon::enumerate::{enumerate_semilattices_bounded, Spectrum, DEFAULT_WITNESS_CAP};
use semicon::join_closed::PartialJoinStructure;
use semicon::structure::{classify_with, equals_threshold, SemilatticeClass};
use semicon::verify::verify_all;
use semicon::{is_lattice, is_quasi_tree, is_tree, named, ElementSet, RawTable, SemilatticeTable};

#[derive(Parser)]
#[command(name = "semicon", version)]
#[command(about = "Congruence counts and classification of finite meet semilattices")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Largest semilattice size accepted by enumeration commands
    #[arg(long, global = true, env = "SEMICON_MAX_N", value_parser = positive, default_value_t = 9)]
    max_n: usize,

    /// Largest UBTA count handled by inclusion-exclusion
    #[arg(long, global = true, env = "SEMICON_MAX_UBTAS", value_parser = positive, default_value_t = 20)]
    max_ubtas: usize,

    /// Largest semilattice size for listing all congruences
    #[arg(long, global = true, env = "SEMICON_MAX_CONGRUENCE_N", value_parser = positive, default_value_t = 10)]
    max_congruence_n: usize,

    #[command(subcommand)]
    command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("bound must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Congruences,
    Subsets,
    InclExcl,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Check that INPUT is a meet semilattice table
    Validate {
        /// Path to a JSON table, inline JSON, or `named:<name>`
        input: String,
    },
    /// Count meet congruences
    Count {
        input: String,
        #[arg(long, value_enum, default_value_t = Method::InclExcl)]
        method: Method,
    },
    /// Classify by the structure of the tree congruence
    Classify { input: String },
    /// Congruence counts attained by all N-element semilattices
    Spectrum {
        n: usize,
        /// Include canonical witness tables
        #[arg(long)]
        witnesses: bool,
        /// Report only the M largest values with their classes
        #[arg(long)]
        top: Option<usize>,
    },
    /// List all N-element semilattices up to isomorphism
    Enumerate {
        n: usize,
        /// tree | quasi-tree | lattice | class:<name>
        #[arg(long)]
        filter: Option<String>,
        /// Write one JSON file per semilattice into this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the exhaustive checks up to N_MAX elements
    Verify { n_max: usize },
    /// Hasse diagram in DOT
    ExportDot {
        input: String,
        /// Fill the nucleus vertices
        #[arg(long)]
        mark_nucleus: bool,
    },
}

enum CliError {
    Verification(String),
    Invalid(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Verification(m) | CliError::Invalid(m) | CliError::Io(m) => m,
        }
    }
}

impl From<semicon::Error> for CliError {
    fn from(e: semicon::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn load(input: &str) -> CliResult<SemilatticeTable> {
    if let Some(name) = input.strip_prefix("named:") {
        return Ok(named(name)?);
    }
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        fs::read_to_string(input).map_err(|e| CliError::Io(format!("{input}: {e}")))?
    };
    let raw: RawTable =
        serde_json::from_str(&text).map_err(|e| CliError::Io(format!("parse error: {e}")))?;
    Ok(SemilatticeTable::try_from(raw)?)
}

fn emit<T: Serialize>(value: &T) -> CliResult {
    let text = serde_json::to_string(value).map_err(|e| CliError::Io(e.to_string()))?;
    println!("{text}");
    Ok(())
}

/// `c·2^(n-6)` for the four extremal coefficients, when `k` equals one.
fn threshold_form(k: u64, n: usize) -> Option<String> {
    [32u64, 28, 26, 25]
        .into_iter()
        .find(|&c| equals_threshold(k, c, n))
        .map(|c| format!("{c}·2^({n}-6)"))
}

fn cmd_validate(cli: &Cli, input: &str) -> CliResult {
    let s = load(input)?;
    match cli.format {
        Format::Json => emit(&json!({"valid": true, "n": s.n()})),
        Format::Human => {
            println!("valid meet semilattice with {} elements", s.n());
            Ok(())
        }
    }
}

fn cmd_count(cli: &Cli, input: &str, method: Method) -> CliResult {
    let s = load(input)?;
    let pj = PartialJoinStructure::new(&s);
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    let mut skipped: BTreeMap<&str, String> = BTreeMap::new();
    let want = |m: Method| method == m || method == Method::All;
    let mut record = |name: &'static str, r: semicon::Result<u64>| -> CliResult {
        match r {
            Ok(k) => {
                counts.insert(name, k);
            }
            Err(e) if method == Method::All => {
                skipped.insert(name, e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
        Ok(())
    };
    if want(Method::Congruences) {
        record(
            "congruences",
            all_meet_congruences_bounded(&s, cli.max_congruence_n).map(|v| v.len() as u64),
        )?;
    }
    if want(Method::Subsets) {
        record("subsets", pj.count_join_closed_bruteforce())?;
    }
    if want(Method::InclExcl) {
        let r = if method == Method::InclExcl {
            Ok(pj.count(cli.max_ubtas))
        } else {
            pj.count_join_closed_ie_bounded(cli.max_ubtas)
        };
        record("incl-excl", r)?;
    }
    let mut values: Vec<u64> = counts.values().copied().collect();
    values.dedup();
    let agree = values.len() <= 1;
    let k = values.first().copied();
    match cli.format {
        Format::Json => emit(&json!({
            "n": s.n(),
            "counts": counts,
            "skipped": skipped,
            "agree": agree,
            "threshold_form": k.and_then(|k| threshold_form(k, s.n())),
        }))?,
        Format::Human => {
            for (name, value) in &counts {
                let form = threshold_form(*value, s.n())
                    .map(|f| format!(" = {f}"))
                    .unwrap_or_default();
                println!("{name}: {value}{form}");
            }
            for (name, why) in &skipped {
                println!("{name}: skipped ({why})");
            }
        }
    }
    if !agree {
        return Err(CliError::Verification(format!("counting methods disagree: {counts:?}")));
    }
    if counts.is_empty() {
        return Err(CliError::Invalid("no counting method applies within the bounds".into()));
    }
    Ok(())
}

fn cmd_classify(cli: &Cli, input: &str) -> CliResult {
    let s = load(input)?;
    let report = classify_with(&s, cli.max_ubtas);
    match cli.format {
        Format::Json => emit(&report)?,
        Format::Human => {
            println!("class:            {}", report.class);
            println!("elements:         {}", report.n);
            let form = threshold_form(report.congruence_count, report.n)
                .map(|f| format!(" = {f}"))
                .unwrap_or_default();
            println!("congruences:      {}{form}", report.congruence_count);
            if let Some(p) = report.predicted_count {
                println!("predicted:        {p}");
            }
            println!("ubtas:            {}", report.ubta_count);
            if let Some(nucleus) = report.nucleus {
                println!("nucleus:          {:?}", nucleus.to_vec());
            }
            if let Some(sk) = &report.skeleton {
                println!("skeleton size:    {}", sk.n());
            }
        }
    }
    if !report.prediction_holds() {
        return Err(CliError::Verification(format!(
            "class {} predicts {:?} congruences, counted {}",
            report.class, report.predicted_count, report.congruence_count
        )));
    }
    Ok(())
}

fn cmd_spectrum(cli: &Cli, n: usize, witnesses: bool, top: Option<usize>) -> CliResult {
    let tables = enumerate_semilattices_bounded(n, cli.max_n)?;
    let spectrum = Spectrum::from_tables(n, &tables, witnesses, DEFAULT_WITNESS_CAP);
    let top = top.map(|m| spectrum.top(m)).transpose()?;
    match cli.format {
        Format::Json => {
            let mut value = serde_json::to_value(&spectrum).map_err(|e| CliError::Io(e.to_string()))?;
            if let Some(top) = &top {
                value["top"] = json!(top
                    .iter()
                    .map(|(k, classes)| json!({"value": k, "classes": classes}))
                    .collect::<Vec<_>>());
            }
            emit(&value)?;
        }
        Format::Human => {
            let list: Vec<String> = spectrum.values.iter().map(u64::to_string).collect();
            println!("n = {n}: {{{}}}", list.join(", "));
            let rows: Vec<(u64, Vec<SemilatticeClass>)> = match &top {
                Some(top) => top.iter().map(|(k, c)| (*k, c.iter().copied().collect())).collect(),
                None => spectrum
                    .values
                    .iter()
                    .rev()
                    .map(|k| (*k, spectrum.classes[k].iter().copied().collect()))
                    .collect(),
            };
            for (k, classes) in rows {
                let names: Vec<&str> = classes.iter().map(|c| c.name()).collect();
                let form = threshold_form(k, n).map(|f| format!(" = {f}")).unwrap_or_default();
                println!(
                    "  {k}{form}: {} semilattice(s), classes {}",
                    spectrum.witness_totals[&k],
                    names.join(", ")
                );
                if witnesses {
                    for t in &spectrum.witnesses[&k] {
                        println!("    {}", serde_json::to_string(t).expect("serializable"));
                    }
                }
            }
        }
    }
    Ok(())
}

type Filter = Box<dyn Fn(&SemilatticeTable) -> bool>;

fn parse_filter(filter: &str) -> CliResult<Filter> {
    Ok(match filter {
        "tree" => Box::new(is_tree),
        "quasi-tree" => Box::new(is_quasi_tree),
        "lattice" => Box::new(is_lattice),
        other => {
            let name = other
                .strip_prefix("class:")
                .ok_or_else(|| CliError::Invalid(format!("unknown filter `{other}`")))?;
            let class = SemilatticeClass::parse(name)
                .ok_or_else(|| CliError::Invalid(format!("unknown class `{name}`")))?;
            Box::new(move |s| semicon::classify(s).class == class)
        }
    })
}

fn cmd_enumerate(cli: &Cli, n: usize, filter: Option<&str>, out: Option<&PathBuf>) -> CliResult {
    let keep = filter.map(parse_filter).transpose()?;
    let tables = enumerate_semilattices_bounded(n, cli.max_n)?;
    let selected: Vec<&SemilatticeTable> = tables
        .iter()
        .filter(|t| keep.as_ref().is_none_or(|k| k(t)))
        .collect();
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for (i, t) in selected.iter().enumerate() {
                let path = dir.join(format!("semilattice_{n}_{i:05}.json"));
                let text = serde_json::to_string(t).map_err(|e| CliError::Io(e.to_string()))?;
                fs::write(&path, text + "\n")?;
            }
            match cli.format {
                Format::Json => emit(&json!({"n": n, "written": selected.len(), "dir": dir}))?,
                Format::Human => println!("wrote {} file(s) to {}", selected.len(), dir.display()),
            }
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            for t in selected {
                let text = serde_json::to_string(t).map_err(|e| CliError::Io(e.to_string()))?;
                writeln!(lock, "{text}")?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(cli: &Cli, n_max: usize) -> CliResult {
    if n_max > cli.max_n {
        return Err(CliError::Invalid(format!(
            "verification size {n_max} exceeds the enumeration bound {}",
            cli.max_n
        )));
    }
    let results = verify_all(n_max)?;
    match cli.format {
        Format::Json => emit(&results)?,
        Format::Human => {
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                println!("[{tag}] {}. {}: {}", r.id, r.claim, r.detail);
            }
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::Verification(format!("{failed} claim(s) failed")));
    }
    Ok(())
}

fn cmd_export_dot(input: &str, mark_nucleus: bool) -> CliResult {
    let s = load(input)?;
    let marked = if mark_nucleus {
        semicon::nucleus(&s).unwrap_or(ElementSet::EMPTY)
    } else {
        ElementSet::EMPTY
    };
    print!("{}", dot::hasse_dot(&s, marked));
    Ok(())
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Validate { input } => cmd_validate(cli, input),
        Command::Count { input, method } => cmd_count(cli, input, *method),
        Command::Classify { input } => cmd_classify(cli, input),
        Command::Spectrum { n, witnesses, top } => cmd_spectrum(cli, *n, *witnesses, *top),
        Command::Enumerate { n, filter, out } => cmd_enumerate(cli, *n, filter.as_deref(), out.as_ref()),
        Command::Verify { n_max } => cmd_verify(cli, *n_max),
        Command::ExportDot { input, mark_nucleus } => cmd_export_dot(input, *mark_nucleus),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
