//! Command-line front end: `compute`, `verify` and `search`.
//!
//! Exit codes: 0 ok (or inconclusive search), 1 verification failure,
//! 2 usage or parse error, 3 domain error, 4 capacity error.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::corpus::{
    csv_header, csv_row, search_counterexample, verify_corpus, EnumerationPlan, SearchReport, VerifySummary,
};
use crate::error::Error;
use crate::hdepth::{hdepth_report, BetaTable, HdepthReport};
use crate::ideal::parse_ideal;
use crate::theorems::{check_all, reproduce_proof_tables, Predicate, TableReport};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownPredicate(_) => EXIT_USAGE,
        Error::Domain(_) | Error::Containment(_) => EXIT_DOMAIN,
        Error::Capacity(_) | Error::Range { .. } => EXIT_CAPACITY,
    }
}

#[derive(Debug, Parser)]
#[command(name = "hdepth", version, about = "Hilbert depth of squarefree monomial ideals and their quotients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// α-vectors, β-triangles and both Hilbert depths of one ideal.
    Compute(ComputeArgs),
    /// Run the check suite over an exhaustive or sampled corpus.
    Verify(VerifyArgs),
    /// Look for instances violating one check.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit timestamps and timings.
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(short = 'n')]
    pub n: u32,
    /// Generators, e.g. `x1*x2, x2*x3`; `0` is the zero ideal and `1` the unit ideal.
    #[arg(required_unless_present = "input", conflicts_with = "input")]
    pub ideal: Option<String>,
    /// Read the generator list from a file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(short = 'n')]
    pub n: Option<u32>,
    /// Inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub n_range: Option<(u32, u32)>,
    #[arg(long, conflicts_with = "random")]
    pub exhaustive: bool,
    #[arg(long)]
    pub random: bool,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Regenerate the auxiliary value tables and diff them.
    #[arg(long)]
    pub tables: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// One of: teo1, lem, beta-q6, lemma79, main, kruskal-katona, beta47-bound.
    #[arg(long)]
    pub predicate: String,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// Echo of the resolved invocation, embedded in JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_range: Option<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    pub workers: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicate: Option<String>,
    pub tables: bool,
    pub format: Format,
    pub deterministic: bool,
}

impl RunConfig {
    fn new(command: &'static str, output: &OutputArgs) -> Self {
        RunConfig {
            command,
            n: None,
            n_range: None,
            ideal: None,
            mode: None,
            seed: None,
            samples: None,
            workers: 1,
            predicate: None,
            tables: false,
            format: output.format,
            deterministic: output.deterministic,
        }
    }
}

/// Failure of a command, already mapped to an exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { code: exit_code(&e), message: e.to_string() }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError { code: EXIT_USAGE, message: format!("i/o error: {e}") }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: EXIT_USAGE, message: msg.into() }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Search(a) => cmd_search(a),
    }
}

fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn envelope(cfg: &RunConfig, results: Value) -> Value {
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": cfg.command,
        "config": cfg,
        "results": results,
    });
    if !cfg.deterministic {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        v["generated_at_unix"] = json!(secs);
    }
    v
}

fn write_json(w: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *w, v).map_err(|e| usage(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(T::to_string).collect()
}

fn triangle_json(t: &[BetaTable]) -> Vec<Vec<String>> {
    t.iter().map(|b| strings(b.values())).collect()
}

/// JSON form of a report; α and β entries are decimal strings.
pub fn report_json(r: &HdepthReport) -> Value {
    json!({
        "n": r.n(),
        "ideal": r.ideal.to_string(),
        "principal": r.principal,
        "contained_in_m2": r.contained_in_m2,
        "hdepth_quotient": r.hdepth_quotient,
        "hdepth_ideal": r.hdepth_ideal,
        "alpha_quotient": strings(r.alpha_quotient.counts()),
        "alpha_ideal": strings(r.alpha_ideal.counts()),
        "beta_triangle_quotient": triangle_json(&r.beta_triangle_quotient),
        "beta_triangle_ideal": triangle_json(&r.beta_triangle_ideal),
    })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn report_text(r: &HdepthReport) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut s = String::new();
    let _ = writeln!(s, "ideal            {}  (n = {})", r.ideal, r.n());
    let _ = writeln!(s, "principal        {}", yn(r.principal));
    let _ = writeln!(s, "contained in m^2 {}", yn(r.contained_in_m2));
    let _ = writeln!(s, "hdepth(S/I)      {}", r.hdepth_quotient);
    let _ = writeln!(s, "hdepth(I)        {}", r.hdepth_ideal);
    let _ = writeln!(s, "alpha(S/I)       {}", join(r.alpha_quotient.counts()));
    let _ = writeln!(s, "alpha(I)         {}", join(r.alpha_ideal.counts()));
    for (label, tri, h) in [
        ("S/I", &r.beta_triangle_quotient, r.hdepth_quotient),
        ("I", &r.beta_triangle_ideal, r.hdepth_ideal),
    ] {
        let _ = writeln!(s, "beta triangle of {label} (row d: beta_0^d .. beta_d^d)");
        for t in tri {
            let mark = if t.q() == h { "  <- hdepth" } else { "" };
            let _ = writeln!(s, "  d={:<2} {}{mark}", t.q(), join(t.values()));
        }
    }
    s
}

fn read_ideal_text(a: &ComputeArgs) -> Result<String, CliError> {
    match (&a.ideal, &a.input) {
        (Some(t), _) => Ok(t.clone()),
        (None, Some(p)) => Ok(std::fs::read_to_string(p)?),
        (None, None) => Err(usage("missing ideal")),
    }
}

pub fn cmd_compute(a: ComputeArgs) -> Result<i32, CliError> {
    let text = read_ideal_text(&a)?;
    let ideal = parse_ideal(&text, a.n)?;
    let report = hdepth_report(&ideal)?;
    let mut cfg = RunConfig::new("compute", &a.output);
    cfg.n = Some(a.n);
    cfg.ideal = Some(ideal.to_string());
    let mut w = open_output(&a.output.out)?;
    match a.output.format {
        Format::Json => write_json(&mut *w, &envelope(&cfg, report_json(&report)))?,
        Format::Text => w.write_all(report_text(&report).as_bytes())?,
        Format::Csv => {
            w.write_all(csv_header(report.n() as usize).as_bytes())?;
            w.write_all(csv_row(&report, report.n() as usize, &check_all(&report)).as_bytes())?;
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}

/// Resolves corpus flags into a plan. Exhaustive `-n N` covers every `n` in `1..=N`.
fn build_plan(c: &CorpusArgs, cfg: &mut RunConfig, require: bool) -> Result<Option<EnumerationPlan>, CliError> {
    let range = match (c.n, c.n_range) {
        (Some(_), Some(_)) => return Err(usage("use either -n or --n-range, not both")),
        (Some(n), None) => Some(if c.exhaustive { (1, n) } else { (n, n) }),
        (None, r) => r,
    };
    let Some((lo, hi)) = range else {
        if require || c.exhaustive || c.random || c.samples.is_some() {
            return Err(usage("a corpus needs -n or --n-range"));
        }
        return Ok(None);
    };
    let workers = c.workers as usize;
    let plan = if c.exhaustive {
        if c.samples.is_some() {
            return Err(usage("--samples applies to random mode only"));
        }
        EnumerationPlan::exhaustive(lo, hi).with_workers(workers)
    } else {
        let seed = c.seed.ok_or_else(|| usage("random mode requires --seed"))?;
        let samples = c.samples.ok_or_else(|| usage("random mode requires --samples"))?;
        EnumerationPlan::random(lo, hi, samples, seed).with_workers(workers)
    };
    cfg.n_range = Some([lo, hi]);
    cfg.mode = Some(if c.exhaustive { "exhaustive" } else { "random" });
    cfg.seed = plan.seed;
    cfg.samples = c.samples;
    cfg.workers = c.workers;
    plan.validate()?;
    Ok(Some(plan))
}

fn verify_text(s: &VerifySummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instances: {}", s.instances);
    let _ = writeln!(out, "{:<16} {:>12} {:>12} {:>8}", "check", "applicable", "passed", "failed");
    for c in &s.checkers {
        let note = if c.vacuous { "  (never applicable)" } else { "" };
        let _ = writeln!(out, "{:<16} {:>12} {:>12} {:>8}{note}", c.name, c.applicable, c.passed, c.failed);
    }
    let g = s.lem_outside_gate;
    let _ = writeln!(
        out,
        "lem outside its gate: {} excluded, {} agree, {} disagree",
        g.excluded, g.agree, g.disagree
    );
    let _ = writeln!(out, "hdepth(S/I) histogram (n/q: count):");
    for (k, v) in &s.hdepth_quotient_histogram {
        let _ = writeln!(out, "  {k}: {v}");
    }
    for c in s.checkers.iter().filter(|c| !c.witnesses.is_empty()) {
        let _ = writeln!(out, "witnesses for {}:", c.name);
        for w in &c.witnesses {
            let _ = writeln!(out, "  n={} [{}]: {}", w.n, w.ideal, w.violated);
        }
    }
    let _ = writeln!(out, "failures: {}", s.failures);
    out
}

fn tables_text(t: &TableReport) -> String {
    let mut out = format!("proof tables: {} cells checked, {} diffs\n", t.cells_checked, t.diffs.len());
    for d in &t.diffs {
        let _ = writeln!(out, "  {} / {} at x={}: printed {}, computed {}", d.source, d.label, d.x, d.printed, d.computed);
    }
    out
}

pub fn cmd_verify(a: VerifyArgs) -> Result<i32, CliError> {
    let mut cfg = RunConfig::new("verify", &a.output);
    cfg.tables = a.tables;
    let plan = build_plan(&a.corpus, &mut cfg, !a.tables)?;
    let tables = a.tables.then(reproduce_proof_tables);

    let mut w = open_output(&a.output.out)?;
    let summary = match &plan {
        None => None,
        Some(plan) if a.output.format == Format::Csv => {
            w.write_all(csv_header(plan.n_max as usize).as_bytes())?;
            let mut io_err = None;
            let mut sink = |rows: &str| {
                if io_err.is_none() {
                    if let Err(e) = w.write_all(rows.as_bytes()) {
                        io_err = Some(e);
                    }
                }
            };
            let s = verify_corpus(plan, Some(&mut sink))?;
            if let Some(e) = io_err {
                return Err(e.into());
            }
            Some(s)
        }
        Some(plan) => Some(verify_corpus(plan, None)?),
    };

    let failed = summary.as_ref().is_some_and(|s| s.failures > 0)
        || tables.as_ref().is_some_and(|t| !t.diffs.is_empty());
    match a.output.format {
        Format::Json => {
            let mut results = serde_json::Map::new();
            if let Some(s) = &summary {
                results.insert("corpus".into(), serde_json::to_value(s).expect("serializable"));
            }
            if let Some(t) = &tables {
                results.insert("tables".into(), serde_json::to_value(t).expect("serializable"));
            }
            results.insert("passed".into(), json!(!failed));
            write_json(&mut *w, &envelope(&cfg, Value::Object(results)))?;
        }
        Format::Text => {
            if let Some(s) = &summary {
                w.write_all(verify_text(s).as_bytes())?;
            }
            if let Some(t) = &tables {
                w.write_all(tables_text(t).as_bytes())?;
            }
        }
        Format::Csv => {
            if plan.is_none() {
                if let Some(t) = &tables {
                    writeln!(w, "source,label,x,printed,computed")?;
                    for d in &t.diffs {
                        writeln!(w, "\"{}\",\"{}\",{},{},{}", d.source, d.label, d.x, d.printed, d.computed)?;
                    }
                }
            }
        }
    }
    w.flush()?;
    if failed && a.output.format == Format::Csv {
        if let Some(s) = &summary {
            eprint!("{}", verify_text(s));
        }
    }
    Ok(if failed { EXIT_VERIFY_FAILED } else { EXIT_OK })
}

fn search_json(r: &SearchReport, deterministic: bool) -> Value {
    let mut v = serde_json::to_value(r).expect("serializable");
    if deterministic {
        if let Some(o) = v.as_object_mut() {
            o.remove("elapsed_ms");
        }
    }
    v
}

pub fn cmd_search(a: SearchArgs) -> Result<i32, CliError> {
    let predicate: Predicate = a.predicate.parse()?;
    let mut cfg = RunConfig::new("search", &a.output);
    cfg.predicate = Some(predicate.name().to_string());
    let plan = build_plan(&a.corpus, &mut cfg, true)?.expect("required");
    let report = search_counterexample(&plan, predicate)?;

    let mut w = open_output(&a.output.out)?;
    match a.output.format {
        Format::Json => write_json(&mut *w, &envelope(&cfg, search_json(&report, a.output.deterministic)))?,
        Format::Text => {
            writeln!(w, "predicate: {}", report.predicate)?;
            writeln!(w, "status: {}", serde_json::to_value(report.status).expect("enum").as_str().unwrap_or(""))?;
            writeln!(w, "scanned: {}  applicable: {}  violations: {}", report.instances_scanned, report.applicable, report.violations)?;
            if let Some(seed) = report.seed {
                writeln!(w, "seed: {seed}")?;
            }
            if let (Some(ms), false) = (report.elapsed_ms, a.output.deterministic) {
                writeln!(w, "elapsed: {ms} ms")?;
            }
            for x in &report.witnesses {
                writeln!(w, "witness n={} [{}]: {}", x.n, x.ideal, x.violated)?;
            }
        }
        Format::Csv => {
            writeln!(w, "n,gens,hdepth_q,hdepth_i,violated")?;
            for x in &report.witnesses {
                writeln!(w, "{},\"{}\",{},{},\"{}\"", x.n, x.ideal, x.hdepth_quotient, x.hdepth_ideal, x.violated)?;
            }
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}
