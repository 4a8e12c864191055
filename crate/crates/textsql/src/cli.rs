//! The `textsql` command line.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use textsql_core::corpus::extract_questions;
use textsql_core::esm::{GoldRecord, Hardness, LevelTally};
use textsql_core::report::{self, build_report, emit, failure_listing, EvalReport, LabeledRun, ReportFormat};
use textsql_core::sql::{canonicalize, parse_query};
use textsql_core::translate::{
    translate_corpus, DictionaryBackend, IdentityBackend, PlaceholderStyle, TranslateOptions, TranslationBackend,
};
use textsql_core::{classify_hardness, merge_bilingual, stats, EvalMode, EvalRun, Language, SchemaCatalog};

use crate::cache::CachedBackend;
use crate::io::{self, load_corpus, load_gold, load_predictions, load_schemas, save_corpus, CorpusFormat};
use crate::remote::{RemoteBackend, RemoteConfig};
use crate::service::{serve, AppState, ServiceConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FAILURES: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "textsql", version, about = "Multilingual text-to-SQL benchmark toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Question and character counts per corpus file.
    Stats(StatsArgs),
    /// Write the questions (one per line) or the paired CSV.
    Extract(ExtractArgs),
    /// Translate the questions of a corpus.
    Translate(TranslateArgs),
    /// Concatenate an English corpus and its translation.
    Merge(MergeArgs),
    /// Hardness level of every gold query.
    Classify(ClassifyArgs),
    /// Score predictions against gold queries with exact set match.
    Evaluate(EvaluateArgs),
    /// Combine evaluation runs into one results table.
    Report(ReportArgs),
    /// Serve the translation review API.
    ServeReview(ServeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    WithoutValues,
    WithValues,
}

impl From<ModeArg> for EvalMode {
    fn from(m: ModeArg) -> EvalMode {
        match m {
            ModeArg::WithoutValues => EvalMode::WithoutValues,
            ModeArg::WithValues => EvalMode::WithValues,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Md,
    Json,
    Tsv,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> ReportFormat {
        match f {
            FormatArg::Md => ReportFormat::Markdown,
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Tsv => ReportFormat::Tsv,
        }
    }
}

#[derive(Args, Debug)]
pub struct Common {
    /// Spider tables.json.
    #[arg(long)]
    pub tables: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "md")]
    pub format: FormatArg,
    /// Exit with status 3 when more records than this fail.
    #[arg(long)]
    pub max_failures: Option<usize>,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Also parse every SQL query (and resolve it against --tables if given).
    #[arg(long)]
    pub check_sql: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtractFormat {
    Txt,
    Csv,
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    pub corpus: PathBuf,
    #[arg(long = "as", value_enum, default_value = "txt")]
    pub kind: ExtractFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Identity,
    Dictionary,
    Remote,
}

#[derive(Args, Debug)]
pub struct TranslateArgs {
    pub corpus: PathBuf,
    #[arg(long, value_enum, default_value = "identity")]
    pub backend: BackendArg,
    /// `source<TAB>target` pairs for the dictionary backend.
    #[arg(long)]
    pub dictionary: Option<PathBuf>,
    /// TOML configuration of the remote backend.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// JSONL translation cache, created if missing.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, default_value = "en")]
    pub source: String,
    #[arg(long, default_value = "pt")]
    pub target: String,
    /// Characters per request; overrides the configuration file.
    #[arg(long)]
    pub max_chars: Option<usize>,
    /// Parallel requests; overrides the configuration file.
    #[arg(long)]
    pub concurrency: Option<usize>,
    /// Output corpus (.json or .csv).
    #[arg(long)]
    pub out: PathBuf,
    /// Where to write the per-record failures as JSON.
    #[arg(long)]
    pub failures: Option<PathBuf>,
    #[arg(long)]
    pub max_failures: Option<usize>,
}

#[derive(Args, Debug)]
pub struct MergeArgs {
    pub en: PathBuf,
    pub pt: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Gold file (`SQL<TAB>db_id` lines) or a corpus.
    pub input: PathBuf,
    /// Per-record levels as `index<TAB>level` lines.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct EvaluateArgs {
    /// Gold file (`SQL<TAB>db_id` lines) or a corpus.
    #[arg(long)]
    pub gold: PathBuf,
    /// One predicted SQL per line.
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long, value_enum, default_value = "without-values")]
    pub mode: ModeArg,
    #[arg(long, default_value = "1")]
    pub label: String,
    #[arg(long, default_value = "")]
    pub model: String,
    #[arg(long, default_value = "")]
    pub train: String,
    #[arg(long, default_value = "")]
    pub infer: String,
    /// Per-record results for `report`.
    #[arg(long)]
    pub run_out: Option<PathBuf>,
    /// Failed predictions as Q/P/G blocks.
    #[arg(long)]
    pub failures: Option<PathBuf>,
    /// Score on one thread.
    #[arg(long)]
    pub serial: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Run files from `evaluate --run-out`, or JSON reports.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Failed predictions of all runs as Q/P/G blocks.
    #[arg(long)]
    pub failures: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ServeArgs {
    /// Corpus under review (.json or .csv).
    pub corpus: PathBuf,
    /// Revision journal (JSONL), created if missing.
    #[arg(long)]
    pub journal: PathBuf,
    #[arg(long, default_value = "127.0.0.1:8080")]
    pub bind: String,
    /// Environment variable holding the bearer token.
    #[arg(long, default_value = "TEXTSQL_REVIEW_TOKEN")]
    pub token_env: String,
    #[arg(long)]
    pub tables: Option<PathBuf>,
    /// English corpus to show next to the translations.
    #[arg(long)]
    pub source: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    pub export_dir: PathBuf,
    /// Allowed browser origin for CORS; any when absent.
    #[arg(long)]
    pub cors_origin: Option<String>,
}

/// Saved output of `evaluate`, input of `report`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFile {
    pub label: String,
    pub model: String,
    pub train: String,
    pub infer: String,
    pub run: EvalRun,
}

impl RunFile {
    pub fn labeled(&self) -> LabeledRun {
        LabeledRun::new(&self.label, &self.model, &self.train, &self.infer, &self.run)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Results go to `out`; diagnostics to standard error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cmd {
        Command::Stats(a) => cmd_stats(a, out),
        Command::Extract(a) => cmd_extract(a, out),
        Command::Translate(a) => cmd_translate(a, out),
        Command::Merge(a) => cmd_merge(a, out),
        Command::Classify(a) => cmd_classify(a, out),
        Command::Evaluate(a) => cmd_evaluate(a, out),
        Command::Report(a) => cmd_report(a, out),
        Command::ServeReview(a) => cmd_serve(a),
    }
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> anyhow::Result<()> {
    match path {
        Some(p) => io::write_atomic(p, text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn over_limit(failures: usize, limit: Option<usize>) -> i32 {
    match limit {
        Some(max) if failures > max => {
            eprintln!("{failures} records failed, more than the allowed {max}");
            EXIT_FAILURES
        }
        _ => EXIT_OK,
    }
}

fn load_tables(path: Option<&Path>) -> anyhow::Result<Option<SchemaCatalog>> {
    path.map(|p| load_schemas(p).map_err(Into::into)).transpose()
}

fn render_rows(headers: &[&str], rows: &[Vec<String>], format: FormatArg) -> String {
    match format {
        FormatArg::Tsv => {
            let mut s = headers.join("\t") + "\n";
            for r in rows {
                s += &(r.join("\t") + "\n");
            }
            s
        }
        FormatArg::Md => {
            let mut s = format!("| {} |\n|{}\n", headers.join(" | "), "---|".repeat(headers.len()));
            for r in rows {
                s += &format!("| {} |\n", r.join(" | "));
            }
            s
        }
        FormatArg::Json => {
            let items: Vec<BTreeMap<&str, &String>> =
                rows.iter().map(|r| headers.iter().copied().zip(r.iter()).collect()).collect();
            serde_json::to_string_pretty(&items).expect("rows serialize") + "\n"
        }
    }
}

fn cmd_stats(a: StatsArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let schemas = load_tables(a.common.tables.as_deref())?;
    let mut rows = Vec::new();
    let mut bad_total = 0;
    for f in &a.files {
        let corpus = load_corpus(f)?;
        let s = stats(&corpus);
        let mut row = vec![f.display().to_string(), s.question_count.to_string(), s.character_count.to_string()];
        if a.check_sql {
            let mut bad = 0;
            for r in &corpus.records {
                let problem = match parse_query(&r.sql) {
                    Err(e) => Some(e.to_string()),
                    Ok(ast) => match schemas.as_ref().map(|c| c.get(&r.db_id).map(|s| canonicalize(&ast, s))) {
                        Some(Err(e)) => Some(e.to_string()),
                        Some(Ok(Err(e))) => Some(e.to_string()),
                        _ => None,
                    },
                };
                if let Some(p) = problem {
                    eprintln!("{}: {}: {p}", f.display(), r.id);
                    bad += 1;
                }
            }
            bad_total += bad;
            row.push(bad.to_string());
        }
        rows.push(row);
    }
    let mut headers = vec!["file", "questions", "characters"];
    if a.check_sql {
        headers.push("sql_errors");
    }
    write_output(a.common.out.as_deref(), &render_rows(&headers, &rows, a.common.format), out)?;
    Ok(over_limit(bad_total, a.common.max_failures))
}

fn cmd_extract(a: ExtractArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let corpus = load_corpus(&a.corpus)?;
    let text = match a.kind {
        ExtractFormat::Txt => extract_questions(&corpus),
        ExtractFormat::Csv => io::pairs_csv_string(&corpus),
    };
    write_output(a.out.as_deref(), &text, out)?;
    Ok(EXIT_OK)
}

fn parse_lang(s: &str) -> anyhow::Result<Language> {
    Language::parse(s).with_context(|| format!("unknown language {s} (expected en or pt)"))
}

fn output_format(path: &Path) -> anyhow::Result<CorpusFormat> {
    CorpusFormat::from_path(path).with_context(|| format!("{}: output must end in .json or .csv", path.display()))
}

fn cmd_translate(a: TranslateArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let corpus = load_corpus(&a.corpus)?;
    let out_format = output_format(&a.out)?;
    let mut opts = TranslateOptions {
        source: parse_lang(&a.source)?,
        target: parse_lang(&a.target)?,
        ..TranslateOptions::default()
    };
    let mut backend: Box<dyn TranslationBackend> = match a.backend {
        BackendArg::Identity => Box::new(IdentityBackend),
        BackendArg::Dictionary => {
            let path = a.dictionary.as_deref().context("--backend dictionary needs --dictionary")?;
            let text = io::read_utf8(path)?;
            Box::new(DictionaryBackend::from_tsv(&text, PlaceholderStyle::default())?)
        }
        BackendArg::Remote => {
            let path = a.config.as_deref().context("--backend remote needs --config")?;
            let mut cfg = RemoteConfig::load(path)?;
            if let Some(c) = a.concurrency {
                cfg.concurrency = c;
            }
            opts.max_chars = cfg.max_chars;
            Box::new(RemoteBackend::new(cfg)?)
        }
    };
    if let Some(m) = a.max_chars {
        opts.max_chars = m;
    }
    if let Some(cache) = &a.cache {
        let cached = CachedBackend::open(backend, cache).with_context(|| cache.display().to_string())?;
        backend = Box::new(cached);
    }
    let outcome = translate_corpus(&corpus, backend.as_mut(), &opts)?;
    for w in &outcome.warnings {
        log::warn!("{}: translated without value protection: {}", w.id, w.cause);
    }
    for f in &outcome.failures {
        eprintln!("{}: {}", f.id, f.cause);
    }
    save_corpus(&outcome.corpus, &a.out, out_format)?;
    if let Some(p) = &a.failures {
        io::write_atomic(p, (serde_json::to_string_pretty(&outcome.failures)? + "\n").as_bytes())?;
    }
    writeln!(
        out,
        "translated {} of {} records, {} failed, {} without value protection",
        outcome.translated,
        corpus.len(),
        outcome.failures.len(),
        outcome.warnings.len()
    )?;
    Ok(over_limit(outcome.failures.len(), a.max_failures))
}

fn cmd_merge(a: MergeArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let en = load_corpus(&a.en)?;
    let pt = load_corpus(&a.pt)?;
    let format = output_format(&a.out)?;
    let merged = merge_bilingual(&en, &pt)?;
    save_corpus(&merged, &a.out, format)?;
    writeln!(out, "{} records", merged.len())?;
    Ok(EXIT_OK)
}

fn tally_rows(t: &LevelTally) -> (Vec<&'static str>, Vec<String>) {
    let mut headers: Vec<&str> = Hardness::ALL.iter().map(|h| h.name()).collect();
    headers.push("all");
    let mut row: Vec<String> = t.count.iter().map(|c| c.to_string()).collect();
    row.push(t.total().to_string());
    (headers, row)
}

fn cmd_classify(a: ClassifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let gold = load_gold(&a.input)?;
    let mut tally = LevelTally::default();
    let mut labels = String::new();
    let mut failures = 0;
    for (i, g) in gold.iter().enumerate() {
        match parse_query(&g.sql) {
            Ok(ast) => {
                let h = classify_hardness(&ast);
                tally.add(h, false);
                labels += &format!("{i}\t{}\n", h.name());
            }
            Err(e) => {
                eprintln!("record {i}: {e}");
                labels += &format!("{i}\terror\n");
                failures += 1;
            }
        }
    }
    if let Some(p) = &a.labels {
        io::write_atomic(p, labels.as_bytes())?;
    }
    let (headers, row) = tally_rows(&tally);
    write_output(a.common.out.as_deref(), &render_rows(&headers, &[row], a.common.format), out)?;
    Ok(over_limit(failures, a.common.max_failures))
}

fn cmd_evaluate(a: EvaluateArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let tables = a.common.tables.as_deref().context("evaluate needs --tables")?;
    let schemas = load_schemas(tables)?;
    let gold: Vec<GoldRecord> = load_gold(&a.gold)?;
    let pred = load_predictions(&a.pred)?;
    let mode = EvalMode::from(a.mode);
    let run = if a.serial {
        textsql_core::evaluate_corpus(&gold, &pred, &schemas, mode)?
    } else {
        crate::evaluate_parallel(&gold, &pred, &schemas, mode)?
    };
    let file = RunFile { label: a.label, model: a.model, train: a.train, infer: a.infer, run };
    if let Some(p) = &a.run_out {
        io::write_atomic(p, (serde_json::to_string(&file)? + "\n").as_bytes())?;
    }
    let failures = failure_listing(&file.run);
    if let Some(p) = &a.failures {
        io::write_atomic(p, report::emit_failures_text(&failures).as_bytes())?;
    }
    let report = build_report(&[file.labeled()])?;
    write_output(a.common.out.as_deref(), &emit(&report, a.common.format.into()), out)?;
    let unscored = file.run.records.iter().filter(|r| r.gold_error.is_some() || r.pred_error.is_some()).count();
    Ok(over_limit(unscored, a.common.max_failures))
}

fn cmd_report(a: ReportArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let mut runs: Vec<LabeledRun> = Vec::new();
    let mut rows_from_reports: Vec<(usize, EvalReport)> = Vec::new();
    let mut failures = Vec::new();
    let mut unscored = 0;
    for p in &a.inputs {
        let text = io::read_utf8(p)?;
        let value: serde_json::Value =
            serde_json::from_str(&text).with_context(|| format!("{}: not JSON", p.display()))?;
        if value.get("schema_version").is_some() {
            let r = report::load_report(&text).with_context(|| p.display().to_string())?;
            rows_from_reports.push((runs.len(), r));
        } else {
            let file: RunFile =
                serde_json::from_value(value).with_context(|| format!("{}: not a run file", p.display()))?;
            unscored += file.run.gold_failures();
            failures.extend(failure_listing(&file.run));
            runs.push(file.labeled());
        }
    }
    let mut report = build_report(&runs)?;
    let mut mode = runs.first().map(|r| r.mode);
    for (_, r) in &rows_from_reports {
        match mode {
            Some(m) if m != r.mode => {
                bail!("inputs use different evaluation modes ({} and {})", m.name(), r.mode.name())
            }
            _ => mode = Some(r.mode),
        }
    }
    report.mode = mode.unwrap_or_default();
    for (at, r) in rows_from_reports.into_iter().rev() {
        for (k, row) in r.rows.into_iter().enumerate() {
            report.rows.insert(at + k, row);
        }
    }
    if let Some(p) = &a.failures {
        io::write_atomic(p, report::emit_failures_text(&failures).as_bytes())?;
    }
    write_output(a.common.out.as_deref(), &emit(&report, a.common.format.into()), out)?;
    Ok(over_limit(unscored, a.common.max_failures))
}

fn is_loopback(bind: &str) -> bool {
    bind.parse::<std::net::SocketAddr>().map(|a| a.ip().is_loopback()).unwrap_or(bind.starts_with("localhost:"))
}

fn cmd_serve(a: ServeArgs) -> anyhow::Result<i32> {
    let token = std::env::var(&a.token_env).ok().filter(|t| !t.is_empty());
    if token.is_none() {
        if !is_loopback(&a.bind) {
            bail!("{} is not set; refusing to serve on {} without a token", a.token_env, a.bind);
        }
        log::warn!("{} is not set; serving without authentication", a.token_env);
    }
    let cfg = ServiceConfig {
        corpus_path: a.corpus,
        journal_path: a.journal,
        export_dir: a.export_dir,
        schemas: load_tables(a.tables.as_deref())?,
        source_path: a.source,
        token,
        cors_origin: a.cors_origin,
    };
    let state = Arc::new(AppState::load(cfg)?);
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(serve(state, &a.bind))?;
    Ok(EXIT_OK)
}
