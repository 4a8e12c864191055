//! Result tables in the layout of the benchmark's published results, and
//! listings of failed predictions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;
use serde::{Deserialize, Serialize};

use crate::esm::{EvalMode, EvalRun, Hardness, LevelTally};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Number of columns in the TSV form.
pub const TSV_COLUMNS: [&str; 11] =
    ["label", "model", "train", "infer", "mode", "easy", "medium", "hard", "extra", "all", "total_count"];

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Cell {
    pub count: u64,
    pub matched: u64,
    /// matched / count at full precision, 0 when count is 0.
    pub accuracy: f64,
}

impl Cell {
    pub fn new(count: u64, matched: u64) -> Cell {
        let accuracy = if count == 0 { 0.0 } else { matched as f64 / count as f64 };
        Cell { count, matched, accuracy }
    }

    /// Three decimals, rounded half-up from the exact ratio; `-` for an
    /// empty cell.
    pub fn display(&self) -> String {
        if self.count == 0 {
            return String::from("-");
        }
        let thousandths = (2 * self.matched * 1000 + self.count) / (2 * self.count);
        format!("{}.{:03}", thousandths / 1000, thousandths % 1000)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    pub model: String,
    pub train: String,
    pub infer: String,
    pub easy: Cell,
    pub medium: Cell,
    pub hard: Cell,
    pub extra: Cell,
    pub all: Cell,
}

impl ReportRow {
    pub fn from_tally(label: &str, model: &str, train: &str, infer: &str, t: &LevelTally) -> ReportRow {
        let cell = |h: Hardness| Cell::new(t.count[h.index()], t.matched[h.index()]);
        ReportRow {
            label: label.into(),
            model: model.into(),
            train: train.into(),
            infer: infer.into(),
            easy: cell(Hardness::Easy),
            medium: cell(Hardness::Medium),
            hard: cell(Hardness::Hard),
            extra: cell(Hardness::Extra),
            all: Cell::new(t.total(), t.total_matched()),
        }
    }

    pub fn levels(&self) -> [&Cell; 4] {
        [&self.easy, &self.medium, &self.hard, &self.extra]
    }

    fn counts(&self) -> [u64; 5] {
        [self.easy.count, self.medium.count, self.hard.count, self.extra.count, self.all.count]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub schema_version: u32,
    pub mode: EvalMode,
    pub rows: Vec<ReportRow>,
}

/// An evaluation run with the labels of its report row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledRun {
    pub label: String,
    pub model: String,
    pub train: String,
    pub infer: String,
    pub mode: EvalMode,
    pub tally: LevelTally,
}

impl LabeledRun {
    pub fn new(label: &str, model: &str, train: &str, infer: &str, run: &EvalRun) -> LabeledRun {
        LabeledRun {
            label: label.into(),
            model: model.into(),
            train: train.into(),
            infer: infer.into(),
            mode: run.mode,
            tally: run.tally(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("runs use different evaluation modes ({0} and {1})")]
    MixedModes(&'static str, &'static str),
    #[error("malformed report JSON: {0}")]
    Malformed(String),
    #[error("unsupported report schema version {0}")]
    UnsupportedVersion(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Markdown,
    Json,
    Tsv,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Option<ReportFormat> {
        match s {
            "md" | "markdown" => Some(ReportFormat::Markdown),
            "json" => Some(ReportFormat::Json),
            "tsv" => Some(ReportFormat::Tsv),
            _ => None,
        }
    }
}

/// One row per run, in the order given.
pub fn build_report(runs: &[LabeledRun]) -> Result<EvalReport, ReportError> {
    let mode = runs.first().map(|r| r.mode).unwrap_or_default();
    if let Some(r) = runs.iter().find(|r| r.mode != mode) {
        return Err(ReportError::MixedModes(mode.name(), r.mode.name()));
    }
    let rows = runs.iter().map(|r| ReportRow::from_tally(&r.label, &r.model, &r.train, &r.infer, &r.tally)).collect();
    Ok(EvalReport { schema_version: REPORT_SCHEMA_VERSION, mode, rows })
}

pub fn emit(report: &EvalReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Markdown => emit_markdown(report),
        ReportFormat::Json => emit_json(report),
        ReportFormat::Tsv => emit_tsv(report),
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|").replace(['\r', '\n'], " ")
}

/// A Markdown table. Each group of consecutive rows with the same question
/// counts is preceded by a row holding those counts.
pub fn emit_markdown(report: &EvalReport) -> String {
    let mut out = String::new();
    let title = match report.mode {
        EvalMode::WithoutValues => "Exact set match without values",
        EvalMode::WithValues => "Exact set match with values",
    };
    let _ = writeln!(out, "{title}\n");
    out.push_str("| # | Model | Train | Infer | Easy | Medium | Hard | Extra | All |\n");
    out.push_str("|---|---|---|---|---:|---:|---:|---:|---:|\n");
    let mut prev: Option<[u64; 5]> = None;
    for row in &report.rows {
        let counts = row.counts();
        if prev != Some(counts) {
            let _ = writeln!(
                out,
                "|  |  |  | Count | {} | {} | {} | {} | {} |",
                counts[0], counts[1], counts[2], counts[3], counts[4]
            );
            prev = Some(counts);
        }
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            md_cell(&row.label),
            md_cell(&row.model),
            md_cell(&row.train),
            md_cell(&row.infer),
            row.easy.display(),
            row.medium.display(),
            row.hard.display(),
            row.extra.display(),
            row.all.display()
        );
    }
    out
}

pub fn emit_json(report: &EvalReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn tsv_cell(s: &str) -> String {
    s.replace(['\t', '\r', '\n'], " ")
}

pub fn emit_tsv(report: &EvalReport) -> String {
    let mut out = TSV_COLUMNS.join("\t");
    out.push('\n');
    for row in &report.rows {
        let fields = [
            tsv_cell(&row.label),
            tsv_cell(&row.model),
            tsv_cell(&row.train),
            tsv_cell(&row.infer),
            report.mode.name().to_string(),
            row.easy.display(),
            row.medium.display(),
            row.hard.display(),
            row.extra.display(),
            row.all.display(),
            row.all.count.to_string(),
        ];
        out.push_str(&fields.join("\t"));
        out.push('\n');
    }
    out
}

/// Reads a report written by [`emit_json`].
pub fn load_report(json: &str) -> Result<EvalReport, ReportError> {
    #[derive(Deserialize)]
    struct Version {
        schema_version: u32,
    }
    let v: Version = serde_json::from_str(json).map_err(|e| ReportError::Malformed(e.to_string()))?;
    if v.schema_version != REPORT_SCHEMA_VERSION {
        return Err(ReportError::UnsupportedVersion(v.schema_version));
    }
    serde_json::from_str(json).map_err(|e| ReportError::Malformed(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub index: usize,
    pub db_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub question: Option<String>,
    pub pred: String,
    pub gold: String,
    pub hardness: Option<Hardness>,
    pub failing_components: Vec<String>,
    /// Parse or schema error on either side, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Every unmatched record, in corpus order.
pub fn failure_listing(run: &EvalRun) -> Vec<FailureRecord> {
    run.records
        .iter()
        .filter(|r| !r.matched)
        .map(|r| FailureRecord {
            index: r.index,
            db_id: r.db_id.clone(),
            question: r.question.clone(),
            pred: r.pred.clone(),
            gold: r.gold.clone(),
            hardness: r.hardness,
            failing_components: r.failing_components(),
            error: r
                .gold_error
                .as_ref()
                .map(|e| format!("gold: {e}"))
                .or_else(|| r.pred_error.as_ref().map(|e| format!("pred: {e}"))),
        })
        .collect()
}

/// `Q:`/`P:`/`G:` blocks, one per failure.
pub fn emit_failures_text(failures: &[FailureRecord]) -> String {
    let mut out = String::new();
    for f in failures {
        let level = f.hardness.map_or("-", |h| h.name());
        let _ = writeln!(out, "#{} {} [{}] failing: {}", f.index, f.db_id, level, f.failing_components.join(", "));
        if let Some(q) = &f.question {
            let _ = writeln!(out, "Q: {q}");
        }
        let _ = writeln!(out, "P: {}", f.pred);
        let _ = writeln!(out, "G: {}", f.gold);
        if let Some(e) = &f.error {
            let _ = writeln!(out, "error: {e}");
        }
        out.push('\n');
    }
    out
}
