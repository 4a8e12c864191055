//! Corpus, schema, gold and prediction files.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};
use textsql_core::corpus::{corpus_from_pairs, extract_questions, pair_rows, PairRow};
use textsql_core::esm::GoldRecord;
use textsql_core::schema::{parse_tables_json, SchemaError};
use textsql_core::{Corpus, ExampleRecord, Language, OriginFile, SchemaCatalog, Status};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: not valid UTF-8 (byte {offset})")]
    InvalidUtf8 { path: PathBuf, offset: usize },
    #[error("{path}: malformed JSON: {message}")]
    MalformedJson { path: PathBuf, message: String },
    #[error("{path}: record {index} has no string field `{name}`")]
    MissingField { path: PathBuf, name: &'static str, index: usize },
    #[error("{path}: malformed CSV: {message}")]
    MalformedCsv { path: PathBuf, message: String },
    #[error("{path}: line {line}: {message}")]
    BadLine { path: PathBuf, line: usize, message: String },
    #[error("{path}: {source}")]
    Schema { path: PathBuf, source: SchemaError },
    #[error("{0}: unknown corpus format (expected .json or .csv)")]
    UnknownFormat(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    SpiderJson,
    Csv,
}

impl CorpusFormat {
    pub fn parse(s: &str) -> Option<CorpusFormat> {
        match s {
            "spider-json" | "json" => Some(CorpusFormat::SpiderJson),
            "csv" => Some(CorpusFormat::Csv),
            _ => None,
        }
    }

    pub fn from_path(path: &Path) -> Option<CorpusFormat> {
        match path.extension()?.to_str()? {
            "json" => Some(CorpusFormat::SpiderJson),
            "csv" => Some(CorpusFormat::Csv),
            _ => None,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::Io { path: path.to_path_buf(), source }
}

/// Reads a file that must be UTF-8.
pub fn read_utf8(path: &Path) -> Result<String, IoError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    String::from_utf8(bytes)
        .map_err(|e| IoError::InvalidUtf8 { path: path.to_path_buf(), offset: e.utf8_error().valid_up_to() })
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), IoError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(contents).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

fn origin_of(path: &Path) -> OriginFile {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("corpus");
    OriginFile::from_stem(stem)
}

/// Loads a Spider-format JSON array. Ids are `{file stem}-{index}` unless the
/// records carry their own (as files written by [`save_corpus`] do).
pub fn load_spider(path: &Path) -> Result<Corpus, IoError> {
    let text = read_utf8(path)?;
    parse_spider(&text, path, origin_of(path))
}

/// Regenerated from the question on save.
const DERIVED_FIELDS: [&str; 1] = ["question_toks"];

pub fn parse_spider(text: &str, path: &Path, origin: OriginFile) -> Result<Corpus, IoError> {
    let malformed = |message: String| IoError::MalformedJson { path: path.to_path_buf(), message };
    let value: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    let Value::Array(items) = value else {
        return Err(malformed("expected a JSON array of objects".into()));
    };
    let mut records = Vec::with_capacity(items.len());
    for (index, item) in items.into_iter().enumerate() {
        let Value::Object(mut obj) = item else {
            return Err(malformed(format!("element {index} is not an object")));
        };
        let mut take = |name: &'static str| match obj.remove(name) {
            Some(Value::String(s)) => Ok(s),
            _ => Err(IoError::MissingField { path: path.to_path_buf(), name, index }),
        };
        let question = take("question")?;
        let sql = take("query")?;
        let db_id = take("db_id")?;
        let opt = |obj: &mut Map<String, Value>, name: &str| match obj.remove(name) {
            Some(Value::String(s)) => Some(s),
            _ => None,
        };
        let origin_file = opt(&mut obj, "origin_file").map(OriginFile::from).unwrap_or_else(|| origin.clone());
        let id = opt(&mut obj, "id").unwrap_or_else(|| ExampleRecord::make_id(&origin_file, index));
        let language = opt(&mut obj, "language").and_then(|l| Language::parse(&l)).unwrap_or(Language::En);
        let status = opt(&mut obj, "status").and_then(|s| Status::parse(&s)).unwrap_or(Status::Original);
        for f in DERIVED_FIELDS {
            obj.remove(f);
        }
        let extra: BTreeMap<String, String> = obj.into_iter().map(|(k, v)| (k, v.to_string())).collect();
        records.push(ExampleRecord { id, db_id, question, language, sql, origin_file, status, extra });
    }
    Ok(Corpus::new(records, &path.display().to_string()))
}

/// Splits a question into word and punctuation tokens.
pub fn question_tokens(question: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut word = String::new();
    let chars: Vec<char> = question.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        let next_alnum = chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
        let inner = match c {
            '\'' | '-' => !word.is_empty() && next_alnum,
            '.' | ',' => !word.is_empty() && word.chars().all(|w| w.is_ascii_digit()) && next_alnum,
            _ => false,
        };
        if c.is_alphanumeric() || c == '_' || inner {
            word.push(c);
            continue;
        }
        if !word.is_empty() {
            out.push(std::mem::take(&mut word));
        }
        if !c.is_whitespace() {
            out.push(c.to_string());
        }
    }
    if !word.is_empty() {
        out.push(word);
    }
    out
}

fn record_to_json(r: &ExampleRecord) -> Value {
    let mut obj = Map::new();
    for (k, raw) in &r.extra {
        if let Ok(v) = serde_json::from_str::<Value>(raw) {
            obj.insert(k.clone(), v);
        }
    }
    obj.insert("db_id".into(), Value::String(r.db_id.clone()));
    obj.insert("query".into(), Value::String(r.sql.clone()));
    obj.insert("question".into(), Value::String(r.question.clone()));
    obj.insert(
        "question_toks".into(),
        Value::Array(question_tokens(&r.question).into_iter().map(Value::String).collect()),
    );
    obj.insert("id".into(), Value::String(r.id.clone()));
    obj.insert("language".into(), Value::String(r.language.code().into()));
    obj.insert("status".into(), Value::String(r.status.name().into()));
    obj.insert("origin_file".into(), Value::String(r.origin_file.name().into()));
    Value::Object(obj)
}

/// Spider-shaped JSON, pretty-printed, non-ASCII written as UTF-8.
pub fn spider_json_string(corpus: &Corpus) -> String {
    let items: Vec<Value> = corpus.records.iter().map(record_to_json).collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(items)).expect("json serializes");
    s.push('\n');
    s
}

/// Paired CSV with header `id,db_id,sql,question_en,question_pt`.
pub fn pairs_csv_string(corpus: &Corpus) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let rows = pair_rows(corpus);
    if rows.is_empty() {
        w.write_record(["id", "db_id", "sql", "question_en", "question_pt"]).expect("in-memory write");
    }
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of UTF-8 strings")
}

pub fn save_corpus(corpus: &Corpus, path: &Path, format: CorpusFormat) -> Result<(), IoError> {
    let text = match format {
        CorpusFormat::SpiderJson => spider_json_string(corpus),
        CorpusFormat::Csv => pairs_csv_string(corpus),
    };
    write_atomic(path, text.as_bytes())
}

pub fn parse_pairs_csv(text: &str, path: &Path) -> Result<Corpus, IoError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for row in r.deserialize::<PairRow>() {
        rows.push(row.map_err(|e| IoError::MalformedCsv { path: path.to_path_buf(), message: e.to_string() })?);
    }
    let origin = rows
        .first()
        .and_then(|r| r.id.rsplit_once('-').map(|(o, _)| OriginFile::from_stem(o)))
        .unwrap_or_else(|| origin_of(path));
    Ok(corpus_from_pairs(&rows, origin, &path.display().to_string()))
}

/// Loads a corpus, choosing the format from the extension.
pub fn load_corpus(path: &Path) -> Result<Corpus, IoError> {
    match CorpusFormat::from_path(path) {
        Some(CorpusFormat::SpiderJson) => load_spider(path),
        Some(CorpusFormat::Csv) => parse_pairs_csv(&read_utf8(path)?, path),
        None => Err(IoError::UnknownFormat(path.to_path_buf())),
    }
}

pub fn write_questions(corpus: &Corpus, path: &Path) -> Result<(), IoError> {
    write_atomic(path, extract_questions(corpus).as_bytes())
}

pub fn load_schemas(path: &Path) -> Result<SchemaCatalog, IoError> {
    let text = read_utf8(path)?;
    parse_tables_json(&text).map_err(|source| IoError::Schema { path: path.to_path_buf(), source })
}

/// Gold records from a `SQL<TAB>db_id` file, or from a Spider JSON corpus.
pub fn load_gold(path: &Path) -> Result<Vec<GoldRecord>, IoError> {
    if CorpusFormat::from_path(path).is_some() {
        let corpus = load_corpus(path)?;
        return Ok(corpus
            .records
            .into_iter()
            .map(|r| GoldRecord { sql: r.sql, db_id: r.db_id, question: Some(r.question) })
            .collect());
    }
    let text = read_utf8(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (sql, db_id) = line.rsplit_once('\t').ok_or_else(|| IoError::BadLine {
            path: path.to_path_buf(),
            line: i + 1,
            message: "expected `SQL<TAB>db_id`".into(),
        })?;
        out.push(GoldRecord::new(sql.trim(), db_id.trim()));
    }
    Ok(out)
}

/// One SQL per line. Blank lines are kept as empty predictions so that
/// alignment with the gold file holds; a final newline does not add one.
pub fn load_predictions(path: &Path) -> Result<Vec<String>, IoError> {
    let text = read_utf8(path)?;
    Ok(text.lines().map(|l| l.trim_end_matches('\r').to_string()).collect())
}

pub fn gold_file_string(gold: &[GoldRecord]) -> String {
    let mut s = String::new();
    for g in gold {
        s.push_str(&g.sql.replace(['\t', '\n', '\r'], " "));
        s.push('\t');
        s.push_str(&g.db_id);
        s.push('\n');
    }
    s
}
