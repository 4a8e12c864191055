//! Question/SQL records, statistics and the bilingual merge.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    #[default]
    En,
    Pt,
}

impl Language {
    pub fn code(self) -> &'static str {
        match self {
            Language::En => "en",
            Language::Pt => "pt",
        }
    }

    pub fn parse(s: &str) -> Option<Language> {
        match s.to_ascii_lowercase().as_str() {
            "en" => Some(Language::En),
            "pt" => Some(Language::Pt),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub enum OriginFile {
    Dev,
    TrainSpider,
    TrainOthers,
    Other(String),
}

impl OriginFile {
    pub fn name(&self) -> &str {
        match self {
            OriginFile::Dev => "dev",
            OriginFile::TrainSpider => "train_spider",
            OriginFile::TrainOthers => "train_others",
            OriginFile::Other(s) => s,
        }
    }

    /// Origin from a file stem such as `dev` or `train_spider`.
    pub fn from_stem(stem: &str) -> OriginFile {
        OriginFile::from(String::from(stem))
    }
}

impl From<String> for OriginFile {
    fn from(s: String) -> OriginFile {
        match s.as_str() {
            "dev" => OriginFile::Dev,
            "train_spider" => OriginFile::TrainSpider,
            "train_others" => OriginFile::TrainOthers,
            _ => OriginFile::Other(s),
        }
    }
}

impl From<OriginFile> for String {
    fn from(o: OriginFile) -> String {
        String::from(o.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    #[default]
    Original,
    MachineTranslated,
    Revised,
    Approved,
}

impl Status {
    pub const ALL: [Status; 4] = [Status::Original, Status::MachineTranslated, Status::Revised, Status::Approved];

    pub fn name(self) -> &'static str {
        match self {
            Status::Original => "original",
            Status::MachineTranslated => "machine-translated",
            Status::Revised => "revised",
            Status::Approved => "approved",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        Status::ALL.into_iter().find(|st| st.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleRecord {
    pub id: String,
    pub db_id: String,
    pub question: String,
    pub language: Language,
    pub sql: String,
    pub origin_file: OriginFile,
    pub status: Status,
    /// Other fields of the source object, as raw JSON text.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, String>,
}

impl ExampleRecord {
    /// Id of the `index`-th record of an origin file.
    pub fn make_id(origin: &OriginFile, index: usize) -> String {
        format!("{}-{}", origin.name(), index)
    }

    /// The id without a language prefix added by [`merge_bilingual`].
    pub fn base_id(&self) -> &str {
        for lang in [Language::En, Language::Pt] {
            if let Some(rest) = self.id.strip_prefix(lang.code()).and_then(|r| r.strip_prefix('/')) {
                return rest;
            }
        }
        &self.id
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub steps: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Corpus {
    pub records: Vec<ExampleRecord>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("duplicate record id {0}")]
    DuplicateId(String),
    #[error("record {0} has an empty question")]
    EmptyQuestion(String),
    #[error("record {0} is English but its status is not original")]
    EnglishNotOriginal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MergeError {
    #[error("English corpus has {en} records, Portuguese corpus has {pt}")]
    LengthMismatch { en: usize, pt: usize },
    #[error("record {0} differs in sql or db_id between the two corpora")]
    PairMismatch(usize),
}

impl Corpus {
    pub fn new(records: Vec<ExampleRecord>, source: &str) -> Corpus {
        Corpus { records, provenance: Provenance { source: source.into(), steps: Vec::new() } }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&ExampleRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn log_step(&mut self, step: &str) {
        self.provenance.steps.push(step.into());
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        let mut seen = BTreeSet::new();
        for r in &self.records {
            if !seen.insert(r.id.as_str()) {
                return Err(CorpusError::DuplicateId(r.id.clone()));
            }
            if r.question.trim().is_empty() {
                return Err(CorpusError::EmptyQuestion(r.id.clone()));
            }
            if r.language == Language::En && r.status != Status::Original {
                return Err(CorpusError::EnglishNotOriginal(r.id.clone()));
            }
        }
        Ok(())
    }

    pub fn status_histogram(&self) -> BTreeMap<Status, usize> {
        let mut h = BTreeMap::new();
        for r in &self.records {
            *h.entry(r.status).or_insert(0) += 1;
        }
        h
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CorpusStats {
    pub question_count: usize,
    /// Unicode scalar values over all questions.
    pub character_count: usize,
}

pub fn stats(corpus: &Corpus) -> CorpusStats {
    CorpusStats {
        question_count: corpus.records.len(),
        character_count: corpus.records.iter().map(|r| r.question.chars().count()).sum(),
    }
}

/// One question per line, in corpus order. Line breaks inside a question
/// become spaces.
pub fn extract_questions(corpus: &Corpus) -> String {
    let mut out = String::new();
    for r in &corpus.records {
        out.push_str(&r.question.replace(['\r', '\n'], " "));
        out.push('\n');
    }
    out
}

/// A row of the paired CSV export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub id: String,
    pub db_id: String,
    pub sql: String,
    pub question_en: String,
    pub question_pt: String,
}

/// Pairs English and Portuguese records sharing a base id; unpaired records
/// get an empty cell.
pub fn pair_rows(corpus: &Corpus) -> Vec<PairRow> {
    let mut rows: Vec<PairRow> = Vec::new();
    let mut by_id: BTreeMap<String, usize> = BTreeMap::new();
    for r in &corpus.records {
        let base = r.base_id();
        let i = *by_id.entry(String::from(base)).or_insert_with(|| {
            rows.push(PairRow {
                id: String::from(base),
                db_id: r.db_id.clone(),
                sql: r.sql.clone(),
                question_en: String::new(),
                question_pt: String::new(),
            });
            rows.len() - 1
        });
        match r.language {
            Language::En => rows[i].question_en = r.question.clone(),
            Language::Pt => rows[i].question_pt = r.question.clone(),
        }
    }
    rows
}

/// Rebuilds a corpus from paired rows: every English question first, then
/// every Portuguese one. Ids get a language prefix only when both are present.
pub fn corpus_from_pairs(rows: &[PairRow], origin: OriginFile, source: &str) -> Corpus {
    let both = rows.iter().any(|r| !r.question_en.is_empty()) && rows.iter().any(|r| !r.question_pt.is_empty());
    let mut records = Vec::new();
    for lang in [Language::En, Language::Pt] {
        for row in rows {
            let q = match lang {
                Language::En => &row.question_en,
                Language::Pt => &row.question_pt,
            };
            if q.is_empty() {
                continue;
            }
            let id = if both { format!("{}/{}", lang.code(), row.id) } else { row.id.clone() };
            records.push(ExampleRecord {
                id,
                db_id: row.db_id.clone(),
                question: q.clone(),
                language: lang,
                sql: row.sql.clone(),
                origin_file: origin.clone(),
                status: if lang == Language::En { Status::Original } else { Status::MachineTranslated },
                extra: BTreeMap::new(),
            });
        }
    }
    Corpus::new(records, source)
}

/// Concatenates an English corpus and its Portuguese translation: all English
/// records first, then all Portuguese ones, ids prefixed with the language.
pub fn merge_bilingual(en: &Corpus, pt: &Corpus) -> Result<Corpus, MergeError> {
    if en.len() != pt.len() {
        return Err(MergeError::LengthMismatch { en: en.len(), pt: pt.len() });
    }
    for (i, (a, b)) in en.records.iter().zip(&pt.records).enumerate() {
        if a.sql != b.sql || a.db_id != b.db_id {
            return Err(MergeError::PairMismatch(i));
        }
    }
    let tag = |r: &ExampleRecord, lang: Language| {
        let mut r = r.clone();
        r.id = format!("{}/{}", lang.code(), r.base_id());
        r.language = lang;
        r
    };
    let mut records: Vec<ExampleRecord> = en.records.iter().map(|r| tag(r, Language::En)).collect();
    records.extend(pt.records.iter().map(|r| tag(r, Language::Pt)));
    let mut out = Corpus::new(records, &format!("{} + {}", en.provenance.source, pt.provenance.source));
    out.provenance.steps.extend(en.provenance.steps.iter().cloned());
    out.provenance.steps.extend(pt.provenance.steps.iter().cloned());
    out.log_step("merge-bilingual");
    Ok(out)
}
