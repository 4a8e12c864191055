use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::protect::{protect_literals_with, protect_or_passthrough, restore_literals_with, PlaceholderStyle};
use crate::corpus::{Corpus, Language, Status};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BackendError {
    /// The backend cannot be reached at all; the run stops.
    #[error("translation backend unavailable: {0}")]
    Unavailable(String),
    /// This request failed; other requests may still succeed.
    #[error("translation request failed: {0}")]
    Failed(String),
}

pub trait TranslationBackend {
    /// `identity`, `dictionary-stub` or `remote-http`.
    fn kind(&self) -> &'static str;

    /// Translates `texts` in order. The result must have the same length.
    fn translate_batch(&mut self, texts: &[String], source: Language, target: Language)
        -> Result<Vec<String>, BackendError>;

    /// Translates several batches. Backends able to run requests in parallel
    /// override this; the default sends them one after another.
    fn translate_batches(
        &mut self,
        batches: &[Vec<String>],
        source: Language,
        target: Language,
    ) -> Vec<Result<Vec<String>, BackendError>> {
        batches.iter().map(|b| self.translate_batch(b, source, target)).collect()
    }
}

impl<T: TranslationBackend + ?Sized> TranslationBackend for alloc::boxed::Box<T> {
    fn kind(&self) -> &'static str {
        (**self).kind()
    }

    fn translate_batch(&mut self, texts: &[String], source: Language, target: Language)
        -> Result<Vec<String>, BackendError> {
        (**self).translate_batch(texts, source, target)
    }

    fn translate_batches(
        &mut self,
        batches: &[Vec<String>],
        source: Language,
        target: Language,
    ) -> Vec<Result<Vec<String>, BackendError>> {
        (**self).translate_batches(batches, source, target)
    }
}

/// Returns every text unchanged.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityBackend;

impl TranslationBackend for IdentityBackend {
    fn kind(&self) -> &'static str {
        "identity"
    }

    fn translate_batch(&mut self, texts: &[String], _: Language, _: Language) -> Result<Vec<String>, BackendError> {
        Ok(texts.to_vec())
    }
}

/// Offline stub built from `source<TAB>target` sentence pairs.
///
/// A question whose template equals a known source template gets the paired
/// translation. Anything else is translated word by word using the
/// single-word pairs, keeping unknown words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DictionaryBackend {
    pub sentences: BTreeMap<String, String>,
    pub words: BTreeMap<String, String>,
    pub style: PlaceholderStyle,
}

impl DictionaryBackend {
    pub fn new(style: PlaceholderStyle) -> DictionaryBackend {
        DictionaryBackend { style, ..DictionaryBackend::default() }
    }

    pub fn from_tsv(text: &str, style: PlaceholderStyle) -> Result<DictionaryBackend, BackendError> {
        let mut d = DictionaryBackend::new(style);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (src, tgt) = line
                .split_once('\t')
                .ok_or_else(|| BackendError::Unavailable(format!("dictionary line {}: expected a tab", i + 1)))?;
            d.add(src.trim(), tgt.trim());
        }
        Ok(d)
    }

    /// Adds a pair. Quoted values in both sides are turned into placeholders,
    /// numbered by their position in the source.
    pub fn add(&mut self, source: &str, target: &str) {
        if !source.contains(char::is_whitespace) && !target.contains(char::is_whitespace) {
            self.words.insert(source.to_lowercase(), String::from(target));
            return;
        }
        let (Ok(s), Ok(t)) = (protect_literals_with(source, &self.style), protect_literals_with(target, &self.style))
        else {
            self.sentences.insert(String::from(source), String::from(target));
            return;
        };
        let mut template = t.template.clone();
        let mut renamed: Vec<(String, String)> = Vec::new();
        for (j, lit) in t.literals.iter().enumerate() {
            let Some(i) = s.literals.iter().position(|l| l == lit) else {
                return;
            };
            renamed.push((self.style.placeholder(j), format!("\u{0}{i}\u{0}")));
        }
        for (from, tmp) in &renamed {
            template = template.replacen(from.as_str(), tmp, 1);
        }
        for i in 0..s.literals.len() {
            template = template.replace(&format!("\u{0}{i}\u{0}"), &self.style.placeholder(i));
        }
        self.sentences.insert(s.template, template);
    }

    fn translate_one(&self, text: &str) -> String {
        if let Some(t) = self.sentences.get(text.trim()) {
            return t.clone();
        }
        let mut out = String::with_capacity(text.len());
        let mut rest = text;
        while let Some(start) = rest.find(self.style.open.as_str()) {
            let after = start + self.style.open.len();
            let Some(len) = rest[after..].find(self.style.close.as_str()) else {
                break;
            };
            let end = after + len + self.style.close.len();
            self.substitute_words(&rest[..start], &mut out);
            out.push_str(&rest[start..end]);
            rest = &rest[end..];
        }
        self.substitute_words(rest, &mut out);
        out
    }

    fn substitute_words(&self, text: &str, out: &mut String) {
        let mut word = String::new();
        for c in text.chars() {
            if c.is_alphanumeric() || c == '-' {
                word.push(c);
                continue;
            }
            self.flush_word(&mut word, out);
            out.push(c);
        }
        self.flush_word(&mut word, out);
    }

    fn flush_word(&self, word: &mut String, out: &mut String) {
        if !word.is_empty() {
            out.push_str(self.words.get(&word.to_lowercase()).unwrap_or(word));
            word.clear();
        }
    }
}

impl TranslationBackend for DictionaryBackend {
    fn kind(&self) -> &'static str {
        "dictionary-stub"
    }

    fn translate_batch(&mut self, texts: &[String], _: Language, _: Language) -> Result<Vec<String>, BackendError> {
        Ok(texts.iter().map(|t| self.translate_one(t)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateOptions {
    pub source: Language,
    pub target: Language,
    /// Upper bound on the summed length (in chars) of one request. A longer
    /// question is sent alone.
    pub max_chars: usize,
    pub style: PlaceholderStyle,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions { source: Language::En, target: Language::Pt, max_chars: 5000, style: PlaceholderStyle::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerRecordFailure {
    pub id: String,
    pub cause: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationOutcome {
    pub corpus: Corpus,
    /// Records left untranslated.
    pub failures: Vec<PerRecordFailure>,
    /// Records translated without literal protection (unbalanced quotes).
    pub warnings: Vec<PerRecordFailure>,
    pub translated: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("translation backend unavailable: {0}")]
    BackendUnavailable(String),
}

/// Groups consecutive texts so that each group's summed length stays within
/// `max_chars`. Returns index ranges into `texts`.
pub fn plan_batches(texts: &[String], max_chars: usize) -> Vec<core::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut size = 0;
    for (i, t) in texts.iter().enumerate() {
        let n = t.chars().count();
        if i > start && size + n > max_chars {
            out.push(start..i);
            start = i;
            size = 0;
        }
        size += n;
    }
    if start < texts.len() {
        out.push(start..texts.len());
    }
    out
}

/// Translates every record in the source language. Quoted values are
/// protected during translation and put back afterwards.
///
/// A failed batch is retried one record at a time. Records that still fail,
/// or whose placeholders did not survive, keep their original question and
/// are reported in `failures`.
pub fn translate_corpus(
    corpus: &Corpus,
    backend: &mut dyn TranslationBackend,
    opts: &TranslateOptions,
) -> Result<TranslationOutcome, TranslateError> {
    let mut out = corpus.clone();
    let mut failures = Vec::new();
    let mut warnings = Vec::new();

    let todo: Vec<usize> =
        (0..corpus.records.len()).filter(|&i| corpus.records[i].language == opts.source).collect();
    let mut protected = Vec::with_capacity(todo.len());
    for &i in &todo {
        let (p, warn) = protect_or_passthrough(&corpus.records[i].question, &opts.style);
        if let Some(w) = warn {
            warnings.push(PerRecordFailure { id: corpus.records[i].id.clone(), cause: w.to_string() });
        }
        protected.push(p);
    }
    let templates: Vec<String> = protected.iter().map(|p| p.template.clone()).collect();
    let ranges = plan_batches(&templates, opts.max_chars.max(1));
    let batches: Vec<Vec<String>> = ranges.iter().map(|r| templates[r.clone()].to_vec()).collect();

    let results = backend.translate_batches(&batches, opts.source, opts.target);
    let mut translations: Vec<Result<String, String>> = Vec::with_capacity(templates.len());
    for (range, result) in ranges.iter().zip(results) {
        match result {
            Ok(v) if v.len() == range.len() => translations.extend(v.into_iter().map(Ok)),
            Err(BackendError::Unavailable(e)) => return Err(TranslateError::BackendUnavailable(e)),
            _ => {
                for t in &templates[range.clone()] {
                    let single = backend.translate_batch(core::slice::from_ref(t), opts.source, opts.target);
                    translations.push(match single {
                        Ok(mut v) if v.len() == 1 => Ok(v.remove(0)),
                        Ok(v) => Err(format!("backend returned {} translations for 1 question", v.len())),
                        Err(BackendError::Unavailable(e)) => return Err(TranslateError::BackendUnavailable(e)),
                        Err(e) => Err(e.to_string()),
                    });
                }
            }
        }
    }

    let mut translated = 0;
    for ((&i, p), t) in todo.iter().zip(&protected).zip(translations) {
        let rec = &mut out.records[i];
        let restored = t.and_then(|t| restore_literals_with(&t, &p.literals, &opts.style).map_err(|e| e.to_string()));
        match restored {
            Ok(q) => {
                rec.question = q;
                rec.language = opts.target;
                rec.status = Status::MachineTranslated;
                translated += 1;
            }
            Err(cause) => failures.push(PerRecordFailure { id: rec.id.clone(), cause }),
        }
    }
    out.log_step(&format!("translate {}->{} via {}", opts.source.code(), opts.target.code(), backend.kind()));
    Ok(TranslationOutcome { corpus: out, failures, warnings, translated })
}
