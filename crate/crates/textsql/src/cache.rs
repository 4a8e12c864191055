//! JSONL translation cache so that reruns need no backend calls.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use textsql_core::translate::{BackendError, TranslationBackend};
use textsql_core::Language;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    /// SHA-256 of the source language code, a tab and the source text.
    pub source_hash: String,
    pub target: Language,
    pub translation: String,
}

pub fn source_hash(text: &str, source: Language) -> String {
    let mut h = Sha256::new();
    h.update(source.code().as_bytes());
    h.update(b"\t");
    h.update(text.as_bytes());
    hex::encode(h.finalize())
}

/// Serves cached translations and forwards the rest to `inner`, appending
/// every new translation to the cache file.
pub struct CachedBackend<B> {
    inner: B,
    path: PathBuf,
    file: File,
    entries: HashMap<(String, Language), String>,
    pub hits: usize,
    pub misses: usize,
}

impl<B: TranslationBackend> CachedBackend<B> {
    pub fn open(inner: B, path: &Path) -> std::io::Result<CachedBackend<B>> {
        let mut entries = HashMap::new();
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheEntry>(line) {
                    Ok(e) => {
                        entries.insert((e.source_hash, e.target), e.translation);
                    }
                    Err(e) => log::warn!("{}: skipping cache line {}: {e}", path.display(), i + 1),
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(CachedBackend { inner, path: path.to_path_buf(), file, entries, hits: 0, misses: 0 })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_inner(self) -> B {
        self.inner
    }

    fn lookup(&self, text: &str, source: Language, target: Language) -> Option<&String> {
        self.entries.get(&(source_hash(text, source), target))
    }

    fn store(&mut self, text: &str, source: Language, target: Language, translation: &str) -> Result<(), BackendError> {
        let entry = CacheEntry { source_hash: source_hash(text, source), target, translation: translation.into() };
        let mut line = serde_json::to_string(&entry).expect("cache entry serializes");
        line.push('\n');
        self.file
            .write_all(line.as_bytes())
            .map_err(|e| BackendError::Unavailable(format!("{}: {e}", self.path.display())))?;
        self.entries.insert((entry.source_hash, target), entry.translation);
        Ok(())
    }
}

impl<B: TranslationBackend> TranslationBackend for CachedBackend<B> {
    fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    fn translate_batch(&mut self, texts: &[String], source: Language, target: Language)
        -> Result<Vec<String>, BackendError> {
        self.translate_batches(std::slice::from_ref(&texts.to_vec()), source, target).remove(0)
    }

    fn translate_batches(
        &mut self,
        batches: &[Vec<String>],
        source: Language,
        target: Language,
    ) -> Vec<Result<Vec<String>, BackendError>> {
        let mut partial: Vec<Vec<Option<String>>> = Vec::with_capacity(batches.len());
        let mut misses: Vec<Vec<String>> = Vec::new();
        let mut miss_of: Vec<Option<usize>> = Vec::with_capacity(batches.len());
        for batch in batches {
            let found: Vec<Option<String>> = batch.iter().map(|t| self.lookup(t, source, target).cloned()).collect();
            let missing: Vec<String> =
                batch.iter().zip(&found).filter(|(_, f)| f.is_none()).map(|(t, _)| t.clone()).collect();
            self.hits += batch.len() - missing.len();
            self.misses += missing.len();
            miss_of.push(if missing.is_empty() {
                None
            } else {
                misses.push(missing);
                Some(misses.len() - 1)
            });
            partial.push(found);
        }
        let mut answers: Vec<Option<Result<Vec<String>, BackendError>>> = if misses.is_empty() {
            Vec::new()
        } else {
            self.inner.translate_batches(&misses, source, target).into_iter().map(Some).collect()
        };

        let mut out = Vec::with_capacity(batches.len());
        for ((batch, found), m) in batches.iter().zip(partial).zip(miss_of) {
            let Some(m) = m else {
                out.push(Ok(found.into_iter().map(|f| f.expect("all cached")).collect()));
                continue;
            };
            let answer = answers[m].take().expect("one answer per miss batch");
            let fresh = match answer {
                Ok(v) if v.len() == misses[m].len() => v,
                Ok(v) => {
                    out.push(Ok(v));
                    continue;
                }
                Err(e) => {
                    out.push(Err(e));
                    continue;
                }
            };
            let mut fresh = fresh.into_iter();
            let mut merged = Vec::with_capacity(batch.len());
            let mut failed = None;
            for (text, f) in batch.iter().zip(found) {
                match f {
                    Some(t) => merged.push(t),
                    None => {
                        let t = fresh.next().expect("length checked");
                        if let Err(e) = self.store(text, source, target, &t) {
                            failed = Some(e);
                        }
                        merged.push(t);
                    }
                }
            }
            out.push(match failed {
                Some(e) => Err(e),
                None => Ok(merged),
            });
        }
        out
    }
}
