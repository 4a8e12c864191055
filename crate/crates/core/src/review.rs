//! Revision entries and their replay over a corpus.

use alloc::collections::BTreeMap;
use alloc::string::String;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, ExampleRecord, Status};

/// One accepted edit. The journal is a sequence of these.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevisionEntry {
    pub id: String,
    /// UTC, RFC 3339.
    pub timestamp: String,
    pub previous_question: String,
    pub new_question: String,
    pub status: Status,
    pub reviewer: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReviewError {
    #[error("unknown record id {0}")]
    UnknownId(String),
    #[error("record {0} was changed since the edit was started")]
    Stale(String),
    #[error("the new question is empty")]
    EmptyQuestion,
    #[error("a revision must set status revised or approved, not {0}")]
    InvalidStatus(&'static str),
}

/// A proposed edit, as received from a reviewer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevisionRequest {
    pub question: String,
    pub status: Status,
    #[serde(default)]
    pub reviewer: String,
    /// The question the reviewer started from. When given, the edit is
    /// rejected as stale unless it is still current.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub previous_question: Option<String>,
}

/// The corpus with all accepted revisions applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReviewState {
    corpus: Corpus,
    index: BTreeMap<String, usize>,
    applied: usize,
}

impl ReviewState {
    pub fn new(corpus: Corpus) -> ReviewState {
        let index = corpus.records.iter().enumerate().map(|(i, r)| (r.id.clone(), i)).collect();
        ReviewState { corpus, index, applied: 0 }
    }

    /// Applies `entries` in order, stopping at the first one that does not
    /// fit. The error carries its position.
    pub fn replay(corpus: Corpus, entries: &[RevisionEntry]) -> Result<ReviewState, (usize, ReviewError)> {
        let mut state = ReviewState::new(corpus);
        for (i, e) in entries.iter().enumerate() {
            state.apply(e).map_err(|err| (i, err))?;
        }
        Ok(state)
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    pub fn into_corpus(self) -> Corpus {
        self.corpus
    }

    /// Number of entries applied since load.
    pub fn applied(&self) -> usize {
        self.applied
    }

    pub fn get(&self, id: &str) -> Option<&ExampleRecord> {
        self.index.get(id).map(|&i| &self.corpus.records[i])
    }

    /// Checks a request against the current state and turns it into a journal
    /// entry. Nothing changes until the entry is applied.
    pub fn prepare(
        &self,
        id: &str,
        req: &RevisionRequest,
        timestamp: &str,
    ) -> Result<RevisionEntry, ReviewError> {
        let rec = self.get(id).ok_or_else(|| ReviewError::UnknownId(id.into()))?;
        if let Some(prev) = &req.previous_question {
            if *prev != rec.question {
                return Err(ReviewError::Stale(id.into()));
            }
        }
        let entry = RevisionEntry {
            id: id.into(),
            timestamp: timestamp.into(),
            previous_question: rec.question.clone(),
            new_question: req.question.clone(),
            status: req.status,
            reviewer: req.reviewer.clone(),
        };
        check_entry(&entry)?;
        Ok(entry)
    }

    pub fn apply(&mut self, entry: &RevisionEntry) -> Result<(), ReviewError> {
        check_entry(entry)?;
        let &i = self.index.get(&entry.id).ok_or_else(|| ReviewError::UnknownId(entry.id.clone()))?;
        let rec = &mut self.corpus.records[i];
        if rec.question != entry.previous_question {
            return Err(ReviewError::Stale(entry.id.clone()));
        }
        rec.question = entry.new_question.clone();
        rec.status = entry.status;
        self.applied += 1;
        Ok(())
    }

    pub fn status_histogram(&self) -> BTreeMap<Status, usize> {
        self.corpus.status_histogram()
    }
}

fn check_entry(entry: &RevisionEntry) -> Result<(), ReviewError> {
    if entry.new_question.trim().is_empty() {
        return Err(ReviewError::EmptyQuestion);
    }
    if !matches!(entry.status, Status::Revised | Status::Approved) {
        return Err(ReviewError::InvalidStatus(entry.status.name()));
    }
    Ok(())
}
