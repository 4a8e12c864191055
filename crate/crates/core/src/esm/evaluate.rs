use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::components::{decompose, EvalMode};
use super::hardness::{classify_hardness, Hardness};
use super::matching::{match_against, prepare};
use crate::schema::{DbSchema, SchemaCatalog};
use crate::sql::parse_query;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldRecord {
    pub sql: String,
    pub db_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub question: Option<String>,
}

impl GoldRecord {
    pub fn new(sql: &str, db_id: &str) -> GoldRecord {
        GoldRecord { sql: sql.into(), db_id: db_id.into(), question: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("{gold} gold records but {pred} predictions")]
    LengthMismatch { gold: usize, pred: usize },
    #[error("no schema for db_id {0}")]
    MissingSchema(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordOutcome {
    pub index: usize,
    pub db_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub question: Option<String>,
    pub gold: String,
    pub pred: String,
    /// `None` when the gold query itself failed.
    pub hardness: Option<Hardness>,
    pub matched: bool,
    pub components: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gold_error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pred_error: Option<String>,
}

impl RecordOutcome {
    pub fn failing_components(&self) -> Vec<String> {
        self.components.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k.clone()).collect()
    }
}

/// Matched and total counts per hardness level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LevelTally {
    pub count: [u64; 4],
    pub matched: [u64; 4],
}

impl LevelTally {
    pub fn add(&mut self, level: Hardness, matched: bool) {
        self.count[level.index()] += 1;
        self.matched[level.index()] += matched as u64;
    }

    pub fn merge(&mut self, other: &LevelTally) {
        for i in 0..4 {
            self.count[i] += other.count[i];
            self.matched[i] += other.matched[i];
        }
    }

    pub fn total(&self) -> u64 {
        self.count.iter().sum()
    }

    pub fn total_matched(&self) -> u64 {
        self.matched.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalRun {
    pub mode: EvalMode,
    pub records: Vec<RecordOutcome>,
}

impl EvalRun {
    /// Level tallies over records whose gold query could be scored.
    pub fn tally(&self) -> LevelTally {
        let mut t = LevelTally::default();
        for r in &self.records {
            if let Some(h) = r.hardness {
                t.add(h, r.matched);
            }
        }
        t
    }

    pub fn gold_failures(&self) -> usize {
        self.records.iter().filter(|r| r.gold_error.is_some()).count()
    }
}

/// Scores one prediction. Never fails: problems are recorded on the outcome.
pub fn score_record(index: usize, gold: &GoldRecord, pred: &str, schema: &DbSchema, mode: EvalMode) -> RecordOutcome {
    let mut out = RecordOutcome {
        index,
        db_id: gold.db_id.clone(),
        question: gold.question.clone(),
        gold: gold.sql.clone(),
        pred: pred.to_string(),
        hardness: None,
        matched: false,
        components: BTreeMap::new(),
        gold_error: None,
        pred_error: None,
    };
    let sets = parse_query(&gold.sql)
        .map_err(|e| e.to_string())
        .map(|ast| classify_hardness(&ast))
        .and_then(|h| {
            let canon = prepare(&gold.sql, schema)?;
            let sets = decompose(&canon, schema, mode).map_err(|e| e.to_string())?;
            Ok((h, sets))
        });
    match sets {
        Ok((h, sets)) => {
            out.hardness = Some(h);
            let m = match_against(&sets, pred, schema, mode);
            out.matched = m.matched;
            out.components = m.per_component;
            out.pred_error = m.pred_error;
        }
        Err(e) => out.gold_error = Some(e),
    }
    out
}

/// Scores every prediction against its gold query.
pub fn evaluate_corpus(
    gold: &[GoldRecord],
    pred: &[String],
    schemas: &SchemaCatalog,
    mode: EvalMode,
) -> Result<EvalRun, EvalError> {
    check_inputs(gold, pred, schemas)?;
    let records = gold
        .iter()
        .zip(pred)
        .enumerate()
        .map(|(i, (g, p))| score_record(i, g, p, schemas.get(&g.db_id).expect("checked"), mode))
        .collect();
    Ok(EvalRun { mode, records })
}

pub fn check_inputs(gold: &[GoldRecord], pred: &[String], schemas: &SchemaCatalog) -> Result<(), EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::LengthMismatch { gold: gold.len(), pred: pred.len() });
    }
    for g in gold {
        if schemas.get(&g.db_id).is_err() {
            return Err(EvalError::MissingSchema(g.db_id.clone()));
        }
    }
    Ok(())
}
