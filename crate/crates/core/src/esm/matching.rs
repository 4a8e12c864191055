use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use serde::{Deserialize, Serialize};

use super::components::{decompose, ComponentSets, EvalMode};
use crate::schema::DbSchema;
use crate::sql::{canonicalize_with, parse_query, ColumnResolution, QueryAst};

/// Component names, in report order.
pub const COMPONENTS: &[&str] =
    &["select", "where", "group", "having", "order", "and_or", "iuen", "keywords", "from"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchResult {
    pub matched: bool,
    pub per_component: BTreeMap<String, bool>,
    pub mode: EvalMode,
    /// Why the prediction could not be scored, if it could not.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pred_error: Option<String>,
}

impl MatchResult {
    pub fn failing_components(&self) -> impl Iterator<Item = &str> {
        self.per_component.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EsmError {
    #[error("gold query does not parse: {0}")]
    GoldParseError(String),
}

/// Parses and canonicalizes a query the way the evaluator sees it.
pub fn prepare(sql: &str, schema: &DbSchema) -> Result<QueryAst, String> {
    let ast = parse_query(sql).map_err(|e| e.to_string())?;
    canonicalize_with(&ast, schema, ColumnResolution::FirstFromTable).map_err(|e| e.to_string())
}

pub fn exact_set_match(gold: &str, pred: &str, schema: &DbSchema, mode: EvalMode) -> Result<MatchResult, EsmError> {
    let gold = prepare(gold, schema).map_err(EsmError::GoldParseError)?;
    let gold = decompose(&gold, schema, mode).map_err(|e| EsmError::GoldParseError(e.to_string()))?;
    Ok(match_against(&gold, pred, schema, mode))
}

/// Scores `pred` against an already decomposed gold query.
pub fn match_against(gold: &ComponentSets, pred: &str, schema: &DbSchema, mode: EvalMode) -> MatchResult {
    let pred = prepare(pred, schema).and_then(|p| decompose(&p, schema, mode).map_err(|e| e.to_string()));
    match pred {
        Ok(p) => {
            let per_component = compare(gold, &p);
            let matched = per_component.values().all(|ok| *ok);
            MatchResult { matched, per_component, mode, pred_error: None }
        }
        Err(e) => {
            let mut per_component = BTreeMap::new();
            per_component.insert("parse".to_string(), false);
            MatchResult { matched: false, per_component, mode, pred_error: Some(e) }
        }
    }
}

/// Per-component equality of two decompositions.
pub fn compare(gold: &ComponentSets, pred: &ComponentSets) -> BTreeMap<String, bool> {
    let mut out = BTreeMap::new();
    let mut put = |k: &str, v: bool| {
        out.insert(k.to_string(), v);
    };
    put("select", gold.select_set == pred.select_set);
    put("where", gold.where_conds == pred.where_conds);
    put("group", gold.group_set == pred.group_set);
    let having = match (gold.group_list.is_empty(), pred.group_list.is_empty()) {
        (true, true) => true,
        (false, false) => gold.group_list == pred.group_list && gold.having_conds == pred.having_conds,
        _ => false,
    };
    put("having", having);
    let order = match (&gold.order_list, &pred.order_list) {
        (None, None) => true,
        (Some(g), Some(p)) => g == p && gold.limit.is_some() == pred.limit.is_some(),
        _ => false,
    };
    put("order", order);
    put("and_or", connector_set(gold) == connector_set(pred));
    let iuen = match (&gold.set_op, &pred.set_op) {
        (None, None) => true,
        (Some((gk, g)), Some((pk, p))) => gk == pk && compare(g, p).values().all(|ok| *ok),
        _ => false,
    };
    put("iuen", iuen);
    put("keywords", gold.keywords == pred.keywords);
    put("from", gold.tables.is_empty() || gold.tables == pred.tables);
    out
}

fn connector_set(c: &ComponentSets) -> BTreeSet<&'static str> {
    let mut s = BTreeSet::new();
    if c.where_connectors.and > 0 {
        s.insert("and");
    }
    if c.where_connectors.or > 0 {
        s.insert("or");
    }
    s
}
